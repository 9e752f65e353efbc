"""Ising bath coherence and holographic free-energy reconstruction."""

from ._core import (
    CapacityError,
    CoherenceSeries,
    ContourError,
    DomainError,
    Error,
    QuadratureBreakdown,
    UsageError,
    coherence_at,
    coherence_series,
    critical_beta,
    fit_central_charge_aspect,
    fit_central_charge_strip,
    free_energy,
    free_energy_at_zero_field,
    log_partition,
    measured_period,
    reconstruct_ratio,
    zero_field_log_partition,
)

__all__ = [
    "CapacityError",
    "CoherenceSeries",
    "ContourError",
    "DomainError",
    "Error",
    "QuadratureBreakdown",
    "UsageError",
    "coherence_at",
    "coherence_series",
    "critical_beta",
    "fit_central_charge_aspect",
    "fit_central_charge_strip",
    "free_energy",
    "free_energy_at_zero_field",
    "log_partition",
    "measured_period",
    "reconstruct_ratio",
    "zero_field_log_partition",
]

__version__ = "0.1.0"
