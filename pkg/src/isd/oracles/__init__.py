"""Independent numeric oracles for the measure-instance claims.

Each module here computes a classical quantity (entropy, radar range,
resolution limits, sampling reconstruction, filter recursions, network
value, search lengths, failure intervals) by its own standard method so
the measure layer can be checked against it rather than against itself.
"""

from .entropy import (
    EntropyMaxReport,
    EntropyResult,
    ProbabilityVector,
    shannon_entropy,
    verify_entropy_max,
)
from .formulas import (
    RadarParams,
    metcalfe_value,
    mtbf_mean_duration,
    network_info_bounds,
    radar_max_range,
    rayleigh_min_angle,
)
from .kalman import (
    KalmanModel,
    KalmanResult,
    TrackingRun,
    kalman_filter,
    kalman_reflection,
    measurement_reflection,
    simulate_tracking,
    tracking_information,
)
from .search import (
    SearchLibrary,
    SearchResult,
    asl_binary,
    asl_binary_closed_form,
    asl_sequential,
    asl_sequential_empirical,
    min_mismatch_search,
)
from .signals import (
    PeriodicSignal,
    ReconstructionResult,
    reconstruct_signal,
    sample_signal,
)

__all__ = [
    "EntropyMaxReport",
    "EntropyResult",
    "ProbabilityVector",
    "shannon_entropy",
    "verify_entropy_max",
    "RadarParams",
    "radar_max_range",
    "rayleigh_min_angle",
    "metcalfe_value",
    "network_info_bounds",
    "mtbf_mean_duration",
    "KalmanModel",
    "KalmanResult",
    "TrackingRun",
    "kalman_filter",
    "kalman_reflection",
    "measurement_reflection",
    "simulate_tracking",
    "tracking_information",
    "SearchLibrary",
    "SearchResult",
    "asl_sequential",
    "asl_sequential_empirical",
    "asl_binary",
    "asl_binary_closed_form",
    "min_mismatch_search",
    "PeriodicSignal",
    "ReconstructionResult",
    "sample_signal",
    "reconstruct_signal",
]
