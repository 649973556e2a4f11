"""Disagreement monitoring between paired black-box decision streams.

The package covers two stream families with one workflow: categorical
classification logs (two models labeling the same items) and continuous
steering traces (two controllers steering the same vehicle).  In both,
disagreement between the pair is used as a supervision signal: flagged
items go to an arbiter, flagged windows are compared against human
disengagement events, and the resulting error reductions are measured.
"""

from .arbitration import (
    METHODS,
    ArbitrationReport,
    DetectorMetrics,
    arguing_machines_error,
    detector_metrics,
    ensemble_error,
    evaluate,
    random_arbitrator_draws,
    random_arbitrator_error,
    random_arbitrator_expectation,
    topk_error,
)
from .disagreement import (
    DisagreementConfig,
    DisagreementSignal,
    categorical_disagree,
    disagreement_score,
    flag_disagreement,
    normalize_angle,
    signal_series,
    window_scores,
    write_signal_csv,
)
from .disengagement import (
    POST_EVENT_SECONDS,
    PRE_EVENT_SECONDS,
    Period,
    RocPoint,
    RocSweepResult,
    build_periods,
    default_delta_grid,
    far_frr,
    roc_sweep,
    sample_windows,
    write_roc_csv,
    write_roc_svg,
)
from .preprocessing import (
    BIN_HI,
    BIN_LO,
    NET_HEIGHT,
    NET_WIDTH,
    NUM_BINS,
    FrameBuffer,
    NetInput,
    balance_dataset,
    bin_occupancy,
    compose,
    compose_m1,
    compose_m2,
    compose_m3,
    compose_m4,
    compose_m5,
    frame_from_u8,
    history_depth,
    to_grayscale,
)
from .streams import (
    INITIATORS,
    ClassLog,
    ClassRecord,
    DisengagementEvent,
    LogFormatError,
    SteeringSample,
    SteeringTrace,
    read_class_log,
    read_disengagements,
    read_steering_trace,
    write_class_log,
    write_disengagements,
    write_steering_trace,
)
from .synthgen import (
    ClassLogSpec,
    InfeasibleSpecError,
    SteeringScenarioSpec,
    gen_class_log,
    gen_steering_scenario,
    reference_class_spec,
    reference_steering_spec,
)

__version__ = "0.1.0"

__all__ = [
    "ArbitrationReport",
    "BIN_HI",
    "BIN_LO",
    "ClassLog",
    "ClassLogSpec",
    "ClassRecord",
    "DetectorMetrics",
    "DisagreementConfig",
    "DisagreementSignal",
    "DisengagementEvent",
    "FrameBuffer",
    "INITIATORS",
    "InfeasibleSpecError",
    "LogFormatError",
    "METHODS",
    "NET_HEIGHT",
    "NET_WIDTH",
    "NUM_BINS",
    "NetInput",
    "POST_EVENT_SECONDS",
    "PRE_EVENT_SECONDS",
    "Period",
    "RocPoint",
    "RocSweepResult",
    "SteeringSample",
    "SteeringScenarioSpec",
    "SteeringTrace",
    "arguing_machines_error",
    "balance_dataset",
    "bin_occupancy",
    "build_periods",
    "categorical_disagree",
    "compose",
    "compose_m1",
    "compose_m2",
    "compose_m3",
    "compose_m4",
    "compose_m5",
    "default_delta_grid",
    "detector_metrics",
    "disagreement_score",
    "ensemble_error",
    "evaluate",
    "far_frr",
    "flag_disagreement",
    "frame_from_u8",
    "gen_class_log",
    "gen_steering_scenario",
    "history_depth",
    "normalize_angle",
    "random_arbitrator_draws",
    "random_arbitrator_error",
    "random_arbitrator_expectation",
    "read_class_log",
    "read_disengagements",
    "read_steering_trace",
    "reference_class_spec",
    "reference_steering_spec",
    "roc_sweep",
    "sample_windows",
    "signal_series",
    "to_grayscale",
    "topk_error",
    "window_scores",
    "write_class_log",
    "write_disengagements",
    "write_roc_csv",
    "write_roc_svg",
    "write_signal_csv",
    "write_steering_trace",
]
