"""Synthetic binary-sensor event logs from per-period-of-day Markov chains."""

from .durations import DurationStats, empirical_stats, outlier_mean, sample_duration
from .engine import (
    AnomalyKind,
    AnomalySpec,
    SimConfig,
    active_anomaly,
    anomalous_period,
    is_valid_event,
    simulate,
)
from .errors import ConfigError, ModelError, ParseError, SensorSynthError, UnknownSensorError, UnknownStateError
from .events import Event, EventLog, Polarity
from .generator import ActivityRecord, Generator, StateSpec, build_matrix_generator
from .learning import learn_generator, transition_counts
from .markov import (
    ChainSet,
    RandomSource,
    TransitionMatrix,
    ValidationReport,
    period_index,
    sample_next,
    validate_matrix,
)

__all__ = [
    "ActivityRecord",
    "AnomalyKind",
    "AnomalySpec",
    "ChainSet",
    "ConfigError",
    "DurationStats",
    "Event",
    "EventLog",
    "Generator",
    "ModelError",
    "ParseError",
    "Polarity",
    "RandomSource",
    "SensorSynthError",
    "SimConfig",
    "StateSpec",
    "TransitionMatrix",
    "UnknownSensorError",
    "UnknownStateError",
    "ValidationReport",
    "active_anomaly",
    "anomalous_period",
    "build_matrix_generator",
    "empirical_stats",
    "is_valid_event",
    "learn_generator",
    "outlier_mean",
    "period_index",
    "sample_duration",
    "sample_next",
    "simulate",
    "transition_counts",
    "validate_matrix",
]
