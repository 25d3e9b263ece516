"""Memory-constrained data-stream classifiers and a prequential benchmark harness."""

from ._streambench import (
    Classifier,
    Instance,
    RunReport,
    StreamSpec,
    TimelinePoint,
    StreamConfigError,
    StreamDataError,
    StreamUsageError,
    __version__,
    dataset_spec,
    generate,
    hoeffding_bound,
    inject_drift,
    macro_f1,
    make_classifier,
    meanstd_features,
    prequential_run,
    shuffle_stream,
)

__all__ = [
    "Classifier",
    "Instance",
    "RunReport",
    "StreamSpec",
    "TimelinePoint",
    "StreamConfigError",
    "StreamDataError",
    "StreamUsageError",
    "__version__",
    "dataset_spec",
    "generate",
    "hoeffding_bound",
    "inject_drift",
    "macro_f1",
    "make_classifier",
    "meanstd_features",
    "prequential_run",
    "shuffle_stream",
]
