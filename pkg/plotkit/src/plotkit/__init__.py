from .aggregate import top_q_median
from .figures import (
    plot_capture_curve,
    plot_distance_profile,
    plot_learning_curves,
    plot_trajectory,
)
from .readers import (
    SchemaError,
    read_aggregated,
    read_capture_curve,
    read_curve,
    read_distance_profile,
    read_trajectory,
)

__version__ = "0.1.0"

__all__ = [
    "SchemaError",
    "plot_capture_curve",
    "plot_distance_profile",
    "plot_learning_curves",
    "plot_trajectory",
    "read_aggregated",
    "read_capture_curve",
    "read_curve",
    "read_distance_profile",
    "read_trajectory",
    "top_q_median",
    "__version__",
]
