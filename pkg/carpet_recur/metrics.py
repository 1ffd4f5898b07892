from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

REGISTRY = CollectorRegistry()

CYLINDERS_ENUMERATED = Counter(
    "carpet_cylinders_enumerated_total",
    "Cylinders w in A^n enumerated by covering counts",
    registry=REGISTRY,
)
SQUARE_TESTS = Counter(
    "carpet_square_tests_total",
    "Digit-search nodes visited by covering counts",
    registry=REGISTRY,
)
POINTS_SAMPLED = Counter(
    "carpet_points_sampled_total",
    "Points drawn from the recurrence measure",
    registry=REGISTRY,
)
COMMAND_SECONDS = Histogram(
    "carpet_command_seconds",
    "Wall time of CLI commands",
    ["command"],
    registry=REGISTRY,
)


def write_metrics(path: str) -> None:
    write_to_textfile(path, REGISTRY)
