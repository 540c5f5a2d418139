"""Multi-objective evolutionary community detection."""

from ._moocd import (
    Graph,
    ModularityUndefined,
    ParseError,
    decode,
    hv_igd_ratio,
    hv_reference_point,
    hypervolume,
    igd,
    load_dataset,
    modularity,
    nmi,
    nondominated_sort,
    objectives,
    run,
)

__all__ = [
    "Graph",
    "ModularityUndefined",
    "ParseError",
    "decode",
    "hv_igd_ratio",
    "hv_reference_point",
    "hypervolume",
    "igd",
    "load_dataset",
    "modularity",
    "nmi",
    "nondominated_sort",
    "objectives",
    "run",
]
