"""halllab: exact fractional-coloring and Hall-ratio laboratory.

Exact invariants (independence number, Hall ratio, fractional chromatic
number with rational certificates) for small graphs, plus the randomized
constructions and probability bounds used to separate the Hall ratio from
the fractional chromatic number: Kneser graphs, Mycielskians, joins of
copies, dense semi-regular pair extraction, pair-sampled subdivision
patterns, and layered random graphs.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    CodecError,
    ExtractionError,
    GraphError,
    HallLabError,
)
from .graph import (
    Bipartition,
    Graph,
    WeightAssignment,
    average_degree,
    build_graph,
    degree_sum,
)

__all__ = [
    "BudgetExceededError",
    "Bipartition",
    "CodecError",
    "ExtractionError",
    "Graph",
    "GraphError",
    "HallLabError",
    "WeightAssignment",
    "average_degree",
    "build_graph",
    "degree_sum",
    "__version__",
]
