"""Social-learning search on NK landscapes over networks.

Thin re-export of the compiled extension. Build the CMake project with
NKSEARCH_PYTHON=ON (the default) and put <build>/python on PYTHONPATH.
"""

from ._core import (
    BatchResult,
    Graph,
    NkLandscape,
    Solution,
    TimeSeries,
    complete_graph,
    diameter,
    individual_step,
    load_edge_list,
    mean_betweenness,
    mean_closeness,
    mean_clustering,
    mean_constraint,
    pearson_r,
    random_regular,
    rewire_optimize,
    ring_lattice,
    run,
    run_batch,
    save_edge_list,
)

__all__ = [
    "BatchResult",
    "Graph",
    "NkLandscape",
    "Solution",
    "TimeSeries",
    "complete_graph",
    "diameter",
    "individual_step",
    "load_edge_list",
    "mean_betweenness",
    "mean_closeness",
    "mean_clustering",
    "mean_constraint",
    "pearson_r",
    "random_regular",
    "rewire_optimize",
    "ring_lattice",
    "run",
    "run_batch",
    "save_edge_list",
]
