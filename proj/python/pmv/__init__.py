"""Partitioned iterative matrix-vector multiplication.

Thin wrapper over the C++ engine. ``run`` returns the report as a dict with
the final vector under ``"final_vector"``.
"""

import json

from ._pmv import (
    EdgeList,
    PartitionedGraph,
    PmvError,
    choose_theta,
    cost_horizontal,
    cost_hybrid,
    cost_vertical,
    densify,
    generate_rmat,
    load_dataset,
    parse_edge_list,
    partition,
    reference_multiply,
    save_dataset,
    select_strategy,
)
from ._pmv import run as _run

__all__ = [
    "EdgeList",
    "PartitionedGraph",
    "PmvError",
    "choose_theta",
    "cost_horizontal",
    "cost_hybrid",
    "cost_vertical",
    "densify",
    "generate_rmat",
    "load_dataset",
    "parse_edge_list",
    "partition",
    "reference_multiply",
    "run",
    "save_dataset",
    "select_strategy",
]


def run(graph, algorithm="pagerank", strategy="hybrid", iterations=8, **options):
    """Run a catalog algorithm; options: epsilon, source, theta, workers, schedule_seed, init."""
    text, final = _run(graph, algorithm, strategy, iterations, **options)
    report = json.loads(text)
    report["final_vector"] = final
    return report
