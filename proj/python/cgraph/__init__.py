"""Concurrent directed graph with wait-free snapshots and graph analytics."""

from ._core import (
    DatasetError,
    Graph,
    HistoryFormatError,
    SnapshotEngine,
    betweenness,
    check_history,
    diameter,
    load_edge_list,
    run_benchmark,
)

__all__ = [
    "DatasetError",
    "Graph",
    "HistoryFormatError",
    "SnapshotEngine",
    "betweenness",
    "check_history",
    "diameter",
    "load_edge_list",
    "run_benchmark",
]
