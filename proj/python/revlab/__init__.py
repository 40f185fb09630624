"""Python face of the reversible-simulation laboratory."""

from ._core import (
    bennett_metrics,
    bennett_moves,
    chain_nodes,
    chain_sim_moves,
    compress_roundtrip,
    direct_run,
    euler_tour_random,
    find_incompressible,
    min_pebbles,
    oracle_call,
    separator,
    sim_bennett,
)

__all__ = [
    "bennett_metrics",
    "bennett_moves",
    "chain_nodes",
    "chain_sim_moves",
    "compress_roundtrip",
    "direct_run",
    "euler_tour_random",
    "find_incompressible",
    "min_pebbles",
    "oracle_call",
    "separator",
    "sim_bennett",
]
