"""Brute-force ground truth on the flattened graph.

Nothing here looks at layers beyond flattening: subsets of the global vertex ids
are enumerated cardinality by cardinality (increasing for minimisation,
decreasing for MIS) and the first cardinality with a solution gives the optimum
and its exact count.
"""
import logging
import time
from itertools import combinations
from typing import List, Optional, Sequence

import networkx as nx

from ..config import settings
from ..models.errors import InstanceTooLarge
from ..models.layered_graph import FlatGraph, LayeredGraph, flatten
from ..models.outcome import ProblemKind, SolveOutcome

logger = logging.getLogger(__name__)


def _neighbour_masks(flat: FlatGraph) -> List[int]:
    nbr = [0] * len(flat.vertices)
    for u, v in flat.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    return nbr


def _induces_connected(subset: int, nbr: Sequence[int]) -> bool:
    if subset == 0:
        return True
    reached = subset & -subset
    frontier = reached
    while frontier:
        grown = 0
        v = 0
        while frontier >> v:
            if frontier >> v & 1:
                grown |= nbr[v]
            v += 1
        grown &= subset & ~reached
        reached |= grown
        frontier = grown
    return reached == subset


def _satisfies(kind: ProblemKind, subset: int, n: int, nbr: Sequence[int]) -> bool:
    everything = (1 << n) - 1
    if kind is ProblemKind.MIS:
        return all(not (subset >> v & 1) or not nbr[v] & subset for v in range(n))
    if kind in (ProblemKind.MVC, ProblemKind.CVC):
        covers = all(subset >> v & 1 or nbr[v] & ~subset == 0 for v in range(n))
        return covers and (kind is ProblemKind.MVC or _induces_connected(subset, nbr))
    reached = subset
    for v in range(n):
        if subset >> v & 1:
            reached |= nbr[v]
    dominates = reached == everything
    return dominates and (kind is ProblemKind.MDS or _induces_connected(subset, nbr))


def _to_layer_masks(graph: LayeredGraph, flat: FlatGraph, vertices: Sequence[int]) -> List[int]:
    masks = [0] * graph.q
    for v in vertices:
        layer, label = flat.vertices[v]
        masks[layer - 1] |= 1 << (label - 1)
    return masks


def oracle_solve(graph: LayeredGraph, kind: ProblemKind, max_vertices: Optional[int] = None) -> SolveOutcome:
    cap = settings.oracle_max_vertices if max_vertices is None else max_vertices
    if graph.n > cap:
        raise InstanceTooLarge(graph.n, cap)

    start_time = time.perf_counter()
    flat = flatten(graph)
    n = len(flat.vertices)
    nbr = _neighbour_masks(flat)
    sizes = range(n, -1, -1) if kind.maximizes else range(n + 1)

    for size in sizes:
        count = 0
        first = None
        for chosen in combinations(range(n), size):
            subset = 0
            for v in chosen:
                subset |= 1 << v
            if _satisfies(kind, subset, n, nbr):
                count += 1
                if first is None:
                    first = chosen
        if count:
            elapsed = time.perf_counter() - start_time
            logger.info(f"Oracle {kind.value}: value={size}, count={count}, n={n}, time={elapsed:.3f}s")
            witness = _to_layer_masks(graph, flat, first)
            return SolveOutcome.optimum(size, count, witness, elapsed_seconds=elapsed)

    elapsed = time.perf_counter() - start_time
    logger.info(f"Oracle {kind.value}: infeasible, n={n}, time={elapsed:.3f}s")
    return SolveOutcome.infeasible(elapsed_seconds=elapsed)


def check_witness(graph: LayeredGraph, kind: ProblemKind, witness: Sequence[int]) -> bool:
    """Does the union of the per-layer masks satisfy the problem's definition on the flat graph?"""
    if len(witness) != graph.q:
        return False
    if any(mask & ~layer.present for mask, layer in zip(witness, graph.layers)):
        return False

    flat = flatten(graph)
    nx_graph = flat.to_networkx()
    chosen = {
        v for v, (layer, label) in enumerate(flat.vertices)
        if witness[layer - 1] >> (label - 1) & 1
    }

    if kind is ProblemKind.MIS:
        return nx_graph.subgraph(chosen).number_of_edges() == 0
    if kind in (ProblemKind.MVC, ProblemKind.CVC):
        valid = all(u in chosen or v in chosen for u, v in nx_graph.edges())
    else:
        valid = nx.is_dominating_set(nx_graph, chosen)
    if valid and kind in (ProblemKind.CVC, ProblemKind.CDS) and chosen:
        valid = nx.is_connected(nx_graph.subgraph(chosen))
    return valid
