"""Exact minimum connected vertex cover / connected dominating set.

States carry the selected mask of the current layer together with a canonical
partition of its bits into the connected components of the whole selection so
far. A component that loses contact with the current layer can never be reached
again (edges only join consecutive layers), so it is pruned unless it is the only
component and the selection stops for good.
"""
import logging
import time
from typing import Dict, List, NamedTuple, Optional, Tuple

from ..config import settings
from ..models.errors import CdsOnDisconnected
from ..models.layered_graph import LayeredGraph, bits_of, classify, popcount
from ..models.outcome import SolveOutcome
from .dp_engine import Phase, Sense, StateCell, combine
from .mask_kernel import closed_neighbourhood, compatible_vc, is_cover_in_layer, neighbours, submasks

logger = logging.getLogger(__name__)


class PartitionState(NamedTuple):
    phase: int
    mask: int
    coloring: Tuple[int, ...]
    undominated: int = 0


def bell_number(k: int) -> int:
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


class _Components:
    """Union-find over small integer ids with path compression"""

    def __init__(self, size: int):
        self.parents = list(range(size))

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parents[rb] = ra


def canonical_coloring(roots: List[int]) -> Tuple[int, ...]:
    """Restricted-growth relabelling: first bit gets 0, each new component the next id"""
    ids: Dict[int, int] = {}
    return tuple(ids.setdefault(root, len(ids)) for root in roots)


class ExactConnectivityDP:
    def __init__(self, graph: LayeredGraph, dominating: bool, assert_bounds: Optional[bool] = None):
        self.graph = graph
        self.dominating = dominating
        self.k = graph.k
        self.assert_bounds = settings.assert_state_bounds if assert_bounds is None else assert_bounds
        self.name = "cds-exact" if dominating else "cvc-exact"
        # active (mask, partition[, undominated]) states, plus not-started and finished ones
        spread = (1 << self.k) if dominating else 1
        self.state_cap = (1 << self.k) * bell_number(self.k) * spread + 1 + spread

    def _connect(self, i: int, prev: PartitionState, j: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
        """Phase and coloring after choosing j in layer i, or None when connectivity is lost"""
        if prev.phase == Phase.FINISHED:
            return (Phase.FINISHED, ()) if j == 0 else None
        if j == 0:
            if prev.phase == Phase.NOT_STARTED:
                return Phase.NOT_STARTED, ()
            return (Phase.FINISHED, ()) if max(prev.coloring) == 0 else None

        layer = self.graph.layers[i]
        bits = list(bits_of(j))
        offset = len(set(prev.coloring))
        components = _Components(offset + len(bits))
        slot = {x: offset + n for n, x in enumerate(bits)}
        prev_bits = list(bits_of(prev.mask))
        prev_component = dict(zip(prev_bits, prev.coloring))
        inter = self.graph.inters[i - 1] if i > 0 else None

        for x in bits:
            for y in bits_of(layer.adj[x] & j):
                components.union(slot[x], slot[y])
            if inter is not None:
                for y in bits_of(inter.bwd[x] & prev.mask):
                    components.union(slot[x], prev_component[y])

        new_roots = {components.find(slot[x]) for x in bits}
        if any(components.find(c) not in new_roots for c in range(offset)):
            return None
        return Phase.ACTIVE, canonical_coloring([components.find(slot[x]) for x in bits])

    def _step(self, i: int, prev: PartitionState, j: int) -> Optional[PartitionState]:
        layer = self.graph.layers[i]
        inter = self.graph.inters[i - 1] if i > 0 else None
        if self.dominating:
            if inter is not None and prev.undominated & ~neighbours(j, inter.bwd):
                return None
            reached = closed_neighbourhood(j, layer)
            if inter is not None:
                reached |= neighbours(prev.mask, inter.fwd)
            undominated = layer.present & ~reached
        else:
            if not is_cover_in_layer(j, layer):
                return None
            if inter is not None and not compatible_vc(j, prev.mask, inter):
                return None
            undominated = 0
        connected = self._connect(i, prev, j)
        if connected is None:
            return None
        phase, coloring = connected
        return PartitionState(phase, j, coloring, undominated)

    def _accepting(self, state: PartitionState) -> bool:
        if state.undominated:
            return False
        if state.phase == Phase.ACTIVE:
            return max(state.coloring) == 0
        return True

    def run(self, witness: bool = False) -> SolveOutcome:
        start_time = time.perf_counter()
        origin = PartitionState(Phase.NOT_STARTED, 0, ())
        prev_keys: List[PartitionState] = [origin]
        prev_cells: List[StateCell] = [StateCell(0, 1, -1)]
        peak = 0
        trail: List[Tuple[List[PartitionState], List[StateCell]]] = []

        for i, layer in enumerate(self.graph.layers):
            table: Dict[PartitionState, StateCell] = {}
            for t, (state, cell) in enumerate(zip(prev_keys, prev_cells)):
                for j in submasks(layer.present):
                    nxt = self._step(i, state, j)
                    if nxt is not None:
                        candidate = StateCell(cell.value + popcount(j), cell.count, t)
                        table[nxt] = combine(table.get(nxt), candidate, Sense.MIN)
            if self.assert_bounds:
                assert len(table) <= self.state_cap, f"layer {i + 1}: {len(table)} partition states exceed the bound"
            prev_keys = sorted(table)
            prev_cells = [table[key] for key in prev_keys]
            peak = max(peak, len(prev_keys))
            logger.debug(f"[{self.name}] layer {i + 1}: {len(prev_keys)} partition states")
            if witness:
                trail.append((prev_keys, prev_cells))
            if not prev_keys:
                break

        best: Optional[StateCell] = None
        for t, (state, cell) in enumerate(zip(prev_keys, prev_cells)):
            if self._accepting(state):
                best = combine(best, StateCell(cell.value, cell.count, t), Sense.MIN)

        elapsed = time.perf_counter() - start_time
        if best is None:
            return SolveOutcome.infeasible(states_peak=peak, elapsed_seconds=elapsed)

        masks = None
        if witness:
            masks = []
            index = best.pred
            for keys, cells in reversed(trail):
                masks.append(keys[index].mask)
                index = cells[index].pred
            masks.reverse()
        return SolveOutcome.optimum(best.value, best.count, masks, states_peak=peak, elapsed_seconds=elapsed)


def solve_cvc_exact(graph: LayeredGraph, witness: bool = False) -> SolveOutcome:
    if not graph.has_edges:
        return SolveOutcome.optimum(0, 1, [0] * graph.q if witness else None)
    return ExactConnectivityDP(graph, dominating=False).run(witness)


def solve_cds_exact(graph: LayeredGraph, witness: bool = False) -> SolveOutcome:
    if not classify(graph).is_clg:
        raise CdsOnDisconnected()
    return ExactConnectivityDP(graph, dominating=True).run(witness)
