"""Triple-state DP for dominating sets.

For every (layer, mask) the table keeps at most one record per undominated mask u:
the minimum number of vertices chosen so far and how many selections reach it.
A predecessor (previous key, previous u) is only admissible for mask j when every
vertex of the previous layer still undominated is dominated by j across the
inter-layer edges; the earlier layer can never be rescued afterwards.
"""
import logging
import time
from typing import Dict, Iterable, List, Optional, Tuple

from ..config import settings
from ..models.layered_graph import LayeredGraph, popcount
from ..models.outcome import SolveOutcome
from .dp_engine import PHASE_STEPS, Phase, Sense, StateCell, combine
from .mask_kernel import closed_neighbourhood, dominated_set, is_connected_in_layer, neighbours, submasks

logger = logging.getLogger(__name__)

# key -> {undominated mask -> (size, count, pred)}
TripleTable = Dict[int, Dict[int, StateCell]]


class DominationDP:
    """MDS, or with ``connected=True`` the paper-mode CDS (contiguous run of
    nonempty connected masks joined by cross edges)."""

    def __init__(self, graph: LayeredGraph, connected: bool = False, assert_bounds: Optional[bool] = None):
        self.graph = graph
        self.connected = connected
        self.k = graph.k
        self.full = graph.full_mask
        self.assert_bounds = settings.assert_state_bounds if assert_bounds is None else assert_bounds
        self.name = "cds-paper" if connected else "mds"

    def _keys(self, i: int) -> Iterable[Tuple[int, Phase, int]]:
        """Yield (key, phase, mask) for every feasible choice in layer i"""
        layer = self.graph.layers[i]
        if not self.connected:
            for j in submasks(layer.present):
                yield j, Phase.ACTIVE, j
            return
        yield Phase.NOT_STARTED << self.k, Phase.NOT_STARTED, 0
        for j in submasks(layer.present):
            if j and is_connected_in_layer(j, layer):
                yield (Phase.ACTIVE << self.k) | j, Phase.ACTIVE, j
        if i > 0:
            yield Phase.FINISHED << self.k, Phase.FINISHED, 0

    def _initial(self) -> TripleTable:
        layer = self.graph.layers[0]
        table: TripleTable = {}
        for key, phase, j in self._keys(0):
            if phase is Phase.FINISHED:
                continue
            u = layer.present & ~closed_neighbourhood(j, layer)
            table[key] = {u: StateCell(popcount(j), 1, -1)}
        return table

    def _extend(self, i: int, prev: TripleTable) -> TripleTable:
        layer = self.graph.layers[i]
        prev_layer = self.graph.layers[i - 1]
        inter = self.graph.inters[i - 1]

        # predecessors only matter through (phase, forward neighbourhood, undominated mask);
        # any mask of a group stands for all of them, and u never meets its closed neighbourhood
        groups: Dict[Tuple[int, int], Tuple[int, Dict[int, StateCell]]] = {}
        for key, triples in prev.items():
            prev_phase, l = key >> self.k, key & self.full
            _, bucket = groups.setdefault((prev_phase, neighbours(l, inter.fwd)), (l, {}))
            for u, cell in triples.items():
                bucket[u] = combine(bucket.get(u), StateCell(cell.value, cell.count, (key << self.k) | u), Sense.MIN)

        table: TripleTable = {}
        for key, phase, j in self._keys(i):
            size = popcount(j)
            cells: Dict[int, StateCell] = {}
            for (prev_phase, f), (l, bucket) in groups.items():
                if self.connected:
                    if (prev_phase, phase) not in PHASE_STEPS:
                        continue
                    if prev_phase == Phase.ACTIVE and phase is Phase.ACTIVE and not f & j:
                        continue
                dom_prev, dom_cur = dominated_set(l, j, prev_layer, layer, inter)
                new_u = layer.present & ~dom_cur
                for u, cell in bucket.items():
                    if u & ~dom_prev:
                        continue
                    cells[new_u] = combine(cells.get(new_u), StateCell(cell.value + size, cell.count, cell.pred), Sense.MIN)
            if cells:
                if self.assert_bounds:
                    assert len(cells) <= 1 << self.k, f"layer {i + 1}, key {key}: {len(cells)} triples exceed 2^k"
                table[key] = cells
        return table

    def run(self, witness: bool = False) -> SolveOutcome:
        start_time = time.perf_counter()
        table = self._initial()
        peak = sum(len(cells) for cells in table.values())
        trail: List[Dict[int, int]] = []
        if witness:
            trail.append({})

        for i in range(1, self.graph.q):
            table = self._extend(i, table)
            size = sum(len(cells) for cells in table.values())
            peak = max(peak, size)
            logger.debug(f"[{self.name}] layer {i + 1}: {len(table)} masks, {size} triples")
            if witness:
                trail.append({(key << self.k) | u: cell.pred for key, cells in table.items() for u, cell in cells.items()})
            if not table:
                break

        # the final layer must be dominated as well
        best: Optional[StateCell] = None
        for key, cells in table.items():
            cell = cells.get(0)
            if cell is not None:
                best = combine(best, StateCell(cell.value, cell.count, key << self.k), Sense.MIN)

        elapsed = time.perf_counter() - start_time
        if best is None:
            return SolveOutcome.infeasible(states_peak=peak, elapsed_seconds=elapsed)

        masks = None
        if witness:
            masks = self._walk_back(trail, best.pred)
        return SolveOutcome.optimum(best.value, best.count, masks, states_peak=peak, elapsed_seconds=elapsed)

    def _walk_back(self, trail: List[Dict[int, int]], code: int) -> List[int]:
        masks = []
        for i in range(self.graph.q - 1, -1, -1):
            masks.append((code >> self.k) & self.full)
            if i > 0:
                code = trail[i][code]
        masks.reverse()
        return masks
