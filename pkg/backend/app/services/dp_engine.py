"""Generic layer-by-layer dynamic programme: Feasible -> Extension -> Summarize.

Only the previous and the current layer tables are alive at any time. In witness
mode the predecessor of every state is additionally kept for all q layers so one
optimum solution can be walked back from the last layer.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Callable, Iterable, List, NamedTuple, Optional

from ..config import settings
from ..models.layered_graph import LayeredGraph, popcount
from ..models.outcome import SolveOutcome

logger = logging.getLogger(__name__)


class Sense(str, Enum):
    MAX = "max"
    MIN = "min"


class Phase(IntEnum):
    """Where a connected selection stands after a layer: stored above the k mask bits"""

    NOT_STARTED = 0
    ACTIVE = 1
    FINISHED = 2


# nonempty selections form one contiguous run of layers
PHASE_STEPS = frozenset({
    (Phase.NOT_STARTED, Phase.NOT_STARTED),
    (Phase.NOT_STARTED, Phase.ACTIVE),
    (Phase.ACTIVE, Phase.ACTIVE),
    (Phase.ACTIVE, Phase.FINISHED),
    (Phase.FINISHED, Phase.FINISHED),
})


class StateCell(NamedTuple):
    value: int
    count: int
    pred: int


class Summary(NamedTuple):
    value: int
    count: int
    best: int


@dataclass(frozen=True)
class Transfer:
    """Compatibility that depends on the previous state only through a k-bit signature.

    ``relation == "subset"``: l is compatible with j iff signature(i, l) is a subset of j.
    ``relation == "superset"``: iff j is a subset of signature(i, l).
    """

    signature: Callable[[int, int], int]
    relation: str


@dataclass(frozen=True)
class ProblemSpec:
    """One problem instantiated on a graph.

    Layer indices are 0-based; ``compatible(i, s, t)`` pairs state s of layer i with
    state t of layer i - 1. ``mask_of`` maps a state id to the label mask it selects.
    """

    name: str
    sense: Sense
    num_states: int
    feasible: Callable[[int, int], bool]
    compatible: Callable[[int, int, int], bool]
    candidates: Callable[[int], Iterable[int]]
    mask_of: Callable[[int], int] = field(default=lambda s: s)
    transfer: Optional[Transfer] = None

    def cost(self, state: int) -> int:
        return popcount(self.mask_of(state))


@dataclass
class LayerState:
    index: int
    cells: List[Optional[StateCell]]

    def is_valid(self, state: int) -> bool:
        return self.cells[state] is not None

    def valid_states(self) -> List[int]:
        return [s for s, cell in enumerate(self.cells) if cell is not None]

    @property
    def size(self) -> int:
        return sum(1 for cell in self.cells if cell is not None)


def _better(a: int, b: int, sense: Sense) -> bool:
    return a > b if sense is Sense.MAX else a < b


def combine(a: Optional[StateCell], b: Optional[StateCell], sense: Sense) -> Optional[StateCell]:
    """Keep the better value; on a tie add counts and keep the lower predecessor"""
    if a is None:
        return b
    if b is None:
        return a
    if _better(b.value, a.value, sense):
        return b
    if _better(a.value, b.value, sense):
        return a
    return StateCell(a.value, a.count + b.count, min(a.pred, b.pred))


def _initial_layer(spec: ProblemSpec) -> LayerState:
    cells: List[Optional[StateCell]] = [None] * spec.num_states
    for s in spec.candidates(0):
        if spec.feasible(0, s):
            cells[s] = StateCell(spec.cost(s), 1, -1)
    return LayerState(index=0, cells=cells)


def _extend_pairwise(i: int, prev: LayerState, spec: ProblemSpec) -> LayerState:
    predecessors = [(t, cell) for t, cell in enumerate(prev.cells) if cell is not None]
    cells: List[Optional[StateCell]] = [None] * spec.num_states
    for s in spec.candidates(i):
        if not spec.feasible(i, s):
            continue
        best: Optional[StateCell] = None
        for t, cell in predecessors:
            if spec.compatible(i, s, t):
                best = combine(best, StateCell(cell.value, cell.count, t), spec.sense)
        if best is not None:
            cells[s] = StateCell(best.value + spec.cost(s), best.count, best.pred)
    return LayerState(index=i, cells=cells)


def _extend_transfer(i: int, prev: LayerState, spec: ProblemSpec, key_bits: int) -> LayerState:
    size = 1 << key_bits
    table: List[Optional[StateCell]] = [None] * size
    for t, cell in enumerate(prev.cells):
        if cell is not None:
            key = spec.transfer.signature(i, t)
            table[key] = combine(table[key], StateCell(cell.value, cell.count, t), spec.sense)

    # sum over subsets (or supersets) of the signature; each signature is counted once per j
    subset = spec.transfer.relation == "subset"
    for bit in range(key_bits):
        b = 1 << bit
        for m in range(size):
            if bool(m & b) == subset:
                table[m] = combine(table[m], table[m ^ b], spec.sense)

    cells: List[Optional[StateCell]] = [None] * spec.num_states
    for s in spec.candidates(i):
        if not spec.feasible(i, s):
            continue
        best = table[spec.mask_of(s)]
        if best is not None:
            cells[s] = StateCell(best.value + spec.cost(s), best.count, best.pred)
    return LayerState(index=i, cells=cells)


def summarize(final: LayerState, sense: Sense) -> Summary:
    """Extremal value over the valid states, the summed count, and the lowest state attaining it"""
    best: Optional[StateCell] = None
    for s, cell in enumerate(final.cells):
        if cell is not None:
            best = combine(best, StateCell(cell.value, cell.count, s), sense)
    if best is None:
        raise ValueError(f"Layer {final.index + 1} has no valid state to summarize")
    return Summary(value=best.value, count=best.count, best=best.pred)


def reconstruct_witness(trail: List[List[int]], best: int) -> List[int]:
    """Walk predecessor links from the last layer back to the first"""
    states = [best]
    for preds in reversed(trail[1:]):
        states.append(preds[states[-1]])
    states.reverse()
    return states


def run_layer_dp(
    graph: LayeredGraph,
    spec: ProblemSpec,
    witness: bool = False,
    fast_transfer: Optional[bool] = None,
) -> SolveOutcome:
    start_time = time.perf_counter()
    use_transfer = settings.dp_fast_transfer if fast_transfer is None else fast_transfer
    use_transfer = use_transfer and spec.transfer is not None and spec.num_states == 1 << graph.k

    prev = _initial_layer(spec)
    peak = prev.size
    trail: List[List[int]] = []
    if witness:
        trail.append([-1] * spec.num_states)
    logger.debug(f"[{spec.name}] layer 1: {prev.size} feasible states")

    for i in range(1, graph.q):
        if prev.size == 0:
            break
        if use_transfer:
            cur = _extend_transfer(i, prev, spec, graph.k)
        else:
            cur = _extend_pairwise(i, prev, spec)
        if witness:
            trail.append([cell.pred if cell is not None else -1 for cell in cur.cells])
        peak = max(peak, cur.size)
        logger.debug(f"[{spec.name}] layer {i + 1}: {cur.size} valid states")
        prev = cur

    elapsed = time.perf_counter() - start_time
    if prev.size == 0 or prev.index != graph.q - 1:
        return SolveOutcome.infeasible(states_peak=peak, elapsed_seconds=elapsed)

    summary = summarize(prev, spec.sense)
    masks = None
    if witness:
        masks = [spec.mask_of(s) for s in reconstruct_witness(trail, summary.best)]
    return SolveOutcome.optimum(
        summary.value, summary.count, masks, states_peak=peak, elapsed_seconds=elapsed
    )
