"""The five problems on k-restricted layered graphs.

MIS, MVC and paper-mode CVC run on the generic mask engine; MDS and paper-mode
CDS on the triple-state domination DP. ``solve`` dispatches, including the exact
connectivity DP for CVC/CDS.
"""
import logging
import time
from typing import Optional, Union

from ..config import settings
from ..models.errors import CdsOnDisconnected, UnsupportedMode
from ..models.layered_graph import LayeredGraph, classify
from ..models.outcome import ProblemKind, SolveMode, SolveOutcome
from .domination_dp import DominationDP
from .dp_engine import PHASE_STEPS, Phase, ProblemSpec, Sense, Transfer, run_layer_dp
from .exact_connectivity import solve_cds_exact, solve_cvc_exact
from .mask_kernel import (
    compatible_is,
    compatible_vc,
    has_cross_edge,
    is_connected_in_layer,
    is_cover_in_layer,
    is_independent_in_layer,
    neighbours,
    submasks,
    uncovered_requirement,
)
from .oracle import check_witness

logger = logging.getLogger(__name__)


def mis_spec(graph: LayeredGraph) -> ProblemSpec:
    layers, inters, full = graph.layers, graph.inters, graph.full_mask
    return ProblemSpec(
        name="mis",
        sense=Sense.MAX,
        num_states=1 << graph.k,
        feasible=lambda i, j: is_independent_in_layer(j, layers[i]),
        compatible=lambda i, j, l: compatible_is(j, l, inters[i - 1]),
        candidates=lambda i: submasks(layers[i].present),
        transfer=Transfer(
            signature=lambda i, l: full & ~neighbours(l, inters[i - 1].fwd),
            relation="superset",
        ),
    )


def mvc_spec(graph: LayeredGraph) -> ProblemSpec:
    layers, inters = graph.layers, graph.inters
    return ProblemSpec(
        name="mvc",
        sense=Sense.MIN,
        num_states=1 << graph.k,
        feasible=lambda i, j: is_cover_in_layer(j, layers[i]),
        compatible=lambda i, j, l: compatible_vc(j, l, inters[i - 1]),
        candidates=lambda i: submasks(layers[i].present),
        transfer=Transfer(
            signature=lambda i, l: uncovered_requirement(l, inters[i - 1]),
            relation="subset",
        ),
    )


def cvc_paper_spec(graph: LayeredGraph) -> ProblemSpec:
    """States carry a phase above the mask bits: empty masks only before or after the run"""
    layers, inters, k, full = graph.layers, graph.inters, graph.k, graph.full_mask

    def candidates(i: int):
        yield Phase.NOT_STARTED << k
        for j in submasks(layers[i].present):
            if j:
                yield (Phase.ACTIVE << k) | j
        yield Phase.FINISHED << k

    def feasible(i: int, state: int) -> bool:
        phase, j = state >> k, state & full
        layer = layers[i]
        if phase == Phase.ACTIVE:
            return j != 0 and is_cover_in_layer(j, layer) and is_connected_in_layer(j, layer)
        if phase == Phase.FINISHED and i == 0:
            return False
        return j == 0 and is_cover_in_layer(0, layer)

    def compatible(i: int, state: int, prev: int) -> bool:
        phase, j = state >> k, state & full
        prev_phase, l = prev >> k, prev & full
        if (prev_phase, phase) not in PHASE_STEPS:
            return False
        inter = inters[i - 1]
        if not compatible_vc(j, l, inter):
            return False
        if prev_phase == Phase.ACTIVE and phase == Phase.ACTIVE:
            return has_cross_edge(j, l, inter)
        return True

    return ProblemSpec(
        name="cvc-paper",
        sense=Sense.MIN,
        num_states=3 << k,
        feasible=feasible,
        compatible=compatible,
        candidates=candidates,
        mask_of=lambda state: state & full,
    )


def solve_mis(graph: LayeredGraph, witness: bool = False) -> SolveOutcome:
    """Maximum independent set: size and number of optimum sets"""
    return run_layer_dp(graph, mis_spec(graph), witness)


def solve_mvc(graph: LayeredGraph, witness: bool = False) -> SolveOutcome:
    """Minimum vertex cover: size and number of optimum covers"""
    return run_layer_dp(graph, mvc_spec(graph), witness)


def solve_cvc_paper(graph: LayeredGraph, witness: bool = False) -> SolveOutcome:
    """Connected vertex cover by the layer-wise rule; an upper bound on the true optimum"""
    return run_layer_dp(graph, cvc_paper_spec(graph), witness)


def solve_mds(graph: LayeredGraph, witness: bool = False) -> SolveOutcome:
    """Minimum dominating set: size and number of optimum sets"""
    return DominationDP(graph).run(witness)


def solve_cds_paper(graph: LayeredGraph, witness: bool = False) -> SolveOutcome:
    """Connected dominating set by the layer-wise rule; raises CdsOnDisconnected on a disconnected graph"""
    if not classify(graph).is_clg:
        raise CdsOnDisconnected()
    return DominationDP(graph, connected=True).run(witness)


_PAPER_SOLVERS = {
    ProblemKind.MIS: solve_mis,
    ProblemKind.MVC: solve_mvc,
    ProblemKind.CVC: solve_cvc_paper,
    ProblemKind.MDS: solve_mds,
    ProblemKind.CDS: solve_cds_paper,
}

_EXACT_SOLVERS = {
    ProblemKind.CVC: solve_cvc_exact,
    ProblemKind.CDS: solve_cds_exact,
}


def solve(
    graph: LayeredGraph,
    kind: Union[ProblemKind, str],
    mode: Optional[Union[SolveMode, str]] = None,
    witness: bool = False,
) -> SolveOutcome:
    """Dispatch to the solver for (kind, mode); the witness, when returned, is re-verified"""
    kind = ProblemKind(kind)
    mode = SolveMode(mode or settings.default_mode)
    if mode is SolveMode.EXACT and kind not in _EXACT_SOLVERS:
        raise UnsupportedMode(kind.value, mode.value)
    solver = _EXACT_SOLVERS[kind] if mode is SolveMode.EXACT else _PAPER_SOLVERS[kind]

    logger.info(f"Solving {kind.value} ({mode.value}) - k={graph.k}, q={graph.q}, n={graph.n}")
    start_time = time.perf_counter()
    try:
        outcome = solver(graph, witness)
    except CdsOnDisconnected:
        logger.warning(f"Rejected {kind.value}: graph is not connected")
        raise
    except Exception as e:
        logger.error(f"Solver {kind.value} ({mode.value}) failed: {str(e)}", exc_info=True)
        raise
    elapsed = time.perf_counter() - start_time

    if outcome.is_optimum:
        logger.info(
            f"Solved {kind.value} ({mode.value}) - value={outcome.value}, count={outcome.count}, "
            f"peak states={outcome.states_peak}, time={elapsed:.3f}s"
        )
        if outcome.witness is not None and not check_witness(graph, kind, outcome.witness):
            logger.error(f"Witness for {kind.value} ({mode.value}) failed verification: {outcome.witness}")
            raise RuntimeError(f"Reconstructed {kind.value} witness does not verify")
    else:
        logger.info(f"{kind.value} ({mode.value}) is infeasible - time={elapsed:.3f}s")
    return outcome
