import time

import pytest

from app.models.errors import CdsOnDisconnected, UnsupportedMode
from app.models.layered_graph import GraphDescription, classify, popcount, validate
from app.models.outcome import ProblemKind, SolveMode
from app.services.bench_service import BenchService
from app.services.graph_io import gen_full, gen_path, gen_random
from app.services.mask_kernel import compatible_is, compatible_vc
from app.services.oracle import check_witness, oracle_solve
from app.services.solvers import (
    solve,
    solve_cds_paper,
    solve_cvc_paper,
    solve_mds,
    solve_mis,
    solve_mvc,
)

from .corpus import ABSENT_CORPUS, CLIQUE_LAYER_LARGE, FULL_CORPUS, SMALL_CORPUS, SPARSE_LARGE


def _answer(outcome):
    return outcome.value, outcome.count


@pytest.fixture
def single_path_layer():
    # one layer holding the path 1 - 2 - 3
    return validate(GraphDescription(k=3, layers=[[1, 2, 3]], intra=[(1, 1, 2), (1, 2, 3)]))


@pytest.fixture
def two_components():
    # two layers, each a single edge, no inter edges
    return validate(GraphDescription(k=2, layers=[[1, 2], [1, 2]], intra=[(1, 1, 2), (2, 1, 2)]))


class TestMaximumIndependentSet:

    def test_single_clique_layer(self):
        """Test that K_3 has 3 maximum independent sets of size 1"""
        assert _answer(solve_mis(gen_full(3, 1))) == (1, 3)

    def test_full_graph(self):
        """Test K_3^3: one vertex from each of layers 1 and 3"""
        assert _answer(solve_mis(gen_full(3, 3))) == (2, 9)

    def test_path_of_six(self):
        """Test P_6: size 3 in 4 ways"""
        assert _answer(solve_mis(gen_path(6))) == (3, 4)

    def test_edgeless_graph(self):
        """Test that an edgeless graph is its own unique maximum independent set"""
        graph = gen_random(3, 2, 0.0, 0.0, seed=0)

        assert _answer(solve_mis(graph)) == (6, 1)

    def test_witness_pairs_are_compatible(self):
        """Test that consecutive witness masks never share an inter edge"""
        graph = gen_random(4, 5, 0.4, 0.4, seed=3)

        outcome = solve_mis(graph, witness=True)

        assert sum(popcount(mask) for mask in outcome.witness) == outcome.value
        for i in range(1, graph.q):
            assert compatible_is(outcome.witness[i], outcome.witness[i - 1], graph.inters[i - 1])


class TestMinimumVertexCover:

    def test_edgeless_graph(self):
        """Test that the empty cover is unique on an edgeless graph"""
        graph = gen_random(3, 3, 0.0, 0.0, seed=0)

        assert _answer(solve_mvc(graph)) == (0, 1)

    def test_full_graph(self):
        """Test K_3^3: 7 vertices in 9 ways"""
        assert _answer(solve_mvc(gen_full(3, 3))) == (7, 9)

    def test_path_of_four(self):
        """Test P_4: size 2 in 3 ways"""
        assert _answer(solve_mvc(gen_path(4))) == (2, 3)

    def test_witness_pairs_are_compatible(self):
        """Test that consecutive witness masks cover the inter edges between them"""
        graph = gen_random(4, 5, 0.4, 0.4, seed=4)

        outcome = solve_mvc(graph, witness=True)

        assert sum(popcount(mask) for mask in outcome.witness) == outcome.value
        for i in range(1, graph.q):
            assert compatible_vc(outcome.witness[i], outcome.witness[i - 1], graph.inters[i - 1])

    @pytest.mark.parametrize("seed", range(10))
    def test_complement_duality(self, seed):
        """Test that maximum independent set plus minimum vertex cover equals n"""
        graph = gen_random(4, 4, 0.5, 0.5, seed)

        assert solve_mis(graph).value + solve_mvc(graph).value == graph.n


class TestConnectedVertexCover:

    def test_single_path_layer(self, single_path_layer):
        """Test that the middle vertex of 1-2-3 covers and is connected"""
        outcome = solve_cvc_paper(single_path_layer, witness=True)

        assert _answer(outcome) == (1, 1)
        assert outcome.witness == [0b010]

    def test_full_two_by_two(self):
        """Test K_2^2, which is K_4: 3 vertices in 4 ways"""
        assert _answer(solve_cvc_paper(gen_full(2, 2))) == (3, 4)

    def test_edgeless_graph(self):
        """Test that the empty selection is the unique cover without edges"""
        graph = gen_random(2, 3, 0.0, 0.0, seed=0)

        assert _answer(solve_cvc_paper(graph)) == (0, 1)

    def test_two_components_infeasible(self, two_components):
        """Test that two separate edges admit no connected cover"""
        assert not solve_cvc_paper(two_components).is_optimum

    def test_empty_layers_allowed_around_the_run(self):
        """Test an edge in layer 2 with edgeless, unlinked layers around it"""
        graph = validate(GraphDescription(k=2, layers=[[1], [1, 2], [2]], intra=[(2, 1, 2)]))

        outcome = solve_cvc_paper(graph, witness=True)

        assert _answer(outcome) == (1, 2)
        assert outcome.witness[0] == 0 and outcome.witness[2] == 0


class TestMinimumDominatingSet:

    def test_single_clique_layer(self):
        """Test that any single vertex dominates K_3"""
        assert _answer(solve_mds(gen_full(3, 1))) == (1, 3)

    def test_path_of_three(self):
        """Test that the middle vertex of P_3 is the unique minimum"""
        outcome = solve_mds(gen_path(3), witness=True)

        assert _answer(outcome) == (1, 1)
        assert outcome.witness == [0, 1, 0]

    def test_path_of_six(self):
        """Test that {2, 5} is the only minimum dominating set of P_6"""
        outcome = solve_mds(gen_path(6), witness=True)

        assert _answer(outcome) == (2, 1)
        assert outcome.witness == [0, 1, 0, 0, 1, 0]

    def test_isolated_vertices(self):
        """Test that isolated vertices must all be chosen"""
        graph = gen_random(2, 2, 0.0, 0.0, seed=0)

        assert _answer(solve_mds(graph)) == (4, 1)

    def test_triple_bound_asserted(self):
        """Test that the per-mask triple bound holds on a dense instance"""
        graph = gen_random(4, 6, 0.5, 0.5, seed=2)

        outcome = solve_mds(graph)

        assert outcome.is_optimum
        assert outcome.states_peak <= (1 << graph.k) ** 2


class TestConnectedDominatingSet:

    def test_single_clique_layer(self):
        """Test that any single vertex of K_3 is a connected dominating set"""
        assert _answer(solve_cds_paper(gen_full(3, 1))) == (1, 3)

    def test_path_of_four(self):
        """Test that {2, 3} is the only minimum connected dominating set of P_4"""
        outcome = solve_cds_paper(gen_path(4), witness=True)

        assert _answer(outcome) == (2, 1)
        assert outcome.witness == [0, 1, 1, 0]

    def test_full_two_by_three(self):
        """Test K_2^3: either middle vertex dominates all six"""
        assert _answer(solve_cds_paper(gen_full(2, 3))) == (1, 2)

    def test_disconnected_graph_rejected(self, two_components):
        """Test that CDS refuses a graph that is not connected"""
        with pytest.raises(CdsOnDisconnected):
            solve_cds_paper(two_components)


class TestSolveDispatch:

    def test_paper_mode_is_default(self):
        """Test that solve() routes MIS to the mask DP"""
        graph = gen_full(3, 3)

        assert solve(graph, ProblemKind.MIS).same_answer(solve_mis(graph))

    def test_accepts_plain_strings(self):
        """Test that kind and mode may be given as strings"""
        outcome = solve(gen_full(2, 2), "cvc", "exact")

        assert _answer(outcome) == (3, 4)

    @pytest.mark.parametrize("kind", [ProblemKind.MIS, ProblemKind.MVC, ProblemKind.MDS])
    def test_exact_mode_unsupported(self, kind):
        """Test that exact mode exists only for CVC and CDS"""
        with pytest.raises(UnsupportedMode):
            solve(gen_path(3), kind, SolveMode.EXACT)

    @pytest.mark.parametrize("mode", [SolveMode.PAPER, SolveMode.EXACT])
    def test_cds_on_disconnected(self, two_components, mode):
        """Test that both CDS modes reject a disconnected graph"""
        with pytest.raises(CdsOnDisconnected):
            solve(two_components, ProblemKind.CDS, mode)

    def test_witness_is_verified(self):
        """Test that a returned witness passes the independent checker"""
        graph = gen_random(3, 4, 0.5, 0.5, seed=5)
        for kind in ProblemKind:
            if kind is ProblemKind.CDS and not classify(graph).is_clg:
                continue
            outcome = solve(graph, kind, witness=True)
            if outcome.is_optimum:
                assert check_witness(graph, kind, outcome.witness)


def _check_against_oracle(graph):
    for kind in (ProblemKind.MIS, ProblemKind.MVC, ProblemKind.MDS):
        outcome = solve(graph, kind, witness=True)
        assert outcome.same_answer(oracle_solve(graph, kind)), kind
        assert sum(popcount(mask) for mask in outcome.witness) == outcome.value

    kinds = [ProblemKind.CVC]
    if classify(graph).is_clg:
        kinds.append(ProblemKind.CDS)
    for kind in kinds:
        truth = oracle_solve(graph, kind)
        exact = solve(graph, kind, SolveMode.EXACT, witness=True)
        assert exact.same_answer(truth), kind
        if exact.is_optimum:
            assert check_witness(graph, kind, exact.witness)

        paper = solve(graph, kind, SolveMode.PAPER, witness=True)
        if paper.is_optimum:
            assert truth.is_optimum
            assert paper.value >= truth.value
            assert check_witness(graph, kind, paper.witness)


class TestOracleEquivalence:

    @pytest.mark.parametrize("graph", SMALL_CORPUS)
    def test_small_corpus(self, graph):
        """Test every solver against brute force on small instances"""
        _check_against_oracle(graph)

    @pytest.mark.parametrize("graph", ABSENT_CORPUS)
    def test_absent_labels(self, graph):
        """Test every solver against brute force when layers leave labels out"""
        _check_against_oracle(graph)

    @pytest.mark.slow
    @pytest.mark.parametrize("graph", FULL_CORPUS)
    def test_full_corpus(self, graph):
        """Test every solver against brute force on the full sweep"""
        _check_against_oracle(graph)

    @pytest.mark.slow
    @pytest.mark.parametrize("graph", SPARSE_LARGE)
    @pytest.mark.parametrize("kind", [ProblemKind.MIS, ProblemKind.MVC])
    def test_sparse_large_cells(self, graph, kind):
        """Test MIS and MVC against brute force on sparse instances with up to 24 vertices"""
        outcome = solve(graph, kind, witness=True)

        assert outcome.same_answer(oracle_solve(graph, kind, max_vertices=24))
        assert check_witness(graph, kind, outcome.witness)

    @pytest.mark.slow
    @pytest.mark.parametrize("graph", CLIQUE_LAYER_LARGE)
    def test_clique_layer_large_cells(self, graph):
        """Test MDS against brute force on clique-layer instances with up to 24 vertices"""
        outcome = solve(graph, ProblemKind.MDS, witness=True)

        assert outcome.same_answer(oracle_solve(graph, ProblemKind.MDS, max_vertices=24))
        assert check_witness(graph, ProblemKind.MDS, outcome.witness)


class TestAnalyticFamilies:

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("q", [1, 3, 5])
    def test_full_graph_odd_q(self, k, q):
        """Test K_k^q for odd q: one vertex in every other layer, starting with layer 1"""
        graph = gen_full(k, q)
        half = (q + 1) // 2

        assert _answer(solve_mis(graph)) == (half, k ** half)
        assert _answer(solve_mvc(graph)) == (q * k - half, k ** half)

    @pytest.mark.parametrize("q", range(1, 13))
    def test_path(self, q):
        """Test the classic path formulas for MIS, MVC and MDS"""
        graph = gen_path(q)

        assert solve_mis(graph).value == (q + 1) // 2
        assert solve_mvc(graph).value == q // 2
        assert solve_mds(graph).value == (q + 2) // 3


@pytest.mark.slow
class TestRuntimeEnvelope:

    def test_mvc_growth_in_k(self):
        """Test that MVC time grows by at most 6x per extra label for k in 6..10, q = 32"""
        df = BenchService(repeats=3).run_scaling(ProblemKind.MVC, 6, 10, q=32)
        millis = df["millis"].tolist()

        for smaller, larger in zip(millis, millis[1:]):
            assert larger <= 6 * max(smaller, 1.0)
        assert millis[-1] < 60_000

    def test_mds_growth_in_k(self):
        """Test that MDS time grows by at most 12x per extra label for k in 3..5, q = 32"""
        df = BenchService(repeats=3).run_scaling(ProblemKind.MDS, 3, 5, q=32)
        millis = df["millis"].tolist()

        for smaller, larger in zip(millis, millis[1:]):
            assert larger <= 12 * max(smaller, 1.0)

    @pytest.mark.parametrize("kind", [ProblemKind.MIS, ProblemKind.MVC])
    def test_mask_dp_long_instance(self, kind):
        """Test that k=8 MIS/MVC on 40 layers stays well inside a minute"""
        graph = gen_random(8, 40, 0.5, 0.5, seed=0)

        start_time = time.perf_counter()
        outcome = solve(graph, kind)

        assert outcome.is_optimum
        assert time.perf_counter() - start_time < 60.0
