from .bench_service import BenchService
from .exact_connectivity import solve_cds_exact, solve_cvc_exact
from .graph_io import gen_full, gen_full_llg, gen_llg, gen_path, gen_random, parse, serialize
from .oracle import check_witness, oracle_solve
from .solvers import solve, solve_cds_paper, solve_cvc_paper, solve_mds, solve_mis, solve_mvc

__all__ = [
    "BenchService",
    "solve_cds_exact", "solve_cvc_exact",
    "gen_full", "gen_full_llg", "gen_llg", "gen_path", "gen_random", "parse", "serialize",
    "check_witness", "oracle_solve",
    "solve", "solve_cds_paper", "solve_cvc_paper", "solve_mds", "solve_mis", "solve_mvc",
]
