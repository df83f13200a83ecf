import io
import logging
import statistics
import time
from itertools import product
from typing import Any, Dict, Iterable, Optional

import pandas as pd

from ..config import settings
from ..models.layered_graph import classify
from ..models.outcome import ProblemKind, SolveMode
from .graph_io import gen_random
from .oracle import oracle_solve
from .solvers import solve

logger = logging.getLogger(__name__)


class BenchService:
    def __init__(self, repeats: Optional[int] = None, intra_density: Optional[float] = None,
                 inter_density: Optional[float] = None):
        self.repeats = repeats or settings.bench_repeats
        self.intra_density = settings.bench_intra_density if intra_density is None else intra_density
        self.inter_density = settings.bench_inter_density if inter_density is None else inter_density

    def run_scaling(self, problem: ProblemKind, k_min: int, k_max: int, q: int, seed: int = 0) -> pd.DataFrame:
        """Median solve time per k on one seeded random instance each"""
        rows = []
        for k in range(k_min, k_max + 1):
            graph = gen_random(k, q, self.intra_density, self.inter_density, seed)
            timings = []
            for _ in range(self.repeats):
                start_time = time.perf_counter()
                solve(graph, problem, SolveMode.PAPER)
                timings.append((time.perf_counter() - start_time) * 1000.0)
            millis = statistics.median(timings)
            logger.info(f"Bench {problem.value}: k={k}, n={graph.n}, median={millis:.1f}ms")
            rows.append({"k": k, "n": graph.n, "millis": round(millis, 3)})
        return pd.DataFrame(rows, columns=["k", "n", "millis"])

    def scaling_csv(self, problem: ProblemKind, k_min: int, k_max: int, q: int, seed: int = 0) -> str:
        df = self.run_scaling(problem, k_min, k_max, q, seed)
        output = io.StringIO()
        df.to_csv(output, index=False)
        return output.getvalue()

    def compare_modes(
        self,
        k_values: Iterable[int],
        q_values: Iterable[int],
        densities: Iterable[float],
        seeds: Iterable[int],
        oracle_cap: Optional[int] = None,
    ) -> pd.DataFrame:
        """Paper mode against exact mode (and the oracle when small enough) for CVC and CDS"""
        cap = settings.oracle_max_vertices if oracle_cap is None else oracle_cap
        densities = list(densities)
        rows = []
        for k, q, intra, inter, seed in product(k_values, q_values, densities, densities, seeds):
            graph = gen_random(k, q, intra, inter, seed)
            connected = classify(graph).is_clg
            for problem in (ProblemKind.CVC, ProblemKind.CDS):
                if problem is ProblemKind.CDS and not connected:
                    continue
                paper = solve(graph, problem, SolveMode.PAPER)
                exact = solve(graph, problem, SolveMode.EXACT)
                oracle = oracle_solve(graph, problem, cap) if graph.n <= cap else None
                rows.append({
                    "problem": problem.value, "k": k, "q": q, "intra": intra, "inter": inter,
                    "seed": seed, "n": graph.n,
                    "paper": paper.value, "exact": exact.value,
                    "oracle": oracle.value if oracle is not None else None,
                    "exact_matches_oracle": oracle is None or exact.same_answer(oracle),
                    "paper_suboptimal": exact.is_optimum and (not paper.is_optimum or paper.value > exact.value),
                })
        return pd.DataFrame(rows)

    @staticmethod
    def summarize_comparison(df: pd.DataFrame) -> Dict[str, Dict[str, Any]]:
        summary = {}
        for problem, group in df.groupby("problem"):
            summary[problem] = {
                "instances": int(len(group)),
                "paper_suboptimal": int(group["paper_suboptimal"].sum()),
                "paper_suboptimal_fraction": float(group["paper_suboptimal"].mean()),
                "exact_mismatches": int((~group["exact_matches_oracle"]).sum()),
            }
        return summary
