from fastapi import APIRouter, HTTPException, Query, status
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel
from typing import Optional
import logging

from ..models.errors import InstanceTooLarge, InvalidArgument, LayeredGraphError, UnsupportedMode
from ..models.layered_graph import classify
from ..models.outcome import ProblemKind, SolveMode, SolveOutcome
from ..services.graph_io import gen_full, gen_full_llg, gen_llg, gen_path, gen_random, parse, serialize
from ..services.oracle import oracle_solve
from ..services.solvers import solve
from ..utils.validators import validate_density

logger = logging.getLogger(__name__)

router = APIRouter(tags=["solver"])


class SolveRequest(BaseModel):
    graph: str
    problem: ProblemKind
    mode: Optional[SolveMode] = None
    witness: bool = False


class OracleRequest(BaseModel):
    graph: str
    problem: ProblemKind
    witness: bool = False


class ValidateRequest(BaseModel):
    graph: str


class GraphSummary(BaseModel):
    k: int
    q: int
    n: int
    llg: bool
    slg: bool
    clg: bool
    full: bool


def _bad_input(e: Exception) -> HTTPException:
    logger.warning(f"Rejected input: {str(e)}")
    return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=f"{type(e).__name__}: {e}")


@router.post("/solve", response_model=SolveOutcome)
async def solve_endpoint(request: SolveRequest):
    """
    Optimum value and count by layer-wise DP
    """
    try:
        graph = parse(request.graph)
        return solve(graph, request.problem, request.mode, request.witness)
    except UnsupportedMode as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    except LayeredGraphError as e:
        raise _bad_input(e)


@router.post("/oracle", response_model=SolveOutcome)
async def oracle_endpoint(request: OracleRequest):
    """
    Optimum value and count by brute force over all vertex subsets
    """
    try:
        graph = parse(request.graph)
        outcome = oracle_solve(graph, request.problem)
    except InstanceTooLarge as e:
        raise HTTPException(status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE, detail=str(e))
    except LayeredGraphError as e:
        raise _bad_input(e)
    if not request.witness:
        outcome = outcome.model_copy(update={"witness": None})
    return outcome


@router.post("/validate", response_model=GraphSummary)
async def validate_endpoint(request: ValidateRequest):
    """
    Validate an LGR v1 instance and report its variant flags
    """
    try:
        graph = parse(request.graph)
    except LayeredGraphError as e:
        raise _bad_input(e)
    variant = classify(graph)
    return GraphSummary(
        k=graph.k, q=graph.q, n=graph.n,
        llg=variant.is_llg, slg=variant.is_slg, clg=variant.is_clg, full=variant.is_full,
    )


@router.get("/generate", response_class=PlainTextResponse)
async def generate_endpoint(
    kind: str = Query(..., pattern="^(full|random|llg|full-llg|path)$"),
    k: int = Query(1, ge=1),
    q: int = Query(..., ge=1),
    intra_density: float = Query(0.5),
    inter_density: float = Query(0.5),
    seed: int = Query(0),
):
    """
    Generate an instance as LGR v1 text
    """
    try:
        validate_density(intra_density, "intra density")
        validate_density(inter_density, "inter density")
    except InvalidArgument as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))

    if kind == "full":
        graph = gen_full(k, q)
    elif kind == "full-llg":
        graph = gen_full_llg(k, q)
    elif kind == "path":
        graph = gen_path(q)
    elif kind == "random":
        graph = gen_random(k, q, intra_density, inter_density, seed)
    else:
        graph = gen_llg(k, q, intra_density, inter_density, seed)
    return serialize(graph)
