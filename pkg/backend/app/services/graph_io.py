"""LGR v1 text format and deterministic instance generators.

Format: UTF-8 lines, ``#`` starts a comment, whitespace-separated tokens::

    LGR v1
    k <int>
    q <int>
    layer <i> present <labels...>     one line per layer
    edge <i> <a> <b>                  intra-layer edge of layer i
    inter <i> <a> <b>                 label a of layer i to label b of layer i+1
"""
import logging
import random
from typing import Dict, List, Optional, Tuple

from ..models.errors import GraphFormatError
from ..models.layered_graph import GraphDescription, LayeredGraph, labels_of, validate
from ..utils.validators import validate_density, validate_positive

logger = logging.getLogger(__name__)

HEADER = "LGR v1"


def _ints(tokens: List[str], line_no: int) -> List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise GraphFormatError(line_no, f"expected integers, got '{' '.join(tokens)}'")


def parse(text: str) -> LayeredGraph:
    k: Optional[int] = None
    q: Optional[int] = None
    header_seen = False
    layers: Dict[int, List[int]] = {}
    intra: List[Tuple[int, int, int]] = []
    inter: List[Tuple[int, int, int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if not header_seen:
            if tokens != HEADER.split():
                raise GraphFormatError(line_no, f"expected header '{HEADER}'")
            header_seen = True
            continue

        directive, args = tokens[0], tokens[1:]
        if directive in ("k", "q"):
            values = _ints(args, line_no)
            if len(values) != 1:
                raise GraphFormatError(line_no, f"'{directive}' takes exactly one integer")
            if (k if directive == "k" else q) is not None:
                raise GraphFormatError(line_no, f"'{directive}' given twice")
            if directive == "k":
                k = values[0]
            else:
                q = values[0]
                if q < 1:
                    raise GraphFormatError(line_no, "q must be at least 1")
        elif directive == "layer":
            if k is None or q is None:
                raise GraphFormatError(line_no, "'k' and 'q' must precede layer lines")
            if len(args) < 2 or args[1] != "present":
                raise GraphFormatError(line_no, "expected 'layer <i> present <labels...>'")
            index = _ints(args[:1], line_no)[0]
            if not 1 <= index <= q:
                raise GraphFormatError(line_no, f"layer {index} is outside 1..{q}")
            if index in layers:
                raise GraphFormatError(line_no, f"layer {index} given twice")
            layers[index] = _ints(args[2:], line_no)
        elif directive in ("edge", "inter"):
            values = _ints(args, line_no)
            if len(values) != 3:
                raise GraphFormatError(line_no, f"expected '{directive} <i> <a> <b>'")
            i, a, b = values
            if directive == "edge":
                intra.append((i, a, b))
            else:
                inter.append((i, a, i + 1, b))
        else:
            raise GraphFormatError(line_no, f"unknown directive '{directive}'")

    if not header_seen:
        raise GraphFormatError(1, f"missing header '{HEADER}'")
    if k is None or q is None:
        raise GraphFormatError(1, "missing 'k' or 'q'")
    missing = [i for i in range(1, q + 1) if i not in layers]
    if missing:
        raise GraphFormatError(1, f"no 'layer' line for layer(s) {', '.join(map(str, missing))}")

    description = GraphDescription(
        k=k, layers=[layers[i] for i in range(1, q + 1)], intra=intra, inter=inter
    )
    return validate(description)


def serialize(graph: LayeredGraph) -> str:
    lines = [HEADER, f"k {graph.k}", f"q {graph.q}"]
    for i, layer in enumerate(graph.layers, 1):
        lines.append(f"layer {i} present " + " ".join(map(str, labels_of(layer.present))))
    lines += [f"edge {i} {a} {b}" for i, a, b in graph.intra_edges()]
    lines += [f"inter {i} {a} {b}" for i, a, b in graph.inter_edges()]
    return "\n".join(lines) + "\n"


def _generate(k: int, q: int, intra_density: float, inter_density: float, seed: Optional[int], linear: bool) -> LayeredGraph:
    validate_positive(k, "k")
    validate_positive(q, "q")
    validate_density(intra_density, "intra density")
    validate_density(inter_density, "inter density")
    rng = random.Random(seed)
    labels = list(range(1, k + 1))
    intra = [
        (i, a, b)
        for i in range(1, q + 1)
        for a in labels
        for b in labels
        if a < b and rng.random() < intra_density
    ]
    inter = [
        (i, a, i + 1, b)
        for i in range(1, q)
        for a in labels
        for b in labels
        if (not linear or a == b) and rng.random() < inter_density
    ]
    return validate(GraphDescription(k=k, layers=[labels] * q, intra=intra, inter=inter))


def gen_random(k: int, q: int, intra_density: float, inter_density: float, seed: Optional[int] = None) -> LayeredGraph:
    logger.debug(f"Generating random LG - k={k}, q={q}, densities=({intra_density}, {inter_density}), seed={seed}")
    return _generate(k, q, intra_density, inter_density, seed, linear=False)


def gen_llg(k: int, q: int, intra_density: float, inter_density: float, seed: Optional[int] = None) -> LayeredGraph:
    logger.debug(f"Generating random LLG - k={k}, q={q}, densities=({intra_density}, {inter_density}), seed={seed}")
    return _generate(k, q, intra_density, inter_density, seed, linear=True)


def gen_full(k: int, q: int) -> LayeredGraph:
    """K_k^q: clique layers, every pair of consecutive-layer vertices joined"""
    return _generate(k, q, 1.0, 1.0, None, linear=False)


def gen_full_llg(k: int, q: int) -> LayeredGraph:
    """Clique layers, inter edges only between equal labels"""
    return _generate(k, q, 1.0, 1.0, None, linear=True)


def gen_path(q: int) -> LayeredGraph:
    return gen_full(1, q)
