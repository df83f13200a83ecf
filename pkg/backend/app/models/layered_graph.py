from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from .errors import (
    DuplicateEdge,
    DuplicateLabel,
    EdgeToAbsentVertex,
    EmptyLayer,
    LabelOutOfRange,
    LayeredGraphError,
    LayerOutOfRange,
    NonAdjacentInterEdge,
    SelfLoop,
)

logger = logging.getLogger(__name__)


# Masks: bit x-1 stands for label x of a layer


def mask_of(labels: Iterable[int]) -> int:
    mask = 0
    for label in labels:
        mask |= 1 << (label - 1)
    return mask


def bits_of(mask: int) -> Iterator[int]:
    """Yield the 0-based bit positions set in mask, lowest first"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def labels_of(mask: int) -> List[int]:
    return [bit + 1 for bit in bits_of(mask)]


def popcount(mask: int) -> int:
    return mask.bit_count()


class GraphDescription(BaseModel):
    """Untrusted layered-graph description, as parsed from LGR text or received by the API.

    Layers and labels are 1-based. ``inter`` entries are (layer, label, other_layer, label).
    """

    k: int
    layers: List[List[int]]
    intra: List[Tuple[int, int, int]] = Field(default_factory=list)
    inter: List[Tuple[int, int, int, int]] = Field(default_factory=list)


@dataclass(frozen=True)
class Layer:
    present: int
    adj: Tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    @property
    def has_edges(self) -> bool:
        return any(self.adj)


@dataclass(frozen=True)
class InterLayer:
    fwd: Tuple[int, ...]
    bwd: Tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.fwd)


@dataclass(frozen=True)
class GraphVariant:
    is_llg: bool
    is_slg: bool
    is_clg: bool
    is_full: bool


@dataclass(frozen=True)
class FlatGraph:
    """Layer-free view of a layered graph: vertex i is ``vertices[i]`` = (layer, label)"""

    vertices: List[Tuple[int, int]]
    edges: List[Tuple[int, int]]

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class LayeredGraph:
    k: int
    layers: Tuple[Layer, ...]
    inters: Tuple[InterLayer, ...]
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", sum(popcount(layer.present) for layer in self.layers))

    @property
    def q(self) -> int:
        return len(self.layers)

    @property
    def full_mask(self) -> int:
        return (1 << self.k) - 1

    @property
    def edge_count(self) -> int:
        return sum(layer.edge_count for layer in self.layers) + sum(inter.edge_count for inter in self.inters)

    @property
    def has_edges(self) -> bool:
        return self.edge_count > 0

    def intra_edges(self) -> Iterator[Tuple[int, int, int]]:
        """Yield (layer, a, b) with a < b, 1-based, in sorted order"""
        for i, layer in enumerate(self.layers, 1):
            for x in range(self.k):
                for y in bits_of(layer.adj[x] >> (x + 1)):
                    yield i, x + 1, x + y + 2

    def inter_edges(self) -> Iterator[Tuple[int, int, int]]:
        """Yield (layer, a, b): label a of ``layer`` joined to label b of ``layer + 1``"""
        for i, inter in enumerate(self.inters, 1):
            for x in range(self.k):
                for y in bits_of(inter.fwd[x]):
                    yield i, x + 1, y + 1

    def to_description(self) -> GraphDescription:
        return GraphDescription(
            k=self.k,
            layers=[labels_of(layer.present) for layer in self.layers],
            intra=list(self.intra_edges()),
            inter=[(i, a, i + 1, b) for i, a, b in self.inter_edges()],
        )


def validate(description: GraphDescription) -> LayeredGraph:
    """Check an untrusted description and build the canonical LayeredGraph"""
    k = description.k
    if k < 1:
        raise LayeredGraphError(f"k must be a positive integer, got {k}")
    q = len(description.layers)
    if q < 1:
        raise LayeredGraphError("A layered graph needs at least one layer")

    present: List[int] = []
    for i, labels in enumerate(description.layers, 1):
        if not labels:
            raise EmptyLayer(i)
        mask = 0
        for label in labels:
            if not 1 <= label <= k:
                raise LabelOutOfRange(i, label, k)
            if mask >> (label - 1) & 1:
                raise DuplicateLabel(i, label)
            mask |= 1 << (label - 1)
        present.append(mask)

    def check_vertex(edge: str, layer: int, label: int) -> None:
        if not 1 <= layer <= q:
            raise LayerOutOfRange(layer, q)
        if not 1 <= label <= k:
            raise LabelOutOfRange(layer, label, k)
        if not present[layer - 1] >> (label - 1) & 1:
            raise EdgeToAbsentVertex(edge, layer, label)

    adj = [[0] * k for _ in range(q)]
    seen_intra = set()
    for i, a, b in description.intra:
        edge = f"edge {i} {a} {b}"
        check_vertex(edge, i, a)
        check_vertex(edge, i, b)
        if a == b:
            raise SelfLoop(i, a)
        key = (i, min(a, b), max(a, b))
        if key in seen_intra:
            raise DuplicateEdge(edge)
        seen_intra.add(key)
        adj[i - 1][a - 1] |= 1 << (b - 1)
        adj[i - 1][b - 1] |= 1 << (a - 1)

    fwd = [[0] * k for _ in range(q - 1)]
    bwd = [[0] * k for _ in range(q - 1)]
    seen_inter = set()
    for i, a, j, b in description.inter:
        edge = f"inter {i} {a} {j} {b}"
        if j == i - 1:
            i, a, j, b = j, b, i, a
        elif j != i + 1:
            if not 1 <= i <= q:
                raise LayerOutOfRange(i, q)
            if not 1 <= j <= q:
                raise LayerOutOfRange(j, q)
            raise NonAdjacentInterEdge(edge)
        check_vertex(edge, i, a)
        check_vertex(edge, j, b)
        key = (i, a, b)
        if key in seen_inter:
            raise DuplicateEdge(edge)
        seen_inter.add(key)
        fwd[i - 1][a - 1] |= 1 << (b - 1)
        bwd[i - 1][b - 1] |= 1 << (a - 1)

    graph = LayeredGraph(
        k=k,
        layers=tuple(Layer(present=present[i], adj=tuple(adj[i])) for i in range(q)),
        inters=tuple(InterLayer(fwd=tuple(fwd[i]), bwd=tuple(bwd[i])) for i in range(q - 1)),
    )
    logger.debug(f"Validated layered graph - k={k}, q={q}, n={graph.n}, edges={graph.edge_count}")
    return graph


def flatten(graph: LayeredGraph) -> FlatGraph:
    index: Dict[Tuple[int, int], int] = {}
    vertices: List[Tuple[int, int]] = []
    for i, layer in enumerate(graph.layers, 1):
        for label in labels_of(layer.present):
            index[(i, label)] = len(vertices)
            vertices.append((i, label))

    edges = [(index[(i, a)], index[(i, b)]) for i, a, b in graph.intra_edges()]
    edges += [(index[(i, a)], index[(i + 1, b)]) for i, a, b in graph.inter_edges()]
    return FlatGraph(vertices=vertices, edges=edges)


def classify(graph: LayeredGraph) -> GraphVariant:
    flat = flatten(graph)
    nx_graph = flat.to_networkx()

    is_llg = all(a == b for _, a, b in graph.inter_edges())

    by_layer: Dict[int, List[int]] = {}
    for vertex, (layer, _) in enumerate(flat.vertices):
        by_layer.setdefault(layer, []).append(vertex)
    is_slg = all(nx.is_connected(nx_graph.subgraph(nodes)) for nodes in by_layer.values())
    is_clg = nx.is_connected(nx_graph)

    full = graph.full_mask
    is_full = all(
        layer.present == full and all(layer.adj[x] == full & ~(1 << x) for x in range(graph.k))
        for layer in graph.layers
    ) and all(row == full for inter in graph.inters for row in inter.fwd)

    return GraphVariant(is_llg=is_llg, is_slg=is_slg, is_clg=is_clg, is_full=is_full)
