"""Bit-parallel predicates over layer masks.

Every predicate works on neighbour-mask rows (``Layer.adj``, ``InterLayer.fwd`` /
``bwd``), so each check costs O(k) word operations. For the inter-layer
predicates ``l`` is the mask of the earlier layer and ``j`` the mask of the later
one.
"""
from typing import Iterator, Sequence, Tuple

from ..models.layered_graph import InterLayer, Layer, bits_of


def neighbours(mask: int, rows: Sequence[int]) -> int:
    """Union of ``rows[x]`` over the bits x of mask"""
    result = 0
    for x in bits_of(mask):
        result |= rows[x]
    return result


def closed_neighbourhood(j: int, layer: Layer) -> int:
    return j | neighbours(j, layer.adj)


def submasks(mask: int) -> Iterator[int]:
    """Every submask of mask in increasing numeric order, including 0"""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def is_independent_in_layer(j: int, layer: Layer) -> bool:
    """No intra-layer edge has both endpoints in j"""
    for x in bits_of(j):
        if layer.adj[x] & j:
            return False
    return True


def is_cover_in_layer(j: int, layer: Layer) -> bool:
    """Every intra-layer edge has an endpoint in j"""
    # every unchosen vertex must have all of its neighbours chosen
    for x in bits_of(layer.present & ~j):
        if layer.adj[x] & ~j:
            return False
    return True


def is_connected_in_layer(j: int, layer: Layer) -> bool:
    """j induces a connected subgraph of the layer; the empty mask counts as connected"""
    if j == 0:
        return True
    reached = j & -j
    frontier = reached
    while frontier:
        grown = neighbours(frontier, layer.adj) & j & ~reached
        reached |= grown
        frontier = grown
    return reached == j


def compatible_is(j: int, l: int, inter: InterLayer) -> bool:
    """No inter edge joins l to j"""
    return neighbours(l, inter.fwd) & j == 0


def uncovered_requirement(l: int, inter: InterLayer) -> int:
    """Labels of the later layer that must be chosen when the earlier layer chooses l"""
    required = 0
    for x, row in enumerate(inter.fwd):
        if row and not l >> x & 1:
            required |= row
    return required


def compatible_vc(j: int, l: int, inter: InterLayer) -> bool:
    """Every inter edge has its earlier endpoint in l or its later endpoint in j"""
    return uncovered_requirement(l, inter) & ~j == 0


def has_cross_edge(j: int, l: int, inter: InterLayer) -> bool:
    """Some inter edge joins l to j"""
    return neighbours(l, inter.fwd) & j != 0


def dominated_set(j_prev: int, j_cur: int, layer_prev: Layer, layer_cur: Layer, inter: InterLayer) -> Tuple[int, int]:
    """Present vertices of (earlier, later) layer dominated by choosing j_prev and j_cur"""
    dom_prev = closed_neighbourhood(j_prev, layer_prev) | neighbours(j_cur, inter.bwd)
    dom_cur = closed_neighbourhood(j_cur, layer_cur) | neighbours(j_prev, inter.fwd)
    return dom_prev & layer_prev.present, dom_cur & layer_cur.present
