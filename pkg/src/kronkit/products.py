"""Kronecker (tensor/direct) product construction and structural facts.

The product of ``g1`` and ``g2`` lives on the pair set ``V(g1) x V(g2)`` with
``(u1,v1) ~ (u2,v2)`` exactly when ``u1 ~ u2`` in ``g1`` and ``v1 ~ v2`` in
``g2``.  Product vertices are linearized as ``u * |V(g2)| + v``; this fixed
ordering makes cut sets and reports reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .graphs import Graph, is_connected, iter_bits, reachable_mask


@dataclass(frozen=True)
class ProductVertex:
    """A product vertex: the factor pair plus its fixed linear id."""

    factor1: int
    factor2: int
    linear_index: int


@dataclass(frozen=True)
class ProductGraph:
    """A Kronecker product together with its factor orders."""

    graph: Graph
    factor1_order: int
    factor2_order: int

    def vertex(self, u: int, v: int) -> int:
        """Linear id of the product vertex ``(u, v)``."""
        return u * self.factor2_order + v

    def unpack(self, index: int) -> tuple[int, int]:
        """Factor pair of a linear id."""
        return divmod(index, self.factor2_order)

    def product_vertices(self) -> list[ProductVertex]:
        n = self.factor2_order
        return [ProductVertex(u, v, u * n + v)
                for u in range(self.factor1_order) for v in range(n)]


@dataclass(frozen=True)
class Fiber:
    """All product vertices sharing one first-factor vertex.

    Fibers are independent sets (the second factor has no loops) and the
    fiber family partitions the product vertex set.
    """

    factor1_vertex: int
    members: tuple[int, ...]

    def mask(self) -> int:
        m = 0
        for v in self.members:
            m |= 1 << v
        return m


def kronecker(g1: Graph, g2: Graph) -> ProductGraph:
    """Kronecker product of two nonempty graphs under the fixed linearization."""
    if g1.order == 0 or g2.order == 0:
        raise ValueError("Kronecker product needs nonempty factors")
    n2 = g2.order
    adj = []
    for u in range(g1.order):
        row_ids = list(iter_bits(g1.adj[u]))
        for v in range(n2):
            col = g2.adj[v]
            mask = 0
            for w in row_ids:
                mask |= col << (w * n2)
            adj.append(mask)
    return ProductGraph(Graph(g1.order * n2, tuple(adj)), g1.order, n2)


def product_degree(g1: Graph, g2: Graph, u: int, v: int) -> int:
    """Degree of product vertex ``(u, v)``: the product of the factor degrees."""
    if not 0 <= u < g1.order:
        raise ValueError(f"vertex {u} out of range for first factor")
    if not 0 <= v < g2.order:
        raise ValueError(f"vertex {v} out of range for second factor")
    return g1.degree(u) * g2.degree(v)


def is_bipartite(g: Graph) -> tuple[bool, list[int] | None]:
    """Two-colorability test with an odd-closed-walk witness.

    Returns ``(True, None)`` when a 2-coloring exists, otherwise
    ``(False, walk)`` where ``walk`` is a closed walk of odd length given as a
    vertex list whose first and last entries coincide.
    """
    depth = [-1] * g.order
    parent = [-1] * g.order
    for root in range(g.order):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = [root]
        while queue:
            nxt = []
            for x in queue:
                for y in iter_bits(g.adj[x]):
                    if depth[y] < 0:
                        depth[y] = depth[x] + 1
                        parent[y] = x
                        nxt.append(y)
                    elif (depth[y] ^ depth[x]) & 1 == 0:
                        return False, _odd_walk(x, y, parent)
            queue = nxt
    return True, None


def _odd_walk(x: int, y: int, parent: list[int]) -> list[int]:
    """Closed odd walk through the offending edge x~y via the BFS tree root."""
    up_x = [x]
    while parent[up_x[-1]] >= 0:
        up_x.append(parent[up_x[-1]])
    up_y = [y]
    while parent[up_y[-1]] >= 0:
        up_y.append(parent[up_y[-1]])
    return up_x + up_y[::-1][1:] + [x]


def weichsel_connected(g1: Graph, g2: Graph) -> bool:
    """Connectedness of the product of two connected factors.

    The product of connected factors is connected exactly when at least one
    factor is non-bipartite.  Callers must pass connected factors with at
    least one edge each; anything else raises :class:`PreconditionError`.
    """
    for name, g in (("first", g1), ("second", g2)):
        if not is_connected(g):
            raise PreconditionError(f"{name} factor is disconnected")
        if g.edge_count == 0:
            raise PreconditionError(f"{name} factor has no edges")
    return not is_bipartite(g1)[0] or not is_bipartite(g2)[0]


def fibers(product: ProductGraph) -> list[Fiber]:
    """The first-factor fibers of a product, in first-factor vertex order."""
    n = product.factor2_order
    return [Fiber(u, tuple(range(u * n, (u + 1) * n)))
            for u in range(product.factor1_order)]


def linearization_rows(product: ProductGraph) -> list[str]:
    """Sidecar mapping rows ``"linear_index factor1 factor2"``, one per vertex."""
    return [f"{pv.linear_index} {pv.factor1} {pv.factor2}"
            for pv in product.product_vertices()]


def product_is_connected(product: ProductGraph) -> bool:
    """Direct traversal check, independent of the odd-cycle criterion."""
    g = product.graph
    if g.order <= 1:
        return True
    full = g.full_mask()
    return reachable_mask(g.adj, full, 0) == full
