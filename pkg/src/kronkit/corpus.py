"""Exhaustive corpora of small graphs, one representative per isomorphism class.

Order-n graphs are generated by attaching a new vertex to every order-(n-1)
graph in all possible ways and dropping isomorphic duplicates.  The connected
corpus restricts to connected parents and nonempty attachment sets, which
still reaches every connected graph: every connected graph has a vertex whose
removal keeps it connected (any leaf of a spanning tree).

Candidates are bucketed by an iterated-refinement fingerprint and confirmed
with an exact isomorphism search, so output is exhaustive and duplicate-free;
the test suite pins the corpus sizes to the published counts of graphs on up
to 8 vertices.  Output order is deterministic.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from .graphs import Graph, iter_bits


def refined_colors(g: Graph) -> tuple[int, ...]:
    """Stable vertex colors from iterated neighborhood refinement.

    Colors are isomorphism-invariant: vertices in isomorphic positions get
    the same color.  Seeded with (degree, incident triangle count), then
    hash-chained over sorted neighbor colors until the partition stops
    splitting.  Hash collisions can only coarsen the partition, which the
    exact isomorphism search tolerates.
    """
    n = g.order
    if n == 0:
        return ()
    adj = g.adj
    nbrs = [list(iter_bits(m)) for m in adj]
    colors = []
    for v in range(n):
        mask = adj[v]
        tri = 0
        for u in nbrs[v]:
            tri += (adj[u] & mask).bit_count()
        colors.append(hash((len(nbrs[v]), tri)))
    classes = len(set(colors))
    while classes < n:
        colors = [hash((colors[v], tuple(sorted([colors[u] for u in nbrs[v]]))))
                  for v in range(n)]
        new_classes = len(set(colors))
        if new_classes == classes:
            break
        classes = new_classes
    return tuple(colors)


def _fingerprint(g: Graph, colors: tuple[int, ...]) -> tuple:
    return (g.order, g.edge_count, tuple(sorted(colors)))


def _iso_search(g1: Graph, c1: tuple[int, ...],
                g2: Graph, c2: tuple[int, ...]) -> bool:
    """Backtracking isomorphism search guided by precomputed colors."""
    n = g1.order
    if n == 0:
        return True
    adj1, adj2 = g1.adj, g2.adj
    targets: dict[int, list[int]] = defaultdict(list)
    for w in range(n):
        targets[c2[w]].append(w)
    order_v = sorted(range(n), key=lambda v: (len(targets[c1[v]]), v))
    mapping = [-1] * n
    used = [False] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        v = order_v[i]
        av = adj1[v]
        for w in targets[c1[v]]:
            if used[w]:
                continue
            aw = adj2[w]
            ok = True
            for u in order_v[:i]:
                if (av >> u & 1) != (aw >> mapping[u] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if place(i + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return place(0)


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism test by color-guided backtracking."""
    if g1.order != g2.order or g1.edge_count != g2.edge_count:
        return False
    c1, c2 = refined_colors(g1), refined_colors(g2)
    if sorted(c1) != sorted(c2):
        return False
    return _iso_search(g1, c1, g2, c2)


def _extend_layer(parents: tuple[Graph, ...], order: int,
                  connected_only: bool) -> tuple[Graph, ...]:
    new_bit = 1 << (order - 1)
    reps: list[Graph] = []
    buckets: dict[tuple, list[tuple[Graph, tuple[int, ...]]]] = {}
    first_subset = 1 if connected_only else 0
    for parent in parents:
        base = parent.adj
        for subset in range(first_subset, 1 << (order - 1)):
            adj = [base[v] | new_bit if subset >> v & 1 else base[v]
                   for v in range(order - 1)]
            adj.append(subset)
            g = Graph(order, tuple(adj))
            colors = refined_colors(g)
            bucket = buckets.setdefault(_fingerprint(g, colors), [])
            if not any(_iso_search(g, colors, seen, seen_colors)
                       for seen, seen_colors in bucket):
                bucket.append((g, colors))
                reps.append(g)
    return tuple(reps)


@lru_cache(maxsize=None)
def all_graphs(order: int) -> tuple[Graph, ...]:
    """All graphs of the given order, one per isomorphism class."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if order == 0:
        return (Graph(0, ()),)
    return _extend_layer(all_graphs(order - 1), order, connected_only=False)


@lru_cache(maxsize=None)
def connected_graphs(order: int) -> tuple[Graph, ...]:
    """All connected graphs of the given order, one per isomorphism class."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if order == 1:
        return (Graph(1, (0,)),)
    return _extend_layer(connected_graphs(order - 1), order, connected_only=True)


def graphs_up_to(max_order: int, connected: bool = True) -> list[Graph]:
    """Corpus of orders 1..max_order in generation order."""
    out: list[Graph] = []
    for n in range(1, max_order + 1):
        out.extend(connected_graphs(n) if connected else all_graphs(n))
    return out
