"""Core graph type, small-graph generators, and graph6 text I/O.

Vertices are dense integer ids ``0..order-1``.  Adjacency is one Python int
bitmask per vertex; arbitrary-precision ints cover every order this toolkit
targets while keeping neighborhood tests and traversals cheap for the
subset-scan loops in the connectivity modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import Graph6Error, UnsupportedSizeError

# Largest order the 3-byte graph6 size field can express.
GRAPH6_MAX_ORDER = 258047


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..order-1``.

    ``adj[v]`` is the neighbor bitmask of vertex ``v``.  Instances are
    immutable and safe to share read-only across workers.  ``label`` is a
    display tag only and does not take part in equality.
    """

    order: int
    adj: tuple[int, ...]
    label: str | None = field(default=None, compare=False)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    @property
    def min_degree(self) -> int:
        """Smallest vertex degree; 0 for the empty graph."""
        return min((m.bit_count() for m in self.adj), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self.order):
            for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def full_mask(self) -> int:
        return (1 << self.order) - 1


@dataclass(frozen=True)
class DegreeSummary:
    min_degree: int
    degree_sequence: tuple[int, ...]
    edge_count: int


def degree_summary(g: Graph) -> DegreeSummary:
    """Minimum degree, ascending degree sequence, and edge count of ``g``."""
    seq = tuple(sorted(g.degrees()))
    return DegreeSummary(
        min_degree=seq[0] if seq else 0,
        degree_sequence=seq,
        edge_count=sum(seq) // 2,
    )


def graph_from_edges(order: int, edges: Iterable[tuple[int, int]],
                     label: str | None = None) -> Graph:
    """Build a validated Graph from an edge list."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    adj = [0] * order
    for u, v in edges:
        if not (0 <= u < order and 0 <= v < order):
            raise ValueError(f"edge ({u},{v}) out of range for order {order}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u} is not allowed")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(order, tuple(adj), label)


def validate(g: Graph) -> None:
    """Raise ValueError if ``g`` breaks a structural invariant."""
    if g.order < 0:
        raise ValueError("negative order")
    if len(g.adj) != g.order:
        raise ValueError(f"adjacency has {len(g.adj)} rows for order {g.order}")
    full = g.full_mask()
    for v, mask in enumerate(g.adj):
        if mask & ~full:
            raise ValueError(f"vertex {v} has neighbors >= order")
        if mask >> v & 1:
            raise ValueError(f"self-loop at vertex {v}")
        for u in iter_bits(mask):
            if not g.adj[u] >> v & 1:
                raise ValueError(f"asymmetric edge ({v},{u})")


def make_complete(n: int) -> Graph:
    """Complete graph on ``n`` vertices."""
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)), label=f"K{n}")


def make_cycle(n: int) -> Graph:
    """Cycle on ``n >= 3`` vertices with edges {i, (i+1) mod n}."""
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    adj = [0] * n
    for i in range(n):
        j = (i + 1) % n
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, tuple(adj), label=f"C{n}")


def random_graph(order: int, edge_probability: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi graph: each pair is an edge with the given probability.

    The same ``(order, edge_probability, seed)`` always reproduces the same
    graph; pairs are drawn in fixed ``(u, v), u < v`` order.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError(f"edge probability must be in [0,1], got {edge_probability}")
    rng = np.random.default_rng(seed % 2**64)
    adj = [0] * order
    for u in range(order):
        for v in range(u + 1, order):
            if rng.random() < edge_probability:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(order, tuple(adj))


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove vertex ``v``; ids above ``v`` shift down by one.

    The relabeling map is deterministic: old vertex ``u`` becomes ``u`` when
    ``u < v`` and ``u - 1`` when ``u > v``.
    """
    if not 0 <= v < g.order:
        raise ValueError(f"vertex {v} out of range for order {g.order}")
    low_mask = (1 << v) - 1
    adj = []
    for u in range(g.order):
        if u == v:
            continue
        m = g.adj[u]
        adj.append((m & low_mask) | (m >> (v + 1) << v))
    return Graph(g.order - 1, tuple(adj))


# -- traversal ---------------------------------------------------------------

def reachable_mask(adj: Sequence[int], alive: int, start: int) -> int:
    """Bitmask of vertices reachable from ``start`` within the ``alive`` set.

    ``start`` must be a member of ``alive``.
    """
    reach = 1 << start
    frontier = reach
    while frontier:
        acc = 0
        m = frontier
        while m:
            low = m & -m
            acc |= adj[low.bit_length() - 1]
            m ^= low
        frontier = acc & alive & ~reach
        reach |= frontier
    return reach


def is_connected(g: Graph) -> bool:
    """True when ``g`` has one component (vacuously true for order <= 1)."""
    if g.order <= 1:
        return True
    full = g.full_mask()
    return reachable_mask(g.adj, full, 0) == full


def connected_components(g: Graph) -> list[int]:
    """Vertex masks of the components, ordered by smallest member."""
    comps = []
    remaining = g.full_mask()
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = reachable_mask(g.adj, remaining, start)
        comps.append(comp)
        remaining &= ~comp
    return comps


# -- graph6 ------------------------------------------------------------------

def encode_graph6(g: Graph) -> str:
    """Standard header-less graph6 encoding of ``g``.

    Orders up to 62 use the one-byte size field, orders up to
    ``GRAPH6_MAX_ORDER`` the 3-byte extended field.
    """
    n = g.order
    if n > GRAPH6_MAX_ORDER:
        raise UnsupportedSizeError(
            f"graph6 supports order <= {GRAPH6_MAX_ORDER}, got {n}")
    out = []
    if n <= 62:
        out.append(chr(n + 63))
    else:
        out.append("~")
        out.append(chr((n >> 12 & 63) + 63))
        out.append(chr((n >> 6 & 63) + 63))
        out.append(chr((n & 63) + 63))
    group = 0
    nbits = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            group = group << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(group + 63))
                group = 0
                nbits = 0
    if nbits:
        out.append(chr((group << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode a one-line header-less graph6 string.

    Raises :class:`Graph6Error` with the byte offset of the defect for
    malformed input.  ``parse_graph6(encode_graph6(g)) == g`` for every graph,
    and re-encoding a canonical input reproduces it byte for byte.
    """
    s = text.rstrip("\r\n")
    if s == "":
        raise Graph6Error("empty graph6 string", offset=0)
    for pos, ch in enumerate(s):
        code = ord(ch)
        if code < 63 or code > 126:
            raise Graph6Error(f"character {ch!r} outside graph6 alphabet", offset=pos)
    vals = [ord(c) - 63 for c in s]
    if vals[0] == 63:
        if len(vals) >= 2 and vals[1] == 63:
            raise Graph6Error("8-byte size field is not supported", offset=1)
        if len(vals) < 4:
            raise Graph6Error("truncated extended size field", offset=len(s))
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
        body_offset = 4
    else:
        n = vals[0]
        body = vals[1:]
        body_offset = 1
    pair_bits = n * (n - 1) // 2
    want = (pair_bits + 5) // 6
    if len(body) < want:
        raise Graph6Error(
            f"edge payload truncated: order {n} needs {want} groups, got {len(body)}",
            offset=len(s))
    if len(body) > want:
        raise Graph6Error("trailing characters after edge payload",
                          offset=body_offset + want)
    adj = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if body[idx // 6] >> (5 - idx % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            idx += 1
    while idx < 6 * want:
        if body[idx // 6] >> (5 - idx % 6) & 1:
            raise Graph6Error("nonzero padding bits", offset=body_offset + idx // 6)
        idx += 1
    return Graph(n, tuple(adj))
