"""Graph descriptions of 2-replicated storage systems.

Vertices are servers, base edges are files stored on exactly their two
endpoint servers, and a uniform multiplicity r turns each base edge into
r parallel files.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

KNOWN_FLAGS = frozenset({"vertex_transitive", "hamiltonian_vertex_transitive"})

MATCHING_EDGE_LIMIT = 24


class GraphSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GraphSpec:
    """A base simple graph plus a uniform edge multiplicity.

    Edges are kept in canonical order (lexicographic by endpoint pair);
    file indices are 1-based positions in this order.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    multiplicity: int = 1
    flags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise GraphSpecError("need at least one vertex")
        if self.multiplicity < 1:
            raise GraphSpecError("multiplicity must be positive")
        norm = []
        for e in self.edges:
            if len(e) != 2:
                raise GraphSpecError("edge must have two endpoints: %r" % (e,))
            u, v = e
            if u == v:
                raise GraphSpecError("self-loop at vertex %d" % u)
            if not (1 <= u <= self.n_vertices and 1 <= v <= self.n_vertices):
                raise GraphSpecError("edge %r out of vertex range" % (e,))
            norm.append((min(u, v), max(u, v)))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise GraphSpecError(
                    "duplicate edge %r; use multiplicity for parallel files" % (a,)
                )
        object.__setattr__(self, "edges", tuple(norm))
        unknown = set(self.flags) - KNOWN_FLAGS
        if unknown:
            raise GraphSpecError("unknown flags: %s" % sorted(unknown))
        object.__setattr__(self, "flags", frozenset(self.flags))

    @property
    def n_base_edges(self) -> int:
        return len(self.edges)

    @property
    def n_files(self) -> int:
        return self.multiplicity * len(self.edges)

    def edge_endpoints(self, edge_index: int) -> tuple[int, int]:
        """Endpoints of 1-based base-edge index."""
        return self.edges[edge_index - 1]

    def incident_edges(self, vertex: int) -> tuple[int, ...]:
        return tuple(
            i + 1 for i, (u, v) in enumerate(self.edges) if vertex in (u, v)
        )

    def degree(self, vertex: int) -> int:
        return len(self.incident_edges(vertex))

    def base(self) -> "GraphSpec":
        """The same graph with multiplicity 1."""
        if self.multiplicity == 1:
            return self
        return GraphSpec(self.n_vertices, self.edges, 1, self.flags)

    def with_multiplicity(self, r: int) -> "GraphSpec":
        return GraphSpec(self.n_vertices, self.edges, r, self.flags)

    def to_dict(self) -> dict:
        return {
            "n": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "multiplicity": self.multiplicity,
            "flags": sorted(self.flags),
        }


def build_family(family_name: str, params: Sequence[int], multiplicity: int = 1) -> GraphSpec:
    """Canonical graph for a named family.

    path:N, cycle:N, complete:N, star:N (vertex N is the center storing
    all N-1 files), complete_bipartite:M,N (left part 1..M, right part
    M+1..M+N).
    """
    params = list(params)
    if family_name == "path":
        (n,) = params
        if n < 2:
            raise GraphSpecError("path needs N >= 2")
        edges = [(i, i + 1) for i in range(1, n)]
        return GraphSpec(n, tuple(edges), multiplicity)
    if family_name == "cycle":
        (n,) = params
        if n < 3:
            raise GraphSpecError("cycle needs N >= 3")
        edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
        return GraphSpec(n, tuple(edges), multiplicity,
                         frozenset({"vertex_transitive", "hamiltonian_vertex_transitive"}))
    if family_name == "star":
        (n,) = params
        if n < 2:
            raise GraphSpecError("star needs N >= 2")
        edges = [(i, n) for i in range(1, n)]
        return GraphSpec(n, tuple(edges), multiplicity)
    if family_name == "complete":
        (n,) = params
        if n < 2:
            raise GraphSpecError("complete needs N >= 2")
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        flags = frozenset({"vertex_transitive", "hamiltonian_vertex_transitive"}) \
            if n >= 3 else frozenset()
        return GraphSpec(n, tuple(edges), multiplicity, flags)
    if family_name == "complete_bipartite":
        m, n = params
        if m < 1 or n < 1:
            raise GraphSpecError("complete_bipartite needs M, N >= 1")
        if m > n:
            raise GraphSpecError(
                "complete_bipartite:%d,%d has M > N; write it as %d,%d" % (m, n, n, m)
            )
        edges = [(i, m + j) for i in range(1, m + 1) for j in range(1, n + 1)]
        return GraphSpec(m + n, tuple(edges), multiplicity)
    raise GraphSpecError("unknown family %r" % family_name)


_FAMILY_RE = re.compile(
    r"^(path|cycle|star|complete|complete_bipartite):(\d+(?:,\d+)?)(?:\^(\d+))?$"
)


def parse_graph(text: str) -> GraphSpec:
    """Parse a family shorthand like ``path:4`` / ``complete:4^3`` /
    ``complete_bipartite:2,3``, or a JSON object with keys n, edges,
    multiplicity, flags."""
    text = text.strip()
    m = _FAMILY_RE.match(text)
    if m:
        name, params, mult = m.group(1), m.group(2), m.group(3)
        return build_family(
            name, [int(p) for p in params.split(",")], int(mult) if mult else 1
        )
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSpecError("cannot parse graph spec %r: %s" % (text, exc)) from exc
    return graph_from_dict(obj)


def graph_from_dict(obj: dict) -> GraphSpec:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphSpecError("graph object needs keys 'n' and 'edges'")
    return GraphSpec(
        int(obj["n"]),
        tuple(tuple(e) for e in obj["edges"]),
        int(obj.get("multiplicity", 1)),
        frozenset(obj.get("flags", ())),
    )


def max_degree(g: GraphSpec) -> int:
    """Maximum vertex degree of the base simple graph."""
    if not g.edges:
        return 0
    deg = [0] * (g.n_vertices + 1)
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return max(deg)


def matching_number(g: GraphSpec) -> int:
    """Size of a maximum matching of the base simple graph, by exact search."""
    if g.n_base_edges > MATCHING_EDGE_LIMIT:
        raise GraphSpecError(
            "matching_number limited to %d edges" % MATCHING_EDGE_LIMIT
        )
    edges = g.edges

    best = 0

    def extend(idx: int, used: int, size: int) -> None:
        nonlocal best
        if size + (len(edges) - idx) <= best:
            return
        if idx == len(edges):
            best = max(best, size)
            return
        u, v = edges[idx]
        bit = (1 << u) | (1 << v)
        if not used & bit:
            extend(idx + 1, used | bit, size + 1)
        extend(idx + 1, used, size)

    extend(0, 0, 0)
    return best


def star_decomposition(g: GraphSpec) -> list[GraphSpec]:
    """Split a complete bipartite graph into edge-disjoint stars, one per
    left vertex, all on the shared vertex set."""
    parts = bipartition(g)
    if parts is None:
        raise GraphSpecError("graph is not complete bipartite")
    left, right = parts
    out = []
    for c in left:
        edges = tuple((min(c, w), max(c, w)) for w in right)
        out.append(GraphSpec(g.n_vertices, edges, g.multiplicity))
    return out


def bipartition(g: GraphSpec) -> tuple[list[int], list[int]] | None:
    """(left, right) parts of a complete bipartite graph with |left| <=
    |right|, or None if g is not one."""
    if not g.edges:
        return None
    adj: dict[int, set[int]] = {v: set() for v in range(1, g.n_vertices + 1)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    color: dict[int, int] = {}
    for start in adj:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    side0 = sorted(v for v in color if color[v] == 0)
    side1 = sorted(v for v in color if color[v] == 1)
    if len(side0) * len(side1) != g.n_base_edges:
        return None
    if len(side0) > len(side1):
        side0, side1 = side1, side0
    return side0, side1


def classify_family(g: GraphSpec) -> dict[str, tuple[int, ...]]:
    """All named families the base graph belongs to, with their parameters.

    A graph can match several (star:2 is also path:2, complete:3 is also
    cycle:3); callers pick what they need.
    """
    out: dict[str, tuple[int, ...]] = {}
    n, k = g.n_vertices, g.n_base_edges
    if k == 0:
        return out
    degs = sorted(g.degree(v) for v in range(1, n + 1))
    if path_vertex_order(g) is not None:
        out["path"] = (n,)
    if k == n and degs == [2] * n and _connected(g):
        out["cycle"] = (n,)
    if star_center(g) is not None and k == n - 1:
        out["star"] = (n,)
    if n >= 2 and k == n * (n - 1) // 2 and degs == [n - 1] * n:
        out["complete"] = (n,)
    parts = bipartition(g)
    if parts is not None:
        out["complete_bipartite"] = (len(parts[0]), len(parts[1]))
    return out


def _connected(g: GraphSpec) -> bool:
    if g.n_vertices == 1:
        return True
    adj: dict[int, list[int]] = {v: [] for v in range(1, g.n_vertices + 1)}
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {1}
    queue = [1]
    while queue:
        x = queue.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == g.n_vertices


def path_vertex_order(g: GraphSpec, vertices: Iterable[int] | None = None) -> list[int] | None:
    """Vertices of a path graph in path order (starting from the
    smaller-labeled endpoint), or None if the edges do not form a path.

    With `vertices`, only the induced subgraph on the given edge set is
    considered (used when running a path part inside a larger host graph).
    """
    edges = g.edges
    touched = sorted({v for e in edges for v in e})
    if vertices is not None:
        want = sorted(vertices)
        if touched != want:
            return None
    elif len(touched) != g.n_vertices:
        return None
    if len(edges) != len(touched) - 1:
        return None
    adj: dict[int, list[int]] = {v: [] for v in touched}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    ends = [v for v in touched if len(adj[v]) == 1]
    if len(ends) != 2 or any(len(adj[v]) > 2 for v in touched):
        return None
    start = min(ends)
    order = [start]
    prev = None
    while len(order) < len(touched):
        nxts = [w for w in adj[order[-1]] if w != prev]
        if len(nxts) != 1:
            return None
        prev = order[-1]
        order.append(nxts[0])
    return order


def star_center(g: GraphSpec) -> int | None:
    """The common vertex of all edges, preferring the highest-labeled
    candidate (a single edge has two), or None."""
    if not g.edges:
        return None
    common = set(g.edges[0])
    for e in g.edges[1:]:
        common &= set(e)
    if not common:
        return None
    return max(common)
