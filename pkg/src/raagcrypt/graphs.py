"""Finite simplicial graphs and the graph decision procedures.

A simplicial graph is a finite undirected graph with no loops and no
multiple edges. Vertex labels are opaque strings; the declaration order
of the vertices is significant and is the ordering used everywhere a
deterministic traversal is needed (serialization, search, sampling).

Two search problems live here, both solved by exact backtracking with an
explicit node budget: strict graph homomorphism (adjacent vertices must
map to distinct adjacent vertices) and induced subgraph isomorphism
(edges and non-edges both preserved).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "GraphError",
    "SearchBudgetExceeded",
    "SimplicialGraph",
    "VertexSubset",
    "VertexMap",
    "validate_graph",
    "induced_subgraph",
    "is_full_subgraph",
    "verify_graph_homomorphism",
    "find_graph_homomorphism",
    "verify_induced_subgraph_isomorphism",
    "find_induced_subgraph_isomorphism",
    "random_graph",
    "triangle_vertices",
    "format_graph",
    "parse_graph",
    "format_vertex_map",
    "parse_vertex_map",
]


class GraphError(ValueError):
    """Raised when graph data violates the simplicial-graph invariants."""


class SearchBudgetExceeded(RuntimeError):
    """Raised when a backtracking search runs out of its node budget.

    Distinct from returning ``None``: ``None`` means the search space was
    exhausted and no solution exists.
    """


def _label_problem(label: str) -> str | None:
    if not isinstance(label, str) or not label:
        return "empty or non-string label"
    if any(ch.isspace() for ch in label):
        return "whitespace in label"
    if "#" in label or "^" in label:
        return "forbidden character in label ('#' and '^' are reserved)"
    return None


def validate_graph(vertices: Iterable[str], edges: Iterable[Iterable[str]]) -> list[str]:
    """Check raw graph data against the simplicial-graph invariants.

    Returns a list of human-readable violations; an empty list means the
    data describes a valid simplicial graph. Violations checked: bad
    labels, duplicate vertices, loops, dangling edge endpoints, duplicate
    edges, malformed edge pairs.
    """
    violations = []
    vertices = list(vertices)
    seen = set()
    for v in vertices:
        problem = _label_problem(v)
        if problem is not None:
            violations.append(f"vertex {v!r}: {problem}")
            continue
        if v in seen:
            violations.append(f"duplicate vertex {v!r}")
        seen.add(v)
    edge_set = set()
    for e in edges:
        pair = tuple(e)
        if len(pair) != 2:
            violations.append(f"edge {pair!r} does not have exactly two endpoints")
            continue
        u, v = pair
        if u == v:
            violations.append(f"loop edge at {u!r}")
            continue
        dangling = [w for w in pair if w not in seen]
        if dangling:
            violations.append(f"edge {pair!r} has undeclared endpoint {dangling[0]!r}")
            continue
        key = frozenset(pair)
        if key in edge_set:
            violations.append(f"duplicate edge {tuple(sorted(pair))!r}")
        edge_set.add(key)
    return violations


class SimplicialGraph:
    """Immutable finite simplicial graph.

    ``vertices`` is an ordered tuple of distinct labels; ``edges`` is a
    frozenset of two-element frozensets. Instances are validated on
    construction and never mutated afterwards, so they are safe to share
    across threads.
    """

    __slots__ = ("vertices", "edges", "adjacency", "_index", "_nbar_cache")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        vertices = tuple(vertices)
        edges = [tuple(e) for e in edges]
        violations = validate_graph(vertices, edges)
        if violations:
            raise GraphError("; ".join(violations))
        self.vertices: tuple[str, ...] = vertices
        self.edges: frozenset[frozenset[str]] = frozenset(frozenset(e) for e in edges)
        self._index: dict[str, int] = {v: i for i, v in enumerate(vertices)}
        adj: dict[str, set[str]] = {v: set() for v in vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        self.adjacency: dict[str, frozenset[str]] = {v: frozenset(s) for v, s in adj.items()}
        self._nbar_cache: tuple[tuple[int, ...], ...] | None = None

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency.get(u, ())

    def index_of(self, v: str) -> int:
        return self._index[v]

    def edge_list(self) -> list[tuple[str, str]]:
        """Edges as ordered pairs, sorted by vertex declaration order."""
        idx = self._index
        pairs = []
        for e in self.edges:
            u, v = sorted(e, key=idx.__getitem__)
            pairs.append((u, v))
        pairs.sort(key=lambda p: (idx[p[0]], idx[p[1]]))
        return pairs

    def nonneighbors(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex tuples of indices of distinct non-adjacent vertices."""
        if self._nbar_cache is None:
            n = len(self.vertices)
            out = []
            for i, v in enumerate(self.vertices):
                adj = self.adjacency[v]
                out.append(tuple(j for j in range(n) if j != i and self.vertices[j] not in adj))
            self._nbar_cache = tuple(out)
        return self._nbar_cache

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"SimplicialGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class VertexSubset:
    """A subset of the vertices of a fixed parent graph."""

    parent: SimplicialGraph
    members: frozenset[str]

    def __init__(self, parent: SimplicialGraph, members: Iterable[str]):
        members = frozenset(members)
        missing = [v for v in members if not parent.has_vertex(v)]
        if missing:
            raise GraphError(f"subset member {missing[0]!r} is not a vertex of the parent graph")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "members", members)

    def ordered(self) -> tuple[str, ...]:
        """Members in the parent graph's declaration order."""
        return tuple(v for v in self.parent.vertices if v in self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class VertexMap:
    """A total assignment of source vertices to target vertices.

    Edge preservation is deliberately not an invariant; it is what the
    verification operations decide.
    """

    source: SimplicialGraph
    target: SimplicialGraph
    assignment: Mapping[str, str]

    def __init__(self, source: SimplicialGraph, target: SimplicialGraph,
                 assignment: Mapping[str, str]):
        assignment = dict(assignment)
        for v in source.vertices:
            if v not in assignment:
                raise GraphError(f"assignment missing source vertex {v!r}")
        for v, img in assignment.items():
            if not source.has_vertex(v):
                raise GraphError(f"assignment key {v!r} is not a source vertex")
            if not target.has_vertex(img):
                raise GraphError(f"image {img!r} of {v!r} is not a target vertex")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "assignment", assignment)

    def __call__(self, v: str) -> str:
        return self.assignment[v]

    def compose(self, outer: "VertexMap") -> "VertexMap":
        """Return the map v -> outer(self(v)) from self.source to outer.target."""
        return VertexMap(self.source, outer.target,
                         {v: outer.assignment[self.assignment[v]] for v in self.source.vertices})


def _subset_members(g: SimplicialGraph, s) -> frozenset[str]:
    if isinstance(s, VertexSubset):
        if s.parent != g:
            raise GraphError("subset belongs to a different parent graph")
        return s.members
    members = frozenset(s)
    missing = [v for v in members if not g.has_vertex(v)]
    if missing:
        raise GraphError(f"subset member {missing[0]!r} is not a vertex of the graph")
    return members


def induced_subgraph(g: SimplicialGraph, s) -> SimplicialGraph:
    """The full subgraph of ``g`` on the vertex subset ``s``.

    Keeps exactly the edges of ``g`` with both endpoints in ``s``, in the
    declaration order inherited from ``g``.
    """
    members = _subset_members(g, s)
    vertices = tuple(v for v in g.vertices if v in members)
    edges = [(u, v) for u, v in g.edge_list() if u in members and v in members]
    return SimplicialGraph(vertices, edges)


def is_full_subgraph(g: SimplicialGraph, sub: SimplicialGraph) -> bool:
    """True iff ``sub`` contains every edge of ``g`` between its vertices.

    Full subgraphs (also called induced or spanning) are exactly the
    subgraphs whose vertex sets generate special subgroups of the
    associated right-angled Artin group.
    """
    for v in sub.vertices:
        if not g.has_vertex(v):
            raise GraphError(f"{v!r} is not a vertex of the ambient graph")
    for e in sub.edges:
        if e not in g.edges:
            u, v = tuple(e)
            raise GraphError(f"edge ({u!r}, {v!r}) is not an edge of the ambient graph")
    members = set(sub.vertices)
    for u, v in g.edge_list():
        if u in members and v in members and not sub.has_edge(u, v):
            return False
    return True


def verify_graph_homomorphism(f: VertexMap) -> bool:
    """Strict edge check: every source edge maps to a target edge.

    Since the target is simplicial this forces adjacent vertices to map
    to distinct vertices. Runs in time proportional to the number of
    source edges.
    """
    assignment = f.assignment
    target = f.target
    for u, v in f.source.edge_list():
        if not target.has_edge(assignment[u], assignment[v]):
            return False
    return True


def find_graph_homomorphism(source: SimplicialGraph, target: SimplicialGraph,
                            budget: int = 1_000_000) -> VertexMap | None:
    """Exhaustive backtracking search for a strict graph homomorphism.

    Tries target vertices for each source vertex in declaration order,
    pruning as soon as an edge to an already-assigned vertex is not
    preserved. ``budget`` caps the number of attempted assignments
    (search-tree nodes); exceeding it raises SearchBudgetExceeded, which
    is a distinct outcome from the exhaustive ``None``.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    src = source.vertices
    n = len(src)
    if n == 0:
        return VertexMap(source, target, {})
    if not target.vertices:
        return None
    # for each position, the earlier positions it is adjacent to
    earlier: list[list[int]] = []
    for i, v in enumerate(src):
        adj = source.adjacency[v]
        earlier.append([j for j in range(i) if src[j] in adj])
    tgt = target.vertices
    tadj = target.adjacency
    assigned: list[str | None] = [None] * n
    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        for cand in tgt:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"homomorphism search exceeded {budget} nodes")
            ok = True
            for j in earlier[i]:
                if assigned[j] not in tadj[cand]:
                    ok = False
                    break
            if ok:
                assigned[i] = cand
                if extend(i + 1):
                    return True
                assigned[i] = None
        return False

    if extend(0):
        return VertexMap(source, target, dict(zip(src, assigned)))
    return None


def _check_bijection(g: SimplicialGraph, m1: frozenset[str], m2: frozenset[str],
                     f: Mapping[str, str]) -> None:
    if set(f.keys()) != set(m1):
        raise GraphError("map is not defined on exactly the first subset")
    images = set(f.values())
    if images != set(m2) or len(images) != len(m1):
        raise GraphError("map is not a bijection onto the second subset")


def verify_induced_subgraph_isomorphism(g: SimplicialGraph, s1, s2,
                                        f: Mapping[str, str]) -> bool:
    """Check that a bijection between two vertex subsets preserves both
    edges and non-edges of the ambient graph (the induced condition)."""
    m1 = _subset_members(g, s1)
    m2 = _subset_members(g, s2)
    _check_bijection(g, m1, m2, f)
    ordered = [v for v in g.vertices if v in m1]
    for i, u in enumerate(ordered):
        for v in ordered[i + 1:]:
            if g.has_edge(u, v) != g.has_edge(f[u], f[v]):
                return False
    return True


def find_induced_subgraph_isomorphism(g: SimplicialGraph, s1, s2,
                                      budget: int = 1_000_000) -> dict[str, str] | None:
    """Exhaustive backtracking search for an induced isomorphism s1 -> s2.

    Returns a bijection dict, ``None`` when none exists (in particular
    immediately when the subsets have different sizes), or raises
    SearchBudgetExceeded. Search order follows vertex declaration order.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    m1 = _subset_members(g, s1)
    m2 = _subset_members(g, s2)
    if len(m1) != len(m2):
        return None
    left = [v for v in g.vertices if v in m1]
    right = [v for v in g.vertices if v in m2]
    n = len(left)
    assigned: list[str | None] = [None] * n
    used: set[str] = set()
    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        u = left[i]
        for cand in right:
            if cand in used:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"induced isomorphism search exceeded {budget} nodes")
            ok = True
            for j in range(i):
                if g.has_edge(u, left[j]) != g.has_edge(cand, assigned[j]):
                    ok = False
                    break
            if ok:
                assigned[i] = cand
                used.add(cand)
                if extend(i + 1):
                    return True
                used.discard(cand)
                assigned[i] = None
        return False

    if extend(0):
        return dict(zip(left, assigned))
    return None


def random_graph(n: int, p: float, seed: int) -> SimplicialGraph:
    """Erdos-Renyi style graph on vertices v0..v(n-1), deterministic in seed."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    vertices = tuple(f"v{i}" for i in range(n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((vertices[i], vertices[j]))
    return SimplicialGraph(vertices, edges)


def triangle_vertices(g: SimplicialGraph) -> tuple[str, str, str] | None:
    """Some triple of mutually adjacent vertices, or None if none exists."""
    verts = g.vertices
    for i, u in enumerate(verts):
        for j in range(i + 1, len(verts)):
            v = verts[j]
            if not g.has_edge(u, v):
                continue
            common = g.adjacency[u] & g.adjacency[v]
            for w in verts[j + 1:]:
                if w in common:
                    return (u, v, w)
    return None


# ---------------------------------------------------------------------------
# text format
#
#   line 1: vertices <label> <label> ...
#   then:   edge <label> <label>       (one per edge)
#   '#' begins a comment line; blank lines ignored; LF line endings.


def format_graph(g: SimplicialGraph) -> str:
    lines = ["vertices " + " ".join(g.vertices) if g.vertices else "vertices"]
    for u, v in g.edge_list():
        lines.append(f"edge {u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> SimplicialGraph:
    """Parse the graph text format; raises GraphError on any problem."""
    vertices: tuple[str, ...] | None = None
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "vertices":
            if vertices is not None:
                raise GraphError(f"line {lineno}: repeated 'vertices' line")
            vertices = tuple(fields[1:])
        elif fields[0] == "edge":
            if len(fields) != 3:
                raise GraphError(f"line {lineno}: 'edge' needs exactly two labels")
            edges.append((fields[1], fields[2]))
        else:
            raise GraphError(f"line {lineno}: unknown directive {fields[0]!r}")
    if vertices is None:
        raise GraphError("missing 'vertices' line")
    violations = validate_graph(vertices, edges)
    if violations:
        raise GraphError("; ".join(violations))
    return SimplicialGraph(vertices, edges)


def format_vertex_map(f: VertexMap) -> str:
    lines = [f"map {v} {f.assignment[v]}" for v in f.source.vertices]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_vertex_map(text: str, source: SimplicialGraph, target: SimplicialGraph) -> VertexMap:
    assignment: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] != "map" or len(fields) != 3:
            raise GraphError(f"line {lineno}: expected 'map <source> <target>'")
        if fields[1] in assignment:
            raise GraphError(f"line {lineno}: repeated source vertex {fields[1]!r}")
        assignment[fields[1]] = fields[2]
    return VertexMap(source, target, assignment)
