"""Simple undirected graphs: distances, structural statistics, serialization.

Vertices are dense integers 0..n-1.  Adjacency lists are kept sorted so that
every iteration order, and hence every downstream tie-break, is deterministic.
Graphs are immutable after construction and safe to share.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InputError, ParseError

INF = float("inf")


class Graph:
    """Immutable simple undirected graph with optional vertex role tags."""

    __slots__ = ("n", "adj", "roles", "_edge_count")

    def __init__(self, n, edges, roles=None):
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        adj = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InputError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.adj = tuple(tuple(sorted(neighbors)) for neighbors in adj)
        self.roles = dict(roles) if roles else {}
        self._edge_count = len(seen)

    @property
    def m(self):
        return self._edge_count

    def degree(self, v):
        return len(self.adj[v])

    def edges(self):
        """Edges as sorted (u, v) pairs with u < v, in lexicographic order."""
        out = []
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        return out

    def has_edge(self, u, v):
        return v in self.adj[u]

    def with_roles(self, roles):
        return Graph(self.n, self.edges(), roles=roles)

    def remove_edge(self, u, v):
        """New graph with edge uv removed; roles are preserved."""
        if not self.has_edge(u, v):
            raise InputError(f"({u}, {v}) is not an edge")
        key = (u, v) if u < v else (v, u)
        edges = [e for e in self.edges() if e != key]
        return Graph(self.n, edges, roles=self.roles)

    def subgraph(self, vertices):
        """Induced subgraph on `vertices`, relabeled 0..k-1 in sorted order.

        Returns (graph, original_ids) where original_ids[i] is the vertex of
        self that i represents.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = []
        for u in keep:
            for v in self.adj[u]:
                if u < v and v in index:
                    edges.append((index[u], index[v]))
        roles = {index[v]: tag for v, tag in self.roles.items() if v in index}
        return Graph(len(keep), edges, roles=roles), keep

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class StructuralStats:
    """Vertex, leaf, and support counts plus radius and diameter.

    radius and diameter are integers, or math-style infinity (float) for
    disconnected graphs.
    """

    n: int
    leaves: int
    supports: int
    radius: object
    diameter: object


@dataclass(frozen=True)
class EdgeSplit:
    """The two components of a tree after removing edge uv."""

    u: int
    v: int
    component_u: Graph
    component_v: Graph
    vertices_u: tuple
    vertices_v: tuple
    stats_u: StructuralStats
    stats_v: StructuralStats


def bfs_distances(g, source):
    """Distances from `source` to every vertex; INF where unreachable."""
    if not (0 <= source < g.n):
        raise InputError(f"source {source} out of range for n={g.n}")
    dist = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] is INF:
                dist[v] = du
                queue.append(v)
    return dist


def multi_source_distances(g, sources):
    """Distances from the nearest member of `sources` (INF if unreachable)."""
    dist = [INF] * g.n
    queue = deque()
    for s in sources:
        if not (0 <= s < g.n):
            raise InputError(f"source {s} out of range for n={g.n}")
        if dist[s] is INF:
            dist[s] = 0
            queue.append(s)
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] is INF:
                dist[v] = du
                queue.append(v)
    return dist


def ball(g, v, k):
    """The closed ball N_k[v]: all vertices at distance at most k from v."""
    if not (0 <= v < g.n):
        raise InputError(f"vertex {v} out of range for n={g.n}")
    if k < 0:
        raise InputError(f"radius must be nonnegative, got {k}")
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == k:
            continue
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return frozenset(dist)


def is_connected(g):
    if g.n == 0:
        return True
    return bfs_distances(g, 0).count(INF) == 0


def connected_components(g):
    """Vertex sets of the connected components, each sorted, in order of
    their smallest vertex."""
    seen = [False] * g.n
    components = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        components.append(sorted(comp))
    return components


def is_tree(g):
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def leaves_and_supports(g):
    """Degree-1 vertices and their neighbors (each support counted once)."""
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    supports = {g.adj[v][0] for v in leaves}
    return leaves, sorted(supports)


def eccentricities(g):
    """Per-vertex eccentricity; INF everywhere if g is disconnected."""
    if g.n == 0:
        return []
    ecc = []
    for v in range(g.n):
        dist = bfs_distances(g, v)
        ecc.append(max(dist))
    return ecc


def tree_eccentricities(t):
    """Eccentricities of a connected tree via the two-sweep trick: every
    vertex's farthest vertex is an end of some diametrical path."""
    d0 = bfs_distances(t, 0)
    a = d0.index(max(d0))
    da = bfs_distances(t, a)
    b = da.index(max(da))
    db = bfs_distances(t, b)
    return [max(x, y) for x, y in zip(da, db)]


def structural_stats(g):
    """Counts and eccentricity extremes; disconnected graphs get INF radius."""
    leaves, supports = leaves_and_supports(g)
    if g.n == 0:
        return StructuralStats(0, 0, 0, INF, INF)
    if not is_connected(g):
        return StructuralStats(g.n, len(leaves), len(supports), INF, INF)
    if g.m == g.n - 1:
        ecc = tree_eccentricities(g)
    else:
        ecc = eccentricities(g)
    return StructuralStats(g.n, len(leaves), len(supports), min(ecc), max(ecc))


def radius_and_centers(g):
    """(radius, sorted list of center vertices); INF radius if disconnected."""
    if g.n == 0:
        raise InputError("empty graph has no radius")
    if not is_connected(g):
        return INF, []
    if g.m == g.n - 1:
        ecc = tree_eccentricities(g)
    else:
        ecc = eccentricities(g)
    rad = min(ecc)
    return rad, [v for v, e in enumerate(ecc) if e == rad]


def tree_path(t, u, v):
    """The unique u..v path in a tree, as a list of vertices."""
    parent = [-1] * t.n
    parent[u] = u
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in t.adj[x]:
            if parent[y] == -1:
                parent[y] = x
                queue.append(y)
    if parent[v] == -1:
        raise InputError(f"{u} and {v} are not connected")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def diametrical_path(t):
    """A canonical diametrical path of a connected tree.

    Two BFS sweeps; among farthest vertices the smallest identifier is taken
    at both ends, and the path is oriented from its smaller to its larger
    endpoint so repeated calls agree.
    """
    if not is_tree(t):
        raise InputError("diametrical path requires a tree")
    d0 = bfs_distances(t, 0)
    far = max(d0)
    a = min(v for v in range(t.n) if d0[v] == far)
    da = bfs_distances(t, a)
    far = max(da)
    b = min(v for v in range(t.n) if da[v] == far)
    lo, hi = (a, b) if a < b else (b, a)
    return tree_path(t, lo, hi)


def split_at_edge(t, u, v):
    """Remove tree edge uv and return both components with their stats."""
    if not is_tree(t):
        raise InputError("split_at_edge requires a tree")
    if not t.has_edge(u, v):
        raise InputError(f"({u}, {v}) is not an edge")
    # Component of u in t - uv, found by BFS that never crosses the edge.
    side_u = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in t.adj[x]:
            if (x, y) in ((u, v), (v, u)):
                continue
            if y not in side_u:
                side_u.add(y)
                queue.append(y)
    side_v = [x for x in range(t.n) if x not in side_u]
    comp_u, ids_u = t.subgraph(side_u)
    comp_v, ids_v = t.subgraph(side_v)
    return EdgeSplit(
        u=u,
        v=v,
        component_u=comp_u,
        component_v=comp_v,
        vertices_u=tuple(ids_u),
        vertices_v=tuple(ids_v),
        stats_u=structural_stats(comp_u),
        stats_v=structural_stats(comp_v),
    )


def parse_graph(text):
    """Parse the edge-list format: first line "n m", then m lines "u v".

    Requires 0 <= u < v < n, one edge per line, no duplicates.  Blank lines
    and surrounding whitespace are tolerated; errors carry line numbers.
    """
    lines = text.splitlines()
    header = None
    header_line = 0
    edges = []
    edge_set = set()
    expected = None
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        parts = stripped.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError("header must be 'n m'", line=lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("header must contain two integers", line=lineno)
            if n < 0 or m < 0:
                raise ParseError("header counts must be nonnegative", line=lineno)
            header = (n, m)
            header_line = lineno
            expected = m
            continue
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge line must contain two integers", line=lineno)
        n = header[0]
        if not (0 <= u < v < n):
            raise ParseError(f"edge ({u}, {v}) must satisfy 0 <= u < v < {n}", line=lineno)
        if (u, v) in edge_set:
            raise ParseError(f"duplicate edge ({u}, {v})", line=lineno)
        edge_set.add((u, v))
        edges.append((u, v))
    if header is None:
        raise ParseError("missing 'n m' header", line=1)
    if len(edges) != expected:
        raise ParseError(
            f"header announced {expected} edges but {len(edges)} were given",
            line=header_line,
        )
    return Graph(header[0], edges)


def serialize_graph(g):
    """Canonical edge-list text: sorted edges, one per line."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def export_dot(g, marked_edges=None):
    """Undirected DOT text; role tags become node labels, marked edges get
    a `label` attribute."""
    marked = {}
    for name, (u, v) in (marked_edges or {}).items():
        key = (u, v) if u < v else (v, u)
        marked[key] = name
    out = ["graph g {"]
    for v in range(g.n):
        tag = g.roles.get(v)
        if tag is None:
            out.append(f"  {v};")
        else:
            out.append(f'  {v} [label="{tag}"];')
    for u, v in g.edges():
        name = marked.get((u, v))
        if name is None:
            out.append(f"  {u} -- {v};")
        else:
            out.append(f'  {u} -- {v} [label="{name}"];')
    out.append("}")
    return "\n".join(out) + "\n"
