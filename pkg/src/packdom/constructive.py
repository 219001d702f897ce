"""Constructive algorithms behind the existence bounds.

Four builders, each verified against its contract before returning:

* `peel_two_packing`: maximal 2-packing of a tree within floor((n+3s-1)/5),
  by repeatedly peeling the deep end of a diametrical path.
* `private_distance_dominating_set`: minimum d-distance dominating set in
  which every member owns a private vertex at distance exactly d.
* `build_distance_two_packing`: d-distance dominating 2-packing within
  (n - 2*sqrt(n) + d + 1)/d, grown cell by cell over a dominator partition.
* `packing_preserving_spanning_tree`: spanning tree whose minimum 2-distance
  dominating 2-packing is no larger than the input graph's.

plus `split_support_family`, the diametrical-edge split that keeps both
halves inside the support-congruence family with additive optimum.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .bounds import (
    SqrtBound,
    has_modular_support_distances,
    sqrt_upper_bound,
)
from .errors import InputError, InternalInvariantError
from .exact import (
    Params,
    gamma_exact,
    is_d_dominating,
    is_maximal_2_packing,
    is_p_packing,
)
from .graph import (
    INF,
    Graph,
    bfs_distances,
    diametrical_path,
    is_connected,
    is_tree,
    multi_source_distances,
    split_at_edge,
    structural_stats,
    tree_eccentricities,
)
from .treedp import gamma_tree


@dataclass(frozen=True)
class TraceStep:
    label: str
    vertices: tuple
    added: tuple


@dataclass(frozen=True)
class ConstructionTrace:
    steps: tuple
    final: frozenset
    size_bound: object
    bound_holds: bool

    def to_json_dict(self):
        bound = self.size_bound
        if isinstance(bound, SqrtBound):
            bound = bound.to_json_dict()
        return {
            "steps": [
                {"label": s.label, "vertices": list(s.vertices), "added": list(s.added)}
                for s in self.steps
            ],
            "final": sorted(self.final),
            "size": len(self.final),
            "sizeBound": bound,
            "boundHolds": self.bound_holds,
        }


@dataclass(frozen=True)
class DominatorPartition:
    """Partition of a tree into connected cells of radius <= d around the
    members of a dominating set, plus the contracted quotient tree."""

    anchors: tuple          # anchor vertex per cell, in cell order
    cells: tuple            # tuple of sorted vertex tuples
    cell_of: tuple          # vertex -> cell index
    quotient: Graph         # tree on len(cells) vertices
    prefix_order: tuple     # cell indices; every prefix induces a quotient subtree


# ---------------------------------------------------------------------------
# Peeling construction for the floor((n+3s-1)/5) bound
# ---------------------------------------------------------------------------


def _induced_bfs(t, alive, source, banned_edge=None):
    """Distances within the subtree induced by `alive`, optionally refusing
    to cross one edge."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in t.adj[u]:
            if v not in alive or v in dist:
                continue
            if banned_edge and (u, v) in (banned_edge, banned_edge[::-1]):
                continue
            dist[v] = du
            queue.append(v)
    return dist


def _induced_diametrical_path(t, alive):
    start = min(alive)
    d0 = _induced_bfs(t, alive, start)
    far = max(d0.values())
    a = min(v for v, dd in d0.items() if dd == far)
    da = _induced_bfs(t, alive, a)
    far = max(da.values())
    b = min(v for v, dd in da.items() if dd == far)
    lo, hi = (a, b) if a < b else (b, a)
    # Unique path lo..hi inside the induced subtree.
    parent = {lo: lo}
    queue = deque([lo])
    while queue:
        u = queue.popleft()
        if u == hi:
            break
        for v in t.adj[u]:
            if v in alive and v not in parent:
                parent[v] = u
                queue.append(v)
    path = [hi]
    while path[-1] != lo:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _induced_center(t, alive):
    """Smallest-identifier center of the induced subtree."""
    best_v, best_e = None, None
    for v in sorted(alive):
        ecc = max(_induced_bfs(t, alive, v).values())
        if best_e is None or ecc < best_e:
            best_v, best_e = v, ecc
    return best_v


def peel_two_packing(t):
    """Maximal 2-packing of size at most floor((n+3s-1)/5).

    While the current subtree has diameter >= 5, look at a canonical
    diametrical path v0 v1 ... and apply the first matching case: if
    deg(v2) >= 3 drop the branch at v1 (v0 joins only when the inner
    solution leaves it uncovered); if deg(v3) >= 3 drop the branch at v2 and
    add v0; if deg(v4) >= 3 drop at v3 and add v1; otherwise drop at v4 and
    add v2, except that a degree-1 v5 means the whole tree is a broom with
    answer {v1, v4}.  Diameter <= 4 contributes a single center.
    """
    if not is_tree(t) or t.n < 2:
        raise InputError("peel_two_packing requires a tree on n >= 2 vertices")
    alive = set(range(t.n))
    pending = []  # (label, removed frozenset, candidate, alive snapshot)
    base = None
    base_label = None
    while True:
        path = _induced_diametrical_path(t, alive)
        if len(path) - 1 <= 4:
            base = {_induced_center(t, alive)}
            base_label = "base:diam<=4"
            break
        v0, v1, v2, v3, v4, v5 = path[:6]
        deg = lambda x: sum(1 for w in t.adj[x] if w in alive)  # noqa: E731
        if deg(v2) >= 3:
            removed = frozenset(_induced_bfs(t, alive, v1, banned_edge=(v1, v2)))
            pending.append(("deg(v2)>=3", removed, v0, frozenset(alive)))
        elif deg(v3) >= 3:
            removed = frozenset(_induced_bfs(t, alive, v2, banned_edge=(v2, v3)))
            pending.append(("deg(v3)>=3", removed, v0, None))
        elif deg(v4) >= 3:
            removed = frozenset(_induced_bfs(t, alive, v3, banned_edge=(v3, v4)))
            pending.append(("deg(v4)>=3", removed, v1, None))
        elif deg(v5) == 1:
            base = {v1, v4}
            base_label = "base:broom"
            break
        else:
            removed = frozenset(_induced_bfs(t, alive, v4, banned_edge=(v4, v5)))
            pending.append(("chain", removed, v2, None))
        alive -= removed

    chosen = set(base)
    steps = [TraceStep(base_label, tuple(sorted(alive)), tuple(sorted(base)))]
    for label, removed, candidate, snapshot in reversed(pending):
        if snapshot is None:
            chosen.add(candidate)
            steps.append(TraceStep(label, tuple(sorted(removed)), (candidate,)))
            continue
        # Conditional case: keep the inner packing when it already reaches
        # everything that was removed, otherwise adopt the far endpoint.
        dist = _induced_bfs_from_set(t, snapshot, chosen)
        if all(dist.get(x, INF) <= 2 for x in removed):
            steps.append(TraceStep(label, tuple(sorted(removed)), ()))
        else:
            chosen.add(candidate)
            steps.append(TraceStep(label, tuple(sorted(removed)), (candidate,)))
    steps.reverse()

    stats = structural_stats(t)
    bound = (stats.n + 3 * stats.supports - 1) // 5
    if not is_maximal_2_packing(t, chosen):
        raise InternalInvariantError("peeling did not produce a maximal 2-packing")
    if len(chosen) > bound:
        raise InternalInvariantError("peeling exceeded its size bound")
    return ConstructionTrace(
        steps=tuple(steps),
        final=frozenset(chosen),
        size_bound=bound,
        bound_holds=True,
    )


def _induced_bfs_from_set(t, alive, sources):
    dist = {}
    queue = deque()
    for s in sources:
        if s in alive:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in t.adj[u]:
            if v in alive and v not in dist:
                dist[v] = du
                queue.append(v)
    return dist


# ---------------------------------------------------------------------------
# Private-vertex minimum distance dominating sets
# ---------------------------------------------------------------------------


def _rooted_arrays(t, root):
    parent = [-1] * t.n
    parent[root] = root
    depth = [0] * t.n
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in t.adj[u]:
            if parent[v] == -1:
                parent[v] = u
                depth[v] = depth[u] + 1
                order.append(v)
                queue.append(v)
    return parent, depth, order


def _verify_private_property(t, members, d, rows):
    """Every member needs some w at distance exactly d whose d-ball meets the
    set only at that member; returns the witness map or None."""
    witness = {}
    members = list(members)
    for v in members:
        row = rows[v]
        found = None
        for w in range(t.n):
            if row[w] != d or w in rows:
                continue
            if all(rows[x][w] > d for x in members if x != v):
                found = w
                break
        if found is None:
            return None
        witness[v] = found
    return witness


def private_distance_dominating_set(t, d, with_witnesses=False):
    """Minimum d-distance dominating set where each member has a private
    vertex at distance exactly d (no other member within d of it).

    Deepest-first greedy from a diametrical end: each full-depth placement
    goes at the d-th ancestor of the deepest uncovered vertex, which stays
    privately served forever; the final shallow batch picks the smallest
    vertex that covers the leftovers and still owns an exact-distance
    witness.  The property and minimality are verified before returning;
    an exchange search over minimum sets backs the rare greedy miss.
    """
    if not is_tree(t):
        raise InputError("requires a tree")
    if d < 1:
        raise InputError(f"needs d >= 1, got {d}")
    ecc = tree_eccentricities(t)
    if min(ecc) < d:
        raise InputError(f"needs radius >= d, got radius {min(ecc)} < {d}")

    target = gamma_tree(t, Params(d, 0)).gamma
    for root in (diametrical_path(t)[-1], diametrical_path(t)[0]):
        result = _greedy_private_set(t, d, root)
        if result is None:
            continue
        members, rows = result
        if len(members) != target:
            continue
        witness = _verify_private_property(t, members, d, rows)
        if witness is not None:
            members = frozenset(members)
            return (members, witness) if with_witnesses else members

    result = _search_private_set(t, d, target)
    if result is None:
        raise InternalInvariantError(
            "no minimum distance dominating set with the private-vertex property was found"
        )
    members, witness = result
    return (frozenset(members), witness) if with_witnesses else frozenset(members)


def _greedy_private_set(t, d, root):
    parent, depth, order = _rooted_arrays(t, root)
    covdist = [INF] * t.n
    members = []
    rows = {}
    by_depth = sorted(range(t.n), key=lambda v: (-depth[v], v))

    def place(v):
        members.append(v)
        row = bfs_distances(t, v)
        rows[v] = row
        for u in range(t.n):
            if row[u] < covdist[u]:
                covdist[u] = row[u]

    while True:
        w = next((v for v in by_depth if covdist[v] > d), None)
        if w is None:
            break
        if depth[w] >= d:
            v = w
            for _ in range(d):
                v = parent[v]
            place(v)
            continue
        # Shallow leftovers: every uncovered vertex sits within depth[w] < d
        # of the root.  Take the smallest vertex that covers all of them and
        # keeps the whole property intact (a careless pick here could also
        # rob an earlier member of its only witness).
        uncovered = [v for v in range(t.n) if covdist[v] > d]
        chosen = None
        for v in range(t.n):
            if v in rows:
                continue
            row = bfs_distances(t, v)
            if any(row[u] > d for u in uncovered):
                continue
            trial_rows = dict(rows)
            trial_rows[v] = row
            if _verify_private_property(t, members + [v], d, trial_rows) is not None:
                chosen = v
                break
        if chosen is None:
            return None
        place(chosen)
    return members, rows


def _search_private_set(t, d, target, node_cap=500_000):
    """Complete fallback: enumerate minimum d-distance dominating sets by
    covering the lowest undominated vertex, testing the private property on
    each; stops at the first success."""
    from .exact import distance_matrix

    dist = distance_matrix(t)
    ball = []
    wide = []
    for v in range(t.n):
        near_mask = 0
        wide_mask = 0
        for u in range(t.n):
            if dist[v][u] <= d:
                near_mask |= 1 << u
            if dist[v][u] <= 2 * d:
                wide_mask |= 1 << u
        ball.append(near_mask)
        wide.append(wide_mask)
    full = (1 << t.n) - 1
    nodes = 0

    def lower_bound(undominated):
        count = 0
        q = undominated
        while q:
            u = (q & -q).bit_length() - 1
            q &= ~wide[u]
            count += 1
        return count

    stack = [((), 0)]
    while stack:
        nodes += 1
        if nodes > node_cap:
            raise InternalInvariantError("private-set fallback search exceeded its node cap")
        chosen, dominated = stack.pop()
        if dominated == full:
            rows = {v: dist[v] for v in chosen}
            witness = _verify_private_property(t, chosen, d, rows)
            if witness is not None:
                return list(chosen), witness
            continue
        if len(chosen) >= target:
            continue
        undominated = (~dominated) & full
        u = (undominated & -undominated).bit_length() - 1
        if len(chosen) + lower_bound(undominated) > target:
            continue
        cand = ball[u]
        picks = []
        while cand:
            low = cand & -cand
            picks.append(low.bit_length() - 1)
            cand ^= low
        for c in reversed(picks):
            stack.append((chosen + (c,), dominated | ball[c]))
    return None


# ---------------------------------------------------------------------------
# Dominator partition and the sqrt-bound construction
# ---------------------------------------------------------------------------


def partition_by_dominators(t, dominators, d):
    """Partition V(t) into connected cells of radius <= d, one around each
    dominator, by multi-source BFS with ties to the smaller anchor index.

    Also contracts cells to a quotient tree and fixes a prefix-connected
    cell order starting from a largest cell.
    """
    if not is_tree(t):
        raise InputError("requires a tree")
    anchors = tuple(sorted(set(dominators)))
    if not anchors:
        raise InputError("needs at least one dominator")
    dist = [INF] * t.n
    cell_of = [-1] * t.n
    for idx, a in enumerate(anchors):
        if not (0 <= a < t.n):
            raise InputError(f"vertex {a} out of range")
        dist[a] = 0
        cell_of[a] = idx
    frontier = list(anchors)
    level = 0
    while frontier:
        claims = {}
        for u in frontier:
            for w in t.adj[u]:
                if dist[w] is not INF:
                    continue
                key = (cell_of[u], u)
                if w not in claims or key < claims[w]:
                    claims[w] = key
        nxt = []
        for w, (cidx, _pu) in claims.items():
            dist[w] = level + 1
            cell_of[w] = cidx
            nxt.append(w)
        frontier = nxt
        level += 1

    if any(c == -1 for c in cell_of):
        raise InternalInvariantError("partition left a vertex unassigned")
    if any(dv > d for dv in dist):
        raise InternalInvariantError("a cell exceeds radius d; the input set does not dominate")

    b = len(anchors)
    cells = [[] for _ in range(b)]
    for v in range(t.n):
        cells[cell_of[v]].append(v)
    cells = tuple(tuple(sorted(c)) for c in cells)

    quotient_edges = set()
    for u, v in t.edges():
        cu, cv = cell_of[u], cell_of[v]
        if cu != cv:
            key = (cu, cv) if cu < cv else (cv, cu)
            if key in quotient_edges:
                raise InternalInvariantError("two edges join the same pair of cells")
            quotient_edges.add(key)
    quotient = Graph(b, sorted(quotient_edges))
    if b > 1 and not is_tree(quotient):
        raise InternalInvariantError("quotient graph is not a tree")

    start = max(range(b), key=lambda i: (len(cells[i]), -anchors[i]))
    prefix = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in quotient.adj[u]:
            if v not in seen:
                seen.add(v)
                prefix.append(v)
                queue.append(v)
    return DominatorPartition(
        anchors=anchors,
        cells=cells,
        cell_of=tuple(cell_of),
        quotient=quotient,
        prefix_order=tuple(prefix),
    )


def _cell_structure(t, cell, anchor):
    """Root the cell's induced subtree at its anchor.

    Returns (depth, branch_root, subtree_max_depth) maps over cell vertices;
    branch_root[x] is the anchor neighbor whose branch contains x.
    """
    cell_set = set(cell)
    depth = {anchor: 0}
    branch = {anchor: None}
    order = [anchor]
    queue = deque([anchor])
    while queue:
        u = queue.popleft()
        for v in t.adj[u]:
            if v in cell_set and v not in depth:
                depth[v] = depth[u] + 1
                branch[v] = v if u == anchor else branch[u]
                order.append(v)
                queue.append(v)
    if len(order) != len(cell_set):
        raise InternalInvariantError("cell is not connected")
    submax = {v: depth[v] for v in order}
    parent_of = {}
    for u in order:
        for v in t.adj[u]:
            if v in cell_set and depth.get(v) == depth[u] + 1:
                parent_of[v] = u
    for v in reversed(order):
        if v != anchor:
            p = parent_of[v]
            if submax[v] > submax[p]:
                submax[p] = submax[v]
    return depth, branch, submax


def build_distance_two_packing(t, d):
    """d-distance dominating 2-packing within (n - 2*sqrt(n) + d + 1)/d.

    Radius <= d yields a single center.  Otherwise the tree is partitioned
    around a private-vertex minimum dominating set, cells are visited in a
    prefix-connected order starting from a largest cell, and each cell
    contributes vertices chosen by how close the already-built set comes to
    its connecting vertex: far away, the anchor itself; adjacent or at
    distance two, replacements at depth one or two on the witness branches.
    A cell left with uncovered vertices (possible only when the connector
    leans on the unique witness branch) gets one repair vertex, which keeps
    the per-cell budget intact.
    """
    if not is_tree(t):
        raise InputError("requires a tree")
    if d < 2:
        raise InputError(f"needs d >= 2, got {d}")
    bound = sqrt_upper_bound(t.n, d)
    ecc = tree_eccentricities(t)
    if min(ecc) <= d:
        centers = [v for v in range(t.n) if ecc[v] == min(ecc)]
        final = frozenset({min(centers)})
        if not bound.holds_for(1):
            raise InternalInvariantError("single-vertex bound check failed")
        step = TraceStep("center", tuple(range(t.n)), (min(centers),))
        return ConstructionTrace((step,), final, bound, True)

    dominators = private_distance_dominating_set(t, d)
    part = partition_by_dominators(t, dominators, d)
    order = part.prefix_order
    cells, anchors = part.cells, part.anchors

    chosen = set()
    steps = []
    first = order[0]
    chosen.add(anchors[first])
    steps.append(TraceStep("seed", cells[first], (anchors[first],)))

    earlier = set(cells[first])
    for pos in range(1, len(order)):
        ci = order[pos]
        cell = cells[ci]
        anchor = anchors[ci]
        cell_set = set(cell)
        connectors = [
            (u, v)
            for u, v in t.edges()
            if (u in earlier and v in cell_set) or (v in earlier and u in cell_set)
        ]
        if len(connectors) != 1:
            raise InternalInvariantError(
                f"expected exactly one edge into the prefix, found {len(connectors)}"
            )
        a, bb = connectors[0]
        entry = a if a in cell_set else bb

        depth, branch, submax = _cell_structure(t, cell, anchor)
        witness_roots = sorted(
            v for v in cell if depth[v] == 1 and submax[branch[v]] == d
        )
        if not witness_roots:
            raise InternalInvariantError("cell has no depth-d witness branch")

        def deep_pick(root):
            cands = [
                x for x in cell
                if depth[x] == 2 and branch[x] == root and submax[x] == d
            ]
            if not cands:
                raise InternalInvariantError("witness branch lost its depth-2 vertex")
            return min(cands)

        dist_prev = multi_source_distances(t, chosen)
        gap = dist_prev[entry]
        j = depth[entry]
        if j == 0:
            if gap == 1:
                additions = [deep_pick(u) for u in witness_roots]
                label = "anchor-entry:gap1"
            elif gap == 2:
                additions = [witness_roots[0]] + [deep_pick(u) for u in witness_roots[1:]]
                label = "anchor-entry:gap2"
            else:
                additions = [anchor]
                label = "anchor-entry:far"
        elif j == 1:
            if gap == 1:
                if entry in witness_roots:
                    rest = [u for u in witness_roots if u != entry]
                    additions = ([rest[0]] if rest else []) + [deep_pick(u) for u in rest[1:]]
                    label = "level1-entry:on-witness"
                else:
                    additions = [witness_roots[0]] + [deep_pick(u) for u in witness_roots[1:]]
                    label = "level1-entry:off-witness"
            else:
                additions = [anchor]
                label = "level1-entry:far"
        else:
            additions = [anchor]
            label = "deep-entry"

        chosen.update(additions)
        dist_now = multi_source_distances(t, chosen)
        uncovered = [x for x in cell if dist_now[x] > d]
        if uncovered:
            fix = branch[min(uncovered)]
            if fix is None or fix in chosen:
                raise InternalInvariantError("no usable repair vertex")
            chosen.add(fix)
            additions = additions + [fix]
            label += "+repair"
            dist_now = multi_source_distances(t, chosen)
            if any(dist_now[x] > d for x in cell):
                raise InternalInvariantError("repair left the cell uncovered")
        cell_budget = (len(cell) - 1) // d
        if len(additions) > cell_budget:
            raise InternalInvariantError("cell contribution exceeds its budget")
        steps.append(TraceStep(label, cell, tuple(sorted(additions))))
        earlier |= cell_set

    if not is_d_dominating(t, chosen, d):
        raise InternalInvariantError("construction is not distance dominating")
    if not is_p_packing(t, chosen, 2):
        raise InternalInvariantError("construction is not a 2-packing")
    if not bound.holds_for(len(chosen)):
        raise InternalInvariantError("construction exceeded the sqrt bound")
    return ConstructionTrace(tuple(steps), frozenset(chosen), bound, True)


# ---------------------------------------------------------------------------
# Spanning tree preserving the 2-distance 2-packing optimum
# ---------------------------------------------------------------------------


def packing_preserving_spanning_tree(g, timeout_ms=None):
    """Spanning tree T of g with the optimal witness S of g still a maximal
    2-packing of T, hence the tree optimum is no larger than the graph's.

    Star edges first: every vertex adjacent to S hangs off its unique
    S-neighbor; every remaining vertex hangs off the smallest middle vertex
    of a shortest 2-path into S; the resulting |S| stars are then joined
    with original edges in canonical order.  Returns (tree, witness).
    """
    if g.n == 0 or not is_connected(g):
        raise InputError("requires a nonempty connected graph")
    outcome = gamma_exact(g, Params(2, 2), timeout_ms=timeout_ms)
    if outcome.is_infeasible:
        raise InternalInvariantError("a connected graph always has a maximal 2-packing")
    packing = sorted(outcome.witness)
    in_packing = set(packing)

    tree_edges = []
    for v in range(g.n):
        if v in in_packing:
            continue
        s_neighbors = [w for w in g.adj[v] if w in in_packing]
        if len(s_neighbors) > 1:
            raise InternalInvariantError("two members of a 2-packing share a neighbor")
        if s_neighbors:
            tree_edges.append((min(v, s_neighbors[0]), max(v, s_neighbors[0])))
    attached = in_packing | {v for e in tree_edges for v in e}
    for v in range(g.n):
        if v in attached:
            continue
        hook = None
        for u in g.adj[v]:
            if any(w in in_packing for w in g.adj[u]):
                hook = u
                break
        if hook is None:
            raise InternalInvariantError(
                "a vertex sits at distance > 2 from a maximal 2-packing"
            )
        tree_edges.append((min(v, hook), max(v, hook)))

    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[rx] = ry
        return True

    for u, v in tree_edges:
        union(u, v)
    for u, v in g.edges():
        if len(tree_edges) == g.n - 1:
            break
        if union(u, v):
            tree_edges.append((u, v))

    tree = Graph(g.n, tree_edges, roles=g.roles)
    if not is_tree(tree):
        raise InternalInvariantError("assembled edge set is not a spanning tree")
    if not (is_p_packing(tree, in_packing, 2) and is_d_dominating(tree, in_packing, 2)):
        raise InternalInvariantError("witness is not a maximal 2-packing of the tree")
    return tree, frozenset(in_packing)


# ---------------------------------------------------------------------------
# Splitting a support-congruent tree at a diametrical edge
# ---------------------------------------------------------------------------


def split_support_family(t):
    """Split a support-congruent tree at the fourth edge of a canonical
    diametrical path, yielding two support-congruent halves whose optima add
    up to the whole tree's.

    Requires membership in the family and an optimum of at least 2; all the
    stated consequences (degree-2 spine, family membership of both halves,
    additive optimum, leaf and support accounting) are verified and any
    failure raises an internal error.
    """
    if not is_tree(t):
        raise InputError("requires a tree")
    if not has_modular_support_distances(t):
        raise InputError("tree is not in the support-congruence family")
    whole = gamma_tree(t, Params(2, 0)).gamma
    if whole < 2:
        raise InputError("needs a tree with optimum at least 2")

    path = diametrical_path(t)
    m = len(path) - 1
    if m % 5 != 4 or m < 9:
        raise InternalInvariantError(f"diameter {m} contradicts family membership")
    for i in (3, 4, 5, 6):
        if t.degree(path[i]) != 2:
            raise InternalInvariantError(f"spine vertex {path[i]} has degree != 2")
    u, v = path[4], path[5]
    es = split_at_edge(t, u, v)

    stats = structural_stats(t)
    su, sv = es.stats_u, es.stats_v
    if stats.leaves != su.leaves + sv.leaves - 2:
        raise InternalInvariantError("leaf accounting failed")
    if stats.supports != su.supports + sv.supports - 2:
        raise InternalInvariantError("support accounting failed")
    if not has_modular_support_distances(es.component_u):
        raise InternalInvariantError("first half left the family")
    if not has_modular_support_distances(es.component_v):
        raise InternalInvariantError("second half left the family")
    gu = gamma_tree(es.component_u, Params(2, 0)).gamma
    gv = gamma_tree(es.component_v, Params(2, 0)).gamma
    if gu + gv != whole:
        raise InternalInvariantError("optimum is not additive across the split")
    return es
