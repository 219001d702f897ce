"""Ground-truth predicates and exact minimization on small general graphs.

`brute_force_gamma` is a deliberately naive subset-enumeration oracle that
exists to cross-check everything else.  `gamma_exact` is a branch-and-bound
solver for desk-scale graphs with an optional decision budget.  Both compute
the minimum size of a vertex set that simultaneously d-distance dominates the
graph and is a p-packing.
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, InternalInvariantError, SizeRefusalError, SolveTimeout
from .graph import INF, bfs_distances, eccentricities, is_connected, tree_eccentricities

BRUTE_FORCE_LIMIT = 20
DEFAULT_TIMEOUT_MS = 60_000
_TIMEOUT_ENV = "PACKDOM_TIMEOUT_MS"


@dataclass(frozen=True)
class Params:
    """Domination radius d and packing separation p, both nonnegative."""

    d: int
    p: int

    def __post_init__(self):
        if self.d < 0 or self.p < 0:
            raise InputError(f"d and p must be nonnegative, got d={self.d}, p={self.p}")


@dataclass(frozen=True)
class SolveOutcome:
    """Either a value (size + witness set) or infeasibility.

    When produced under a decision budget k, a value means "a valid set of
    size <= k exists" (gamma is that set's size) and infeasible means the
    certified answer "no set of size <= k exists".
    """

    gamma: object
    witness: object

    @classmethod
    def value(cls, gamma, witness):
        return cls(gamma=gamma, witness=frozenset(witness))

    @classmethod
    def infeasible(cls):
        return cls(gamma=None, witness=None)

    @property
    def is_infeasible(self):
        return self.gamma is None

    def size_or_inf(self):
        return INF if self.gamma is None else self.gamma


def default_timeout_ms():
    raw = os.environ.get(_TIMEOUT_ENV)
    if raw is None:
        return DEFAULT_TIMEOUT_MS
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{_TIMEOUT_ENV} must be an integer, got {raw!r}")


def _check_subset(g, x):
    x = frozenset(x)
    for v in x:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} out of range for n={g.n}")
    return x


def is_d_dominating(g, x, d):
    """True iff every vertex of g is within distance d of some member of x."""
    x = _check_subset(g, x)
    if g.n == 0:
        return True
    if not x:
        return False
    dist = {v: 0 for v in x}
    queue = deque(x)
    seen = len(dist)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == d:
            continue
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = du + 1
                seen += 1
                queue.append(w)
    return seen == g.n


def is_p_packing(g, x, p):
    """True iff all distinct members of x are pairwise at distance >= p+1.

    Vacuously true for |x| <= 1; for p = 1 this is exactly independence.
    """
    x = _check_subset(g, x)
    if len(x) <= 1 or p == 0:
        return True
    for v in x:
        dist = {v: 0}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du == p:
                continue
            for w in g.adj[u]:
                if w not in dist:
                    if w in x:
                        return False
                    dist[w] = du + 1
                    queue.append(w)
    return True


def is_maximal_2_packing(g, x):
    """True iff x is a 2-packing and no strict superset of x is one.

    A vertex v can extend x exactly when d(v, x) >= 3, so maximality is
    checked by a depth-2 sweep from x.
    """
    x = _check_subset(g, x)
    if not is_p_packing(g, x, 2):
        return False
    if not x:
        return g.n == 0
    dist = {v: 0 for v in x}
    queue = deque(x)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == 2:
            continue
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return len(dist) == g.n


def distance_matrix(g):
    return [bfs_distances(g, v) for v in range(g.n)]


def _ball_masks(dist, limit):
    n = len(dist)
    masks = []
    for v in range(n):
        mask = 0
        row = dist[v]
        for u in range(n):
            if row[u] <= limit:
                mask |= 1 << u
        masks.append(mask)
    return masks


def brute_force_gamma(g, params):
    """Naive oracle: enumerate subsets by increasing cardinality and return
    the first (hence lexicographically smallest) valid one.

    No pruning beyond the two defining predicates; refuses n > 20.  Exists
    solely to cross-check smarter code.
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise SizeRefusalError(f"brute force is limited to n <= {BRUTE_FORCE_LIMIT}, got n={g.n}")
    if g.n == 0 or not is_connected(g):
        raise InputError("brute_force_gamma requires a nonempty connected graph")
    d, p = params.d, params.p
    dist = distance_matrix(g)
    ball = _ball_masks(dist, d)
    near = _ball_masks(dist, p)
    full = (1 << g.n) - 1
    for k in range(1, g.n + 1):
        for combo in combinations(range(g.n), k):
            mask = 0
            ok = True
            for v in combo:
                if near[v] & mask:
                    ok = False
                    break
                mask |= 1 << v
            if not ok:
                continue
            covered = 0
            for v in combo:
                covered |= ball[v]
            if covered == full:
                return SolveOutcome.value(k, combo)
    return SolveOutcome.infeasible()


def _eccentricities(g):
    if g.m == g.n - 1:
        return tree_eccentricities(g)
    return eccentricities(g)


def _literal_hint_groups(g):
    """Vertex pairs (positive, negative) per variable read from role tags of
    the form literal:+:<i> / literal:-:<i>; empty when roles are absent."""
    plus, minus = {}, {}
    for v, tag in g.roles.items():
        parts = str(tag).split(":")
        if len(parts) == 3 and parts[0] == "literal":
            try:
                idx = int(parts[2])
            except ValueError:
                continue
            if parts[1] == "+":
                plus[idx] = v
            elif parts[1] == "-":
                minus[idx] = v
    keys = sorted(plus)
    if not keys or sorted(minus) != keys:
        return []
    return [(plus[i], minus[i]) for i in keys]


class _Budget:
    __slots__ = ("deadline", "nodes")

    def __init__(self, timeout_ms):
        self.deadline = time.monotonic() + timeout_ms / 1000.0
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            raise SolveTimeout("exact solve exceeded its time budget")


def gamma_exact(g, params, budget=None, timeout_ms=None, use_hint=True):
    """Exact minimum d-distance dominating p-packing via branch and bound.

    Without `budget`, returns the exact optimum with the lexicographically
    smallest witness among the minimum-size sets, or infeasible.  With
    `budget` k, answers the decision "does a valid set of size <= k exist":
    a value outcome carries the first witness found, infeasible certifies no.
    Raises SolveTimeout when the configured deadline passes.
    """
    if g.n == 0 or not is_connected(g):
        raise InputError("gamma_exact requires a nonempty connected graph")
    d, p = params.d, params.p
    if budget is not None and budget < 1:
        return SolveOutcome.infeasible()

    ecc = _eccentricities(g)
    rad = min(ecc)
    if rad <= d:
        witness = next(v for v in range(g.n) if ecc[v] <= d)
        return SolveOutcome.value(1, {witness})
    if p >= 2 * d + 1:
        # A second selected vertex would leave the midpoint of the joining
        # path undominatable, so only radius <= d admits a solution.
        return SolveOutcome.infeasible()

    if timeout_ms is None:
        timeout_ms = default_timeout_ms()
    clock = _Budget(timeout_ms)

    dist = distance_matrix(g)
    ball = _ball_masks(dist, d)
    near = _ball_masks(dist, p)
    wide = _ball_masks(dist, 2 * d)
    full = (1 << g.n) - 1

    if budget is not None and use_hint:
        groups = _literal_hint_groups(g)
        if groups and len(groups) <= 16 and budget == len(groups):
            hit = _try_literal_sets(groups, ball, near, full, budget)
            if hit is not None:
                return SolveOutcome.value(len(hit), hit)

    decision = budget is not None
    # Largest solution size still worth finding; shrinks as better ones appear.
    best_size = budget if decision else g.n
    best_witness = None

    def lower_bound(undominated):
        count = 0
        q = undominated
        while q:
            u = (q & -q).bit_length() - 1
            q &= ~wide[u]
            count += 1
        return count

    # Iterative DFS; each frame is (chosen tuple, dominated, allowed, iterator).
    def candidates_for(dominated, allowed):
        undominated = (~dominated) & full
        u = (undominated & -undominated).bit_length() - 1
        cand = ball[u] & allowed
        while cand:
            low = cand & -cand
            yield low.bit_length() - 1
            cand ^= low

    stack = [((), 0, full, candidates_for(0, full))]
    while stack:
        clock.tick()
        chosen, dominated, allowed, it = stack[-1]
        if len(chosen) + lower_bound((~dominated) & full) > best_size:
            stack.pop()
            continue
        advanced = False
        for c in it:
            new_chosen = chosen + (c,)
            new_dominated = dominated | ball[c]
            if new_dominated == full:
                size = len(new_chosen)
                if size <= best_size:
                    wit = tuple(sorted(new_chosen))
                    if decision:
                        return SolveOutcome.value(size, wit)
                    if size < best_size or best_witness is None or wit < best_witness:
                        best_size = size
                        best_witness = wit
                continue
            if len(new_chosen) + 1 > best_size:
                continue
            new_allowed = allowed & ~near[c]
            stack.append((new_chosen, new_dominated, new_allowed,
                          candidates_for(new_dominated, new_allowed)))
            advanced = True
            break
        if not advanced:
            stack.pop()

    if best_witness is None:
        return SolveOutcome.infeasible()
    return SolveOutcome.value(best_size, best_witness)


def _try_literal_sets(groups, ball, near, full, budget):
    """Scan the 2^k one-literal-per-variable sets for a valid solution.

    This realizes the gadget branching hint: solutions of the hardness
    constructions pick exactly one literal vertex per variable group.  A miss
    proves nothing; callers must fall through to the complete search.
    """
    k = len(groups)
    for bits in range(1 << k):
        chosen = [groups[i][0] if (bits >> i) & 1 == 0 else groups[i][1] for i in range(k)]
        mask = 0
        ok = True
        for v in chosen:
            if near[v] & mask:
                ok = False
                break
            mask |= 1 << v
        if not ok:
            continue
        covered = 0
        for v in chosen:
            covered |= ball[v]
        if covered == full and len(chosen) <= budget:
            return tuple(sorted(chosen))
    return None


def find_d_perfect_code(g, d):
    """A vertex set whose distance-d balls partition V(g), or None.

    Equivalent to a d-distance dominating 2d-packing; the exactly-once
    property of the returned set is re-verified before returning.
    """
    if d < 1:
        raise InputError(f"needs d >= 1, got {d}")
    if g.n == 0 or not is_connected(g):
        raise InputError("find_d_perfect_code requires a nonempty connected graph")
    outcome = gamma_exact(g, Params(d, 2 * d), budget=g.n, use_hint=False)
    if outcome.is_infeasible:
        return None
    code = outcome.witness
    dist = distance_matrix(g)
    for u in range(g.n):
        hits = sum(1 for x in code if dist[x][u] <= d)
        if hits != 1:
            raise InternalInvariantError(
                f"vertex {u} is covered {hits} times by a supposed perfect code"
            )
    return code
