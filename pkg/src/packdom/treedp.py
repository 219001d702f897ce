"""Exact minimization on trees via bottom-up dynamic programming.

The DP runs over the tree rooted at vertex 0.  A subtree state tracks

  a: the exact distance from the subtree root to the nearest selected vertex
     inside the subtree, capped at max(d, p) + 1 (the cap meaning "none close
     enough to matter"), and
  b: the depth of the deepest subtree vertex not yet covered by a selected
     vertex inside the subtree, or -1 when everything is covered.

States with b >= d are dead: such a vertex can no longer be covered from
outside the subtree.  Merging a child through the parent edge rejects any
pair of selected vertices at distance <= p and discharges uncovered vertices
that the other side now covers.  Runtime is O(n * poly(d, p)) with state
tables of size (max(d,p)+2) * (d+1).
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .errors import InputError, InternalInvariantError
from .exact import Params, SolveOutcome
from .graph import is_tree, tree_eccentricities

_INFCOST = 1 << 30


@lru_cache(maxsize=None)
def _tables(d, p):
    """Merge transition table for the (d, p) state space.

    Returns (n_states, trans, sel_state, unsel_state, accept_step) where
    trans[s1][s2] is the merged state id (or -1 when the merge violates the
    packing separation or leaves a vertex permanently uncoverable), s1 is
    the accumulating parent-side state, and s2 the child's root state.
    """
    cap = max(d, p) + 1
    b_size = d + 1  # encodes b in -1..d-1 as b+1
    n_states = (cap + 1) * b_size

    def encode(a, b):
        return a * b_size + (b + 1)

    trans = []
    for s1 in range(n_states):
        a1, b1 = divmod(s1, b_size)
        b1 -= 1
        row = []
        for s2 in range(n_states):
            a2, b2 = divmod(s2, b_size)
            b2 -= 1
            if a1 + a2 + 1 <= p:
                row.append(-1)
                continue
            new_a = min(a1, a2 + 1, cap)
            new_b = -1
            if b1 >= 0 and a2 + 1 + b1 > d:
                new_b = b1
            if b2 >= 0 and a1 + b2 + 1 > d:
                new_b = max(new_b, b2 + 1)
            if new_b > d - 1:
                row.append(-1)
                continue
            row.append(encode(new_a, new_b))
        trans.append(tuple(row))
    sel_state = encode(0, -1)
    unsel_state = encode(cap, 0) if d >= 1 else None
    return n_states, tuple(trans), sel_state, unsel_state


def _rooted(t):
    """BFS orientation from root 0: (order, children lists in sorted order)."""
    parent = [-1] * t.n
    parent[0] = 0
    order = [0]
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in t.adj[u]:
            if parent[v] == -1:
                parent[v] = u
                order.append(v)
                queue.append(v)
    children = [[] for _ in range(t.n)]
    for v in order[1:]:
        children[parent[v]].append(v)
    return order, children


def _merge(t1, t2, trans, n_states):
    out = [_INFCOST] * n_states
    for s1 in range(n_states):
        c1 = t1[s1]
        if c1 >= _INFCOST:
            continue
        row = trans[s1]
        for s2 in range(n_states):
            c2 = t2[s2]
            if c2 >= _INFCOST:
                continue
            s = row[s2]
            if s >= 0:
                c = c1 + c2
                if c < out[s]:
                    out[s] = c
    return out


def gamma_tree(t, params):
    """Exact minimum d-distance dominating p-packing of a tree, with witness.

    For radius <= d the answer is a single center vertex; for p >= 2d+1 with
    larger radius no set exists.  Otherwise the DP value is exact and the
    witness is reconstructed deterministically (fixed state-order tie-breaks).
    """
    if not is_tree(t):
        raise InputError("gamma_tree requires a tree")
    d, p = params.d, params.p
    if t.n == 1:
        return SolveOutcome.value(1, {0})
    ecc = tree_eccentricities(t)
    rad = min(ecc)
    if rad <= d:
        witness = next(v for v in range(t.n) if ecc[v] <= d)
        return SolveOutcome.value(1, {witness})
    if p >= 2 * d + 1:
        # Two selected vertices would sit at distance >= 2d+2 and the middle
        # of their joining path could not be covered, so no set exists.
        return SolveOutcome.infeasible()

    n_states, trans, sel_state, unsel_state = _tables(d, p)
    base = [_INFCOST] * n_states
    base[sel_state] = 1
    if unsel_state is not None:
        base[unsel_state] = 0

    order, children = _rooted(t)
    tables = [None] * t.n
    for v in reversed(order):
        tab = list(base)
        for c in children[v]:
            tab = _merge(tab, tables[c], trans, n_states)
        tables[v] = tab

    b_size = d + 1
    root_tab = tables[0]
    best_cost = _INFCOST
    best_state = -1
    for a in range(n_states // b_size):
        s = a * b_size  # b == -1
        if root_tab[s] < best_cost:
            best_cost = root_tab[s]
            best_state = s
    if best_state < 0 or best_cost >= _INFCOST:
        return SolveOutcome.infeasible()

    witness = _reconstruct(
        t, tables, children, trans, n_states, base, sel_state, unsel_state,
        best_state, best_cost,
    )
    if len(witness) != best_cost:
        raise InternalInvariantError("witness size disagrees with DP value")
    return SolveOutcome.value(best_cost, witness)


def _reconstruct(t, tables, children, trans, n_states, base, sel_state,
                 unsel_state, root_state, root_cost):
    """Walk winning states top-down, re-deriving each vertex's merge chain.

    Ties are broken by smallest (parent state, child state) pair, which makes
    the reported witness a deterministic function of the input tree.
    """
    witness = []
    stack = [(0, root_state, root_cost)]
    while stack:
        v, state, cost = stack.pop()
        kids = children[v]
        acc = [list(base)]
        for c in kids:
            acc.append(_merge(acc[-1], tables[c], trans, n_states))
        if acc[-1][state] != cost:
            raise InternalInvariantError("reconstruction target not reproducible")
        cur_state, cur_cost = state, cost
        for j in range(len(kids) - 1, -1, -1):
            prev_tab = acc[j]
            child_tab = tables[kids[j]]
            found = None
            for s_prev in range(n_states):
                cp = prev_tab[s_prev]
                if cp >= _INFCOST or cp > cur_cost:
                    continue
                row = trans[s_prev]
                for s_child in range(n_states):
                    cc = child_tab[s_child]
                    if cc >= _INFCOST:
                        continue
                    if row[s_child] == cur_state and cp + cc == cur_cost:
                        found = (s_prev, s_child, cp, cc)
                        break
                if found:
                    break
            if found is None:
                raise InternalInvariantError("no merge decomposition found")
            s_prev, s_child, cp, cc = found
            stack.append((kids[j], s_child, cc))
            cur_state, cur_cost = s_prev, cp
        if cur_state == sel_state and cur_cost == 1:
            witness.append(v)
        elif not (cur_state == unsel_state and cur_cost == 0):
            raise InternalInvariantError("leaf state is neither selected nor unselected")
    return frozenset(witness)


def min_distance_dominating_tree(t, d):
    """Minimum d-distance dominating set of a tree (packing unconstrained)."""
    return gamma_tree(t, Params(d, 0))
