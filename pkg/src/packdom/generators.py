"""Deterministic and seeded graph family generators.

Covers the families the test corpus leans on: paths, stars, spiders, the
extremal star-of-paths trees, three edge-deletion gadget families with their
marked edges, uniform random labeled trees, and exhaustive labeled-tree
enumeration (both via Pruefer sequences).
"""

from __future__ import annotations

import random

from .errors import InputError, SizeRefusalError
from .graph import Graph

ENUMERATION_LIMIT = 8


def make_path(n):
    """Path 0-1-...-(n-1)."""
    if n < 1:
        raise InputError(f"path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n):
    """Cycle 0-1-...-(n-1)-0."""
    if n < 3:
        raise InputError(f"cycle needs n >= 3, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph(n, edges)


def make_star(leaves):
    """Star with center 0 and `leaves` pendant vertices."""
    if leaves < 0:
        raise InputError(f"star needs leaves >= 0, got {leaves}")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def make_spider(legs, leg_length):
    """Spider: center 0 with `legs` disjoint paths of `leg_length` edges."""
    if legs < 1 or leg_length < 1:
        raise InputError("spider needs legs >= 1 and leg_length >= 1")
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(leg_length):
            edges.append((prev, nxt) if prev < nxt else (nxt, prev))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def make_congruent_spider(d, periods):
    """Spider whose leg lengths are d plus whole periods of 2d+1.

    Every pair of leaves then sits at distance congruent to 2d modulo 2d+1.
    `periods` gives one nonnegative period count per leg.
    """
    if d < 1:
        raise InputError(f"needs d >= 1, got {d}")
    periods = list(periods)
    if not periods or any(k < 0 for k in periods):
        raise InputError("periods must be a nonempty sequence of nonnegative ints")
    edges = []
    nxt = 1
    for k in periods:
        length = d + k * (2 * d + 1)
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt) if prev < nxt else (nxt, prev))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def make_extremal_tree(d, s):
    """Star on d*s+1 vertices where every vertex carries s pendant paths of
    d vertices each; total order (d*s+1)^2.

    This family meets the (n - 2*sqrt(n) + d + 1) / d upper bound on the
    minimum d-distance dominating 2-packing with equality.
    """
    if d < 2 or s < 0:
        raise InputError("needs d >= 2 and s >= 0")
    hub_count = d * s + 1
    edges = [(0, i) for i in range(1, hub_count)]
    nxt = hub_count
    for hub in range(hub_count):
        for _ in range(s):
            prev = hub
            for _ in range(d):
                edges.append((prev, nxt) if prev < nxt else (nxt, prev))
                prev = nxt
                nxt += 1
    return Graph(nxt, edges)


def make_increase_gadget(p):
    """Hub u with p pendant 2-paths, 2-path u-m-v, hub v with p pendant
    leaves, plus the marked chord uv.

    Deleting the chord raises the minimum 2-distance dominating 2-packing
    size; with it present a single vertex (u) suffices.  Both hubs have
    degree p+2.  Returns (graph, marked_edges).
    """
    if p < 2:
        raise InputError(f"needs p >= 2, got {p}")
    u, mid, v = 0, 1, 2
    edges = [(u, mid), (mid, v), (u, v)]
    nxt = 3
    for _ in range(p):
        edges.append((u, nxt))
        edges.append((nxt, nxt + 1))
        nxt += 2
    for _ in range(p):
        edges.append((v, nxt))
        nxt += 1
    return Graph(nxt, edges), {"e1": (u, v)}


def make_decrease_gadget(p):
    """Hubs u and v, each with p pendant 2-paths, joined by a 3-path u-a-b-v
    and by the marked chord uv.

    With the chord the minimum 2-distance dominating 2-packing has size
    1+p; deleting it drops the size to 2.  Returns (graph, marked_edges).
    """
    if p < 2:
        raise InputError(f"needs p >= 2, got {p}")
    u, a, b, v = 0, 1, 2, 3
    edges = [(u, a), (a, b), (b, v), (u, v)]
    nxt = 4
    for hub in (u, v):
        for _ in range(p):
            edges.append((hub, nxt))
            edges.append((nxt, nxt + 1))
            nxt += 2
    return Graph(nxt, edges), {"e2": (u, v)}


def make_cycle_gadget(p):
    """Six-cycle v1-w1-v2-w3-v3-w2 with p pendant 2-paths on each vi, and
    the cycle edge w1-v2 marked.

    Every spanning tree of this graph has a strictly smaller minimum
    2-distance dominating 2-packing than the graph itself.  Each vi has
    degree p+2.  Returns (graph, marked_edges).
    """
    if p < 2:
        raise InputError(f"needs p >= 2, got {p}")
    v1, w1, v2, w3, v3, w2 = 0, 1, 2, 3, 4, 5
    edges = [(v1, w1), (w1, v2), (v2, w3), (w3, v3), (v3, w2), (v1, w2)]
    nxt = 6
    for hub in (v1, v2, v3):
        for _ in range(p):
            edges.append((hub, nxt))
            edges.append((nxt, nxt + 1))
            nxt += 2
    return Graph(nxt, edges), {"e": (w1, v2)}


def decode_pruefer(seq, n):
    """Edges of the labeled tree encoded by a Pruefer sequence of length n-2."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        edges.append((leaf, x) if leaf < x else (x, leaf))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1) if leaf < n - 1 else (n - 1, leaf))
    return edges


def random_tree(n, seed):
    """Uniform random labeled tree on n vertices, deterministic in the seed."""
    if n < 1:
        raise InputError(f"needs n >= 1, got {n}")
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(max(0, n - 2))]
    return Graph(n, decode_pruefer(seq, n))


def enumerate_trees(n):
    """Yield every labeled tree on n vertices exactly once (n^(n-2) trees).

    Refuses n beyond the enumeration limit; the sequence order is the
    lexicographic order of Pruefer sequences.
    """
    if n < 1:
        raise InputError(f"needs n >= 1, got {n}")
    if n > ENUMERATION_LIMIT:
        raise SizeRefusalError(
            f"labeled-tree enumeration is limited to n <= {ENUMERATION_LIMIT}, got {n}"
        )
    if n <= 2:
        yield Graph(n, decode_pruefer([], n))
        return
    seq = [0] * (n - 2)
    while True:
        yield Graph(n, decode_pruefer(seq, n))
        i = n - 3
        while i >= 0 and seq[i] == n - 1:
            seq[i] = 0
            i -= 1
        if i < 0:
            return
        seq[i] += 1
