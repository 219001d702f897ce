"""Closed-form bounds, family membership predicates, and equality audits.

All comparison paths are exact: rational bounds are `fractions.Fraction`
values, and bounds of the shape (n - 2*sqrt(n) + c) / q are compared against
integers through an equivalent squared form, never through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .exact import Params
from .graph import bfs_distances, is_tree, leaves_and_supports, structural_stats
from .treedp import gamma_tree


@dataclass(frozen=True)
class SqrtBound:
    """The quantity (n - 2*sqrt(n) + add) / div with exact comparisons.

    `holds_for(gamma)` decides gamma <= bound in integer arithmetic:
    gamma <= (n - 2*sqrt(n) + add) / div  iff  r := n + add - div*gamma
    satisfies r >= 0 and r*r >= 4n.
    """

    n: int
    add: int
    div: int

    def holds_for(self, gamma):
        r = self.n + self.add - self.div * gamma
        return r >= 0 and r * r >= 4 * self.n

    def exceeded_by(self, gamma):
        return not self.holds_for(gamma)

    def __float__(self):
        return (self.n - 2.0 * math.sqrt(self.n) + self.add) / self.div

    def exact_value(self):
        """Exact Fraction when n is a perfect square, else None."""
        r = math.isqrt(self.n)
        if r * r == self.n:
            return Fraction(self.n - 2 * r + self.add, self.div)
        return None

    def to_json_dict(self):
        exact = self.exact_value()
        return {
            "form": "(n - 2*sqrt(n) + add) / div",
            "n": self.n,
            "add": self.add,
            "div": self.div,
            "approx": float(self),
            "exact": None if exact is None else str(exact),
        }


def distance_domination_lower_bound(n, leaves, d):
    """(n - d*leaves + 2d) / (2d+1): lower bound on the minimum d-distance
    dominating set of a tree; may be <= 0, callers clamp for reporting."""
    if d < 1:
        raise InputError(f"needs d >= 1, got {d}")
    if n < 1 or leaves < 0:
        raise InputError("needs n >= 1 and leaves >= 0")
    return Fraction(n - d * leaves + 2 * d, 2 * d + 1)


def support_lower_bound(n, leaves, supports):
    """(n - leaves - supports + 4) / 5: lower bound on the minimum 2-distance
    dominating set of a tree, refining the leaf-only bound via supports."""
    return Fraction(n - leaves - supports + 4, 5)


def two_packing_bracket(n, leaves, supports):
    """Integer bracket for the minimum 2-distance dominating 2-packing of a
    tree on n >= 2 vertices: (ceil((n-l-s+4)/5), floor((n+3s-1)/5))."""
    if n < 2:
        raise InputError(f"needs n >= 2, got {n}")
    lo = -((-(n - leaves - supports + 4)) // 5)
    hi = (n + 3 * supports - 1) // 5
    return lo, hi


def sqrt_upper_bound(n, d):
    """(n - 2*sqrt(n) + d + 1) / d: upper bound on the minimum d-distance
    dominating 2-packing of a tree, for d >= 2."""
    if d < 2:
        raise InputError(f"needs d >= 2, got {d}")
    if n < 1:
        raise InputError(f"needs n >= 1, got {n}")
    return SqrtBound(n=n, add=d + 1, div=d)


def henning_upper_bound(n):
    """Henning's (n + 3 - 2*sqrt(n)) / 2 upper bound for the minimum
    2-distance dominating 2-packing of a tree on n >= 3 vertices."""
    if n < 3:
        raise InputError(f"needs n >= 3, got {n}")
    return SqrtBound(n=n, add=3, div=2)


def tighter_upper_bound(n, supports):
    """Which of the floor bracket bound and Henning's bound is smaller.

    Returns "bracket" when floor((n+3s-1)/5) is strictly below Henning's
    value, else "henning".  Decided exactly: F < (n+3-2*sqrt(n))/2 iff
    r := n + 3 - 2F satisfies r > 0 and r*r > 4n.
    """
    if n < 3:
        raise InputError(f"needs n >= 3, got {n}")
    floor_bound = (n + 3 * supports - 1) // 5
    r = n + 3 - 2 * floor_bound
    if r > 0 and r * r > 4 * n:
        return "bracket"
    return "henning"


def has_modular_leaf_distances(t, d):
    """True iff every pair of distinct leaves of the tree is at distance
    congruent to 2d modulo 2d+1 (vacuously true with fewer than two leaves)."""
    if not is_tree(t):
        raise InputError("requires a tree")
    if d < 1:
        raise InputError(f"needs d >= 1, got {d}")
    leaves, _ = leaves_and_supports(t)
    period = 2 * d + 1
    want = 2 * d
    for i, u in enumerate(leaves):
        dist = bfs_distances(t, u)
        for v in leaves[i + 1:]:
            if dist[v] % period != want:
                return False
    return True


def is_star(t):
    """K_{1,k} with k >= 2: one center adjacent to all other vertices."""
    if t.n < 3:
        return False
    return any(t.degree(v) == t.n - 1 for v in range(t.n)) and t.m == t.n - 1


def has_modular_support_distances(t):
    """True iff the tree's support vertices are pairwise at distance 2 mod 5,
    excluding stars K_{1,k} (k >= 2); the one-vertex tree qualifies."""
    if not is_tree(t):
        raise InputError("requires a tree")
    if t.n == 1:
        return True
    if is_star(t):
        return False
    _, supports = leaves_and_supports(t)
    for i, u in enumerate(supports):
        dist = bfs_distances(t, u)
        for v in supports[i + 1:]:
            if dist[v] % 5 != 2:
                return False
    return True


@dataclass
class BoundsReport:
    """Bounds, exact values, memberships, and equality flags for one tree."""

    d: int
    stats: object
    lower: dict = field(default_factory=dict)
    upper: dict = field(default_factory=dict)
    exact: dict = field(default_factory=dict)
    memberships: dict = field(default_factory=dict)
    equality: dict = field(default_factory=dict)
    contradictions: list = field(default_factory=list)
    consistent: bool = True

    def to_json_dict(self):
        def enc(value):
            if isinstance(value, Fraction):
                return {"fraction": str(value), "approx": float(value)}
            if isinstance(value, SqrtBound):
                return value.to_json_dict()
            return value

        return {
            "d": self.d,
            "stats": {
                "n": self.stats.n,
                "leaves": self.stats.leaves,
                "supports": self.stats.supports,
                "radius": _enc_ecc(self.stats.radius),
                "diameter": _enc_ecc(self.stats.diameter),
            },
            "lower": {k: enc(v) for k, v in self.lower.items()},
            "upper": {k: enc(v) for k, v in self.upper.items()},
            "exact": dict(self.exact),
            "memberships": dict(self.memberships),
            "equality": dict(self.equality),
            "contradictions": list(self.contradictions),
            "consistent": self.consistent,
        }


def _enc_ecc(value):
    return None if value == float("inf") else value


def clamp_bound(value):
    """Report floor: any bound <= 0 is clamped to 1 (a nonempty set always
    has at least one vertex)."""
    return max(value, 1)


def equality_audit(t, d=2):
    """Exact check of the two equality characterizations on one tree.

    Verifies 5*gamma(2,0) == n-l-s+4 exactly in integers against the
    support-congruence family, and (2d+1)*gamma(d,0) == n-d*l+2d against the
    leaf-congruence family; any biconditional failure lands in
    `contradictions`.
    """
    if not is_tree(t):
        raise InputError("equality_audit requires a tree")
    stats = structural_stats(t)
    report = BoundsReport(d=d, stats=stats)
    n, leaves, supports = stats.n, stats.leaves, stats.supports

    g2 = gamma_tree(t, Params(2, 0)).gamma
    report.exact["gamma_2_0"] = g2
    report.lower["support"] = support_lower_bound(n, leaves, supports)
    support_equal = 5 * g2 == n - leaves - supports + 4
    in_support_family = has_modular_support_distances(t)
    report.equality["support_bound"] = support_equal
    report.memberships["modular_support_family"] = in_support_family
    if support_equal != in_support_family:
        report.contradictions.append(
            f"support-bound equality is {support_equal} but family membership is {in_support_family}"
        )

    gd = gamma_tree(t, Params(d, 0)).gamma
    report.exact[f"gamma_{d}_0"] = gd
    report.lower["distance_domination"] = distance_domination_lower_bound(n, leaves, d)
    leaf_equal = (2 * d + 1) * gd == n - d * leaves + 2 * d
    in_leaf_family = has_modular_leaf_distances(t, d)
    report.equality["distance_domination_bound"] = leaf_equal
    report.memberships["modular_leaf_family"] = in_leaf_family
    if leaf_equal != in_leaf_family:
        report.contradictions.append(
            f"leaf-bound equality is {leaf_equal} but family membership is {in_leaf_family}"
        )

    report.consistent = not report.contradictions
    return report


def bounds_report(t, d=2):
    """Full report: every applicable bound, exact values, memberships, and
    bracket/equality flags for a tree."""
    if not is_tree(t):
        raise InputError("bounds_report requires a tree")
    if d < 1:
        raise InputError(f"needs d >= 1, got {d}")
    stats = structural_stats(t)
    n, leaves, supports = stats.n, stats.leaves, stats.supports
    report = equality_audit(t, d=d)

    if n >= 2:
        lo, hi = two_packing_bracket(n, leaves, supports)
        report.lower["two_packing_bracket_low"] = clamp_bound(lo)
        report.upper["two_packing_bracket_high"] = hi
        g22 = gamma_tree(t, Params(2, 2)).gamma
        report.exact["gamma_2_2"] = g22
        report.equality["two_packing_bracket_sharp"] = g22 == hi
        if not (clamp_bound(lo) <= g22 <= hi):
            report.contradictions.append("two-packing bracket violated")
    if n >= 3:
        report.upper["henning"] = henning_upper_bound(n)
        report.equality["tighter_upper_bound"] = tighter_upper_bound(n, supports)
    if d >= 2:
        bound = sqrt_upper_bound(n, d)
        report.upper["sqrt_packing"] = bound
        gd2 = gamma_tree(t, Params(d, 2)).gamma
        report.exact[f"gamma_{d}_2"] = gd2
        report.equality["sqrt_packing_holds"] = bound.holds_for(gd2)
        if not bound.holds_for(gd2):
            report.contradictions.append("sqrt packing bound violated")

    report.consistent = not report.contradictions
    return report


def sqrt_bound_probe(t, d, p):
    """Probe whether gamma(d, p) <= (n - 2*sqrt(n) + d + 1)/d on one tree.

    Requires 3 <= p <= d.  A violation is reported, never asserted away:
    the inequality is conjectural in this parameter range.
    """
    if not (3 <= p <= d):
        raise InputError(f"needs 3 <= p <= d, got p={p}, d={d}")
    if not is_tree(t):
        raise InputError("requires a tree")
    outcome = gamma_tree(t, Params(d, p))
    bound = sqrt_upper_bound(t.n, d)
    gamma = outcome.gamma
    holds = gamma is not None and bound.holds_for(gamma)
    return {
        "n": t.n,
        "d": d,
        "p": p,
        "gamma": gamma,
        "bound": bound.to_json_dict(),
        "holds": holds,
        "witness": None if outcome.witness is None else sorted(outcome.witness),
    }
