"""Hardness-reduction gadgets: 3-CNF formulas to graphs and back.

Two gadget builders over a formula with k variables and m clauses:

* the satisfiability gadget (bipartite): each variable gets a 4-cycle with
  two pendant tails of length d-1 hanging off the cycle (2d+2 vertices in
  all), the two cycle hubs standing for the positive and negative literal;
  each clause vertex reaches its three literal hubs by paths of length d-1.
* the code gadget: same skeleton plus the hub-hub edge, with clause paths
  lengthened to d.

Truth assignments and hub sets translate into each other; brute-force SAT
and 1-in-3 oracles stay independent of all graph code; `verify_reduction`
compares the gadget decision against the matching oracle end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, ParseError, SizeRefusalError, SolveTimeout
from .exact import Params, find_d_perfect_code, gamma_exact, is_d_dominating, is_p_packing
from .graph import Graph, connected_components

SAT_ENUMERATION_LIMIT = 24


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF with exactly three distinct variables per clause.

    Clauses hold DIMACS-style signed literals (+i / -i, 1-based), sorted by
    variable index.
    """

    k: int
    clauses: tuple

    def __post_init__(self):
        for clause in self.clauses:
            if len(clause) != 3:
                raise InputError(f"clause {clause} must have exactly 3 literals")
            variables = {abs(lit) for lit in clause}
            if len(variables) != 3:
                raise InputError(f"clause {clause} repeats a variable")
            for lit in clause:
                if lit == 0 or not (1 <= abs(lit) <= self.k):
                    raise InputError(f"literal {lit} out of range for k={self.k}")

    @property
    def m(self):
        return len(self.clauses)

    def satisfied_by(self, assignment):
        """assignment[i-1] is the truth value of variable i."""
        return all(
            any((lit > 0) == assignment[abs(lit) - 1] for lit in clause)
            for clause in self.clauses
        )

    def one_in_three_satisfied_by(self, assignment):
        return all(
            sum((lit > 0) == assignment[abs(lit) - 1] for lit in clause) == 1
            for clause in self.clauses
        )


def parse_dimacs(text):
    """Parse DIMACS CNF; every clause must have three distinct variables."""
    k = None
    m = None
    clauses = []
    current = []
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("header must be 'p cnf <vars> <clauses>'", line=lineno)
            if k is not None:
                raise ParseError("duplicate header", line=lineno)
            try:
                k, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("header counts must be integers", line=lineno)
            header_line = lineno
            continue
        if k is None:
            raise ParseError("clause before header", line=lineno)
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"bad literal {token!r}", line=lineno)
            if lit == 0:
                if len(current) != 3:
                    raise ParseError(
                        f"clause has {len(current)} literals, need exactly 3", line=lineno
                    )
                if len({abs(x) for x in current}) != 3:
                    raise ParseError("clause repeats a variable", line=lineno)
                for x in current:
                    if not (1 <= abs(x) <= k):
                        raise ParseError(f"literal {x} out of range", line=lineno)
                clauses.append(tuple(sorted(current, key=abs)))
                current = []
            else:
                current.append(lit)
    if k is None:
        raise ParseError("missing 'p cnf' header", line=1)
    if current:
        raise ParseError("unterminated clause at end of input", line=len(text.splitlines()))
    if m is not None and len(clauses) != m:
        raise ParseError(
            f"header announced {m} clauses but {len(clauses)} were given", line=header_line
        )
    return CnfFormula(k=k, clauses=tuple(clauses))


@dataclass(frozen=True)
class GadgetGraph:
    """A gadget graph plus the maps tying vertices back to the formula."""

    graph: Graph
    variant: str            # "sat" or "code"
    d: int
    formula: CnfFormula
    literal_plus: tuple     # variable i (1-based) -> vertex, at index i-1
    literal_minus: tuple
    clause_vertex: tuple    # clause j (0-based) -> vertex
    gadget_sets: tuple      # variable i -> frozenset of its 2d+2 vertices
    path_internals: dict    # (var, clause_idx, sign) -> tuple of path vertices

    def literal_vertex(self, lit):
        return self.literal_plus[abs(lit) - 1] if lit > 0 else self.literal_minus[abs(lit) - 1]


def _build_gadget(formula, d, variant):
    if d < 2:
        raise InputError(f"needs d >= 2, got {d}")
    k, clauses = formula.k, formula.clauses
    edges = []
    roles = {}
    plus, minus = [], []
    gadget_sets = []
    nxt = 0
    for i in range(1, k + 1):
        xp = nxt
        xm = nxt + 1
        ys = list(range(nxt + 2, nxt + 2 + d))
        zs = list(range(nxt + 2 + d, nxt + 2 + 2 * d))
        nxt += 2 * d + 2
        plus.append(xp)
        minus.append(xm)
        roles[xp] = f"literal:+:{i}"
        roles[xm] = f"literal:-:{i}"
        for tpos, y in enumerate(ys, start=1):
            roles[y] = f"chain:y:{i}:{tpos}"
        for tpos, z in enumerate(zs, start=1):
            roles[z] = f"chain:z:{i}:{tpos}"
        chain = [xp] + ys
        edges.extend((min(a, b), max(a, b)) for a, b in zip(chain, chain[1:]))
        chain = [xm] + zs
        edges.extend((min(a, b), max(a, b)) for a, b in zip(chain, chain[1:]))
        edges.append((min(xp, zs[0]), max(xp, zs[0])))
        edges.append((min(xm, ys[0]), max(xm, ys[0])))
        if variant == "code":
            edges.append((xp, xm))
        gadget_sets.append(frozenset([xp, xm] + ys + zs))

    clause_vertices = []
    for j in range(len(clauses)):
        roles[nxt] = f"clause:{j + 1}"
        clause_vertices.append(nxt)
        nxt += 1

    internals_per_path = d - 2 if variant == "sat" else d - 1
    path_internals = {}
    for j, clause in enumerate(clauses):
        for lit in clause:
            i = abs(lit)
            sign = "+" if lit > 0 else "-"
            endpoint = plus[i - 1] if lit > 0 else minus[i - 1]
            inner = list(range(nxt, nxt + internals_per_path))
            for tpos, v in enumerate(inner, start=1):
                roles[v] = f"path:{sign}:{i}:{j + 1}:{tpos}"
            nxt += internals_per_path
            chain = [endpoint] + inner + [clause_vertices[j]]
            edges.extend((min(a, b), max(a, b)) for a, b in zip(chain, chain[1:]))
            path_internals[(i, j, sign)] = tuple(inner)

    graph = Graph(nxt, edges, roles=roles)
    return GadgetGraph(
        graph=graph,
        variant=variant,
        d=d,
        formula=formula,
        literal_plus=tuple(plus),
        literal_minus=tuple(minus),
        clause_vertex=tuple(clause_vertices),
        gadget_sets=tuple(gadget_sets),
        path_internals=path_internals,
    )


def build_sat_gadget(formula, d):
    """Bipartite gadget whose d-distance p-packing decision at budget k
    tracks satisfiability (p <= 2d-3) or 1-in-3 satisfiability
    (p in {2d-2, 2d-1}).  Order: k(2d+2) + m + 3m(d-2)."""
    return _build_gadget(formula, d, "sat")


def build_code_gadget(formula, d):
    """Gadget whose d-perfect codes (equivalently 2d-packing decisions at
    budget k) track 1-in-3 satisfiability.  Order: k(2d+2) + m + 3m(d-1)."""
    return _build_gadget(formula, d, "code")


def assignment_to_set(gadget, assignment):
    """The literal-vertex set picked by a total truth assignment."""
    k = gadget.formula.k
    if len(assignment) != k:
        raise InputError(f"assignment must cover all {k} variables")
    return frozenset(
        gadget.literal_plus[i] if assignment[i] else gadget.literal_minus[i]
        for i in range(k)
    )


def set_to_assignment(gadget, vertices):
    """Decode a vertex set containing exactly one literal hub per variable."""
    vertices = frozenset(vertices)
    k = gadget.formula.k
    assignment = []
    for i in range(k):
        has_plus = gadget.literal_plus[i] in vertices
        has_minus = gadget.literal_minus[i] in vertices
        if has_plus == has_minus:
            raise InputError(
                f"variable {i + 1}: need exactly one of its literal vertices, "
                f"got plus={has_plus}, minus={has_minus}"
            )
        assignment.append(has_plus)
    extras = vertices - set(gadget.literal_plus) - set(gadget.literal_minus)
    if extras:
        raise InputError(f"set contains non-literal vertices {sorted(extras)}")
    return tuple(assignment)


def _enumerate_assignments(k):
    for bits in range(1 << k):
        yield tuple(bool((bits >> i) & 1) for i in range(k))


def sat_oracle(formula):
    """Exhaustive satisfiability check; a witness assignment or None."""
    if formula.k > SAT_ENUMERATION_LIMIT:
        raise SizeRefusalError(f"enumeration limited to k <= {SAT_ENUMERATION_LIMIT}")
    for assignment in _enumerate_assignments(formula.k):
        if formula.satisfied_by(assignment):
            return assignment
    return None


def one_in_three_oracle(formula):
    """Exhaustive exactly-one-literal-per-clause check; witness or None."""
    if formula.k > SAT_ENUMERATION_LIMIT:
        raise SizeRefusalError(f"enumeration limited to k <= {SAT_ENUMERATION_LIMIT}")
    for assignment in _enumerate_assignments(formula.k):
        if formula.one_in_three_satisfied_by(assignment):
            return assignment
    return None


def regime_for(d, p):
    """Which oracle the (d, p) decision on the right gadget must match."""
    if d < 2:
        raise InputError(f"needs d >= 2, got {d}")
    if p < 0 or p > 2 * d:
        raise InputError(f"needs 0 <= p <= 2d, got p={p}")
    if p <= 2 * d - 3:
        return "sat"
    if p in (2 * d - 2, 2 * d - 1):
        return "one-in-three"
    return "perfect-code"


def decide_gadget(gadget, params, k, timeout_ms=None):
    """Decision "a valid set of size <= k exists" on a gadget graph.

    Gadgets of formulas with unused variables are disconnected; packing
    constraints never bind across components and domination is per
    component, so the minimum is the sum of component minima.  Small
    components (lone variable gadgets) are solved outright, the largest
    gets the leftover budget.  Returns a SolveOutcome in decision semantics.
    """
    comps = connected_components(gadget.graph)
    if len(comps) == 1:
        return gamma_exact(gadget.graph, params, budget=k, timeout_ms=timeout_ms)
    comps = sorted(comps, key=len)
    witness = set()
    spent = 0
    for comp in comps[:-1]:
        sub, ids = gadget.graph.subgraph(comp)
        outcome = gamma_exact(sub, params, timeout_ms=timeout_ms)
        if outcome.is_infeasible:
            return SolveOutcome.infeasible()
        spent += outcome.gamma
        witness.update(ids[v] for v in outcome.witness)
    if spent >= k:
        return SolveOutcome.infeasible()
    sub, ids = gadget.graph.subgraph(comps[-1])
    outcome = gamma_exact(sub, params, budget=k - spent, timeout_ms=timeout_ms)
    if outcome.is_infeasible:
        return SolveOutcome.infeasible()
    witness.update(ids[v] for v in outcome.witness)
    return SolveOutcome.value(len(witness), witness)


def gadget_perfect_code(gadget, d):
    """d-perfect code of a gadget graph (component-wise), or None."""
    code = set()
    for comp in connected_components(gadget.graph):
        sub, ids = gadget.graph.subgraph(comp)
        part = find_d_perfect_code(sub, d)
        if part is None:
            return None
        code.update(ids[v] for v in part)
    return frozenset(code)


def verify_reduction(formula, d, p, timeout_ms=None):
    """End-to-end check of one gadget equivalence.

    Builds the gadget matching (d, p), solves the decision "minimum size
    <= k" with k the variable count, runs the matching brute-force oracle,
    and reports agreement with certificates in both directions.  A solver
    timeout yields an inconclusive report, distinct from disagreement.
    """
    regime = regime_for(d, p)
    if regime == "perfect-code":
        gadget = build_code_gadget(formula, d)
    else:
        gadget = build_sat_gadget(formula, d)
    oracle = sat_oracle if regime == "sat" else one_in_three_oracle
    oracle_witness = oracle(formula)
    oracle_yes = oracle_witness is not None

    k = formula.k
    report = {
        "regime": regime,
        "d": d,
        "p": p,
        "k": k,
        "clauses": formula.m,
        "gadgetOrder": gadget.graph.n,
        "oracleYes": oracle_yes,
        "status": "ok",
    }

    try:
        outcome = decide_gadget(gadget, Params(d, p), k, timeout_ms=timeout_ms)
    except SolveTimeout:
        report["status"] = "inconclusive"
        report["reason"] = "solver timeout"
        return report
    solver_yes = not outcome.is_infeasible
    report["solverYes"] = solver_yes
    report["agree"] = solver_yes == oracle_yes

    if oracle_yes:
        encoded = assignment_to_set(gadget, oracle_witness)
        report["assignmentEncodes"] = bool(
            is_d_dominating(gadget.graph, encoded, d)
            and is_p_packing(gadget.graph, encoded, p)
            and len(encoded) == k
        )
    if solver_yes:
        try:
            decoded = set_to_assignment(gadget, outcome.witness)
            valid = (
                formula.satisfied_by(decoded)
                if regime == "sat"
                else formula.one_in_three_satisfied_by(decoded)
            )
            report["witnessDecodes"] = bool(valid)
        except InputError as exc:
            report["witnessDecodes"] = False
            report["decodeError"] = str(exc)

    if regime == "perfect-code":
        try:
            code = gadget_perfect_code(gadget, d)
        except SolveTimeout:
            report["status"] = "inconclusive"
            report["reason"] = "perfect-code search timeout"
            return report
        report["perfectCodeExists"] = code is not None
        report["codeAgrees"] = (code is not None) == oracle_yes
        report["agree"] = report["agree"] and report["codeAgrees"]
    return report
