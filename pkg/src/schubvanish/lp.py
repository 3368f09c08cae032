"""Exact rational linear feasibility.

Phase-1 simplex over :class:`fractions.Fraction` with Bland's rule, which
returns basic feasible solutions (vertices) directly.  Also here: moving an
arbitrary feasible point to a vertex of the same polyhedron, and an integer
max-flow used for the large network-shaped instances.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional, TextIO

SENSES = ("<=", "=", ">=")


class IntegralityViolation(AssertionError):
    """A vertex that should be integral (total unimodularity) is not."""


@dataclass
class Row:
    coeffs: dict
    sense: str
    rhs: Fraction
    tag: Hashable = None

    def value(self, point: Mapping) -> Fraction:
        return sum((c * point[v] for v, c in self.coeffs.items()), Fraction(0))

    def satisfied(self, point: Mapping) -> bool:
        lhs = self.value(point)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs

    def active(self, point: Mapping) -> bool:
        return self.value(point) == self.rhs


@dataclass
class LPInstance:
    """Halfspace system ``{x : a_k . x (sense_k) b_k}`` over named variables.

    Variables are free unless a row bounds them.
    """

    variables: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    def __post_init__(self):
        self._index = {v: k for k, v in enumerate(self.variables)}
        if len(self._index) != len(self.variables):
            raise ValueError("duplicate variable names")

    def add_variable(self, name: Hashable) -> None:
        if name in self._index:
            raise ValueError(f"variable {name!r} already declared")
        self._index[name] = len(self.variables)
        self.variables.append(name)

    def add_row(self, coeffs: Mapping, sense: str, rhs, tag: Hashable = None) -> None:
        if sense not in SENSES:
            raise ValueError(f"bad sense {sense!r}")
        clean = {}
        for v, c in coeffs.items():
            if v not in self._index:
                raise KeyError(f"undeclared variable {v!r}")
            c = Fraction(c)
            if c:
                clean[v] = clean.get(v, 0) + c
        self.rows.append(Row(clean, sense, Fraction(rhs), tag))

    def check(self, point: Mapping) -> bool:
        return all(row.satisfied(point) for row in self.rows)

    def violated_rows(self, point: Mapping) -> list:
        return [row for row in self.rows if not row.satisfied(point)]


@dataclass
class FeasibilityResult:
    feasible: bool
    point: Optional[dict] = None
    is_vertex: bool = False
    pivots: int = 0

    def __bool__(self):
        return self.feasible


# -- simplex -----------------------------------------------------------------

def _dump(tableau, basis, out: TextIO, label: str) -> None:
    out.write(f"-- {label}; basis={basis}\n")
    for row in tableau:
        out.write(" ".join(f"{str(v):>6}" for v in row) + "\n")


def _pivot(tableau: list, p: int, q: int) -> None:
    prow = tableau[p]
    piv = prow[q]
    if piv != 1:
        inv = 1 / piv
        for j in range(len(prow)):
            if prow[j]:
                prow[j] *= inv
    nz = [j for j, v in enumerate(prow) if v]
    for r, row in enumerate(tableau):
        if r == p:
            continue
        f = row[q]
        if f:
            for j in nz:
                row[j] -= f * prow[j]


def _bounds(instance: LPInstance):
    """Split single-variable rows off as bounds; returns None if they clash."""
    lo: dict = {}
    hi: dict = {}
    general = []
    for row in instance.rows:
        if len(row.coeffs) == 0:
            if not row.satisfied({}):
                return None
            continue
        if len(row.coeffs) > 1:
            general.append(row)
            continue
        (v, a), = row.coeffs.items()
        bound = row.rhs / a
        sense = row.sense
        if a < 0 and sense != "=":
            sense = "<=" if sense == ">=" else ">="
        if sense in ("<=", "="):
            hi[v] = bound if v not in hi else min(hi[v], bound)
        if sense in (">=", "="):
            lo[v] = bound if v not in lo else max(lo[v], bound)
    for v in lo:
        if v in hi and lo[v] > hi[v]:
            return None
    return lo, hi, general


def solve_feasibility(instance: LPInstance, trace: Optional[TextIO] = None) -> FeasibilityResult:
    """Decide ``{x : rows}`` nonempty; on success return a vertex.

    Bland's rule (lowest-index entering column, lowest-index leaving basic
    variable on ratio ties) guarantees termination on degenerate instances.
    """
    split = _bounds(instance)
    if split is None:
        return FeasibilityResult(False)
    lo, hi, general = split

    # x_v = offset_v + sign_v * y_col  (free variables use two columns)
    columns: list = []
    subst: dict = {}
    upper_rows = []
    for v in instance.variables:
        if v in lo:
            k = len(columns)
            columns.append(v)
            subst[v] = (lo[v], [(k, 1)])
            if v in hi:
                upper_rows.append(({k: Fraction(1)}, "<=", hi[v] - lo[v]))
        elif v in hi:
            k = len(columns)
            columns.append(v)
            subst[v] = (hi[v], [(k, -1)])
        else:
            k = len(columns)
            columns.extend([v, v])
            subst[v] = (Fraction(0), [(k, 1), (k + 1, -1)])

    rows = []
    for row in general:
        coeffs: dict = {}
        rhs = row.rhs
        for v, a in row.coeffs.items():
            off, parts = subst[v]
            rhs -= a * off
            for k, s in parts:
                coeffs[k] = coeffs.get(k, 0) + a * s
        rows.append((coeffs, row.sense, rhs))
    rows.extend(upper_rows)

    ny = len(columns)
    m = len(rows)
    # column layout: y | slack/surplus | artificial | rhs
    n_slack = sum(1 for _, s, _ in rows if s != "=")
    art_start = ny + n_slack
    tableau = []
    basis = []
    slack_k = ny
    art_cols = []
    for coeffs, sense, rhs in rows:
        if rhs < 0 or (rhs == 0 and sense == ">="):
            coeffs = {k: -a for k, a in coeffs.items()}
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        line = {k: a for k, a in coeffs.items() if a}
        if sense == "<=":
            line[slack_k] = Fraction(1)
            basis_col = slack_k
            slack_k += 1
        elif sense == ">=":
            line[slack_k] = Fraction(-1)
            slack_k += 1
            basis_col = None
        else:
            basis_col = None
        tableau.append((line, rhs, basis_col))
    n_art = sum(1 for _, _, b in tableau if b is None)
    width = art_start + n_art + 1
    dense = []
    a_k = art_start
    for line, rhs, basis_col in tableau:
        row = [Fraction(0)] * width
        for k, a in line.items():
            row[k] = Fraction(a)
        if basis_col is None:
            row[a_k] = Fraction(1)
            basis_col = a_k
            art_cols.append(a_k)
            a_k += 1
        row[-1] = Fraction(rhs)
        dense.append(row)
        basis.append(basis_col)

    # phase-1 objective: minimise the sum of artificials, stored as reduced costs
    obj = [Fraction(0)] * width
    for a in art_cols:
        obj[a] = Fraction(1)
    for r, b in enumerate(basis):
        if b >= art_start:
            for j in range(width):
                if dense[r][j]:
                    obj[j] -= dense[r][j]
    dense.append(obj)
    pivots = 0
    if trace is not None:
        _dump(dense, basis, trace, "initial")

    while True:
        q = next((j for j in range(width - 1) if obj[j] < 0), None)
        if q is None:
            break
        best = None
        p = None
        for r in range(m):
            a = dense[r][q]
            if a > 0:
                ratio = dense[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[p]):
                    best, p = ratio, r
        if p is None:
            raise RuntimeError("phase-1 objective unbounded; cannot happen")
        _pivot(dense, p, q)
        basis[p] = q
        pivots += 1
        if trace is not None:
            _dump(dense, basis, trace, f"pivot {pivots}: col {q} enters at row {p}")

    if obj[-1] != 0:
        # reduced-cost row stores -(objective value)
        return FeasibilityResult(False, pivots=pivots)

    # drive remaining (zero-level) artificials out of the basis
    for r in range(m):
        if basis[r] >= art_start:
            q = next((j for j in range(art_start) if dense[r][j] != 0), None)
            if q is not None:
                _pivot(dense, r, q)
                basis[r] = q
                pivots += 1

    y = [Fraction(0)] * ny
    for r, b in enumerate(basis):
        if b < ny:
            y[b] = dense[r][-1]
    point = {}
    for v in instance.variables:
        off, parts = subst[v]
        point[v] = off + sum((s * y[k] for k, s in parts), Fraction(0))
    if not instance.check(point):
        raise RuntimeError("simplex returned a point violating the instance")
    return FeasibilityResult(True, point, is_vertex=True, pivots=pivots)


# -- vertices ----------------------------------------------------------------

def _nullspace_vector(rows: list, nvars: int) -> Optional[list]:
    """A nonzero exact solution of ``rows @ d = 0`` or None if only zero."""
    mat = [list(r) for r in rows]
    pivot_cols = []
    rank = 0
    for col in range(nvars):
        sel = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        piv = mat[rank][col]
        mat[rank] = [v / piv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        pivot_cols.append(col)
        rank += 1
        if rank == len(mat):
            break
    free = [c for c in range(nvars) if c not in set(pivot_cols)]
    if not free:
        return None
    f = free[0]
    d = [Fraction(0)] * nvars
    d[f] = Fraction(1)
    for r, col in enumerate(pivot_cols):
        d[col] = -mat[r][f]
    return d


def _row_vector(row: Row, index: dict, nvars: int) -> list:
    vec = [Fraction(0)] * nvars
    for v, c in row.coeffs.items():
        vec[index[v]] = c
    return vec


def is_vertex(instance: LPInstance, point: Mapping) -> bool:
    """Feasible and the tight rows have full column rank."""
    if not instance.check(point):
        return False
    nvars = len(instance.variables)
    index = {v: k for k, v in enumerate(instance.variables)}
    active = [_row_vector(r, index, nvars) for r in instance.rows if r.active(point)]
    return _nullspace_vector(active, nvars) is None


def drive_to_vertex(instance: LPInstance, point: Mapping) -> dict:
    """Move a feasible point to a vertex without leaving the polyhedron.

    Repeatedly picks a direction in the null space of the tight rows and
    walks along it until another row becomes tight; every step raises the
    rank of the tight set, so at most ``#variables`` steps are needed.
    """
    x = {v: Fraction(point[v]) for v in instance.variables}
    if not instance.check(x):
        raise ValueError("starting point is not feasible")
    nvars = len(instance.variables)
    index = {v: k for k, v in enumerate(instance.variables)}
    vectors = [_row_vector(r, index, nvars) for r in instance.rows]
    for _ in range(nvars + 1):
        active = [vec for vec, r in zip(vectors, instance.rows) if r.active(x)]
        d = _nullspace_vector(active, nvars)
        if d is None:
            return x
        step = None
        for sign in (1, -1):
            limit = None
            for vec, r in zip(vectors, instance.rows):
                if r.active(x):
                    continue
                rate = sign * sum((a * b for a, b in zip(vec, d) if a), Fraction(0))
                slack = r.rhs - r.value(x)
                # inactive rows have nonzero slack of the right sign
                if r.sense == "<=" and rate > 0:
                    t = slack / rate
                elif r.sense == ">=" and rate < 0:
                    t = slack / rate
                else:
                    continue
                if limit is None or t < limit:
                    limit = t
            if limit is not None:
                step = (sign, limit)
                break
        if step is None:
            raise ValueError("polyhedron contains a line; no vertex exists")
        sign, t = step
        for v in instance.variables:
            x[v] += sign * t * d[index[v]]
    raise RuntimeError("vertex search did not terminate")


def assert_integral_vertex(result: FeasibilityResult) -> dict:
    """Return the vertex of a feasible result, insisting every coordinate is an integer."""
    if not result.feasible or result.point is None:
        raise ValueError("no feasible point to check")
    if not result.is_vertex:
        raise IntegralityViolation("point is not a vertex")
    bad = {v: x for v, x in result.point.items() if Fraction(x).denominator != 1}
    if bad:
        raise IntegralityViolation(f"fractional vertex coordinates: {bad}")
    return result.point


# -- integer max-flow ----------------------------------------------------------

class FlowNetwork:
    """Directed graph with integer capacities; Dinic's algorithm."""

    def __init__(self):
        self.nodes: dict = {}
        self.graph: list = []  # per node: list of edge ids
        self.to: list = []
        self.cap: list = []

    def node(self, name: Hashable) -> int:
        if name not in self.nodes:
            self.nodes[name] = len(self.graph)
            self.graph.append([])
        return self.nodes[name]

    def add_edge(self, u: Hashable, v: Hashable, capacity: int) -> int:
        a, b = self.node(u), self.node(v)
        eid = len(self.to)
        self.to.extend([b, a])
        self.cap.extend([int(capacity), 0])
        self.graph[a].append(eid)
        self.graph[b].append(eid + 1)
        return eid

    def flow_on(self, eid: int) -> int:
        return self.cap[eid + 1]

    def max_flow(self, source: Hashable, sink: Hashable) -> int:
        s, t = self.node(source), self.node(sink)
        bound = sum(self.cap[e] for e in self.graph[s]) + 1
        total = 0
        while True:
            level = [-1] * len(self.graph)
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for e in self.graph[u]:
                    if self.cap[e] > 0 and level[self.to[e]] < 0:
                        level[self.to[e]] = level[u] + 1
                        queue.append(self.to[e])
            if level[t] < 0:
                return total
            it = [0] * len(self.graph)

            def push(u, limit):
                if u == t:
                    return limit
                while it[u] < len(self.graph[u]):
                    e = self.graph[u][it[u]]
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] == level[u] + 1:
                        got = push(v, min(limit, self.cap[e]))
                        if got:
                            self.cap[e] -= got
                            self.cap[e ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                f = push(s, bound)
                if not f:
                    break
                total += f
