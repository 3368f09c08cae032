"""Schubitope membership through the tableau polytope and its compression.

Variables are named ``("a", i, k)``: label ``i`` placed in column (class)
``k``.  They are declared column by column, ``a_11, a_21, ..., a_n1, a_12, ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import lp
from .core import Diagram, code_to_oneline, make_code, rothe_diagram
from .tableaux import Tableau, theta

DIRECT_MAX_N = 18
# Above this many variables the compressed system is decided by max-flow.
SIMPLEX_MAX_VARIABLES = 400
ENGINES = ("auto", "simplex", "flow")
COMPRESSIONS = ("rothe", "trivial")


@dataclass(frozen=True)
class Compression:
    """Columns grouped into classes with identical box rows, all boxes in rows ``<= m``."""

    m: int
    column_classes: tuple  # tuple of tuples of columns
    representatives: tuple
    multiplicities: tuple
    row_sets: tuple  # R_k as sorted tuples of rows

    @property
    def size(self) -> int:
        return len(self.column_classes)

    def is_valid_for(self, D: Diagram) -> bool:
        covered = set()
        for cols, p, lam, rows in zip(self.column_classes, self.representatives,
                                      self.multiplicities, self.row_sets):
            if p not in cols or lam != len(cols) or covered & set(cols):
                return False
            covered |= set(cols)
            for c in cols:
                if tuple(D.column_rows(c)) != tuple(rows):
                    return False
        if any(i > self.m for i, _ in D.boxes):
            return False
        return all(j in covered for _, j in D.boxes)


def _normalize_alpha(alpha: Sequence[int], n: int) -> Optional[tuple]:
    """Pad or truncate to length ``n``; ``None`` if a nonzero entry is cut off."""
    alpha = tuple(int(a) for a in alpha)
    if any(alpha[n:]):
        return None
    return alpha[:n] + (0,) * (n - len(alpha[:n]))


def schubitope_contains_direct(D: Diagram, alpha: Sequence[int],
                               max_n: int = DIRECT_MAX_N) -> bool:
    """Check all ``2^n`` subset inequalities ``sum_{i in S} alpha_i <= theta_D(S)``."""
    if D.n > max_n:
        raise ValueError(f"n={D.n} exceeds the subset-enumeration budget {max_n}")
    a = _normalize_alpha(alpha, D.n)
    if a is None or any(x < 0 for x in a) or sum(a) != len(D):
        return False
    rows = range(1, D.n + 1)
    for size in range(1, D.n + 1):
        for S in combinations(rows, size):
            if sum(a[i - 1] for i in S) > theta(D, S):
                return False
    return True


def _var(i: int, k: int) -> tuple:
    return ("a", i, k)


def _compressed_instance(m: int, lambdas: Sequence[int], row_sets: Sequence[Sequence[int]],
                         alpha: Sequence[int]) -> lp.LPInstance:
    ell = len(lambdas)
    inst = lp.LPInstance([_var(i, k) for k in range(1, ell + 1) for i in range(1, m + 1)])
    for k in range(1, ell + 1):
        for i in range(1, m + 1):
            inst.add_row({_var(i, k): -1}, "<=", 0, ("A1", i, k))
    for k in range(1, ell + 1):
        for i in range(1, m + 1):
            inst.add_row({_var(i, k): 1}, "<=", 1, ("A2", i, k))
    for i in range(1, m + 1):
        inst.add_row({_var(i, k): lambdas[k - 1] for k in range(1, ell + 1)}, "=",
                     alpha[i - 1], ("B", i))
    for k in range(1, ell + 1):
        rows = set(row_sets[k - 1])
        for s in range(1, m + 1):
            count = sum(1 for r in rows if r <= s)
            inst.add_row({_var(i, k): -1 for i in range(1, s + 1)}, "<=", -count, ("C", s, k))
    return inst


def build_polytope(D: Diagram, alpha: Sequence[int]) -> lp.LPInstance:
    """Conditions (A)-(C) on the ``n^2`` variables ``a_ij``, written as
    ``-a <= 0``, ``a <= 1``, row sums ``= alpha_i`` and ``-prefix <= -count``."""
    n = D.n
    a = tuple(alpha) + (0,) * max(0, n - len(alpha))
    return _compressed_instance(n, [1] * n, [D.column_rows(j) for j in range(1, n + 1)], a[:n])


def build_compressed(row_sets: Sequence[Sequence[int]], lambdas: Sequence[int],
                     alpha: Sequence[int], m: Optional[int] = None) -> lp.LPInstance:
    """Conditions (A')-(C') for classes with row sets ``R_k`` and sizes ``lambda_k``."""
    if len(row_sets) != len(lambdas):
        raise ValueError("one multiplicity per row set is required")
    m = len(alpha) if m is None else m
    a = tuple(alpha) + (0,) * max(0, m - len(alpha))
    return _compressed_instance(m, lambdas, row_sets, a[:m])


def compression_from_code(code: Sequence[int]) -> Compression:
    """Rothe compression with ``m = L``.

    Sorting the first ``L`` values of ``w`` cuts the columns into the values
    themselves and the gaps between consecutive values; columns in one piece
    share their box rows.  ``R_k`` is read off directly from ``w``.
    """
    code = make_code(code)
    w = code_to_oneline(code)
    L = len(w)
    classes = []
    prev = 0
    for v in sorted(w):
        if prev + 1 <= v - 1:
            classes.append(tuple(range(prev + 1, v)))
        classes.append((v,))
        prev = v
    first_row = {v: r for r, v in enumerate(w, start=1)}
    reps, lams, row_sets = [], [], []
    for cols in classes:
        p = cols[0]
        seen_at = first_row.get(p, L + 1)
        rows = tuple(r for r in range(1, L + 1) if w[r - 1] > p and r < seen_at)
        reps.append(p)
        lams.append(len(cols))
        row_sets.append(rows)
    return Compression(L, tuple(classes), tuple(reps), tuple(lams), tuple(row_sets))


def trivial_compression(D: Diagram) -> Compression:
    n = D.n
    return Compression(
        n,
        tuple((j,) for j in range(1, n + 1)),
        tuple(range(1, n + 1)),
        (1,) * n,
        tuple(tuple(D.column_rows(j)) for j in range(1, n + 1)),
    )


# -- deciding feasibility -------------------------------------------------------

def _flow_network(comp: Compression, alpha: Sequence[int]):
    """Flow model of the compressed system in the scaled variables
    ``b_ik = lambda_k * a_ik``.

    Class ``k`` with rows ``r_1 < ... < r_t`` becomes a chain of ``t`` nodes;
    label ``i`` with ``r_{q-1} < i <= r_q`` feeds node ``q`` with capacity
    ``lambda_k``.  The arc leaving node ``q`` carries every unit placed at
    labels above ``r_{q-1}`` and is capped by ``lambda_k * (t - q + 1)``: the
    prefix condition at ``s = r_{q-1} + 1`` rewritten as a suffix bound (the
    other prefix conditions are implied).  Feasible iff the flow saturates
    the source.
    """
    net = lp.FlowNetwork()
    label_edges = {}
    for i in range(1, comp.m + 1):
        if alpha[i - 1]:
            net.add_edge("src", ("label", i), alpha[i - 1])
    for k, (lam, rows) in enumerate(zip(comp.multiplicities, comp.row_sets), start=1):
        rows = sorted(rows)
        t = len(rows)
        lo = 0
        for q, r in enumerate(rows, start=1):
            for i in range(lo + 1, r + 1):
                if alpha[i - 1]:
                    label_edges[(i, k)] = net.add_edge(("label", i), ("chain", k, q), lam)
            net.add_edge(("chain", k, q), ("chain", k, q - 1) if q > 1 else "sink",
                         lam * (t - q + 1))
            lo = r
    return net, label_edges


def _flow_feasible(comp: Compression, alpha: Sequence[int]):
    net, label_edges = _flow_network(comp, alpha)
    total = sum(alpha[: comp.m])
    flow = net.max_flow("src", "sink") if total else 0
    return flow == total, net, label_edges


def _prepare(code: Sequence[int], alpha: Sequence[int]):
    """Shared front end: normalized data or ``None`` when the sum test fails."""
    code = make_code(code)
    L = len(code)
    a = tuple(int(x) for x in alpha)
    if any(x < 0 for x in a):
        return None
    if any(a[L:]):
        return None
    a = a[:L] + (0,) * (L - len(a[:L]))
    if sum(a) != sum(code):
        return None
    return code, a


def decide_nonvanishing(code: Sequence[int], alpha: Sequence[int], *,
                        compression: str = "rothe", engine: str = "auto") -> bool:
    """Whether the coefficient of ``x^alpha`` in ``S_w`` is nonzero.

    The sum test is applied first; the remaining question is feasibility of
    the compressed system, answered by exact simplex or by integer max-flow.
    """
    if compression not in COMPRESSIONS:
        raise ValueError(f"unknown compression {compression!r}")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    prep = _prepare(code, alpha)
    if prep is None:
        return False
    code, a = prep
    if not code:
        return True
    if compression == "rothe":
        comp = compression_from_code(code)
        a_m = a
    else:
        D = rothe_diagram(code)
        comp = trivial_compression(D)
        a_m = a + (0,) * (D.n - len(a))
    nvars = comp.m * comp.size
    if engine == "flow" or (engine == "auto" and nvars > SIMPLEX_MAX_VARIABLES):
        return _flow_feasible(comp, a_m)[0]
    inst = build_compressed(comp.row_sets, comp.multiplicities, a_m, comp.m)
    return lp.solve_feasibility(inst).feasible


# -- witnesses -------------------------------------------------------------------

def expand_compressed_point(comp: Compression, point: dict, n: int) -> dict:
    """Copy ``a~_ik`` to every column of class ``k``; everything else is zero."""
    out = {_var(i, j): Fraction(0) for j in range(1, n + 1) for i in range(1, n + 1)}
    for k, cols in enumerate(comp.column_classes, start=1):
        for j in cols:
            for i in range(1, comp.m + 1):
                out[_var(i, j)] = Fraction(point[_var(i, k)])
    return out


def tableau_from_point(D: Diagram, point: dict) -> Tableau:
    """Order-preserving filling: in each column the chosen labels, sorted,
    go to the box rows, sorted."""
    labels = {}
    for j in range(1, D.n + 1):
        rows = D.column_rows(j)
        chosen = sorted(i for i in range(1, D.n + 1) if point.get(_var(i, j), 0) == 1)
        if len(chosen) != len(rows):
            raise lp.IntegralityViolation(f"column {j}: {len(chosen)} labels for {len(rows)} boxes")
        for r, i in zip(rows, chosen):
            labels[(r, j)] = i
    return Tableau.from_dict(D, labels)


def witness_point(code: Sequence[int], alpha: Sequence[int], *,
                  engine: str = "auto") -> Optional[dict]:
    """An integral vertex of the full polytope, or ``None`` if the coefficient vanishes."""
    prep = _prepare(code, alpha)
    if prep is None:
        return None
    code, a = prep
    D = rothe_diagram(code)
    a_n = a + (0,) * (D.n - len(a))
    comp = compression_from_code(code)
    nvars = comp.m * comp.size
    if engine == "flow" or (engine == "auto" and nvars > SIMPLEX_MAX_VARIABLES):
        # Unit capacities on the uncompressed network give a 0/1 point directly,
        # and every 0/1 point of the polytope is one of its vertices.
        ok, net, label_edges = _flow_feasible(trivial_compression(D), a_n)
        if not ok:
            return None
        point = {_var(i, j): Fraction(0) for j in range(1, D.n + 1) for i in range(1, D.n + 1)}
        for (i, j), eid in label_edges.items():
            point[_var(i, j)] = Fraction(net.flow_on(eid))
        return point
    res = lp.solve_feasibility(build_compressed(comp.row_sets, comp.multiplicities, a, comp.m))
    if not res.feasible:
        return None
    full = build_polytope(D, a_n)
    expanded = expand_compressed_point(comp, res.point, D.n)
    if not full.check(expanded):
        raise AssertionError("expanded compressed point is not in the full polytope")
    vertex = lp.drive_to_vertex(full, expanded)
    return lp.assert_integral_vertex(lp.FeasibilityResult(True, vertex, is_vertex=True))


def witness_perfect_tableau(code: Sequence[int], alpha: Sequence[int], *,
                            engine: str = "auto") -> Optional[Tableau]:
    """A column-strict perfect tableau of ``D(w)`` with content ``alpha``, if any."""
    point = witness_point(code, alpha, engine=engine)
    if point is None:
        return None
    return tableau_from_point(rothe_diagram(code), point)
