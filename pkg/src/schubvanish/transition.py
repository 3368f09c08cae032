"""Coefficients of Schubert polynomials through the transition recursion.

Every non-vexillary code has a deletion child (one box removed from the
accessible row ``r``, weighted by ``x_r``) and one march child per pivot.
Vexillary leaves are flagged Schur polynomials, so their coefficients are
flagged Kostka numbers.  A root-to-leaf path together with a leaf tableau
is a certificate for one unit of the coefficient; :func:`verify_witness`
checks such certificates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Optional, Sequence, Union

from .core import (
    Code,
    accessible_box,
    code_to_oneline,
    complete_permutation,
    is_vexillary,
    make_code,
    pivots,
    shape_and_flag,
)
from .oracle import SparsePoly

FLAGGED_SCHUR_MAX_ROWS = 7


@dataclass(frozen=True)
class MarchMove:
    pivot_row: int

    def __str__(self):
        return str(self.pivot_row)


@dataclass(frozen=True)
class DeletionRun:
    row: int
    multiplicity: int = 1

    def __str__(self):
        return f"x{self.row}" + (f"^{self.multiplicity}" if self.multiplicity > 1 else "")


TransitionStep = Union[MarchMove, DeletionRun]


@dataclass(frozen=True)
class Children:
    row: int  # the accessible row r
    deletion: Code
    marches: tuple  # ((pivot row i, child code), ...)


def march_child(code: Sequence[int], pivot_row: int, z=None) -> Code:
    """Child code for the march move at ``pivot_row``: ``c_i + b`` and ``c_r - b``
    where ``b`` counts the boxes of row ``r`` east of column ``w(i)``."""
    code = make_code(code)
    if z is None:
        z = accessible_box(code)
    r, _ = z
    w = code_to_oneline(code)
    wi = w[pivot_row - 1]
    m = sum(1 for h in range(r - 1) if w[h] < wi)
    b = code[r - 1] - ((wi - 1) - m)
    if b <= 0:
        raise AssertionError(f"march from row {pivot_row} of {code} moves no boxes")
    child = list(code)
    child[pivot_row - 1] += b
    child[r - 1] -= b
    return make_code(child)


def transition_children(code: Sequence[int]) -> Children:
    code = make_code(code)
    z = accessible_box(code)
    if z is None or is_vexillary(code):
        raise ValueError(f"code {code} is vexillary; it is a leaf")
    r, _ = z
    deletion = list(code)
    deletion[r - 1] -= 1
    marches = tuple(
        (i, march_child(code, i, z))
        for i, _ in sorted(pivots(code, z))
    )
    return Children(r, make_code(deletion), marches)


# -- leaves ----------------------------------------------------------------------

def _normalize(alpha: Sequence[int], length: int) -> Optional[tuple]:
    alpha = tuple(int(a) for a in alpha)
    if any(alpha[length:]) or any(a < 0 for a in alpha):
        return None
    return alpha[:length] + (0,) * (length - len(alpha[:length]))


def _row_fillings(size: int, top: int, prev: Optional[tuple], remaining: tuple):
    """Weakly increasing rows of ``size`` entries from ``[top]``, as count
    vectors, that sit strictly below ``prev`` and fit in ``remaining``."""
    counts = [0] * len(remaining)

    def rec(j, left, placed):
        # placed = entries < j+1 so far
        if left == 0:
            yield tuple(counts)
            return
        if j >= top:
            return
        limit = min(left, remaining[j])
        if prev is not None:
            # entries <= j+1 in this row must not exceed entries <= j in prev
            cap = sum(prev[:j]) - placed
            limit = min(limit, cap)
        for k in range(limit, -1, -1):
            counts[j] = k
            yield from rec(j + 1, left - k, placed + k)
        counts[j] = 0

    yield from rec(0, size, 0)


def flagged_kostka(shape: Sequence[int], flag: Sequence[int], alpha: Sequence[int]) -> int:
    """Semistandard tableaux of ``shape`` with row ``i`` bounded by ``flag[i]`` and content ``alpha``.

    Rows are filled top to bottom; the state is the previous row's count
    vector and the content still to place.
    """
    shape = tuple(x for x in shape if x > 0)
    flag = tuple(flag)
    if len(flag) < len(shape):
        raise ValueError("flag must have an entry for every row")
    width = max([len(alpha)] + list(flag[: len(shape)]) + [0])
    a = _normalize(alpha, width)
    if a is None or sum(a) != sum(shape):
        return 0
    return _kostka(shape, flag[: len(shape)], a)


@lru_cache(maxsize=None)
def _kostka(shape: tuple, flag: tuple, alpha: tuple) -> int:
    @lru_cache(maxsize=None)
    def rows(i: int, prev: Optional[tuple], remaining: tuple) -> int:
        if i == len(shape):
            return int(not any(remaining))
        top = min(flag[i], len(remaining))
        total = 0
        for counts in _row_fillings(shape[i], top, prev, remaining):
            left = tuple(x - y for x, y in zip(remaining, counts))
            total += rows(i + 1, counts, left)
        return total

    return rows(0, None, alpha)


def kostka(shape: Sequence[int], alpha: Sequence[int]) -> int:
    n = max(len(alpha), len(shape), 1)
    return flagged_kostka(shape, [n] * len(tuple(x for x in shape if x > 0)), alpha)


def complete_homogeneous(k: int, nvars: int, total_vars: int) -> SparsePoly:
    """``h_k(x_1, ..., x_nvars)`` inside a ring of ``total_vars`` variables."""
    if k < 0 or (nvars == 0 and k > 0):
        return SparsePoly(total_vars)
    if nvars == 0:
        return SparsePoly.one(total_vars)
    terms = {}

    def walk(j, left, exps):
        if j == nvars - 1:
            terms[tuple(exps + [left] + [0] * (total_vars - nvars))] = 1
            return
        for t in range(left, -1, -1):
            walk(j + 1, left - t, exps + [t])

    walk(0, k, [])
    return SparsePoly(total_vars, terms)


def _sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def flagged_schur(shape: Sequence[int], flag: Sequence[int], nvars: int) -> SparsePoly:
    """``det(h_{lambda_i - i + j}(x_1..x_{phi_i}))`` by the Leibniz expansion."""
    shape = tuple(x for x in shape if x > 0)
    if len(shape) > FLAGGED_SCHUR_MAX_ROWS:
        raise ValueError(f"{len(shape)} rows exceeds the determinant budget {FLAGGED_SCHUR_MAX_ROWS}")
    k = len(shape)
    if max(flag[:k], default=0) > nvars:
        raise ValueError("flag entry exceeds the number of variables")
    h = {}
    total = SparsePoly(nvars)
    for perm in permutations(range(k)):
        term = SparsePoly.one(nvars)
        for i in range(k):
            deg = shape[i] - (i + 1) + (perm[i] + 1)
            key = (deg, flag[i])
            if key not in h:
                h[key] = complete_homogeneous(deg, flag[i], nvars)
            term = term * h[key]
            if not term.terms:
                break
        if term.terms:
            total = total + term * _sign(perm)
    return total


# -- counting ------------------------------------------------------------------------

def count_coefficient(code: Sequence[int], alpha: Sequence[int]) -> int:
    """Exact ``c_{alpha,w}`` by the transition recursion."""
    code = make_code(code)
    a = _normalize(alpha, len(code))
    if a is None:
        return 0
    return _count(code, a)


@lru_cache(maxsize=None)
def _count(code: Code, alpha: tuple) -> int:
    if any(alpha[len(code):]) or any(x < 0 for x in alpha) or sum(alpha) != sum(code):
        return 0
    alpha = alpha[: len(code)]
    if is_vexillary(code):
        if not code:
            return 1
        shape, flag = shape_and_flag(code)
        return flagged_kostka(shape, flag, alpha)
    kids = transition_children(code)
    r = kids.row
    total = 0
    if alpha[r - 1] > 0:
        dec = list(alpha)
        dec[r - 1] -= 1
        total += _count(kids.deletion, _trim(kids.deletion, dec))
    for _, child in kids.marches:
        total += _count(child, _trim(child, alpha))
    return total


def _trim(code: Code, alpha: Sequence[int]) -> tuple:
    alpha = tuple(alpha)
    if any(alpha[len(code):]):
        return alpha  # caught by the sum/length test in _count
    return alpha[: len(code)]


def clear_cache() -> None:
    _count.cache_clear()
    _kostka.cache_clear()


# -- the tree and its strings -------------------------------------------------------

@dataclass(frozen=True)
class Path:
    steps: tuple  # TransitionSteps with maximal deletion runs
    leaf: Code
    delwt: tuple  # length L of the root code


def transition_paths(code: Sequence[int]) -> Iterator[Path]:
    """Every root-to-leaf path of the transition tree, deletions grouped into runs."""
    root = make_code(code)
    L = len(root)

    def rec(node: Code, steps: list, delwt: list):
        if is_vexillary(node):
            yield Path(tuple(_merge(steps)), node, tuple(delwt))
            return
        kids = transition_children(node)
        delwt[kids.row - 1] += 1
        steps.append(DeletionRun(kids.row, 1))
        yield from rec(kids.deletion, steps, delwt)
        steps.pop()
        delwt[kids.row - 1] -= 1
        for i, child in kids.marches:
            steps.append(MarchMove(i))
            yield from rec(child, steps, delwt)
            steps.pop()

    yield from rec(root, [], [0] * L)


def _merge(steps: Sequence[TransitionStep]) -> list:
    out: list = []
    for s in steps:
        if isinstance(s, DeletionRun) and out and isinstance(out[-1], DeletionRun) \
                and out[-1].row == s.row:
            out[-1] = DeletionRun(s.row, out[-1].multiplicity + s.multiplicity)
        else:
            out.append(s)
    return out


def transition_tree(code: Sequence[int]) -> dict:
    """Nested dict of the tree: node code, one-line form, edges labelled ``x_r`` or a pivot row."""
    code = make_code(code)
    node = {
        "code": list(code),
        "oneline": list(complete_permutation(code_to_oneline(code))),
        "vexillary": is_vexillary(code),
        "children": [],
    }
    if node["vexillary"]:
        return node
    z = accessible_box(code)
    node["accessible_box"] = list(z)
    kids = transition_children(code)
    node["children"].append({"edge": f"x{kids.row}", "child": transition_tree(kids.deletion)})
    for i, child in kids.marches:
        node["children"].append({"edge": str(i), "child": transition_tree(child)})
    return node


def _oneline_text(w: Sequence[int]) -> str:
    sep = "" if max(w, default=0) < 10 else " "
    return sep.join(str(v) for v in w) or "id"


def render_tree(code: Sequence[int], as_json: bool = False) -> str:
    tree = transition_tree(code)
    if as_json:
        return json.dumps(tree, sort_keys=True)
    lines = []

    def rec(node, depth, edge):
        mark = " (leaf)" if node["vexillary"] else f" z={tuple(node['accessible_box'])}"
        prefix = "  " * depth + (f"--{edge}--> " if edge else "")
        lines.append(f"{prefix}{_oneline_text(node['oneline'])} code={tuple(node['code'])}{mark}")
        for e in node["children"]:
            rec(e["child"], depth + 1, e["edge"])

    rec(tree, 0, None)
    return "\n".join(lines)


# -- certificates ---------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


def walk_string(code: Sequence[int], steps: Sequence[TransitionStep]) -> tuple:
    """Follow ``steps`` down the tree; returns ``(node, delwt, reason)``.

    ``reason`` is ``"ok"`` when every step is a legal move.  A deletion run
    must sit at the accessible row and have that many boxes outside the
    dominant component; each single deletion inside it must start from a
    non-vexillary node whose accessible box is still in that row.
    """
    node = make_code(code)
    L = len(node)
    delwt = [0] * L
    prev = None
    for t, step in enumerate(steps):
        if isinstance(step, DeletionRun) and isinstance(prev, DeletionRun) and step.row == prev.row:
            return node, delwt, f"step {t}: repeated deletion run on row {step.row}"
        if is_vexillary(node):
            return node, delwt, f"step {t}: node {node} is already a leaf"
        z = accessible_box(node)
        r, _ = z
        if isinstance(step, DeletionRun):
            if step.row != r:
                return node, delwt, f"step {t}: deletion at row {step.row}, accessible row is {r}"
            if step.multiplicity < 1:
                return node, delwt, f"step {t}: run multiplicity must be positive"
            w = code_to_oneline(node)
            if node[r - 1] - (min(w[:r]) - 1) < step.multiplicity:
                return node, delwt, f"step {t}: row {r} has fewer than {step.multiplicity} movable boxes"
            for q in range(step.multiplicity):
                if q and (is_vexillary(node) or accessible_box(node)[0] != r):
                    return node, delwt, f"step {t}: run leaves row {r} after {q} deletions"
                nxt = list(node)
                nxt[r - 1] -= 1
                node = make_code(nxt)
                delwt[r - 1] += 1
        elif isinstance(step, MarchMove):
            piv_rows = {i for i, _ in pivots(node, z)}
            if step.pivot_row not in piv_rows:
                return node, delwt, f"step {t}: row {step.pivot_row} is not a pivot"
            node = march_child(node, step.pivot_row, z)
        else:
            return node, delwt, f"step {t}: unknown step {step!r}"
        prev = step
    return node, delwt, "ok"


def row_count_matrix(rows: Sequence[Sequence[int]], size: int) -> list:
    """``R(T)`` for a tableau given as a list of rows of entries."""
    R = [[0] * size for _ in range(size)]
    for i, row in enumerate(rows):
        for v in row:
            R[i][v - 1] += 1
    return R


def verify_witness(steps: Sequence[TransitionStep], R: Sequence[Sequence[int]],
                   code: Sequence[int], alpha: Sequence[int]) -> Verdict:
    """Whether ``(steps, R)`` certifies one unit of ``c_{alpha,w}``."""
    code = make_code(code)
    L = len(code)
    if len(steps) > L * L:
        return Verdict(False, f"string length {len(steps)} exceeds L^2 = {L * L}")
    a = _normalize(alpha, L)
    if a is None:
        return Verdict(False, "alpha has a nonzero entry beyond the code length or a negative entry")
    if len(R) != L or any(len(row) != L for row in R):
        return Verdict(False, f"R must be {L}x{L}")
    if any(int(x) != x or x < 0 for row in R for x in row):
        return Verdict(False, "R must have nonnegative integer entries")
    leaf, delwt, reason = walk_string(code, steps)
    if reason != "ok":
        return Verdict(False, reason)
    if not is_vexillary(leaf):
        return Verdict(False, f"path ends at non-vexillary node {leaf}")
    shape, flag = shape_and_flag(leaf) if leaf else ((), ())
    sums = [sum(row) for row in R]
    want = list(shape) + [0] * (L - len(shape))
    if sums != want:
        return Verdict(False, f"row sums {sums} differ from the leaf shape {want}")
    for i in range(L):
        bound = flag[i] if i < len(flag) else 0
        if any(R[i][j] for j in range(bound, L)):
            return Verdict(False, f"row {i + 1} exceeds its flag {bound}")
    for i in range(L - 1):
        below = above = 0
        for j in range(L):
            below += R[i + 1][j]
            if below > above:
                return Verdict(False, f"rows {i + 1} and {i + 2} are not column strict")
            above += R[i][j]
    content = [sum(R[i][j] for i in range(L)) for j in range(L)]
    if [d + c for d, c in zip(delwt, content)] != list(a):
        return Verdict(False, "deletion weight plus content differs from alpha")
    return Verdict(True)
