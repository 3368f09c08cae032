"""Permutations, Lehmer codes, Rothe diagrams and their landmarks.

Everything is 1-indexed to match the usual matrix conventions: a box
``(i, j)`` sits in row ``i`` from the top and column ``j`` from the left,
and a permutation prefix ``w`` is stored as the tuple ``(w(1), ..., w(m))``.

Codes are plain tuples of nonnegative integers with trailing zeros stripped
(see :func:`make_code`); the empty tuple is the identity.
"""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

Box = tuple[int, int]
Code = tuple[int, ...]
OneLine = tuple[int, ...]
Partition = tuple[int, ...]
Flag = tuple[int, ...]


class NotVexillaryError(ValueError):
    pass


def make_code(entries: Iterable[int]) -> Code:
    """Validate a code and strip its trailing zeros."""
    code = [int(c) for c in entries]
    if any(c < 0 for c in code):
        raise ValueError(f"code entries must be nonnegative: {code}")
    while code and code[-1] == 0:
        code.pop()
    return tuple(code)


def make_oneline(values: Iterable[int]) -> OneLine:
    w = tuple(int(v) for v in values)
    if any(v < 1 for v in w):
        raise ValueError(f"one-line values must be positive: {w}")
    if len(set(w)) != len(w):
        raise ValueError(f"repeated value in one-line notation: {w}")
    return w


@dataclass(frozen=True)
class Diagram:
    """A set of boxes inside the ``n x n`` grid."""

    boxes: frozenset
    n: int

    def __post_init__(self):
        for i, j in self.boxes:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"box {(i, j)} outside [{self.n}]^2")

    @classmethod
    def from_boxes(cls, boxes: Iterable[Box], n: Optional[int] = None) -> "Diagram":
        boxes = frozenset((int(i), int(j)) for i, j in boxes)
        if n is None:
            n = max((max(b) for b in boxes), default=0)
        return cls(boxes, n)

    def __len__(self) -> int:
        return len(self.boxes)

    def __contains__(self, box) -> bool:
        return box in self.boxes

    def __iter__(self):
        return iter(sorted(self.boxes))

    def column_rows(self, j: int) -> list[int]:
        return sorted(i for i, jj in self.boxes if jj == j)

    def row_cols(self, i: int) -> list[int]:
        return sorted(j for ii, j in self.boxes if ii == i)

    def render(self, dots: Sequence[Box] = ()) -> str:
        """Canonical text grid: ``#`` box, ``o`` dot, ``.`` anything else."""
        dots = set(dots)
        lines = []
        for i in range(1, self.n + 1):
            row = []
            for j in range(1, self.n + 1):
                if (i, j) in self.boxes:
                    row.append("#")
                elif (i, j) in dots:
                    row.append("o")
                else:
                    row.append(".")
            lines.append("".join(row))
        return "\n".join(lines)


# -- permutations and codes ------------------------------------------------

def code_to_oneline(code: Sequence[int]) -> OneLine:
    """First ``L`` values of the shortest permutation with the given code.

    Each step inserts ``w(i)`` into the sorted list of earlier values; the
    number of unused values below the ``t``-th smallest earlier value is
    ``u_t - t``, and ``w(i)`` skips past every earlier value whose unused
    count is at most ``c_i``. ``O(L^2)`` overall.
    """
    code = make_code(code)
    seen: list[int] = []
    w = []
    for c in code:
        t = 0
        for idx, u in enumerate(seen, start=1):
            if c >= u - idx:
                t = idx
            else:
                break
        value = c + t + 1
        w.append(value)
        bisect.insort(seen, value)
    return tuple(w)


def oneline_to_code(w: Sequence[int]) -> Code:
    """Row sizes of the Rothe diagram of a one-line prefix."""
    w = make_oneline(w)
    used: set[int] = set()
    code = []
    for value in w:
        code.append(sum(1 for c in range(1, value) if c not in used))
        used.add(value)
    return make_code(code)


def complete_permutation(w: Sequence[int], n: Optional[int] = None) -> OneLine:
    """Extend a prefix to a permutation of ``[n]`` by appending the unused
    values in increasing order (the shortest completion)."""
    w = make_oneline(w)
    size = max(w, default=0)
    if n is not None:
        if n < size:
            raise ValueError(f"n={n} too small for prefix {w}")
        size = n
    size = max(size, len(w))
    used = set(w)
    return w + tuple(v for v in range(1, size + 1) if v not in used)


def inverse(w: Sequence[int]) -> OneLine:
    w = complete_permutation(w)
    inv = [0] * len(w)
    for i, v in enumerate(w, start=1):
        inv[v - 1] = i
    return tuple(inv)


def ambient_size(code: Sequence[int]) -> int:
    code = make_code(code)
    return len(code) + max(code, default=0)


def rothe_diagram(code: Sequence[int]) -> Diagram:
    code = make_code(code)
    n = ambient_size(code)
    w = complete_permutation(code_to_oneline(code), n)
    return rothe_diagram_of(w)


def rothe_diagram_of(w: Sequence[int], n: Optional[int] = None) -> Diagram:
    """``{(i, j) : j < w(i), i < w^{-1}(j)}`` for a (completed) permutation."""
    w = complete_permutation(w, n)
    winv = inverse(w)
    n = len(w)
    boxes = {
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if j < w[i - 1] and i < winv[j - 1]
    }
    return Diagram(frozenset(boxes), n)


def dots(w: Sequence[int]) -> list[Box]:
    return [(i, v) for i, v in enumerate(w, start=1)]


# -- essential data ---------------------------------------------------------

def connected_component(D: Diagram, start: Box) -> frozenset:
    """4-adjacency component of ``D`` containing ``start`` (empty if absent)."""
    if start not in D.boxes:
        return frozenset()
    seen = {start}
    queue = deque([start])
    while queue:
        i, j = queue.popleft()
        for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if nb in D.boxes and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return frozenset(seen)


def dominant_component(D: Diagram) -> frozenset:
    return connected_component(D, (1, 1))


def essential_set(D: Diagram) -> frozenset:
    return frozenset(
        (i, j) for i, j in D.boxes
        if (i + 1, j) not in D.boxes and (i, j + 1) not in D.boxes
    )


def accessible_box(code: Sequence[int]) -> Optional[Box]:
    """Southmost, then eastmost, essential box outside the dominant component.

    Works from the code alone in ``O(L^2)``: the eastmost box of row ``i`` is
    the largest column below ``w(i)`` not hit by an earlier dot, and it lies
    outside the dominant component exactly when it is east of every dot above.
    """
    w = code_to_oneline(code)
    best = None
    for i in range(2, len(w) + 1):
        above = set(w[: i - 1])
        k = w[i - 1] - 1
        while k >= 1 and k in above:
            k -= 1
        if k >= 1 and k > min(w[: i - 1]):
            best = (i, k)
    return best


def pivots(code: Sequence[int], z: Box) -> frozenset:
    """Dots ``(j, w(j))`` maximally southeast among those strictly northwest of ``z``."""
    w = code_to_oneline(code)
    r, c = z
    northwest = [(j, w[j - 1]) for j in range(1, min(r, len(w) + 1)) if w[j - 1] < c]
    if not northwest:
        raise ValueError(f"no dot northwest of {z}")
    return frozenset(
        (j, v) for j, v in northwest
        if not any(h > j and u > v for h, u in northwest)
    )


def count_132(w: Sequence[int]) -> int:
    """Number of index triples ``i<j<k`` with ``w(i) < w(k) < w(j)``."""
    w = complete_permutation(w)
    return sum(
        1 for i, j, k in combinations(range(len(w)), 3)
        if w[i] < w[k] < w[j]
    )


# -- vexillary data ---------------------------------------------------------

def is_vexillary(code: Sequence[int]) -> bool:
    """Code criterion for 2143-avoidance.

    (i) a drop below ``c_i`` anywhere after position ``i`` forces every later
    entry below ``c_i``; (ii) between ``i`` and ``h`` with ``c_i >= c_h`` at
    most ``c_i - c_h`` entries are smaller than ``c_h``.  Checking (i) only
    at the adjacent position ``i + 1`` is not enough: code ``(1,3,0,2)`` of
    ``251634`` passes that weaker test but contains 2143.
    """
    c = make_code(code)
    L = len(c)
    for i in range(L):
        dropped = False
        for j in range(i + 1, L):
            if dropped and c[j] >= c[i]:
                return False
            if c[j] < c[i]:
                dropped = True
    for i in range(L):
        for h in range(i + 1, L):
            if c[i] >= c[h]:
                drops = sum(1 for j in range(i + 1, h) if c[j] < c[h])
                if drops > c[i] - c[h]:
                    return False
    return True


def shape_and_flag(code: Sequence[int]) -> tuple[Partition, Flag]:
    """Shape ``lambda(v)`` and flag ``phi(v)`` of a vexillary code.

    The flag has one entry per nonzero code entry: ``e_i`` is the last index
    ``j >= i`` with ``c_j >= c_i``.
    """
    c = make_code(code)
    if not is_vexillary(c):
        raise NotVexillaryError(f"code {c} is not vexillary")
    shape = tuple(sorted((x for x in c if x > 0), reverse=True))
    flag = []
    for i, ci in enumerate(c):
        if ci == 0:
            continue
        e = max(j for j in range(i, len(c)) if c[j] >= ci)
        flag.append(e + 1)
    return shape, tuple(sorted(flag))


def grassmannian_code(shape: Sequence[int]) -> Code:
    return make_code(reversed(tuple(shape)))


def descents(w: Sequence[int]) -> list[int]:
    w = complete_permutation(w)
    return [i for i in range(1, len(w)) if w[i - 1] > w[i]]
