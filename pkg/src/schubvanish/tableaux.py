"""Tableaux on diagrams: column words, the greedy tableau, perfect fillings."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .core import Diagram, complete_permutation, code_to_oneline, rothe_diagram_of

OPEN, CLOSE, STAR = "(", ")", "*"
UNLABELLED = None
DEFAULT_MAX_BOXES = 16


@dataclass(frozen=True)
class Tableau:
    """Map from the boxes of ``shape`` to labels; ``None`` marks an unlabelled box."""

    shape: Diagram
    labels: tuple  # sorted ((box, label), ...)

    @classmethod
    def from_dict(cls, shape: Diagram, labels: dict) -> "Tableau":
        if set(labels) != set(shape.boxes):
            raise ValueError("labels must cover exactly the boxes of the shape")
        return cls(shape, tuple(sorted(labels.items())))

    def as_dict(self) -> dict:
        return dict(self.labels)

    def __getitem__(self, box):
        return self.as_dict()[box]

    def preimage(self, S: Iterable[int]) -> frozenset:
        S = set(S)
        return frozenset(b for b, lab in self.labels if lab is not None and lab in S)

    def content(self, n: Optional[int] = None) -> tuple:
        n = self.shape.n if n is None else n
        counts = [0] * n
        for _, lab in self.labels:
            if lab is not None:
                counts[lab - 1] += 1
        return tuple(counts)

    def is_flagged(self) -> bool:
        return all(lab is None or lab <= r for (r, _), lab in self.labels)

    def is_column_injective(self) -> bool:
        seen = set()
        for (_, c), lab in self.labels:
            if lab is None:
                continue
            if (c, lab) in seen:
                return False
            seen.add((c, lab))
        return True

    def is_column_strict(self) -> bool:
        lab = self.as_dict()
        for c in {c for _, c in lab}:
            col = [lab[(r, c)] for r in self.shape.column_rows(c)]
            if any(x is None for x in col):
                return False
            if any(a >= b for a, b in zip(col, col[1:])):
                return False
        return True

    def is_perfect(self) -> bool:
        return (
            all(lab is not None for _, lab in self.labels)
            and self.is_flagged()
            and self.is_column_injective()
        )

    def label_sum(self) -> int:
        return sum(lab for _, lab in self.labels if lab is not None)

    def render(self) -> str:
        """Grid with labels; unlabelled boxes print as ``.``, non-boxes as blanks."""
        lab = self.as_dict()
        n = self.shape.n
        width = max((len(str(x)) for x in lab.values() if x is not None), default=1)
        lines = []
        for i in range(1, n + 1):
            cells = []
            for j in range(1, n + 1):
                if (i, j) in lab:
                    x = lab[(i, j)]
                    cells.append(("." if x is None else str(x)).rjust(width))
                else:
                    cells.append(" " * (width - 1) + "_")
            lines.append(" ".join(cells))
        return "\n".join(lines)


@dataclass(frozen=True)
class ColumnWord:
    symbols: tuple  # ((symbol, row), ...) top to bottom

    @property
    def text(self) -> str:
        return "".join("★" if s == STAR else s for s, _ in self.symbols)


def column_word(D: Diagram, S: Iterable[int], c: int) -> ColumnWord:
    S = set(S)
    out = []
    for r in range(1, D.n + 1):
        inside = (r, c) in D.boxes
        if inside and r in S:
            out.append((STAR, r))
        elif inside:
            out.append((CLOSE, r))
        elif r in S:
            out.append((OPEN, r))
    return ColumnWord(tuple(out))


def _column_theta(word: ColumnWord) -> int:
    stars = 0
    pairs = 0
    depth = 0
    for s, _ in word.symbols:
        if s == STAR:
            stars += 1
        elif s == OPEN:
            depth += 1
        elif depth:
            depth -= 1
            pairs += 1
    return stars + pairs


def word_and_theta(D: Diagram, S: Iterable[int]) -> tuple[dict, int]:
    """All column words ``word_{c,S}(D)`` and ``theta_D(S)``."""
    S = set(S)
    words = {c: column_word(D, S, c) for c in range(1, D.n + 1)}
    return words, sum(_column_theta(w) for w in words.values())


def theta(D: Diagram, S: Iterable[int]) -> int:
    return word_and_theta(D, S)[1]


def greedy_tableau(D: Diagram, S: Iterable[int]) -> Tableau:
    """The tableau ``pi_{D,S}``: stars keep their row as label, a ``)`` takes
    the row of the ``(`` it is paired with, everything else stays unlabelled."""
    S = set(S)
    labels = {}
    for c in range(1, D.n + 1):
        opens: list[int] = []
        for r in range(1, D.n + 1):
            inside = (r, c) in D.boxes
            if inside and r in S:
                labels[(r, c)] = r
            elif inside:
                labels[(r, c)] = opens.pop() if opens else UNLABELLED
            elif r in S:
                opens.append(r)
    return Tableau.from_dict(D, labels)


def exhausts(tau: Tableau, alpha: Sequence[int], S: Iterable[int]) -> bool:
    S = set(S)
    need = sum(alpha[i - 1] for i in S if i <= len(alpha))
    return need <= len(tau.preimage(S))


def _check_budget(D: Diagram, max_boxes: int) -> None:
    if len(D) > max_boxes:
        raise ValueError(f"diagram has {len(D)} boxes, over the enumeration budget of {max_boxes}")


def enumerate_perfect(D: Diagram, alpha: Optional[Sequence[int]] = None, *,
                      column_strict: bool = False,
                      max_boxes: int = DEFAULT_MAX_BOXES) -> list[Tableau]:
    """Every perfect tableau of shape ``D`` (with content ``alpha`` if given).

    Boxes are filled in reading order with labels tried in increasing order.
    ``column_strict`` keeps only fillings increasing down each column.
    """
    return list(iter_perfect(D, alpha, column_strict=column_strict, max_boxes=max_boxes))


def iter_perfect(D: Diagram, alpha: Optional[Sequence[int]] = None, *,
                 column_strict: bool = False,
                 max_boxes: int = DEFAULT_MAX_BOXES) -> Iterator[Tableau]:
    _check_budget(D, max_boxes)
    boxes = sorted(D.boxes)
    if alpha is not None:
        alpha = tuple(alpha)
        if any(a < 0 for a in alpha):
            return
        if any(alpha[D.n:]) or sum(alpha) != len(boxes):
            return
        remaining = list(alpha[: D.n]) + [0] * max(0, D.n - len(alpha))
    else:
        remaining = None
    labels: dict = {}
    used: dict = {}  # column -> set of labels
    last: dict = {}  # column -> label of the lowest filled box

    def rec(k):
        if k == len(boxes):
            yield Tableau.from_dict(D, dict(labels))
            return
        r, c = boxes[k]
        col_used = used.setdefault(c, set())
        low = last.get(c, 0) + 1 if column_strict else 1
        for lab in range(low, r + 1):
            if lab in col_used:
                continue
            if remaining is not None:
                if remaining[lab - 1] == 0:
                    continue
                remaining[lab - 1] -= 1
            col_used.add(lab)
            prev = last.get(c)
            last[c] = lab
            labels[(r, c)] = lab
            yield from rec(k + 1)
            del labels[(r, c)]
            if prev is None:
                del last[c]
            else:
                last[c] = prev
            col_used.discard(lab)
            if remaining is not None:
                remaining[lab - 1] += 1

    yield from rec(0)


def enumerate_fci(D: Diagram, *, max_boxes: int = 10) -> Iterator[Tableau]:
    """All flagged column-injective tableaux of shape ``D`` (unlabelled boxes allowed)."""
    _check_budget(D, max_boxes)
    boxes = sorted(D.boxes)
    labels: dict = {}

    def rec(k):
        if k == len(boxes):
            yield Tableau.from_dict(D, dict(labels))
            return
        r, c = boxes[k]
        taken = {lab for (rr, cc), lab in labels.items() if cc == c and lab is not None}
        for lab in [UNLABELLED] + list(range(1, r + 1)):
            if lab is not None and lab in taken:
                continue
            labels[(r, c)] = lab
            yield from rec(k + 1)
            del labels[(r, c)]

    yield from rec(0)


def boxes_132(w: Sequence[int]) -> list[tuple[int, int]]:
    """Box ``(j, w(k))`` for every 132-pattern ``i<j<k``, with repetition, in reading order."""
    w = complete_permutation(w)
    found = [
        (j + 1, w[k])
        for i, j, k in combinations(range(len(w)), 3)
        if w[i] < w[k] < w[j]
    ]
    return sorted(found)


def weigandt_fillings(code: Sequence[int]) -> list[Tableau]:
    """Column-strict perfect fillings ``F_0, ..., F_N`` of ``D(w)``, ``N = n_132(w)``.

    ``F_0`` labels every box by its row.  Step ``t`` takes the ``t``-th
    132-box ``b`` (reading order, listed once per pattern) and lowers by one
    the run of boxes from ``b`` upward in its column whose labels are
    consecutive, so the column stays strictly increasing.  The label sum
    drops at every step, so the contents are pairwise distinct.
    """
    w = complete_permutation(code_to_oneline(code))
    D = rothe_diagram_of(w)
    F = {b: b[0] for b in D.boxes}
    fillings = [Tableau.from_dict(D, F)]
    for b in boxes_132(w):
        rows_above = [r for r in D.column_rows(b[1]) if r <= b[0]]
        run = [b]
        for r in reversed(rows_above[:-1]):
            above = (r, b[1])
            if F[above] == F[run[-1]] - 1:
                run.append(above)
            else:
                break
        for box in run:
            F[box] -= 1
        if F[run[-1]] < 1:
            raise AssertionError(f"label dropped below 1 at {run[-1]}")
        fillings.append(Tableau.from_dict(D, F))
    return fillings
