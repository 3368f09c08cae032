"""Ground-truth Schubert polynomials by divided differences.

Exponential in ``n`` and only meant as an independent check on the
polynomial-time machinery elsewhere in the package.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .core import complete_permutation

MAX_N = 8


class SparsePoly:
    """Polynomial in a fixed number of variables, stored as ``{exponents: coeff}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | Iterable = ()):
        self.nvars = nvars
        self.terms: dict[tuple, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length != {nvars}")
            if coeff:
                self.terms[exps] = self.terms.get(exps, 0) + coeff
                if self.terms[exps] == 0:
                    del self.terms[exps]

    @classmethod
    def one(cls, nvars: int) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "SparsePoly":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "SparsePoly":
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.nvars == self.nvars:
                return other
            return other.extend(self.nvars) if other.nvars < self.nvars else other
        return SparsePoly(self.nvars, {(0,) * self.nvars: int(other)})

    def extend(self, nvars: int) -> "SparsePoly":
        """Same polynomial viewed in ``nvars >= self.nvars`` variables."""
        if nvars < self.nvars:
            raise ValueError("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return SparsePoly(nvars, {e + pad: c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other.nvars > self.nvars:
            return self.extend(other.nvars) + other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if other.nvars > self.nvars:
            return self.extend(other.nvars) * other
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            other = self._coerce(other)
        n = max(self.nvars, other.nvars)
        a = self.extend(n) if self.nvars < n else self
        b = other.extend(n) if other.nvars < n else other
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"x{i}" + (f"^{a}" if a > 1 else "")
                for i, a in enumerate(e, start=1) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def coefficient(self, alpha: Sequence[int]) -> int:
        alpha = tuple(alpha)
        if len(alpha) > self.nvars:
            if any(alpha[self.nvars:]):
                return 0
            alpha = alpha[: self.nvars]
        else:
            alpha = alpha + (0,) * (self.nvars - len(alpha))
        return self.terms.get(alpha, 0)

    def support(self) -> set:
        return set(self.terms)

    def evaluate_ones(self) -> int:
        return sum(self.terms.values())

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def divided_difference(self, i: int) -> "SparsePoly":
        """Apply ``(f - s_i f) / (x_i - x_{i+1})`` monomial by monomial.

        For ``x_i^p x_{i+1}^q`` with ``p > q`` the quotient is the geometric sum
        ``sum_{t=0}^{p-q-1} x_i^{p-1-t} x_{i+1}^{q+t}``; ``p < q`` gives the
        negative of the mirrored sum and ``p == q`` gives zero.
        """
        if not 1 <= i < self.nvars:
            raise ValueError(f"divided difference index {i} out of range")
        a, b = i - 1, i
        out: dict[tuple, int] = {}
        for e, c in self.terms.items():
            p, q = e[a], e[b]
            if p == q:
                continue
            sign = 1
            if p < q:
                p, q, sign = q, p, -1
            for t in range(p - q):
                new = list(e)
                if sign == 1:
                    new[a], new[b] = p - 1 - t, q + t
                else:
                    new[a], new[b] = q + t, p - 1 - t
                key = tuple(new)
                out[key] = out.get(key, 0) + sign * c
        return SparsePoly(self.nvars, out)


def _trim(w: Sequence[int]) -> tuple:
    w = list(complete_permutation(w))
    while w and w[-1] == len(w):
        w.pop()
    return tuple(w)


def longest_element(n: int) -> tuple:
    return tuple(range(n, 0, -1))


def schubert_polynomial(w: Sequence[int], strategy: str = "smallest",
                        max_n: int = MAX_N) -> SparsePoly:
    """``S_w`` in ``n`` variables, where ``n`` is the size of ``w`` after
    dropping trailing fixed points.

    Starts from ``x_1^{n-1} ... x_{n-1}`` at the longest element and walks
    down by ``S_w = d_i S_{w s_i}`` for an ascent ``i`` of ``w``; ``strategy``
    picks the smallest or largest ascent at every step.
    """
    if strategy not in ("smallest", "largest"):
        raise ValueError(f"unknown strategy {strategy!r}")
    w = _trim(w)
    if len(w) > max_n:
        raise ValueError(f"permutation of size {len(w)} exceeds budget n <= {max_n}")
    return _schubert(w, len(w), strategy)


@lru_cache(maxsize=None)
def _schubert(w: tuple, n: int, strategy: str) -> SparsePoly:
    if n == 0:
        return SparsePoly.one(0)
    ascents = [i for i in range(1, n) if w[i - 1] < w[i]]
    if not ascents:
        return SparsePoly.monomial(tuple(n - k for k in range(1, n + 1)))
    i = ascents[0] if strategy == "smallest" else ascents[-1]
    up = list(w)
    up[i - 1], up[i] = up[i], up[i - 1]
    return _schubert(tuple(up), n, strategy).divided_difference(i)


def coefficient_oracle(w: Sequence[int], alpha: Sequence[int]) -> int:
    return schubert_polynomial(w).coefficient(alpha)


def principal_specialization(w: Sequence[int]) -> int:
    return schubert_polynomial(w).evaluate_ones()
