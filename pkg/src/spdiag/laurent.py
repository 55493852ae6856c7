"""Exact Laurent polynomials in x_1..x_n with integer coefficients."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .errors import InexactDivision

Exps = tuple[int, ...]


@lru_cache(maxsize=None)
def _ring(n: int):
    from sympy import ZZ
    from sympy.polys.rings import ring

    R, *_ = ring([f"x{i}" for i in range(1, n + 1)], ZZ)
    return R


class LaurentPoly:
    """Immutable map from exponent vectors to nonzero integer coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exps, int] | Iterable = ()):
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exps, int] = {}
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != n:
                raise ValueError("exponent vector of the wrong length")
            acc[e] = acc.get(e, 0) + int(c)
        self.terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int, n: int) -> "LaurentPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, i: int, n: int) -> "LaurentPoly":
        """The variable x_{i+1} (0-based index)."""
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Exps, c: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.n != self.n:
                raise ValueError("Laurent polynomials in different numbers of variables")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not Laurent in general")
        out = LaurentPoly.const(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient in the Laurent ring; raises InexactDivision if none exists."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self.terms:
            return self
        R = _ring(self.n)
        sa, sb = self.min_exponents(), other.min_exponents()
        A = R.from_dict({tuple(a - m for a, m in zip(e, sa)): c for e, c in self.terms.items()})
        B = R.from_dict({tuple(a - m for a, m in zip(e, sb)): c for e, c in other.terms.items()})
        q, r = A.div(B)
        if r:
            raise InexactDivision(f"{self} is not divisible by {other}")
        shift = [a - b for a, b in zip(sa, sb)]
        return LaurentPoly(self.n, {tuple(int(v) + s for v, s in zip(e, shift)): int(c)
                                    for e, c in q.items()})

    __truediv__ = exact_div

    # -- structure --------------------------------------------------------
    def min_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.n
        return tuple(min(e[i] for e in self.terms) for i in range(self.n))

    def d_vector(self) -> Exps:
        """Denominator vector: minus the smallest exponent of each variable."""
        return tuple(-m for m in self.min_exponents())

    def numerator(self) -> "LaurentPoly":
        """The polynomial N with self = N / x^d for the monomial of d_vector."""
        m = self.min_exponents()
        return LaurentPoly(self.n, {tuple(a - b for a, b in zip(e, m)): c for e, c in self.terms.items()})

    def is_polynomial(self) -> bool:
        return all(min(e, default=0) >= 0 for e in self.terms)

    def evaluate_mod(self, point: Iterable[int], p: int) -> int:
        pt = tuple(point)
        total = 0
        for e, c in self.terms.items():
            v = c % p
            for x, k in zip(pt, e):
                if k:
                    v = v * pow(x, k, p) % p
            total += v
        return total % p

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.n)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def num_terms(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}"
                            for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
