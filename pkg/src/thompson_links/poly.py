"""Exact one- and two-variable integer polynomials.

``LaurentPoly`` covers the bracket variable ``A``, the Jones variable
``t^{1/2}`` and ordinary polynomials in ``Q`` (non-negative exponents only).
Coefficients are Python ints, so arithmetic is exact at any size.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k x^k`` with integer coefficients."""

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "A"):
        self._terms = {int(k): int(c) for k, c in (terms or {}).items() if c}
        self.var = var
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c: int, var: str = "A") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, k: int, c: int = 1, var: str = "A") -> "LaurentPoly":
        return cls({k: c}, var)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[int, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int:
        return min(self._terms)

    def max_degree(self) -> int:
        return max(self._terms)

    def coeff(self, k: int) -> int:
        return self._terms.get(k, 0)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()}, self.var)

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
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers only for monomials")
            (k, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("negative powers only for unit monomials")
            return LaurentPoly({k * n: c if n % 2 else 1}, self.var)
        result = LaurentPoly({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``x^k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()}, self.var)

    def substitute_power(self, factor: int) -> "LaurentPoly":
        """Return p(x^factor) (use a negative factor to invert)."""
        return LaurentPoly({e * factor: c for e, c in self._terms.items()}, self.var)

    def rescale_exponents(self, divisor: int, var: str | None = None) -> "LaurentPoly":
        """Divide every exponent by ``divisor``; exponents must be divisible."""
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(e, divisor)
            if r:
                raise ValueError(f"exponent {e} not divisible by {divisor}")
            out[q] = c
        return LaurentPoly(out, var or self.var)

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division treating both as polynomials after shifting to degree 0.

        Only exact when the leading coefficient of ``other`` is a unit.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly({}, self.var), LaurentPoly({}, self.var)
        lo_self, lo_other = self.min_degree(), other.min_degree()
        num = self.shift(-lo_self)._terms
        den = other.shift(-lo_other)._terms
        dlead_k = max(den)
        dlead = den[dlead_k]
        rem = dict(num)
        quot: dict[int, int] = {}
        while rem and max(rem) >= dlead_k:
            k = max(rem)
            c = rem[k]
            if c % dlead:
                break
            q = c // dlead
            quot[k - dlead_k] = q
            for dk, dc in den.items():
                kk = k - dlead_k + dk
                rem[kk] = rem.get(kk, 0) - q * dc
                if rem[kk] == 0:
                    del rem[kk]
        shift = lo_self - lo_other
        return (LaurentPoly(quot, self.var).shift(shift),
                LaurentPoly(rem, self.var).shift(lo_self))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        q, r = self.divmod(other)
        return q if r.is_zero() else None

    def __call__(self, x):
        if isinstance(x, int) and not isinstance(x, bool) and min(self._terms, default=0) >= 0:
            return sum(c * x ** k for k, c in self._terms.items())
        x = Fraction(x)
        return sum((c * x ** k for k, c in self._terms.items()), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self._terms.items()))!r}, var={self.var!r})"

    def format(self, var: str | None = None, exponent_scale: Fraction | int = 1) -> str:
        """Human-readable string, highest degree first.

        ``exponent_scale`` lets a polynomial in ``t^{1/2}`` print with
        exponents of ``t`` (scale 1/2).
        """
        var = var or self.var
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            e = Fraction(k) * exponent_scale
            if e == 0:
                mono = ""
            elif e == 1:
                mono = var
            else:
                e_str = str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"
                mono = f"{var}^{e_str}" if e.denominator == 1 and e > 0 else f"{var}^({e_str})"
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = format


class TuttePoly:
    """Two-variable integer polynomial in ``x`` and ``y``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._terms = {(int(i), int(j)): int(c) for (i, j), c in (terms or {}).items() if c}

    @classmethod
    def one(cls) -> "TuttePoly":
        return cls({(0, 0): 1})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def __add__(self, other: "TuttePoly") -> "TuttePoly":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TuttePoly(out)

    def __mul__(self, other: "TuttePoly") -> "TuttePoly":
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return TuttePoly(out)

    def times_x(self, k: int = 1) -> "TuttePoly":
        return TuttePoly({(i + k, j): c for (i, j), c in self._terms.items()})

    def times_y(self, k: int = 1) -> "TuttePoly":
        return TuttePoly({(i, j + k): c for (i, j), c in self._terms.items()})

    def __call__(self, x, y):
        return sum(c * x ** i * y ** j for (i, j), c in self._terms.items())

    def specialize_x(self, x_poly: LaurentPoly, y: int) -> LaurentPoly:
        """Substitute ``x -> x_poly`` (a polynomial) and ``y -> y`` (an int)."""
        out = LaurentPoly({}, x_poly.var)
        for (i, j), c in self._terms.items():
            out = out + (x_poly ** i) * (c * y ** j)
        return out

    def __eq__(self, other):
        return isinstance(other, TuttePoly) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"TuttePoly({dict(sorted(self._terms.items()))!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j) in sorted(self._terms, reverse=True):
            c = self._terms[(i, j)]
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if s
            )
            body = mono if (abs(c) == 1 and mono) else (f"{abs(c)}*{mono}" if mono else str(abs(c)))
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def q_poly(terms: Mapping[int, int]) -> LaurentPoly:
    """Ordinary integer polynomial in ``Q``."""
    return LaurentPoly(terms, var="Q")


IntPoly = LaurentPoly
