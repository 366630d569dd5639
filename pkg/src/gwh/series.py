"""Exact truncated formal series.

Three containers live here:

* :class:`LaurentSeries` -- one variable, finitely many negative powers.
* :class:`MultiSeries` -- several variables, truncated by total degree.
* :class:`QSeries` -- power series in ``q`` known through ``q^D``.

Coefficients default to :class:`fractions.Fraction` but any exact ring element
supporting ``+``, ``*``, unary ``-`` and truth testing works (the elliptic code
uses :class:`QSeries` coefficients).  Every container records the exclusive
order up to which its coefficients are known; arithmetic propagates that order
and never reports a coefficient it cannot certify.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping

__all__ = [
    "LaurentSeries",
    "MultiSeries",
    "QSeries",
    "SeriesError",
    "series_mul",
    "series_invert",
    "exp_log_transform",
    "formal_log",
    "formal_exp",
]


class SeriesError(ArithmeticError):
    pass


def _reciprocal(c):
    inverse = getattr(c, "inverse", None)
    if inverse is not None:
        return inverse()
    return Fraction(1) / c


def _as_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class QSeries:
    """Power series in ``q`` with exact coefficients through ``q^D``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, D: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if D is not None:
            cs = (cs + [Fraction(0)] * (D + 1))[: D + 1]
        if not cs:
            raise SeriesError("QSeries needs at least the q^0 coefficient")
        self.coeffs = tuple(cs)

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def monomial(cls, exponent: int, D: int, coeff=1) -> "QSeries":
        cs = [Fraction(0)] * (D + 1)
        if exponent <= D:
            cs[exponent] = Fraction(coeff)
        return cls(cs)

    def __getitem__(self, i: int) -> Fraction:
        if i > self.D:
            raise SeriesError(f"q^{i} is beyond the truncation q^{self.D}")
        return self.coeffs[i] if i >= 0 else Fraction(0)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            D = min(self.D, other.D)
            return self.coeffs[: D + 1] == other.coeffs[: D + 1]
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QSeries({[str(c) for c in self.coeffs]})"

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries([other], self.D)

    def __add__(self, other):
        if not isinstance(other, (QSeries, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        D = min(self.D, other.D)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(D + 1)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (QSeries, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs])
        if not isinstance(other, QSeries):
            return NotImplemented
        D = min(self.D, other.D)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (D + 1)
        for i in range(D + 1):
            ai = a[i]
            if ai:
                for j in range(D + 1 - i):
                    out[i + j] += ai * b[j]
        return QSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c / other for c in self.coeffs])
        if isinstance(other, QSeries):
            return self * other.inverse()
        return NotImplemented

    def inverse(self) -> "QSeries":
        a = self.coeffs
        if not a[0]:
            raise SeriesError("not invertible: zero constant term")
        inv0 = 1 / a[0]
        b = [inv0]
        for m in range(1, self.D + 1):
            s = sum((a[k] * b[m - k] for k in range(1, m + 1)), Fraction(0))
            b.append(-s * inv0)
        return QSeries(b)


class LaurentSeries:
    """Univariate truncated Laurent series.

    ``coeffs[i]`` is the coefficient of ``z**(low + i)``; coefficients are known
    for all exponents strictly below ``order = low + len(coeffs)``.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs: Iterable, low: int = 0, order: int | None = None):
        cs = [_as_coeff(c) for c in coeffs]
        if order is not None:
            n = order - low
            if n < 0:
                raise SeriesError("truncation order below the lowest exponent")
            cs = (cs + [Fraction(0)] * n)[:n]
        self.low = low
        self.coeffs = cs

    @property
    def order(self) -> int:
        return self.low + len(self.coeffs)

    @classmethod
    def from_dict(cls, terms: Mapping[int, object], order: int) -> "LaurentSeries":
        low = min([e for e, c in terms.items() if c] + [order])
        cs = [Fraction(0)] * (order - low)
        for e, c in terms.items():
            if e < order and c:
                cs[e - low] = _as_coeff(c)
        return cls(cs, low)

    @classmethod
    def exp_linear(cls, a, order: int) -> "LaurentSeries":
        """``exp(a*z)`` through ``z^(order-1)``."""
        a = Fraction(a)
        cs, term = [], Fraction(1)
        for k in range(max(order, 0)):
            cs.append(term)
            term = term * a / (k + 1)
        return cls(cs, 0)

    @classmethod
    def one(cls, order: int) -> "LaurentSeries":
        return cls([1], 0, order)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.low + i
        return self.order

    def __getitem__(self, e: int):
        if e >= self.order:
            raise SeriesError(f"z^{e} is beyond the truncation order {self.order}")
        if e < self.low:
            return Fraction(0)
        return self.coeffs[e - self.low]

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.low + i, c

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend truncation {self.order} to {order}")
        return LaurentSeries(self.coeffs, self.low, max(order, self.low))

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``z**k``."""
        return LaurentSeries(self.coeffs, self.low + k)

    def scale_variable(self, a) -> "LaurentSeries":
        """Substitute ``z -> a*z`` for a nonzero rational ``a``."""
        a = Fraction(a)
        if not a:
            raise SeriesError("scale factor must be nonzero")
        return LaurentSeries(
            [c * a ** (self.low + i) for i, c in enumerate(self.coeffs)], self.low
        )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries([other], 0, max(self.order, 1))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        low = min(self.low, other.low, order)
        cs = [0] * (order - low)
        for e, c in self.items():
            if e < order:
                cs[e - low] = c
        for e, c in other.items():
            if e < order:
                cs[e - low] = cs[e - low] + c
        return LaurentSeries(cs, low)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction, QSeries)):
            return LaurentSeries([c * other for c in self.coeffs], self.low)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QSeries)):
            return LaurentSeries([other * c for c in self.coeffs], self.low)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return series_mul(self, series_invert(other))
        if isinstance(other, (int, Fraction)):
            return LaurentSeries([c / other for c in self.coeffs], self.low)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return series_invert(self) ** (-n)
        result = LaurentSeries.one(self.order - self.valuation())
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        low = min(self.low, other.low)
        return all(
            (self[e] if e >= self.low else 0) == (other[e] if e >= other.low else 0)
            for e in range(low, order)
        )

    __hash__ = None

    def __repr__(self):
        terms = " + ".join(f"({c})*z^{e}" for e, c in self.items()) or "0"
        return f"{terms} + O(z^{self.order})"

    def to_multi(self, nvars: int, var: int) -> "MultiSeries":
        """Embed as a series in variable ``var`` of an ``nvars``-variable ring."""
        terms = {}
        for e, c in self.items():
            exps = [0] * nvars
            exps[var] = e
            terms[tuple(exps)] = c
        return MultiSeries(nvars, terms, self.order)

    def substitute_linear(self, coeffs: Iterable[int], order: int) -> "MultiSeries":
        """Substitute ``z -> sum(coeffs[i] * z_i)``.

        Negative powers are allowed only when the linear form is a multiple of
        a single variable; otherwise the result would not be a Laurent series.
        """
        lin = tuple(int(a) for a in coeffs)
        nvars = len(lin)
        support = [i for i, a in enumerate(lin) if a]
        v = self.valuation()
        if not support:
            if v < 0:
                raise SeriesError("pole at the origin of a zero linear form")
            return MultiSeries.constant(nvars, self[0] if self.order > 0 else 0, order)
        if len(support) == 1:
            i = support[0]
            return self.scale_variable(lin[i]).to_multi(nvars, i).truncate(
                min(order, self.order)
            )
        if v < 0:
            raise SeriesError("negative powers of a non-monomial linear form")
        order = min(order, self.order)
        result = MultiSeries.zero(nvars, order)
        base = MultiSeries(
            nvars,
            {tuple(int(j == i) for j in range(nvars)): lin[i] for i in support},
            order,
        )
        power = MultiSeries.constant(nvars, 1, order)
        for e in range(order):
            c = self[e]
            if c:
                result = result + power * c
            power = power * base
        return result


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Exact product, truncated to the largest order both factors certify."""
    va, vb = a.valuation(), b.valuation()
    order = min(a.order + vb, b.order + va)
    low = a.low + b.low
    if order <= low:
        return LaurentSeries([], order)
    n = order - low
    out = [0] * n
    bc = b.coeffs
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j in range(min(len(bc), n - i)):
            y = bc[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return LaurentSeries(out, low)


def series_invert(a: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse of a Laurent series with a known leading term."""
    v = a.valuation()
    if v >= a.order:
        raise SeriesError("not invertible: no nonzero coefficient below the truncation")
    rel = a.order - v
    c = [a[v + i] for i in range(rel)]
    inv0 = _reciprocal(c[0])
    b = [inv0]
    for m in range(1, rel):
        s = 0
        for k in range(1, m + 1):
            if c[k]:
                s = s + c[k] * b[m - k]
        b.append(-(s * inv0) if s else Fraction(0))
    return LaurentSeries(b, -v)


class MultiSeries:
    """Truncated series in ``nvars`` variables.

    ``terms`` maps exponent tuples (entries may be negative) to coefficients;
    every monomial of total degree below ``order`` is known, everything at or
    above it is unknown.
    """

    __slots__ = ("nvars", "terms", "order")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None, order: int):
        self.nvars = nvars
        self.order = order
        self.terms = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise SeriesError(f"exponent {e} does not have {nvars} entries")
            if sum(e) < order and c:
                self.terms[tuple(e)] = _as_coeff(c)

    @classmethod
    def zero(cls, nvars: int, order: int) -> "MultiSeries":
        return cls(nvars, {}, order)

    @classmethod
    def constant(cls, nvars: int, c, order: int) -> "MultiSeries":
        return cls(nvars, {(0,) * nvars: c}, order)

    @classmethod
    def variable(cls, nvars: int, i: int, order: int) -> "MultiSeries":
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1}, order)

    @classmethod
    def product_of_univariate(cls, factors: Iterable[LaurentSeries], order: int) -> "MultiSeries":
        """``prod_i f_i(z_i)``; each factor lives in its own variable."""
        factors = list(factors)
        n = len(factors)
        result = MultiSeries.constant(n, 1, order)
        for i, f in enumerate(factors):
            result = result * f.to_multi(n, i)
        return result.truncate(min(order, result.order))

    def valuation(self) -> int:
        return min([sum(e) for e in self.terms] + [self.order])

    def coefficient(self, exps: Iterable[int]):
        exps = tuple(exps)
        if sum(exps) >= self.order:
            raise SeriesError(f"monomial {exps} is beyond total order {self.order}")
        return self.terms.get(exps, Fraction(0))

    __getitem__ = coefficient

    def items(self):
        return sorted(self.terms.items())

    def truncate(self, order: int) -> "MultiSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend truncation {self.order} to {order}")
        return MultiSeries(self.nvars, self.terms, order)

    def homogeneous_part(self, degree: int) -> dict:
        if degree >= self.order:
            raise SeriesError(f"degree {degree} is beyond total order {self.order}")
        return {e: c for e, c in self.terms.items() if sum(e) == degree}

    def embed(self, nvars: int, positions: Iterable[int]) -> "MultiSeries":
        """Rename variable ``i`` to ``positions[i]`` inside ``nvars`` variables."""
        positions = list(positions)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for i, p in enumerate(positions):
                new[p] = e[i]
            terms[tuple(new)] = c
        return MultiSeries(nvars, terms, self.order)

    def shift(self, exps: Iterable[int]) -> "MultiSeries":
        """Multiply by the monomial ``prod z_i**exps[i]``."""
        exps = tuple(exps)
        d = sum(exps)
        terms = {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        return MultiSeries(self.nvars, terms, self.order + d)

    def _check(self, other: "MultiSeries"):
        if self.nvars != other.nvars:
            raise SeriesError(f"variable counts differ: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QSeries)):
            other = MultiSeries.constant(self.nvars, other, self.order)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MultiSeries(self.nvars, terms, order)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.nvars, {e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QSeries)):
            return MultiSeries(
                self.nvars, {e: c * other for e, c in self.terms.items()}, self.order
            )
        if not isinstance(other, MultiSeries):
            return NotImplemented
        self._check(other)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        terms: dict = {}
        rhs = [(e, sum(e), c) for e, c in other.terms.items()]
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, d2, c2 in rhs:
                if d1 + d2 >= order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                terms[e] = terms[e] + p if e in terms else p
        return MultiSeries(self.nvars, terms, order)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QSeries)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiSeries(
                self.nvars, {e: c / other for e, c in self.terms.items()}, self.order
            )
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise SeriesError("negative powers of a multivariate series")
        result = MultiSeries.constant(self.nvars, 1, self.order - self.valuation())
        for _ in range(n):
            result = result * self
        return result

    def agrees_with(self, other: "MultiSeries", order: int | None = None) -> bool:
        self._check(other)
        bound = min(self.order, other.order)
        if order is not None:
            if order > bound:
                raise SeriesError(f"cannot compare through order {order}; known to {bound}")
            bound = order
        keys = {e for e in self.terms if sum(e) < bound} | {
            e for e in other.terms if sum(e) < bound
        }
        zero = Fraction(0)
        for e in keys:
            diff = self.terms.get(e, zero) - other.terms.get(e, zero)
            if diff:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.agrees_with(other)

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})*z^{e}" for e, c in self.items()) or "0"
        return f"MultiSeries[{self.nvars}]({body} + O(deg {self.order}))"

    def map_coefficients(self, fn: Callable) -> "MultiSeries":
        return MultiSeries(self.nvars, {e: fn(c) for e, c in self.terms.items()}, self.order)

    def divide_linear(self, coeffs: Iterable[int]) -> "MultiSeries":
        """Exact division by the linear form ``sum(coeffs[i] * z_i)``.

        Raises :class:`SeriesError` when the division leaves a remainder.  The
        quotient is known one degree less far than the dividend.
        """
        lin = tuple(int(a) for a in coeffs)
        support = [i for i, a in enumerate(lin) if a]
        if not support:
            raise SeriesError("division by the zero linear form")
        piv = support[0]
        a = Fraction(lin[piv])
        rest = {
            tuple(int(j == i) for j in range(self.nvars)): Fraction(lin[i])
            for i in support[1:]
        }
        # Group by the remaining exponents; divide as a polynomial in z_piv.
        by_rest: dict = {}
        for e, c in self.terms.items():
            key = e[:piv] + (0,) + e[piv + 1 :]
            by_rest.setdefault(e[piv], {})[key] = c
        if not by_rest:
            return MultiSeries.zero(self.nvars, self.order - 1)
        top = max(by_rest)
        bottom = min(by_rest)
        # P = (a z_piv + r) Q with Q = sum q_k z_piv^k; descend from the top.
        quotient: dict = {}
        carry: dict = {}
        for k in range(top, bottom - 1, -1):
            pk = dict(by_rest.get(k, {}))
            for e, c in carry.items():
                pk[e] = pk.get(e, 0) - c
            pk = {e: c for e, c in pk.items() if c}
            if k == bottom:
                if pk:
                    raise SeriesError("linear form does not divide the series")
                break
            qk = {e: c / a for e, c in pk.items()}
            quotient[k - 1] = qk
            carry = {}
            for e, c in qk.items():
                for r, rc in rest.items():
                    ne = tuple(x + y for x, y in zip(e, r))
                    carry[ne] = carry.get(ne, 0) + c * rc
        # Remainder check for bottom: any leftover at degree >= order is unknown, ignore.
        terms = {}
        for k, qk in quotient.items():
            for e, c in qk.items():
                ne = e[:piv] + (k,) + e[piv + 1 :]
                terms[ne] = c
        return MultiSeries(self.nvars, terms, self.order - 1)

    def exp(self) -> "MultiSeries":
        return exp_log_transform(self, "exp")

    def log(self) -> "MultiSeries":
        return exp_log_transform(self, "log")


def _is_power_series(f: MultiSeries) -> bool:
    return all(x >= 0 for e in f.terms for x in e)


def exp_log_transform(f: MultiSeries, direction: str) -> MultiSeries:
    """Formal ``exp`` (constant term 0) or ``log`` (constant term 1)."""
    if not _is_power_series(f):
        raise SeriesError("exp/log need a power series without negative exponents")
    const = f.terms.get((0,) * f.nvars, Fraction(0))
    one = MultiSeries.constant(f.nvars, 1, f.order)
    if direction == "exp":
        if const:
            raise SeriesError("exp needs constant term 0")
        return formal_exp(f, one, max(f.order, 1))
    if direction == "log":
        if const != 1:
            raise SeriesError("log needs constant term 1")
        return formal_log(f - one, max(f.order, 1))
    raise ValueError(f"direction must be 'exp' or 'log', not {direction!r}")


def formal_log(x, nmax: int):
    """``log(1 + x)`` for nilpotent-enough ``x``: the sum stops after ``nmax`` powers."""
    result = x
    power = x
    for j in range(2, nmax + 1):
        power = power * x
        term = power * Fraction((-1) ** (j + 1), j)
        result = result + term
    return result


def formal_exp(x, one, nmax: int):
    """``exp(x)`` for nilpotent-enough ``x``: the sum stops after ``nmax`` powers."""
    result = one + x
    power = x
    for j in range(2, nmax + 1):
        power = power * x
        result = result + power * Fraction(1, factorial(j))
    return result
