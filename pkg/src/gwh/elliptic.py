"""The stationary theory of an elliptic target.

Two pipelines produce the n-point function ``F_E(z_1..z_n; q)``:

* the trace ``sum_lam q^|lam| prod_i e(lam, z_i)``;
* the theta-determinant formula, a sum over orderings of the points of a
  determinant of theta derivatives divided by theta at partial sums.

Series in ``z`` carry :class:`QSeries` coefficients.  The global ``q^(1/8)`` of
the theta function is kept apart as an integer number of eighths; the
determinant formula is homogeneous in theta, so it cancels.

Fixed-insertion series ``(q)_inf sum_d q^d <prod tau_{k_i}>_d`` are fitted
against monomials in ``E2, E4, E6``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Sequence

from .fock import WedgeOperator, trace_qH
from .gw import stationary_disconnected
from .series import LaurentSeries, MultiSeries, QSeries, SeriesError, series_invert
from .shifted import zeta_negative

__all__ = [
    "euler_function",
    "eisenstein",
    "weight_monomials",
    "ThetaSeries",
    "theta_series",
    "elliptic_npoint_trace",
    "elliptic_series",
    "theta_determinant_npoint",
    "QuasimodularFit",
    "NotQuasimodular",
    "quasimodularity_fit",
    "stationary_quasimodular_series",
]


def euler_function(D: int) -> QSeries:
    """``(q)_inf = prod_{n >= 1} (1 - q^n)`` through ``q^D``."""
    result = QSeries([1], D)
    for n in range(1, D + 1):
        result = result * (QSeries([1], D) - QSeries.monomial(n, D))
    return result


def eisenstein(k: int, D: int) -> QSeries:
    """``E_k = zeta(1-k)/2 + sum_n sigma_{k-1}(n) q^n`` for even ``k >= 2``."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein series are used for even k >= 2")
    coeffs = [zeta_negative(k - 1) / 2]
    for n in range(1, D + 1):
        coeffs.append(Fraction(sum(d ** (k - 1) for d in range(1, n + 1) if n % d == 0)))
    return QSeries(coeffs)


def weight_monomials(weight: int) -> list[tuple[int, int, int]]:
    """Exponents ``(a, b, c)`` of ``E2^a E4^b E6^c`` with ``2a + 4b + 6c = weight``."""
    if weight < 0 or weight % 2:
        return []
    out = []
    for c in range(weight // 6, -1, -1):
        for b in range((weight - 6 * c) // 4, -1, -1):
            rest = weight - 6 * c - 4 * b
            out.append((rest // 2, b, c))
    return sorted(out, reverse=True)


# -- theta --------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaSeries:
    """``Theta(z) = q^(eighths/8) * series``; ``series`` has :class:`QSeries` coefficients."""

    series: LaurentSeries
    eighths: int = field(default=1)


def theta_series(z_order: int, q_order: int) -> ThetaSeries:
    """The odd theta function ``sum_n (-1)^n q^((n+1/2)^2/2) e^((n+1/2) z)``.

    Pairing ``n`` with ``-n-1`` gives
    ``q^(1/8) sum_{n >= 0} (-1)^n q^(n(n+1)/2) sigma((2n+1) z)``.
    """
    coeffs: list = []
    for m in range(z_order):
        if m % 2 == 0:
            coeffs.append(QSeries([0], q_order))
            continue
        cs = [Fraction(0)] * (q_order + 1)
        n = 0
        while n * (n + 1) // 2 <= q_order:
            cs[n * (n + 1) // 2] += (-1) ** n * 2 * Fraction(2 * n + 1, 2) ** m / factorial(m)
            n += 1
        coeffs.append(QSeries(cs))
    return ThetaSeries(LaurentSeries(coeffs, 0), 1)


def _derivative(f: LaurentSeries, times: int = 1) -> LaurentSeries:
    """Derivative of a power series (``f.low == 0``), ``times`` times."""
    if f.low != 0:
        raise SeriesError("derivative is implemented for power series only")
    cs = list(f.coeffs)
    for _ in range(times):
        cs = [c * i for i, c in enumerate(cs)][1:]
    return LaurentSeries(cs, 0)


def _as_multi(c, nvars: int, order: int) -> MultiSeries:
    return MultiSeries.constant(nvars, c, order)


def _theta_at(
    theta: LaurentSeries, derivs: dict, m: int, form: tuple[int, ...], order: int
) -> MultiSeries:
    """``Theta^(m)(L) / m!`` as a series in the variables (``q^(1/8)`` dropped)."""
    if m not in derivs:
        derivs[m] = _derivative(theta, m) * Fraction(1, factorial(m))
    f = derivs[m]
    if not any(form):
        return _as_multi(f[0], len(form), order)
    return f.substitute_linear(form, order)


def _det(matrix: list[list[MultiSeries]]) -> MultiSeries:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def theta_determinant_npoint(n: int, z_order: int, q_order: int) -> MultiSeries:
    """``F_E(z_1..z_n; q)`` from the theta-determinant formula, below total degree ``z_order``.

    For each ordering of the points the matrix entry ``(i, j)`` is
    ``Theta^(j-i+1)(z_1 + ... + z_(n-j)) / (j-i+1)!`` (zero when ``j-i+1 < 0``)
    and the denominator is ``Theta(z_1) Theta(z_1+z_2) ... Theta(z_1+...+z_n)``.

    Poles along partial sums of two or more points cancel in the sum, so all
    terms are put over the common denominator ``prod_S Theta(Sigma_S)``.  A
    factor ``Theta(w) = w U(w)`` with ``U`` invertible is removed by multiplying
    by ``1/U`` and dividing exactly by the linear form.
    """
    if n < 1:
        raise ValueError("the determinant formula needs at least one point")
    if n > 3:
        raise ValueError("the determinant formula is limited to n <= 3")
    forms_needed = set()
    orderings = list(permutations(range(n)))
    partials_by_perm = []
    for perm in orderings:
        partial, partials = [0] * n, []
        for i in perm:
            partial = list(partial)
            partial[i] = 1
            partials.append(tuple(partial))
        partials_by_perm.append(partials)
        forms_needed.update(partials)
    forms = sorted(forms_needed, key=lambda f: (sum(f), f))
    inner = z_order + 2 * n + len(forms) + 1
    theta = theta_series(inner + n + 2, q_order)
    T = theta.series
    derivs: dict = {}
    numerator = MultiSeries.zero(n, inner)
    # q^(1/8) bookkeeping: every term must carry as many thetas as the denominator
    eighths_den = theta.eighths * len(forms)
    for perm, partials in zip(orderings, partials_by_perm):
        prefix = [tuple(0 for _ in range(n))] + partials
        matrix = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                m = j - i + 1
                if m < 0:
                    row.append(MultiSeries.zero(n, inner))
                else:
                    row.append(_theta_at(T, derivs, m, prefix[n - j], inner))
            matrix.append(row)
        term = _det(matrix)
        eighths_num = theta.eighths * n
        for f in forms:
            if f not in partials:
                term = term * _theta_at(T, derivs, 0, f, inner)
                eighths_num += theta.eighths
        if eighths_num != eighths_den:
            raise SeriesError("the determinant formula is not homogeneous in theta")
        numerator = numerator + term
    u_inverse = series_invert(T.shift(-1))
    result = numerator
    for f in forms:
        if sum(f) >= 2:
            result = result * u_inverse.substitute_linear(f, result.order)
            result = result.divide_linear(f)
    for f in forms:
        if sum(f) == 1:
            result = result * series_invert(T).to_multi(n, f.index(1))
    result = result * euler_function(q_order).inverse()
    if result.order < z_order:
        raise SeriesError(f"precision lost: known below {result.order}, wanted {z_order}")
    return result.truncate(z_order)


def elliptic_npoint_trace(n: int, z_order: int, q_order: int) -> MultiSeries:
    """``tr q^H prod_i E_0(z_i)`` as a series with :class:`QSeries` coefficients."""
    ops = [WedgeOperator.E(0, i, n) for i in range(n)]
    by_degree = trace_qH(ops, q_order, z_order)
    exps = set()
    for series in by_degree.values():
        exps.update(series.terms)
    terms = {}
    for e in exps:
        terms[e] = QSeries(
            [by_degree[d].terms.get(e, Fraction(0)) for d in range(q_order + 1)]
        )
    return MultiSeries(n, terms, z_order)


def elliptic_series(ks: Sequence[int], q_order: int) -> QSeries:
    """``sum_d q^d <prod tau_{k_i}>^E_d`` (disconnected) through ``q^q_order``."""
    return QSeries([stationary_disconnected(1, d, ks) for d in range(q_order + 1)])


# -- quasimodularity ----------------------------------------------------------


class NotQuasimodular(ArithmeticError):
    pass


def _monomial_series(exps: tuple[int, int, int], D: int) -> QSeries:
    out = QSeries([1], D)
    for k, a in zip((2, 4, 6), exps):
        for _ in range(a):
            out = out * eisenstein(k, D)
    return out


def _rank_solve(rows: list[list[Fraction]], rhs: list[Fraction], m: int) -> list[Fraction]:
    """Exact solution of an overdetermined consistent system with full column rank."""
    a = [row[:] + [b] for row, b in zip(rows, rhs)]
    r = 0
    for col in range(m):
        pivot = next((i for i in range(r, len(a)) if a[i][col]), None)
        if pivot is None:
            raise NotQuasimodular("underdetermined: too few coefficients for this weight")
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    for i in range(r, len(a)):
        if a[i][m]:
            raise NotQuasimodular("not quasimodular at this weight")
    return [a[i][m] for i in range(m)]


class QuasimodularFit:
    """Exact fit of a q-series on the weight-``w`` monomials in ``E2, E4, E6``.

    ``fit`` solves on ``q^0 .. q^(D - holdout)`` and then demands that the last
    ``holdout`` coefficients are reproduced exactly.  After fitting,
    ``coef_`` maps exponent triples ``(a, b, c)`` of ``E2^a E4^b E6^c`` to
    rationals.
    """

    def __init__(self, weight: int, holdout: int = 3):
        self.weight = weight
        self.holdout = holdout
        self.coef_: dict[tuple[int, int, int], Fraction] | None = None

    def fit(self, series: QSeries) -> "QuasimodularFit":
        monomials = weight_monomials(self.weight)
        D = series.D
        if not monomials:
            if any(series.coeffs):
                raise NotQuasimodular("not quasimodular at this weight")
            self.coef_ = {}
            return self
        fit_top = D - self.holdout
        if fit_top + 1 < len(monomials):
            raise NotQuasimodular(
                f"need at least {len(monomials) + self.holdout} coefficients, have {D + 1}"
            )
        basis = [_monomial_series(e, D) for e in monomials]
        rows = [[b[i] for b in basis] for i in range(fit_top + 1)]
        rhs = [series[i] for i in range(fit_top + 1)]
        solution = _rank_solve(rows, rhs, len(monomials))
        self.coef_ = {e: c for e, c in zip(monomials, solution) if c}
        predicted = self.predict(D)
        for i in range(fit_top + 1, D + 1):
            if predicted[i] != series[i]:
                raise NotQuasimodular("not quasimodular at this weight: held-out mismatch")
        return self

    def predict(self, D: int) -> QSeries:
        if self.coef_ is None:
            raise ValueError("fit first")
        total = QSeries([0], D)
        for e, c in self.coef_.items():
            total = total + _monomial_series(e, D) * c
        return total

    def to_json(self) -> list[dict]:
        return [
            {"E2": a, "E4": b, "E6": c, "coefficient": str(x)}
            for (a, b, c), x in sorted((self.coef_ or {}).items(), reverse=True)
        ]


def quasimodularity_fit(series: QSeries, weight: int, holdout: int = 3) -> dict:
    """Fit ``series`` at ``weight``; raises :class:`NotQuasimodular` on failure."""
    return QuasimodularFit(weight, holdout).fit(series).coef_


def stationary_quasimodular_series(ks: Sequence[int], q_order: int) -> QSeries:
    """``(q)_inf sum_d q^d <prod tau_{k_i}>^E_d``, expected in weight ``sum(k_i + 2)``."""
    return euler_function(q_order) * elliptic_series(ks, q_order)
