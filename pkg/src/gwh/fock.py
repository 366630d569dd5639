"""The charge-zero infinite wedge, truncated by energy.

A basis vector ``v_lam`` is stored as its partition.  Its occupied levels are
the half-integers ``s_i = lam_i - i + 1/2`` (``i >= 1``); the vacuum fills
every negative half-integer.  Operators are realized by their action on these
level sets:

* ``E_r(z) = sum_s e^{z(s - r/2)} E_{s-r, s}`` for ``r != 0`` moves one occupied
  level ``s`` to a vacant ``s - r``, with sign ``(-1)**(occupied levels
  strictly between)``;
* ``E_0(z)`` is diagonal with eigenvalue ``e(lam, z)``;
* ``alpha_k = E_k(0)`` and ``P_k = k! [z^k] E_0(z)``.

Series coefficients are :class:`MultiSeries` in as many variables as the
caller needs; each ``E`` operator carries a linear form in those variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .partitions import Partition, enumerate_partitions
from .series import LaurentSeries, MultiSeries
from .shifted import e_series, inverse_sigma_series, p_k, sigma_series

__all__ = [
    "FockVector",
    "WedgeOperator",
    "CutoffExceeded",
    "apply_alpha",
    "apply_E",
    "apply_P",
    "apply_operator",
    "vacuum_expectation",
    "connected_vacuum_expectation",
    "commutator_check",
    "adjoint_check",
    "g_function",
    "trace_qH",
    "set_partitions",
]

_HALF = Fraction(1, 2)


class CutoffExceeded(ValueError):
    pass


class FockVector(Mapping):
    """Finite combination ``sum c_lam v_lam`` with all ``|lam| <= cutoff``."""

    def __init__(self, terms: Mapping | None = None, cutoff: int | None = None):
        self.cutoff = cutoff
        self._terms: dict[Partition, object] = {}
        for lam, c in (terms or {}).items():
            lam = Partition(lam)
            if cutoff is not None and lam.size > cutoff:
                raise CutoffExceeded(f"|{lam}| = {lam.size} exceeds the energy cutoff {cutoff}")
            if isinstance(c, int):
                c = Fraction(c)
            if lam in self._terms:
                c = self._terms[lam] + c
            self._terms[lam] = c
        self._terms = {lam: c for lam, c in self._terms.items() if _nonzero(c)}

    @classmethod
    def vacuum(cls, cutoff: int | None = None) -> "FockVector":
        return cls({Partition(): Fraction(1)}, cutoff)

    @classmethod
    def basis(cls, lam, cutoff: int | None = None) -> "FockVector":
        return cls({Partition(lam): Fraction(1)}, cutoff)

    def __getitem__(self, lam):
        return self._terms.get(Partition(lam), Fraction(0))

    def __iter__(self):
        return iter(sorted(self._terms, key=lambda p: (p.size, [-x for x in p])))

    def __len__(self):
        return len(self._terms)

    def __add__(self, other: "FockVector") -> "FockVector":
        terms = dict(self._terms)
        for lam, c in other.items():
            terms[lam] = terms[lam] + c if lam in terms else c
        return FockVector(terms, _min_cutoff(self.cutoff, other.cutoff))

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def scale(self, c) -> "FockVector":
        return FockVector({lam: x * c for lam, x in self._terms.items()}, self.cutoff)

    def pairing(self, other: "FockVector"):
        """Bilinear form with ``(v_lam, v_mu) = delta``."""
        total = Fraction(0)
        for lam, c in self._terms.items():
            if lam in other._terms:
                total = total + c * other._terms[lam]
        return total

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        keys = set(self._terms) | set(other._terms)
        return all(_equal(self[lam], other[lam]) for lam in keys)

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})*v{lam}" for lam, c in self.items()) or "0"
        return f"FockVector({body})"


def _min_cutoff(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _nonzero(c) -> bool:
    if isinstance(c, MultiSeries):
        return bool(c.terms)
    return bool(c)


def _equal(a, b) -> bool:
    if isinstance(a, MultiSeries) or isinstance(b, MultiSeries):
        if not isinstance(a, MultiSeries):
            a, b = b, a
        if not isinstance(b, MultiSeries):
            b = MultiSeries.constant(a.nvars, b, a.order)
        return a.agrees_with(b)
    return a == b


@dataclass(frozen=True)
class WedgeOperator:
    """``alpha_k``, ``E_r(L)`` with ``L`` a linear form in the variables, or ``P_k``."""

    kind: str
    index: int
    form: tuple[int, ...] | None = None

    @classmethod
    def alpha(cls, k: int) -> "WedgeOperator":
        if k == 0:
            raise ValueError("alpha_0 is not used")
        return cls("alpha", k)

    @classmethod
    def E(cls, r: int, var: int = 0, nvars: int = 1) -> "WedgeOperator":
        return cls("E", r, tuple(int(i == var) for i in range(nvars)))

    @classmethod
    def E_form(cls, r: int, form: Iterable[int]) -> "WedgeOperator":
        return cls("E", r, tuple(int(a) for a in form))

    @classmethod
    def P(cls, k: int) -> "WedgeOperator":
        return cls("P", k)

    @property
    def energy_shift(self) -> int:
        """Change of energy: ``alpha_k`` and ``E_k`` lower it by ``k``."""
        return 0 if self.kind == "P" else -self.index

    @property
    def diagonal(self) -> bool:
        return self.kind == "P" or (self.kind == "E" and self.index == 0)


# -- level-set moves --------------------------------------------------------


def _levels(lam: Partition, depth: int) -> list[Fraction]:
    n = len(lam) + depth
    return [(lam[i] if i < len(lam) else 0) - (i + 1) + _HALF for i in range(n)]


def _from_levels(levels: Sequence[Fraction]) -> Partition:
    ordered = sorted(levels, reverse=True)
    return Partition(p for p in (int(s + i - _HALF) for i, s in enumerate(ordered, start=1)) if p)


def _moves(lam: Partition, r: int) -> list[tuple[Fraction, Partition, int]]:
    """All ``(s, mu, sign)`` with ``E_{s-r,s} v_lam = sign * v_mu``."""
    levels = _levels(lam, abs(r) + 1)
    occupied = set(levels)
    floor = levels[-1]
    out = []
    for s in levels:
        t = s - r
        if t in occupied or t < floor:
            continue
        lo, hi = min(s, t), max(s, t)
        between = sum(1 for x in levels if lo < x < hi)
        new = [t if x == s else x for x in levels]
        out.append((s, _from_levels(new), -1 if between % 2 else 1))
    return out


def apply_alpha(k: int, v: FockVector) -> FockVector:
    """``alpha_k``: removes (``k > 0``) or adds (``k < 0``) a border strip of size ``|k|``."""
    if k == 0:
        raise ValueError("alpha_0 is not used")
    out: dict[Partition, object] = {}
    for lam, c in v.items():
        if v.cutoff is not None and lam.size - k > v.cutoff:
            raise CutoffExceeded(f"alpha_{k} v{lam} leaves the energy cutoff {v.cutoff}")
        for _, mu, sign in _moves(lam, k):
            term = c * sign
            out[mu] = out[mu] + term if mu in out else term
    return FockVector(out, v.cutoff)


def _exp_form(a: Fraction, form: tuple[int, ...], order: int) -> MultiSeries:
    return LaurentSeries.exp_linear(a, order).substitute_linear(form, order)


def _eigen_series(lam: Partition, form: tuple[int, ...], order: int) -> MultiSeries:
    """``e(lam, L)`` for a linear form ``L`` that is a multiple of one variable."""
    return e_series(lam, order + 1).substitute_linear(form, order)


def _times(c, series: MultiSeries):
    if isinstance(c, MultiSeries):
        return c * series
    return series * c


def apply_E(r: int, v: FockVector, order: int, form: Sequence[int] = (1,)) -> FockVector:
    """``E_r(L) v`` with coefficients in :class:`MultiSeries` truncated at ``order``.

    ``form`` is the linear form ``L`` in the series variables (one variable
    ``z`` by default).  For ``r = 0`` the form must involve one variable, as the
    eigenvalue has a pole along ``L = 0``.
    """
    form = tuple(int(a) for a in form)
    out: dict[Partition, object] = {}
    for lam, c in v.items():
        if r == 0:
            out[lam] = _times(c, _eigen_series(lam, form, order))
            continue
        if v.cutoff is not None and lam.size - r > v.cutoff:
            raise CutoffExceeded(f"E_{r} v{lam} leaves the energy cutoff {v.cutoff}")
        for s, mu, sign in _moves(lam, r):
            term = _times(c, _exp_form(s - Fraction(r, 2), form, order)) * sign
            out[mu] = out[mu] + term if mu in out else term
    return FockVector(out, v.cutoff)


def apply_P(k: int, v: FockVector) -> FockVector:
    """``P_k`` acts on ``v_lam`` by ``p_k(lam)``."""
    if k < 1:
        raise ValueError("P_k is used for k >= 1")
    return FockVector({lam: c * p_k(k, lam) for lam, c in v.items()}, v.cutoff)


def apply_operator(op: WedgeOperator, v: FockVector, order: int) -> FockVector:
    if op.kind == "alpha":
        return apply_alpha(op.index, v)
    if op.kind == "P":
        return apply_P(op.index, v)
    return apply_E(op.index, v, order, op.form)


def vacuum_expectation(ops: Sequence[WedgeOperator], order: int, nvars: int | None = None):
    """``<A> = (A v_0, v_0)`` for ``A = ops[0] ops[1] ... ops[-1]``.

    Returns a :class:`MultiSeries` in ``nvars`` variables (a rational if no
    operator carries a series).  The energy cutoff is the total energy the
    operators can add, so nothing is truncated; states that the remaining
    operators could not bring back to the vacuum are dropped as they go.
    """
    ops = list(ops)
    if sum(op.energy_shift for op in ops) != 0:
        return _zero_like(ops, order, nvars)
    series_ops = [op for op in ops if op.kind == "E"]
    if nvars is None:
        nvars = len(series_ops[0].form) if series_ops else 0
    slack = sum(1 for op in series_ops if op.index == 0)
    inner_order = order + slack
    cutoff = sum(op.energy_shift for op in ops if op.energy_shift > 0)
    v = FockVector.vacuum(cutoff)
    # lowering capacity of the operators still to the left of position j
    capacity = [0] * (len(ops) + 1)
    for j in range(len(ops)):
        capacity[j + 1] = capacity[j] + max(-ops[j].energy_shift, 0)
    for j in range(len(ops) - 1, -1, -1):
        v = apply_operator(ops[j], v, inner_order)
        v = FockVector({lam: c for lam, c in v.items() if lam.size <= capacity[j]}, cutoff)
    value = v[Partition()]
    if series_ops:
        if not isinstance(value, MultiSeries):
            return MultiSeries.constant(nvars, value, order)
        return value.truncate(min(order, value.order))
    return value


def _zero_like(ops, order, nvars):
    forms = [op.form for op in ops if op.kind == "E"]
    if forms or nvars:
        return MultiSeries.zero(nvars if nvars is not None else len(forms[0]), order)
    return Fraction(0)


def set_partitions(items: Sequence) -> list[list[list]]:
    """All set partitions of ``items``; blocks keep the input order."""
    items = list(items)
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for sub in set_partitions(rest):
        out.append([[first]] + sub)
        for i in range(len(sub)):
            out.append(sub[:i] + [[first] + sub[i]] + sub[i + 1 :])
    return out


def connected_vacuum_expectation(rs: Sequence[int], order: int) -> MultiSeries:
    """Connected part of ``<prod_i E_{r_i}(z_i)>`` by moment-cumulant inversion."""
    n = len(rs)
    full_cache: dict[tuple[int, ...], MultiSeries] = {}

    def moment(block: tuple[int, ...]) -> MultiSeries:
        if block not in full_cache:
            ops = [WedgeOperator.E(rs[i], i, n) for i in block]
            full_cache[block] = vacuum_expectation(ops, order + n, n)
        return full_cache[block]

    total = MultiSeries.zero(n, order + n)
    for partition in set_partitions(range(n)):
        m = len(partition)
        term = MultiSeries.constant(n, Fraction((-1) ** (m - 1) * factorial(m - 1)), order + n)
        for block in partition:
            term = term * moment(tuple(sorted(block)))
        total = total + term
    return total.truncate(order)


def _sigma_form(form: Sequence[int], order: int) -> MultiSeries:
    return sigma_series(order).substitute_linear(form, order)


def commutator_check(a: int, b: int, order: int, cutoff: int) -> bool:
    """Check ``[E_a(z), E_b(w)] = sigma(a w - b z) E_{a+b}(z + w)`` on basis vectors.

    Every ``v_lam`` with ``|lam| <= cutoff`` whose intermediate states stay
    within the cutoff is tested, through total degree ``order`` in ``(z, w)``.
    """
    inner = order + 2
    z, w = (1, 0), (0, 1)
    sig = _sigma_form((-b, a), inner)
    for d in range(cutoff + 1):
        if max(d - a, d - b, d - a - b) > cutoff:
            continue
        for lam in enumerate_partitions(d):
            v = FockVector.basis(lam, cutoff)
            left = apply_E(a, apply_E(b, v, inner, w), inner, z) - apply_E(
                b, apply_E(a, v, inner, z), inner, w
            )
            if a + b != 0:
                right = apply_E(a + b, v, inner, (1, 1))
                right = FockVector({mu: c * sig for mu, c in right.items()})
            elif a == 0:
                right = FockVector({})
            else:
                right = _central_rhs(a, lam, inner)
            keys = set(left) | set(right)
            for mu in keys:
                lc, rc = _as_series(left[mu], 2, inner), _as_series(right[mu], 2, inner)
                if not lc.agrees_with(rc, order):
                    return False
    return True


def _central_rhs(a: int, lam: Partition, order: int) -> FockVector:
    """``sigma(a u) E_0(u) v_lam`` at ``u = z + w``, with the pole cancelled first."""
    u_order = order + 1
    regular = e_series(lam, u_order) - inverse_sigma_series(u_order)
    ratio = sigma_series(u_order + 1).scale_variable(a) * inverse_sigma_series(u_order)
    total = sigma_series(u_order).scale_variable(a) * regular.truncate(u_order) + ratio
    return FockVector({lam: total.substitute_linear((1, 1), order)})


def _as_series(c, nvars: int, order: int) -> MultiSeries:
    if isinstance(c, MultiSeries):
        return c
    return MultiSeries.constant(nvars, c, order)


def adjoint_check(r: int, u: FockVector, w: FockVector, order: int) -> bool:
    """``(E_r(z) u, w) = (u, E_{-r}(z) w)``."""
    left = apply_E(r, u, order).pairing(w)
    right = u.pairing(apply_E(-r, w, order))
    return _equal(_as_series(left, 1, order), _as_series(right, 1, order))


# -- the connected correlator G -----------------------------------------------


def _g_forms(a: tuple[int, ...], forms: tuple[tuple[int, ...], ...], nvars: int, order: int) -> MultiSeries:
    n = len(a)
    if sum(a) != 0:
        return MultiSeries.zero(nvars, order)
    if n == 1:
        return inverse_sigma_series(order + 1).substitute_linear(forms[0], order)
    if a[0] <= 0:
        return MultiSeries.zero(nvars, order)
    if n == 2:
        # sigma(a u) / sigma(u) is a power series in u = L_1 + L_2
        u = tuple(x + y for x, y in zip(*forms))
        ratio = sigma_series(order + 2).scale_variable(a[0]) * inverse_sigma_series(order + 1)
        return ratio.substitute_linear(u, order)
    total = MultiSeries.zero(nvars, order)
    a1, f1 = a[0], forms[0]
    for i in range(1, n):
        det = tuple(a1 * x - a[i] * y for x, y in zip(forms[i], f1))
        new_a = a[1:i] + (a1 + a[i],) + a[i + 1 :]
        merged = tuple(x + y for x, y in zip(f1, forms[i]))
        new_forms = forms[1:i] + (merged,) + forms[i + 1 :]
        rest = _g_forms(new_a, new_forms, nvars, order)
        if rest.terms:
            total = total + _sigma_form(det, order + 1) * rest
    return total.truncate(order)


def g_function(a: Sequence[int], order: int) -> MultiSeries:
    """``G(a_1, ..., a_n; z_1, ..., z_n)``, the connected ``<prod E_{a_i}(z_i)>``.

    ``G(0; z) = 1/sigma(z)``; for ``n >= 2`` it vanishes unless ``a_1 > 0`` and
    is otherwise obtained by commuting ``E_{a_1}(z_1)`` to the right.
    """
    a = tuple(int(x) for x in a)
    n = len(a)
    if n == 0:
        raise ValueError("G needs at least one operator")
    forms = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return _g_forms(a, forms, n, order)


# -- traces -------------------------------------------------------------------


def trace_qH(ops: Sequence[WedgeOperator], q_order: int, z_order: int) -> dict[int, object]:
    """``tr_0 q^H prod ops`` for diagonal operators, as ``{d: coefficient of q^d}``.

    Each coefficient is ``sum_{|lam| = d} prod eigenvalues``: a rational when
    only ``P_k`` appear, otherwise a :class:`MultiSeries` truncated at
    ``z_order``.
    """
    ops = list(ops)
    if not all(op.diagonal for op in ops):
        raise ValueError("trace restricted to diagonal products")
    series_ops = [op for op in ops if op.kind == "E"]
    nvars = len(series_ops[0].form) if series_ops else 0
    inner = z_order + len(series_ops)
    out: dict[int, object] = {}
    for d in range(q_order + 1):
        total = MultiSeries.zero(nvars, inner) if series_ops else Fraction(0)
        for lam in enumerate_partitions(d):
            term = MultiSeries.constant(nvars, 1, inner) if series_ops else Fraction(1)
            for op in ops:
                if op.kind == "P":
                    term = term * p_k(op.index, lam)
                else:
                    term = term * _eigen_series(lam, op.form, inner)
            total = total + term
        out[d] = total.truncate(min(z_order, total.order)) if series_ops else total
    return out
