"""Truncated multivariate Taylor jets.

A ``Jet`` stores the Taylor coefficients c[k] = D^k f / k! of a smooth
quantity at a base point, for all multi-indices k with |k| <= order.
Arithmetic is exact truncation: for polynomial inputs of degree <= order
the coefficients reproduce the derivatives to machine precision.  Jets
are the derivative currency of the whole package; nothing downstream
uses finite differences.

Jets do not remember their base point; the evaluation context does.
``nvars`` is 1 for curve-parameter jets, 2 for surface-chart jets and
3 for ambient-chart jets.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, Sequence, Tuple

from .errors import DeflationError, EvaluationError, JetOrderError

Index = Tuple[int, ...]

#: Hard cap on jet order; evaluate_jet refuses above this unless the caller
#: raises the limit explicitly (or via the FRONTLAB_JET_ORDER environment
#: variable handled by the CLI layer).
MAX_JET_ORDER = 6

#: Relative tolerance used by ``deflate`` to decide that a coefficient that
#: should vanish actually does.  Jets are exact up to rounding, so any
#: genuine residue is a modeling error rather than noise.
DEFLATE_RTOL = 1e-9


def _zero_index(nvars: int) -> Index:
    return (0,) * nvars


class Jet:
    """Immutable truncated Taylor expansion in ``nvars`` variables."""

    __slots__ = ("nvars", "order", "coeffs")

    def __init__(self, nvars: int, order: int, coeffs: Dict[Index, float]):
        if order < 0:
            raise ValueError("jet order must be >= 0")
        self.nvars = nvars
        self.order = order
        # drop explicit zeros to keep convolutions small
        self.coeffs = {k: float(v) for k, v in coeffs.items() if v != 0.0}

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(value: float, nvars: int, order: int) -> "Jet":
        return Jet(nvars, order, {_zero_index(nvars): float(value)})

    @staticmethod
    def variable(i: int, value: float, nvars: int, order: int) -> "Jet":
        """The coordinate function x_i, expanded at x_i = value."""
        c: Dict[Index, float] = {_zero_index(nvars): float(value)}
        if order >= 1:
            k = [0] * nvars
            k[i] = 1
            c[tuple(k)] = 1.0
        return Jet(nvars, order, c)

    # -- basic access --------------------------------------------------

    @property
    def value(self) -> float:
        """Constant term (the value of the quantity at the base point)."""
        return self.coeffs.get(_zero_index(self.nvars), 0.0)

    def coeff(self, *k: int) -> float:
        return self.coeffs.get(tuple(k), 0.0)

    def derivative_value(self, *k: int) -> float:
        """The plain partial derivative D^k at the base point."""
        c = self.coeffs.get(tuple(k), 0.0)
        scale = 1.0
        for ki in k:
            scale *= math.factorial(ki)
        return c * scale

    def max_abs_coeff(self) -> float:
        return max((abs(v) for v in self.coeffs.values()), default=0.0)

    def truncated(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        return Jet(self.nvars, order,
                   {k: v for k, v in self.coeffs.items() if sum(k) <= order})

    # -- ring operations ----------------------------------------------

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.nvars != self.nvars:
                raise ValueError("jet variable count mismatch")
            return other
        return Jet.constant(float(other), self.nvars, self.order)

    def __add__(self, other) -> "Jet":
        o = self._coerce(other)
        order = min(self.order, o.order)
        c = dict(self.coeffs)
        for k, v in o.coeffs.items():
            c[k] = c.get(k, 0.0) + v
        return Jet(self.nvars, order, {k: v for k, v in c.items() if sum(k) <= order})

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(self.nvars, self.order, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other) -> "Jet":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Jet":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Jet":
        o = self._coerce(other)
        order = min(self.order, o.order)
        c: Dict[Index, float] = {}
        for ka, va in self.coeffs.items():
            if sum(ka) > order:
                continue
            for kb, vb in o.coeffs.items():
                s = sum(ka) + sum(kb)
                if s > order:
                    continue
                k = tuple(a + b for a, b in zip(ka, kb))
                c[k] = c.get(k, 0.0) + va * vb
        return Jet(self.nvars, order, c)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        a0 = self.value
        if a0 == 0.0:
            raise EvaluationError("division by a jet with zero constant term")
        # 1/(a0 + d) = (1/a0) * sum_k (-d/a0)^k
        delta = self - a0
        term = Jet.constant(1.0, self.nvars, self.order)
        acc = Jet.constant(1.0, self.nvars, self.order)
        for _ in range(self.order):
            term = term * delta * (-1.0 / a0)
            acc = acc + term
        return acc * (1.0 / a0)

    def __truediv__(self, other) -> "Jet":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "Jet":
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> "Jet":
        return self.pow_int(n)

    def pow_int(self, n: int) -> "Jet":
        """Integer power by repeated multiplication (binary)."""
        if not isinstance(n, int):
            raise TypeError("pow_int requires an integer exponent")
        if n < 0:
            return self.reciprocal().pow_int(-n)
        result = Jet.constant(1.0, self.nvars, self.order)
        base = self
        e = n
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- calculus ------------------------------------------------------

    def partial(self, i: int) -> "Jet":
        """Partial derivative in variable i; the order drops by one."""
        if self.order == 0:
            raise JetOrderError("cannot differentiate an order-0 jet")
        c: Dict[Index, float] = {}
        for k, v in self.coeffs.items():
            if k[i] == 0:
                continue
            kk = list(k)
            kk[i] -= 1
            c[tuple(kk)] = v * k[i]
        return Jet(self.nvars, self.order - 1, c)

    def compose(self, args: Sequence["Jet"]) -> "Jet":
        """Substitute offset jets for the variables.

        ``args[i]`` is the offset of variable i from this jet's base point
        (so composing along a curve through the base passes offsets with
        zero constant term).  A small nonzero constant term re-expands the
        truncated polynomial at a shifted point, which is what jet-Newton
        solvers need.  The result is correct through
        ``min(self.order, min(arg orders))`` when the constant terms vanish.
        """
        if len(args) != self.nvars:
            raise ValueError("compose needs one jet per variable")
        out_nvars = args[0].nvars
        order = min([self.order] + [a.order for a in args])
        for a in args:
            if a.nvars != out_nvars:
                raise ValueError("compose arguments must share variables")
        # cache powers of each offset up to the needed degree
        pows = []
        for d in args:
            p = [Jet.constant(1.0, out_nvars, order)]
            dd = d.truncated(order)
            for _ in range(self.order):
                p.append(p[-1] * dd)
            pows.append(p)
        acc = Jet.constant(0.0, out_nvars, order)
        for k, v in self.coeffs.items():
            term = Jet.constant(v, out_nvars, order)
            for i, ki in enumerate(k):
                if ki:
                    term = term * pows[i][ki]
            acc = acc + term
        return acc

    # -- analytic functions --------------------------------------------

    def _apply_series(self, series: Iterable[float]) -> "Jet":
        """sum_k series[k] * (self - self.value)^k, truncated."""
        delta = self - self.value
        acc = Jet.constant(0.0, self.nvars, self.order)
        term = Jet.constant(1.0, self.nvars, self.order)
        for k, c in enumerate(series):
            if k > 0:
                term = term * delta
            if c != 0.0:
                acc = acc + term * c
        return acc

    def exp(self) -> "Jet":
        e0 = math.exp(self.value)
        return self._apply_series(e0 / math.factorial(k) for k in range(self.order + 1))

    def log(self) -> "Jet":
        a0 = self.value
        if a0 <= 0.0:
            raise EvaluationError("log of a jet with non-positive constant term")
        series = [math.log(a0)]
        for k in range(1, self.order + 1):
            series.append((-1.0) ** (k + 1) / (k * a0 ** k))
        return self._apply_series(series)

    def sqrt(self) -> "Jet":
        a0 = self.value
        if a0 <= 0.0:
            raise EvaluationError("sqrt of a jet with non-positive constant term")
        r = math.sqrt(a0)
        series = [r]
        coef = 0.5
        for k in range(1, self.order + 1):
            series.append(r * coef / a0 ** k)
            coef *= (0.5 - k) / (k + 1)
        return self._apply_series(series)

    def pow_real(self, r: float) -> "Jet":
        """Real power of a jet with positive constant term."""
        if self.value <= 0.0:
            raise EvaluationError("real power of a jet with non-positive constant term")
        return (self.log() * r).exp()

    def sin(self) -> "Jet":
        s0, c0 = math.sin(self.value), math.cos(self.value)
        cycle = [s0, c0, -s0, -c0]
        return self._apply_series(cycle[k % 4] / math.factorial(k)
                                  for k in range(self.order + 1))

    def cos(self) -> "Jet":
        s0, c0 = math.sin(self.value), math.cos(self.value)
        cycle = [c0, -s0, -c0, s0]
        return self._apply_series(cycle[k % 4] / math.factorial(k)
                                  for k in range(self.order + 1))

    def tan(self) -> "Jet":
        c = self.cos()
        if abs(c.value) < 1e-300:
            raise EvaluationError("tan evaluated at a pole")
        return self.sin() / c

    # -- misc ------------------------------------------------------------

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        terms = sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        body = " + ".join(f"{v:.6g}*x^{k}" for k, v in terms) or "0"
        return f"Jet<{self.nvars}v,o{self.order}>({body})"

    def isclose(self, other: "Jet", rtol: float = 1e-12, atol: float = 1e-12) -> bool:
        o = self._coerce(other)
        keys = set(self.coeffs) | set(o.coeffs)
        scale = max(self.max_abs_coeff(), o.max_abs_coeff(), 1.0)
        return all(
            abs(self.coeffs.get(k, 0.0) - o.coeffs.get(k, 0.0)) <= atol + rtol * scale
            for k in keys)


def deflate(j: Jet, var: int) -> Jet:
    """Divide a jet by the named variable, dropping the order by one.

    Every coefficient with zero power of that variable must vanish
    (relative to the largest coefficient); otherwise the quantity does
    not vanish on the axis and a :class:`DeflationError` is raised.
    """
    scale = j.max_abs_coeff()
    tol = DEFLATE_RTOL * max(scale, 1e-300)
    c: Dict[Index, float] = {}
    for k, v in j.coeffs.items():
        if k[var] == 0:
            if abs(v) > tol:
                raise DeflationError(
                    f"jet is not divisible by variable {var}: axis coefficient "
                    f"{v:.3e} exceeds tolerance {tol:.3e}")
            continue
        kk = list(k)
        kk[var] -= 1
        c[tuple(kk)] = v
    if j.order == 0:
        raise DeflationError("cannot deflate an order-0 jet")
    return Jet(j.nvars, j.order - 1, c)


def multiply_by_var(j: Jet, var: int) -> Jet:
    """Multiply by the named variable, raising the order by one (inverse of deflate)."""
    c: Dict[Index, float] = {}
    for k, v in j.coeffs.items():
        kk = list(k)
        kk[var] += 1
        c[tuple(kk)] = v
    return Jet(j.nvars, j.order + 1, c)


# -- small vector helpers (tuples of jets) -----------------------------------

def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a, s):
    return tuple(x * s for x in a)


def vec_partial(a, i):
    return tuple(x.partial(i) for x in a)


def vec_compose(a, args):
    return tuple(x.compose(args) for x in a)


def vec_value(a):
    return tuple(x.value for x in a)
