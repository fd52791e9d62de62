"""Truncated multivariate Taylor arithmetic (jets).

A `Jet` holds the Taylor coefficients of a smooth scalar function at a
point: ``coeffs[alpha] = (d^alpha f)(p) / alpha!`` for every multi-index
with ``|alpha| <= order``, stored densely in the graded layout of
`_jettables`.  Propagating jets through arithmetic and elementary
functions yields every partial derivative of the result up to the
truncation order, exactly (to roundoff) for the retained grades.

Conventions and contracts:

* dim <= 4 and order <= 4 (table-driven storage, at most 70 coefficients);
* binary operations require identical (dim, order) — mixed grades are a
  hard error, lowering is explicit via `truncated`;
* elementary-function composition uses the univariate Taylor expansion of
  the function at the constant term, evaluated by Horner's rule on the
  nilpotent part, so it is exact on the retained grades;
* derivative() lowers the order by one, as it must.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from ._jettables import JetTables, tables
from ._kernels import mul_into


class JetError(ValueError):
    """Base error for jet arithmetic misuse."""


class JetShapeError(JetError):
    """Operands have mismatched (dim, order)."""


class JetDomainError(JetError):
    """Elementary function evaluated outside its domain."""


class JetOrderError(JetError):
    """An operation would consume more derivative order than available."""


class Jet:
    """Dense truncated Taylor expansion of a scalar at a point."""

    __slots__ = ("dim", "order", "coeffs", "tab")

    def __init__(self, dim: int, order: int, coeffs: np.ndarray,
                 _tab: JetTables | None = None):
        tab = _tab if _tab is not None else tables(dim, order)
        coeffs = np.asarray(coeffs, dtype=np.float64)
        if coeffs.shape != (tab.size,):
            raise JetShapeError(
                f"expected {tab.size} coefficients for dim={dim} "
                f"order={order}, got shape {coeffs.shape}"
            )
        self.dim = dim
        self.order = order
        self.coeffs = coeffs
        self.tab = tab

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def constant(cls, value: float, dim: int, order: int) -> "Jet":
        tab = tables(dim, order)
        coeffs = np.zeros(tab.size)
        coeffs[0] = value
        return cls(dim, order, coeffs, _tab=tab)

    @classmethod
    def variable(cls, axis: int, value: float, dim: int, order: int) -> "Jet":
        """The coordinate function x_axis expanded at x_axis = value."""
        if not (0 <= axis < dim):
            raise JetError(f"variable axis {axis} out of range for dim {dim}")
        tab = tables(dim, order)
        coeffs = np.zeros(tab.size)
        coeffs[0] = value
        if order >= 1:
            unit = tuple(1 if a == axis else 0 for a in range(dim))
            coeffs[tab.index[unit]] = 1.0
        return cls(dim, order, coeffs, _tab=tab)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    @property
    def value(self) -> float:
        """The 0th-order coefficient (the function value at the point)."""
        return float(self.coeffs[0])

    def coeff(self, alpha: Sequence[int]) -> float:
        """Taylor coefficient d^alpha f / alpha!."""
        return float(self.coeffs[self._slot(alpha)])

    def partial(self, alpha: Sequence[int]) -> float:
        """Partial derivative value d^alpha f at the base point."""
        slot = self._slot(alpha)
        return float(self.coeffs[slot] * self.tab.factorials[slot])

    def _slot(self, alpha: Sequence[int]) -> int:
        key = tuple(int(a) for a in alpha)
        if len(key) != self.dim:
            raise JetError(f"multi-index {key} has wrong length for dim {self.dim}")
        if any(a < 0 for a in key):
            raise JetError(f"multi-index {key} has negative entries")
        if sum(key) > self.order:
            raise JetOrderError(
                f"multi-index {key} exceeds jet order {self.order}"
            )
        return self.tab.index[key]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (f"Jet(dim={self.dim}, order={self.order}, "
                f"value={self.coeffs[0]!r})")

    # ------------------------------------------------------------------
    # grade bookkeeping
    # ------------------------------------------------------------------
    def truncated(self, order: int) -> "Jet":
        """Copy of this jet truncated to a lower order (explicit lowering)."""
        if order == self.order:
            return Jet(self.dim, self.order, self.coeffs.copy(), _tab=self.tab)
        if not (0 <= order < self.order):
            raise JetOrderError(
                f"cannot truncate order-{self.order} jet to order {order}"
            )
        tab = tables(self.dim, order)
        return Jet(self.dim, order, self.coeffs[: tab.size].copy(), _tab=tab)

    def derivative(self, axis: int) -> "Jet":
        """Partial derivative along an axis; the order drops by one."""
        if not (0 <= axis < self.dim):
            raise JetError(f"axis {axis} out of range for dim {self.dim}")
        if self.order == 0:
            raise JetOrderError(
                "cannot differentiate an order-0 jet; raise the working order"
            )
        tab = tables(self.dim, self.order - 1)
        coeffs = self.coeffs[self.tab.dsrc[axis]] * self.tab.dmul[axis]
        return Jet(self.dim, self.order - 1, coeffs, _tab=tab)

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------
    def _check_match(self, other: "Jet") -> None:
        if self.dim != other.dim or self.order != other.order:
            raise JetShapeError(
                f"jet mismatch: (dim={self.dim}, order={self.order}) vs "
                f"(dim={other.dim}, order={other.order}); "
                "truncate explicitly before mixing grades"
            )

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check_match(other)
            return Jet(self.dim, self.order, self.coeffs + other.coeffs,
                       _tab=self.tab)
        if isinstance(other, (int, float)):
            coeffs = self.coeffs.copy()
            coeffs[0] += other
            return Jet(self.dim, self.order, coeffs, _tab=self.tab)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.dim, self.order, -self.coeffs, _tab=self.tab)

    def __sub__(self, other):
        if isinstance(other, Jet):
            self._check_match(other)
            return Jet(self.dim, self.order, self.coeffs - other.coeffs,
                       _tab=self.tab)
        if isinstance(other, (int, float)):
            coeffs = self.coeffs.copy()
            coeffs[0] -= other
            return Jet(self.dim, self.order, coeffs, _tab=self.tab)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            coeffs = -self.coeffs
            coeffs[0] += other
            return Jet(self.dim, self.order, coeffs, _tab=self.tab)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check_match(other)
            tab = self.tab
            out = np.zeros(tab.size)
            mul_into(self.coeffs, other.coeffs, out,
                     tab.pair_i, tab.pair_j, tab.pair_k,
                     tab.diag_i, tab.diag_k, tab.all_k)
            return Jet(self.dim, self.order, out, _tab=tab)
        if isinstance(other, (int, float)):
            return Jet(self.dim, self.order, self.coeffs * other,
                       _tab=self.tab)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            self._check_match(other)
            return self * other.reciprocal()
        if isinstance(other, (int, float)):
            return Jet(self.dim, self.order, self.coeffs / other,
                       _tab=self.tab)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return self.reciprocal() * other
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            raise JetError(
                f"jet powers take integer exponents, got {exponent!r}; "
                "use sqrt/exp/log for fractional powers"
            )
        return self.powi(exponent)

    def powi(self, exponent: int) -> "Jet":
        """Integer power by binary exponentiation of truncated products."""
        if exponent < 0:
            return self.reciprocal().powi(-exponent)
        result = Jet.constant(1.0, self.dim, self.order)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # elementary-function composition
    # ------------------------------------------------------------------
    def _horner(self, series: Sequence[float]) -> "Jet":
        """Evaluate sum_k series[k] * (self - value)^k by Horner's rule.

        The shifted jet is nilpotent (zero constant term), so the truncated
        products are exact on the retained grades.
        """
        u = self.coeffs.copy()
        u[0] = 0.0
        nilpotent = Jet(self.dim, self.order, u, _tab=self.tab)
        acc = Jet.constant(series[-1], self.dim, self.order)
        for ck in reversed(series[:-1]):
            acc = acc * nilpotent
            acc.coeffs[0] += ck
        return acc

    def reciprocal(self) -> "Jet":
        c = self.coeffs[0]
        if c == 0.0:
            raise JetDomainError("division by a jet with zero constant term")
        series = [(-1.0) ** k / c ** (k + 1) for k in range(self.order + 1)]
        return self._horner(series)

    def sin(self) -> "Jet":
        c = self.coeffs[0]
        series = [math.sin(c + 0.5 * k * math.pi) / math.factorial(k)
                  for k in range(self.order + 1)]
        return self._horner(series)

    def cos(self) -> "Jet":
        c = self.coeffs[0]
        series = [math.cos(c + 0.5 * k * math.pi) / math.factorial(k)
                  for k in range(self.order + 1)]
        return self._horner(series)

    def exp(self) -> "Jet":
        e = math.exp(self.coeffs[0])
        series = [e / math.factorial(k) for k in range(self.order + 1)]
        return self._horner(series)

    def sinh(self) -> "Jet":
        c = self.coeffs[0]
        sh, ch = math.sinh(c), math.cosh(c)
        series = [(sh if k % 2 == 0 else ch) / math.factorial(k)
                  for k in range(self.order + 1)]
        return self._horner(series)

    def cosh(self) -> "Jet":
        c = self.coeffs[0]
        sh, ch = math.sinh(c), math.cosh(c)
        series = [(ch if k % 2 == 0 else sh) / math.factorial(k)
                  for k in range(self.order + 1)]
        return self._horner(series)

    def sqrt(self) -> "Jet":
        c = self.coeffs[0]
        if c <= 0.0:
            raise JetDomainError(
                f"sqrt of a jet needs a positive constant term, got {c}"
            )
        series = [math.sqrt(c)]
        for k in range(1, self.order + 1):
            series.append(series[-1] * (1.5 - k) / (k * c))
        return self._horner(series)

    def log(self) -> "Jet":
        c = self.coeffs[0]
        if c <= 0.0:
            raise JetDomainError(
                f"log of a jet needs a positive constant term, got {c}"
            )
        series = [math.log(c)]
        for k in range(1, self.order + 1):
            series.append((-1.0) ** (k - 1) / (k * c ** k))
        return self._horner(series)


def variables(point: Sequence[float], order: int) -> tuple[Jet, ...]:
    """Coordinate jets for a point, one per axis."""
    dim = len(point)
    return tuple(
        Jet.variable(axis, float(point[axis]), dim, order)
        for axis in range(dim)
    )


ELEMENTARY: dict[str, Callable[[Jet], Jet]] = {
    "sin": Jet.sin,
    "cos": Jet.cos,
    "exp": Jet.exp,
    "sinh": Jet.sinh,
    "cosh": Jet.cosh,
    "sqrt": Jet.sqrt,
    "log": Jet.log,
}
