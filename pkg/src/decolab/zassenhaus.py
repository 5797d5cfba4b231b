"""Numeric verification of the Zassenhaus splitting orders.

For square matrices A and B,

    exp(t(A+B)) = ... exp(-(t^3/6){2[[A,B],B] + [[A,B],A]})
                      exp((t^2/2)[A,B]) exp(tB) exp(tA),

so truncating after exp(tB) exp(tA) leaves an O(t^2) defect, after the
commutator factor O(t^3), and after the cubic factor O(t^4).  The
order-check harness measures those defects on a halving ladder of t
values and fits the log-log slope, which certifies the error order of
the factor-product propagator without any symbolics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCase, DimensionMismatch
from .propagators import inf_norm, matrix_exp

#: Below this every product is "exact": commuting factors, no slope.
EXACT_FLOOR = 1e-14


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[A, B] = AB - BA.

    Raises
    ------
    DimensionMismatch
        Unless both operands are square with the same shape.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise DimensionMismatch(f"incompatible shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


def zassenhaus_product(t: float, a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    """Truncated splitting product approximating exp(t(A+B)).

    order 1:  exp(tB) exp(tA)
    order 2:  exp((t^2/2)[A,B]) * (order 1)
    order 3:  exp(-(t^3/6){2[[A,B],B] + [[A,B],A]}) * (order 2)
    """
    if order not in (1, 2, 3):
        raise ValueError(f"order must be 1, 2 or 3, got {order}")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    product = matrix_exp(t * b) @ matrix_exp(t * a)
    if order >= 2:
        comm = commutator(a, b)
        product = matrix_exp(0.5 * t * t * comm) @ product
        if order == 3:
            cubic = 2.0 * commutator(comm, b) + commutator(comm, a)
            product = matrix_exp(-(t**3 / 6.0) * cubic) @ product
    return product


@dataclass(frozen=True)
class OrderCheckResult:
    """Halving-ladder errors and the fitted log-log slope."""

    order: int
    t_values: list[float]
    errors: list[float]
    fitted_slope: float

    def __post_init__(self):
        for earlier, later in zip(self.t_values, self.t_values[1:]):
            if not later < earlier:
                raise ValueError("t_values must be strictly decreasing")
        if not all(np.isfinite(self.errors)):
            raise ValueError("errors must all be finite")

    def expected_slope(self) -> float:
        return float(self.order + 1)

    def slope_ok(self, window: float = 0.3) -> bool:
        return abs(self.fitted_slope - self.expected_slope()) <= window


def order_check(
    a: np.ndarray, b: np.ndarray, order: int, t0: float, halvings: int
) -> OrderCheckResult:
    """Measure the splitting defect on t0, t0/2, ..., t0/2^halvings.

    The defect of the order-n product scales as t^(n+1); for generic
    non-commuting inputs the fitted slope lands within about +-0.3 of
    n+1 once t0 is small enough that prefactor drift is negligible
    (use at least five halvings for the fit).

    Raises
    ------
    DegenerateCase
        If every defect is below 1e-14: the inputs commute (or close
        enough), the product is exact and no slope exists.
    """
    if order not in (2, 3):
        raise ValueError(f"order must be 2 or 3, got {order}")
    if halvings < 3:
        raise ValueError(f"need at least 3 halvings, got {halvings}")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if inf_norm(t0 * (a + b)) > 1.0:
        raise ValueError("t0 too large: need ||t0 (A+B)|| <= 1 for a clean fit")
    t_values = [t0 / 2.0**i for i in range(halvings + 1)]
    errors = [
        inf_norm(zassenhaus_product(t, a, b, order) - matrix_exp(t * (a + b)))
        for t in t_values
    ]
    if max(errors) < EXACT_FLOOR:
        raise DegenerateCase(
            f"all defects below {EXACT_FLOOR}: inputs commute, product is exact"
        )
    slope = float(np.polyfit(np.log(t_values), np.log(errors), 1)[0])
    return OrderCheckResult(order=order, t_values=t_values, errors=errors, fitted_slope=slope)
