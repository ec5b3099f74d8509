"""Large-n limit objects for both hiring models.

As n grows, the rescaled re-arrival tables phi/psi/upsilon/f at threshold
k = floor(n x) approach curves over x in (0, 1) governed by a first-order
ODE system with poles at both endpoints:

    phi'(x)     = ((1-p)/x + p/((1+p)(1-x))) phi(x) - (p x/((1+p)(1-x)) + (1-p))
    psi'(x)     = psi(x)/x - (1-p + (p/x) phi(x))
    upsilon'(x) = -(1/x + p/((1+p)(1-x))) upsilon(x) + 1/x

with phi, psi anchored at x = 1 (values p and 0) and upsilon at x = 0
(value 1); f = upsilon*phi + (1-upsilon)*psi.  The system is integrated
with a fixed-step classical Runge-Kutta scheme on [eps, 1-eps], anchoring
the boundary data at the offset points.  For 0 < p < 1 the finite-n curves
do not settle near x = 1 (a boundary layer persists), and eps effectively
plays the role of 1/n; results there are finite-size proxies, accurate to
O(eps) at the endpoints.

The top-3 objective has a closed-form limit

    P(x) = -3 x ln(x) + 3 x^2 - x^3/2 - 5 x/2,

maximised where P'(x) = -3 ln(x) + 6 x - (3/2) x^2 - 11/2 vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, DomainError, InvalidSpec, NonFinite, SingularPoint

__all__ = [
    "LimitCurve",
    "RootResult",
    "ode_rhs_phi",
    "ode_rhs_psi",
    "ode_rhs_upsilon",
    "integrate_limit_system",
    "top3_limit",
    "top3_limit_derivative",
    "optimal_x_top3",
]


@dataclass(frozen=True)
class LimitCurve:
    """A limit curve sampled on a strictly increasing grid inside (0, 1)."""

    grid: np.ndarray
    values: np.ndarray
    label: str

    def __post_init__(self):
        g, v = self.grid, self.values
        if g.ndim != 1 or v.shape != g.shape:
            raise InvalidSpec("grid and values must be 1-d arrays of equal length")
        if not (g[0] > 0.0 and g[-1] < 1.0 and (np.diff(g) > 0.0).all()):
            raise InvalidSpec("grid must be strictly increasing inside (0, 1)")
        if not np.isfinite(v).all():
            raise NonFinite(f"{self.label} curve contains non-finite values")
        if self.label in ("upsilon", "f", "top3") and not (
            (v >= -1e-3).all() and (v <= 1.0 + 1e-3).all()
        ):
            raise NonFinite(f"{self.label} curve left [0, 1] beyond integration tolerance")


@dataclass(frozen=True)
class RootResult:
    """A bracketed root: location, objective value there, and residual."""

    x_star: float
    value_at_root: float
    residual: float


def _check_interior(x: float):
    if x <= 0.0 or x >= 1.0:
        raise SingularPoint(f"x={x} is at or beyond a pole; need 0 < x < 1")


def ode_rhs_phi(x: float, phi: float, p: float) -> float:
    """Slope of the leader-seen-once curve at x."""
    _check_interior(x)
    return ((1.0 - p) / x + p / ((1.0 + p) * (1.0 - x))) * phi \
        - (p * x / ((1.0 + p) * (1.0 - x)) + (1.0 - p))


def ode_rhs_psi(x: float, psi: float, phi_at_x: float, p: float) -> float:
    """Slope of the leader-seen-twice curve at x, given phi(x)."""
    _check_interior(x)
    return psi / x - (1.0 - p + (p / x) * phi_at_x)


def ode_rhs_upsilon(x: float, upsilon: float, p: float) -> float:
    """Slope of the leader-seen-once-probability curve at x."""
    _check_interior(x)
    return -(1.0 / x + p / ((1.0 + p) * (1.0 - x))) * upsilon + 1.0 / x


def integrate_limit_system(
    p: float, step: float = 1e-4, epsilon: float = 1e-4
) -> tuple[LimitCurve, LimitCurve, LimitCurve, LimitCurve]:
    """Integrate the limit system on [eps, 1-eps]; returns (phi, psi, upsilon, f).

    phi and psi run jointly backward from x = 1-eps (psi's slope needs the
    stage values of phi); upsilon runs forward from x = eps.  Classical
    fixed-step fourth-order Runge-Kutta on a shared uniform grid; the step
    is rounded so the grid lands exactly on both ends.

    Terminal data: upsilon(eps) = 1 and, for p > 0, phi(1-eps) = p,
    psi(1-eps) = 0.  At p = 0 both backward curves follow the classical
    closed form -x ln x, so the offset points are seeded with its exact
    value; seeding the raw anchors there would shift the whole curve by
    O(eps).
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidSpec(f"need 0 <= p <= 1, got p={p}")
    if not 0.0 < epsilon < 0.1:
        raise DomainError(f"need 0 < epsilon < 0.1, got {epsilon}")
    if not 0.0 < step <= epsilon:
        raise DomainError(f"need 0 < step <= epsilon, got step={step}")

    m = max(1, int(round((1.0 - 2.0 * epsilon) / step)))
    grid = np.linspace(epsilon, 1.0 - epsilon, m + 1)
    h = (1.0 - 2.0 * epsilon) / m

    if p == 0.0:
        x1 = 1.0 - epsilon
        phi_end = psi_end = -x1 * math.log(x1)
    else:
        phi_end, psi_end = p, 0.0

    phi = np.empty(m + 1)
    psi = np.empty(m + 1)
    phi[m], psi[m] = phi_end, psi_end
    y1, y2 = phi_end, psi_end
    for i in range(m, 0, -1):
        x = grid[i]
        k1a = ode_rhs_phi(x, y1, p)
        k1b = ode_rhs_psi(x, y2, y1, p)
        xm = x - 0.5 * h
        k2a = ode_rhs_phi(xm, y1 - 0.5 * h * k1a, p)
        k2b = ode_rhs_psi(xm, y2 - 0.5 * h * k1b, y1 - 0.5 * h * k1a, p)
        k3a = ode_rhs_phi(xm, y1 - 0.5 * h * k2a, p)
        k3b = ode_rhs_psi(xm, y2 - 0.5 * h * k2b, y1 - 0.5 * h * k2a, p)
        xe = x - h
        k4a = ode_rhs_phi(xe, y1 - h * k3a, p)
        k4b = ode_rhs_psi(xe, y2 - h * k3b, y1 - h * k3a, p)
        y1 -= h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        y2 -= h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        phi[i - 1], psi[i - 1] = y1, y2

    ups = np.empty(m + 1)
    ups[0] = 1.0
    u = 1.0
    for i in range(m):
        x = grid[i]
        k1 = ode_rhs_upsilon(x, u, p)
        k2 = ode_rhs_upsilon(x + 0.5 * h, u + 0.5 * h * k1, p)
        k3 = ode_rhs_upsilon(x + 0.5 * h, u + 0.5 * h * k2, p)
        k4 = ode_rhs_upsilon(x + h, u + h * k3, p)
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        ups[i + 1] = u

    for arr in (phi, psi, ups):
        if not np.isfinite(arr).all():
            raise NonFinite(f"integration diverged for p={p}, step={step}, eps={epsilon}")

    f = ups * phi + (1.0 - ups) * psi
    return (
        LimitCurve(grid=grid, values=phi, label="phi"),
        LimitCurve(grid=grid, values=psi, label="psi"),
        LimitCurve(grid=grid, values=ups, label="upsilon"),
        LimitCurve(grid=grid, values=f, label="f"),
    )


def top3_limit(x: float) -> float:
    """Limiting success probability of the top-3 rule at rescaled threshold x.

    Defined on [0, 1]; the x -> 0 limit is 0 (x ln x vanishes) and is
    returned at x = 0 by continuous extension.
    """
    if x < 0.0 or x > 1.0:
        raise DomainError(f"x={x} outside [0, 1]")
    if x == 0.0:
        return 0.0
    return -3.0 * x * math.log(x) + 3.0 * x * x - x ** 3 / 2.0 - 5.0 * x / 2.0


def top3_limit_derivative(x: float) -> float:
    """Derivative of the top-3 limit curve, simplified closed form."""
    if x <= 0.0 or x >= 1.0:
        raise DomainError(f"x={x} outside (0, 1)")
    return -3.0 * math.log(x) + 6.0 * x - 1.5 * x * x - 5.5


_BRACKET = (0.05, 0.5)
_MAX_BISECT = 200


def optimal_x_top3(tolerance: float) -> RootResult:
    """Locate the maximiser of the top-3 limit curve by bisection.

    Bisects the derivative on the fixed bracket [0.05, 0.5] (positive at
    the left end, negative at the right; checked defensively) until the
    residual |P'(x)| drops to ``tolerance``.
    """
    if tolerance <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    a, b = _BRACKET
    fa = top3_limit_derivative(a)
    fb = top3_limit_derivative(b)
    if not (fa > 0.0 > fb):
        raise BracketError(f"derivative signs do not bracket a root on [{a}, {b}]")
    for _ in range(_MAX_BISECT):
        c = 0.5 * (a + b)
        fc = top3_limit_derivative(c)
        if abs(fc) <= tolerance:
            return RootResult(x_star=c, value_at_root=top3_limit(c), residual=fc)
        if fc > 0.0:
            a = c
        else:
            b = c
    raise BracketError(
        f"bisection could not reach |residual| <= {tolerance}; "
        "the practical floor is near 1e-14"
    )
