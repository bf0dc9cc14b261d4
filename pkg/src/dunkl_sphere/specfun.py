"""Orthogonal-polynomial and quadrature primitives.

Gegenbauer evaluation by three-term recurrence, Gauss-Jacobi rules, and
the normalization constants c_lambda and a_kappa used throughout the
weighted-sphere modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, roots_jacobi

__all__ = [
    "JacobiRule",
    "MultiplicityVector",
    "gegenbauer_eval",
    "gegenbauer_c1",
    "gegenbauer_ratio",
    "zonal_kernel_eval",
    "gegenbauer_monomial_coeffs",
    "gauss_jacobi_rule",
    "c_lambda",
    "a_kappa",
]

_T_TOL = 1e-12


@dataclass(frozen=True)
class JacobiRule:
    """Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta on [-1, 1].

    An m-point rule integrates t^k exactly for every k <= 2m - 1.  Nodes
    are strictly increasing, weights strictly positive.
    """

    alpha: float
    beta: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def integrate(self, f) -> float:
        """Integrate ``f(t) (1-t)^alpha (1+t)^beta`` over [-1, 1]."""
        return float(np.dot(self.weights, f(self.nodes)))


@dataclass(frozen=True)
class MultiplicityVector:
    """Nonnegative exponents kappa = (kappa_1, ..., kappa_{d+1}).

    ``gamma_kappa`` is the exponent sum and ``lambda_kappa`` the effective
    Gegenbauer parameter gamma_kappa + (d-1)/2 with d + 1 = len(kappa).
    """

    kappa: np.ndarray
    gamma_kappa: float = field(init=False)
    lambda_kappa: float = field(init=False)

    def __post_init__(self):
        kap = np.atleast_1d(np.asarray(self.kappa, dtype=float))
        if kap.ndim != 1 or kap.size < 2:
            raise ValueError("kappa must be a vector of d+1 >= 2 entries")
        if np.any(kap < 0):
            raise ValueError("multiplicity exponents must be nonnegative")
        object.__setattr__(self, "kappa", kap)
        object.__setattr__(self, "gamma_kappa", float(kap.sum()))
        object.__setattr__(
            self, "lambda_kappa", float(kap.sum()) + (self.d - 1) / 2.0
        )

    @property
    def d(self) -> int:
        """Dimension of the sphere S^d carrying the weight."""
        return self.kappa.size - 1


def gegenbauer_eval(n, lam, t):
    """Gegenbauer polynomial C_n^lam(t), vectorized in t.

    Uses the three-term recurrence
    ``(k+1) C_{k+1} = 2 (k+lam) t C_k - (k+2 lam-1) C_{k-1}``.

    For lam = 0 the standard normalization degenerates (C_n^0 = 0 for
    n >= 1); this routine then returns the renormalized limit
    ``lim_{lam->0} C_n^lam(t)/lam = (2/n) T_n(t)`` for n >= 1, the scaling
    under which the kernel combinations (n+lam)/lam * C_n^lam and
    C_n^lam(t)/C_n^lam(1) stay finite.
    """
    if n < 0:
        raise ValueError("degree n must be >= 0")
    if lam <= -0.5:
        raise ValueError("gegenbauer_eval requires lambda > -1/2")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + _T_TOL):
        raise ValueError("argument t outside [-1, 1]")
    scalar = t.ndim == 0
    t = np.atleast_1d(np.clip(t, -1.0, 1.0))
    if lam == 0.0:
        out = np.ones_like(t) if n == 0 else (2.0 / n) * np.cos(n * np.arccos(t))
    else:
        out = _gegenbauer_recurrence(n, lam, t)
    return float(out[0]) if scalar else out


def _gegenbauer_recurrence(n, lam, t):
    c_prev = np.ones_like(t)
    if n == 0:
        return c_prev
    c = 2.0 * lam * t
    for k in range(1, n):
        c, c_prev = (2.0 * (k + lam) * t * c - (k + 2.0 * lam - 1.0) * c_prev) / (
            k + 1.0
        ), c
    return c


def gegenbauer_c1(n, lam):
    """C_n^lam(1) = Gamma(n+2 lam) / (Gamma(2 lam) n!), with the lam = 0 limit 2/n."""
    if n == 0:
        return 1.0
    if lam == 0.0:
        return 2.0 / n
    return math.exp(gammaln(n + 2.0 * lam) - gammaln(2.0 * lam) - gammaln(n + 1.0))


def gegenbauer_ratio(n, lam, t):
    """The damping factor C_n^lam(t) / C_n^lam(1); equals cos(n arccos t) at lam = 0."""
    if lam == 0.0 and n >= 1:
        t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
        out = np.cos(n * np.arccos(t))
        return float(out) if out.ndim == 0 else out
    return gegenbauer_eval(n, lam, t) / gegenbauer_c1(n, lam)


def zonal_kernel_eval(n, lam, t):
    """The zonal kernel factor ((n+lam)/lam) C_n^lam(t), finite at lam = 0.

    At lam = 0 this is the Chebyshev limit 2 T_n(t) for n >= 1 (and 1 for
    n = 0), which is the combination every reproducing-kernel formula uses.
    """
    if n == 0:
        t = np.asarray(t, dtype=float)
        return 1.0 if t.ndim == 0 else np.ones_like(t)
    if lam == 0.0:
        return n * gegenbauer_eval(n, 0.0, t)
    return (n + lam) / lam * gegenbauer_eval(n, lam, t)


def gegenbauer_monomial_coeffs(n, lam):
    """Monomial coefficients of ((n+lam)/lam) C_n^lam, degree-indexed.

    Returned array ``a`` satisfies ((n+lam)/lam) C_n^lam(t) = sum a[k] t^k.
    Built by running the three-term recurrence on coefficient vectors.
    Only safe for moderate n (the expansion is ill-conditioned for large
    degree); callers should prefer direct recurrence evaluation past
    n ~ 20.
    """
    coeffs = [np.zeros(k + 1) for k in (0, 1)]
    coeffs[0][0] = 1.0
    coeffs[1][1] = 2.0 * lam
    if lam == 0.0:
        coeffs[1][1] = 2.0  # limit convention: degree-1 kernel is 2 T_1
    for k in range(1, n):
        nxt = np.zeros(k + 2)
        nxt[1:] = 2.0 * (k + lam) * coeffs[-1]
        nxt[: k] -= (k + 2.0 * lam - 1.0) * coeffs[-2]
        coeffs.append(nxt / (k + 1.0))
    a = coeffs[n] if n <= 1 else coeffs[-1]
    if n == 0:
        return a.copy()
    if lam == 0.0:
        # recurrence above already tracks lim C_n^lam/lam; kernel = n * that
        return n * a
    return (n + lam) / lam * a


def gauss_jacobi_rule(m, alpha, beta) -> JacobiRule:
    """m-point Gauss-Jacobi rule for (1-t)^alpha (1+t)^beta on [-1, 1]."""
    if m < 1:
        raise ValueError("node count m must be >= 1")
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError("Jacobi exponents must satisfy alpha, beta > -1")
    nodes, weights = roots_jacobi(m, alpha, beta)
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    return JacobiRule(alpha=float(alpha), beta=float(beta), nodes=nodes, weights=weights)


def c_lambda(lam, allow_zero=False):
    """Normalization of (sin theta)^{2 lam} d theta on [0, pi] to total mass 1.

    c_lambda(lam) = Gamma(lam+1) / (sqrt(pi) Gamma(lam+1/2)).  The value
    lam = 0 (the d = 1, kappa = 0 degenerate case, where the formula gives
    1/pi) must be requested explicitly.
    """
    if lam <= 0.0 and not (allow_zero and lam == 0.0):
        raise ValueError("c_lambda requires lambda > 0 (pass allow_zero for lambda = 0)")
    return math.exp(gammaln(lam + 1.0) - gammaln(lam + 0.5)) / math.sqrt(math.pi)


def a_kappa(kappa, d=None, exact_degree=30):
    """Reciprocal of the weighted surface mass, 1 / int_{S^d} h_kappa^2 dw.

    Computed from the weighted quadrature grid (the grid absorbs the
    weight into per-coordinate Gauss-Jacobi factors, so the total mass is
    exact up to roundoff and stable under refinement).
    """
    from dunkl_sphere.geometry import weighted_sphere_grid

    kap = kappa.kappa if isinstance(kappa, MultiplicityVector) else np.asarray(kappa, float)
    if d is None:
        d = kap.size - 1
    if kap.size != d + 1:
        raise ValueError("kappa must have d+1 entries")
    grid = weighted_sphere_grid(d, kap, exact_degree)
    return 1.0 / float(grid.weights.sum())
