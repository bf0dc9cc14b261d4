"""Weight functions and weighted cap measures on the sphere, ball and simplex.

The canonical density per domain (the single bookkeeping convention every
comparand is derived from) is

* sphere:  prod |y_j|^{2 tau_j},
* ball:    prod |x_i|^{2 tau_i} (1 - |x|^2)^{tau_{d+1} - 1/2},
* simplex: prod x_i^{tau_i - 1/2} (1 - |x|)^{tau_{d+1} - 1/2}.

Cap measures integrate the density over metric balls of the domain's own
distance (geodesic, d_B, d_T).  Ball and simplex cap measures are reduced
to restricted sphere caps through the lifting map and the squaring map,
so a single cap-local integrator serves all three domains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dunkl_sphere.geometry import cap_quadrature, lift_to_sphere, simplex_to_ball

__all__ = [
    "WeightSpec",
    "weight_eval",
    "cap_measure",
    "lemma3_comparand",
    "sphere_density",
    "power_density",
]

_DOMAINS = ("sphere", "ball", "simplex")


@dataclass(frozen=True)
class WeightSpec:
    """Domain plus the exponent vector tau (each tau_j > -1/2).

    The -1/2 lower bound is the integrability range of the extended
    product weights; the cap-measure comparison is only exercised down to
    tau_j = -0.4 in the shipped experiments.
    """

    domain: str
    tau: np.ndarray

    def __post_init__(self):
        if self.domain not in _DOMAINS:
            raise ValueError(f"domain must be one of {_DOMAINS}")
        tau = np.atleast_1d(np.asarray(self.tau, dtype=float))
        if tau.size < 2:
            raise ValueError("tau must have d+1 >= 2 entries")
        if np.any(tau <= -0.5):
            raise ValueError("every tau_j must exceed -1/2")
        object.__setattr__(self, "tau", tau)

    @property
    def d(self) -> int:
        return self.tau.size - 1


def power_density(y, exponents):
    """prod |y_j|^{e_j} with +inf signalled on singular hyperplanes.

    Used with e = 2 tau for the canonical sphere density and with the raw
    printed exponents in the cap-measure comparison, which is stated for
    prod |y_j|^{tau_j}.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    e = np.asarray(exponents, dtype=float)
    out = np.ones(y.shape[0])
    with np.errstate(divide="ignore"):
        for j, ej in enumerate(e):
            if ej == 0.0:
                continue
            out = out * np.abs(y[:, j]) ** ej
    return out


def sphere_density(spec: WeightSpec):
    """Exponent vector of the canonical sphere density h_tau^2 = prod |y_j|^{2 tau_j}."""
    return 2.0 * spec.tau


def weight_eval(spec: WeightSpec, x):
    """Evaluate the canonical density of ``spec`` at one or many points.

    Sphere points have d+1 coordinates, ball/simplex points d.  Points on
    a singular hyperplane with a negative exponent evaluate to +inf.
    """
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    tau = spec.tau
    if spec.domain == "sphere":
        out = power_density(pts, 2.0 * tau)
    elif spec.domain == "ball":
        r2 = np.sum(pts * pts, axis=1)
        out = power_density(pts, 2.0 * tau[:-1])
        out = out * _boundary_power(1.0 - r2, tau[-1] - 0.5)
    else:
        s = np.sum(pts, axis=1)
        out = power_density(pts, tau[:-1] - 0.5)
        out = out * _boundary_power(1.0 - s, tau[-1] - 0.5)
    return out if np.asarray(x).ndim > 1 else float(out[0])


def _boundary_power(base, expo):
    if expo == 0.0:
        return np.ones_like(base)
    base = np.clip(base, 0.0, None)
    with np.errstate(divide="ignore"):
        return base**expo


def _sphere_cap_nodes(spec, center, theta, half_points, exponents=None):
    """Cap nodes, weights and density values for the lifted sphere problem.

    Returns the sphere-cap quadrature of the requested power density,
    restricted to the orthant that realizes the ball or simplex measure.
    """
    if spec.domain == "sphere":
        x, positive = np.asarray(center, dtype=float), ()
        scale = 1.0
    elif spec.domain == "ball":
        x = lift_to_sphere(center)
        positive = (spec.d,)
        scale = 1.0
    else:
        x = lift_to_sphere(simplex_to_ball(center))
        positive = tuple(range(spec.d + 1))
        scale = 2.0**spec.d
    pts, w = cap_quadrature(x, theta, half_points=half_points, positive=positive)
    e = sphere_density(spec) if exponents is None else np.asarray(exponents, float)
    return pts, w, power_density(pts, e), scale


def cap_measure(spec: WeightSpec, center, theta, half_points=24, exponents=None):
    """Weighted measure of the metric ball of radius theta around ``center``.

    Sphere: meas_tau c(x, theta); ball: the W_tau^B measure of a d_B ball,
    computed as the upper-hemisphere part of the lifted spherical cap;
    simplex: the W_tau^T measure of a d_T ball via the squaring map.
    ``exponents`` overrides the sphere density (used by the raw-exponent
    cap comparison); it is only meaningful on the sphere.
    """
    if not 0.0 < theta <= math.pi:
        raise ValueError("theta must lie in (0, pi]")
    _, w, dens, scale = _sphere_cap_nodes(spec, center, theta, half_points, exponents)
    return scale * float(np.dot(w, dens))


def lemma3_comparand(spec: WeightSpec, center, theta, exponents=None):
    """Closed-form comparand theta^d * prod (|x_j| + theta)^{e_j}.

    On the sphere the canonical density uses e = 2 tau (pass
    ``exponents=tau`` for the raw printed convention).  On the ball and
    simplex the exponents are 2 tau with the lifted last coordinate
    x_{d+1} = sqrt(1 - |x|^2) (square roots of the coordinates first, for
    the simplex).
    """
    if not 0.0 < theta <= math.pi:
        raise ValueError("theta must lie in (0, pi]")
    if spec.domain == "sphere":
        x = np.asarray(center, dtype=float)
        e = sphere_density(spec) if exponents is None else np.asarray(exponents, float)
    elif spec.domain == "ball":
        x = lift_to_sphere(center)
        e = 2.0 * spec.tau
    else:
        x = lift_to_sphere(simplex_to_ball(center))
        e = 2.0 * spec.tau
    return theta**spec.d * float(np.prod((np.abs(x) + theta) ** e))
