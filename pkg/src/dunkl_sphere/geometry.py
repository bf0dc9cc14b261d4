"""Points, caps, distances and quadrature grids on S^d, B^d and T^d.

Points are plain numpy arrays (length d+1 unit vectors on the sphere,
length d vectors on the ball/simplex).  Supported dimensions are d = 1, 2.

Two families of grids are provided:

* plain grids (``sphere_grid``, ``ball_grid``) whose weights integrate the
  unweighted measure of the domain, and
* weighted grids (``weighted_sphere_grid`` and friends) whose weights
  absorb the product weight ``prod |y_j|^{2 tau_j}`` (resp. its ball and
  simplex counterparts) into per-coordinate Gauss-Jacobi factors, so that
  integrals of polynomials against the weight are exact and no node ever
  hits a singular hyperplane.

``cap_quadrature`` builds a quadrature rule over a geodesic cap in
cap-local coordinates, splitting the radial and azimuthal directions at
the known kink locations of the product weight (wall tangencies and wall
crossings) and applying tanh-sinh nodes on each smooth piece.  It backs
the weighted cap measures of all three domains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from dunkl_sphere.specfun import gauss_jacobi_rule

__all__ = [
    "QuadratureGrid",
    "SphericalCap",
    "sphere_grid",
    "weighted_sphere_grid",
    "ball_grid",
    "weighted_ball_grid",
    "weighted_simplex_grid",
    "geodesic",
    "ball_distance",
    "simplex_distance",
    "lift_to_sphere",
    "ball_to_simplex",
    "simplex_to_ball",
    "cap_quadrature",
    "tanh_sinh_rule",
]

_SUPPORTED_D = (1, 2)
_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes and weights on one of the three domains.

    ``domain`` is "sphere", "ball" or "simplex"; ``density`` records what
    the weights integrate ("surface" for the plain measure, "weighted"
    when a product weight is absorbed).  ``exact_degree`` is the largest
    total polynomial degree integrated exactly (against the absorbed
    density).
    """

    domain: str
    d: int
    points: np.ndarray
    weights: np.ndarray
    exact_degree: int
    density: str = "surface"
    tau: np.ndarray | None = None

    def __post_init__(self):
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be strictly positive")

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def integrate(self, values) -> float:
        values = np.asarray(values, dtype=float)
        return float(np.dot(self.weights, values))


@dataclass(frozen=True)
class SphericalCap:
    """Geodesic cap c(x, theta) = {y : <x, y> >= cos theta}; boundary points count as inside."""

    center: np.ndarray
    angle: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        if abs(np.linalg.norm(c) - 1.0) > 1e-10:
            raise ValueError("cap center must be a unit vector")
        if not 0.0 <= self.angle <= math.pi:
            raise ValueError("cap angle must lie in [0, pi]")
        object.__setattr__(self, "center", c)

    def contains(self, y) -> np.ndarray:
        y = np.atleast_2d(np.asarray(y, dtype=float))
        inside = y @ self.center >= math.cos(self.angle)
        return inside if inside.size > 1 else bool(inside[0])


def _check_d(d):
    if d not in _SUPPORTED_D:
        raise ValueError(f"dimension d={d} unsupported; supported: {_SUPPORTED_D}")


def _as_unit(x):
    x = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > 1e-10:
        raise ValueError("point must lie on the unit sphere")
    return x / np.linalg.norm(x)


# ---------------------------------------------------------------------------
# distances and domain mappings


def geodesic(x, y):
    """Geodesic distance arccos <x, y> on the sphere, clamped to [0, pi]."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(np.arccos(np.clip(np.dot(x, y), -1.0, 1.0)))


def lift_to_sphere(x):
    """phi(x) = (x, sqrt(1 - |x|^2)): B^d into the upper hemisphere of S^d."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    r2 = float(np.dot(x, x))
    if r2 > 1.0 + _UNIT_TOL:
        raise ValueError("point outside the closed unit ball")
    return np.append(x, math.sqrt(max(0.0, 1.0 - r2)))


def ball_distance(x, y):
    """d_B(x, y) = arccos(<x,y> + sqrt(1-|x|^2) sqrt(1-|y|^2))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    for p in (x, y):
        if np.dot(p, p) > 1.0 + 1e-10:
            raise ValueError("ball_distance: point outside the closed unit ball")
    inner = np.dot(x, y) + math.sqrt(max(0.0, 1.0 - np.dot(x, x))) * math.sqrt(
        max(0.0, 1.0 - np.dot(y, y))
    )
    return float(np.arccos(np.clip(inner, -1.0, 1.0)))


def _check_simplex(x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < -1e-10) or x.sum() > 1.0 + 1e-10:
        raise ValueError("point outside the closed simplex T^d")
    return np.clip(x, 0.0, None)


def simplex_distance(x, y):
    """d_T(x, y) = arccos(<sqrt x, sqrt y> + sqrt(1-|x|) sqrt(1-|y|))."""
    x = _check_simplex(x)
    y = _check_simplex(y)
    inner = np.dot(np.sqrt(x), np.sqrt(y)) + math.sqrt(max(0.0, 1.0 - x.sum())) * math.sqrt(
        max(0.0, 1.0 - y.sum())
    )
    return float(np.arccos(np.clip(inner, -1.0, 1.0)))


def ball_to_simplex(x):
    """Coordinatewise square, B^d -> T^d (the conjugation direction used by every identity)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.dot(x, x) > 1.0 + 1e-10:
        raise ValueError("point outside the closed unit ball")
    return x * x


def simplex_to_ball(x):
    """Coordinatewise square root, T^d -> B^d (first-orthant representative)."""
    return np.sqrt(_check_simplex(x))


# ---------------------------------------------------------------------------
# one-dimensional building blocks


@lru_cache(maxsize=None)
def tanh_sinh_rule(half_points=30):
    """Truncated tanh-sinh rule on (-1, 1) with accurate endpoint distances.

    Returns (x, w, dist_left, dist_right) where dist_left = 1 + x and
    dist_right = 1 - x are computed cancellation-free, so the rule handles
    integrable algebraic endpoint singularities down to exponent -0.9
    without the nodes collapsing onto the endpoints in floating point.
    """
    k = np.arange(-half_points, half_points + 1)
    h = 4.8 / half_points
    u = k * h
    v = 0.5 * math.pi * np.sinh(u)
    x = np.tanh(v)
    w = 0.5 * math.pi * h * np.cosh(u) / np.cosh(v) ** 2
    with np.errstate(over="ignore"):
        dist_right = 2.0 / (np.exp(2.0 * v) + 1.0)
        dist_left = 2.0 / (np.exp(-2.0 * v) + 1.0)
    keep = w > 1e-280
    return x[keep], w[keep], dist_left[keep], dist_right[keep]


def _segment_positions(lo, hi, ts, min_dist=0.0):
    """Two-sided node placement on [lo, hi]; accurate near both endpoints.

    ``min_dist`` drops nodes closer than that to either endpoint.  The
    radial direction of the cap rule uses it: below ~1e-14 the position
    no longer resolves in floating point, which would corrupt the
    azimuthal cut geometry, while the dropped mass is negligible for
    every integrable endpoint exponent.
    """
    x, w, dl, dr = ts
    half = 0.5 * (hi - lo)
    pos = np.where(x <= 0.0, lo + half * dl, hi - half * dr)
    if min_dist > 0.0:
        keep = (half * np.minimum(dl, dr)) > min_dist
        return pos[keep], half * w[keep]
    return pos, half * w


@lru_cache(maxsize=None)
def _circle_quadrant_rule(tau1, tau2, m):
    """Nodes/weights on (0, pi/2) integrating f(phi) cos^{2 tau1} sin^{2 tau2} d phi.

    Substituting t = cos 2 phi turns the quadrant integral into a Jacobi
    integral with exponents (tau2 - 1/2, tau1 - 1/2); exact for f that is a
    polynomial of degree <= 2(2m-1) in (cos phi, sin phi) restricted to even
    parity (odd parity cancels across mirrored quadrants).
    """
    rule = gauss_jacobi_rule(m, tau2 - 0.5, tau1 - 0.5)
    phi = 0.5 * np.arccos(rule.nodes)
    w = 2.0 ** (-tau1 - tau2 - 1.0) * rule.weights
    return phi, w


def _circle_weighted_nodes(tau, m):
    """Full-circle angles/weights for the density |cos|^{2 tau1} |sin|^{2 tau2} d phi."""
    tau1, tau2 = float(tau[0]), float(tau[1])
    phi, w = _circle_quadrant_rule(tau1, tau2, m)
    angles = np.concatenate([phi, math.pi - phi, math.pi + phi, 2.0 * math.pi - phi])
    weights = np.concatenate([w, w, w, w])
    return angles, weights


@lru_cache(maxsize=None)
def _polar_half_rule(exp_sin2, exp_abscos2, m):
    """Nodes/weights on u in (0,1) for int_0^1 g(u) (1-u^2)^{a} |u|^{2b} du.

    a = exp_sin2, b = exp_abscos2.  Substituting v = 2u^2 - 1 gives a
    Jacobi integral with exponents (a, b - 1/2); the mirrored half covers
    u < 0.
    """
    rule = gauss_jacobi_rule(m, exp_sin2, exp_abscos2 - 0.5)
    u = np.sqrt(0.5 * (1.0 + rule.nodes))
    w = 2.0 ** (-(exp_sin2 + exp_abscos2) - 1.5) * rule.weights
    return u, w


# ---------------------------------------------------------------------------
# grids


def sphere_grid(d, exact_degree) -> QuadratureGrid:
    """Tensor quadrature grid on S^d exact for polynomials of total degree <= exact_degree.

    d = 1: equispaced trapezoid points on the circle.  d = 2: uniform
    azimuthal angle times Gauss-Legendre in cos(polar angle), the sin
    Jacobian absorbed into the rule.
    """
    _check_d(d)
    if exact_degree < 1:
        raise ValueError("exact_degree must be >= 1")
    if d == 1:
        m = exact_degree + 1
        phi = 2.0 * math.pi * np.arange(m) / m
        pts = np.column_stack([np.cos(phi), np.sin(phi)])
        w = np.full(m, 2.0 * math.pi / m)
        return QuadratureGrid("sphere", 1, pts, w, exact_degree)
    m_phi = exact_degree + 1
    m_t = (exact_degree + 2) // 2
    rule = gauss_jacobi_rule(m_t, 0.0, 0.0)
    phi = 2.0 * math.pi * np.arange(m_phi) / m_phi
    t, wt = rule.nodes, rule.weights
    s = np.sqrt(1.0 - t**2)
    pts = np.empty((m_t * m_phi, 3))
    pts[:, 0] = np.outer(s, np.cos(phi)).ravel()
    pts[:, 1] = np.outer(s, np.sin(phi)).ravel()
    pts[:, 2] = np.repeat(t, m_phi)
    w = np.repeat(wt, m_phi) * (2.0 * math.pi / m_phi)
    return QuadratureGrid("sphere", 2, pts, w, exact_degree)


def weighted_sphere_grid(d, tau, exact_degree) -> QuadratureGrid:
    """Grid whose weights absorb prod |y_j|^{2 tau_j}: sums integrate f * h_tau^2 dw.

    Requires every tau_j > -1/2.  Exact for polynomial f of total degree
    <= exact_degree; nodes avoid all singular hyperplanes.
    """
    _check_d(d)
    tau = np.asarray(tau, dtype=float)
    if tau.size != d + 1:
        raise ValueError("tau must have d+1 entries")
    if np.any(tau <= -0.5):
        raise ValueError("weighted grids require every tau_j > -1/2")
    m = max(4, exact_degree // 4 + 2)
    if d == 1:
        phi, w = _circle_weighted_nodes(tau, m)
        pts = np.column_stack([np.cos(phi), np.sin(phi)])
        return QuadratureGrid("sphere", 1, pts, w, exact_degree, "weighted", tau)
    phi, w_phi = _circle_weighted_nodes(tau[:2], m)
    u, w_u = _polar_half_rule(float(tau[0] + tau[1]), float(tau[2]), m)
    u = np.concatenate([u, -u])
    w_u = np.concatenate([w_u, w_u])
    s = np.sqrt(1.0 - u**2)
    pts = np.empty((u.size * phi.size, 3))
    pts[:, 0] = np.outer(s, np.cos(phi)).ravel()
    pts[:, 1] = np.outer(s, np.sin(phi)).ravel()
    pts[:, 2] = np.repeat(u, phi.size)
    w = np.repeat(w_u, phi.size) * np.tile(w_phi, u.size)
    return QuadratureGrid("sphere", 2, pts, w, exact_degree, "weighted", tau)


def weighted_ball_grid(d, tau, exact_degree) -> QuadratureGrid:
    """Grid on B^d integrating f * prod |x_i|^{2 tau_i} (1-|x|^2)^{tau_{d+1}-1/2} dx."""
    _check_d(d)
    tau = np.asarray(tau, dtype=float)
    if tau.size != d + 1:
        raise ValueError("tau must have d+1 entries")
    if np.any(tau <= -0.5):
        raise ValueError("weighted grids require every tau_j > -1/2")
    m = max(4, exact_degree // 4 + 2)
    if d == 1:
        u, w_u = _polar_half_rule(float(tau[1] - 0.5), float(tau[0]), m)
        pts = np.concatenate([u, -u])[:, None]
        w = np.concatenate([w_u, w_u])
        return QuadratureGrid("ball", 1, pts, w, exact_degree, "weighted", tau)
    # polar: radial density r^{2 tau1 + 2 tau2 + 1} (1-r^2)^{tau3 - 1/2},
    # angular density |cos|^{2 tau1} |sin|^{2 tau2}
    rule = gauss_jacobi_rule(m, float(tau[2] - 0.5), float(tau[0] + tau[1]))
    r = np.sqrt(0.5 * (1.0 + rule.nodes))
    w_r = 2.0 ** (-(tau[0] + tau[1] + tau[2]) - 1.5) * rule.weights
    phi, w_phi = _circle_weighted_nodes(tau[:2], m)
    pts = np.empty((r.size * phi.size, 2))
    pts[:, 0] = np.outer(r, np.cos(phi)).ravel()
    pts[:, 1] = np.outer(r, np.sin(phi)).ravel()
    w = np.repeat(w_r, phi.size) * np.tile(w_phi, r.size)
    return QuadratureGrid("ball", 2, pts, w, exact_degree, "weighted", tau)


def ball_grid(d, exact_degree, boundary_exponent=0.0) -> QuadratureGrid:
    """Grid on B^d for the density (1-|x|^2)^{boundary_exponent} dx.

    boundary_exponent = 0 gives the plain Lebesgue measure;
    boundary_exponent = -1/2 is the Jacobian density of the sphere-ball
    correspondence.
    """
    tau = np.zeros(d + 1)
    tau[-1] = boundary_exponent + 0.5
    grid = weighted_ball_grid(d, tau, exact_degree)
    return QuadratureGrid("ball", d, grid.points, grid.weights, exact_degree,
                          "surface" if boundary_exponent == 0.0 else "weighted", tau)


def weighted_simplex_grid(d, tau, exact_degree) -> QuadratureGrid:
    """Grid on T^d integrating f * prod x_i^{tau_i-1/2} (1-|x|)^{tau_{d+1}-1/2} dx.

    Built from the weighted ball grid via the squaring map: squaring the
    positive-quadrant ball nodes and rescaling by 2^d reproduces every
    simplex integral exactly.
    """
    ball = weighted_ball_grid(d, tau, exact_degree)
    positive = np.all(ball.points > 0, axis=1)
    pts = ball.points[positive] ** 2
    w = ball.weights[positive] * 2.0**d
    return QuadratureGrid("simplex", d, pts, w, exact_degree, "weighted",
                          np.asarray(tau, dtype=float))


# ---------------------------------------------------------------------------
# cap-local quadrature


def _tangent_frame(x):
    x = np.asarray(x, dtype=float)
    k = int(np.argmin(np.abs(x)))
    e = np.zeros_like(x)
    e[k] = 1.0
    a = e - x * x[k]
    a /= np.linalg.norm(a)
    b = np.array([x[1] * a[2] - x[2] * a[1],
                  x[2] * a[0] - x[0] * a[2],
                  x[0] * a[1] - x[1] * a[0]])
    return a, b


def _coordinate_cuts(c, a, b, lo, hi):
    """Zeros of y_j(psi) = c_j + a_j cos psi + b_j sin psi inside (lo, hi).

    Each cut carries the index of the vanishing coordinate together with
    cos/sin of (psi - rho_j) at the zero, which lets the node evaluation
    reconstruct the vanishing coordinate near the cut without cancellation.
    """
    def in_range(base):
        out = []
        k0 = math.ceil((lo - base) / (2.0 * math.pi))
        k1 = math.floor((hi - base) / (2.0 * math.pi))
        for k in range(k0, k1 + 1):
            psi = base + 2.0 * math.pi * k
            if lo < psi < hi:
                out.append(psi)
        return out

    cuts = []
    for j in range(len(c)):
        r = math.hypot(a[j], b[j])
        if r < 1e-15:
            continue
        rho = math.atan2(b[j], a[j])
        if abs(c[j]) > r:
            # near miss: the integrand spikes in a boundary layer of
            # width ~sqrt(2 eps / r) at the extremum closest to the wall;
            # record the layer scale so the segment rule can resolve it
            ratio = (abs(c[j]) - r) / r
            if ratio < 0.6:
                layer = math.sqrt(2.0 * max(ratio, 1e-15))
                base = rho + (math.pi if c[j] > 0 else 0.0)
                cuts.extend((psi, ("near", layer)) for psi in in_range(base))
            continue
        cw = max(-1.0, min(1.0, -c[j] / r))
        w0 = math.acos(cw)
        sw = math.sqrt(max(0.0, 1.0 - cw * cw))
        for branch, s_sign in ((w0, sw), (-w0, -sw)):
            for psi in in_range(rho + branch):
                cuts.append((psi, (j, cw, s_sign)))
    return sorted(cuts, key=lambda t: t[0])


def _eval_coords(c, a, b, psi):
    return c + np.outer(np.cos(psi), a) + np.outer(np.sin(psi), b)


def _segment_coords(c, a, b, p, cut_info, s_dir, delta):
    """Coordinates at psi = p + s_dir * delta, anchored at the endpoint p.

    Uses y_j(p + s delta) = y_j(p) - R_j [cos(p-rho_j) 2 sin^2(delta/2)
    + s sin(p-rho_j) sin(delta)], which stays accurate for delta far below
    floating-point resolution of psi itself.  ``cut_info`` identifies the
    coordinate that vanishes exactly at p (if any), whose anchor value is
    replaced by an exact zero.
    """
    rr = np.hypot(a, b)
    rho = np.arctan2(b, a)
    cpr = np.cos(p - rho)
    spr = np.sin(p - rho)
    y_p = c + rr * cpr
    if cut_info is not None:
        j, cw, sw = cut_info
        y_p[j] = 0.0
        cpr[j] = cw
        spr[j] = sw
    shrink = 2.0 * np.sin(0.5 * delta) ** 2
    return (
        y_p[None, :]
        - np.outer(shrink, rr * cpr)
        - s_dir * np.outer(np.sin(delta), rr * spr)
    )


@lru_cache(maxsize=None)
def _gl_rule(n=16):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _ts_side_nodes(length, ts):
    """Full tanh-sinh rule over [0, length], anchored at the 0 end."""
    x_ts, w_ts, dl, dr = ts
    half = 0.5 * length
    delta = np.where(x_ts <= 0.0, half * dl, length - half * dr)
    return delta, half * w_ts


def _layered_side_nodes(length, layer, singular, ts):
    """One-sided rule on [0, length] with an integrand scale change at ``layer``.

    Inside the layer the integrand is single-scale: tanh-sinh when the
    endpoint carries an algebraic singularity, Gauss-Legendre when it is
    merely a spike maximum.  Beyond the layer the behavior is a power law
    in the distance, which log-spaced Gauss-Legendre panels (ratio 4)
    integrate uniformly well whatever the exponent.
    """
    gx, gw = _gl_rule()
    inner_len = min(layer, length)
    if singular:
        delta, w = _ts_side_nodes(inner_len, ts)
        parts_d, parts_w = [delta], [w]
    else:
        half = 0.5 * inner_len
        parts_d = [half * (1.0 + gx)]
        parts_w = [half * gw]
    lo = inner_len
    while lo < length:
        hi = min(4.0 * lo, length)
        mid, hw = 0.5 * (hi + lo), 0.5 * (hi - lo)
        parts_d.append(mid + hw * gx)
        parts_w.append(hw * gw)
        lo = hi
    return np.concatenate(parts_d), np.concatenate(parts_w)


def _kink_split_rule(c, a, b, lo, hi, ts, positive, periodic):
    """Quadrature over [lo, hi] in psi, split at every zero of every coordinate.

    The coordinates are y_j(psi) = c_j + a_j cos psi + b_j sin psi.  Returns
    (Y, w) with Y the coordinate matrix at the nodes.  Segments on which
    y_j < 0 for some j in ``positive`` are dropped.  With ``periodic`` the
    wrap-around piece is merged so that every segment endpoint is a genuine
    zero (or there is a single smooth full-circle segment).  Wall-crossing
    endpoints get tanh-sinh nodes (algebraic singularities), near-miss
    endpoints get sinh-stretched nodes (boundary layers).
    """
    x_ts, w_ts, dl, dr = ts
    cuts = _coordinate_cuts(c, a, b, lo, hi)
    if periodic and cuts:
        segs = []
        for i in range(len(cuts)):
            p0, info0 = cuts[i]
            if i + 1 < len(cuts):
                p1, info1 = cuts[i + 1]
            else:
                p1, info1 = cuts[0]
                p1 += 2.0 * math.pi
            segs.append(((p0, info0), (p1, info1)))
    else:
        ends = [(lo, None)] + cuts + [(hi, None)]
        segs = list(zip(ends[:-1], ends[1:]))

    all_cuts = [p for p, _ in cuts]
    if periodic:
        all_cuts = all_cuts + [p + 2.0 * math.pi for p in all_cuts] + [
            p - 2.0 * math.pi for p in all_cuts
        ]

    def side_plan(p, info, half):
        """(anchor_info, layer, singular) for one segment side; layer None = plain TS.

        The single-scale zone around an endpoint stops at the nearest
        other cut (a close second singularity) or, for a zero cut, where
        the quadratic term of the coordinate overtakes the linear one.
        """
        if info is None:
            return None, None, False
        gap = min((abs(p - q) for q in all_cuts if abs(p - q) > 1e-13), default=math.inf)
        if info[0] == "near":
            layer = min(max(info[1], 1e-14), gap)
            return None, layer, False
        j, cw, sw = info
        crossover = min(2.0 * abs(sw) / max(abs(cw), 1e-15), gap)
        if crossover < 0.5 * half:
            return info, max(crossover, 1e-14), True
        return info, None, False

    left_mask = x_ts <= 0.0
    pts_out, w_out = [], []
    for (p0, info0), (p1, info1) in segs:
        if p1 - p0 < 1e-14:
            continue
        mid = 0.5 * (p0 + p1)
        y_mid = _eval_coords(c, a, b, np.array([mid]))[0]
        if any(y_mid[j] <= 0 for j in positive):
            continue
        half = 0.5 * (p1 - p0)
        anchor0, layer0, sing0 = side_plan(p0, info0, half)
        anchor1, layer1, sing1 = side_plan(p1, info1, half)
        layered = layer0 is not None or layer1 is not None
        for p, anchor, layer, sing, s_dir in (
            (p0, anchor0, layer0, sing0, +1.0),
            (p1, anchor1, layer1, sing1, -1.0),
        ):
            if layered:
                # midpoint split: each half gets its own one-sided rule
                if layer is not None:
                    delta, w = _layered_side_nodes(half, layer, sing, ts)
                else:
                    delta, w = _ts_side_nodes(half, ts)
            else:
                # both ends plain: share one tanh-sinh rule across the segment
                if s_dir > 0:
                    delta, w = half * dl[left_mask], half * w_ts[left_mask]
                else:
                    delta, w = half * dr[~left_mask], half * w_ts[~left_mask]
            pts_out.append(_segment_coords(c, a, b, p, anchor, s_dir, delta))
            w_out.append(w)
    if not pts_out:
        return np.zeros((0, len(c))), np.zeros(0)
    return np.vstack(pts_out), np.concatenate(w_out)


def cap_quadrature(center, theta, half_points=24, positive=()):
    """Quadrature rule over the geodesic cap c(center, theta) on S^d, d in {1, 2}.

    Returns (points, weights) integrating the surface measure over the
    cap.  The rule is built in cap-local coordinates with tanh-sinh nodes
    on each piece cut at the kinks of the product weight: radial panels
    split where the cap boundary is tangent to a wall {y_j = 0}, azimuthal
    segments split where the boundary circle crosses a wall.  Node
    coordinates near a wall are reconstructed from the cut data, so the
    weight stays evaluable for exponents down to -0.9.  Segments on which
    y_j < 0 for some j in ``positive`` are dropped, which restricts the
    rule to the corresponding orthant.
    """
    x = _as_unit(center)
    if not 0.0 < theta <= math.pi:
        raise ValueError("cap angle must lie in (0, pi]")
    ts = tanh_sinh_rule(half_points)
    dim = x.size
    if dim == 2:
        alpha = math.atan2(x[1], x[0])
        return _kink_split_rule(
            np.zeros(2), np.array([1.0, 0.0]), np.array([0.0, 1.0]),
            alpha - theta, alpha + theta, ts, positive, periodic=False,
        )
    if dim != 3:
        raise ValueError("cap_quadrature supports S^1 and S^2 only")

    # radial kinks: tangencies to each wall at arcsin|x_j|, and the axis
    # points +-e_j (where two walls cross) at arccos|x_j|, plus antipodes
    breaks = {0.0, theta}
    for xj in np.abs(x):
        for t0 in (math.asin(min(1.0, xj)), math.acos(min(1.0, xj))):
            for s in (t0, math.pi - t0):
                if 0.0 < s < theta:
                    breaks.add(s)
    breaks = sorted(breaks)
    e_a, e_b = _tangent_frame(x)

    pts_out, w_out = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        phis, w_phis = _segment_positions(lo, hi, ts, min_dist=1e-14)
        for phi, w_phi in zip(phis, w_phis):
            cphi, sphi = math.cos(phi), math.sin(phi)
            ys, w_psi = _kink_split_rule(
                cphi * x, sphi * e_a, sphi * e_b,
                0.0, 2.0 * math.pi, ts, positive, periodic=True,
            )
            if ys.shape[0]:
                pts_out.append(ys)
                w_out.append(w_phi * sphi * w_psi)
    if not pts_out:
        return np.zeros((0, 3)), np.zeros(0)
    return np.vstack(pts_out), np.concatenate(w_out)
