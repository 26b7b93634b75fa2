"""Whittaker functions, the Whittaker kernel and mixed correlation functions.

W_{kappa,mu}(x) = exp(-x/2) x^{mu+1/2} U(1/2+mu-kappa, 1+2mu, x).  U is taken
from its Laplace-type integral at a shifted first parameter with real part
at least one, then brought back with the three-term recurrence in the first
parameter, run downwards (the stable direction for U).  Two cases bypass the
integral: terminating U (first parameter a nonpositive integer) is summed as a
polynomial, and for x < 2 with |Im b| >= 1/2 the oscillating integral is
replaced by the Kummer connection formula.
"""
from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import special

from . import scalars
from .errors import ConvergenceFailure, DomainError, DuplicatePoint, ParameterOutOfRegime, QuadratureFailure

ACCEPT_RTOL = 1e-9


_GL = {n: np.polynomial.legendre.leggauss(n) for n in (20, 30)}


def _softplus(y: np.ndarray) -> np.ndarray:
    return np.where(y > 0, y + np.log1p(np.exp(-np.abs(y))), np.log1p(np.exp(np.minimum(y, 0))))


def _u_integral(a: complex, b: complex, x: float) -> complex:
    """U(a,b,x) for Re a >= 1 from 1/Gamma(a) int_0^inf e^{-xt} t^{a-1} (1+t)^{b-a-1} dt.

    Integrated in y = log t with composite Gauss-Legendre panels short enough
    for the oscillation of t^{i Im a} (1+t)^{i Im c}; limits are where the
    integrand has fallen 45 e-folds below its peak.
    """
    c = b - a - 1

    def log_integrand(y):
        return -x * np.exp(y) + a * y + c * _softplus(y)

    hi = math.log((2 * max(b.real - 1, 0.0) + 120.0) / x)
    coarse = np.arange(-90.0, hi + 0.25, 0.25)
    mag = log_integrand(coarse).real
    peak = mag.max()
    keep = np.nonzero(mag > peak - 45.0)[0]
    y_lo, y_hi = coarse[keep[0]] - 0.5, coarse[keep[-1]] + 0.5
    freq = abs(a.imag) + abs(c.imag) + 1.0
    h = min(0.5, 3.0 / freq)
    panels = max(1, math.ceil((y_hi - y_lo) / h))
    edges = np.linspace(y_lo, y_hi, panels + 1)
    mids, halves = (edges[1:] + edges[:-1]) / 2, (edges[1:] - edges[:-1]) / 2
    results = []
    for n in (20, 30):
        nodes, weights = _GL[n]
        ys = (mids[:, None] + halves[:, None] * nodes[None, :]).ravel()
        ws = (halves[:, None] * weights[None, :]).ravel()
        results.append(np.sum(ws * np.exp(log_integrand(ys) - peak)))
    val = complex(results[1])
    err = abs(results[1] - results[0])
    if not math.isfinite(abs(val)) or err > ACCEPT_RTOL * max(abs(val), 1e-300):
        raise ConvergenceFailure(
            f"U integral did not converge for a={a}, b={b}, x={x}",
            {"a": a, "b": b, "x": x, "value": val, "error": err},
        )
    return cmath.exp(peak - special.loggamma(a)) * val


SERIES_SWITCH = 2.0
SERIES_MIN_IMAG = 0.5  # below this the two Kummer terms cancel badly


def kummer_m(a: complex, b: complex, x: float, max_terms: int = 2000) -> complex:
    """Regularised-free Kummer series M(a, b, x) = sum (a)_n / (b)_n x^n / n!."""
    term = 1.0 + 0j
    total = term
    for n in range(max_terms):
        term *= (a + n) / (b + n) * x / (n + 1)
        total += term
        if abs(term) <= 1e-17 * abs(total) and n > abs(a) + 2:
            return total
    raise ConvergenceFailure(f"Kummer series did not converge for a={a}, b={b}, x={x}",
                             {"a": a, "b": b, "x": x})


def _u_connection(a: complex, b: complex, x: float) -> complex:
    """U from two Kummer series; valid for non-integer b, used for small x."""
    lg = special.loggamma
    first = cmath.exp(lg(1 - b) - lg(a - b + 1)) * kummer_m(a, b, x) if not _nonpos_int(a - b + 1) else 0j
    second = (cmath.exp(lg(b - 1) - lg(a) + (1 - b) * math.log(x)) * kummer_m(a - b + 1, 2 - b, x)
              if not _nonpos_int(a) else 0j)
    return first + second


def _u_polynomial(m: int, b: complex, x: float) -> complex:
    """U(-m, b, x) = (-1)^m (b)_m M(-m, b, x), a degree-m polynomial."""
    term = 1.0 + 0j
    total = term
    for s in range(m):
        term *= (s - m) / (b + s) * x / (s + 1)
        total += term
    poch = 1.0 + 0j
    for s in range(m):
        poch *= b + s
    return (-1) ** m * poch * total


def _nonpos_int(v: complex) -> bool:
    return v.imag == 0 and v.real <= 0 and v.real == round(v.real)


@lru_cache(maxsize=65536)
def hyperu(a: complex, b: complex, x: float) -> complex:
    """Tricomi confluent hypergeometric U(a, b, x) for x > 0.

    See the module docstring for which route is taken.
    """
    if not x > 0:
        raise DomainError(f"U needs x > 0, got {x}")
    a, b = complex(a), complex(b)
    if _nonpos_int(a):
        return _u_polynomial(int(round(-a.real)), b, x)
    if abs(b.imag) >= SERIES_MIN_IMAG and x < SERIES_SWITCH:
        return _u_connection(a, b, x)
    shift = max(0, math.ceil(1.0 - a.real))
    top = a + shift
    u_hi = _u_integral(top + 1, b, x)
    u = _u_integral(top, b, x)
    # U(c-1) = -(b - 2c - x) U(c) - c (c - b + 1) U(c+1)
    for j in range(shift):
        c = top - j
        u, u_hi = -(b - 2 * c - x) * u - c * (c - b + 1) * u_hi, u
    return u


def _normalise_mu(mu: complex) -> complex:
    mu = complex(mu)
    return -mu if mu.real < 0 else mu


def whittaker_w(kappa: float, mu: complex, x: float) -> complex:
    """Whittaker W_{kappa,mu}(x) for x > 0 (even in mu)."""
    if not x > 0:
        raise DomainError(f"W needs x > 0, got {x}")
    mu = _normalise_mu(mu)
    a = 0.5 + mu - kappa
    b = 1 + 2 * mu
    return cmath.exp(-x / 2 + (mu + 0.5) * math.log(x)) * hyperu(a, b, x)


def whittaker_w_and_derivative(kappa: float, mu: complex, x: float) -> tuple[complex, complex]:
    """(W, dW/dx), using dU/dx = -a U(a+1, b+1, x)."""
    if not x > 0:
        raise DomainError(f"W needs x > 0, got {x}")
    mu = _normalise_mu(mu)
    a = 0.5 + mu - kappa
    b = 1 + 2 * mu
    pre = cmath.exp(-x / 2 + (mu + 0.5) * math.log(x))
    w = pre * hyperu(a, b, x)
    dw = w * (-0.5 + (mu + 0.5) / x) - a * pre * hyperu(a + 1, b + 1, x)
    return w, dw


# kernel


@dataclass(frozen=True)
class WhittakerParams:
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        if self.z == 0:
            raise DomainError("Whittaker kernel needs z != 0")

    @property
    def a(self) -> float:
        return self.z.real

    @property
    def b(self) -> float:
        return self.z.imag

    @property
    def t(self) -> float:
        return abs(self.z) ** 2


@lru_cache(maxsize=65536)
def side_functions(z: complex, side: int, u: float) -> tuple[float, float, float, float]:
    """(P, Q, P', Q') at u > 0 for side +1 (alpha points) or -1 (beta points, u = |x|).

    P = |z|^{1/2} / |Gamma(1 + side z)| u^{-1/2} W_{side a + 1/2, i b}(u)
    Q = |z|^{3/2} / |Gamma(1 + side z)| u^{-1/2} W_{side a - 1/2, i b}(u)
    """
    z = complex(z)
    g = abs(special.rgamma(1 + side * z))
    a, b = z.real, z.imag
    cp = abs(z) ** 0.5 * g
    cq = abs(z) ** 1.5 * g
    out = []
    for kappa, cst in ((side * a + 0.5, cp), (side * a - 0.5, cq)):
        if cst == 0.0:
            out.append((0.0, 0.0))
            continue
        w, dw = whittaker_w_and_derivative(kappa, 1j * b, u)
        w, dw = w.real, dw.real
        out.append((cst * w / math.sqrt(u), cst * (dw / math.sqrt(u) - 0.5 * w / u**1.5)))
    (p, dp), (q, dq) = out
    return p, q, dp, dq


def whittaker_kernel(z: complex, x: float, y: float) -> float:
    """Kernel K^z(x, y) on the punctured line, diagonal by the derivative limit."""
    if x == 0 or y == 0:
        raise DomainError("kernel is defined on nonzero reals")
    z = complex(z)
    if x > 0 and y > 0:
        return _same_side(z, 1, x, y)
    if x < 0 and y < 0:
        return _same_side(z, -1, -x, -y)
    if x > 0:
        pp, qp, _, _ = side_functions(z, 1, x)
        pm, qm, _, _ = side_functions(z, -1, -y)
        return (pp * pm + qp * qm) / (x - y)
    pm, qm, _, _ = side_functions(z, -1, -x)
    pp, qp, _, _ = side_functions(z, 1, y)
    return (pm * pp + qm * qp) / (x - y)


def _same_side(z: complex, side: int, u: float, v: float) -> float:
    pu, qu, dpu, dqu = side_functions(z, side, u)
    if u == v:
        return dpu * qu - pu * dqu
    pv, qv, _, _ = side_functions(z, side, v)
    return (pu * qv - qu * pv) / (u - v)


def kernel_numerator(z: complex, x: float, y: float) -> float:
    """(x - y) K(x, y) off the diagonal."""
    return whittaker_kernel(z, x, y) * (x - y)


def kernel_matrix(z: complex, points: Sequence[float]) -> np.ndarray:
    pts = [float(p) for p in points]
    return np.array([[whittaker_kernel(z, x, y) for y in pts] for x in pts])


def whittaker_correlation(z: complex, points: Sequence[float]) -> float:
    """det[K(x_i, x_j)]."""
    pts = [float(p) for p in points]
    if any(p == 0 for p in pts):
        raise DomainError("points must be nonzero")
    if len(set(pts)) != len(pts):
        raise DuplicatePoint(f"repeated point in {pts}")
    if not pts:
        return 1.0
    return float(np.linalg.det(kernel_matrix(z, pts)))


# mixed correlations


def dirichlet_prefactor(taus: Sequence[float]) -> float:
    return math.exp(special.gammaln(sum(taus)) - sum(special.gammaln(t) for t in taus))


def _jacobi_rule(n: int, e: float, beta: float):
    """Nodes/weights on [0,1] for weight v^e (1-v)^beta."""
    x, w = special.roots_jacobi(n, beta, e)
    return (1 + x) / 2, w / 2 ** (e + beta + 1)


def _simplex_quadrature(f: Callable, exps: Sequence[float], n: int) -> float:
    """int over the simplex of f(delta) prod delta_l^{e_l}, by stick-breaking into Jacobi rules."""
    k = len(exps)
    rules = []
    for j in range(k - 1):
        beta = sum(e + 1 for e in exps[j + 1:]) - 1
        rules.append(_jacobi_rule(n, exps[j], beta))

    def rec(j, left, deltas):
        if j == k - 1:
            return f(deltas + [left])
        nodes, weights = rules[j]
        return sum(w * rec(j + 1, left * (1 - v), deltas + [left * v]) for v, w in zip(nodes, weights))

    return rec(0, 1.0, [])


def mixed_correlation(group, z: Sequence, colored_points: Sequence[Sequence[float]], tol: float = 1e-6,
                      factor: Callable | None = None, full_output: bool = False, max_nodes: int | None = None):
    """Correlation function of the lifted multi-colour process.

    Gamma(sum tau)/prod Gamma(tau_l) times the simplex integral of
    prod_l rho_{n_l, a_l}(x^{(l)}/delta_l) delta_l^{tau_l - n_l - 1}, tau_l = |a_l|^2.
    Colour l of the multiple z-measure is the z-measure with parameter a_l, so its
    lift (by a Gamma(|a_l|^2) scale) is the Whittaker process with parameter a_l.
    `factor(l, scaled_points)` replaces the Whittaker correlation (test hook).
    """
    from .measures import a_params

    k = group.k
    if len(z) != k or len(colored_points) != k:
        raise ValueError(f"need {k} parameters and {k} point lists")
    pts = [[float(x) for x in c] for c in colored_points]
    a = [complex(_as_complex(v)) for v in a_params(group, [scalars.parse_scalar(v) for v in z])]
    if factor is None:
        factor = lambda l, xs: whittaker_correlation(a[l], xs) if xs else 1.0
    if k == 1:
        val = float(factor(0, pts[0]))
        return (val, 0.0) if full_output else val
    taus = [abs(al) ** 2 for al in a]
    ns = [len(c) for c in pts]
    for l, (tl, nl) in enumerate(zip(taus, ns)):
        if tl - nl <= 0:
            raise ParameterOutOfRegime(f"colour {l}: |a_l|^2 - n_l = {tl - nl:.6g} <= 0, integral diverges")
    exps = [tl - nl - 1 for tl, nl in zip(taus, ns)]

    def integrand(deltas):
        out = 1.0
        for l in range(k):
            if pts[l]:
                out *= factor(l, [x / deltas[l] for x in pts[l]])
            else:
                out *= factor(l, [])
        return out

    pref = dirichlet_prefactor(taus)
    cap = max_nodes or (256 if k == 2 else 48)
    n = 8
    prev = pref * _simplex_quadrature(integrand, exps, n)
    err = math.inf
    while n < cap:
        n *= 2
        cur = pref * _simplex_quadrature(integrand, exps, n)
        err = abs(cur - prev)
        if err <= tol * max(abs(cur), 1e-300):
            return (cur, err) if full_output else cur
        prev = cur
    raise QuadratureFailure(f"simplex quadrature reached {n} nodes with error {err:.3g}", err)


def _as_complex(v) -> complex:
    return complex(scalars.to_float(scalars.parse_scalar(v)))


def correlation_grid_csv(z, grid: Sequence[Sequence[float]], group=None, colored=None, tol: float = 1e-6) -> str:
    """Evaluate on a list of point tuples.  With a group, each tuple is split into colours by `colored` sizes."""
    buf = io.StringIO()
    if group is None:
        buf.write(f"# whittaker z={z}\n")
    else:
        buf.write(f"# mixed group={group.name} z={list(map(str, z))} sizes={list(colored)} tol={tol}\n")
    w = csv.writer(buf, lineterminator="\n")
    width = len(grid[0]) if grid else 0
    w.writerow([f"x{i + 1}" for i in range(width)] + ["value", "est_error"])
    for row in grid:
        if group is None:
            val, err = whittaker_correlation(z, row), 0.0
        else:
            split, pos = [], 0
            for size in colored:
                split.append(list(row[pos:pos + size]))
                pos += size
            val, err = mixed_correlation(group, z, split, tol=tol, full_output=True)
        w.writerow([repr(float(x)) for x in row] + [repr(float(val)), repr(float(err))])
    return buf.getvalue()
