"""Seeded samplers: Ewens growth on G~S(n), multiple Poisson-Dirichlet, lifting.

All randomness goes through numpy's PCG64 bit generator.  Gamma variates come
from numpy's standard_gamma (Marsaglia-Tsang squeeze for shape >= 1, with the
U^{1/shape} boost for shape < 1), Beta variates from numpy's beta.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import scalars
from .errors import NonPositiveParameter
from .group_core import FiniteGroup
from .measures import ColoredThomaPoint
from .wreath import WreathElement, cycle_type, format_element

DEFAULT_RESIDUAL = 1e-12


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for (seed, stream); distinct streams are statistically independent."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


def _positive(t: Sequence) -> list[float]:
    vals = []
    for v in t:
        c = complex(scalars.to_float(scalars.parse_scalar(v)))
        if c.imag != 0:
            raise NonPositiveParameter(f"parameter {v} is not real")
        vals.append(c.real)
    if any(not v > 0 for v in vals):
        raise NonPositiveParameter(f"parameters must be positive, got {list(t)}")
    return vals


def _growth_weights(g: FiniteGroup, t: Sequence[float]) -> np.ndarray:
    """Weight t_{class(h)} of opening a new fixed point with weight h."""
    return np.array([t[g.class_of[h]] for h in range(g.order)], dtype=float)


def sample_ewens_batch(g: FiniteGroup, n: int, t: Sequence, rng: np.random.Generator,
                       reps: int, trajectory: bool = False):
    """Grow reps independent elements letter by letter.

    At step m -> m+1 each (position, inserted weight) pair has weight 1 and a
    new fixed point with weight h has weight t_{class(h)}.  Insertion after
    position p puts the new letter between p and s(p) and multiplies the
    successor's weight by h^{-1}, so projecting it away restores the old element.

    Returns (weights, perms) int arrays of shape (reps, n), plus a list of
    per-level snapshots when trajectory is set.
    """
    t = _positive(t)
    if len(t) != g.k:
        raise NonPositiveParameter(f"expected {g.k} parameters, got {len(t)}")
    mul = np.asarray(g.mul, dtype=np.int64)
    inv = np.asarray(g.inv, dtype=np.int64)
    fix_w = _growth_weights(g, t)
    fix_cdf = np.cumsum(fix_w)
    order = g.order
    weights = np.zeros((reps, n), dtype=np.int64)
    perms = np.zeros((reps, n), dtype=np.int64)
    rows = np.arange(reps)
    snaps = []
    for m in range(n):
        total = order * m + fix_cdf[-1]
        u = rng.random(reps) * total
        ins = u < order * m
        # insertions
        r_ins = rows[ins]
        if r_ins.size:
            idx = np.minimum(np.floor(u[ins]).astype(np.int64), order * m - 1)
            pos, h = idx // order, idx % order
            succ = perms[r_ins, pos]
            perms[r_ins, pos] = m
            perms[r_ins, m] = succ
            weights[r_ins, succ] = mul[weights[r_ins, succ], inv[h]]
            weights[r_ins, m] = h
        # new fixed points
        r_fix = rows[~ins]
        if r_fix.size:
            h = np.searchsorted(fix_cdf, u[~ins] - order * m, side="right")
            h = np.minimum(h, order - 1)
            perms[r_fix, m] = m
            weights[r_fix, m] = h
        if trajectory:
            snaps.append((weights[:, : m + 1].copy(), perms[:, : m + 1].copy()))
    return (weights, perms, snaps) if trajectory else (weights, perms)


def sample_ewens_wreath(g: FiniteGroup, n: int, t: Sequence, rng: np.random.Generator,
                        trajectory: bool = False):
    """One element of G~S(n); with trajectory, the list x_1..x_n of its prefixes."""
    out = sample_ewens_batch(g, n, t, rng, 1, trajectory)
    if trajectory:
        return [WreathElement(tuple(int(v) for v in w[0]), tuple(int(v) for v in p[0])) for w, p in out[2]]
    w, p = out
    return WreathElement(tuple(int(v) for v in w[0]), tuple(int(v) for v in p[0]))


def class_frequencies(g: FiniteGroup, weights: np.ndarray, perms: np.ndarray) -> dict:
    """Counts of cycle types over the rows of a batch."""
    if weights.shape[0] == 0:
        return {}
    keys = np.concatenate([weights, perms], axis=1)
    uniq, counts = np.unique(keys, axis=0, return_counts=True)
    n = weights.shape[1]
    out: dict = {}
    for row, c in zip(uniq, counts):
        x = WreathElement(tuple(int(v) for v in row[:n]), tuple(int(v) for v in row[n:]))
        lam = cycle_type(g, x)
        out[lam] = out.get(lam, 0) + int(c)
    return out


def gem_sticks(theta: float, rng: np.random.Generator, residual: float = DEFAULT_RESIDUAL) -> np.ndarray:
    """Stick-breaking weights V_j prod_{i<j}(1-V_i), V ~ Beta(1, theta), until leftover < residual."""
    pieces = []
    left = 1.0
    while left >= residual:
        v = rng.beta(1.0, theta, size=64)
        rem = left * np.cumprod(1.0 - v)
        prev = np.concatenate(([left], rem[:-1]))
        w = prev * v
        stop = np.nonzero(rem < residual)[0]
        if stop.size:
            pieces.append(w[: stop[0] + 1])
            left = rem[stop[0]]
            break
        pieces.append(w)
        left = rem[-1]
    return np.concatenate(pieces)


def sample_multiple_pd(t: Sequence, rng: np.random.Generator,
                       residual: float = DEFAULT_RESIDUAL) -> ColoredThomaPoint:
    """Independent PD(t_l) per colour scaled by a Dirichlet(t) vector of colour masses."""
    t = _positive(t)
    gam = rng.standard_gamma(np.asarray(t))
    delta = gam / gam.sum()
    alphas = []
    for tl, dl in zip(t, delta):
        sticks = np.sort(gem_sticks(tl, rng, residual))[::-1]
        alphas.append(tuple(float(dl * s) for s in sticks))
    # renormalise the last digit so delta sums to one in floating point
    delta = [float(d) for d in delta]
    delta[-1] = 1.0 - sum(delta[:-1])
    return ColoredThomaPoint(tuple(alphas), tuple(() for _ in t), tuple(max(d, 0.0) for d in delta))


def pd_largest_parts(theta: float, rng: np.random.Generator, reps: int,
                     residual: float = DEFAULT_RESIDUAL) -> np.ndarray:
    return np.array([gem_sticks(theta, rng, residual).max() for _ in range(reps)])


@dataclass(frozen=True)
class ColoredConfiguration:
    points: tuple  # (colour, coordinate) pairs, coordinates nonzero

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((int(c), float(x)) for c, x in self.points))
        if any(x == 0 for _, x in self.points):
            raise ValueError("configuration coordinates must be nonzero")


def configuration_from_point(point: ColoredThomaPoint) -> ColoredConfiguration:
    """alpha coordinates as positive points, beta coordinates as negative points."""
    pts = []
    for l in range(point.k):
        pts += [(l, a) for a in point.alpha[l] if a > 0]
        pts += [(l, -b) for b in point.beta[l] if b > 0]
    return ColoredConfiguration(tuple(pts))


def lift_sample(config: ColoredConfiguration, t: Sequence, rng: np.random.Generator) -> ColoredConfiguration:
    """Scale every colour-l coordinate by an independent s_l ~ Gamma(t_l, 1)."""
    t = _positive(t)
    s = rng.standard_gamma(np.asarray(t))
    return ColoredConfiguration(tuple((c, x * s[c]) for c, x in config.points))


def ewens_samples_csv(g: FiniteGroup, weights: np.ndarray, perms: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["replicate", "level", "payload"])
    n = weights.shape[1]
    for r in range(weights.shape[0]):
        x = WreathElement(tuple(int(v) for v in weights[r]), tuple(int(v) for v in perms[r]))
        w.writerow([r, n, format_element(x)])
    return buf.getvalue()


def trajectory_csv(trajectories: Sequence[Sequence[WreathElement]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["replicate", "level", "payload"])
    for r, traj in enumerate(trajectories):
        for x in traj:
            w.writerow([r, x.n, format_element(x)])
    return buf.getvalue()


def pd_samples_csv(points: Sequence[ColoredThomaPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["replicate", "color", "payload"])
    for r, pt in enumerate(points):
        for l in range(pt.k):
            payload = ";".join(repr(a) for a in pt.alpha[l])
            w.writerow([r, l, f"delta={pt.delta[l]!r};{payload}"])
    return buf.getvalue()
