"""Explicit measures on multiple partitions, DIM, branching and the Thoma kernel."""
from __future__ import annotations

import json
import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Sequence

from . import scalars
from .characters import sym_group_character
from .errors import (
    DegenerateParameter,
    DimensionMismatch,
    NonPositiveParameter,
    PochhammerZero,
    SizeMismatch,
    SupportMismatch,
    ZeroParameter,
)
from .group_core import FiniteGroup
from .multipartitions import (
    DefectTracker,
    DefectReport,
    MultiPartition,
    YoungDiagram,
    dim_young,
    enumerate_multipartitions,
    growth_color,
    hooks_contents,
    partitions,
    removal_row_length,
    z_rho,
)
from .scalars import pochhammer
from .wreath import (
    ENUMERATION_CAP,
    WreathElement,
    class_representative,
    class_size,
    cycle_counts,
    enumerate_wreath,
    project,
)


@dataclass
class MeasureTable:
    level: int
    k: int
    entries: dict
    backend: str = scalars.EXACT
    meta: dict = field(default_factory=dict)

    def __getitem__(self, mp):
        if isinstance(mp, str):
            mp = MultiPartition.parse(mp)
        return self.entries.get(MultiPartition(mp), 0)

    def total(self):
        out = 0
        for v in self.entries.values():
            out = out + v
        return scalars.simplify(out) if self.backend == scalars.EXACT else out

    def to_json(self) -> str:
        doc = {
            "level": self.level,
            "k": self.k,
            "backend": self.backend,
            "entries": [
                {"mp": str(mp), "value": scalars.format_scalar(scalars.simplify(v))}
                for mp, v in self.entries.items()
            ],
        }
        if self.meta:
            doc["meta"] = self.meta
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "MeasureTable":
        doc = json.loads(text)
        entries = {
            MultiPartition.parse(e["mp"]): scalars.parse_scalar(e["value"]) for e in doc["entries"]
        }
        return cls(doc["level"], doc["k"], entries, doc["backend"], doc.get("meta", {}))


def _params(values, g: FiniteGroup | None = None):
    """Parse parameters and pick the backend; float if anything is inexact."""
    vals = [scalars.parse_scalar(v) for v in values]
    exact = all(scalars.is_exact(v) for v in vals) and (g is None or g.backend == scalars.EXACT)
    if not exact:
        vals = [scalars.to_float(v) for v in vals]
        return vals, scalars.FLOAT
    return [Fraction(v) if isinstance(v, int) else v for v in vals], scalars.EXACT


def _positive_reals(t, k: int, g=None):
    if len(t) != k:
        raise DimensionMismatch(f"expected {k} parameters, got {len(t)}")
    vals, backend = _params(t, g)
    for v in vals:
        if isinstance(v, (complex, scalars.GaussRat)) and v.imag != 0:
            raise NonPositiveParameter(f"parameter {v} is not real")
        if scalars.real_part(v) <= 0:
            raise NonPositiveParameter(f"parameter {v} must be positive")
    return [scalars.real_part(v) for v in vals], backend


def _clean(v, backend):
    return scalars.simplify(v) if backend == scalars.EXACT else v


# Ewens


def ewens_element_prob(g: FiniteGroup, x: WreathElement, t: Sequence):
    """prod_l t_l^{[x]_l} / (|G|^n (sum_l t_l / zeta_l)_n)."""
    t, backend = _positive_reals(t, g.k)
    counts = cycle_counts(g, x)
    num = 1
    for tl, c in zip(t, counts):
        num = num * tl**c
    big_t = sum(tl / g.zeta(l) for l, tl in enumerate(t))
    if backend == scalars.FLOAT:
        big_t = float(big_t)
    return num / (g.order**x.n * pochhammer(big_t, x.n))


def check_projection(g: FiniteGroup, n: int, t: Sequence, cap: int = ENUMERATION_CAP) -> DefectReport:
    """Sum of P_{n+1} over the projection fibre of each x in G~S(n), minus P_n(x)."""
    if n < 1:
        raise SizeMismatch("projection check needs n >= 1")
    _, backend = _positive_reals(t, g.k, g)
    fibres: dict = {}
    for y in enumerate_wreath(g, n + 1, cap):
        x = project(g, y)
        fibres[x] = fibres.get(x, 0) + ewens_element_prob(g, y, t)
    tracker = DefectTracker(backend == scalars.EXACT)
    for x in enumerate_wreath(g, n, cap):
        tracker.add(fibres.get(x, 0) - ewens_element_prob(g, x, t), str(x))
    return tracker.report()


def sym_ewens(lam: Sequence[int], theta):
    """Ewens cycle-type law on S(n): n!/(theta)_n * theta^{l(lam)} / z_lam."""
    lam = YoungDiagram(lam)
    n = lam.size
    return math.factorial(n) * theta ** len(lam) / (pochhammer(theta, n) * z_rho(lam))


def ewens_pushforward(n: int, t: Sequence, g: FiniteGroup, route: str = "class_size") -> MeasureTable:
    """Law of the cycle type under the wreath Ewens measure.

    route "class_size" multiplies class sizes by the element probability;
    route "closed" uses the product of colour-wise symmetric-group Ewens laws.
    """
    t, backend = _positive_reals(t, g.k)
    entries = {}
    if route == "class_size":
        for lam in enumerate_multipartitions(n, g.k):
            p = ewens_element_prob(g, class_representative(lam, g), t)
            entries[lam] = _clean(class_size(lam, g) * p, backend)
    elif route == "closed":
        big = [tl / g.zeta(l) for l, tl in enumerate(t)]
        if backend == scalars.FLOAT:
            big = [float(b) for b in big]
        total = sum(big)
        for lam in enumerate_multipartitions(n, g.k):
            val = math.factorial(n) / pochhammer(total, n)
            for b, comp in zip(big, lam):
                m = comp.size
                val = val * pochhammer(b, m) / math.factorial(m) * sym_ewens(comp, b) if m else val
            entries[lam] = _clean(val, backend)
    else:
        raise ValueError(f"unknown route {route!r}")
    return MeasureTable(n, g.k, entries, backend, {"measure": "ewens", "t": [str(v) for v in t]})


# z-measures


def z_measure_value(lam: Sequence[int], z, zprime=None):
    """Single entry n!/(z z')_n prod (z+c)(z'+c)/h^2."""
    zp = z.conjugate() if zprime is None else zprime
    n = sum(lam)
    den = pochhammer(z * zp, n)
    if den == 0:
        raise PochhammerZero(f"(z z')_{n} vanishes for z={z}, z'={zp}")
    num = Fraction(math.factorial(n)) if scalars.is_exact(z) and scalars.is_exact(zp) else math.factorial(n)
    for c, h in hooks_contents(lam):
        num = num * (z + c) * (zp + c) / (h * h)
    return num / den


def z_measure(n: int, z, zprime=None) -> MeasureTable:
    """z-measure on diagrams with n boxes; zprime defaults to conj(z).

    Passing zprime decouples the two parameters; entries may then be negative
    or complex and no positivity is asserted.
    """
    vals, backend = _params([z] if zprime is None else [z, zprime])
    z = vals[0]
    zp = z.conjugate() if zprime is None else vals[1]
    if z == 0 or zp == 0:
        raise ZeroParameter("z-measure needs nonzero parameters")
    entries = {
        MultiPartition([lam]): _clean(z_measure_value(lam, z, zp), backend) for lam in partitions(n)
    }
    meta = {"measure": "zmeasure", "z": scalars.format_scalar(z)}
    if zprime is not None:
        meta["zprime"] = scalars.format_scalar(zp)
    return MeasureTable(n, 1, entries, backend, meta)


def a_params(g: FiniteGroup, z: Sequence) -> list:
    """a_l = sum_i (z_i / zeta_i) conj(gamma^l(c_i))."""
    if len(z) != g.k:
        raise DimensionMismatch(f"expected {g.k} parameters, got {len(z)}")
    vals, backend = _params(z, g)
    out = []
    for l in range(g.k):
        acc = 0
        for i, zi in enumerate(vals):
            zeta = g.zeta(i) if backend == scalars.EXACT else float(g.zeta(i))
            acc = acc + zi / zeta * g.char(l, i).conjugate()
        out.append(_clean(acc, backend))
    return out


def multiple_z_measure(n: int, z: Sequence, g: FiniteGroup) -> MeasureTable:
    """Multinomial-Pochhammer mixture of colour-wise z-measures with parameters a_l.

    A colour with a_l = 0 carries the delta measure at the empty diagram.
    """
    vals, backend = _params(z, g)
    if any(v == 0 for v in vals):
        raise ZeroParameter("all z_l must be nonzero")
    a = a_params(g, vals)
    tau = [_clean(al * al.conjugate(), backend) for al in a]
    total = sum(tau)
    if n > 0 and scalars.is_zero(total):
        raise DegenerateParameter("all a_l vanish; the mixture is undefined")
    entries = {}
    for lam in enumerate_multipartitions(n, g.k):
        val = math.factorial(n) / pochhammer(total, n)
        for al, tl, comp in zip(a, tau, lam):
            m = comp.size
            if m == 0:
                continue
            if scalars.is_zero(al):
                val = 0
                break
            val = val * pochhammer(tl, m) / math.factorial(m) * z_measure_value(comp, al)
        entries[lam] = _clean(val, backend)
    meta = {"measure": "multizmeasure", "z": [scalars.format_scalar(v) for v in vals]}
    return MeasureTable(n, g.k, entries, backend, meta)


# dimensions and coherency


def dim_irrep(lam: MultiPartition, g: FiniteGroup) -> int:
    """n!/prod |lam_l|! * prod d_l^{|lam_l|} dim lam_l."""
    if lam.k != g.k:
        raise SizeMismatch(f"multipartition has {lam.k} colours, group has {g.k}")
    out = math.factorial(lam.n)
    for d, comp in zip(g.dims, lam):
        out = out // math.factorial(comp.size) * d**comp.size * dim_young(tuple(comp))
    return out


def branching_multiplicity(prev: MultiPartition, lam: MultiPartition, g: FiniteGroup) -> int:
    if lam.n != prev.n + 1:
        raise SizeMismatch(f"sizes {prev.n} -> {lam.n} do not differ by one")
    l = growth_color(lam, prev)
    if l is None or removal_row_length(lam[l], prev[l]) is None:
        return 0
    return g.dims[l]


def check_coherency(m_n: MeasureTable, m_next: MeasureTable, g: FiniteGroup,
                    tol: float = scalars.FLOAT_TOL) -> DefectReport:
    """Defect of M_n(L)/DIM(L) = sum d_l M_{n+1}(L~)/DIM(L~) over growths L -> L~."""
    if m_next.level != m_n.level + 1 or m_n.k != g.k or m_next.k != g.k:
        raise SupportMismatch("tables must be consecutive levels over the group's colours")
    exact = m_n.backend == scalars.EXACT and m_next.backend == scalars.EXACT
    tracker = DefectTracker(exact, tol)
    for lam in enumerate_multipartitions(m_n.level, g.k):
        lhs = m_n[lam] / dim_irrep(lam, g)
        rhs = 0
        for mu, val in m_next.entries.items():
            kappa = branching_multiplicity(lam, mu, g)
            if kappa:
                rhs = rhs + kappa * val / dim_irrep(mu, g)
        tracker.add(lhs - rhs, (m_n.level, str(lam)))
    return tracker.report()


# Thoma kernel


@dataclass(frozen=True)
class ColoredThomaPoint:
    """Per colour: alpha, beta (weakly decreasing, nonnegative) and delta."""

    alpha: tuple
    beta: tuple
    delta: tuple

    def __post_init__(self):
        k = len(self.delta)
        if len(self.alpha) != k or len(self.beta) != k:
            raise DimensionMismatch("alpha, beta and delta need one entry per colour")
        object.__setattr__(self, "alpha", tuple(tuple(sorted(a, reverse=True)) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(tuple(sorted(b, reverse=True)) for b in self.beta))
        object.__setattr__(self, "delta", tuple(self.delta))
        vals = [v for a in self.alpha for v in a] + [v for b in self.beta for v in b] + list(self.delta)
        exact = all(scalars.is_exact(v) for v in vals)
        tol = 0 if exact else 1e-9
        if any(v < 0 for v in vals):
            raise ValueError("Thoma coordinates must be nonnegative")
        for l in range(k):
            if sum(self.alpha[l]) + sum(self.beta[l]) > self.delta[l] + tol:
                raise ValueError(f"colour {l}: sum(alpha)+sum(beta) exceeds delta")
        if abs(sum(self.delta) - 1) > tol:
            raise ValueError("delta must sum to 1")

    @property
    def k(self) -> int:
        return len(self.delta)

    def is_degenerate_series(self, tol: float = 1e-9) -> bool:
        """True on the subset where alpha and beta exhaust delta in every colour."""
        for l in range(self.k):
            gap = self.delta[l] - sum(self.alpha[l]) - sum(self.beta[l])
            if (gap != 0) if scalars.is_exact(gap) else abs(gap) > tol:
                return False
        return True


def extended_power_sum(point: ColoredThomaPoint, l: int, r: int):
    """delta for r = 1; sum alpha^r + (-1)^{r-1} sum beta^r for r >= 2."""
    if r == 1:
        return point.delta[l]
    sign = 1 if r % 2 == 1 else -1
    return sum(a**r for a in point.alpha[l]) + sign * sum(b**r for b in point.beta[l])


def extended_schur(lam: Sequence[int], point: ColoredThomaPoint, l: int):
    """Schur function through its power-sum expansion, specialised at colour l."""
    lam = YoungDiagram(lam)
    n = lam.size
    powers = {r: extended_power_sum(point, l, r) for r in range(1, n + 1)}
    out = 0
    for rho in partitions(n):
        chi = sym_group_character(lam, rho)
        if chi:
            term = 1
            for r in rho:
                term = term * powers[r]
            out = out + term * Fraction(chi, z_rho(rho))
    return out


def thoma_kernel(lam: MultiPartition, point: ColoredThomaPoint, g: FiniteGroup):
    """prod_l d_l^{-|lam_l|} S_{lam_l}(alpha_l, beta_l, delta_l)."""
    if lam.k != g.k or point.k != g.k:
        raise DimensionMismatch("colour counts of multipartition, point and group differ")
    out = 1
    for l, comp in enumerate(lam):
        out = out * Fraction(1, g.dims[l] ** comp.size) * extended_schur(comp, point, l)
    return out
