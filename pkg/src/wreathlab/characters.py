"""Characters of S(n) and of G~S(n) through colored power-sum expansions."""
from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import scalars
from .errors import SizeMismatch
from .group_core import FiniteGroup
from .multipartitions import (
    DefectReport,
    DefectTracker,
    MultiPartition,
    YoungDiagram,
    enumerate_multipartitions,
    hooks_contents,
    partitions,
)
from .wreath import ENUMERATION_CAP, class_size, cycle_counts, cycle_type, enumerate_wreath


def sym_group_character(mu: Sequence[int], rho: Sequence[int]) -> int:
    """chi^mu at cycle type rho by Murnaghan-Nakayama."""
    mu, rho = tuple(YoungDiagram(mu)), tuple(YoungDiagram(rho))
    if sum(mu) != sum(rho):
        raise SizeMismatch(f"|mu|={sum(mu)} but |rho|={sum(rho)}")
    return _mn(mu, rho)


@lru_cache(maxsize=None)
def _mn(mu: tuple[int, ...], rho: tuple[int, ...]) -> int:
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    length = len(mu)
    # beta-numbers: removing an r-rim hook moves one bead down by r
    beta = [mu[i] + length - 1 - i for i in range(length)]
    beads = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in beads:
            continue
        sign = -1 if sum(1 for c in beta if nb < c < b) % 2 else 1
        new_beta = sorted((c for c in beta if c != b), reverse=True)
        new_beta.append(nb)
        new_beta.sort(reverse=True)
        new_mu = tuple(p for p in (new_beta[j] - (length - 1 - j) for j in range(length)) if p > 0)
        total += sign * _mn(new_mu, rest)
    return total


def colored_power_expansion(cls: MultiPartition, g: FiniteGroup) -> dict:
    """prod_i p_{mu_i}(c_i) in the basis of colored p(gamma^l) monomials.

    Keys are k-tuples of partitions (one per irreducible of G); the
    substitution is p_r(c_i) = sum_l conj(gamma^l(c_i)) p_r(gamma^l).
    """
    k = g.k
    terms = {tuple(() for _ in range(k)): 1}
    for i, mu in enumerate(cls):
        coefs = [g.char(l, i).conjugate() for l in range(k)]
        for r in mu:
            nxt = {}
            for key, coef in terms.items():
                for l, c in enumerate(coefs):
                    if c == 0:
                        continue
                    new = list(key)
                    new[l] = tuple(sorted(key[l] + (r,), reverse=True))
                    new = tuple(new)
                    nxt[new] = nxt.get(new, 0) + coef * c
            terms = nxt
    return terms


_EXPANSIONS: dict = {}


def _expansion(cls: MultiPartition, g: FiniteGroup) -> dict:
    key = (id(g), cls)
    hit = _EXPANSIONS.get(key)
    if hit is None or hit[0] is not g:
        hit = (g, colored_power_expansion(cls, g))
        _EXPANSIONS[key] = hit
    return hit[1]


def wreath_character(irr: MultiPartition, cls: MultiPartition, g: FiniteGroup):
    """Value of the irreducible indexed by irr on the class indexed by cls.

    Reads the coefficient of prod_l s_{irr_l}(gamma^l) in prod_i p_{cls_i}(c_i),
    using p_rho = sum_lambda chi^lambda_rho s_lambda in each colour, then conjugates.
    """
    if irr.n != cls.n:
        raise SizeMismatch(f"irreducible of size {irr.n} vs class of size {cls.n}")
    sizes = irr.sizes()
    coef = 0
    for key, c in _expansion(cls, g).items():
        if tuple(sum(part) for part in key) != sizes:
            continue
        term = c
        for lam, rho in zip(irr, key):
            term = term * _mn(tuple(lam), rho)
            if term == 0:
                break
        coef = coef + term
    coef = coef.conjugate()
    return scalars.simplify(coef) if g.backend == scalars.EXACT else coef


def character_table(g: FiniteGroup, n: int):
    """(irreducibles, classes, matrix) with matrix[a][b] = chi^{irr_a}(class_b)."""
    mps = enumerate_multipartitions(n, g.k)
    table = [[wreath_character(lam, cls, g) for cls in mps] for lam in mps]
    return mps, mps, table


def orthogonality_defects(g: FiniteGroup, n: int) -> tuple[DefectReport, DefectReport]:
    """Row and column orthogonality of the G~S(n) character table."""
    irrs, classes, table = character_table(g, n)
    exact = g.backend == scalars.EXACT
    order = g.order**n * math.factorial(n)
    sizes = [class_size(c, g) for c in classes]
    rows = DefectTracker(exact)
    for a in range(len(irrs)):
        for b in range(len(irrs)):
            s = sum(sizes[j] * table[a][j] * table[b][j].conjugate() for j in range(len(classes)))
            rows.add(s - (order if a == b else 0), (str(irrs[a]), str(irrs[b])))
    cols = DefectTracker(exact)
    for i in range(len(classes)):
        for j in range(len(classes)):
            s = sum(table[a][i] * table[a][j].conjugate() for a in range(len(irrs)))
            target = Fraction(order, sizes[i]) if i == j else 0
            cols.add(s - target, (str(classes[i]), str(classes[j])))
    return rows.report(), cols.report()


def chi_z_restriction(cls: MultiPartition, z: Sequence, g: FiniteGroup):
    """sum_L M_z(L) chi^L(cls) / DIM(L)."""
    from .measures import dim_irrep, multiple_z_measure

    table = multiple_z_measure(cls.n, z, g)
    out = 0
    for lam, m in table.entries.items():
        if m != 0:
            out = out + m * wreath_character(lam, cls, g) / dim_irrep(lam, g)
    return scalars.simplify(out) if table.backend == scalars.EXACT else out


def content_coefficient(lam: MultiPartition, a: Sequence):
    """prod_l prod_boxes (a_l + c) / h."""
    out = 1
    for al, comp in zip(a, lam):
        for c, h in hooks_contents(comp):
            out = out * (al + c) / h
    return out


def verify_z_cycle_expansion(g: FiniteGroup, n: int, z: Sequence,
                             cap: int = ENUMERATION_CAP) -> DefectReport:
    """Check prod_l z_l^{[x]_l} = sum_L coef(L) chi^L(x) for every element x."""
    from .measures import _params, a_params

    vals, backend = _params(z, g)
    a = a_params(g, vals)
    irrs = enumerate_multipartitions(n, g.k)
    coefs = {lam: content_coefficient(lam, a) for lam in irrs}
    rhs_cache = {}
    tracker = DefectTracker(backend == scalars.EXACT)
    for x in enumerate_wreath(g, n, cap):
        cls = cycle_type(g, x)
        if cls not in rhs_cache:
            acc = 0
            for lam in irrs:
                acc = acc + coefs[lam] * wreath_character(lam, cls, g)
            rhs_cache[cls] = acc
        lhs = 1
        for zl, cnt in zip(vals, cycle_counts(g, x)):
            lhs = lhs * zl**cnt
        tracker.add(lhs - rhs_cache[cls], str(x))
    return tracker.report()


def character_table_csv(g: FiniteGroup, n: int) -> str:
    """CSV: header of classes, a class-size row, then one row per irreducible."""
    irrs, classes, table = character_table(g, n)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["irrep\\class"] + [str(c) for c in classes])
    w.writerow(["#class_size"] + [class_size(c, g) for c in classes])
    for lam, row in zip(irrs, table):
        w.writerow([str(lam)] + [scalars.format_scalar(v) for v in row])
    return buf.getvalue()


def parse_character_table_csv(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    classes = [MultiPartition.parse(c) for c in rows[0][1:]]
    sizes = [int(v) for v in rows[1][1:]]
    irrs, table = [], []
    for row in rows[2:]:
        irrs.append(MultiPartition.parse(row[0]))
        table.append([scalars.parse_scalar(v) for v in row[1:]])
    return irrs, classes, sizes, table
