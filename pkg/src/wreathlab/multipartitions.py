"""Young diagrams, k-coloured multiple partitions and the ball-deletion kernel."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import scalars
from .errors import SizeMismatch, SupportMismatch


class YoungDiagram(tuple):
    """Weakly decreasing tuple of positive parts; zeros are stripped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts if int(p) != 0)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, j: int) -> int:
        """r_j: number of rows of length j."""
        return sum(1 for p in self if p == j)

    def conjugate(self) -> "YoungDiagram":
        if not self:
            return self
        return YoungDiagram(sum(1 for p in self if p > j) for j in range(self[0]))

    def boxes(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self) for j in range(r)]

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"

    __str__ = __repr__

    @classmethod
    def parse(cls, text: str) -> "YoungDiagram":
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"diagram must be parenthesised: {text!r}")
        body = s[1:-1].strip()
        return cls(int(x) for x in body.split(",")) if body else cls()


class MultiPartition(tuple):
    """k-tuple of Young diagrams; colour index is the position."""

    def __new__(cls, components: Iterable[Iterable[int]]):
        return super().__new__(cls, (YoungDiagram(c) for c in components))

    @property
    def n(self) -> int:
        return sum(c.size for c in self)

    @property
    def k(self) -> int:
        return len(self)

    def sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self)

    def __repr__(self):
        return "|".join(repr(c) for c in self)

    __str__ = __repr__

    @classmethod
    def parse(cls, text: str) -> "MultiPartition":
        return cls(YoungDiagram.parse(part) for part in text.strip().split("|"))

    def replace(self, l: int, diagram: Sequence[int]) -> "MultiPartition":
        comps = list(self)
        comps[l] = YoungDiagram(diagram)
        return MultiPartition(comps)


def partitions(n: int, max_part: int | None = None) -> Iterator[YoungDiagram]:
    """Partitions of n in reverse-lexicographic order: (n) first, (1^n) last."""
    yield from (YoungDiagram(p) for p in _partitions(n, n if max_part is None else max_part))


@lru_cache(maxsize=None)
def _partitions(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, m), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n into k parts, (n,0,..,0) first."""
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def enumerate_multipartitions(n: int, k: int) -> list[MultiPartition]:
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    return list(_enum_mp(n, k))


@lru_cache(maxsize=None)
def _enum_mp(n: int, k: int) -> tuple[MultiPartition, ...]:
    out = []
    for comp in compositions(n, k):
        stack = [[]]
        for part_size in comp:
            stack = [s + [lam] for s in stack for lam in partitions(part_size)]
        out.extend(MultiPartition(s) for s in stack)
    return tuple(out)


def hooks_contents(lam: Sequence[int]) -> list[tuple[int, int]]:
    """(content, hook) for each box in row-major order."""
    lam = YoungDiagram(lam)
    conj = lam.conjugate()
    return [(j - i, lam[i] - j + conj[j] - i - 1) for i, j in lam.boxes()]


@lru_cache(maxsize=None)
def dim_young(lam: tuple[int, ...]) -> int:
    """Number of standard tableaux, by the hook-length formula."""
    hooks = math.prod(h for _, h in hooks_contents(lam))
    return math.factorial(sum(lam)) // hooks


def z_rho(rho: Sequence[int]) -> int:
    """Centraliser order prod_j j^{r_j} r_j!."""
    out = 1
    for j in set(rho):
        r = sum(1 for p in rho if p == j)
        out *= j**r * math.factorial(r)
    return out


def removal_row_length(mu: Sequence[int], lam: Sequence[int]) -> int | None:
    """Length L of the row of mu that shrank by one box to give lam, else None."""
    mu, lam = YoungDiagram(mu), YoungDiagram(lam)
    if mu.size != lam.size + 1:
        return None
    for i, L in enumerate(mu):
        cand = list(mu)
        cand[i] -= 1
        if sorted(cand, reverse=True) == list(lam) + [0] * (len(cand) - len(lam)):
            return L
    return None


def growth_color(big: MultiPartition, small: MultiPartition) -> int | None:
    """Colour l where big differs from small by one box, all other colours equal."""
    if big.k != small.k or big.n != small.n + 1:
        return None
    diff = [l for l in range(big.k) if big[l] != small[l]]
    if len(diff) != 1:
        return None
    return diff[0]


def _ball_removal(big: MultiPartition, small: MultiPartition):
    l = growth_color(big, small)
    if l is None:
        return None
    L = removal_row_length(big[l], small[l])
    return None if L is None else (l, L)


def down_transition(nxt: MultiPartition, prev: MultiPartition) -> Fraction:
    """Probability of reaching prev from nxt by deleting a uniformly chosen ball."""
    if nxt.n != prev.n + 1:
        raise SizeMismatch(f"sizes {nxt.n} and {prev.n} do not differ by one")
    rem = _ball_removal(nxt, prev)
    if rem is None:
        return Fraction(0)
    l, L = rem
    return Fraction(nxt[l].multiplicity(L) * L, nxt.n)


def preimage_count(nxt: MultiPartition, prev: MultiPartition, group) -> int:
    """Elements of the class of nxt projecting onto one fixed element of the class of prev."""
    if nxt.n != prev.n + 1:
        raise SizeMismatch(f"sizes {nxt.n} and {prev.n} do not differ by one")
    rem = _ball_removal(nxt, prev)
    if rem is None:
        return 0
    l, L = rem
    if L == 1:
        return len(group.classes[l])
    return group.order * (L - 1) * prev[l].multiplicity(L - 1)


@dataclass
class DefectReport:
    max_defect: object
    location: object
    backend: str
    passed: bool
    checked: int = 0

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} max_defect={scalars.format_scalar(self.max_defect)} "
            f"at {self.location} over {self.checked} entries ({self.backend})"
        )


class DefectTracker:
    """Running maximum of |defect| with its location."""

    def __init__(self, exact: bool, tol: float = scalars.FLOAT_TOL):
        self.exact = exact
        self.tol = tol
        self.worst = 0
        self.mag = 0.0
        self.where = None
        self.checked = 0
        self.nonzero = False

    def add(self, defect, where):
        self.checked += 1
        mag = abs(complex(scalars.to_float(defect)))
        if defect != 0:
            self.nonzero = True
        if mag > self.mag or (defect != 0 and self.where is None):
            self.worst, self.mag, self.where = defect, mag, where

    def report(self) -> DefectReport:
        passed = not self.nonzero if self.exact else self.mag <= self.tol
        worst = scalars.simplify(self.worst)
        return DefectReport(
            max_defect=abs(worst) if self.exact and not isinstance(worst, scalars.GaussRat) else self.mag,
            location=self.where,
            backend=scalars.EXACT if self.exact else scalars.FLOAT,
            passed=passed,
            checked=self.checked,
        )


def check_mps(tables: Sequence, tol: float = scalars.FLOAT_TOL) -> DefectReport:
    """Ball-deletion consistency M_n(L) = sum_{L'} Prob(L|L') M_{n+1}(L') across levels."""
    tracker = DefectTracker(all(t.backend == scalars.EXACT for t in tables), tol)
    for cur, nxt in zip(tables, tables[1:]):
        if nxt.level != cur.level + 1 or nxt.k != cur.k:
            raise SupportMismatch(f"levels {cur.level} -> {nxt.level} are not consecutive")
        for lam in enumerate_multipartitions(cur.level, cur.k):
            acc = 0
            for mu, val in nxt.entries.items():
                p = down_transition(mu, lam)
                if p:
                    acc = acc + p * val
            tracker.add(cur.entries.get(lam, 0) - acc, (cur.level, str(lam)))
    return tracker.report()
