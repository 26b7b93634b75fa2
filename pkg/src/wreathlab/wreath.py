"""Elements of G~S(n): multiplication, cycle-products, projection and classes."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import LevelMismatch, NonIntegerResult, SizeMismatch, SizeShrink, SizeTooSmall, TooLarge
from .group_core import FiniteGroup
from .multipartitions import MultiPartition, enumerate_multipartitions, z_rho

ENUMERATION_CAP = 10**7


@dataclass(frozen=True)
class WreathElement:
    """((g_1..g_n), s) with perm[i] = s(i+1) - 1."""

    weights: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "perm", tuple(self.perm))
        if len(self.weights) != len(self.perm):
            raise SizeMismatch("weights and permutation lengths differ")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")

    @property
    def n(self) -> int:
        return len(self.perm)

    def __str__(self):
        return format_element(self)


@dataclass(frozen=True)
class CycleRecord:
    cycle: tuple[int, ...]  # zero-based positions i_1, s(i_1), ...
    product: int
    color: int


def format_element(x: WreathElement) -> str:
    return "[" + ",".join(map(str, x.weights)) + "|" + ",".join(map(str, x.perm)) + "]"


def parse_element(text: str) -> WreathElement:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]") and s.count("|") == 1):
        raise ValueError(f"expected '[g1,...|s1,...]', got {text!r}")
    w, p = s[1:-1].split("|")
    ints = lambda part: tuple(int(v) for v in part.split(",")) if part.strip() else ()
    return WreathElement(ints(w), ints(p))


def check_element(g: FiniteGroup, x: WreathElement) -> None:
    if any(not 0 <= h < g.order for h in x.weights):
        raise ValueError(f"weight index out of range for |G|={g.order}: {x.weights}")


def identity(g: FiniteGroup, n: int) -> WreathElement:
    return WreathElement((0,) * n, tuple(range(n)))


def inverse_perm(perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return tuple(out)


def multiply(g: FiniteGroup, x: WreathElement, y: WreathElement) -> WreathElement:
    """((g_i h_{s^{-1}(i)}), s t)."""
    if x.n != y.n:
        raise SizeMismatch(f"cannot multiply elements of sizes {x.n} and {y.n}")
    sinv = inverse_perm(x.perm)
    weights = tuple(g.mul[x.weights[i]][y.weights[sinv[i]]] for i in range(x.n))
    perm = tuple(x.perm[y.perm[i]] for i in range(x.n))
    return WreathElement(weights, perm)


def inverse(g: FiniteGroup, x: WreathElement) -> WreathElement:
    weights = tuple(g.inv[x.weights[x.perm[j]]] for j in range(x.n))
    return WreathElement(weights, inverse_perm(x.perm))


def cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles led by their smallest element, sorted by leader."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        out.append(tuple(cyc))
    return out


def cycle_products(g: FiniteGroup, x: WreathElement) -> list[CycleRecord]:
    """Product g_{i_r} ... g_{i_1} along each cycle i_1 -> i_2 -> ... -> i_r."""
    out = []
    for cyc in cycles(x.perm):
        prod = 0
        for i in cyc:
            prod = g.mul[x.weights[i]][prod]
        out.append(CycleRecord(cyc, prod, g.class_of[prod]))
    return out


def cycle_counts(g: FiniteGroup, x: WreathElement) -> list[int]:
    """[x]_{c_l}: number of cycles whose product lies in class l."""
    counts = [0] * g.k
    for rec in cycle_products(g, x):
        counts[rec.color] += 1
    return counts


def cycle_type(g: FiniteGroup, x: WreathElement) -> MultiPartition:
    lengths = [[] for _ in range(g.k)]
    for rec in cycle_products(g, x):
        lengths[rec.color].append(len(rec.cycle))
    return MultiPartition(sorted(c, reverse=True) for c in lengths)


def project(g: FiniteGroup, x: WreathElement) -> WreathElement:
    """Canonical projection G~S(n+1) -> G~S(n): cut the last letter out of its cycle."""
    if x.n < 2:
        raise SizeTooSmall("projection needs at least two letters")
    last = x.n - 1
    perm = list(x.perm)
    weights = list(x.weights)
    succ = perm[last]
    if succ != last:
        pred = perm.index(last)
        perm[pred] = succ
        weights[succ] = g.mul[weights[succ]][weights[last]]
    return WreathElement(tuple(weights[:last]), tuple(perm[:last]))


def embed(g: FiniteGroup, x: WreathElement, n: int) -> WreathElement:
    if n < x.n:
        raise SizeShrink(f"cannot embed level {x.n} into level {n}")
    pad = n - x.n
    return WreathElement(x.weights + (0,) * pad, x.perm + tuple(range(x.n, n)))


def act(g: FiniteGroup, x: WreathElement, pair) -> WreathElement:
    """Two-sided action x -> w2^{-1} x w1 after embedding both w's at x's level."""
    w1, w2 = pair
    if w1.n > x.n or w2.n > x.n:
        raise LevelMismatch(f"pair of levels ({w1.n},{w2.n}) does not fit level {x.n}")
    w1, w2 = embed(g, w1, x.n), embed(g, w2, x.n)
    return multiply(g, multiply(g, inverse(g, w2), x), w1)


def compose_pairs(g: FiniteGroup, first, second):
    """Pair W with act(act(x, first), second) == act(x, W)."""
    (a1, a2), (b1, b2) = first, second
    n = max(a1.n, a2.n, b1.n, b2.n)
    a1, a2, b1, b2 = (embed(g, w, n) for w in (a1, a2, b1, b2))
    return multiply(g, a1, b1), multiply(g, a2, b2)


def cocycle(g: FiniteGroup, x: WreathElement, pair, l: int) -> int:
    """C_l(x, W) = [w2^{-1} x w1]_{c_l} - [x]_{c_l}."""
    return cycle_counts(g, act(g, x, pair))[l] - cycle_counts(g, x)[l]


def class_size(lam: MultiPartition, g: FiniteGroup) -> int:
    if lam.k != g.k:
        raise SizeMismatch(f"multipartition has {lam.k} colours, group has {g.k} classes")
    n = lam.n
    den = Fraction(1)
    for l, comp in enumerate(lam):
        den *= z_rho(comp) * g.zeta(l) ** len(comp)
    val = Fraction(math.factorial(n) * g.order**n) / den
    if val.denominator != 1:
        raise NonIntegerResult(f"class size for {lam} is {val}")
    return int(val)


def enumerate_wreath(g: FiniteGroup, n: int, cap: int = ENUMERATION_CAP) -> Iterator[WreathElement]:
    """Every element once: permutations in lexicographic order, weights innermost."""
    total = g.order**n * math.factorial(n)
    if total > cap:
        raise TooLarge(f"|G|^n n! = {total} exceeds cap {cap}")
    for perm in itertools.permutations(range(n)):
        for weights in itertools.product(range(g.order), repeat=n):
            yield WreathElement(weights, perm)


def class_representative(lam: MultiPartition, g: FiniteGroup) -> WreathElement:
    """Element of cycle type lam: consecutive cycles, weight of a class member on the leader."""
    weights, perm = [], []
    pos = 0
    for l, comp in enumerate(lam):
        rep = g.classes[l][0]
        for r in comp:
            block = list(range(pos, pos + r))
            for i, j in enumerate(block):
                perm.append(block[(i + 1) % r])
                weights.append(rep if i == 0 else 0)
            pos += r
    return WreathElement(tuple(weights), tuple(perm))


def class_table(g: FiniteGroup, n: int) -> list[tuple[MultiPartition, int]]:
    return [(lam, class_size(lam, g)) for lam in enumerate_multipartitions(n, g.k)]


def count_class_sizes(g: FiniteGroup, n: int, cap: int = ENUMERATION_CAP) -> dict:
    """Class sizes counted by brute force over G~S(n)."""
    counts: dict = {}
    for x in enumerate_wreath(g, n, cap):
        lam = cycle_type(g, x)
        counts[lam] = counts.get(lam, 0) + 1
    return counts


def check_class_sizes(g: FiniteGroup, n: int, cap: int = ENUMERATION_CAP):
    """Formula class sizes against enumeration counts, as a defect report."""
    from .multipartitions import DefectTracker

    counted = count_class_sizes(g, n, cap)
    tracker = DefectTracker(exact=True)
    for lam in enumerate_multipartitions(n, g.k):
        tracker.add(class_size(lam, g) - counted.get(lam, 0), str(lam))
    return tracker.report()
