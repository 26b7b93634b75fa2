"""Finite groups given by explicit multiplication and character tables."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import scalars
from .errors import BadCharacterTable, ClassMismatch, IndexOutOfRange, NonGroupTable

BUNDLED = ("trivial", "z2", "z3", "z2xz2", "s3")


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    char_table: tuple[tuple, ...]  # char_table[l][i] = value of irreducible l on class i
    dims: tuple[int, ...]
    backend: str = scalars.EXACT
    report: tuple[str, ...] = field(default=(), compare=False)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def zeta(self, l: int) -> Fraction:
        """|G| / |c_l| for the zero-based class index l."""
        if not 0 <= l < self.k:
            raise IndexOutOfRange(f"class index {l} outside 0..{self.k - 1}")
        return Fraction(self.order, len(self.classes[l]))

    def char(self, l: int, i: int):
        return self.char_table[l][i]


def compute_conjugacy_classes(mul, inv=None) -> list[tuple[int, ...]]:
    """Conjugation orbits; identity class first, the rest ordered by smallest element."""
    n = len(mul)
    if inv is None:
        inv = [next(b for b in range(n) if mul[a][b] == 0) for a in range(n)]
    seen = [False] * n
    classes = []
    for a in range(n):
        if seen[a]:
            continue
        orbit = sorted({mul[mul[g][a]][inv[g]] for g in range(n)})
        for b in orbit:
            seen[b] = True
        classes.append(tuple(orbit))
    classes.sort(key=lambda c: (0 if 0 in c else 1, c[0]))
    return classes


def _check_table(mul) -> tuple[int, ...]:
    n = len(mul)
    if n == 0 or any(len(row) != n for row in mul):
        raise NonGroupTable("multiplication table must be square and non-empty")
    for a in range(n):
        for b in range(n):
            if not 0 <= mul[a][b] < n:
                raise NonGroupTable(f"entry mul[{a}][{b}] out of range", (a, b, None))
    for a in range(n):
        if mul[0][a] != a or mul[a][0] != a:
            raise NonGroupTable(f"index 0 is not a two-sided identity (fails at {a})", (0, a, 0))
    inv = []
    for a in range(n):
        right = [b for b in range(n) if mul[a][b] == 0]
        if len(right) != 1 or mul[right[0]][a] != 0:
            raise NonGroupTable(f"element {a} has no two-sided inverse", (a, None, None))
        inv.append(right[0])
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            for c in range(n):
                if mul[ab][c] != mul[a][mul[b][c]]:
                    raise NonGroupTable(f"associativity fails on ({a},{b},{c})", (a, b, c))
    return tuple(inv)


def _parse_entry(x):
    try:
        return scalars.parse_scalar(x)
    except scalars.ScalarParseError as exc:
        raise BadCharacterTable(f"bad character-table entry {x!r}: {exc}") from exc


def _check_orthogonality(table, sizes, order, exact):
    k = len(table)
    tol = scalars.FLOAT_TOL * order
    for l in range(k):
        for m in range(k):
            s = sum(sizes[i] * table[l][i] * table[m][i].conjugate() for i in range(k))
            target = order if l == m else 0
            ok = (s == target) if exact else abs(complex(scalars.to_float(s)) - target) <= tol
            if not ok:
                raise BadCharacterTable(
                    f"row orthogonality fails for rows ({l},{m}): got {s}, want {target}", (l, m)
                )


def load_group(doc) -> FiniteGroup:
    """Validate a group document (dict, JSON path, or bundled name)."""
    if isinstance(doc, (str, Path)):
        doc = read_group_document(doc)
    report = []
    name = doc.get("name", "unnamed")
    mul = [list(map(int, row)) for row in doc["mul"]]
    order = int(doc.get("order", len(mul)))
    if order != len(mul):
        raise NonGroupTable(f"declared order {order} but table has {len(mul)} rows")
    inv = _check_table(mul)
    report.append(f"group table ok: order {order}")

    classes = compute_conjugacy_classes(mul, inv)
    k = len(classes)
    raw = [[_parse_entry(x) for x in row] for row in doc["char_table"]]
    if len(raw) != k or any(len(r) != k for r in raw):
        raise BadCharacterTable(f"character table must be {k}x{k} for {k} classes")

    declared = doc.get("classes")
    if declared is not None:
        declared = [tuple(sorted(map(int, c))) for c in declared]
        if sorted(declared) != sorted(classes):
            raise ClassMismatch(f"declared classes {declared} differ from computed {classes}")
        perm = [declared.index(c) for c in classes]
        raw = [[row[j] for j in perm] for row in raw]
        report.append("declared classes match; columns reordered to canonical order")

    exact = all(scalars.is_exact(v) for row in raw for v in row)
    backend = scalars.EXACT if exact else scalars.FLOAT
    if not exact:
        raw = [[scalars.to_float(v) for v in row] for row in raw]
        report.append("character table has irrational entries: backend downgraded to float")

    sizes = [len(c) for c in classes]
    _check_orthogonality(raw, sizes, order, exact)
    dims = []
    for l, row in enumerate(raw):
        d = row[0]
        dv = complex(scalars.to_float(d))
        if abs(dv.imag) > 1e-12 or abs(dv.real - round(dv.real)) > 1e-9 or round(dv.real) < 1:
            raise BadCharacterTable(f"row {l} has non-positive-integer degree {d}", (l, l))
        dims.append(int(round(dv.real)))
    if sum(d * d for d in dims) != order:
        raise BadCharacterTable(f"sum of squared degrees {sum(d*d for d in dims)} != {order}")
    report.append(f"character table ok: {k} classes, degrees {dims}, backend {backend}")

    class_of = [0] * order
    for i, c in enumerate(classes):
        for a in c:
            class_of[a] = i
    return FiniteGroup(
        name=name,
        order=order,
        mul=tuple(tuple(r) for r in mul),
        inv=inv,
        classes=tuple(classes),
        class_of=tuple(class_of),
        char_table=tuple(tuple(r) for r in raw),
        dims=tuple(dims),
        backend=backend,
        report=tuple(report),
    )


def read_group_document(ref) -> dict:
    """Read a group JSON file; bare bundled names like 'z2' or 'z2.group' also work."""
    p = Path(ref)
    if p.exists():
        return json.loads(p.read_text())
    stem = p.name[:-6] if p.name.endswith(".group") else p.name
    if stem in BUNDLED:
        text = resources.files("wreathlab.data").joinpath(f"{stem}.group").read_text()
        return json.loads(text)
    raise FileNotFoundError(f"no group file {ref!r} (bundled: {', '.join(BUNDLED)})")


def bundled_group(name: str) -> FiniteGroup:
    return load_group(read_group_document(name))


def direct_product_table(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """Multiplication table of A x B with (i, j) encoded as i * |B| + j."""
    nb = len(b)
    n = len(a) * nb
    return [
        [a[x // nb][y // nb] * nb + b[x % nb][y % nb] for y in range(n)] for x in range(n)
    ]
