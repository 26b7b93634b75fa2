"""Scalar backends: exact Gaussian rationals and double-precision complex.

Exact values are ``int``, ``Fraction`` or :class:`GaussRat`; float values are
``float`` or ``complex``.  All arithmetic in the package is written against the
common operator protocol plus ``.conjugate()`` so either backend flows through.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational

EXACT = "exact"
FLOAT = "float"
FLOAT_TOL = 1e-10


class GaussRat:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) - other
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return other - complex(self)
        return GaussRat(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) / other
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        num = self * o.conjugate()
        return GaussRat(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return GaussRat(1) / self ** (-k)
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __abs__(self):
        return abs(complex(self))

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im


def is_exact(v) -> bool:
    return isinstance(v, (int, Fraction, GaussRat)) and not isinstance(v, bool)


def simplify(v):
    """Collapse a GaussRat with zero imaginary part to a Fraction."""
    if isinstance(v, GaussRat) and v.im == 0:
        return v.re
    return v


def to_float(v):
    if isinstance(v, GaussRat):
        return complex(v)
    if isinstance(v, Rational):
        return float(v)
    return v


def to_exact(v):
    """Best-effort exact conversion; floats convert through their decimal repr."""
    if is_exact(v):
        return v
    if isinstance(v, complex):
        re, im = Fraction(repr(v.real)), Fraction(repr(v.imag))
        return GaussRat(re, im) if im else re
    return Fraction(repr(float(v)))


def backend_of(values) -> str:
    return EXACT if all(is_exact(v) for v in values) else FLOAT


def is_zero(v, tol: float = FLOAT_TOL) -> bool:
    if is_exact(v):
        return v == 0
    return abs(v) <= tol


def close(a, b, tol: float = FLOAT_TOL) -> bool:
    """Exact equality for exact pairs, relative tolerance otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    a, b = complex(to_float(a)), complex(to_float(b))
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def real_part(v):
    if isinstance(v, GaussRat):
        return v.re
    if isinstance(v, complex):
        return v.real
    return v


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    out = 1
    for j in range(n):
        out = out * (a + j)
    return out


_UNUM = r"(?:\d+\.?\d*[eE][+-]?\d+|\d*\.\d+(?:[eE][+-]?\d+)?|\d+\.|\d+(?:/\d+)?)"
_NUM = rf"[+-]?{_UNUM}"
_RE_REAL = re.compile(rf"^{_NUM}$")
_RE_COMPLEX = re.compile(rf"^(?P<re>{_NUM})?(?P<im>[+-]{_UNUM}?)[ij]$")
_RE_IMAG = re.compile(rf"^(?P<im>{_NUM})[ij]$")
_RE_ZETA = re.compile(r"^zeta\((?P<m>\d+)\)(?:\^(?P<j>-?\d+))?$")

GRAMMAR = (
    "scalar := int | p/q | decimal | re+imi (e.g. 3/2+1/2i, -i, 2i) | zeta(m)^j; j also works for i"
)


class ScalarParseError(ValueError):
    pass


def _parse_real(text: str):
    if "." in text or "e" in text.lower():
        return float(text)
    return Fraction(text)


def parse_scalar(text):
    """Parse a scalar literal into the narrowest exact type, or a float type."""
    if isinstance(text, bool):
        raise ScalarParseError(f"not a scalar: {text!r}")
    if isinstance(text, (int, Fraction, GaussRat, float, complex)):
        return text
    s = str(text).strip().replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar; " + GRAMMAR)
    if _RE_REAL.match(s):
        v = _parse_real(s)
        return int(v) if isinstance(v, Fraction) and v.denominator == 1 else v
    m = _RE_ZETA.match(s)
    if m:
        return root_of_unity(int(m.group("m")), int(m.group("j") or 1))
    if s in ("i", "+i", "j", "+j"):
        return GaussRat(0, 1)
    if s in ("-i", "-j"):
        return GaussRat(0, -1)
    m = _RE_IMAG.match(s) or _RE_COMPLEX.match(s)
    if m:
        re_txt = m.groupdict().get("re") or "0"
        im_txt = m.group("im")
        if im_txt in ("+", "-"):
            im_txt += "1"
        re_v, im_v = _parse_real(re_txt), _parse_real(im_txt)
        if isinstance(re_v, float) or isinstance(im_v, float):
            return complex(float(re_v), float(im_v))
        return simplify(GaussRat(re_v, im_v))
    raise ScalarParseError(f"cannot parse {text!r}; " + GRAMMAR)


def root_of_unity(m: int, j: int):
    """exp(2 pi i j / m); exact when it lands in the Gaussian rationals."""
    if m <= 0:
        raise ScalarParseError(f"zeta({m}) needs m >= 1")
    j %= m
    exact = {
        (1, 0): 1,
        (2, 0): 1, (2, 1): -1,
        (4, 0): 1, (4, 1): GaussRat(0, 1), (4, 2): -1, (4, 3): GaussRat(0, -1),
    }
    if (m, j) in exact:
        return exact[(m, j)]
    if (2 * j) % m == 0:
        return 1 if j == 0 else -1
    if (4 * j) % m == 0:
        return exact[(4, (4 * j) // m)]
    return cmath.exp(2j * math.pi * j / m)


def format_scalar(v) -> str:
    """Render a scalar so that parse_scalar round-trips it."""
    if isinstance(v, GaussRat):
        if v.im == 0:
            return str(v.re)
        im = v.im
        sign = "+" if im >= 0 else "-"
        mag = str(abs(im))
        if v.re == 0:
            return f"{'-' if im < 0 else ''}{mag}i"
        return f"{v.re}{sign}{mag}i"
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, complex):
        if v.imag == 0:
            return repr(float(v.real))
        sign = "+" if v.imag >= 0 else "-"
        return f"{float(v.real)!r}{sign}{abs(v.imag)!r}i"
    return repr(float(v))
