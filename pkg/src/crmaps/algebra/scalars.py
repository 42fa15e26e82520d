"""Exact Gaussian-rational scalars.

Scalars are elements of sympy's ``QQ_I`` domain (``a + b*i`` with ``a, b``
arbitrary-precision rationals backed by gmpy2).  This module collects the small
helpers the rest of the package needs on top of that type.
"""
from __future__ import annotations

import re as _re
from fractions import Fraction
from typing import Union

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

Scalar = GaussianRational
ScalarLike = Union[int, Fraction, GaussianRational, str]

ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)
I = QQ_I(0, 1)


def gq(re_part: ScalarLike = 0, im_part: ScalarLike = 0) -> GaussianRational:
    """Build ``re_part + im_part*i`` exactly.

    Accepts ints, Fractions, rational strings such as ``"3/4"``, or existing
    Gaussian rationals (for ``re_part`` only, when ``im_part`` is 0).
    """
    if isinstance(re_part, GaussianRational) and im_part == 0:
        return re_part
    return QQ_I(_to_qq(re_part), _to_qq(im_part))


def _to_qq(x) -> object:
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return QQ.convert(x)


def to_scalar(x: ScalarLike) -> GaussianRational:
    """Coerce ints, Fractions, strings and scalars into ``QQ_I``."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return gq(x)


def conj(x: GaussianRational) -> GaussianRational:
    return QQ_I(x.x, -x.y)


def re(x: GaussianRational) -> Fraction:
    return Fraction(int(x.x.numerator), int(x.x.denominator))


def im(x: GaussianRational) -> Fraction:
    return Fraction(int(x.y.numerator), int(x.y.denominator))


def is_real(x: GaussianRational) -> bool:
    return x.y == 0


def abs2(x: GaussianRational) -> Fraction:
    """``|x|^2`` as an exact Fraction."""
    return re(x) ** 2 + im(x) ** 2


def real_sign(x: GaussianRational) -> int:
    """Sign of a real scalar; raises if ``x`` has an imaginary part."""
    if x.y != 0:
        raise ValueError(f"scalar {fmt_scalar(x)} is not real")
    return (x.x > 0) - (x.x < 0)


def _fmt_q(q) -> str:
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_scalar(x: GaussianRational) -> str:
    """Canonical text form: ``3/4``, ``-i``, ``1/2 + 3/4*i`` ..."""
    a, b = x.x, x.y
    if b == 0:
        return _fmt_q(a)
    if b == 1:
        ib = "i"
    elif b == -1:
        ib = "-i"
    else:
        ib = f"{_fmt_q(b)}*i"
    if a == 0:
        return ib
    if ib.startswith("-"):
        return f"{_fmt_q(a)} - {ib[1:]}"
    return f"{_fmt_q(a)} + {ib}"


_Q = r"\d+(?:/\d+)?"
_PURE_IM = _re.compile(rf"([+-]?)(?:({_Q})\*?)?i")
_FULL = _re.compile(rf"([+-]?{_Q})(?:([+-])(?:({_Q})\*?)?i)?")


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``p/q``, ``p/q + r/s*i``, ``i``, ``-3*i`` and similar forms.

    Decimal points are rejected: every scalar in this package is exact.
    """
    s = text.replace(" ", "")
    if "." in s:
        raise ValueError(f"decimal scalars are not accepted: {text!r}")
    m = _PURE_IM.fullmatch(s)
    if m:
        mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        return gq(0, -mag if m.group(1) == "-" else mag)
    m = _FULL.fullmatch(s)
    if not m:
        raise ValueError(f"cannot parse scalar {text!r}")
    im_part = Fraction(0)
    if m.group(2):
        mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        im_part = -mag if m.group(2) == "-" else mag
    return gq(Fraction(m.group(1)), im_part)
