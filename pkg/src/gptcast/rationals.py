"""Exact rational scalars for the decision path.

Every verdict-relevant computation in this package runs over arbitrary
precision rationals so that equalities such as ``e_j(w_i) == delta_ij`` are
decided, never approximated.  gmpy2's ``mpq`` is used when available (it is
markedly faster); ``fractions.Fraction`` is a drop-in fallback.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

try:
    from gmpy2 import mpq as _mpq

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpq = Fraction
    HAVE_GMPY2 = False

#: The rational scalar type in use.
Rational = type(_mpq(0))

RationalLike = Union[int, str, Fraction, "Rational"]

ZERO = _mpq(0)
ONE = _mpq(1)


class InexactNumberError(TypeError):
    """A float (or other inexact number) reached the exact decision path."""


def rat(value: RationalLike, denominator: int | None = None) -> Rational:
    """Build an exact rational from an int, ``"p/q"`` string, or rational.

    Floats are rejected: silently converting them would smuggle rounding
    into the decision path.  Raises ``ZeroDivisionError`` on a zero
    denominator (e.g. ``"1/0"``).
    """
    if denominator is not None:
        if isinstance(value, float) or isinstance(denominator, float):
            raise InexactNumberError(
                f"refusing inexact numerator/denominator ({value!r}, {denominator!r})"
            )
        return _mpq(value, denominator)
    if isinstance(value, float):
        raise InexactNumberError(
            f"refusing float {value!r} on the exact path; pass an int, 'p/q' string or rational"
        )
    if isinstance(value, str):
        return _mpq(value.strip())
    return _mpq(value)


def rat_str(value: RationalLike) -> str:
    """Canonical ``"p"`` / ``"p/q"`` text form of an exact rational."""
    q = rat(value)
    return str(q)


def as_fraction(value: RationalLike) -> Fraction:
    q = rat(value)
    return Fraction(int(q.numerator), int(q.denominator))


def is_rational(value: object) -> bool:
    return isinstance(value, (int, Fraction)) or type(value) is Rational


def lcm_denominators(values: Iterable[RationalLike]) -> int:
    """Least common multiple of the denominators of ``values`` (>= 1)."""
    out = 1
    for v in values:
        out = math.lcm(out, int(rat(v).denominator))
    return out


def primitive_integer_vector(vec: Sequence[RationalLike]) -> tuple:
    """Scale a rational vector to coprime integer values, same direction.

    Entries stay typed as rationals (with denominator 1) so downstream
    arithmetic, division included, remains exact.  The zero vector maps to
    itself.
    """
    qs = [rat(v) for v in vec]
    scale = lcm_denominators(qs)
    ints = [int(q * scale) for q in qs]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(_mpq(x) for x in ints)
