"""Supertropical scalars over exact rationals, in logarithmic notation.

A scalar is one of

* ``ZERO``: the additive identity, written ``-inf`` (or ``_``);
* a *tangible* rational ``q``: the max-plus element ``q``;
* a *ghost* rational ``q``: written ``qv``, the image of ``q`` under the
  ghost map.

Multiplication adds log-values, addition takes the larger one and turns a
tie into a ghost.  The multiplicative unit ``ONE`` is the tangible ``0``.

Values are exact: integers stay ``int`` and everything else is a
``fractions.Fraction``.  Inverses are also defined for ghosts (negate the
value, stay ghost); this is an extension compatible with the ghost map and
is needed where a construction divides by an off-track ghost entry.
"""

from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .errors import DomainError, ParseError

Rational = Union[int, Fraction]


def _canon(q):
    """Return ``q`` as an ``int`` when integral, else as a ``Fraction``."""
    if type(q) is int:
        return q
    if type(q) is Fraction:
        return q.numerator if q.denominator == 1 else q
    if isinstance(q, bool):
        raise TypeError("booleans are not scalar values")
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else q


class TropElem(NamedTuple):
    """A supertropical scalar.  ``value is None`` encodes zero."""

    value: Optional[Rational]
    ghost: bool = False

    # -- variants ---------------------------------------------------------

    @classmethod
    def tangible(cls, q) -> "TropElem":
        return cls(_canon(q), False)

    @classmethod
    def ghost_of(cls, q) -> "TropElem":
        return cls(_canon(q), True)

    @property
    def is_zero(self) -> bool:
        return self.value is None

    @property
    def is_tangible(self) -> bool:
        return self.value is not None and not self.ghost

    @property
    def is_ghost(self) -> bool:
        return self.value is not None and self.ghost

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TropElem):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, TropElem):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        if self.value is None:
            if k <= 0:
                raise DomainError("zero has no non-positive powers")
            return self
        return TropElem(_canon(self.value * k), self.ghost)

    # Tuple ordering would silently compare (value, ghost) pairs; the
    # nu-order lives in nu_lt / nu_le instead.
    def __lt__(self, other):
        raise TypeError("use nu_lt / nu_le to compare supertropical scalars")

    __le__ = __gt__ = __ge__ = __lt__

    def __repr__(self):
        return f"TropElem({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = TropElem(None, False)
ONE = TropElem(0, False)
ONE_GHOST = TropElem(0, True)


def elem(x) -> TropElem:
    """Coerce ``x`` (scalar token, number, ``None``) into a ``TropElem``."""
    if isinstance(x, TropElem):
        return x
    if x is None:
        return ZERO
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        if x == float("-inf"):
            return ZERO
        raise TypeError("floats are not accepted; pass int, Fraction or a token")
    return TropElem.tangible(x)


# -- core operations ------------------------------------------------------


def nu(a: TropElem) -> TropElem:
    """The ghost map."""
    if a.value is None or a.ghost:
        return a
    return TropElem(a.value, True)


def add(a: TropElem, b: TropElem) -> TropElem:
    av, bv = a.value, b.value
    if av is None:
        return b
    if bv is None:
        return a
    if av > bv:
        return a
    if av < bv:
        return b
    return TropElem(av, True)


def mul(a: TropElem, b: TropElem) -> TropElem:
    av, bv = a.value, b.value
    if av is None or bv is None:
        return ZERO
    v = av + bv
    if type(v) is Fraction and v.denominator == 1:
        v = v.numerator
    return TropElem(v, a.ghost or b.ghost)


def inv(a: TropElem) -> TropElem:
    """Multiplicative inverse; ghosts invert to ghosts."""
    if a.value is None:
        raise DomainError("cannot invert the zero element")
    return TropElem(-a.value, a.ghost)


def div(a: TropElem, b: TropElem) -> TropElem:
    return mul(a, inv(b))


def sqrt(a: TropElem) -> TropElem:
    """Square root: halves the log-value, keeps the variant."""
    if a.value is None:
        return a
    return TropElem(_canon(Fraction(a.value) / 2), a.ghost)


def tsum(items) -> TropElem:
    total = ZERO
    for x in items:
        total = add(total, x)
    return total


def tprod(items) -> TropElem:
    total = ONE
    for x in items:
        total = mul(total, x)
    return total


# -- orders ---------------------------------------------------------------

# Zero sits below every value in the nu-order.


def nu_key(a: TropElem):
    """A sort key realising the nu-order (zero first)."""
    return (0, 0) if a.value is None else (1, a.value)


def nu_eq(a: TropElem, b: TropElem) -> bool:
    return a.value == b.value


def nu_le(a: TropElem, b: TropElem) -> bool:
    if a.value is None:
        return True
    if b.value is None:
        return False
    return a.value <= b.value


def nu_lt(a: TropElem, b: TropElem) -> bool:
    if b.value is None:
        return False
    if a.value is None:
        return True
    return a.value < b.value


def nu_ge(a, b):
    return nu_le(b, a)


def nu_gt(a, b):
    return nu_lt(b, a)


def ghost_surpass(a: TropElem, b: TropElem) -> bool:
    """``a |= b``: ``a = b + g`` for some ghost-or-zero ``g``.

    Adding ``g`` either leaves ``b`` untouched (``g`` nu-below ``b``) or
    produces a ghost at least as large as ``b``; hence the closed form.
    """
    if a == b:
        return True
    if not a.ghost:
        # a tangible: only g below b works, forcing a == b.
        # a zero: a == b + g forces b = g = zero.
        return False
    return b.value is None or a.value >= b.value


# -- symmetrized pairs ----------------------------------------------------


class SymPair(NamedTuple):
    """A (positive, negative) pair in the symmetrized semiring."""

    pos: TropElem
    neg: TropElem

    def __add__(self, other):
        if not isinstance(other, SymPair):
            return NotImplemented
        return SymPair(add(self.pos, other.pos), add(self.neg, other.neg))

    def __mul__(self, other):
        if not isinstance(other, SymPair):
            return NotImplemented
        return sym_mul(self, other)

    def __lt__(self, other):
        raise TypeError("use sym_surpass to compare symmetrized pairs")

    __le__ = __gt__ = __ge__ = __lt__

    def __repr__(self):
        return f"SymPair({format_scalar(self.pos)!r}, {format_scalar(self.neg)!r})"


SYM_ZERO = SymPair(ZERO, ZERO)
SYM_ONE = SymPair(ONE, ZERO)


def sym_mul(p: SymPair, q: SymPair) -> SymPair:
    return SymPair(
        add(mul(p.pos, q.pos), mul(p.neg, q.neg)),
        add(mul(p.pos, q.neg), mul(p.neg, q.pos)),
    )


def collapse(p: SymPair) -> TropElem:
    return add(p.pos, p.neg)


def in_circ(p: SymPair) -> bool:
    return p.pos.value == p.neg.value


def _offsets(x: TropElem, y: TropElem):
    """Describe the nu-values ``w`` of all ``c`` with ``x = y + c``.

    Returns ``(below, points)``: if ``below`` is not None every ``c`` with
    nu-value strictly under ``below`` works (zero always included, and
    ``below`` may be ``ZERO`` meaning "only zero"); ``points`` is a set of
    extra admissible log-values.
    """
    below = None
    points = set()
    if x == y:
        below = y
    if x.value is not None:
        if y.value is None:
            points.add(x.value)
        elif x.value > y.value:
            points.add(x.value)
        elif x.value == y.value and x.ghost:
            points.add(x.value)
    return below, points


def sym_surpass(p: SymPair, q: SymPair) -> bool:
    """``p >=_o q``: ``p = q + (c1, c2)`` with ``c1`` nu-equivalent to ``c2``."""
    b1, s1 = _offsets(p.pos, q.pos)
    b2, s2 = _offsets(p.neg, q.neg)
    if b1 is not None and b2 is not None:
        return True  # c = (zero, zero)
    if s1 & s2:
        return True
    if b1 is not None and any(nu_lt(TropElem(w), b1) for w in s2):
        return True
    if b2 is not None and any(nu_lt(TropElem(w), b2) for w in s1):
        return True
    return False


# -- text -----------------------------------------------------------------


def parse_scalar(token: str) -> TropElem:
    """Parse ``_``/``-inf`` (zero), ``3``, ``-5/2``, ``1.5`` or ``4v`` (ghost)."""
    t = token.strip()
    if t in ("_", "-inf", "-", "−∞", "-∞"):
        return ZERO
    ghost = False
    if t.endswith(("v", "ν")):
        ghost = True
        t = t[:-1]
    if not t:
        raise ParseError(f"bad scalar token {token!r}")
    try:
        q = Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad scalar token {token!r}") from None
    return TropElem(_canon(q), ghost)


def format_scalar(a: TropElem) -> str:
    if a.value is None:
        return "-inf"
    return f"{a.value}v" if a.ghost else str(a.value)
