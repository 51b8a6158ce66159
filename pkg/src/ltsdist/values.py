"""Exact extended values: rationals plus infinity.

Finite values are `fractions.Fraction`; infinity is `float("inf")`, the
only float that ever appears.  Mixed comparison, addition, min and max
behave as expected (infinity absorbs addition and max), so code can mix
the two freely as long as it never multiplies infinity by zero.
"""

import re
from fractions import Fraction

INF = float("inf")

# A finite rational or INF.  Weights may be negative; distances are >= 0.
Value = Fraction | float

_RATIONAL_RE = re.compile(r"[+-]?(\d+(\.\d+)?|\d+/\d+)\Z")


def is_inf(x: Value) -> bool:
    return x == INF


def looks_rational(token: str) -> bool:
    """True if the token is an integer, a decimal, or a p/q fraction."""
    return _RATIONAL_RE.match(token) is not None


def parse_rational(token: str) -> Fraction:
    """Parse an exact rational written as integer, decimal, or p/q."""
    if not looks_rational(token):
        raise ValueError("not a rational: %r" % token)
    return Fraction(token)


def parse_value(token: str) -> Value:
    """Like parse_rational, but also accepts `inf`."""
    if token == "inf":
        return INF
    return parse_rational(token)


def fmt_value(x: Value) -> str:
    return "inf" if is_inf(x) else str(Fraction(x))
