"""Exact integer and rational primitives behind every orbit decision.

Classifying periodic integer orbits of x -> x**m - k comes down to ordering
integers against two irrational landmarks on the positive axis:

* the *max fixed point*: the positive root of x**m - x - k (it exceeds 1
  whenever k >= 1, and every periodic point of the map lies in the interval
  it bounds);
* the *band floor* (k - fix)**(1/m), defined for k >= 2: seeds at or above
  it keep their next iterate inside [-fix, fix], seeds below it are thrown
  past -fix and never return.

Both orderings reduce to the sign of an integer (or rational) evaluation of
x**m - x - k, so no floating point is used anywhere in a decision.  The same
predicates serve the rational-parameter family x -> x**2 - q that integer
quadratics reduce to under an affine change of coordinates.

Decimal output exists solely for plots and reports: it is produced by exact
bisection on scaled integers and carries a certified error bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Side",
    "DecimalApprox",
    "isqrt",
    "iroot",
    "perfect_square_root",
    "rational_square_root",
    "compare_to_max_fixed_point",
    "compare_to_band_floor",
    "frac_side_of_max_fixed_point",
    "frac_side_of_band_floor",
    "max_fixed_point_floor",
    "compare_to_max_fixed_point_q",
    "compare_to_band_floor_q",
    "band_floor_is_real_q",
    "max_fixed_point_floor_q",
    "approx_max_fixed_point",
    "approx_band_floor",
    "approx_max_fixed_point_q",
    "approx_band_floor_q",
    "format_decimal",
]


class Side(enum.Enum):
    """Position of a test point relative to an irrational landmark."""

    BELOW = -1
    EQUAL = 0
    ABOVE = 1


# ====================================================================
# integer roots
# ====================================================================


def isqrt(n: int) -> int:
    """Floor square root of n >= 0."""
    if n < 0:
        raise ValueError("isqrt of negative integer")
    return math.isqrt(n)


def iroot(n: int, m: int) -> int:
    """Largest r >= 0 with r**m <= n, for n >= 0 and m >= 1."""
    if m < 1:
        raise ValueError("root degree must be >= 1")
    if n < 0:
        raise ValueError("iroot of negative integer")
    if m == 1 or n <= 1:
        return n
    if m == 2:
        return math.isqrt(n)
    # Newton iteration started from a power-of-two bound above the root.
    r = 1 << -(-n.bit_length() // m)
    while True:
        s = ((m - 1) * r + n // r ** (m - 1)) // m
        if s >= r:
            break
        r = s
    while r**m > n:
        r -= 1
    while (r + 1) ** m <= n:
        r += 1
    return r


def perfect_square_root(n: int) -> int | None:
    """r >= 0 with r*r == n, or None when n is negative or not a square."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_square_root(x: Fraction) -> Fraction | None:
    """Exact nonnegative square root of a rational, or None if not a square.

    A canonical fraction is a square iff numerator and denominator both are.
    """
    x = Fraction(x)
    if x < 0:
        return None
    num = perfect_square_root(x.numerator)
    if num is None:
        return None
    den = perfect_square_root(x.denominator)
    if den is None:
        return None
    return Fraction(num, den)


# ====================================================================
# side predicates for the integer family x -> x**m - k
# ====================================================================


def _check_family(m: int, k: int) -> None:
    if m < 2:
        raise ValueError("degree must be >= 2")
    if k < 1:
        raise ValueError("shift must be >= 1 (max fixed point above 1)")


def compare_to_max_fixed_point(x: int, m: int, k: int) -> Side:
    """Order an integer x >= 1 against the largest fixed point of x -> x**m - k.

    The fixed point is the positive root of x**m - x - k; for k >= 1 it lies
    above 1, where that form is strictly increasing, so its sign at x decides
    the ordering.  x <= 0 is rejected: the form is not monotone there.
    """
    _check_family(m, k)
    if x < 1:
        raise ValueError("comparison is only monotone for x >= 1")
    d = x**m - x - k
    if d < 0:
        return Side.BELOW
    if d > 0:
        return Side.ABOVE
    return Side.EQUAL


def compare_to_band_floor(x: int, m: int, k: int) -> Side:
    """Order an integer x >= 0 against the band floor (k - fix)**(1/m).

    Squaring reduction: with t = k - x**m,
        x >= floor  iff  x**m >= k - fix  iff  fix >= t,
    which is trivial for t <= 0 and otherwise decided by
    compare_to_max_fixed_point(t, m, k) inside its own precondition (t >= 1).
    Requires k >= 2 so that the floor is real.
    """
    if x < 0:
        raise ValueError("band floor comparisons need x >= 0")
    if k < 2:
        raise ValueError("band floor is real only for k >= 2")
    _check_family(m, k)
    t = k - x**m
    if t <= 0:
        return Side.ABOVE
    side = compare_to_max_fixed_point(t, m, k)
    if side is Side.EQUAL:
        return Side.EQUAL
    return Side.ABOVE if side is Side.BELOW else Side.BELOW


def frac_side_of_max_fixed_point(x: Fraction, m: int, k: int) -> Side:
    """Rational-test-point version of compare_to_max_fixed_point."""
    _check_family(m, k)
    x = Fraction(x)
    if x < 1:
        return Side.BELOW  # the fixed point exceeds 1 whenever k >= 1
    d = x**m - x - k
    if d < 0:
        return Side.BELOW
    if d > 0:
        return Side.ABOVE
    return Side.EQUAL


def frac_side_of_band_floor(x: Fraction, m: int, k: int) -> Side:
    """Rational-test-point version of compare_to_band_floor."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("band floor comparisons need x >= 0")
    if k < 2:
        raise ValueError("band floor is real only for k >= 2")
    _check_family(m, k)
    side = frac_side_of_max_fixed_point(k - x**m, m, k)
    if side is Side.EQUAL:
        return Side.EQUAL
    return Side.ABOVE if side is Side.BELOW else Side.BELOW


def max_fixed_point_floor(m: int, k: int) -> int:
    """Largest integer at or below the max fixed point of x -> x**m - k."""
    _check_family(m, k)
    hi = 2
    while hi**m - hi - k <= 0:
        hi *= 2
    lo = 1  # invariant: lo <= fix < hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**m - mid - k <= 0:
            lo = mid
        else:
            hi = mid
    return lo


# ====================================================================
# side predicates for the rational family x -> x**2 - q
# ====================================================================


def _require_real_fixed_points_q(q: Fraction) -> None:
    if 1 + 4 * q < 0:
        raise ValueError("no real fixed points: 1 + 4q < 0")


def compare_to_max_fixed_point_q(x: Fraction | int, q: Fraction) -> Side:
    """Order a rational x against the larger fixed point of x -> x**2 - q.

    That fixed point is (1 + sqrt(1 + 4q)) / 2 >= 1/2; the quadratic form
    x**2 - x - q is increasing for x >= 1/2 so its sign decides there, and
    x < 1/2 is always BELOW.
    """
    q = Fraction(q)
    _require_real_fixed_points_q(q)
    x = Fraction(x)
    if 2 * x < 1:
        return Side.BELOW
    d = x * x - x - q
    if d < 0:
        return Side.BELOW
    if d > 0:
        return Side.ABOVE
    return Side.EQUAL


def band_floor_is_real_q(q: Fraction) -> bool:
    """Whether sqrt(q - fix) is real, i.e. q is at or above its own fixed point."""
    q = Fraction(q)
    _require_real_fixed_points_q(q)
    return compare_to_max_fixed_point_q(q, q) in (Side.ABOVE, Side.EQUAL)


def compare_to_band_floor_q(x: Fraction | int, q: Fraction) -> Side:
    """Order a rational x >= 0 against sqrt(q - fix) for x -> x**2 - q."""
    q = Fraction(q)
    x = Fraction(x)
    if x < 0:
        raise ValueError("band floor comparisons need x >= 0")
    if not band_floor_is_real_q(q):
        raise ValueError("band floor is real only when q >= its fixed point")
    side = compare_to_max_fixed_point_q(q - x * x, q)
    if side is Side.EQUAL:
        return Side.EQUAL
    return Side.ABOVE if side is Side.BELOW else Side.BELOW


def max_fixed_point_floor_q(q: Fraction) -> int:
    """Largest integer at or below the larger fixed point of x -> x**2 - q."""
    q = Fraction(q)
    _require_real_fixed_points_q(q)
    hi = 1
    while compare_to_max_fixed_point_q(hi, q) is not Side.ABOVE:
        hi *= 2
    lo = 0  # the fixed point is >= 1/2 > 0; invariant: lo <= fix < hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if compare_to_max_fixed_point_q(mid, q) is Side.ABOVE:
            hi = mid
        else:
            lo = mid
    return lo


# ====================================================================
# certified decimal snapshots
# ====================================================================


@dataclass(frozen=True)
class DecimalApprox:
    """Decimal snapshot of an exact real: |true value - value| <= error_bound.

    value holds exactly `digits` places after the point; error_bound is an
    exact rational, never above 10**-digits.
    """

    value: str
    digits: int
    error_bound: Fraction

    def as_fraction(self) -> Fraction:
        return Fraction(self.value)


def format_decimal(scaled: int, digits: int) -> str:
    """Render scaled / 10**digits with exactly `digits` decimal places."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    unit = 10**digits
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // unit}.{scaled % unit:0{digits}d}"


def _bisect_decimal(side_of, digits: int, int_ceiling: int) -> DecimalApprox:
    """Certified decimal floor of a landmark in [0, int_ceiling + 1).

    side_of(p) must report the position of the rational test point p relative
    to the landmark.  Bisection keeps the landmark in [lo, hi) scaled units;
    an exact hit short-circuits with error_bound 0.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    unit = 10**digits
    lo, hi = 0, (int_ceiling + 1) * unit
    while hi - lo > 1:
        mid = (lo + hi) // 2
        side = side_of(Fraction(mid, unit))
        if side is Side.EQUAL:
            return DecimalApprox(format_decimal(mid, digits), digits, Fraction(0))
        if side is Side.BELOW:
            lo = mid
        else:
            hi = mid
    return DecimalApprox(format_decimal(lo, digits), digits, Fraction(1, unit))


def approx_max_fixed_point(m: int, k: int, digits: int) -> DecimalApprox:
    """Certified decimal for the max fixed point of x -> x**m - k."""
    _check_family(m, k)
    top = max_fixed_point_floor(m, k)
    return _bisect_decimal(lambda p: frac_side_of_max_fixed_point(p, m, k), digits, top)


def approx_band_floor(m: int, k: int, digits: int) -> DecimalApprox:
    """Certified decimal for the band floor of x -> x**m - k (k >= 2)."""
    if k < 2:
        raise ValueError("band floor is real only for k >= 2")
    top = max_fixed_point_floor(m, k)  # the floor never exceeds the fixed point
    return _bisect_decimal(lambda p: frac_side_of_band_floor(p, m, k), digits, top)


def approx_max_fixed_point_q(q: Fraction, digits: int) -> DecimalApprox:
    """Certified decimal for the larger fixed point of x -> x**2 - q."""
    q = Fraction(q)
    top = max_fixed_point_floor_q(q)
    return _bisect_decimal(lambda p: compare_to_max_fixed_point_q(p, q), digits, top)


def approx_band_floor_q(q: Fraction, digits: int) -> DecimalApprox:
    """Certified decimal for sqrt(q - fix) of x -> x**2 - q, when real."""
    q = Fraction(q)
    if not band_floor_is_real_q(q):
        raise ValueError("band floor is real only when q >= its fixed point")
    top = max_fixed_point_floor_q(q)
    return _bisect_decimal(lambda p: compare_to_band_floor_q(p, q), digits, top)
