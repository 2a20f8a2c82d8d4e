"""Exact scalars over the rationals Q and the Gaussian rationals Q(i).

Everything downstream (matrices, brackets, canonical forms) works with exact
scalars: ``fractions.Fraction`` for Q and :class:`GaussianRational` for Q(i).
Floats are rejected at every parsing boundary.

Besides arithmetic, the two field objects :data:`QQ` and :data:`QI` decide
squareness, compute exact square roots of squares, and compute canonical
square-class representatives (needed to compare classification residuals that
are only defined up to multiplication by a nonzero square).
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass
from fractions import Fraction


_RATIONAL_RE = _re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_fraction(text: str) -> Fraction:
    """Parse 'p' or 'p/q' with integer p, q. Decimal notation is rejected."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an exact rational literal: {text!r}")
    value = Fraction(text)
    return value


def _coerce_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return _parse_fraction(value)
    if isinstance(value, float):
        raise TypeError(f"floats are not exact scalars: {value!r}")
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class GaussianRational:
    """A Gaussian rational re + im*i with exact Fraction components."""

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _coerce_fraction(re))
        object.__setattr__(self, "im", _coerce_fraction(im))

    def _lift(self, other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return 1 / (self ** (-exponent))
        result = GaussianRational(1, 0)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # Keep hash compatible with Fraction when the value is real.
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """The field norm re^2 + im^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}*i"
        if self.re == 0:
            return imag
        if self.im > 0:
            return f"{self.re}+{imag}"
        return f"{self.re}{imag}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


Scalar = Fraction | GaussianRational


def _is_square_fraction(a: Fraction) -> bool:
    if a < 0:
        return False
    num, den = a.numerator, a.denominator
    return math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den


def _sqrt_fraction(a: Fraction) -> Fraction:
    if not _is_square_fraction(a):
        raise ValueError(f"{a} is not a square in Q")
    return Fraction(math.isqrt(a.numerator), math.isqrt(a.denominator))


def _squarefree_part(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    from sympy import factorint

    sign = -1 if n < 0 else 1
    result = sign
    for prime, exponent in factorint(abs(n)).items():
        if exponent % 2:
            result *= int(prime)
    return result


class RationalField:
    """The field Q with Fraction scalars."""

    name = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value) -> Fraction:
        return _coerce_fraction(value)

    def parse(self, obj) -> Fraction:
        """Parse a JSON value (int or 'p/q' string) into a scalar."""
        if isinstance(obj, bool) or isinstance(obj, float):
            raise ValueError(f"not an exact rational: {obj!r}")
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            return _parse_fraction(obj)
        raise ValueError(f"not an exact rational: {obj!r}")

    def to_json(self, a: Fraction):
        a = self.coerce(a)
        if a.denominator == 1:
            return int(a)
        return str(a)

    def format(self, a) -> str:
        return str(self.coerce(a))

    def is_square(self, a) -> bool:
        return _is_square_fraction(self.coerce(a))

    def sqrt(self, a) -> Fraction:
        return _sqrt_fraction(self.coerce(a))

    def square_class(self, a) -> Fraction:
        """Canonical representative of a modulo nonzero squares.

        Two nonzero rationals differ by a square factor exactly when their
        signed squarefree parts coincide, so that part is the representative.
        """
        a = self.coerce(a)
        if a == 0:
            raise ValueError("0 has no square class")
        return Fraction(_squarefree_part(a.numerator * a.denominator))

    def __repr__(self):
        return "QQ"


def _gaussian_divmod(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """Nearest-integer quotient of Gaussian integers a/b."""
    ax, ay = a
    bx, by = b
    n = bx * bx + by * by
    qx = ax * bx + ay * by
    qy = ay * bx - ax * by
    # Round each coordinate of (qx + qy i)/n to the nearest integer.
    rx = (2 * qx + n) // (2 * n)
    ry = (2 * qy + n) // (2 * n)
    return rx, ry


def _gaussian_gcd(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    while b != (0, 0):
        qx, qy = _gaussian_divmod(a, b)
        rx = a[0] - (qx * b[0] - qy * b[1])
        ry = a[1] - (qx * b[1] + qy * b[0])
        a, b = b, (rx, ry)
    return a


def _canonical_associate(z: tuple[int, int]) -> tuple[int, int]:
    """The unique associate of a nonzero Gaussian integer with re > 0, im >= 0."""
    x, y = z
    for _ in range(4):
        if x > 0 and y >= 0:
            return x, y
        x, y = -y, x
    raise AssertionError(f"no canonical associate for {z}")


def _exact_gaussian_div(a: tuple[int, int], b: tuple[int, int]):
    """a/b if it is a Gaussian integer, else None."""
    ax, ay = a
    bx, by = b
    n = bx * bx + by * by
    qx = ax * bx + ay * by
    qy = ay * bx - ax * by
    if qx % n or qy % n:
        return None
    return qx // n, qy // n


class GaussianRationalField:
    """The field Q(i) with GaussianRational scalars."""

    name = "Qi"

    def zero(self) -> GaussianRational:
        return GaussianRational(0, 0)

    def one(self) -> GaussianRational:
        return GaussianRational(1, 0)

    def i(self) -> GaussianRational:
        return GaussianRational(0, 1)

    def coerce(self, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError(f"floats are not exact scalars: {value!r}")
        return GaussianRational(_coerce_fraction(value), 0)

    def parse(self, obj) -> GaussianRational:
        """Parse a JSON value: int, 'p/q' string, or {"re":..., "im":...}."""
        if isinstance(obj, dict):
            extra = set(obj) - {"re", "im"}
            if extra:
                raise ValueError(f"unexpected keys in complex scalar: {sorted(extra)}")
            re_part = QQ.parse(obj.get("re", 0))
            im_part = QQ.parse(obj.get("im", 0))
            return GaussianRational(re_part, im_part)
        return GaussianRational(QQ.parse(obj), 0)

    def to_json(self, a):
        a = self.coerce(a)
        if a.im == 0:
            return QQ.to_json(a.re)
        return {"re": QQ.to_json(a.re), "im": QQ.to_json(a.im)}

    def format(self, a) -> str:
        return str(self.coerce(a))

    def is_square(self, a) -> bool:
        """Decide whether a is a square in Q(i).

        For a = x + yi with y != 0: if w^2 = a then |w|^2 = sqrt(x^2 + y^2)
        must be rational and (x + |w|^2)/2 must be a rational square (it is
        the square of the real part of w).  Conversely those two conditions
        produce an explicit square root, so they are equivalent.
        Real a is a square iff a or -a is a square in Q.
        """
        a = self.coerce(a)
        if not a:
            return True
        if a.im == 0:
            return _is_square_fraction(a.re) or _is_square_fraction(-a.re)
        n = a.norm()
        if not _is_square_fraction(n):
            return False
        m = _sqrt_fraction(n)
        return _is_square_fraction((a.re + m) / 2)

    def sqrt(self, a) -> GaussianRational:
        a = self.coerce(a)
        if not a:
            return self.zero()
        if a.im == 0:
            if _is_square_fraction(a.re):
                return GaussianRational(_sqrt_fraction(a.re), 0)
            if _is_square_fraction(-a.re):
                return GaussianRational(0, _sqrt_fraction(-a.re))
            raise ValueError(f"{a} is not a square in Q(i)")
        n = a.norm()
        if not _is_square_fraction(n):
            raise ValueError(f"{a} is not a square in Q(i)")
        m = _sqrt_fraction(n)
        half = (a.re + m) / 2
        if not _is_square_fraction(half):
            raise ValueError(f"{a} is not a square in Q(i)")
        u = _sqrt_fraction(half)
        v = a.im / (2 * u)
        root = GaussianRational(u, v)
        assert root * root == a
        return root

    def square_class(self, a) -> GaussianRational:
        """Canonical representative of a modulo nonzero squares of Q(i).

        The representative is u * r where r is the product of the canonical
        first-quadrant Gaussian prime associates dividing a to an odd power,
        and u is 1 or i depending on the leftover unit (1 and -1 differ from
        1 by a square, i and -i do not).
        """
        from sympy import factorint
        from sympy.ntheory.residue_ntheory import sqrt_mod

        a = self.coerce(a)
        if not a:
            raise ValueError("0 has no square class")
        # Multiplying by den^2 does not change the square class and makes the
        # components integers.
        den = math.lcm(a.re.denominator, a.im.denominator)
        g = (int(a.re * den * den), int(a.im * den * den))
        norm = g[0] * g[0] + g[1] * g[1]
        odd_primes: list[tuple[int, int]] = []
        canonical_product = (1, 0)
        for p, norm_exp in sorted(factorint(norm).items()):
            p, norm_exp = int(p), int(norm_exp)
            if p == 2:
                primes_above = [(1, 1)]
                expected_total = norm_exp
            elif p % 4 == 3:
                assert norm_exp % 2 == 0
                primes_above = [(p, 0)]
                expected_total = norm_exp // 2
            else:
                x0 = int(sqrt_mod(-1, p))
                pi = _gaussian_gcd((p, 0), (x0, 1))
                primes_above = [pi, (pi[0], -pi[1])]
                expected_total = norm_exp
            total = 0
            for pi in primes_above:
                pi = _canonical_associate(pi)
                e = 0
                h = g
                while True:
                    q = _exact_gaussian_div(h, pi)
                    if q is None:
                        break
                    h = q
                    e += 1
                total += e
                for _ in range(e):
                    canonical_product = (
                        canonical_product[0] * pi[0] - canonical_product[1] * pi[1],
                        canonical_product[0] * pi[1] + canonical_product[1] * pi[0],
                    )
                if e % 2:
                    odd_primes.append(pi)
            assert total == expected_total, (a, p, total, expected_total)
        unit = _exact_gaussian_div(g, canonical_product)
        assert unit in {(1, 0), (-1, 0), (0, 1), (0, -1)}, (a, unit)
        rep = GaussianRational(1, 0) if unit[1] == 0 else GaussianRational(0, 1)
        for pi in odd_primes:
            rep = rep * GaussianRational(pi[0], pi[1])
        return rep

    def __repr__(self):
        return "QI"


QQ = RationalField()
QI = GaussianRationalField()

_FIELDS = {"q": QQ, "qi": QI}


def get_field(name: str):
    """Look up a field by name ('Q' or 'Qi', case-insensitive)."""
    try:
        return _FIELDS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown field {name!r}; expected 'Q' or 'Qi'") from None


def field_of(a: Scalar):
    """The field an exact scalar belongs to."""
    if isinstance(a, GaussianRational):
        return QI
    if isinstance(a, Fraction) or (isinstance(a, int) and not isinstance(a, bool)):
        return QQ
    raise TypeError(f"not an exact scalar: {a!r}")


def is_square(a: Scalar, field=None) -> bool:
    field = field or field_of(a)
    return field.is_square(a)


def square_class(a: Scalar, field=None) -> Scalar:
    field = field or field_of(a)
    return field.square_class(a)


def sqrt_exact(a: Scalar, field=None) -> Scalar:
    field = field or field_of(a)
    return field.sqrt(a)
