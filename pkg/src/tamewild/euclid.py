"""Euclidean domains with a norm: integers, Q[t], and the degenerate field Q.

Elements are plain Python values: ``int`` for the integers, ``Fraction`` for
the rationals, :class:`UPoly` for Q[t] and :class:`RatFunc` for Q(t).  A ring
object carries the norm, the division routines and the fraction field; the
values themselves only know ``+ - *`` and equality.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Any, Iterable, Optional


class DomainError(ValueError):
    """Raised for operations undefined in the active domain (norm of zero, non-unit inverse, ...)."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {x!r} as a rational coefficient")


class UPoly:
    """Immutable univariate polynomial in ``t`` with rational coefficients.

    Coefficients are stored low degree first with no trailing zeros, so the
    zero polynomial is the empty tuple.
    """

    __slots__ = ("coeffs", "_hash", "_ints")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None
        self._ints = None

    def _integer_form(self):
        """``(ints, d)`` with ``coeffs[k] == ints[k] / d``."""
        if self._ints is None:
            d = 1
            for c in self.coeffs:
                d = d * c.denominator // math.gcd(d, c.denominator)
            self._ints = ([c.numerator * (d // c.denominator) for c in self.coeffs], d)
        return self._ints

    @classmethod
    def t(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        # -1 for zero; callers needing a norm go through RatPolyRing.norm
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @staticmethod
    def _lift(x) -> "UPoly":
        if isinstance(x, UPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return UPoly((x,))
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        o = UPoly._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            if len(self.coeffs) <= 1:
                self._hash = hash(self.coeffs[0]) if self.coeffs else 0
            else:
                self._hash = hash(("UPoly", self.coeffs))
        return self._hash

    def __neg__(self) -> "UPoly":
        return UPoly(-c for c in self.coeffs)

    def __add__(self, other):
        o = UPoly._lift(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        o = UPoly._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = UPoly._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = UPoly._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UPoly()
        # integer convolution over a common denominator; far cheaper than Fraction products
        (xa, da), (xb, db) = self._integer_form(), o._integer_form()
        out = [0] * (len(xa) + len(xb) - 1)
        for i, a in enumerate(xa):
            if a:
                for j, b in enumerate(xb):
                    out[i + j] += a * b
        d = da * db
        return UPoly(Fraction(v, d) for v in out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result, base = UPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lead
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lb
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UPoly(quot), UPoly(rem[:db] if db > 0 else ())

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        lc = self.lead
        return UPoly(c / lc for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"UPoly({format_upoly(self)!r})"

    def __str__(self) -> str:
        return format_upoly(self)


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_upoly(p: UPoly, var: str = "t") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = _fmt_frac(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_frac(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


_UNIT_POLY = UPoly((1,))


class RatFunc:
    """Element of Q(t), kept reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = UPoly._lift(num) if not isinstance(num, UPoly) else num
        den = UPoly((1,)) if den is None else (UPoly._lift(den) if not isinstance(den, UPoly) else den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = UPoly(), _UNIT_POLY
            return
        if den.degree == 0:
            # constant denominators fold into the rational coefficients
            self.num = num if den.lead == 1 else num * (1 / den.lead)
            self.den = _UNIT_POLY
            return
        g = upoly_gcd(num, den)
        num, den = num.divmod(g)[0], den.divmod(g)[0]
        lc = den.lead
        self.num = num * (1 / lc)
        self.den = den * (1 / lc)

    @classmethod
    def _reduced(cls, num: UPoly, den: UPoly) -> "RatFunc":
        out = cls.__new__(cls)
        out.num, out.den = num, den
        return out

    @staticmethod
    def _lift(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction, UPoly)):
            return RatFunc(x)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self.den == 1:
            return hash(self.num)
        return hash(("RatFunc", self.num, self.den))

    def __neg__(self):
        return RatFunc._reduced(-self.num, self.den)

    def __add__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RatFunc._reduced(self.num + o.num, _UNIT_POLY)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RatFunc._reduced(self.num * o.num, _UNIT_POLY)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = RatFunc._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> "RatFunc":
        if n >= 0 and self.den.degree == 0:
            return RatFunc._reduced(self.num ** n, _UNIT_POLY)
        if n < 0:
            return RatFunc(self.den ** -n, self.num ** -n)
        return RatFunc(self.num ** n, self.den ** n)

    def __repr__(self) -> str:
        return f"RatFunc({format_ratfunc(self)!r})"

    def __str__(self) -> str:
        return format_ratfunc(self)


def format_ratfunc(x: RatFunc) -> str:
    if x.den == 1:
        return format_upoly(x.num)
    return f"({format_upoly(x.num)})/({format_upoly(x.den)})"


# ---------------------------------------------------------------------------
# Ring objects
# ---------------------------------------------------------------------------


class EuclideanRing:
    """Common interface. Subclasses fill in the arithmetic specifics."""

    name: str = ""
    is_field: bool = False
    unit_norm: int = 0  # e = |1|
    zero: Any = 0
    one: Any = 1

    def coerce(self, x):
        raise NotImplementedError

    def norm(self, a) -> int:
        raise NotImplementedError

    def div_rem(self, a, b):
        raise NotImplementedError

    def best_remainder(self, a, b):
        return self.div_rem(a, b)

    def is_unit(self, a) -> bool:
        return bool(a) and self.norm(a) == self.unit_norm

    def unit_inverse(self, a):
        raise NotImplementedError

    def divides_exactly(self, a, b) -> Optional[Any]:
        q, r = self.div_rem(a, b)
        return q if not r else None

    def fraction_field(self) -> "FieldOfFractions":
        raise NotImplementedError

    def random_element(self, rng: random.Random, bound: int):
        raise NotImplementedError

    def random_unit(self, rng: random.Random):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def xgcd(self, a, b):
        """Return ``(g, s, u)`` with ``s*a + u*b == g`` via repeated division."""
        r0, r1 = a, b
        s0, s1 = self.one, self.zero
        u0, u1 = self.zero, self.one
        while r1:
            q, r = self.div_rem(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            u0, u1 = u1, u0 - q * u1
        return r0, s0, u0

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.name == other.name

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.name))


class IntegerRing(EuclideanRing):
    name = "int"
    unit_norm = 1

    def coerce(self, x) -> int:
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise DomainError(f"{x!r} is not an integer")

    def norm(self, a: int) -> int:
        if a == 0:
            raise DomainError("norm of zero undefined")
        return abs(a)

    def div_rem(self, a: int, b: int) -> tuple[int, int]:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        if r and r < 0:
            # keep r in [0, |b|) so |r| < |b| regardless of the sign of b
            q, r = q + 1, r - b
        return q, r

    def best_remainder(self, a: int, b: int) -> tuple[int, int]:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = self.div_rem(a, b)  # 0 <= r < |b|
        m = abs(b)
        if 2 * r > m:
            step = 1 if b > 0 else -1
            q, r = q + step, r - m
        return q, r

    def is_unit(self, a: int) -> bool:
        return a in (1, -1)

    def unit_inverse(self, a: int) -> int:
        if a not in (1, -1):
            raise DomainError(f"{a} is not a unit")
        return a

    def fraction_field(self) -> "RationalField":
        return RationalField(base=self)

    def random_element(self, rng, bound):
        return rng.randint(-bound, bound)

    def random_unit(self, rng):
        return rng.choice((1, -1))


class RationalField(EuclideanRing):
    """Q with constant norm 0: every nonzero element is a unit.

    Serves two roles: the degenerate "field mode" ring, and the fraction field
    of the integers (``base`` is then :class:`IntegerRing`).
    """

    name = "rat"
    is_field = True
    unit_norm = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self, base: Optional[EuclideanRing] = None):
        self.base = base

    def coerce(self, x) -> Fraction:
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise DomainError(f"{x!r} is not rational")

    def norm(self, a) -> int:
        if a == 0:
            raise DomainError("norm of zero undefined")
        return 0

    def div_rem(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b, Fraction(0)

    def is_unit(self, a) -> bool:
        return a != 0

    def unit_inverse(self, a):
        if a == 0:
            raise DomainError("0 is not a unit")
        return 1 / Fraction(a)

    def fraction_field(self) -> "RationalField":
        return self

    # fraction-field protocol
    def embed(self, a) -> Fraction:
        return Fraction(a)

    def is_integral(self, x) -> Optional[Any]:
        x = Fraction(x)
        if self.base is None:
            return x
        return x.numerator if x.denominator == 1 else None

    def random_element(self, rng, bound):
        den = rng.randint(1, 3)
        return Fraction(rng.randint(-bound, bound), den)

    def random_unit(self, rng):
        v = 0
        while v == 0:
            v = rng.randint(-3, 3)
        return Fraction(v, rng.randint(1, 3))

    def format(self, a) -> str:
        return _fmt_frac(Fraction(a))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField) and type(self.base) is type(other.base)

    def __hash__(self) -> int:
        return hash(("RationalField", type(self.base).__name__))


class RatPolyRing(EuclideanRing):
    """Q[t] with the degree as norm, so e = 0 and the units are nonzero constants."""

    name = "ratpoly"
    unit_norm = 0

    def __init__(self):
        self.zero = UPoly()
        self.one = UPoly((1,))

    def coerce(self, x) -> UPoly:
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, UPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return UPoly((x,))
        if isinstance(x, RatFunc) and x.den == 1:
            return x.num
        raise DomainError(f"{x!r} is not in Q[t]")

    def norm(self, a) -> int:
        a = self.coerce(a)
        if not a:
            raise DomainError("norm of zero undefined")
        return a.degree

    def div_rem(self, a, b):
        return self.coerce(a).divmod(self.coerce(b))

    def is_unit(self, a) -> bool:
        a = self.coerce(a)
        return bool(a) and a.degree == 0

    def unit_inverse(self, a):
        a = self.coerce(a)
        if not self.is_unit(a):
            raise DomainError(f"{a} is not a unit")
        return UPoly((1 / a.lead,))

    def fraction_field(self) -> "RatFuncField":
        return RatFuncField()

    def random_element(self, rng, bound):
        deg = rng.randint(0, 2)
        return UPoly(rng.randint(-bound, bound) for _ in range(deg + 1))

    def random_unit(self, rng):
        v = 0
        while v == 0:
            v = rng.randint(-3, 3)
        return UPoly((v,))

    def format(self, a) -> str:
        return format_upoly(self.coerce(a))


class RatFuncField(EuclideanRing):
    """Q(t) in field mode; fraction field of :class:`RatPolyRing`."""

    name = "ratfunc"
    is_field = True
    unit_norm = 0

    def __init__(self):
        self.zero = RatFunc(0)
        self.one = RatFunc(1)
        self.base = RatPolyRing()

    def coerce(self, x) -> RatFunc:
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        lifted = RatFunc._lift(x)
        if lifted is NotImplemented:
            raise DomainError(f"{x!r} is not in Q(t)")
        return lifted

    def norm(self, a) -> int:
        if not a:
            raise DomainError("norm of zero undefined")
        return 0

    def div_rem(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return self.coerce(a) / b, self.zero

    def is_unit(self, a) -> bool:
        return bool(a)

    def unit_inverse(self, a):
        if not a:
            raise DomainError("0 is not a unit")
        return self.one / a

    def fraction_field(self) -> "RatFuncField":
        return self

    def embed(self, a) -> RatFunc:
        return self.coerce(a)

    def is_integral(self, x) -> Optional[UPoly]:
        x = self.coerce(x)
        return x.num if x.den == 1 else None

    def random_element(self, rng, bound):
        return RatFunc(self.base.random_element(rng, bound), UPoly((rng.randint(1, 3),)))

    def random_unit(self, rng):
        num = UPoly((0,))
        while not num:
            num = self.base.random_element(rng, 3)
        return RatFunc(num)

    def format(self, a) -> str:
        return format_ratfunc(self.coerce(a))


FieldOfFractions = EuclideanRing  # anything with embed / is_integral

INTEGERS = IntegerRing()
RATIONALS = RationalField()
RATPOLY = RatPolyRing()

RINGS = {"int": INTEGERS, "rat": RATIONALS, "ratpoly": RATPOLY}


def get_ring(name: str) -> EuclideanRing:
    try:
        return RINGS[name]
    except KeyError:
        raise ValueError(f"unknown ring {name!r}; expected one of {sorted(RINGS)}") from None
