"""Sparse polynomials in x1, x2 over a Euclidean ring, with the degree-then-x1 word order."""
from __future__ import annotations

import os
from typing import Any, Dict, Iterable, Iterator, NamedTuple, Optional, Tuple

from .euclid import DomainError, EuclideanRing

_DEFAULT_CAP = 2**31 - 1
_exp_cap = int(os.environ.get("TAMEWILD_EXP_CAP", _DEFAULT_CAP))


class ExponentOverflow(OverflowError):
    """A product would carry an exponent above the configured cap."""


def exponent_cap() -> int:
    return _exp_cap


def set_exponent_cap(cap: int) -> int:
    """Set the exponent cap and return the previous value."""
    global _exp_cap
    if cap < 1:
        raise ValueError("exponent cap must be positive")
    old, _exp_cap = _exp_cap, cap
    return old


def word_key(w) -> Tuple[int, int]:
    """Sort key realizing the word order: total degree first, then degree in x1."""
    return (w[0] + w[1], w[0])


class Word(NamedTuple):
    """Monomial x1^l * x2^m."""

    l: int
    m: int

    @property
    def degree(self) -> int:
        return self.l + self.m

    def __lt__(self, other):
        return word_key(self) < word_key(other)

    def __le__(self, other):
        return word_key(self) <= word_key(other)

    def __gt__(self, other):
        return word_key(self) > word_key(other)

    def __ge__(self, other):
        return word_key(self) >= word_key(other)

    def __mul__(self, other):
        l, m = self.l + other[0], self.m + other[1]
        if l > _exp_cap or m > _exp_cap:
            raise ExponentOverflow(f"exponent above cap {_exp_cap}")
        return Word(l, m)

    def __pow__(self, n: int):
        l, m = self.l * n, self.m * n
        if l > _exp_cap or m > _exp_cap:
            raise ExponentOverflow(f"exponent above cap {_exp_cap}")
        return Word(l, m)

    def __str__(self) -> str:
        return format_word(self) or "1"


ONE_WORD = Word(0, 0)
X1_WORD = Word(1, 0)
X2_WORD = Word(0, 1)


def compare_words(u, v) -> int:
    """Three-way comparison under the word order (-1, 0, 1)."""
    ku, kv = word_key(u), word_key(v)
    return (ku > kv) - (ku < kv)


def format_word(w) -> str:
    parts = []
    for name, e in (("x1", w[0]), ("x2", w[1])):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class DExp(NamedTuple):
    """Exponent of a nonzero polynomial: leading word and the norm of its coefficient."""

    word: Word
    coeff_norm: int

    def key(self):
        return (word_key(self.word), self.coeff_norm)


class Poly2:
    """Immutable sparse polynomial; ``terms`` maps ``(l, m)`` to a nonzero coefficient.

    Coefficients are whatever the active ring uses (``int``, ``Fraction``,
    ``UPoly``, ``RatFunc``); arithmetic only needs ``+``, ``-``, ``*`` on them.
    """

    __slots__ = ("terms", "_sorted", "_hash")

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Any]] = None, *, _clean: bool = False):
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {(int(k[0]), int(k[1])): c for k, c in terms.items() if c}
        self.terms = terms
        self._sorted = None
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): c}) if c else cls()

    @classmethod
    def x1(cls) -> "Poly2":
        return cls({(1, 0): 1}, _clean=True)

    @classmethod
    def x2(cls) -> "Poly2":
        return cls({(0, 1): 1}, _clean=True)

    @classmethod
    def monomial(cls, c, l: int, m: int) -> "Poly2":
        return cls({(l, m): c}) if c else cls()

    @classmethod
    def univariate(cls, coeffs: Iterable, var: int) -> "Poly2":
        """Build sum(c_k * x_var^k) from low-to-high coefficients."""
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                terms[(k, 0) if var == 1 else (0, k)] = c
        return cls(terms, _clean=True)

    def map_coeffs(self, fn) -> "Poly2":
        return Poly2({w: fn(c) for w, c in self.terms.items()})

    # access -----------------------------------------------------------
    def sorted_terms(self) -> Tuple[Tuple[Word, Any], ...]:
        """Terms in strictly decreasing word order."""
        if self._sorted is None:
            self._sorted = tuple(
                (Word(*w), c) for w, c in sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=True)
            )
        return self._sorted

    def __iter__(self) -> Iterator[Tuple[Word, Any]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, l: int, m: int):
        return self.terms.get((l, m), 0)

    def leading(self) -> Tuple[Word, Any]:
        if not self.terms:
            raise DomainError("leading of zero polynomial")
        return self.sorted_terms()[0]

    @property
    def leading_word(self) -> Word:
        return self.leading()[0]

    @property
    def lc(self):
        return self.leading()[1]

    def leading_term(self) -> "Poly2":
        w, c = self.leading()
        return Poly2({w: c}, _clean=True)

    def d_exp(self, ring: EuclideanRing) -> DExp:
        w, c = self.leading()
        return DExp(w, ring.norm(c))

    # degrees ----------------------------------------------------------
    @property
    def degree(self) -> float:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return float("-inf")
        return max(l + m for l, m in self.terms)

    def degree_in(self, var: int) -> float:
        if not self.terms:
            return float("-inf")
        i = var - 1
        return max(w[i] for w in self.terms)

    def univariate_in(self, var: int) -> bool:
        """True when no monomial involves the other variable (constants count)."""
        other = 1 if var == 1 else 0  # index of the excluded variable in (l, m)
        return all(w[other] == 0 for w in self.terms)

    def univariate_in_x1(self) -> bool:
        return self.univariate_in(1)

    def univariate_in_x2(self) -> bool:
        return self.univariate_in(2)

    def is_constant(self) -> bool:
        return all(w == (0, 0) for w in self.terms)

    def constant_term(self):
        return self.terms.get((0, 0), 0)

    def univariate_coeffs(self, var: int) -> list:
        """Low-to-high coefficient list of a polynomial univariate in ``var``."""
        if not self.univariate_in(var):
            raise ValueError("polynomial is not univariate in that variable")
        if not self.terms:
            return []
        i = var - 1
        out = [0] * (int(self.degree_in(var)) + 1)
        for w, c in self.terms.items():
            out[w[i]] = c
        return out

    # arithmetic -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly2):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self) -> "Poly2":
        return Poly2({w: -c for w, c in self.terms.items()}, _clean=True)

    def __add__(self, other) -> "Poly2":
        if not isinstance(other, Poly2):
            if other == 0:
                return self
            other = Poly2.const(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return Poly2(out, _clean=True)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly2":
        if not isinstance(other, Poly2):
            other = Poly2.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly2":
        return (-self) + other

    def scale(self, c) -> "Poly2":
        if not c:
            return Poly2()
        return Poly2({w: c * a for w, a in self.terms.items()})

    def __mul__(self, other) -> "Poly2":
        if not isinstance(other, Poly2):
            return self.scale(other)
        if not self.terms or not other.terms:
            return Poly2()
        a, b = self.terms, other.terms
        if (max(w[0] for w in a) + max(w[0] for w in b) > _exp_cap
                or max(w[1] for w in a) + max(w[1] for w in b) > _exp_cap):
            raise ExponentOverflow(f"exponent above cap {_exp_cap}")
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Tuple[int, int], Any] = {}
        get = out.get
        for (l2, m2), c2 in b.items():
            for (l1, m1), c1 in a.items():
                k = (l1 + l2, m1 + m2)
                s = get(k)
                out[k] = c1 * c2 if s is None else s + c1 * c2
        return Poly2({w: c for w, c in out.items() if c}, _clean=True)

    def __rmul__(self, other) -> "Poly2":
        return self.scale(other)

    def __pow__(self, n: int) -> "Poly2":
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly2.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self) -> str:
        return f"Poly2({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def substitute(f: Poly2, g1: Poly2, g2: Poly2) -> Poly2:
    """Evaluate ``f(g1, g2)`` exactly.

    Horner in x1 over coefficients that are univariate in x2, each of those
    also evaluated by Horner, so only two running products are ever live.
    """
    if not f.terms:
        return Poly2()
    by_l: Dict[int, Dict[int, Any]] = {}
    for (l, m), c in f.terms.items():
        by_l.setdefault(l, {})[m] = c

    def inner(row: Dict[int, Any]) -> Poly2:
        top = max(row)
        acc = Poly2.const(row[top])
        for m in range(top - 1, -1, -1):
            acc = acc * g2
            c = row.get(m)
            if c:
                acc = acc + c
        return acc

    top_l = max(by_l)
    acc = inner(by_l[top_l])
    for l in range(top_l - 1, -1, -1):
        acc = acc * g1
        row = by_l.get(l)
        if row:
            acc = acc + inner(row)
    return acc


def _coeff_text(c, ring: Optional[EuclideanRing]) -> Tuple[str, str, bool]:
    """Return (sign, magnitude text, needs_parens) for a coefficient."""
    from fractions import Fraction
    from .euclid import RatFunc, UPoly, _fmt_frac, format_ratfunc, format_upoly

    if isinstance(c, int):
        return ("-" if c < 0 else "+", str(abs(c)), False)
    if isinstance(c, Fraction):
        return ("-" if c < 0 else "+", _fmt_frac(abs(c)), False)
    if isinstance(c, UPoly):
        if c.is_const():
            v = c.lead
            return ("-" if v < 0 else "+", _fmt_frac(abs(v)), False)
        lead = c.lead
        if lead < 0:
            c = -c
        text = format_upoly(c)
        single = len([x for x in c.coeffs if x]) == 1
        return ("-" if lead < 0 else "+", text, not single)
    if isinstance(c, RatFunc):
        if c.den == 1:
            return _coeff_text(c.num, ring)
        return ("+", format_ratfunc(c), True)
    return ("+", str(c), True)


def format_poly(f: Poly2, ring: Optional[EuclideanRing] = None) -> str:
    """Render in the shared input grammar, terms in decreasing word order."""
    if not f.terms:
        return "0"
    pieces = []
    for w, c in f.sorted_terms():
        sign, mag, paren = _coeff_text(c, ring)
        mono = format_word(w)
        if not mono:
            body = f"({mag})" if paren else mag
        elif mag == "1":
            body = mono
        else:
            body = f"({mag})*{mono}" if paren else f"{mag}*{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
