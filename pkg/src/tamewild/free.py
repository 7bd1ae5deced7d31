"""Free nonassociative algebra on x1, x2 (and its commutative quotient).

Monomials are binary trees.  ``Leaf(0)`` is the empty word standing for the
unit, so scalars live in the same term map as everything else.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

from .endo import EndoPair
from .euclid import DomainError, EuclideanRing
from .poly2 import Poly2


@dataclass(frozen=True)
class Leaf:
    var: int  # 1 or 2; 0 is the unit word

    @property
    def degree(self) -> int:
        return 0 if self.var == 0 else 1


@dataclass(frozen=True)
class Node:
    left: "MagmaWord"
    right: "MagmaWord"

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree


MagmaWord = Union[Leaf, Node]

UNIT = Leaf(0)
X1 = Leaf(1)
X2 = Leaf(2)


def comm_key(w: MagmaWord) -> tuple:
    """Total order used to place commutative children: degree, then recursive."""
    if isinstance(w, Leaf):
        return (w.degree, w.var)
    return (w.degree, comm_key(w.left), comm_key(w.right))


def canonicalize(w: MagmaWord) -> MagmaWord:
    if isinstance(w, Leaf):
        return w
    a, b = canonicalize(w.left), canonicalize(w.right)
    if comm_key(b) < comm_key(a):
        a, b = b, a
    return Node(a, b)


def word_product(a: MagmaWord, b: MagmaWord, commutative: bool = False) -> MagmaWord:
    if a == UNIT:
        return b
    if b == UNIT:
        return a
    if commutative and comm_key(b) < comm_key(a):
        a, b = b, a
    return Node(a, b)


def leaf_counts(w: MagmaWord) -> Tuple[int, int]:
    if isinstance(w, Leaf):
        return (1, 0) if w.var == 1 else ((0, 1) if w.var == 2 else (0, 0))
    l1, m1 = leaf_counts(w.left)
    l2, m2 = leaf_counts(w.right)
    return l1 + l2, m1 + m2


class FreeElem:
    """Linear combination of magma words with coefficients in the active ring."""

    __slots__ = ("terms", "commutative")

    def __init__(self, terms: Optional[Dict[MagmaWord, Any]] = None, commutative: bool = False):
        self.commutative = commutative
        terms = terms or {}
        if commutative:
            merged: Dict[MagmaWord, Any] = {}
            for w, c in terms.items():
                k = canonicalize(w)
                merged[k] = merged.get(k, 0) + c
            terms = merged
        self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def gen(cls, var: int, commutative: bool = False) -> "FreeElem":
        return cls({Leaf(var): 1}, commutative)

    @classmethod
    def const(cls, c, commutative: bool = False) -> "FreeElem":
        return cls({UNIT: c}, commutative)

    def _like(self, terms) -> "FreeElem":
        out = FreeElem.__new__(FreeElem)
        out.commutative = self.commutative
        out.terms = {w: c for w, c in terms.items() if c}
        return out

    def _coerce(self, other) -> "FreeElem":
        if isinstance(other, FreeElem):
            if other.commutative != self.commutative:
                raise ValueError("mixing commutative and noncommutative elements")
            return other
        return FreeElem.const(other, self.commutative)

    @property
    def degree(self) -> float:
        if not self.terms:
            return float("-inf")
        return max(w.degree for w in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FreeElem):
            return self.commutative == other.commutative and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.commutative, frozenset(self.terms.items())))

    def __neg__(self) -> "FreeElem":
        return self._like({w: -c for w, c in self.terms.items()})

    def __add__(self, other) -> "FreeElem":
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __sub__(self, other) -> "FreeElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FreeElem":
        return self._coerce(other) - self

    def scale(self, c) -> "FreeElem":
        return self._like({w: c * a for w, a in self.terms.items()})

    def __mul__(self, other) -> "FreeElem":
        if not isinstance(other, FreeElem):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[MagmaWord, Any] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = word_product(wa, wb, self.commutative)
                out[w] = out.get(w, 0) + ca * cb
        return self._like(out)

    def __rmul__(self, other) -> "FreeElem":
        return self.scale(other)

    def __pow__(self, n: int) -> "FreeElem":
        """Left-normed power: w^n = w^(n-1) * w."""
        if n < 1:
            if n == 0:
                return FreeElem.const(1, self.commutative)
            raise ValueError("negative exponent")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __repr__(self) -> str:
        from .parsing import format_free

        return f"FreeElem({format_free(self)!r})"

    def __str__(self) -> str:
        from .parsing import format_free

        return format_free(self)


def free_mul(a: FreeElem, b: FreeElem) -> FreeElem:
    return a * b


@dataclass(frozen=True)
class FreeEndo:
    """Endomorphism given by the images of x1 and x2."""

    b1: FreeElem
    b2: FreeElem

    @property
    def commutative(self) -> bool:
        return self.b1.commutative

    @classmethod
    def identity(cls, commutative: bool = False) -> "FreeEndo":
        return cls(FreeElem.gen(1, commutative), FreeElem.gen(2, commutative))


def _apply_word(e: FreeEndo, w: MagmaWord, cache: dict) -> FreeElem:
    hit = cache.get(w)
    if hit is not None:
        return hit
    if isinstance(w, Leaf):
        if w.var == 0:
            val = FreeElem.const(1, e.commutative)
        else:
            val = e.b1 if w.var == 1 else e.b2
    else:
        val = _apply_word(e, w.left, cache) * _apply_word(e, w.right, cache)
    cache[w] = val
    return val


def apply_free_endo(e: FreeEndo, f: FreeElem) -> FreeElem:
    cache: dict = {}
    out = FreeElem({}, e.commutative)
    for w, c in f.terms.items():
        out = out + _apply_word(e, w, cache).scale(c)
    return out


def compose_free(first: FreeEndo, second: FreeEndo) -> FreeEndo:
    """Apply ``first`` then ``second``, matching :func:`tamewild.endo.compose`."""
    return FreeEndo(apply_free_endo(first, second.b1), apply_free_endo(first, second.b2))


def _check_z(z, ring: Optional[EuclideanRing]):
    if not z:
        raise DomainError("z must be a nonzero nonunit")
    if ring is not None and ring.is_unit(z):
        raise DomainError("z must be a nonzero nonunit")


def _nagata_images(z, commutative: bool):
    x1, x2 = FreeElem.gen(1, commutative), FreeElem.gen(2, commutative)
    w = x1.scale(z) - x2 * x2
    b1 = x1 + x2 * w + w * x2 + (w * w).scale(z)
    b2 = x2 + w.scale(z)
    return b1, b2


def nagata_eta(z, ring: Optional[EuclideanRing] = None) -> FreeEndo:
    """Nagata analogue in the free nonassociative algebra."""
    _check_z(z, ring)
    return FreeEndo(*_nagata_images(z, False))


def nagata_omega(z, ring: Optional[EuclideanRing] = None) -> FreeEndo:
    """Nagata analogue in the free commutative nonassociative algebra."""
    _check_z(z, ring)
    return FreeEndo(*_nagata_images(z, True))


def recovery_chain(e: FreeEndo, z) -> Tuple[FreeElem, FreeElem, FreeElem, FreeElem]:
    """The four combinations of b1, b2 that rebuild the generators.

    s1 = z*b1 - b2^2, s2 = b2 - z*s1, s3 = s1 + s2^2 and
    s4 = b1 - s2 s3 + s2 s2^2 - s3 s2 + s2^2 s2 - z s3^2 + z s3 s2^2
         + z s2^2 s3 - z s2^2 s2^2.
    """
    b1, b2 = e.b1, e.b2
    s1 = b1.scale(z) - b2 * b2
    s2 = b2 - s1.scale(z)
    sq2 = s2 * s2
    s3 = s1 + sq2
    s4 = (
        b1
        - s2 * s3
        + s2 * sq2
        - s3 * s2
        + sq2 * s2
        - (s3 * s3).scale(z)
        + (s3 * sq2).scale(z)
        + (sq2 * s3).scale(z)
        - (sq2 * sq2).scale(z)
    )
    return s1, s2, s3, s4


def lemma2_chain(e: FreeEndo, z) -> bool:
    """True iff the chain recovers x2 (as s2) and x1 (as s4) exactly."""
    _, s2, _, s4 = recovery_chain(e, z)
    c = e.commutative
    return s2 == FreeElem.gen(2, c) and s4 == FreeElem.gen(1, c)


def abelianize(f: FreeElem) -> Poly2:
    """Forget association and order: each tree goes to x1^l x2^m by leaf counts."""
    terms: Dict[Tuple[int, int], Any] = {}
    for w, c in f.terms.items():
        k = leaf_counts(w)
        terms[k] = terms.get(k, 0) + c
    return Poly2(terms)


def tau_star(e: FreeEndo) -> EndoPair:
    return EndoPair(abelianize(e.b1), abelianize(e.b2))
