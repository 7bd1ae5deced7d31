"""Endomorphisms of the rank-2 polynomial algebra as pairs of polynomials.

Composition follows ``compose(phi, psi) = (g1(f1, f2), g2(f1, f2))`` for
``phi = (f1, f2)`` and ``psi = (g1, g2)``.  An elementary move applied to a
pair is ``compose(pair, move.as_endo())``, so a certificate is folded from the
identity left to right.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from .euclid import DomainError, EuclideanRing
from .poly2 import X1_WORD, X2_WORD, Poly2, Word, substitute, word_key


class ContractError(ValueError):
    """A documented precondition was violated."""


@dataclass(frozen=True)
class EndoPair:
    f1: Poly2
    f2: Poly2

    @classmethod
    def identity(cls) -> "EndoPair":
        return cls(Poly2.x1(), Poly2.x2())

    def __iter__(self):
        return iter((self.f1, self.f2))

    def __getitem__(self, i: int) -> Poly2:
        # 1-based, matching the variable names
        if i == 1:
            return self.f1
        if i == 2:
            return self.f2
        raise IndexError(i)

    def replace(self, target: int, value: Poly2) -> "EndoPair":
        return EndoPair(value, self.f2) if target == 1 else EndoPair(self.f1, value)

    def map_coeffs(self, fn) -> "EndoPair":
        return EndoPair(self.f1.map_coeffs(fn), self.f2.map_coeffs(fn))

    @property
    def degree(self):
        return max(self.f1.degree, self.f2.degree)

    def is_identity(self) -> bool:
        return self == EndoPair.identity()


def compose(phi: EndoPair, psi: EndoPair) -> EndoPair:
    """``(psi1(phi1, phi2), psi2(phi1, phi2))``: apply phi first."""
    return EndoPair(substitute(psi.f1, phi.f1, phi.f2), substitute(psi.f2, phi.f1, phi.f2))


def compose_all(maps: Sequence[EndoPair]) -> EndoPair:
    out = EndoPair.identity()
    for m in maps:
        out = compose(out, m)
    return out


@dataclass(frozen=True)
class ElementaryMove:
    """Replace component ``target`` by ``unit * f_target + addend(f_other)``.

    ``addend`` is a polynomial in the *other* variable only: x2 when target
    is 1, x1 when target is 2.  Constant addends are translations.
    """

    target: int
    unit: object
    addend: Poly2 = field(default_factory=Poly2)

    def __post_init__(self):
        if self.target not in (1, 2):
            raise ValueError("target must be 1 or 2")
        other = 2 if self.target == 1 else 1
        if not self.addend.univariate_in(other):
            raise ValueError(f"addend must be a polynomial in x{other} only")

    @property
    def other(self) -> int:
        return 2 if self.target == 1 else 1

    def as_endo(self) -> EndoPair:
        xt = Poly2.x1() if self.target == 1 else Poly2.x2()
        return EndoPair.identity().replace(self.target, xt.scale(self.unit) + self.addend)

    def inverse(self, ring: EuclideanRing) -> "ElementaryMove":
        inv = ring.unit_inverse(self.unit)
        return ElementaryMove(self.target, inv, self.addend.scale(-inv))

    def is_trivial(self) -> bool:
        return self.unit == 1 and not self.addend


def apply_move(phi: EndoPair, move: ElementaryMove, ring: EuclideanRing) -> EndoPair:
    if not ring.is_unit(move.unit):
        raise DomainError(f"move scales by non-unit {move.unit}")
    other = phi[move.other]
    xs = (other, Poly2()) if move.other == 1 else (Poly2(), other)
    new = phi[move.target].scale(move.unit) + substitute(move.addend, *xs)
    return phi.replace(move.target, new)


@dataclass(frozen=True)
class TameCertificate:
    moves: Tuple[ElementaryMove, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def fold(self, ring: EuclideanRing, start: Optional[EndoPair] = None) -> EndoPair:
        phi = EndoPair.identity() if start is None else start
        for m in self.moves:
            phi = apply_move(phi, m, ring)
        return phi

    def inverse(self, ring: EuclideanRing) -> "TameCertificate":
        return TameCertificate(tuple(m.inverse(ring) for m in reversed(self.moves)))

    def __add__(self, other: "TameCertificate") -> "TameCertificate":
        return TameCertificate(self.moves + tuple(other.moves))


# ---------------------------------------------------------------------------
# D-exponent of a pair
# ---------------------------------------------------------------------------


class DAut(NamedTuple):
    u: Word
    v: Word
    coeff_norm_sum: int

    def key(self):
        return (word_key(self.u), word_key(self.v), self.coeff_norm_sum)

    def __str__(self) -> str:
        return f"({self.u}, {self.v}, {self.coeff_norm_sum})"


def d_aut(phi: EndoPair, ring: EuclideanRing) -> DAut:
    if not phi.f1 or not phi.f2:
        raise ContractError("D is undefined for a pair with a zero component")
    (w1, c1), (w2, c2) = phi.f1.leading(), phi.f2.leading()
    u, v = (w1, w2) if word_key(w1) >= word_key(w2) else (w2, w1)
    return DAut(u, v, ring.norm(c1) + ring.norm(c2))


def compare_d(a: DAut, b: DAut) -> int:
    ka, kb = a.key(), b.key()
    return (ka > kb) - (ka < kb)


def base_d(ring: EuclideanRing) -> DAut:
    """D of the identity: (x1, x2, 2e)."""
    return DAut(X1_WORD, X2_WORD, 2 * ring.unit_norm)


# ---------------------------------------------------------------------------
# Linear base forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearShape:
    """Coefficients of a pair with D = (x1, x2, 2e).

    form 2: f1 = alpha*x1 + beta*x2 + gamma,   f2 = delta*x2 + eps
    form 3: f1 = delta*x2 + eps,               f2 = alpha*x1 + beta*x2 + gamma
    """

    form: int
    alpha: object
    beta: object
    gamma: object
    delta: object
    eps: object


def _linear_coeffs(f: Poly2):
    if f.degree > 1:
        return None
    return f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0)


def classify_base(phi: EndoPair, ring: EuclideanRing) -> Optional[LinearShape]:
    if compare_d(d_aut(phi, ring), base_d(ring)) != 0:
        raise ContractError("classify_base needs D(phi) = (x1, x2, 2e)")
    a = _linear_coeffs(phi.f1)
    b = _linear_coeffs(phi.f2)
    if a is None or b is None:
        return None
    if a[0] and not b[0]:
        form, full, short = 2, a, b
    elif b[0] and not a[0]:
        form, full, short = 3, b, a
    else:
        return None
    if not (ring.is_unit(full[0]) and ring.is_unit(short[1])):
        return None
    return LinearShape(form, full[0], full[1], full[2], short[1], short[2])


def _x(var: int, ring: EuclideanRing, coeff=1, const=0) -> Poly2:
    p = Poly2.x1() if var == 1 else Poly2.x2()
    return p.scale(coeff) + Poly2.const(const)


def decompose_linear(phi: EndoPair, ring: EuclideanRing) -> TameCertificate:
    """Elementary moves folding the identity onto a base-form pair."""
    shape = classify_base(phi, ring)
    if shape is None:
        raise DomainError("not an automorphism: pair is not of a linear base form")
    if shape.form == 2:
        moves = [
            ElementaryMove(1, shape.alpha, _x(2, ring, shape.beta, shape.gamma)),
            ElementaryMove(2, shape.delta, Poly2.const(shape.eps)),
        ]
    else:
        # (x1, x2) -> (x1 + x2, x2) -> (x1 + x2, x1) -> (delta*x2 + eps, x1) -> target
        ratio = shape.beta * ring.unit_inverse(shape.delta)
        moves = [
            ElementaryMove(1, ring.one, _x(2, ring)),
            ElementaryMove(2, -ring.one, _x(1, ring)),
            ElementaryMove(1, shape.delta, _x(2, ring, -shape.delta, shape.eps)),
            ElementaryMove(2, shape.alpha, _x(1, ring, ratio, shape.gamma - ratio * shape.eps)),
        ]
    cert = TameCertificate(tuple(m for m in moves if not m.is_trivial()))
    if cert.fold(ring) != phi:
        raise AssertionError("linear decomposition failed to fold back")
    return cert


# ---------------------------------------------------------------------------
# Affine / triangular maps and coset representatives
# ---------------------------------------------------------------------------


def affine(a1, b1, c1, a2, b2, c2) -> EndoPair:
    """``(a1*x1 + b1*x2 + c1, a2*x1 + b2*x2 + c2)``."""
    x1, x2 = Poly2.x1(), Poly2.x2()
    return EndoPair(x1.scale(a1) + x2.scale(b1) + Poly2.const(c1), x1.scale(a2) + x2.scale(b2) + Poly2.const(c2))


def affine_parts(lam: EndoPair):
    """Return ``((a1, b1, c1), (a2, b2, c2))`` or ``None`` if not of degree <= 1."""
    r1, r2 = _linear_coeffs(lam.f1), _linear_coeffs(lam.f2)
    if r1 is None or r2 is None:
        return None
    return r1, r2


def is_affine_automorphism(lam: EndoPair, ring: EuclideanRing) -> bool:
    parts = affine_parts(lam)
    if parts is None:
        return False
    (a1, b1, _), (a2, b2, _) = parts
    return ring.is_unit(a1 * b2 - b1 * a2)


def is_triangular(phi: EndoPair, ring: EuclideanRing) -> bool:
    """``(a*x1 + h(x2), b*x2 + c)`` with units a, b."""
    f1, f2 = phi.f1, phi.f2
    if f2.degree > 1 or f2.coeff(1, 0) or not ring.is_unit(f2.coeff(0, 1)):
        return False
    rest = f1 - Poly2.monomial(f1.coeff(1, 0), 1, 0)
    return ring.is_unit(f1.coeff(1, 0)) and rest.univariate_in_x2()


def _normalize_unit(ring: EuclideanRing, a, b):
    """Scale the nonzero pair (a, b) by a unit into a canonical direction."""
    first = a if a else b
    if ring.is_field:
        u = ring.unit_inverse(first)
    elif ring.name == "int":
        u = 1 if first > 0 else -1
    else:
        # Q[t]: make the leading coefficient of the first nonzero entry 1
        u = ring.unit_inverse(ring.coerce(first.lead))
    return a * u, b * u


def affine_coset_rep(lam: EndoPair, ring: EuclideanRing) -> EndoPair:
    """Canonical representative of the left coset ``lam o H`` where H = affine ∩ triangular.

    Right-composing with H rescales the second row (a2, b2) by a unit and
    adds arbitrary translations, so the coset is determined by that row up to
    a unit.  The representative normalizes the row and completes it to a
    determinant-1 matrix with an extended gcd; translations are zero.
    """
    parts = affine_parts(lam)
    if parts is None or not is_affine_automorphism(lam, ring):
        raise DomainError("not an affine automorphism (determinant must be a unit)")
    (_, _, _), (a2, b2, _) = parts
    a2, b2 = _normalize_unit(ring, ring.coerce(a2), ring.coerce(b2))
    if not a2:
        return EndoPair.identity()
    g, s, u = ring.xgcd(a2, b2)
    ginv = ring.unit_inverse(g)
    s, u = s * ginv, u * ginv  # s*a2 + u*b2 == 1
    # rows (u, -s) and (a2, b2): u*b2 - (-s)*a2 == 1
    return affine(u, -s, ring.zero, a2, b2, ring.zero)


def same_left_coset(lam: EndoPair, mu: EndoPair, ring: EuclideanRing) -> bool:
    """Independent membership test: ``lam^{-1} o mu`` is triangular."""
    return is_triangular(compose(affine_inverse(lam, ring), mu), ring)


def affine_inverse(lam: EndoPair, ring: EuclideanRing) -> EndoPair:
    parts = affine_parts(lam)
    if parts is None:
        raise DomainError("not affine")
    (a1, b1, c1), (a2, b2, c2) = parts
    det = a1 * b2 - b1 * a2
    di = ring.unit_inverse(det)
    # matrix inverse applied to (x - c)
    ia1, ib1, ia2, ib2 = b2 * di, -b1 * di, -a2 * di, a1 * di
    return affine(ia1, ib1, -(ia1 * c1 + ib1 * c2), ia2, ib2, -(ia2 * c1 + ib2 * c2))


# ---------------------------------------------------------------------------
# Normal-form sampler
# ---------------------------------------------------------------------------


def triangular_syllable(h: Poly2) -> EndoPair:
    """``(x1 + h(x2), x2)`` with h in x2^2 * R[x2]."""
    return EndoPair(Poly2.x1() + h, Poly2.x2())


@dataclass(frozen=True)
class NormalFormWord:
    """``sigma_1 o tau_1 o ... o sigma_k o tau_k o lam`` with ``tau_i = (x1 + h_i(x2), x2)``."""

    sigmas: Tuple[EndoPair, ...]
    hs: Tuple[Poly2, ...]
    lam: EndoPair

    @property
    def k(self) -> int:
        return len(self.hs)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(int(h.degree) for h in self.hs)

    def syllables(self) -> List[EndoPair]:
        out: List[EndoPair] = []
        for s, h in zip(self.sigmas, self.hs):
            out.append(s)
            out.append(triangular_syllable(h))
        out.append(self.lam)
        return out

    def compose(self) -> EndoPair:
        return compose_all(self.syllables())


def _random_h(rng: random.Random, ring: EuclideanRing, max_deg: int, coeff_bound: int) -> Poly2:
    n = rng.randint(2, max_deg)
    coeffs = [ring.zero, ring.zero] + [ring.coerce(ring.random_element(rng, coeff_bound)) for _ in range(n - 1)]
    while not coeffs[n]:
        coeffs[n] = ring.coerce(ring.random_element(rng, coeff_bound))
    return Poly2.univariate(coeffs, 2)


def random_affine(rng: random.Random, ring: EuclideanRing, coeff_bound: int, translations: bool = True) -> EndoPair:
    """Random affine automorphism: a product of random elementary matrices and a unit diagonal."""
    a = [[ring.one, ring.zero], [ring.zero, ring.one]]
    for _ in range(rng.randint(1, 4)):
        c = ring.coerce(ring.random_element(rng, coeff_bound))
        i = rng.randint(0, 1)
        j = 1 - i
        a[i] = [a[i][0] + c * a[j][0], a[i][1] + c * a[j][1]]
    u1, u2 = ring.coerce(ring.random_unit(rng)), ring.coerce(ring.random_unit(rng))
    a[0] = [u1 * a[0][0], u1 * a[0][1]]
    a[1] = [u2 * a[1][0], u2 * a[1][1]]
    if translations:
        c1 = ring.coerce(ring.random_element(rng, coeff_bound))
        c2 = ring.coerce(ring.random_element(rng, coeff_bound))
    else:
        c1 = c2 = ring.zero
    return affine(a[0][0], a[0][1], c1, a[1][0], a[1][1], c2)


def sample_tame(
    seed: Union[int, random.Random],
    k: int,
    max_h_deg: int = 3,
    coeff_bound: int = 3,
    ring: Optional[EuclideanRing] = None,
    sigma1_identity: bool = False,
    lam_identity: bool = False,
) -> Tuple[NormalFormWord, EndoPair]:
    """Draw a normal-form word with ``k`` triangular syllables and compose it."""
    from .euclid import INTEGERS

    if ring is None:
        ring = INTEGERS
    if k < 1:
        raise ValueError("k must be at least 1")
    if max_h_deg < 2:
        raise ValueError("triangular syllables need degree >= 2")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)

    sigmas = []
    hs = []
    for i in range(k):
        if i == 0:
            sigma = EndoPair.identity() if sigma1_identity else affine_coset_rep(random_affine(rng, ring, coeff_bound), ring)
        else:
            sigma = EndoPair.identity()
            while sigma.is_identity():
                sigma = affine_coset_rep(random_affine(rng, ring, coeff_bound), ring)
        sigmas.append(sigma)
        hs.append(_random_h(rng, ring, max_h_deg, coeff_bound))
    lam = EndoPair.identity() if lam_identity else random_affine(rng, ring, coeff_bound)
    word = NormalFormWord(tuple(sigmas), tuple(hs), lam)
    return word, word.compose()
