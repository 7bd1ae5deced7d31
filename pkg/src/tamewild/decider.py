"""Tame/wild decision for automorphisms of R[x1, x2] by descent on the D-exponent.

A pair is reduced by elementary moves that strictly lower D until it either
reaches the linear base (tame) or gets stuck (wild, once it is known to be an
automorphism).  Automorphism status itself is settled over the fraction
field, where the same loop always succeeds on automorphisms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .endo import (
    ContractError,
    DAut,
    ElementaryMove,
    EndoPair,
    TameCertificate,
    base_d,
    compare_d,
    compose,
    d_aut,
    decompose_linear,
)
from .euclid import EuclideanRing
from .poly2 import ExponentOverflow, Poly2


@dataclass(frozen=True)
class ReductionStep:
    move: ElementaryMove
    before: DAut
    after: DAut
    kind: str = "kill"  # "kill": leading word removed; "norm": leading coefficient norm lowered


@dataclass(frozen=True)
class Tame:
    certificate: TameCertificate
    trace: Tuple[ReductionStep, ...] = ()
    name = "TAME"


@dataclass(frozen=True)
class Wild:
    stuck: EndoPair
    trace: Tuple[ReductionStep, ...] = ()
    name = "WILD"


@dataclass(frozen=True)
class NotAutomorphism:
    reason: str
    name = "NOT_AUTOMORPHISM"


@dataclass(frozen=True)
class Undecided:
    diagnostics: str
    name = "UNDECIDED"


Verdict = Union[Tame, Wild, NotAutomorphism, Undecided]


def _power_exponent(fi: Poly2, fj: Poly2) -> Optional[int]:
    """M >= 1 with lead word of fi equal to (lead word of fj)^M, if any."""
    (li, mi), (lj, mj) = fi.leading_word, fj.leading_word
    dj = lj + mj
    if dj == 0:
        return None
    di = li + mi
    if di % dj:
        return None
    M = di // dj
    if M < 1 or li != M * lj or mi != M * mj:
        return None
    return M


def _candidates(phi: EndoPair, ring: EuclideanRing):
    """Yield (i, j, M, q, r) for each direction where the leading words line up."""
    for i, j in ((1, 2), (2, 1)):
        fi, fj = phi[i], phi[j]
        M = _power_exponent(fi, fj)
        if M is None:
            continue
        b = fj.lc ** M
        q, r = ring.best_remainder(fi.lc, b)
        if q:
            yield i, j, M, q, r


def _move_for(i: int, j: int, M: int, q, ring: EuclideanRing, extra: Optional[Poly2] = None) -> ElementaryMove:
    var = Poly2.x1() if j == 1 else Poly2.x2()
    addend = (var ** M).scale(-q)
    if extra is not None:
        addend = addend + extra
    return ElementaryMove(i, ring.one, addend)


def _degenerate_move(i: int, j: int, M: int, q, power: Poly2, fj: Poly2, ring: EuclideanRing):
    """Move for fi == q * fj^M, where the plain candidate would leave zero.

    M >= 2: keep fj^(M-1), a lower word.  M == 1: keep fj itself, which only
    helps when lc(fj) has smaller norm than lc(fi).
    """
    var = Poly2.x1() if j == 1 else Poly2.x2()
    if M >= 2:
        return _move_for(i, j, M, q, ring, var ** (M - 1)), fj ** (M - 1), "kill"
    return _move_for(i, j, M, q - ring.one, ring), power, "norm"


def _search(phi: EndoPair, ring: EuclideanRing, powers: Optional[dict] = None):
    if not phi.f1 or not phi.f2:
        raise ContractError("find_reduction needs nonzero components")
    before = d_aut(phi, ring)
    if compare_d(before, base_d(ring)) <= 0:
        raise ContractError("find_reduction needs D(phi) above (x1, x2, 2e)")
    cands = sorted(_candidates(phi, ring), key=lambda c: (bool(c[4]), c[0]))
    for i, j, M, q, r in cands:
        fi, fj = phi[i], phi[j]
        if powers is None:
            power = fj ** M
        else:
            power = powers.get((j, M, fj))
            if power is None:
                power = powers[(j, M, fj)] = fj ** M
        new = fi - power.scale(q)
        if new:
            move, kind = _move_for(i, j, M, q, ring), "norm" if r else "kill"
        else:
            move, new, kind = _degenerate_move(i, j, M, q, power, fj, ring)
        after_phi = phi.replace(i, new)
        after = d_aut(after_phi, ring)
        if compare_d(after, before) < 0:
            return ReductionStep(move, before, after, kind), after_phi
    return None, None


def find_reduction(phi: EndoPair, ring: EuclideanRing) -> Optional[ReductionStep]:
    """First elementary move that strictly lowers D, or ``None``.

    Only ``f_i <- f_i - q * f_j^M`` needs trying: D can only drop when the top
    power of f_j in the addend hits the leading word of f_i, and the best
    achievable leading coefficient is the minimal-norm remainder modulo
    ``lc(f_j)^M``.  Word kills are preferred over norm drops, direction 1
    before direction 2.
    """
    return _search(phi, ring)[0]


def descend(phi: EndoPair, ring: EuclideanRing):
    """Run the reduction loop; return (final pair, steps, status).

    status is "base" (D reached (x1, x2, 2e)), "stuck" (no reduction) or
    "degenerate" (D below the base, or a component became constant).
    """
    steps: List[ReductionStep] = []
    base = base_d(ring)
    powers: dict = {}
    while True:
        if not phi.f1 or not phi.f2 or phi.f1.is_constant() or phi.f2.is_constant():
            return phi, steps, "degenerate"
        c = compare_d(d_aut(phi, ring), base)
        if c == 0:
            return phi, steps, "base"
        if c < 0:
            return phi, steps, "degenerate"
        step, reduced = _search(phi, ring, powers)
        if step is None:
            return phi, steps, "stuck"
        phi = reduced
        steps.append(step)


def reduction_trace(phi: EndoPair, ring: EuclideanRing) -> List[ReductionStep]:
    """Replay of the descent loop over ``ring`` (no automorphism check)."""
    return descend(phi, ring)[1]


def _certificate_from_descent(final: EndoPair, steps, ring: EuclideanRing) -> Optional[TameCertificate]:
    from .endo import classify_base

    if classify_base(final, ring) is None:
        return None
    linear = decompose_linear(final, ring)
    undo = TameCertificate(tuple(s.move.inverse(ring) for s in reversed(steps)))
    return linear + undo


def decide_over_fractions(phi: EndoPair, ring: EuclideanRing) -> Optional[Tuple[EndoPair, TameCertificate]]:
    """Lift to K = Frac(ring) and reduce there.

    Returns ``(inverse over K, certificate over K)`` when ``phi`` is a
    K-automorphism, else ``None``.  The certificate is checked to fold back
    to the lifted input.
    """
    K = ring.fraction_field()
    lifted = phi.map_coeffs(K.embed)
    if not lifted.f1 or not lifted.f2:
        return None
    final, steps, status = descend(lifted, K)
    if status != "base":
        return None
    cert = _certificate_from_descent(final, steps, K)
    if cert is None:
        return None
    if cert.fold(K) != lifted:
        raise AssertionError("fraction-field certificate does not fold back")
    inverse = cert.inverse(K).fold(K)
    return inverse, cert


def _integral_pair(pair: EndoPair, ring: EuclideanRing) -> Optional[EndoPair]:
    K = ring.fraction_field()
    parts = []
    for f in pair:
        terms = {}
        for w, c in f.terms.items():
            v = K.is_integral(c)
            if v is None:
                return None
            terms[w] = ring.coerce(v)
        parts.append(Poly2(terms))
    return EndoPair(*parts)


def _ring_inverse(phi: EndoPair, ring: EuclideanRing) -> Tuple[Optional[EndoPair], str]:
    res = decide_over_fractions(phi, ring)
    if res is None:
        return None, "not an automorphism over the fraction field"
    inv = _integral_pair(res[0], ring)
    if inv is None:
        return None, "inverse has coefficients outside the ring"
    return inv, ""


def _tame_certificate(phi: EndoPair, ring: EuclideanRing):
    """Certificate over ``ring`` when the descent there reaches the base, else ``None``."""
    final, steps, status = descend(phi, ring)
    if status != "base":
        return None, final, steps, status
    return _certificate_from_descent(final, steps, ring), final, steps, status


def verify_automorphism(phi: EndoPair, ring: EuclideanRing) -> Optional[EndoPair]:
    """Inverse of ``phi`` over ``ring`` if it exists, checked by composing both ways."""
    if not phi.f1 or not phi.f2:
        return None
    cert = _tame_certificate(phi, ring)[0]
    if cert is not None:
        inv = cert.inverse(ring).fold(ring)
    else:
        inv, _ = _ring_inverse(phi, ring)
    if inv is None:
        return None
    ident = EndoPair.identity()
    if compose(phi, inv) != ident or compose(inv, phi) != ident:
        return None
    return inv


def decide(phi: EndoPair, ring: EuclideanRing) -> Verdict:
    try:
        if not phi.f1 or not phi.f2:
            return NotAutomorphism("zero component")
        cert, final, steps, status = _tame_certificate(phi, ring)
        if cert is not None:
            # the certificate itself witnesses invertibility over the ring
            return Tame(cert, tuple(steps))
        # Stuck: only an automorphism may be called wild.  The K-certificate
        # folds back exactly, so its inverse fold is a true inverse over K and
        # integrality settles the question without a double composition.
        inv, reason = _ring_inverse(phi, ring)
        if inv is None:
            return NotAutomorphism(reason)
        if status != "stuck":
            raise AssertionError(f"descent of an automorphism ended {status}")
        return Wild(final, tuple(steps))
    except ExponentOverflow as exc:
        return Undecided(f"exponent overflow: {exc}")
