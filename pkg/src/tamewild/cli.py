"""Command-line entry point.

Exit codes: 0 tame / success, 2 usage or parse error, 3 wild,
4 not an automorphism, 5 undecided (exponent overflow).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import decider
from .endo import compose, sample_tame
from .euclid import DomainError, get_ring
from .free import nagata_eta, nagata_omega, tau_star
from .parsing import (
    ParseError,
    format_endo,
    format_free_endo,
    format_move,
    format_verdict,
    load_certificate,
    parse_endo,
    parse_scalar,
    step_to_dict,
    verdict_to_dict,
)
from .poly2 import ExponentOverflow, set_exponent_cap

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_WILD = 3
EXIT_NOT_AUT = 4
EXIT_UNDECIDED = 5

_VERDICT_EXIT = {"TAME": EXIT_OK, "WILD": EXIT_WILD, "NOT_AUTOMORPHISM": EXIT_NOT_AUT, "UNDECIDED": EXIT_UNDECIDED}


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}")


def _read_input(value: Optional[str]) -> str:
    if value is None or value == "-":
        return sys.stdin.read().strip()
    return value


def _z_value(args, ring):
    if getattr(args, "z", None) is None:
        return None
    return parse_scalar(args.z, ring)


def _emit(obj, args, text: str):
    if getattr(args, "json", False):
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def cmd_decide(args) -> int:
    ring = get_ring(args.ring)
    try:
        phi = parse_endo(_read_input(args.endo), ring, _z_value(args, ring))
    except ExponentOverflow as exc:
        verdict = decider.Undecided(f"exponent overflow while reading input: {exc}")
    else:
        verdict = decider.decide(phi, ring)
    _emit(verdict_to_dict(verdict, ring, args.trace), args, format_verdict(verdict, ring, args.trace))
    return _VERDICT_EXIT[verdict.name]


def cmd_reduce(args) -> int:
    ring = get_ring(args.ring)
    phi = parse_endo(_read_input(args.endo), ring, _z_value(args, ring))
    final, steps, status = decider.descend(phi, ring)
    if args.json:
        print(json.dumps({"ring": ring.name, "status": status, "final": format_endo(final),
                          "trace": [step_to_dict(s, ring) for s in steps]}, sort_keys=True))
    else:
        for k, s in enumerate(steps, 1):
            print(f"{k}: {format_move(s.move, ring)}  D {s.before} -> {s.after} [{s.kind}]")
        print(f"final ({status}): {format_endo(final)}")
    return EXIT_OK


def cmd_compose(args) -> int:
    ring = get_ring(args.ring)
    z = _z_value(args, ring)
    phi = parse_endo(args.first, ring, z)
    psi = parse_endo(args.second, ring, z)
    out = compose(phi, psi)
    _emit({"ring": ring.name, "result": format_endo(out)}, args, format_endo(out))
    return EXIT_OK


def cmd_invert(args) -> int:
    ring = get_ring(args.ring)
    phi = parse_endo(_read_input(args.endo), ring, _z_value(args, ring))
    inv = decider.verify_automorphism(phi, ring)
    if inv is None:
        print("NOT_AUTOMORPHISM", file=sys.stderr)
        return EXIT_NOT_AUT
    _emit({"ring": ring.name, "inverse": format_endo(inv)}, args, format_endo(inv))
    return EXIT_OK


def cmd_verify(args) -> int:
    ring = get_ring(args.ring)
    phi = parse_endo(_read_input(args.endo), ring, _z_value(args, ring))
    result = {"ring": ring.name}
    inv = decider.verify_automorphism(phi, ring)
    result["automorphism"] = inv is not None
    code = EXIT_OK if inv is not None else EXIT_NOT_AUT
    if args.certificate:
        with open(args.certificate, encoding="utf-8") as fh:
            cert, _ = load_certificate(fh.read(), ring)
        folds = cert.fold(ring) == phi
        result["certificate_folds_back"] = folds
        if not folds:
            code = EXIT_NOT_AUT
    text = "\n".join(f"{k}: {v}" for k, v in result.items() if k != "ring")
    _emit(result, args, text)
    return code


def cmd_nagata(args) -> int:
    ring = get_ring(args.ring)
    z = parse_scalar(args.z, ring)
    if args.form == "poly":
        text = format_endo(tau_star(nagata_eta(z, ring)))
    elif args.form == "free":
        text = format_free_endo(nagata_eta(z, ring))
    else:
        text = format_free_endo(nagata_omega(z, ring))
    _emit({"ring": ring.name, "form": args.form, "map": text}, args, text)
    return EXIT_OK


def cmd_tame_random(args) -> int:
    ring = get_ring(args.ring)
    word, phi = sample_tame(args.seed, args.syllables, args.max_h_deg, args.coeff_bound, ring,
                            sigma1_identity=args.sigma1_identity, lam_identity=args.lam_identity)
    if args.json:
        print(json.dumps({
            "ring": ring.name,
            "map": format_endo(phi),
            "sigmas": [format_endo(s) for s in word.sigmas],
            "hs": [str(h) for h in word.hs],
            "lambda": format_endo(word.lam),
        }, sort_keys=True))
    else:
        print(format_endo(phi))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tamewild", description="Tame/wild automorphisms of R[x1, x2] and Nagata-type constructions.")
    p.add_argument("--exp-cap", type=int, default=None,
                   help="exponent cap (default: $TAMEWILD_EXP_CAP or 2^31-1)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ring_opts(sp, z=True):
        sp.add_argument("--ring", choices=("int", "ratpoly", "rat"), default="int")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if z:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--z", help="value bound to the name z in the input")
            g.add_argument("--z-free", action="store_true", help="input does not use z (default)")

    sp = sub.add_parser("decide", help="decide tame / wild / not an automorphism")
    ring_opts(sp)
    sp.add_argument("--trace", action="store_true", help="include the reduction steps")
    sp.add_argument("endo", nargs="?", help="'f1 ; f2' (stdin if omitted or '-')")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("reduce", help="run the D-reduction loop and print each step")
    ring_opts(sp)
    sp.add_argument("endo", nargs="?")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("compose", help="compose(A, B): apply A first, then B")
    ring_opts(sp)
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("invert", help="inverse over the ring")
    ring_opts(sp)
    sp.add_argument("endo", nargs="?")
    sp.set_defaults(func=cmd_invert)

    sp = sub.add_parser("verify", help="check automorphism status and optionally a certificate")
    ring_opts(sp)
    sp.add_argument("--certificate", help="JSON certificate (or a decide --json document)")
    sp.add_argument("endo", nargs="?")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("nagata", help="print the Nagata map or its free-algebra analogues")
    ring_opts(sp, z=False)
    sp.add_argument("--z", required=True, help="nonzero nonunit of the ring")
    sp.add_argument("--form", choices=("poly", "free", "comm"), default="poly")
    sp.set_defaults(func=cmd_nagata)

    sp = sub.add_parser("tame-random", help="sample a tame automorphism from a random normal form")
    ring_opts(sp, z=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--syllables", type=int, default=2)
    sp.add_argument("--max-h-deg", type=int, default=3)
    sp.add_argument("--coeff-bound", type=int, default=3)
    sp.add_argument("--sigma1-identity", action="store_true")
    sp.add_argument("--lam-identity", action="store_true")
    sp.set_defaults(func=cmd_tame_random)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    old_cap = set_exponent_cap(args.exp_cap) if args.exp_cap is not None else None
    try:
        return args.func(args)
    except ParseError as exc:
        print(exc.caret(), file=sys.stderr)
        return EXIT_USAGE
    except ExponentOverflow as exc:
        print(f"UNDECIDED: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if old_cap is not None:
            set_exponent_cap(old_cap)


if __name__ == "__main__":
    sys.exit(main())
