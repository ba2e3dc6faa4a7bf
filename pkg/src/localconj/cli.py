"""Command-line interface.

Subcommands: charpoly, conj-p, conj-all, weak-equiv, ideal-of, snf,
screen-primes, ell, companion-test, gen, verify.

One JSON document goes to stdout (or a short text rendering with
--format text); diagnostics go to stderr.  Exit codes: 0 a verdict was
computed (either answer), 1 parse or I/O failure, 2 a mathematical
precondition was violated.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .bridge import ideal_of_matrix
from .conjugacy import (
    GlobalCert,
    IntegerPairCert,
    UnitModCert,
    Verdict,
    companion_test,
    conjugate_over_Zp,
    conjugate_over_all_Zp,
    ell_invariant,
    screen_primes,
    verify_cert,
)
from .gen import generate_pair
from .ideals import IdealLattice, mul as ideal_mul, weak_equivalence_data
from .intmat import IntMatrix, snf
from .polyfield import charpoly, parse_poly


class ParseFailure(Exception):
    """Bad input file or malformed report: exit code 1."""


# ---------------------------------------------------------------------------
# input and output helpers

def read_matrix(path: str) -> IntMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseFailure(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            data = json.loads(text)
            n = int(data["n"])
            rows = data["rows"]
        else:
            tokens = text.split()
            if not tokens:
                raise ValueError("empty file")
            n = int(tokens[0])
            flat = [int(t) for t in tokens[1:]]
            if len(flat) != n * n:
                raise ValueError(f"expected {n * n} entries, found {len(flat)}")
            rows = [flat[i * n : (i + 1) * n] for i in range(n)]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("row/column count mismatch")
        return IntMatrix(rows)
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"cannot parse matrix file {path}: {exc}") from exc


def write_matrix(path: str, m: IntMatrix, fmt: str = "text") -> None:
    if fmt == "json":
        Path(path).write_text(
            json.dumps({"n": m.rows, "rows": m.to_lists()}, indent=1) + "\n"
        )
    else:
        lines = [str(m.rows)]
        lines += [" ".join(str(x) for x in row) for row in m.entries]
        Path(path).write_text("\n".join(lines) + "\n")


def matrix_digest(m: IntMatrix) -> str:
    canonical = json.dumps(
        {"n": m.rows, "rows": m.to_lists()}, sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode()).hexdigest()


def _input_stanza(path: str, m: IntMatrix) -> dict:
    return {"path": path, "n": m.rows, "sha256": matrix_digest(m)}


def _serialize_cert(cert) -> dict | None:
    if cert is None:
        return None
    if isinstance(cert, UnitModCert):
        return {
            "type": "unit_mod",
            "prime": cert.prime,
            "modulus": cert.modulus,
            "matrix": cert.x.to_lists(),
        }
    if isinstance(cert, IntegerPairCert):
        return {"type": "integer_pair", "q": cert.q.to_lists(), "s": cert.s.to_lists()}
    if isinstance(cert, GlobalCert):
        return {"type": "global", "matrix": cert.p_matrix.to_lists()}
    raise TypeError(f"unknown certificate {cert!r}")


def _parse_cert(blob: dict):
    kind = blob.get("type")
    if kind == "unit_mod":
        return UnitModCert(
            IntMatrix(blob["matrix"]), int(blob["prime"]), int(blob["modulus"])
        )
    if kind == "integer_pair":
        return IntegerPairCert(IntMatrix(blob["q"]), IntMatrix(blob["s"]))
    if kind == "global":
        return GlobalCert(IntMatrix(blob["matrix"]))
    raise ParseFailure(f"unknown certificate type {kind!r}")


def _serialize_ideal(ideal: IdealLattice) -> dict:
    return {"den": ideal.den, "rows": ideal.basis.to_lists()}


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "format", "json") == "text":
        print("\n".join(text_lines))
    else:
        print(json.dumps(payload, indent=2))


# ---------------------------------------------------------------------------
# subcommands

def cmd_charpoly(args) -> int:
    m = read_matrix(args.matrix)
    f = charpoly(m)
    payload = {
        "command": "charpoly",
        "input": _input_stanza(args.matrix, m),
        "polynomial": {"coefficients": list(f.coeffs), "pretty": f.pretty()},
    }
    _emit(args, payload, [f.pretty()])
    return 0


def cmd_snf(args) -> int:
    m = read_matrix(args.matrix)
    dec = snf(m)
    payload = {
        "command": "snf",
        "input": _input_stanza(args.matrix, m),
        "d": dec.d.to_lists(),
        "s": dec.s.to_lists(),
        "t": dec.t.to_lists(),
        "diagonal": list(dec.diagonal()),
    }
    _emit(args, payload, ["diagonal: " + " ".join(str(x) for x in dec.diagonal())])
    return 0


def _verdict_stanza(v: Verdict) -> dict:
    return {"conjugate": v.conjugate, "prime": v.prime, "mu": v.mu_used}


def conj_p_report(a: IntMatrix, b: IntMatrix, path_a: str, path_b: str, prime: int) -> dict:
    start = time.perf_counter()
    verdict = conjugate_over_Zp(a, b, prime)
    return {
        "command": "conj-p",
        "prime": prime,
        "inputs": {"a": _input_stanza(path_a, a), "b": _input_stanza(path_b, b)},
        "verdict": _verdict_stanza(verdict),
        "certificate": _serialize_cert(verdict.certificate),
        "timing_seconds": round(time.perf_counter() - start, 6),
    }


def conj_all_report(
    a: IntMatrix, b: IntMatrix, path_a: str, path_b: str, cross_check: bool = False
) -> dict:
    start = time.perf_counter()
    verdict = conjugate_over_all_Zp(a, b)
    payload = {
        "command": "conj-all",
        "inputs": {"a": _input_stanza(path_a, a), "b": _input_stanza(path_b, b)},
        "verdict": _verdict_stanza(verdict),
        "screened_primes": list(verdict.screened),
        "per_prime": [
            {
                "prime": v.prime,
                "conjugate": v.conjugate,
                "mu": v.mu_used,
                "certificate": _serialize_cert(v.certificate),
            }
            for v in verdict.per_prime
        ],
        "pair_certificate": _serialize_cert(verdict.certificate),
    }
    if cross_check:
        ok, _, _ = weak_equivalence_data(ideal_of_matrix(a), ideal_of_matrix(b))
        payload["cross_check"] = {
            "weakly_equivalent": ok,
            "agrees": ok == verdict.conjugate,
        }
    payload["timing_seconds"] = round(time.perf_counter() - start, 6)
    return payload


def weak_equiv_report(a: IntMatrix, b: IntMatrix, path_a: str, path_b: str) -> dict:
    start = time.perf_counter()
    ia = ideal_of_matrix(a)
    ib = ideal_of_matrix(b)
    ok, x, y = weak_equivalence_data(ia, ib)
    return {
        "command": "weak-equiv",
        "inputs": {"a": _input_stanza(path_a, a), "b": _input_stanza(path_b, b)},
        "field": {"coefficients": list(charpoly(a).coeffs)},
        "verdict": {"weakly_equivalent": ok},
        "ideal_a": _serialize_ideal(ia),
        "ideal_b": _serialize_ideal(ib),
        "witnesses": (
            {"x": _serialize_ideal(x), "y": _serialize_ideal(y)} if ok else None
        ),
        "timing_seconds": round(time.perf_counter() - start, 6),
    }


def cmd_conj_p(args) -> int:
    a = read_matrix(args.matrix_a)
    b = read_matrix(args.matrix_b)
    payload = conj_p_report(a, b, args.matrix_a, args.matrix_b, args.prime)
    v = payload["verdict"]
    word = "conjugate" if v["conjugate"] else "not conjugate"
    _emit(args, payload, [f"{word} over Z_{args.prime} (mu = {v['mu']})"])
    return 0


def cmd_conj_all(args) -> int:
    a = read_matrix(args.matrix_a)
    b = read_matrix(args.matrix_b)
    payload = conj_all_report(a, b, args.matrix_a, args.matrix_b, args.cross_check)
    v = payload["verdict"]
    word = "conjugate" if v["conjugate"] else "not conjugate"
    screened = ", ".join(map(str, payload["screened_primes"])) or "none"
    _emit(args, payload, [f"{word} over Z_p for all p (screened primes: {screened})"])
    return 0


def cmd_weak_equiv(args) -> int:
    a = read_matrix(args.matrix_a)
    b = read_matrix(args.matrix_b)
    payload = weak_equiv_report(a, b, args.matrix_a, args.matrix_b)
    word = (
        "weakly equivalent"
        if payload["verdict"]["weakly_equivalent"]
        else "not weakly equivalent"
    )
    _emit(args, payload, [f"associated ideals are {word}"])
    return 0


def cmd_ideal_of(args) -> int:
    a = read_matrix(args.matrix)
    ideal = ideal_of_matrix(a)
    payload = {
        "command": "ideal-of",
        "input": _input_stanza(args.matrix, a),
        "field": {"coefficients": list(charpoly(a).coeffs)},
        "ideal": _serialize_ideal(ideal),
    }
    _emit(
        args,
        payload,
        [f"den = {ideal.den}"] + [" ".join(map(str, r)) for r in ideal.basis.entries],
    )
    return 0


def cmd_screen_primes(args) -> int:
    if args.field:
        f = parse_poly(args.field)
    elif args.matrix:
        f = charpoly(read_matrix(args.matrix))
    else:
        raise ParseFailure("screen-primes needs --field or a matrix file")
    primes = screen_primes(f)
    payload = {
        "command": "screen-primes",
        "polynomial": {"coefficients": list(f.coeffs), "pretty": f.pretty()},
        "primes": primes,
    }
    _emit(args, payload, [" ".join(map(str, primes)) if primes else "(empty)"])
    return 0


def cmd_ell(args) -> int:
    a = read_matrix(args.matrix)
    inv = ell_invariant(a, args.prime)
    payload = {
        "command": "ell",
        "input": _input_stanza(args.matrix, a),
        "prime": inv.prime,
        "ell": inv.ell,
    }
    _emit(args, payload, [f"ell = {inv.ell} at p = {inv.prime}"])
    return 0


def cmd_companion_test(args) -> int:
    a = read_matrix(args.matrix)
    ok = companion_test(a, args.prime)
    payload = {
        "command": "companion-test",
        "input": _input_stanza(args.matrix, a),
        "prime": args.prime,
        "similar_to_companion": ok,
    }
    _emit(args, payload, ["yes" if ok else "no"])
    return 0


def cmd_gen(args) -> int:
    f = parse_poly(args.field)
    pair = generate_pair(f, args.strategy, args.seed)
    write_matrix(args.out_a, pair.a, args.file_format)
    write_matrix(args.out_b, pair.b, args.file_format)
    payload = {
        "command": "gen",
        "field": {"coefficients": list(f.coeffs), "pretty": f.pretty()},
        "strategy": args.strategy,
        "seed": args.seed,
        "files": {"a": args.out_a, "b": args.out_b},
        "conjugator": pair.conjugator.to_lists(),
        "conjugator_det": pair.conjugator_det,
    }
    _emit(args, payload, [f"wrote {args.out_a} and {args.out_b}"])
    return 0


def _load_report(path: str) -> dict:
    try:
        report = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"cannot read report {path}: {exc}") from exc
    if not isinstance(report, dict) or "command" not in report:
        raise ParseFailure("report is missing a command field")
    return report


def verify_report(report: dict, a: IntMatrix, b: IntMatrix) -> tuple[bool, str]:
    """Re-verify a serialized report against the two matrix files."""
    inputs = report.get("inputs", {})
    for key, m in (("a", a), ("b", b)):
        want = inputs.get(key, {}).get("sha256")
        if want is not None and want != matrix_digest(m):
            return False, f"digest mismatch for input {key}"
    command = report["command"]
    if command == "conj-p":
        verdict = report.get("verdict", {})
        blob = report.get("certificate")
        if not verdict.get("conjugate"):
            return True, "negative verdict carries no certificate"
        if blob is None:
            return False, "positive verdict without certificate"
        cert = _parse_cert(blob)
        if not isinstance(cert, UnitModCert) or cert.prime != verdict.get("prime"):
            return False, "certificate does not match the claimed prime"
        ok = verify_cert(a, b, cert)
        return ok, "certificate verified" if ok else "certificate rejected"
    if command == "conj-all":
        screen = screen_primes(charpoly(a))
        if list(report.get("screened_primes", [])) != screen:
            return False, "screened prime list does not match the discriminant"
        per = report.get("per_prime", [])
        verdict = report.get("verdict", {})
        seen = []
        for stanza in per:
            p = stanza.get("prime")
            seen.append(p)
            if stanza.get("conjugate"):
                blob = stanza.get("certificate")
                if blob is None:
                    return False, f"positive verdict at {p} without certificate"
                cert = _parse_cert(blob)
                if not isinstance(cert, UnitModCert) or cert.prime != p:
                    return False, f"certificate mismatch at {p}"
                if not verify_cert(a, b, cert):
                    return False, f"certificate rejected at {p}"
            elif verdict.get("conjugate"):
                return False, "global true verdict with a failing prime"
        if verdict.get("conjugate") and sorted(seen) != screen:
            return False, "true verdict does not cover every screened prime"
        pair = report.get("pair_certificate")
        if pair is not None:
            cert = _parse_cert(pair)
            if not verify_cert(a, b, cert):
                return False, "pair certificate rejected"
        return True, "all certificates verified"
    if command == "weak-equiv":
        verdict = report.get("verdict", {})
        if not verdict.get("weakly_equivalent"):
            return True, "negative verdict carries no witnesses"
        blob = report.get("witnesses")
        if not blob:
            return False, "positive verdict without witnesses"
        ia = ideal_of_matrix(a)
        ib = ideal_of_matrix(b)
        field = ia.field
        try:
            x = IdealLattice(field, blob["x"]["rows"], int(blob["x"]["den"]))
            y = IdealLattice(field, blob["y"]["rows"], int(blob["y"]["den"]))
        except (KeyError, TypeError, ValueError):
            return False, "malformed witness ideals"
        if ideal_mul(x, ib) != ia or ideal_mul(y, ia) != ib:
            return False, "witness ideals rejected"
        return True, "witness ideals verified"
    return False, f"reports of command {command!r} are not verifiable"


def cmd_verify(args) -> int:
    report = _load_report(args.report)
    a = read_matrix(args.matrix_a)
    b = read_matrix(args.matrix_b)
    accepted, reason = verify_report(report, a, b)
    payload = {
        "command": "verify",
        "report": args.report,
        "accepted": accepted,
        "reason": reason,
    }
    _emit(args, payload, [("ACCEPT " if accepted else "REJECT ") + reason])
    return 0


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localconj",
        description="decide p-adic conjugacy of integer matrices and weak "
        "equivalence of their fractional ideals, with verifiable certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("json", "text"), default="json",
            help="output format (default json)",
        )

    p = sub.add_parser("charpoly", help="characteristic polynomial of a matrix file")
    p.add_argument("matrix")
    add_format(p)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("snf", help="Smith normal form of a matrix file")
    p.add_argument("matrix")
    add_format(p)
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("conj-p", help="conjugacy over the p-adic integers")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    p.add_argument("--prime", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_conj_p)

    p = sub.add_parser("conj-all", help="conjugacy over Z_p for every prime")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    p.add_argument(
        "--cross-check", action="store_true",
        help="also run the ideal-side weak-equivalence test and report agreement",
    )
    add_format(p)
    p.set_defaults(func=cmd_conj_all)

    p = sub.add_parser("weak-equiv", help="weak equivalence of the associated ideals")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    add_format(p)
    p.set_defaults(func=cmd_weak_equiv)

    p = sub.add_parser("ideal-of", help="fractional ideal attached to a matrix")
    p.add_argument("matrix")
    add_format(p)
    p.set_defaults(func=cmd_ideal_of)

    p = sub.add_parser("screen-primes", help="primes whose square divides disc(f)")
    p.add_argument("matrix", nargs="?")
    p.add_argument("--field", help="polynomial, e.g. 't^2-t-1' or '-1,-1,1'")
    add_format(p)
    p.set_defaults(func=cmd_screen_primes)

    p = sub.add_parser("ell", help="scalar-congruence invariant of a 2x2 matrix")
    p.add_argument("matrix")
    p.add_argument("--prime", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_ell)

    p = sub.add_parser("companion-test", help="similarity to the companion matrix at p")
    p.add_argument("matrix")
    p.add_argument("--prime", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_companion_test)

    p = sub.add_parser("gen", help="generate a deterministic matrix pair")
    p.add_argument("--field", required=True)
    p.add_argument(
        "--strategy", default="unimodular",
        help="unimodular | singular:p | random",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-a", default="gen_a.txt")
    p.add_argument("--out-b", default="gen_b.txt")
    p.add_argument("--file-format", choices=("text", "json"), default="text")
    add_format(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="re-verify a serialized report")
    p.add_argument("report")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
