"""Command-line front end: JSON in, JSON out.

Every command prints one JSON document on stdout,

    {"schema": "cwq/1", "command": ..., "status": ..., "payload": ..., "log": [...]}

and exits with 0 (ok), 2 (no), 3 (unknown), 1 (error) or 64 (usage).
Human-readable progress goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .classify import (
    QuotientCertificate,
    SpaceSpec,
    classify,
    compose,
    flags,
    gamma_generators,
    space_from_spec,
    verify_certificate,
)
from .cwgeom import CWParams, normalize, to_scalar
from .errors import CWQError
from .goodness import DEFAULT_SEED, decide_C_admissible, decide_R_admissible
from .intpoly import IntPolynomial
from .numberfields import f6_example, is_salem, pell_fundamental_unit, salem4_enumerate, salem_structure
from .report import report
from .special import SpecialConstellation, is_minimal, is_P_admissible

SCHEMA = "cwq/1"
EXIT = {"ok": 0, "no": 2, "unknown": 3, "error": 1}
EXIT_USAGE = 64

log = logging.getLogger("cwquot")


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str  # ok, no, unknown or error
    payload: Any
    log: list[str] = field(default_factory=list)

    def document(self, command: str) -> dict:
        return {"schema": SCHEMA, "command": command, "status": self.status, "payload": self.payload, "log": self.log}

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# ------------------------------------------------------------------ inputs


def _values(text: str | None) -> list:
    if text is None or not text.strip():
        return []
    return [to_scalar(x.strip()) for x in text.split(",")]


def _ints(text: str | None) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma separated integers, got {text!r}") from exc


def _load(path: str) -> Any:
    try:
        obj = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise CWQError(f"{path} is not valid JSON: {exc}") from exc
    if isinstance(obj, dict) and obj.get("schema") == SCHEMA and "payload" in obj:
        return obj["payload"]
    return obj


def _bindings(items: Sequence[str] | None) -> dict[str, str]:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"binding must look like name=value, got {item!r}")
        out[name.strip()] = value.strip()
    return out


def _spec_from_args(args) -> SpaceSpec:
    if getattr(args, "spec", None):
        obj = _load(args.spec)
        return SpaceSpec.from_json(obj.get("spec", obj))
    if not getattr(args, "poly", None):
        raise UsageError("give --spec FILE or --poly")
    f = IntPolynomial.parse(args.poly)
    P = SpecialConstellation.parse(args.constellation or "")
    k = _ints(args.k) if args.k is not None else (0,) * P.d
    return SpaceSpec(f, P, k, _bindings(args.bind))


def _params_from_args(args) -> CWParams:
    if getattr(args, "params", None):
        return CWParams.from_json(_load(args.params))
    lam, mu = _values(args.lam), _values(args.mu)
    if args.type == "real" and mu or args.type == "imaginary" and lam:
        raise UsageError(f"type {args.type} conflicts with the given parameters")
    if not lam and not mu:
        raise UsageError("give --lambda and/or --mu, or --params FILE")
    return CWParams(lam, mu)


# --------------------------------------------------------------- commands


def cmd_classify(args) -> CommandResult:
    params = _params_from_args(args)
    res = classify(params.lam, params.mu, seed=args.seed, bound=args.bound)
    payload = {"params": params.to_json(), "normalized": normalize(params).to_json(), "result": res.to_json()}
    if res.witness is not None and args.certify:
        _, cert = space_from_spec(res.witness, seed=args.seed)
        payload["certificate"] = cert.to_json()
    status = "ok" if res.verdict == "yes" else res.verdict
    return CommandResult(status, payload, list(res.reasons))


def cmd_build(args) -> CommandResult:
    spec = _spec_from_args(args)
    params, cert = space_from_spec(spec, seed=args.seed)
    check = verify_certificate(params, cert)
    payload = {"spec": cert.spec.to_json() if cert.spec else spec.to_json(), "params": params.to_json(), "certificate": cert.to_json(), "verification": check.to_json()}
    if check.ok:
        payload["gamma"] = gamma_generators(cert).to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(CommandResult("ok", payload).document("build"), sort_keys=True, indent=2) + "\n")
        log.info("certificate written to %s", args.out)
    return CommandResult("ok" if check.ok else "no", payload, check.reasons)


def cmd_verify(args) -> CommandResult:
    obj = _load(args.cert)
    cert_obj = obj.get("certificate", obj) if isinstance(obj, dict) else obj
    try:
        cert = QuotientCertificate.from_json(cert_obj)
    except (KeyError, TypeError, ValueError) as exc:
        return CommandResult("no", {"ok": False, "reasons": [f"malformed certificate: {exc!r}"]}, [f"malformed certificate: {exc!r}"])
    params = CWParams.from_json(_load(args.params)) if args.params else cert.params
    check = verify_certificate(params, cert)
    return CommandResult("ok" if check.ok else "no", check.to_json(), check.reasons)


def cmd_admissible(args) -> CommandResult:
    k = _ints(args.k)
    if not k:
        raise UsageError("--k is required")
    decide = decide_C_admissible if args.complex else decide_R_admissible
    verdict = decide(k, seed=args.seed)
    status = {"yes": "ok"}.get(verdict.status, verdict.status)
    return CommandResult(status, verdict.to_json(), [verdict.obstruction] if verdict.obstruction else [])


def cmd_special(args) -> CommandResult:
    P = SpecialConstellation.parse(args.constellation)
    if args.bind:
        P = P.bind(_bindings(args.bind))
    k = _ints(args.k) if args.k is not None else (0,) * P.d
    verdict = is_P_admissible(P, k, seed=args.seed)
    payload = {
        "constellation": P.to_json(),
        "d": P.d,
        "mu": [str(m) for m in P.mu],
        "rho": [str(r) for r in P.rho],
        "minimal": is_minimal(P),
        "verdict": verdict.to_json(),
    }
    status = {"yes": "ok"}.get(verdict.status, verdict.status)
    return CommandResult(status, payload, [verdict.obstruction] if verdict.obstruction else [])


def cmd_pell(args) -> CommandResult:
    return CommandResult("ok", pell_fundamental_unit(args.d).to_json())


def cmd_salem(args) -> CommandResult:
    if args.poly:
        f = IntPolynomial.parse(args.poly)
        info = salem_structure(f)
        ok = is_salem(f)
        return CommandResult("ok" if ok else "no", {"f": f.to_json(), "is_salem": ok, "structure": info})
    if args.degree == 4:
        cands = salem4_enumerate(args.bound)
        return CommandResult("ok", {"degree": 4, "bound": args.bound, "count": len(cands), "candidates": [c.to_json() for c in cands]})
    if args.degree == 6:
        f = f6_example()
        return CommandResult("ok", {"degree": 6, "example": f.to_json(), "is_salem": is_salem(f), "structure": salem_structure(f)})
    raise UsageError("--degree must be 4 or 6 (or pass --poly)")


def cmd_compose(args) -> CommandResult:
    a = _load(args.a)
    b = _load(args.b)
    s = compose(SpaceSpec.from_json(a.get("spec", a)), SpaceSpec.from_json(b.get("spec", b)))
    return CommandResult("ok", {"spec": s.to_json()})


def cmd_flags(args) -> CommandResult:
    spec = _spec_from_args(args)
    return CommandResult("ok", flags(spec, seed=args.seed).to_json())


def cmd_report(args) -> CommandResult:
    if getattr(args, "spec", None) or getattr(args, "poly", None):
        text = report(_spec_from_args(args), seed=args.seed)
    elif getattr(args, "params", None) or args.lam or args.mu:
        text = report(_params_from_args(args), seed=args.seed)
    else:
        raise UsageError("report needs --spec/--poly or --params/--lambda/--mu")
    return CommandResult("ok", {"markdown": text})


# ------------------------------------------------------------------ parser


def _spec_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="JSON file with a space specification {f, P, k, bindings}")
    p.add_argument("--poly", help='polynomial, e.g. "x^2-3x+1" or "1,-3,1" (lowest degree first)')
    p.add_argument("--constellation", help='special constellation, e.g. "I|I|I" or "II:τ,τ"')
    p.add_argument("--k", help="integer vector k, comma separated")
    p.add_argument("--bind", action="append", metavar="NAME=VALUE", help="numeric value for a symbol (repeatable)")


def _param_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", help="JSON file with {lambda, mu}")
    p.add_argument("--type", choices=["real", "imaginary", "mixed"])
    p.add_argument("--lambda", dest="lam", help="comma separated lambda values")
    p.add_argument("--mu", help="comma separated mu values")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cwquot", description="Compact quotients of Cahen-Wallach spaces")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for generic-omega sampling")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("classify", help="decide existence of compact quotients for (lambda, mu)")
    _param_options(p)
    p.add_argument("--bound", type=int, default=20, help="coefficient bound for the polynomial search")
    p.add_argument("--certify", action="store_true", help="attach a quotient certificate for yes verdicts")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", help="construct a quotient certificate from (f, P, k)")
    _spec_options(p)
    p.add_argument("--out", help="also write the result document to this file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="re-check a quotient certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--params", help="check against these parameters instead of the stored ones")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("admissible", help="R- or C-admissibility of an integer vector")
    p.add_argument("--k", required=True)
    p.add_argument("--complex", action="store_true")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("special", help="data and P-admissibility of a special constellation")
    p.add_argument("--constellation", required=True)
    p.add_argument("--k")
    p.add_argument("--bind", action="append", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("pell", help="fundamental unit of Q(sqrt d)")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("salem", help="Salem polynomials")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--poly")
    p.set_defaults(func=cmd_salem)

    p = sub.add_parser("compose", help="compose two space specifications")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("flags", help="transvection, solvmanifold and group-manifold flags")
    _spec_options(p)
    p.set_defaults(func=cmd_flags)

    p = sub.add_parser("report", help="markdown report for a spec or a parameter vector")
    _spec_options(p)
    _param_options(p)
    p.add_argument("--json", action="store_true", help="wrap the markdown in the JSON envelope")
    p.set_defaults(func=cmd_report)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[str, CommandResult]:
    """Parse argv and execute; usage problems raise SystemExit(64)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.error("a command is required")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except CWQError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        result = CommandResult("error", {"error": type(exc).__name__, "message": str(exc)}, [str(exc)])
    except ValueError as exc:
        log.error("invalid input: %s", exc)
        result = CommandResult("error", {"error": "ValueError", "message": str(exc)}, [str(exc)])
    for line in result.log:
        log.info(line)
    if args.command == "report" and not args.json and result.status == "ok":
        return result.payload["markdown"], result
    return json.dumps(result.document(args.command), sort_keys=True, indent=2, ensure_ascii=False), result


def main(argv: Sequence[str] | None = None) -> int:
    text, result = run(argv)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
