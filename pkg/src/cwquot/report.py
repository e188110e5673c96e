"""Markdown reports for a space specification or a parameter vector."""

from __future__ import annotations

from typing import Any

import mpmath

from .classify import (
    ClassifyResult,
    SpaceSpec,
    bind_spec,
    classify,
    flags,
    gamma_generators,
    space_from_spec,
    split_roots,
    validate_spec,
    verify_certificate,
)
from .cwgeom import CWParams, normalize, scalar_str
from .errors import CWQError
from .goodness import DEFAULT_SEED
from .intpoly import circle_factor_data
from .numberfields import is_salem

DIGITS = 15


def _num(x: Any) -> str:
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(x, DIGITS)
    return scalar_str(x)


def _params_lines(params: CWParams) -> list[str]:
    norm = normalize(params)
    return [
        f"- type (p, q) = ({params.p}, {params.q}), {params.kind}",
        f"- lambda = ({', '.join(_num(x) for x in params.lam)})",
        f"- mu = ({', '.join(_num(x) for x in params.mu)})",
        f"- normalized: lambda = ({', '.join(_num(x) for x in norm.lam)}), mu = ({', '.join(_num(x) for x in norm.mu)})",
    ]


def _verdict_lines(res: ClassifyResult) -> list[str]:
    lines = [f"- verdict: **{res.verdict}**" + (" (heuristic)" if res.heuristic else "")]
    lines += [f"- {r}" for r in res.reasons]
    if res.witness is not None:
        lines.append(f"- witness (f, P, k) = {res.witness}")
    return lines


def _polynomial_lines(spec: SpaceSpec) -> list[str]:
    f = spec.f
    lines = [f"- f = {f} (coefficients {f.to_json()})"]
    for data in circle_factor_data(f):
        lines.append(
            f"- factor {data.factor} (multiplicity {data.multiplicity}): "
            f"{data.circle_roots} roots on the unit circle, {data.real_off_circle} real roots off it"
        )
    split = split_roots(f)
    lines.append(f"- roots on the unit circle: {len(split.circle)}")
    lines.append(f"- roots off the unit circle: {len(split.off0) + len(split.off1)}")
    if f.degree >= 4 and f.degree % 2 == 0:
        lines.append(f"- Salem polynomial: {is_salem(f)}")
    return lines


def report_spec(spec: SpaceSpec, seed: int = DEFAULT_SEED) -> str:
    out = [f"# Report for {spec}", "", "## Polynomial", ""]
    out += _polynomial_lines(spec)
    out += ["", "## Constellation", ""]
    out.append(f"- P = {spec.P}, d(P) = {spec.q}, k = {list(spec.k)}")
    try:
        spec = bind_spec(spec)
    except CWQError as exc:
        out.append(f"- symbol binding failed: {exc}")
        return "\n".join(out) + "\n"
    for name, value in sorted(spec.bindings.items()):
        out.append(f"- {name} = {value[:DIGITS + 2]}")
    problems = validate_spec(spec)
    out += [f"- invalid: {p}" for p in problems] or ["- nu(P) = nu_c(f): yes"]
    if problems:
        return "\n".join(out) + "\n"
    try:
        params, cert = space_from_spec(spec, seed=seed)
    except CWQError as exc:
        out += ["", "## Certificate", "", f"- construction failed: {type(exc).__name__}: {exc}"]
        return "\n".join(out) + "\n"
    out += ["", "## Parameters", ""] + _params_lines(params)
    check = verify_certificate(params, cert)
    out += ["", "## Certificate", ""]
    dims = cert.notes.get("dims", {})
    out.append("- V splits as " + ", ".join(f"{k} = {v}" for k, v in dims.items()))
    out.append(f"- Lambda_0 rank {cert.lattice.rank}, central generator {cert.central}, t0 = {cert.t0}")
    out.append(f"- omega Gram on Lambda_0: {cert.lattice.gram}")
    out.append(f"- verification: {'passed' if check.ok else 'FAILED'}")
    out += [f"  - {r}" for r in check.reasons]
    cc = check.details.get("circle_certificate")
    if cc:
        w = cc.get("witness", {})
        evidence = ", ".join(f"{k} = {w[k]}" for k in sorted(w) if k in ("margin", "lower_bound", "grid_log2", "lipschitz_bound", "constant"))
        out.append(f"- goodness certificate: {cc['kind']} ({cc['mode']})" + (f"; {evidence}" if evidence else ""))
    fl = flags(spec, cert if check.ok else None, seed=seed)
    out += ["", "## Flags", ""]
    for key in ("transvection", "solvmanifold", "group_manifold", "straight_only"):
        out.append(f"- {key}: {getattr(fl, key)}")
    out.append(f"- fundamental rank r: {fl.fundamental_rank_r}")
    if check.ok:
        g = gamma_generators(cert)
        out += ["", "## Gamma", ""]
        out.append(f"- characteristic polynomial of conjugation by gamma0: {g.conjugation_charpoly}")
        out.append(f"- center meets Gamma nontrivially: {g.center_nontrivial}")
        out.append(f"- non-abelian: {g.non_abelian}")
        out.append(f"- commutator matrix (units of the central generator): {g.commutators}")
    return "\n".join(out) + "\n"


def report_params(params: CWParams, seed: int = DEFAULT_SEED) -> str:
    out = [f"# Report for type ({params.p}, {params.q})", "", "## Parameters", ""]
    out += _params_lines(params)
    res = classify(params.lam, params.mu, seed=seed)
    out += ["", "## Classification", ""] + _verdict_lines(res)
    text = "\n".join(out) + "\n"
    if res.witness is not None:
        text += "\n" + report_spec(res.witness, seed=seed).replace("# Report", "## Witness report", 1).replace("\n## ", "\n### ")
    return text


def report(obj: SpaceSpec | CWParams, seed: int = DEFAULT_SEED) -> str:
    """Markdown summary of a space specification or of a parameter vector."""
    if isinstance(obj, SpaceSpec):
        return report_spec(obj, seed=seed)
    if isinstance(obj, CWParams):
        return report_params(obj, seed=seed)
    raise TypeError("report expects a SpaceSpec or CWParams")


__all__ = ["report", "report_spec", "report_params"]
