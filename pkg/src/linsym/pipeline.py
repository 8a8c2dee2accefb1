"""homogenize -> canonicalize -> classify -> verify, and report rendering."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import numpy as np

from .canonical import canonical_system, canonicalize
from .classify import ClassificationReport, Label, classify_canonical
from .errors import ConflictingDiscriminant, MalformedInput
from .linalg import Mat2, Vec2, commutator
from .reduction import SystemSpec, homogenize
from .scalar import Scalar
from .verify import DEFAULT_EPSILONS, rk4_solve, verify_generator

log = logging.getLogger(__name__)

SCHEMA = 1


@dataclass(frozen=True)
class RunConfig:
    input: Path | None = None
    output: Path | None = None
    format: str = "json"
    verify: bool = False
    normalize_lambda: bool = False
    tol: float = 1e-6
    seed: int = 0
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    h: float = 1e-3
    x_range: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise MalformedInput("tol must be positive")
        if self.format not in ("json", "text"):
            raise MalformedInput(f"unknown format {self.format!r}")


def parse_input(document: Any) -> SystemSpec:
    """Build a SystemSpec from a decoded JSON object."""
    if not isinstance(document, dict):
        raise MalformedInput("each system must be a JSON object")
    if "A" not in document or "B" not in document:
        raise MalformedInput("system needs both 'A' and 'B'")
    A = Mat2.parse(document["A"])
    B = Mat2.parse(document["B"])
    f = Vec2.parse(document["f"]) if document.get("f") is not None else Vec2.zero()
    entries = [*A, *B, *f]
    ds = {v.d for v in entries if v.d is not None}
    declared = document.get("d")
    if declared is not None:
        if isinstance(declared, bool) or not isinstance(declared, int) or declared < 2:
            raise MalformedInput(f"'d' must be an integer > 1, got {declared!r}")
        ds.add(Scalar(0, 1, declared).d)
    if len(ds) > 1:
        raise ConflictingDiscriminant(f"inputs use more than one square root: {sorted(ds)}")
    return SystemSpec(A, B, f, ds.pop() if ds else None)


def classify_system(spec: SystemSpec, normalize_lambda: bool = False) -> ClassificationReport:
    A, B, chain = homogenize(spec)
    cf, cchain = canonicalize(A, B, normalize_lambda=normalize_lambda, d=spec.d)
    return classify_canonical(cf, chain.then(*cchain.steps), normalize_lambda=normalize_lambda)


def verify_report(spec: SystemSpec, report: ClassificationReport, cfg: RunConfig) -> dict[str, Any]:
    """Symbolic checks always; numeric flow checks when ``cfg.verify``."""
    Ac, Bc = canonical_system(report.canonical)
    rng = np.random.default_rng(cfg.seed)
    init = rng.uniform(-1.0, 1.0, size=4)
    x0, x1 = cfg.x_range
    trajs = None
    if cfg.verify:
        trajs = (rk4_solve(Ac, Bc, init, x0, x1, cfg.h),
                 rk4_solve(spec.A, spec.B, init, x0, x1, cfg.h, spec.f))
    per_gen = []
    ok = True
    worst = 0.0
    for gc, go in zip(report.generators, report.generators_original):
        rec_c = verify_generator(Ac, Bc, gc, trajs[0] if trajs else None, None, cfg.epsilons, cfg.verify)
        rec_o = verify_generator(spec.A, spec.B, go, trajs[1] if trajs else None, spec.f, cfg.epsilons,
                                 cfg.verify)
        for rec in (rec_c, rec_o):
            ok &= rec["symbolic"] == "zero"
            if cfg.verify:
                worst = max(worst, rec["numeric_residual"])
                ok &= rec["numeric_residual"] < cfg.tol
        per_gen.append({"name": gc.name, "canonical": rec_c, "original": rec_o})
    summary: dict[str, Any] = {"passed": bool(ok), "generators": per_gen,
                               "numeric": cfg.verify}
    if cfg.verify:
        summary.update({"tol": cfg.tol, "max_numeric_residual": worst, "seed": cfg.seed,
                        "h": cfg.h, "x_range": list(cfg.x_range)})
    return summary


def run_report(spec: SystemSpec, cfg: RunConfig) -> tuple[dict[str, Any], bool]:
    """Classify and verify one system; returns (document, passed)."""
    report = classify_system(spec, cfg.normalize_lambda)
    verification = verify_report(spec, report, cfg)
    report = replace(report, verification=verification)
    return report_document(spec, report), verification["passed"]


def report_document(spec: SystemSpec, report: ClassificationReport) -> dict[str, Any]:
    comm = commutator(spec.A, spec.B)
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "input": spec.to_json(),
        "verdict": "commuting" if comm.is_zero() else "non-commuting",
        "commutator": comm.to_json(),
        "chain": report.chain.to_json(),
        "inverse_chain": report.chain.inverse().to_json(),
        "canonical": report.canonical.to_json(),
        "label": report.label.value,
        "generator_count": len(report.generators),
        "generators": [
            {"name": gc.name, "canonical": gc.to_json(), "canonical_text": str(gc),
             "original": go.to_json(), "original_text": str(go)}
            for gc, go in zip(report.generators, report.generators_original)
        ],
    }
    if report.h is not None:
        doc["h"] = report.h.to_json()
    if report.coeff_space is not None:
        cs = report.coeff_space
        doc["coeff_space"] = {"dim": cs.dim, "c1_free": cs.c1_free, "c2_free": cs.c2_free}
    if report.label is Label.COMMUTING_REDUCIBLE:
        doc["M"] = report.canonical.M.to_json()
        doc["jordan_M"] = report.jordan_M.to_json() if report.jordan_M else None
    if report.notes:
        doc["notes"] = list(report.notes)
    if report.verification is not None:
        doc["verification"] = report.verification
    return doc


# ---------------------------------------------------------------------------
# Text rendering


def _fmt(v: Any) -> str:
    return str(Scalar.parse(v)) if isinstance(v, dict) else str(v)


def _mat(m: list) -> str:
    return "[[" + "], [".join(", ".join(_fmt(v) for v in row) for row in m) + "]]"


def render_text(doc: dict[str, Any]) -> str:
    lines = [f"system   : y'' = A y' + B y + f,  A = {_mat(doc['input']['A'])}, "
             f"B = {_mat(doc['input']['B'])}, f = [{', '.join(_fmt(v) for v in doc['input']['f'])}]",
             f"AB - BA  : {_mat(doc['commutator'])}  ({doc['verdict']})"]
    lines.append("chain    : " + (" -> ".join(_step_text(s) for s in doc["chain"]) or "(identity)"))
    lines.append("inverse  : " + (" -> ".join(_step_text(s) for s in doc["inverse_chain"]) or "(identity)"))
    cf = doc["canonical"]
    if cf["case"] == "commuting":
        lines.append(f"reduced  : y'' = M y,  M = B + A^2/4 = {_mat(cf['M'])}")
    else:
        lines.append(f"canonical: A = {_mat(cf['A'])}, B = {_mat(cf['B'])}"
                     + (f", lambda = {_fmt(cf['lambda'])}" if "lambda" in cf else ""))
    if "h" in doc:
        h = doc["h"]
        lines.append(f"h1 = b11 + b22 + 2 lambda^2 = {_fmt(h['h1'])};  "
                     f"h2 = b22 - b11 + 4 lambda^2 = {_fmt(h['h2'])}")
        lines.append("extension requires B = [[b22 + 4 lambda^2, b12], [0, b22]]; "
                     "a second one needs b22 = -15 lambda^2/4")
    lines.append(f"label    : {doc['label']}  ({doc['generator_count']} generators)")
    for g in doc["generators"]:
        lines.append(f"  {g['name']:<14} {g['canonical_text']}")
        if g["original_text"] != g["canonical_text"]:
            lines.append(f"  {'(original)':<14} {g['original_text']}")
    for note in doc.get("notes", []):
        lines.append(f"note     : {note}")
    ver = doc.get("verification")
    if ver:
        status = "PASS" if ver["passed"] else "FAIL"
        extra = f", max numeric residual {ver['max_numeric_residual']:.3e}" if ver["numeric"] else ""
        lines.append(f"verify   : {status}{extra}")
    return "\n".join(lines) + "\n"


def _step_text(step: dict[str, Any]) -> str:
    kind = step["step"]
    if kind == "linear_change":
        return f"U = P u, P = {_mat(step['P'])}"
    if kind == "exp_shift":
        return f"U = e^(tau x) u, tau = {_fmt(step['tau'])}"
    if kind == "scale_x":
        return f"X = sigma x, sigma = {_fmt(step['sigma'])}"
    if kind == "shift_x":
        return f"X = x + x0, x0 = {_fmt(step['x0'])}"
    return "U = u - y_p(x), y_p coeffs " + str([[_fmt(v) for v in c] for c in step["y_p"]])
