"""Serialization of results: rationals as "p/q" strings, JSON, CSV, text.

Floats never appear in any output format; a fraction renders as "3/2" or
"2" and parses back exactly, so records round-trip.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Sequence

from .catalog import parse_target
from .detect import ClosureCertificate, ComponentWitness, DetectionReport, TypeLabel
from .linalg import Vector
from .projection import ProjectionResult

SCHEMA = "rootproj/1"

CSV_COLUMNS = ["sigma", "theta", "d", "target", "restricted", "found",
               "basis_from_delta_theta", "closure_size", "basis"]


def frac_str(q: Fraction) -> str:
    return str(q)


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def vec_strs(v: Vector) -> List[str]:
    return [str(x) for x in v]


def parse_vec(items: Sequence[str]) -> Vector:
    return tuple(Fraction(x) for x in items)


def census_dict(census: Dict[Fraction, int]) -> Dict[str, int]:
    return {str(norm): census[norm] for norm in sorted(census)}


def report_dict(rep: DetectionReport) -> dict:
    out = {
        "target": str(rep.target),
        "found": rep.found,
        "restricted": rep.restricted,
        "basis_from_delta_theta": rep.basis_from_delta_theta,
        "basis": [vec_strs(v) for v in rep.certificate.basis]
        if rep.certificate else None,
        "closure_size": rep.certificate.size if rep.certificate else 0,
    }
    if rep.certificate:
        out["components"] = [
            {"label": str(w.label),
             "basis": [vec_strs(v) for v in w.basis],
             "roots": sorted(vec_strs(v) for v in w.roots)}
            for w in rep.certificate.components
        ]
    return out


def parse_report(data: dict) -> DetectionReport:
    cert = None
    if data.get("components") is not None:
        target = parse_target(data["target"])
        witnesses = tuple(
            ComponentWitness(
                label=_parse_label(w["label"]),
                basis=tuple(parse_vec(v) for v in w["basis"]),
                roots=frozenset(parse_vec(v) for v in w["roots"]),
            )
            for w in data["components"]
        )
        cert = ClosureCertificate(target=target, components=witnesses)
    return DetectionReport(
        target=parse_target(data["target"]),
        found=data["found"],
        restricted=data["restricted"],
        basis_from_delta_theta=data["basis_from_delta_theta"],
        certificate=cert,
    )


def _parse_label(text: str) -> TypeLabel:
    from .catalog import parse_label
    return parse_label(text)


def detection_doc(sigma: TypeLabel, theta: Sequence[int], d: int,
                  reports: Sequence[DetectionReport]) -> dict:
    return {
        "schema": SCHEMA,
        "sigma": str(sigma),
        "theta": list(theta),
        "d": d,
        "reports": [report_dict(r) for r in reports],
    }


def parse_detection_doc(text: str):
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unknown schema {data.get('schema')!r}")
    reports = tuple(parse_report(r) for r in data["reports"])
    return data["sigma"], tuple(data["theta"]), data["d"], reports


def projection_doc(pr: ProjectionResult) -> dict:
    return {
        "schema": SCHEMA,
        "sigma": str(pr.system.label),
        "theta": list(pr.theta),
        "d": pr.d,
        "sigma_theta": [vec_strs(v) for v in pr.sigma_theta],
        "delta_theta": [vec_strs(v) for v in pr.delta_theta],
        "census": census_dict(pr.census),
    }


def csv_rows(sigma: TypeLabel, theta: Sequence[int], d: int,
             reports: Sequence[DetectionReport]) -> List[List[str]]:
    rows = []
    theta_s = ",".join(str(i) for i in theta)
    for rep in reports:
        basis = ""
        if rep.certificate:
            basis = " ".join("(" + ",".join(vec_strs(v)) + ")"
                             for v in rep.certificate.basis)
        rows.append([
            str(sigma), theta_s, str(d), str(rep.target),
            str(rep.restricted).lower(), str(rep.found).lower(),
            str(rep.basis_from_delta_theta).lower(),
            str(rep.certificate.size if rep.certificate else 0),
            basis,
        ])
    return rows


def projection_text(pr: ProjectionResult) -> List[str]:
    lines = [
        f"sigma={pr.system.label} theta={','.join(map(str, pr.theta))} d={pr.d}",
        f"sigma_theta: {len(pr.sigma_theta)} vectors",
    ]
    for v in pr.sigma_theta:
        lines.append("  (" + ", ".join(vec_strs(v)) + ")")
    lines.append(f"delta_theta: {len(pr.delta_theta)} vectors")
    for v in pr.delta_theta:
        lines.append("  (" + ", ".join(vec_strs(v)) + ")")
    lines.append("census:")
    for norm in sorted(pr.census):
        lines.append(f"  norm-class {norm} count {pr.census[norm]}")
    return lines


def detection_text(sigma: TypeLabel, theta: Sequence[int], d: int,
                   reports: Sequence[DetectionReport]) -> List[str]:
    lines = [f"sigma={sigma} theta={','.join(map(str, theta))} d={d}"]
    for rep in reports:
        status = "found" if rep.found else "not-found"
        mode = "restricted" if rep.restricted else "unrestricted"
        extra = ""
        if rep.found and rep.certificate:
            extra = (f" closure_size={rep.certificate.size}"
                     f" basis_from_delta_theta={str(rep.basis_from_delta_theta).lower()}")
        lines.append(f"  target {rep.target}: {status} ({mode}){extra}")
        if rep.found and rep.certificate:
            for v in rep.certificate.basis:
                lines.append("    basis (" + ", ".join(vec_strs(v)) + ")")
    return lines
