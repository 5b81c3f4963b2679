"""Command-line surface.

Subcommands: project, detect, enumerate, verify-paper.  Exit codes are 0
on success or table match, 1 on verification mismatch, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv as csv_mod
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from . import output
from .catalog import (build, check_theta, parse_label, parse_target)
from .classify import (classify_theta, proper_subsets, verify_paper)
from .detect import find_subsystem
from .projection import project_all

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _parse_theta(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad theta {text!r}: expected comma-separated indices")


def _open_out(path: Optional[str]):
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def cmd_project(args) -> int:
    sys_ = build(parse_label(args.sigma))
    theta = _parse_theta(args.theta)
    try:
        check_theta(sys_, theta, allow_improper=args.allow_improper_theta)
    except ValueError as exc:
        raise UsageError(str(exc))
    pr = project_all(sys_, theta, allow_improper=args.allow_improper_theta)
    out = _open_out(args.out)
    try:
        if args.format == "json":
            json.dump(output.projection_doc(pr), out, sort_keys=True)
            out.write("\n")
        elif args.format == "csv":
            writer = csv_mod.writer(out)
            writer.writerow(["kind", "coords", "norm"])
            for v in pr.sigma_theta:
                writer.writerow(["sigma_theta", " ".join(output.vec_strs(v)),
                                 str(sum(x * x for x in v))])
            for v in pr.delta_theta:
                writer.writerow(["delta_theta", " ".join(output.vec_strs(v)),
                                 str(sum(x * x for x in v))])
            for norm in sorted(pr.census):
                writer.writerow(["census", str(norm), str(pr.census[norm])])
        else:
            out.write("\n".join(output.projection_text(pr)) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_detect(args) -> int:
    sys_ = build(parse_label(args.sigma))
    theta = _parse_theta(args.theta)
    try:
        check_theta(sys_, theta)
        target = parse_target(args.target)
    except ValueError as exc:
        raise UsageError(str(exc))
    pr = project_all(sys_, theta)
    if target.rank != pr.d:
        raise UsageError(
            f"target rank {target.rank} does not match d={pr.d}")
    report = find_subsystem(pr, target, restrict_to_delta_theta=args.restricted)
    out = _open_out(args.out)
    try:
        if args.format == "json":
            json.dump(output.detection_doc(sys_.label, pr.theta, pr.d, [report]),
                      out, sort_keys=True)
            out.write("\n")
        elif args.format == "csv":
            writer = csv_mod.writer(out)
            writer.writerow(output.CSV_COLUMNS)
            writer.writerows(output.csv_rows(sys_.label, pr.theta, pr.d, [report]))
        else:
            out.write("\n".join(
                output.detection_text(sys_.label, pr.theta, pr.d, [report])) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _one_record(task):
    sigma_name, theta = task
    sys_ = build(parse_label(sigma_name))
    record = classify_theta(sys_, theta)
    return output.detection_doc(record.sigma, record.theta, record.d,
                                record.reports)


def cmd_enumerate(args) -> int:
    label = parse_label(args.sigma)
    thetas = list(proper_subsets(label.rank))
    tasks = [(args.sigma, t) for t in thetas]
    out = _open_out(args.out)
    try:
        if args.format == "csv":
            writer = csv_mod.writer(out)
            writer.writerow(output.CSV_COLUMNS)
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                docs = pool.map(_one_record, tasks, chunksize=4)
                for doc in docs:
                    _write_record(out, doc, args.format)
        else:
            for task in tasks:
                _write_record(out, _one_record(task), args.format)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _write_record(out, doc: dict, fmt: str) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif fmt == "csv":
        writer = csv_mod.writer(out)
        reports = [output.parse_report(r) for r in doc["reports"]]
        writer.writerows(output.csv_rows(
            parse_label(doc["sigma"]), doc["theta"], doc["d"], reports))
    else:
        reports = [output.parse_report(r) for r in doc["reports"]]
        out.write("\n".join(output.detection_text(
            parse_label(doc["sigma"]), doc["theta"], doc["d"], reports)) + "\n")
    out.flush()


def cmd_verify_paper(args) -> int:
    label = parse_label(args.sigma)
    if not (label.is_exceptional and label.family != "G"):
        raise UsageError("verify-paper runs on E6, E7, E8 or F4")
    report = verify_paper(label)
    out = _open_out(args.out)
    try:
        if args.format == "json":
            doc = {
                "schema": output.SCHEMA,
                "sigma": str(label),
                "ok": report.ok,
                "records_checked": report.records_checked,
                "missing": {t: [[list(theta), target] for theta, target in rows]
                            for t, rows in report.missing.items()},
                "unexpected": {t: [[list(theta), target] for theta, target in rows]
                               for t, rows in report.unexpected.items()},
            }
            json.dump(doc, out, sort_keys=True)
            out.write("\n")
        else:
            out.write("\n".join(report.summary_lines()) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if report.ok else EXIT_MISMATCH


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootproj",
        description="Exact projections of root systems orthogonal to subsets "
                    "of simple roots, with subsystem detection.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, theta=True, target=False):
        p.add_argument("--sigma", required=True, help="system label, e.g. E8 or A5")
        if theta:
            p.add_argument("--theta", required=True,
                           help="comma-separated simple-root indices, e.g. 2,3,4,5")
        if target:
            p.add_argument("--target", required=True,
                           help="target label, e.g. F4 or G2xA1")
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")
        p.add_argument("--out", default=None, help="write output to this file")

    p = sub.add_parser("project", help="project all roots orthogonally to theta")
    common(p)
    p.add_argument("--allow-improper-theta", action="store_true",
                   help="accept empty or full theta (testing only)")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("detect", help="search for one target system in the projection")
    common(p, target=True)
    p.add_argument("--restricted", action="store_true",
                   help="basis must consist of projections of simple roots")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("enumerate", help="classify every proper theta, one record per line")
    common(p, theta=False)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-paper",
                       help="compare findings against the bundled reference tables")
    common(p, theta=False)
    p.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
