"""``repdimlab`` command line."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import experiments as ex
from .derived import ComplexError
from .homalg import PdValue, TruncationError
from .linalg import FieldSpec
from .quiver import PresentationError, QuiverAlgebra
from .reps import RepError
from .serialize import dumps
from .splitting import InconclusiveError
from .verify import verify_file

EXIT_OK, EXIT_ASSERT, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 2, 3, 4


def _seed_default() -> int:
    env = os.environ.get("REPDIMLAB_SEED")
    if env is None:
        return ex.DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise ex.InputError(f"REPDIMLAB_SEED must be an integer, got {env!r}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("algebra", nargs="?", help="algebra JSON file (otherwise built from --family/--n)")
    common.add_argument("--n", type=int)
    common.add_argument("--family", default="beilinson", choices=ex.FAMILIES)
    common.add_argument("--field", default=None, help="q or fp:<prime> (default fp:1000003)")
    common.add_argument("--cutoff", type=int, default=ex.DEFAULT_CUTOFF)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--samples", type=int, default=ex.RANDOM_SAMPLES)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "tsv"), default="json")

    p = argparse.ArgumentParser(prog="repdimlab", description="Experiments on quiver algebras and their generators.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="write the canonical algebra file")
    sub.add_parser("gldim", parents=[common], help="projective dimensions of simples and gl.dim")
    sub.add_parser("auslander", parents=[common], help="gl.dim of End of the sum of radical quotients")
    probe = sub.add_parser("probe", parents=[common], help="gl.dim End(M) over a battery of generators")
    probe.add_argument("--battery", choices=("basic", "random"), default="basic")
    probe.add_argument("--jobs", type=int, default=1)
    sub.add_parser("homcheck", parents=[common], help="dim Hom(I_v, P_w) table")
    level = sub.add_parser("level", parents=[common], help="level certificates for a module")
    level.add_argument("--module", required=True, help="simple:v, proj:v, inj:v or a module file")
    level.add_argument("--degree", type=int, default=None, help="ghost degree (default --n)")
    ver = sub.add_parser("verify", help="re-check a certificate file independently")
    ver.add_argument("certificate")
    return p


def _setup(args) -> tuple[QuiverAlgebra, ex.ExperimentConfig, FieldSpec]:
    field = FieldSpec.parse(args.field) if args.field else None
    seed = args.seed if args.seed is not None else _seed_default()
    if args.algebra:
        pres = ex.load_presentation(args.algebra, field)
        family, n = None, args.n
    else:
        if args.n is None:
            raise ex.InputError("give an algebra file or --n")
        pres = ex.build_presentation(args.family, args.n, field or FieldSpec.prime())
        family, n = args.family, args.n
    if args.cutoff < 1:
        raise ex.InputError("--cutoff must be positive")
    F = pres.field
    field_text = "q" if F.is_rational else f"fp:{F.characteristic}"
    cfg = ex.ExperimentConfig(family, n, field_text, args.cutoff, seed,
                              getattr(args, "battery", "basic"), args.samples, args.algebra)
    return QuiverAlgebra(pres), cfg, F


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _tsv(columns: list[str], rows: list[list]) -> str:
    lines = ["\t".join(columns)] + ["\t".join(str(c) for c in r) for r in rows]
    return "\n".join(lines) + "\n"


def _lower_bound(cfg: ex.ExperimentConfig) -> int | None:
    return cfg.n if cfg.family == "beilinson" else None


def cmd_build(args) -> int:
    alg, cfg, F = _setup(args)
    _emit(alg.pres.dumps(), args.out)
    return EXIT_OK


def cmd_gldim(args) -> int:
    alg, cfg, F = _setup(args)
    rep = ex.report_header("gldim", cfg, F)
    rep.update(ex.gldim_report(alg, cfg.cutoff))
    status = EXIT_OK
    if cfg.family == "beilinson":
        rep["expected"] = cfg.n
        rep["pass"] = rep["gldim_value"] == PdValue.exact(cfg.n).to_json()
        status = EXIT_OK if rep["pass"] else EXIT_ASSERT
    if args.format == "tsv":
        rows = [[v, p] for v, p in enumerate(rep["simple_pds"])] + [["gldim", rep["gldim"]]]
        _emit(_tsv(["vertex", "pd"], rows), args.out)
    else:
        _emit(dumps(rep), args.out)
    return status


def _row_columns():
    return ["generator", "dim_end", "gldim", "status", "pass"]


def cmd_auslander(args) -> int:
    alg, cfg, F = _setup(args)
    rep = ex.report_header("auslander", cfg, F)
    row = ex.auslander_report(alg, cfg, _lower_bound(cfg))
    rep["row"] = row
    if args.format == "tsv":
        _emit(_tsv(_row_columns(), [[row.get(c, "") for c in _row_columns()]]), args.out)
    else:
        _emit(dumps(rep), args.out)
    if row["status"] != "ok":
        return EXIT_INCONCLUSIVE
    return EXIT_OK if row["pass"] else EXIT_ASSERT


def cmd_probe(args) -> int:
    alg, cfg, F = _setup(args)
    if cfg.family != "beilinson" and cfg.source is None:
        raise ex.InputError("probe runs on the beilinson family")
    rep = ex.report_header("probe", cfg, F)
    rows = ex.probe_rows(alg, _lower_bound(cfg), cfg, jobs=max(1, args.jobs))
    rep["rows"] = rows
    failures = [r for r in rows if r.get("pass") is False]
    if failures:
        rep["counterexamples"] = failures
    if args.format == "tsv":
        _emit(_tsv(_row_columns(), [[r.get(c, "") for c in _row_columns()] for r in rows]), args.out)
    else:
        _emit(dumps(rep), args.out)
    if failures:
        return EXIT_ASSERT
    if any(r["status"] != "ok" for r in rows):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_homcheck(args) -> int:
    alg, cfg, F = _setup(args)
    rep = ex.report_header("homcheck", cfg, F)
    table = ex.homcheck_table(alg)
    rep["table"] = table
    status = EXIT_OK
    if cfg.family == "beilinson":
        rep["pass"] = all(v == 0 for row in table for v in row)
        status = EXIT_OK if rep["pass"] else EXIT_ASSERT
    if args.format == "tsv":
        cols = ["I\\P"] + [str(w) for w in range(alg.n_vertices)]
        _emit(_tsv(cols, [[v] + row for v, row in enumerate(table)]), args.out)
    else:
        _emit(dumps(rep), args.out)
    return status


def cmd_level(args) -> int:
    alg, cfg, F = _setup(args)
    degree = args.degree if args.degree is not None else cfg.n
    if degree is None or degree < 1:
        raise ex.InputError("give a ghost degree via --degree or --n")
    x = ex.resolve_module(alg, args.module)
    outcome = ex.level_run(alg, x, degree, cfg.cutoff)
    rep = ex.report_header("level", cfg, F)
    rep["module"] = args.module
    rep.update(outcome.report)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, data in outcome.certificates.items():
            (out / f"{name}.json").write_text(dumps(data))
        (out / "report.json").write_text(dumps(rep))
    if args.format == "tsv":
        g = rep["ghost"]
        rows = [["level_upper", rep["level_upper"]["level"], rep["level_upper"]["valid"]],
                ["ghost", g["status"], g.get("valid", "")]]
        sys.stdout.write(_tsv(["certificate", "value", "valid"], rows))
    elif not args.out:
        rep["certificates"] = outcome.certificates
        sys.stdout.write(dumps(rep))
    ok = all(not t["failures"] for t in rep["transcript"])
    return EXIT_OK if ok else EXIT_ASSERT


def cmd_verify(args) -> int:
    try:
        errs = verify_file(args.certificate)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise ex.InputError(f"cannot read certificate {args.certificate}: {exc}") from exc
    sys.stdout.write(dumps({"certificate": args.certificate, "failures": errs, "valid": not errs}))
    return EXIT_OK if not errs else EXIT_ASSERT


COMMANDS = {
    "build": cmd_build, "gldim": cmd_gldim, "auslander": cmd_auslander, "probe": cmd_probe,
    "homcheck": cmd_homcheck, "level": cmd_level, "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InconclusiveError, TruncationError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ex.InputError, PresentationError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RepError, ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
