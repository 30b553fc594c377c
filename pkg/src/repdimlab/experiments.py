"""Experiment drivers behind the command line: batteries of generators and report assembly."""
from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import metadata

import numpy as np

from .decompose import decompose
from .derived import (NoObstruction, RepComplex, ghost_certificate, level_upper_certificate)
from .endo import end_data, fd_global_dimension
from .homalg import DEFAULT_CUTOFF, PdValue, max_pd, projective_dimension, simple_pds
from .linalg import FieldSpec
from .quiver import AlgebraPresentation, QuiverAlgebra, build_beilinson, build_exterior
from .reps import (Rep, direct_sum, dual_regular_module, generated_submodule, hom_dim, injective,
                   is_generator, projective, projective_sum, quotient, radical_and_top, radical_bases,
                   radical_power_quotient, regular_module, simple)
from .serialize import algebra_hash, rep_from_json
from .splitting import InconclusiveError
from .verify import verify_certificate

FAMILIES = ("beilinson", "exterior")
DEFAULT_SEED = 20240601
RANDOM_SAMPLES = 25


class InputError(ValueError):
    pass


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        from . import __version__
        return __version__


@dataclass
class ExperimentConfig:
    family: str | None
    n: int | None
    field: str
    cutoff: int = DEFAULT_CUTOFF
    seed: int = DEFAULT_SEED
    battery: str = "basic"
    samples: int = RANDOM_SAMPLES
    source: str | None = None  # algebra file, when not built from a family

    def to_json(self) -> dict:
        return asdict(self)

    def digest(self) -> str:
        text = json.dumps(self.to_json(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def build_presentation(family: str, n: int, F: FieldSpec) -> AlgebraPresentation:
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if n is None or n < 1:
        raise InputError("--n must be a positive integer")
    return build_beilinson(n, F) if family == "beilinson" else build_exterior(n, F)


def load_presentation(path: str, F: FieldSpec | None = None) -> AlgebraPresentation:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if F is not None:
        data = dict(data, field=F.to_json())
    try:
        return AlgebraPresentation.from_json(data)
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"{path}: malformed algebra file ({exc!r})") from exc


def report_header(command: str, cfg: ExperimentConfig, F: FieldSpec) -> dict:
    return {
        "tool": "repdimlab",
        "version": tool_version(),
        "command": command,
        "config": cfg.to_json(),
        "config_hash": cfg.digest(),
        "seed": cfg.seed,
        "prime": None if F.is_rational else F.characteristic,
    }


# ---------------------------------------------------------------------------
# global dimension and the Hom(I, P) table


def gldim_report(alg: QuiverAlgebra, cutoff: int) -> dict:
    pds = simple_pds(alg, cutoff)
    gl = max_pd(pds)
    return {"simple_pds": [str(p) for p in pds], "gldim": str(gl), "gldim_value": gl.to_json()}


def homcheck_table(alg: QuiverAlgebra) -> list[list[int]]:
    n = alg.n_vertices
    inj = [injective(alg, v) for v in range(n)]
    proj = [projective(alg, w) for w in range(n)]
    return [[hom_dim(inj[v], proj[w]) for w in range(n)] for v in range(n)]


# ---------------------------------------------------------------------------
# generators


def auslander_generator(alg: QuiverAlgebra) -> Rep:
    """Direct sum of the quotients by all radical powers up to the Loewy length."""
    L = alg.loewy_length()
    return direct_sum([radical_power_quotient(alg, i) for i in range(1, L + 1)], alg,
                      name="Auslander")


def basic_battery(alg: QuiverAlgebra) -> list[tuple[str, Rep]]:
    lam = regular_module(alg)
    L = alg.loewy_length()
    nv = alg.n_vertices
    rads = [radical_and_top(projective(alg, v)).radical for v in range(nv)]
    rads = [r for r in rads if r.dim]
    rows = [
        ("Lambda", lam),
        ("Lambda+DLambda", direct_sum([lam, dual_regular_module(alg)], alg)),
        ("Lambda+quotients", direct_sum([lam] + [radical_power_quotient(alg, i) for i in range(1, L)], alg)),
        ("Lambda+simples", direct_sum([lam] + [simple(alg, v) for v in range(nv)], alg)),
    ]
    rows.append(("Lambda+radicals", direct_sum([lam] + rads, alg) if rads else lam))
    return rows


def random_quotient(alg: QuiverAlgebra, rng: np.random.Generator) -> Rep:
    """A quotient of a small projective sum by a submodule generated by random radical elements."""
    F = alg.field
    nv = alg.n_vertices
    tops = sorted(int(v) for v in rng.integers(0, nv, size=int(rng.integers(1, 3))))
    p = projective_sum(alg, tops)
    rb = radical_bases(p)
    spots = [v for v in range(nv) if rb[v].shape[1]]
    if not spots:
        return p
    elems = []
    for _ in range(int(rng.integers(1, 3))):
        v = int(spots[int(rng.integers(0, len(spots)))])
        # small integers, so every field sees a reduction of the same integral module
        coeffs = F.array(rng.integers(-3, 4, size=(rb[v].shape[1], 1)).tolist())
        elems.append((v, F.matmul(rb[v], coeffs).ravel()))
    sub, mono = generated_submodule(p, elems)
    q, _, _ = quotient(p, list(mono.mats), name="")
    return q


def random_generator(alg: QuiverAlgebra, seed: int, k: int) -> Rep:
    rng = np.random.default_rng([seed, k])
    q = random_quotient(alg, rng)
    return direct_sum([regular_module(alg), q], alg) if q.dim else regular_module(alg)


# ---------------------------------------------------------------------------
# End(M) rows


def end_row(name: str, m: Rep, bound: int | None, cutoff: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    row: dict = {"generator": name, "dims": list(m.dims)}
    try:
        row["is_generator"] = is_generator(m)
        rep = decompose(m, rng=rng)
        row["summands"] = [{"dims": list(c.dims), "multiplicity": k}
                           for c, k in rep.summands_with_multiplicity]
        data = end_data(m, rng=rng, decomposition=rep)
        row["dim_end"] = data.algebra.dim
        gl = fd_global_dimension(data.algebra, cutoff, rng)
        row["gldim"] = str(gl)
        row["gldim_value"] = gl.to_json()
        row["status"] = "ok"
        if bound is not None:
            row["lower_bound"] = bound
            row["pass"] = bool(row["is_generator"]) and not gl.at_most_value(bound - 1)
    except InconclusiveError as exc:
        row["status"] = "inconclusive"
        row["error"] = str(exc)
    row["seconds"] = round(time.perf_counter() - start, 3)
    return row


def _row(alg: QuiverAlgebra, spec, bound, cutoff, seed) -> dict:
    kind, key = spec
    if kind == "basic":
        return end_row(key, dict(basic_battery(alg))[key], bound, cutoff, seed)
    return end_row(f"random[{key}]", random_generator(alg, seed, key), bound, cutoff, seed)


def _row_job(args) -> dict:
    pres_json, spec, bound, cutoff, seed = args
    return _row(QuiverAlgebra(AlgebraPresentation.from_json(pres_json)), spec, bound, cutoff, seed)


def probe_rows(alg: QuiverAlgebra, bound: int | None, cfg: ExperimentConfig, jobs: int = 1) -> list[dict]:
    specs = [("basic", name) for name, _ in basic_battery(alg)]
    if cfg.battery == "random":
        specs += [("random", k) for k in range(cfg.samples)]
    if jobs > 1:
        args = [(alg.pres.to_json(), s, bound, cfg.cutoff, cfg.seed) for s in specs]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row_job, args))
    return [_row(alg, s, bound, cfg.cutoff, cfg.seed) for s in specs]


def auslander_report(alg: QuiverAlgebra, cfg: ExperimentConfig, lower: int | None) -> dict:
    L = alg.loewy_length()
    row = end_row("Auslander", auslander_generator(alg), lower, cfg.cutoff, cfg.seed)
    row["loewy_length"] = L
    row["upper_bound"] = L
    if row["status"] == "ok":
        gl = PdValue.from_json(row["gldim_value"])
        row["pass"] = bool(row["is_generator"]) and gl.at_most_value(L) and (
            lower is None or not gl.at_most_value(lower - 1))
    return row


# ---------------------------------------------------------------------------
# level certificates


def resolve_module(alg: QuiverAlgebra, spec: str) -> Rep:
    kinds = {"simple": simple, "proj": projective, "inj": injective}
    head, _, tail = spec.partition(":")
    if head in kinds and tail:
        try:
            v = int(tail)
        except ValueError as exc:
            raise InputError(f"bad vertex in module spec {spec!r}") from exc
        if not 0 <= v < alg.n_vertices:
            raise InputError(f"vertex {v} out of range in module spec {spec!r}")
        return kinds[head](alg, v)
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"module spec {spec!r} is neither simple:v, proj:v, inj:v nor a readable file") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{spec}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        x = rep_from_json(alg, data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{spec}: malformed module file ({exc})") from exc
    bad = x.relation_defects()
    if bad:
        raise InputError(f"{spec}: relations {bad} do not vanish on this module")
    return x


@dataclass
class LevelOutcome:
    report: dict
    certificates: dict = field(default_factory=dict)


def level_run(alg: QuiverAlgebra, x: Rep, n: int, cutoff: int) -> LevelOutcome:
    out = LevelOutcome({"module_dims": list(x.dims), "n": n, "algebra": algebra_hash(alg)})
    pd = projective_dimension(x, cutoff)
    out.report["pd"] = str(pd)
    transcript = []
    upper = level_upper_certificate(RepComplex.concentrated(x), cutoff)
    data = upper.to_json()
    errs = verify_certificate(json.loads(json.dumps(data)))
    transcript.append({"certificate": "level_upper", "failures": errs})
    out.certificates["level_upper"] = data
    out.report["level_upper"] = {"level": upper.level, "valid": upper.valid and not errs}
    try:
        g = ghost_certificate(x, n, cutoff)
        data = g.to_json()
        errs = verify_certificate(json.loads(json.dumps(data)))
        transcript.append({"certificate": "ghost", "failures": errs})
        out.certificates["ghost"] = data
        out.report["ghost"] = {"status": "certificate", "ext_dim": g.ext_dim, "valid": g.valid and not errs}
    except NoObstruction as exc:
        out.report["ghost"] = {"status": "no-obstruction", "reason": str(exc)}
    out.report["transcript"] = transcript
    return out
