"""Acceptance gate: one check per criterion, each reported as a pass/fail line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal summary)
or ``python tests/test_acceptance.py``.
"""
import json
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import ACCEPTANCE, monomial_count  # noqa: E402
from repdimlab.derived import NoObstruction, RepComplex, ghost_certificate, level_upper_certificate  # noqa: E402
from repdimlab.endo import (corner_dim, end_data, fd_projective_dimension,  # noqa: E402
                            fd_projectives_and_simples, hom_functor_module)
from repdimlab.experiments import (ExperimentConfig, auslander_generator, end_row, homcheck_table,  # noqa: E402
                                   probe_rows)
from repdimlab.homalg import PdValue, global_dimension, m_resolution  # noqa: E402
from repdimlab.linalg import FieldSpec  # noqa: E402
from repdimlab.quiver import QuiverAlgebra, build_beilinson  # noqa: E402
from repdimlab.reps import direct_sum, dual_regular_module, hom_dim, regular_module, simple  # noqa: E402
from repdimlab.serialize import dumps  # noqa: E402
from repdimlab.verify import verify_certificate  # noqa: E402

GOLDEN = json.loads((Path(__file__).parent / "golden" / "auslander.json").read_text())
PRIMES = (1000003, 999983)
SEED = 20240601
RANDOM_SAMPLES = 25


def algebra(n, p=PRIMES[0]):
    return QuiverAlgebra(build_beilinson(n, FieldSpec.prime(p)))


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return bool(ok)


# -- numbers shared by criteria 2-6 and the cross-prime comparison -----------


def gldims(p):
    return {n: str(global_dimension(algebra(n, p))) for n in (1, 2, 3, 4)}


def auslander_values(p):
    out = {}
    for n in (1, 2):
        row = end_row("Auslander", auslander_generator(algebra(n, p)), n, 32, SEED)
        out[n] = (row["gldim"], row["dim_end"], row["is_generator"])
    return out


def probe_values(p):
    out = {}
    for n in (1, 2):
        cfg = ExperimentConfig("beilinson", n, f"fp:{p}", seed=SEED, battery="random", samples=RANDOM_SAMPLES)
        out[n] = probe_rows(algebra(n, p), n, cfg)
    return out


def dual_values(p):
    out = {}
    for n in (1, 2):
        alg = algebra(n, p)
        row = end_row("Lambda+DLambda", direct_sum([regular_module(alg), dual_regular_module(alg)]), n, 32, SEED)
        out[n] = (row["gldim"], row["dim_end"])
    return out


def hom_tables(p):
    return {n: homcheck_table(algebra(n, p)) for n in (1, 2, 3)}


_CACHE: dict = {}


def cached(name, p):
    key = (name, p)
    if key not in _CACHE:
        _CACHE[key] = {"gldims": gldims, "auslander": auslander_values, "probe": probe_values,
                       "dual": dual_values, "hom": hom_tables}[name](p)
    return _CACHE[key]


# -- criteria -------------------------------------------------------------------


def criterion_1():
    got = {n: algebra(n).dim for n in (1, 2, 3)}
    want = {1: 4, 2: 15, 3: 56}
    oracle = {n: monomial_count(n) for n in (1, 2, 3)}
    return record(1, got == want == oracle, f"dims {got}, enumeration oracle {oracle}")


def criterion_2():
    got = cached("gldims", PRIMES[0])
    return record(2, got == {n: str(n) for n in (1, 2, 3, 4)}, f"gl.dim by n: {got}")


def criterion_3():
    vals = cached("auslander", PRIMES[0])
    ok = True
    for n, (gl, dim_end, gen) in vals.items():
        v = PdValue.exact(int(gl)) if gl.isdigit() else None
        ok &= v is not None and gen and n <= v.value <= n + 1
        ok &= int(gl) == GOLDEN["gldim"][str(n)] and dim_end == GOLDEN["dim_end"][str(n)]
    return record(3, ok, f"gl.dim End(Auslander) by n: { {n: v[0] for n, v in vals.items()} } "
                         f"(golden {GOLDEN['gldim']})")


def criterion_4():
    rows = cached("probe", PRIMES[0])
    bad, counts = [], {}
    for n, rs in rows.items():
        counts[n] = len(rs)
        for r in rs:
            if r["status"] != "ok" or not r["is_generator"] or not r["pass"]:
                bad.append((n, r["generator"], r.get("gldim"), r["status"]))
    vals = {n: sorted({r["gldim"] for r in rs}) for n, rs in rows.items()}
    return record(4, not bad and all(c == 5 + RANDOM_SAMPLES for c in counts.values()),
                  f"rows per n {counts}, gl.dim values {vals}, violations {bad}")


def criterion_5():
    vals = cached("dual", PRIMES[0])
    ok = all(gl.isdigit() and int(gl) <= 2 * n + 1 for n, (gl, _) in vals.items())
    return record(5, ok, f"gl.dim End(Lambda+DLambda) by n: { {n: v[0] for n, v in vals.items()} }, bound 2n+1")


def criterion_6():
    tables = cached("hom", PRIMES[0])
    ok = all(v == 0 for t in tables.values() for row in t for v in row)
    return record(6, ok, "dim Hom(I_v, P_w) = 0 for all pairs, n = 1, 2, 3" if ok else f"tables {tables}")


def criterion_7():
    x = simple(algebra(2), 0)
    notes, ok = [], True
    for m in (1, 2):
        g = ghost_certificate(x, m)
        errs = verify_certificate(json.loads(dumps(g.to_json())))
        ok &= g.valid and not errs
        notes.append(f"ghost m={m} ext_dim={g.ext_dim} verified={not errs}")
    try:
        ghost_certificate(x, 3)
        ok = False
        notes.append("ghost m=3 unexpectedly produced")
    except NoObstruction:
        notes.append("ghost m=3 NoObstruction")
    cert = level_upper_certificate(RepComplex.concentrated(x))
    errs = verify_certificate(json.loads(dumps(cert.to_json())))
    ok &= cert.level == 3 and cert.valid and not errs
    notes.append(f"upper level {cert.level} verified={not errs}")
    return record(7, ok, "; ".join(notes))


def criterion_8():
    alg = algebra(1)
    m = auslander_generator(alg)
    data = end_data(m, rng=np.random.default_rng(SEED))
    gamma = data.algebra
    # with f * g = f o g the corner e_i Gamma e_j is Hom(M_j, M_i); the opposite ring
    # carries the orientation dim Hom(M_i, M_j) = dim e_i Gamma e_j literally
    op = gamma.opposite()
    summands = data.decomposition.summands
    corners_ok = True
    for i, si in enumerate(summands):
        for j, sj in enumerate(summands):
            h = hom_dim(si.module, sj.module)
            ei, ej = gamma.idempotents[i], gamma.idempotents[j]
            corners_ok &= corner_dim(op, ei, ej) == h and corner_dim(gamma, ej, ei) == h
    st = fd_projectives_and_simples(gamma)
    pds, lengths = [], []
    for v in range(alg.n_vertices):
        pds.append(fd_projective_dimension(hom_functor_module(data, simple(alg, v)), st).value)
        lengths.append(m_resolution(m, simple(alg, v)).length)
    ok = corners_ok and pds == lengths
    return record(8, ok, f"{len(summands)} summands, corner dims match={corners_ok}; "
                         f"pd_Gamma Hom(M, S_v)={pds}, M-resolution lengths={lengths}")


def _comparable(p):
    probe = {n: [(r["generator"], r.get("gldim"), r.get("dim_end")) for r in rs]
             for n, rs in cached("probe", p).items()}
    return {
        "gldim": cached("gldims", p),
        "auslander": cached("auslander", p),
        "probe": probe,
        "dual": cached("dual", p),
        "hom": cached("hom", p),
    }


def criterion_9():
    a, b = (_comparable(p) for p in PRIMES)
    anomalies = [k for k in a if a[k] != b[k]]
    detail = f"primes {PRIMES}: " + ("all criterion 2-6 numbers agree" if not anomalies else
                                     f"disagreement in {anomalies}: {[(a[k], b[k]) for k in anomalies]}")
    # every End algebra involved must stay below both primes
    biggest = max(r.get("dim_end", 0) for rs in cached("probe", PRIMES[0]).values() for r in rs)
    return record(9, not anomalies and biggest < min(PRIMES), detail + f"; largest dim End = {biggest}")


def criterion_10():
    import test_derived
    import test_homalg
    import test_linalg
    import test_reps
    suites = {
        "rank-nullity": [test_linalg.test_rank_nullity, test_reps.test_factorization_rank_nullity],
        "yoneda": [test_reps.test_yoneda_dimension],
        "resolution minimality": [test_homalg.test_minimality_betti_equals_ext_into_simples,
                                  test_homalg.test_resolution_invariants],
        "d^2 = 0": [test_derived.test_tower_steps_keep_d_squared_zero_and_lower_pd],
        "certificate re-verification": [test_derived.test_level_certificates_reverify,
                                        test_derived.test_ghost_sandwich],
    }
    failed = []
    for name, fns in suites.items():
        for fn in fns:
            try:
                fn()
            except Exception as exc:  # report which suite broke, then fail the criterion
                failed.append(f"{name}: {fn.__name__}: {exc!r}"[:300])
    return record(10, not failed, f"{len(suites)} suites x 100 seeded cases" + (f"; failures {failed}" if failed else ""))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{k + 1:02d}" for k in range(len(CRITERIA))])
def test_acceptance(check):
    assert check()


if __name__ == "__main__":
    start = time.perf_counter()
    results = [check() for check in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed in {time.perf_counter() - start:.1f}s")
    sys.exit(0 if all(results) else 1)
