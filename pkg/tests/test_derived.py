import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import QQ, beilinson, random_module
from repdimlab.derived import (ComplexError, NoObstruction, RepComplex, check_level_certificate,
                               christensen_step, complex_from_json, complex_parts, ghost_certificate,
                               is_projective_type, level_upper_certificate, parts_pd)
from repdimlab.homalg import projective_dimension
from repdimlab.derived import complex_to_json
from repdimlab.reps import (hom_basis, identity_map, kernel_of, linear_combination, projective,
                            projective_cover, simple, zero_map, zero_rep)
from repdimlab.serialize import dumps
from repdimlab.verify import verify_certificate

seeds = st.integers(0, 2**32 - 1)


def roundtrip(data):
    return json.loads(dumps(data))


def random_complex(alg, seed):
    """X2 -> X1 -> X0 with the second map landing in the kernel of the first."""
    rng = np.random.default_rng(seed)
    x0, x1, x2 = (random_module(alg, int(s)) for s in rng.integers(0, 2**32 - 1, size=3))

    def combo(x, y):
        b = hom_basis(x, y)
        return linear_combination([int(c) for c in rng.integers(-2, 3, size=len(b))], b, x, y)

    f = combo(x1, x0)
    k, inc = kernel_of(f)
    g = inc.compose(combo(x2, k))
    return RepComplex(alg, 0, (x0, x1, x2), (f, g))


def s0_resolution_complex(alg):
    p, epi = projective_cover(simple(alg, 0))
    k, inc = kernel_of(epi)
    q, cov = projective_cover(k)
    return RepComplex(alg, 0, (p, q), (inc.compose(cov),))


def test_complex_rejects_nonzero_square():
    alg = beilinson(1)
    p = projective(alg, 0)
    idm = identity_map(p)
    with pytest.raises(ComplexError):
        RepComplex(alg, 0, (p, p, p), (idm, idm))


def test_parts_of_complex_with_zero_differentials():
    alg = beilinson(1)
    x0, x1 = projective(alg, 0), simple(alg, 1)
    c = RepComplex(alg, 0, (x0, x1), (zero_map(x1, x0),))
    parts = complex_parts(c)
    assert parts.homology(0).dims == x0.dims and parts.homology(1).dims == x1.dims
    assert parts.boundaries(0).dim == 0


def test_contractible_complex_has_no_homology():
    alg = beilinson(2)
    x = projective(alg, 1)
    parts = complex_parts(RepComplex(alg, 0, (x, x), (identity_map(x),)))
    assert parts.homology(0).dim == 0 and parts.homology(1).dim == 0


def test_parts_of_s0_resolution():
    alg = beilinson(1)
    parts = complex_parts(s0_resolution_complex(alg))
    assert parts.homology(0).dims == (1, 0)
    assert parts.homology(1).dim == 0
    assert parts.boundaries(0).dims == (0, 2)


def test_christensen_step_on_s0_n1():
    alg = beilinson(1)
    step = christensen_step(RepComplex.concentrated(simple(alg, 0)))
    assert step.projective.term(0).dims == (1, 2)
    assert step.syzygy.lo == 1 and step.syzygy.term(1).dims == (0, 2)
    assert is_projective_type(step.projective)
    assert is_projective_type(step.syzygy)


def test_christensen_step_on_s0_n2_needs_two_syzygies():
    alg = beilinson(2)
    c = RepComplex.concentrated(simple(alg, 0))
    s1 = christensen_step(c).syzygy
    assert not is_projective_type(s1)
    s2 = christensen_step(s1).syzygy
    assert is_projective_type(s2)


def test_level_examples():
    alg = beilinson(2)
    assert level_upper_certificate(RepComplex.concentrated(zero_rep(alg))).level == 0
    assert level_upper_certificate(RepComplex.concentrated(projective(alg, 0))).level == 1
    cert = level_upper_certificate(RepComplex.concentrated(simple(alg, 0)))
    assert cert.level == 3 and cert.valid
    assert check_level_certificate(cert) == []
    assert verify_certificate(roundtrip(cert.to_json())) == []


def test_ghost_examples():
    a1, a2 = beilinson(1), beilinson(2)
    g = ghost_certificate(simple(a1, 0), 1)
    assert g.valid and g.witness.dims == (0, 2)
    assert verify_certificate(roundtrip(g.to_json())) == []
    with pytest.raises(NoObstruction):
        ghost_certificate(projective(a1, 0), 1)
    g = ghost_certificate(simple(a2, 0), 2)
    assert g.valid and g.witness.dims == (0, 0, 3)
    with pytest.raises(NoObstruction):
        ghost_certificate(simple(a1, 0), 2)


def test_certificates_over_rationals():
    alg = beilinson(2, QQ)
    g = ghost_certificate(simple(alg, 0), 2)
    assert verify_certificate(roundtrip(g.to_json())) == []
    cert = level_upper_certificate(RepComplex.concentrated(simple(alg, 0)))
    assert verify_certificate(roundtrip(cert.to_json())) == []


def test_verifier_rejects_tampered_cocycle():
    alg = beilinson(2)
    data = roundtrip(ghost_certificate(simple(alg, 0), 2).to_json())
    data["cocycle"] = [m if isinstance(m, dict) else [["0"] * len(r) for r in m] for m in data["cocycle"]]
    assert verify_certificate(data) != []


def test_verifier_rejects_tampered_tower():
    alg = beilinson(2)
    data = roundtrip(level_upper_certificate(RepComplex.concentrated(simple(alg, 0))).to_json())
    data["level"] = 2
    assert verify_certificate(data) != []


def test_complex_json_roundtrip():
    alg = beilinson(1)
    c = s0_resolution_complex(alg)
    d = complex_from_json(alg, roundtrip(complex_to_json(c)))
    assert [t.dims for t in d.terms] == [t.dims for t in c.terms]


# -- properties ---------------------------------------------------------------


@given(st.sampled_from([1, 2]), seeds)
def test_tower_steps_keep_d_squared_zero_and_lower_pd(n, seed):
    alg = beilinson(n)
    c = random_complex(alg, seed)
    before = parts_pd(c)
    step = christensen_step(c)
    for cx in (step.projective, step.syzygy):
        for i in cx.degrees:
            assert cx.diff(i).compose(cx.diff(i + 1)).is_zero()
    assert is_projective_type(step.projective)
    for i in c.degrees:
        epi = step.epi[i - c.lo]
        assert epi.is_surjective()
        if i > c.lo:
            # a chain map: d o epi_i = epi_{i-1} o d
            lhs = c.diff(i).compose(epi)
            rhs = step.epi[i - 1 - c.lo].compose(step.projective.diff(i))
            assert all(alg.field.equal(a, b) for a, b in zip(lhs.mats, rhs.mats))
    after = parts_pd(step.syzygy)
    top_before = max(v.value for v in before.values())
    top_after = max(v.value for v in after.values())
    assert top_after <= max(top_before - 1, 0)


@given(st.sampled_from([1, 2]), seeds)
def test_level_certificates_reverify(n, seed):
    alg = beilinson(n)
    c = random_complex(alg, seed)
    cert = level_upper_certificate(c)
    pds = parts_pd(c)
    want = 0 if c.is_zero() else 1 + max(v.value for v in pds.values())
    assert cert.level == want
    assert check_level_certificate(cert) == []
    assert verify_certificate(roundtrip(cert.to_json())) == []


@given(st.sampled_from([1, 2]), seeds)
def test_ghost_sandwich(n, seed):
    alg = beilinson(n)
    x = random_module(alg, seed)
    p = projective_dimension(x).value
    for m in range(1, p + 1):
        g = ghost_certificate(x, m)
        assert verify_certificate(roundtrip(g.to_json())) == []
    with pytest.raises(NoObstruction):
        ghost_certificate(x, p + 1)
    assert level_upper_certificate(RepComplex.concentrated(x)).level == (p + 1 if x.dim else 0)
