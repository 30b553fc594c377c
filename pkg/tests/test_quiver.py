import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import FP, QQ, monomial_count
from repdimlab.linalg import FieldSpec
from repdimlab.quiver import (AlgebraPresentation, FDAlgebra, PresentationError, QuiverAlgebra,
                              beilinson_dimension_formula, build_beilinson, build_exterior,
                              build_path_algebra, matrix_algebra, product_algebra, structure_constants)


@pytest.mark.parametrize("n,vertices,arrows,relations", [(1, 2, 2, 0), (2, 3, 6, 3), (3, 4, 12, 12)])
def test_beilinson_shape(n, vertices, arrows, relations):
    pres = build_beilinson(n)
    assert pres.quiver.vertex_count == vertices
    assert len(pres.quiver.arrows) == arrows
    assert len(pres.relations) == relations


@pytest.mark.parametrize("n,relations,dim", [(1, 1, 2), (2, 3, 4), (3, 6, 8)])
def test_exterior_shape(n, relations, dim):
    pres = build_exterior(n)
    assert len(pres.relations) == relations
    assert pres.nilpotency_bound == n + 1
    assert QuiverAlgebra(pres).dim == dim


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_beilinson_dimension_matches_enumeration(n):
    assert QuiverAlgebra(build_beilinson(n)).dim == monomial_count(n) == beilinson_dimension_formula(n)


def test_beilinson_two_per_gap_dims():
    alg = QuiverAlgebra(build_beilinson(2))
    by_len = {}
    for s, t, m in alg.elements:
        by_len[len(m)] = by_len.get(len(m), 0) + 1
    assert by_len == {0: 3, 1: 6, 2: 6}


def test_rejects_nonpositive_n():
    with pytest.raises(PresentationError):
        build_beilinson(0)
    with pytest.raises(PresentationError):
        build_exterior(0)


def test_structure_constants_bookkeeping():
    alg = QuiverAlgebra(build_beilinson(1))
    a = structure_constants(alg)
    idx = alg.element_index
    e0, e1, x0 = idx[(0, 0, ())], idx[(1, 1, ())], idx[(0, 1, (0,))]
    assert a.sc[e0, x0, x0] == 1 and a.sc[x0, e1, x0] == 1
    assert not a.sc[e1, x0].any()


def test_commutativity_relation_in_normal_form():
    alg = QuiverAlgebra(build_beilinson(2))
    n = 2
    # x0 then x1 versus x1 then x0 across the two gaps
    p, q = (0, n + 1 + 1), (1, n + 1 + 0)
    assert (alg.basis.normal_form(0, 2, p) == alg.basis.normal_form(0, 2, q)).all()


@pytest.mark.parametrize("build", [lambda: build_beilinson(1), lambda: build_beilinson(2),
                                   lambda: build_exterior(2), lambda: build_beilinson(2, QQ)])
def test_associativity(build):
    assert structure_constants(build()).check_axioms() == []


def test_presentation_json_roundtrip_is_byte_stable():
    pres = build_beilinson(2)
    again = AlgebraPresentation.from_json(json.loads(pres.dumps()))
    assert again.dumps() == pres.dumps()
    assert QuiverAlgebra(again).dim == 15


def test_fdalgebra_json_roundtrip():
    a = structure_constants(build_beilinson(1, QQ))
    b = FDAlgebra.from_json(json.loads(json.dumps(a.to_json())))
    assert b.dim == a.dim and a.field.equal(a.sc, b.sc)


def test_no_arrow_quiver_is_semisimple():
    alg = QuiverAlgebra(build_path_algebra(3, []))
    assert alg.dim == 3 and alg.loewy_length() == 1


def test_loewy_lengths():
    assert QuiverAlgebra(build_beilinson(2)).loewy_length() == 3
    assert QuiverAlgebra(build_exterior(2)).loewy_length() == 3


def test_opposite_algebra_reverses_products():
    a = matrix_algebra(2, FP)
    op = a.opposite()
    rng = np.random.default_rng(1)
    x, y = FP.random(rng, 4), FP.random(rng, 4)
    assert FP.equal(op.mul(x, y), a.mul(y, x))
    assert op.check_axioms() == []


@given(st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_product_of_matrix_algebras_is_associative(n, seed):
    a = product_algebra([matrix_algebra(n, FP), matrix_algebra(1, FP)])
    rng = np.random.default_rng(seed)
    x, y, z = (FP.random(rng, a.dim) for _ in range(3))
    assert FP.equal(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)))
    assert FP.equal(a.mul(a.unit, x), x)


def test_field_travels_with_presentation():
    pres = build_beilinson(1, FieldSpec.prime(101))
    assert AlgebraPresentation.from_json(pres.to_json()).field == FieldSpec.prime(101)
