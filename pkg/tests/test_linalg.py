from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from repdimlab import linalg as la
from repdimlab.linalg import FieldSpec, LinalgError, Matrix, kernel_basis, rref_rank, solve_linear

QQ = FieldSpec.rationals()
F7 = FieldSpec.prime(7)
FP = FieldSpec.prime()


def test_rref_identity():
    r = rref_rank(Matrix.identity(QQ, 2))
    assert r.rank == 2 and r.pivots == (0, 1)


def test_rref_proportional_rows():
    r = rref_rank(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))
    assert r.rank == 1 and r.pivots == (0,)
    assert r.reduced.tolist() == [["1", "2"], ["0", "0"]]


def test_rref_zero_matrix_mod_7():
    r = rref_rank(Matrix.zeros(F7, 3, 4))
    assert r.rank == 0 and r.pivots == ()


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 2)).data.shape == (2, 0)
    k = kernel_basis(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))
    assert k.cols == 1
    v = k.data[:, 0]
    assert v[0] == -2 * v[1] and v[1] != 0
    z = kernel_basis(Matrix.zeros(QQ, 2, 3))
    assert z.cols == 3 and rref_rank(z).rank == 3


def test_solve_examples():
    b = Matrix.from_rows(QQ, [[Fraction(1, 3), 5], [7, -2]])
    assert solve_linear(Matrix.identity(QQ, 2), b) == b
    a = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    assert solve_linear(a, Matrix.from_rows(QQ, [[1], [3]])) is None
    x = solve_linear(a, Matrix.from_rows(QQ, [[1], [2]]))
    assert a @ x == Matrix.from_rows(QQ, [[1], [2]])


def test_solve_rejects_mismatched_rows():
    with pytest.raises(LinalgError):
        solve_linear(Matrix.identity(QQ, 2), Matrix.zeros(QQ, 3, 1))


def test_field_parse_and_prime_check():
    assert FieldSpec.parse("q").is_rational
    assert FieldSpec.parse("fp:101").characteristic == 101
    with pytest.raises(ValueError):
        FieldSpec.parse("fp:100")
    with pytest.raises(ValueError):
        FieldSpec.parse("gf")


def test_rational_entries_survive_text_roundtrip():
    x = Fraction(-7, 12)
    assert QQ.from_str(QQ.to_str(x)) == x
    assert FP.from_str(FP.to_str(FP.elem(-1))) == FP.p - 1


matrices = st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 2**32 - 1), st.sampled_from([QQ, F7, FP]))


def _random(shape_seed):
    r, c, seed, F = shape_seed
    rng = np.random.default_rng(seed)
    # low-rank products show up more often than in uniform draws
    k = int(rng.integers(0, min(r, c) + 1)) if r and c else 0
    a = F.matmul(F.array(rng.integers(-3, 4, size=(r, k)).tolist()) if k else F.zeros(r, 0),
                 F.array(rng.integers(-3, 4, size=(k, c)).tolist()) if k else F.zeros(0, c))
    return F, a


@given(matrices)
def test_rank_nullity(params):
    F, a = _random(params)
    k = la.kernel(F, a)
    assert la.rank(F, a) + k.shape[1] == a.shape[1]
    assert F.is_zero(F.matmul(a, k))
    assert la.rank(F, k) == k.shape[1]


@given(matrices)
def test_solve_recovers_consistent_systems(params):
    F, a = _random(params)
    rng = np.random.default_rng(params[2] + 1)
    x0 = F.array(rng.integers(-3, 4, size=(a.shape[1], 2)).tolist()) if a.shape[1] else F.zeros(0, 2)
    b = F.matmul(a, x0)
    x = la.solve(F, a, b)
    assert x is not None and F.equal(F.matmul(a, x), b)


@given(matrices)
def test_rref_is_reduced(params):
    F, a = _random(params)
    r, piv = la.rref(F, a)
    assert len(piv) == la.rank(F, a)
    for i, p in enumerate(piv):
        col = [r[j, p] for j in range(r.shape[0])]
        assert col[i] == 1 and all(c == 0 for j, c in enumerate(col) if j != i)


@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.sampled_from([QQ, FP]))
def test_inverse_of_triangular_products(n, seed, F):
    rng = np.random.default_rng(seed)
    lower = np.tril(rng.integers(-3, 4, size=(n, n)), -1) + np.eye(n, dtype=int)
    upper = np.triu(rng.integers(-3, 4, size=(n, n)), 1) + np.eye(n, dtype=int)
    a = F.matmul(F.array(lower.tolist()), F.array(upper.tolist()))
    assert F.equal(F.matmul(a, la.inverse(F, a)), F.eye(n))


@given(matrices)
def test_left_inverse_recovers_coordinates(params):
    F, a = _random(params)
    basis = la.column_basis(F, a)
    if basis.shape[1] == 0:
        return
    piv, inv = la.left_inverse(F, basis)
    rng = np.random.default_rng(params[2])
    c = F.array(rng.integers(-3, 4, size=(basis.shape[1], 1)).tolist())
    v = F.matmul(basis, c)
    assert F.equal(F.matmul(inv, v[piv, :]), c)
