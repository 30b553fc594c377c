"""Endomorphism algebras and modules over finite-dimensional algebras.

``End(M)`` multiplies by composition, ``f * g = f o g``.  With that choice
``Hom(M, X)`` is a right module through precomposition, and a summand
idempotent ``e_i`` (projection onto ``M_i``) gives ``e_j End(M) e_i`` equal
to the maps ``M_i -> M_j``.

Right modules over an :class:`FDAlgebra` store one matrix per basis element:
``v * b_k = action[k] @ v``, so ``action`` of a product ``b_i b_j`` is
``action[j] @ action[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg as la
from .decompose import DecompositionReport, decompose
from .homalg import DEFAULT_CUTOFF, PdValue, max_pd
from .linalg import FieldSpec
from .quiver import FDAlgebra
from .reps import Rep, RepMap, hom_basis, identity_map
from .splitting import _compress, _split, primitive_idempotents as _matrix_idempotents


class CharacteristicError(ValueError):
    pass


def _check_char(F: FieldSpec, n: int):
    if not F.is_rational and F.p <= n:
        raise CharacteristicError(
            f"prime {F.p} must exceed dimension {n}; rerun with a larger prime (e.g. --field fp:1000003)")


# ---------------------------------------------------------------------------
# End(M)


@dataclass
class EndData:
    """``End(M)`` together with the maps realizing its basis."""
    algebra: FDAlgebra
    module: Rep
    basis: list[RepMap]
    decomposition: DecompositionReport
    _piv: list[int] = field(repr=False, default_factory=list)
    _inv: np.ndarray | None = field(repr=False, default=None)

    def coordinates(self, f: RepMap) -> np.ndarray:
        F = self.algebra.field
        return F.matmul(self._inv, f.flat()[self._piv].reshape(-1, 1)).ravel()

    def summand_idempotent(self, k: int) -> np.ndarray:
        return self.algebra.idempotents[k]


def _flat_basis(F: FieldSpec, maps: Sequence[RepMap]) -> np.ndarray:
    return np.stack([f.flat() for f in maps], axis=1)


def end_data(m: Rep, rng=None, decomposition: DecompositionReport | None = None) -> EndData:
    if m.dim == 0:
        raise ValueError("End of the zero module")
    F = m.field
    basis = hom_basis(m, m)
    d = len(basis)
    flat = _flat_basis(F, basis)
    piv, inv = la.left_inverse(F, flat)
    # entries of f_i o f_j at the pivot positions only
    offs = np.cumsum([0] + [x * x for x in m.dims])
    prods = F.zeros(len(piv), d * d)
    for row, p in enumerate(piv):
        v = int(np.searchsorted(offs, p, side="right") - 1)
        local = p - offs[v]
        r, c = divmod(int(local), m.dims[v])
        left = np.stack([f.mats[v][r, :] for f in basis])  # d x dim_v
        right = np.stack([f.mats[v][:, c] for f in basis], axis=1)  # dim_v x d
        prods[row] = F.matmul(left, right).ravel()
    coords = F.matmul(inv, prods)  # d x (d*d)
    sc = np.ascontiguousarray(coords.T.reshape(d, d, d))
    unit = F.matmul(inv, identity_map(m).flat()[piv].reshape(-1, 1)).ravel()
    report = decomposition if decomposition is not None else decompose(m, rng=rng)
    idems = []
    for s in report.summands:
        e = s.inclusion.compose(s.projection)
        idems.append(F.matmul(inv, e.flat()[piv].reshape(-1, 1)).ravel())
    labels = tuple(f"f{i}" for i in range(d))
    alg = FDAlgebra(d, F, sc, unit, tuple(idems), labels, tuple(basis))
    return EndData(alg, m, basis, report, list(piv), inv)


def end_algebra(m: Rep, rng=None) -> FDAlgebra:
    return end_data(m, rng).algebra


def corner_dim(a: FDAlgebra, e: np.ndarray, f: np.ndarray) -> int:
    """``dim e A f``."""
    F = a.field
    if a.dim == 0:
        return 0
    # columns: e * b_k * f
    lm = a.left_matrix(e)
    rm = a.right_matrix(f)
    return la.rank(F, F.matmul(lm, rm))


# ---------------------------------------------------------------------------
# radical


@dataclass(frozen=True)
class RadicalData:
    basis: np.ndarray  # rows are coordinate vectors
    nilpotency_index: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def trace_form(a: FDAlgebra) -> np.ndarray:
    F = a.field
    traces = F.array([sum(np.diagonal(m).tolist()) for m in a.left_matrices]) if a.dim else F.zeros(0)
    traces = F.reduce(traces) if not F.is_rational else traces
    return F.matmul(a.sc.reshape(a.dim * a.dim, a.dim), traces.reshape(-1, 1)).reshape(a.dim, a.dim)


def _radical_space(a: FDAlgebra) -> np.ndarray:
    F = a.field
    if a.dim == 0:
        return F.zeros(0, 0)
    ker = la.kernel(F, trace_form(a).T)
    return la.row_space(F, ker.T)[0] if ker.shape[1] else F.zeros(0, a.dim)


def _product_span(a: FDAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    F = a.field
    if x.shape[0] == 0 or y.shape[0] == 0:
        return F.zeros(0, a.dim)
    t = F.matmul(x, a.sc.reshape(a.dim, -1)).reshape(x.shape[0], a.dim, a.dim)
    prods = np.concatenate([F.matmul(y, t[i]) for i in range(x.shape[0])], axis=0)
    return la.row_space(F, prods)[0]


def _contained(F, sub: np.ndarray, space: np.ndarray) -> bool:
    if sub.shape[0] == 0:
        return True
    return la.rank(F, np.concatenate([space, sub], axis=0)) == space.shape[0]


def jacobson_radical(a: FDAlgebra) -> RadicalData:
    F = a.field
    _check_char(F, a.dim)
    rad = _radical_space(a)
    full = la.row_space(F, F.eye(a.dim))[0]
    if not (_contained(F, _product_span(a, full, rad), rad) and _contained(F, _product_span(a, rad, full), rad)):
        raise ArithmeticError("trace-form kernel is not a two-sided ideal")
    power, k = rad, 1
    while power.shape[0]:
        power = _product_span(a, power, rad)
        k += 1
        if k > a.dim + 1:
            raise ArithmeticError("radical is not nilpotent")
    return RadicalData(rad, k if rad.shape[0] else 1)


def quotient_algebra(a: FDAlgebra, ideal: np.ndarray) -> FDAlgebra:
    """``A / I`` for a two-sided ideal given by row vectors."""
    F = a.field
    q, s = la.quotient_projection(F, ideal.T if ideal.size else F.zeros(a.dim, 0), a.dim)
    d = q.shape[0]
    sc = F.zeros_nd((d, d, d))
    for i in range(d):
        for j in range(d):
            sc[i, j] = F.matmul(q, a.mul(s[:, i], s[:, j]).reshape(-1, 1)).ravel()
    unit = F.matmul(q, a.unit.reshape(-1, 1)).ravel()
    return FDAlgebra(d, F, sc, unit, ())


def is_semisimple(a: FDAlgebra) -> bool:
    return _radical_space(a).shape[0] == 0


# ---------------------------------------------------------------------------
# idempotents


def primitive_idempotents(a: FDAlgebra, rng=None, budget: int = 20) -> list[np.ndarray]:
    """Complete set of primitive orthogonal idempotents, as coordinate vectors."""
    F = a.field
    _check_char(F, a.dim)
    rng = rng if rng is not None else np.random.default_rng(0)
    mats = _matrix_idempotents(F, a.left_matrices, F.eye(a.dim), rng, budget)
    return [F.matmul(m, a.unit.reshape(-1, 1)).ravel() for m in mats]


def is_primitive(a: FDAlgebra, e: np.ndarray, rng=None) -> bool:
    F = a.field
    rng = rng if rng is not None else np.random.default_rng(0)
    le = a.left_matrix(e)
    if F.is_zero(le):
        return False
    _, _, small = _compress(F, le, [F.matmul(le, F.matmul(m, le)) for m in a.left_matrices])
    return len(_split(F, small, rng, 20, {"draws": 0})) == 1


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True, eq=False)
class FDModule:
    algebra: FDAlgebra
    dim: int
    action: tuple[np.ndarray, ...]

    def element_matrix(self, x: np.ndarray) -> np.ndarray:
        F = self.algebra.field
        out = F.zeros(self.dim, self.dim)
        for c, r in zip(x, self.action):
            if c != 0:
                out = F.add(out, F.scale(c, r))
        return out

    def act(self, v: np.ndarray, x: np.ndarray) -> np.ndarray:
        return self.algebra.field.matmul(self.element_matrix(x), v.reshape(-1, 1)).ravel()

    def check(self) -> list[str]:
        a = self.algebra
        F = a.field
        errs = []
        if not F.equal(self.element_matrix(a.unit), F.eye(self.dim)):
            errs.append("unit does not act as the identity")
        stacked = np.stack([r.ravel() for r in self.action], axis=0) if self.action else F.zeros(0, 0)
        for i in range(a.dim):
            lhs = F.matmul(a.sc[i], stacked)  # row j: action of b_i b_j
            for j in range(a.dim):
                if not F.equal(lhs[j].reshape(self.dim, self.dim), F.matmul(self.action[j], self.action[i])):
                    errs.append(f"action incompatible with b{i} b{j}")
                    return errs
        return errs


def regular_fd_module(a: FDAlgebra) -> FDModule:
    return FDModule(a, a.dim, tuple(a.right_matrices))


def submodule_action(M: FDModule, cols: np.ndarray) -> FDModule:
    F = M.algebra.field
    k = cols.shape[1]
    if k == 0:
        return FDModule(M.algebra, 0, tuple(F.zeros(0, 0) for _ in M.action))
    piv, inv = la.left_inverse(F, cols)
    acts = tuple(F.matmul(inv, F.matmul(r, cols)[piv, :]) for r in M.action)
    return FDModule(M.algebra, k, acts)


def quotient_action(M: FDModule, sub: np.ndarray) -> FDModule:
    F = M.algebra.field
    q, s = la.quotient_projection(F, sub, M.dim)
    acts = tuple(F.matmul(q, F.matmul(r, s)) for r in M.action)
    return FDModule(M.algebra, q.shape[0], acts)


def module_radical(M: FDModule, rad: RadicalData) -> np.ndarray:
    """Columns spanning ``M * rad A``."""
    F = M.algebra.field
    if M.dim == 0 or rad.dim == 0:
        return F.zeros(M.dim, 0)
    gens = [M.element_matrix(r) for r in rad.basis]
    return la.column_basis(F, np.concatenate(gens, axis=1))


@dataclass
class FDClass:
    idempotent: np.ndarray
    projective: FDModule
    simple: FDModule
    multiplicity: int = 1


@dataclass
class FDStructure:
    algebra: FDAlgebra
    radical: RadicalData
    idempotents: list[np.ndarray]
    classes: list[FDClass]
    class_of: list[int]


def fd_projectives_and_simples(a: FDAlgebra, rng=None, idempotents=None) -> FDStructure:
    F = a.field
    rad = jacobson_radical(a)
    idems = idempotents if idempotents is not None else primitive_idempotents(a, rng)
    reg = regular_fd_module(a)
    classes: list[FDClass] = []
    class_of = []
    for e in idems:
        # a simple S_c with S_c e != 0 means e A is a copy of the class c projective
        hit = None
        for k, c in enumerate(classes):
            if not F.is_zero(c.simple.element_matrix(e)):
                hit = k
                break
        if hit is not None:
            classes[hit].multiplicity += 1
            class_of.append(hit)
            continue
        cols = la.column_basis(F, a.left_matrix(e))
        proj = submodule_action(reg, cols)
        simp = quotient_action(proj, module_radical(proj, rad))
        classes.append(FDClass(e, proj, simp))
        class_of.append(len(classes) - 1)
    return FDStructure(a, rad, list(idems), classes, class_of)


@dataclass
class FDCover:
    projective_classes: list[int]
    projective: FDModule
    epi: np.ndarray
    kernel: FDModule


def fd_projective_cover(M: FDModule, st: FDStructure) -> FDCover:
    F = st.algebra.field
    a = st.algebra
    rad_cols = module_radical(M, st.radical)
    basis = la.IncrementalBasis(F, M.dim)
    for c in range(rad_cols.shape[1]):
        basis.add(rad_cols[:, c])
    gens: list[tuple[int, np.ndarray]] = []
    for k, c in enumerate(st.classes):
        img = la.column_basis(F, M.element_matrix(c.idempotent))
        for t in range(img.shape[1]):
            x = img[:, t]
            if basis.contains(x):
                continue
            gens.append((k, x))
            # all of xA, so a simple with a larger division ring is covered once
            for r in M.action:
                basis.add(F.matmul(r, x.reshape(-1, 1)).ravel())
    blocks, acts_blocks, classes = [], [], []
    for k, x in gens:
        c = st.classes[k]
        cols = la.column_basis(F, a.left_matrix(c.idempotent))
        w = np.stack([F.matmul(r, x.reshape(-1, 1)).ravel() for r in M.action], axis=1)
        blocks.append(F.matmul(w, cols))
        acts_blocks.append(c.projective.action)
        classes.append(k)
    epi = la.hstack(F, blocks, M.dim)
    if la.rank(F, epi) != M.dim:
        raise ArithmeticError("chosen generators do not generate the module")
    acts = tuple(la.block_diag(F, [ab[j] for ab in acts_blocks]) for j in range(a.dim))
    proj = FDModule(a, epi.shape[1], acts)
    ker_cols = la.kernel(F, epi) if epi.shape[1] else F.zeros(0, 0)
    ker = submodule_action(proj, ker_cols)
    return FDCover(classes, proj, epi, ker)


def fd_projective_dimension(M: FDModule, st: FDStructure, cutoff: int = DEFAULT_CUTOFF,
                            betti: list | None = None) -> PdValue:
    current = M
    if M.dim == 0:
        return PdValue.exact(0)
    for i in range(cutoff):
        cov = fd_projective_cover(current, st)
        if betti is not None:
            row = [0] * len(st.classes)
            for k in cov.projective_classes:
                row[k] += 1
            betti.append(row)
        if cov.kernel.dim == 0:
            return PdValue.exact(i)
        current = cov.kernel
    return PdValue.at_least(cutoff)


def fd_global_dimension(a: FDAlgebra, cutoff: int = DEFAULT_CUTOFF, rng=None,
                        structure: FDStructure | None = None) -> PdValue:
    st = structure if structure is not None else fd_projectives_and_simples(a, rng)
    return max_pd(fd_projective_dimension(c.simple, st, cutoff) for c in st.classes)


def hom_functor_module(data: EndData | Rep, x: Rep) -> FDModule:
    """``Hom(M, x)`` as a right ``End(M)``-module by precomposition.

    Pass the :class:`EndData` of M to keep one fixed basis of ``End(M)`` across calls.
    """
    if isinstance(data, Rep):
        data = end_data(data)
    F = data.algebra.field
    hs = hom_basis(data.module, x)
    if not hs:
        return FDModule(data.algebra, 0, tuple(F.zeros(0, 0) for _ in data.basis))
    flat = _flat_basis(F, hs)
    piv, inv = la.left_inverse(F, flat)
    acts = []
    for f in data.basis:
        img = np.stack([h.compose(f).flat()[piv] for h in hs], axis=1)
        acts.append(F.matmul(inv, img))
    return FDModule(data.algebra, len(hs), tuple(acts))
