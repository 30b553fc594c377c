"""Right modules over a presented algebra, as quiver representations.

A :class:`Rep` stores one matrix per arrow, of shape
``(dims[target], dims[source])`` acting on column vectors.  A path
``(a, b)`` therefore acts by ``maps[b] @ maps[a]``.

Two optional tags speed up Hom computations without changing meaning:
``tops`` marks a module that *is* the projective ``P_{v_0} + P_{v_1} + ...``
in its canonical basis, ``socs`` marks ``I_{u_0} + I_{u_1} + ...`` likewise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg as la
from .linalg import FieldSpec
from .quiver import QuiverAlgebra


class RepError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Rep:
    algebra: QuiverAlgebra
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]
    tops: tuple[int, ...] | None = None
    socs: tuple[int, ...] | None = None
    parts: tuple["Rep", ...] | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        alg = self.algebra
        if len(self.dims) != alg.n_vertices:
            raise RepError("one dimension per vertex required")
        if len(self.maps) != len(alg.arrows):
            raise RepError("one matrix per arrow required")
        for a, m in zip(alg.arrows, self.maps):
            if m.shape != (self.dims[a.target], self.dims[a.source]):
                raise RepError(f"arrow {a.label}: matrix shape {m.shape} does not match dims")

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"Rep{tag}(dims={list(self.dims)})"

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def offsets(self) -> list[int]:
        out, o = [], 0
        for d in self.dims:
            out.append(o)
            o += d
        return out

    def path_matrices(self, v: int) -> dict[tuple[int, ...], np.ndarray]:
        """Action of every standard monomial starting at v, as matrices out of X_v."""
        key = ("paths", v)
        if key in self._cache:
            return self._cache[key]
        F = self.field
        alg = self.algebra
        out = {(): F.eye(self.dims[v])}
        for length in range(1, alg.pres.max_length + 1):
            for t in range(alg.n_vertices):
                for m in alg.basis.standard(v, t, length):
                    out[m] = F.matmul(self.maps[m[-1]], out[m[:-1]])
        self._cache[key] = out
        return out

    def relation_defects(self) -> list[int]:
        """Indices of relations that do not act as zero."""
        F = self.field
        bad = []
        for k, r in enumerate(self.algebra.pres.relations):
            acc = F.zeros(self.dims[r.target], self.dims[r.source])
            for c, p in r.terms:
                m = F.eye(self.dims[r.source])
                for a in p:
                    m = F.matmul(self.maps[a], m)
                acc = F.add(acc, F.scale(c, m))
            if not F.is_zero(acc):
                bad.append(k)
        return bad

    def validate(self) -> Rep:
        bad = self.relation_defects()
        if bad:
            raise RepError(f"relations {bad} do not vanish on this module")
        return self

    def total_matrix(self, mats: Sequence[np.ndarray]) -> np.ndarray:
        return la.block_diag(self.field, list(mats))

    @cached_property
    def part_offsets(self) -> list[list[int]]:
        """Per part, its offset inside each vertex space."""
        if not self.parts:
            return []
        out = []
        acc = [0] * len(self.dims)
        for p in self.parts:
            out.append(list(acc))
            acc = [a + d for a, d in zip(acc, p.dims)]
        return out


@dataclass(frozen=True, eq=False)
class RepMap:
    source: Rep
    target: Rep
    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        for v, m in enumerate(self.mats):
            if m.shape != (self.target.dims[v], self.source.dims[v]):
                raise RepError(f"vertex {v}: map shape {m.shape} does not match dims")

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    def compose(self, other: RepMap) -> RepMap:
        """``self`` after ``other``."""
        F = self.field
        return RepMap(other.source, self.target, tuple(F.matmul(a, b) for a, b in zip(self.mats, other.mats)))

    def __add__(self, other: RepMap) -> RepMap:
        F = self.field
        return RepMap(self.source, self.target, tuple(F.add(a, b) for a, b in zip(self.mats, other.mats)))

    def scale(self, c) -> RepMap:
        F = self.field
        return RepMap(self.source, self.target, tuple(F.scale(c, a) for a in self.mats))

    def flat(self) -> np.ndarray:
        F = self.field
        if not self.mats:
            return F.zeros(0)
        return np.concatenate([m.ravel() for m in self.mats])

    def total(self) -> np.ndarray:
        return la.block_diag(self.field, list(self.mats))

    def is_intertwiner(self) -> bool:
        F = self.field
        for k, a in enumerate(self.source.algebra.arrows):
            lhs = F.matmul(self.target.maps[k], self.mats[a.source])
            rhs = F.matmul(self.mats[a.target], self.source.maps[k])
            if not F.equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.mats)

    def ranks(self) -> list[int]:
        return [la.rank(self.field, m) for m in self.mats]

    def is_injective(self) -> bool:
        return self.ranks() == list(self.source.dims)

    def is_surjective(self) -> bool:
        return self.ranks() == list(self.target.dims)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()


def identity_map(x: Rep) -> RepMap:
    return RepMap(x, x, tuple(x.field.eye(d) for d in x.dims))


def zero_map(x: Rep, y: Rep) -> RepMap:
    F = x.field
    return RepMap(x, y, tuple(F.zeros(b, a) for a, b in zip(x.dims, y.dims)))


def linear_combination(coeffs, maps: Sequence[RepMap], source: Rep, target: Rep) -> RepMap:
    F = source.field
    mats = [F.zeros(b, a) for a, b in zip(source.dims, target.dims)]
    for c, f in zip(coeffs, maps):
        if c == 0:
            continue
        mats = [F.add(m, F.scale(c, g)) for m, g in zip(mats, f.mats)]
    return RepMap(source, target, tuple(mats))


def zero_rep(alg: QuiverAlgebra) -> Rep:
    F = alg.field
    return Rep(alg, (0,) * alg.n_vertices, tuple(F.zeros(0, 0) for _ in alg.arrows), tops=(), socs=(), name="0")


# ---------------------------------------------------------------------------
# canonical modules


def _alg_cache(alg: QuiverAlgebra) -> dict:
    if not hasattr(alg, "_rep_cache"):
        alg._rep_cache = {}
    return alg._rep_cache


def projective(alg: QuiverAlgebra, v: int) -> Rep:
    """``P_v = e_v Lambda``: normal-form paths from v, arrows acting by right concatenation."""
    cache = _alg_cache(alg)
    if ("P", v) in cache:
        return cache[("P", v)]
    F = alg.field
    monos = alg.monomials_from(v)
    index = [{m: i for i, m in enumerate(ms)} for ms in monos]
    dims = tuple(len(ms) for ms in monos)
    maps = []
    for k, a in enumerate(alg.arrows):
        mat = F.zeros(dims[a.target], dims[a.source])
        for col, m in enumerate(monos[a.source]):
            path = m + (k,)
            if len(path) > alg.pres.max_length:
                continue
            nf = alg.basis.normal_form(v, a.target, path)
            if nf is None:
                continue
            for c, mon in zip(nf, alg.basis.standard(v, a.target, len(path))):
                if c != 0:
                    mat[index[a.target][mon], col] = c
        maps.append(mat)
    rep = Rep(alg, dims, tuple(maps), tops=(v,), name=f"P{v}")
    cache[("P", v)] = rep
    return rep


def injective(alg: QuiverAlgebra, v: int) -> Rep:
    """``I_v = D(Lambda e_v)``: dual of the paths ending at v, with transposed left actions."""
    cache = _alg_cache(alg)
    if ("I", v) in cache:
        return cache[("I", v)]
    F = alg.field
    monos = alg.monomials_to(v)
    index = [{m: i for i, m in enumerate(ms)} for ms in monos]
    dims = tuple(len(ms) for ms in monos)
    maps = []
    for k, a in enumerate(alg.arrows):
        # left multiplication by the arrow: e_t Lambda e_v -> e_s Lambda e_v
        left = F.zeros(dims[a.source], dims[a.target])
        for col, m in enumerate(monos[a.target]):
            path = (k,) + m
            if len(path) > alg.pres.max_length:
                continue
            nf = alg.basis.normal_form(a.source, v, path)
            if nf is None:
                continue
            for c, mon in zip(nf, alg.basis.standard(a.source, v, len(path))):
                if c != 0:
                    left[index[a.source][mon], col] = c
        maps.append(left.T.copy())
    rep = Rep(alg, dims, tuple(maps), socs=(v,), name=f"I{v}")
    cache[("I", v)] = rep
    return rep


def simple(alg: QuiverAlgebra, v: int) -> Rep:
    cache = _alg_cache(alg)
    if ("S", v) in cache:
        return cache[("S", v)]
    F = alg.field
    dims = tuple(1 if w == v else 0 for w in range(alg.n_vertices))
    maps = tuple(F.zeros(dims[a.target], dims[a.source]) for a in alg.arrows)
    rep = Rep(alg, dims, maps, name=f"S{v}")
    cache[("S", v)] = rep
    return rep


@dataclass(frozen=True)
class CanonicalReps:
    projectives: tuple[Rep, ...]
    injectives: tuple[Rep, ...]
    simples: tuple[Rep, ...]


def canonical_reps(alg: QuiverAlgebra) -> CanonicalReps:
    n = alg.n_vertices
    return CanonicalReps(
        tuple(projective(alg, v) for v in range(n)),
        tuple(injective(alg, v) for v in range(n)),
        tuple(simple(alg, v) for v in range(n)),
    )


def direct_sum(parts: Sequence[Rep], alg: QuiverAlgebra | None = None, name: str = "") -> Rep:
    if not parts:
        if alg is None:
            raise RepError("empty direct sum needs the algebra")
        return zero_rep(alg)
    flat: list[Rep] = []
    for p in parts:
        if p.parts:
            flat.extend(p.parts)
        elif p.dim:
            flat.append(p)
    alg = parts[0].algebra
    if not flat:
        return zero_rep(alg)
    if len(flat) == 1:
        return flat[0]
    F = alg.field
    dims = tuple(sum(p.dims[v] for p in flat) for v in range(alg.n_vertices))
    maps = tuple(la.block_diag(F, [p.maps[k] for p in flat]) for k in range(len(alg.arrows)))
    tops = tuple(v for p in flat for v in p.tops) if all(p.tops is not None for p in flat) else None
    socs = tuple(v for p in flat for v in p.socs) if all(p.socs is not None for p in flat) else None
    name = name or "+".join(p.name or "?" for p in flat)
    return Rep(alg, dims, maps, tops=tops, socs=socs, parts=tuple(flat), name=name)


def regular_module(alg: QuiverAlgebra) -> Rep:
    return direct_sum([projective(alg, v) for v in range(alg.n_vertices)], name="Lambda")


def dual_regular_module(alg: QuiverAlgebra) -> Rep:
    return direct_sum([injective(alg, v) for v in range(alg.n_vertices)], name="DLambda")


def radical_power_quotient(alg: QuiverAlgebra, i: int) -> Rep:
    """``Lambda / rad^i``: the regular module with every path of length >= i killed."""
    if i < 1:
        raise RepError("radical power must be at least 1")
    F = alg.field
    pieces = []
    for v in range(alg.n_vertices):
        p = projective(alg, v)
        monos = alg.monomials_from(v)
        keep = [[k for k, m in enumerate(ms) if len(m) < i] for ms in monos]
        dims = tuple(len(k) for k in keep)
        maps = tuple(p.maps[k][np.ix_(keep[a.target], keep[a.source])] if dims[a.target] and dims[a.source]
                     else F.zeros(dims[a.target], dims[a.source]) for k, a in enumerate(alg.arrows))
        tops = (v,) if all(len(k) == d for k, d in zip(keep, p.dims)) else None
        pieces.append(Rep(alg, dims, maps, tops=tops, name=f"P{v}/r^{i}"))
    return direct_sum(pieces, alg, name=f"Lambda/r^{i}")


# ---------------------------------------------------------------------------
# maps out of projectives / into injectives


def _eval_block(y: Rep, v: int, vec: np.ndarray) -> list[np.ndarray]:
    """Per target vertex w: columns ``Y_m vec`` for the standard monomials m: v -> w."""
    F = y.field
    alg = y.algebra
    pm = y.path_matrices(v)
    out = []
    vec = vec.reshape(-1, 1)
    for w, ms in enumerate(alg.monomials_from(v)):
        if not ms:
            out.append(F.zeros(y.dims[w], 0))
            continue
        cols = [F.matmul(pm[m], vec) for m in ms]
        out.append(np.concatenate(cols, axis=1))
    return out


def map_from_projective(p: Rep, y: Rep, gen_images: Sequence[np.ndarray]) -> RepMap:
    """The map ``P -> Y`` sending the k-th generator ``e_{v_k}`` to ``gen_images[k]``."""
    if p.tops is None:
        raise RepError("source is not tagged as a projective sum")
    if len(gen_images) != len(p.tops):
        raise RepError("one generator image per projective summand required")
    F = y.field
    n = y.algebra.n_vertices
    blocks: list[list[np.ndarray]] = [[] for _ in range(n)]
    for v, img in zip(p.tops, gen_images):
        for w, b in enumerate(_eval_block(y, v, np.asarray(img))):
            blocks[w].append(b)
    mats = tuple(la.hstack(F, blocks[w], y.dims[w]) for w in range(n))
    return RepMap(p, y, mats)


def generator_positions(p: Rep) -> list[tuple[int, int]]:
    """(vertex, column) of each summand generator ``e_{v_k}`` in a projective sum."""
    alg = p.algebra
    acc = [0] * alg.n_vertices
    out = []
    for v in p.tops:
        out.append((v, acc[v]))
        for w, ms in enumerate(alg.monomials_from(v)):
            acc[w] += len(ms)
    return out


def generator_images(f: RepMap) -> list[np.ndarray]:
    return [f.mats[v][:, c].copy() for v, c in generator_positions(f.source)]


def _yoneda_basis(p: Rep, y: Rep) -> list[RepMap]:
    F = y.field
    out = []
    zero_imgs = [F.zeros(y.dims[v]) for v in p.tops]
    for k, v in enumerate(p.tops):
        for b in range(y.dims[v]):
            imgs = list(zero_imgs)
            e = F.zeros(y.dims[v])
            e[b] = F.one
            imgs[k] = e
            out.append(map_from_projective(p, y, imgs))
    return out


def map_to_injective(x: Rep, inj: Rep, functionals: Sequence[np.ndarray]) -> RepMap:
    """The map ``X -> I`` whose k-th component is induced by a functional on ``X_{u_k}``."""
    F = x.field
    alg = x.algebra
    n = alg.n_vertices
    rows: list[list[np.ndarray]] = [[] for _ in range(n)]
    for u, xi in zip(inj.socs, functionals):
        xi = np.asarray(xi).reshape(1, -1)
        for i, ms in enumerate(alg.monomials_to(u)):
            if not ms:
                continue
            pm = x.path_matrices(i)
            rows[i].append(np.concatenate([F.matmul(xi, pm[m]) for m in ms], axis=0))
    mats = tuple(la.vstack(F, rows[i], x.dims[i]) for i in range(n))
    return RepMap(x, inj, mats)


def _dual_yoneda_basis(x: Rep, inj: Rep) -> list[RepMap]:
    F = x.field
    out = []
    zero = [F.zeros(x.dims[u]) for u in inj.socs]
    for k, u in enumerate(inj.socs):
        for b in range(x.dims[u]):
            fs = list(zero)
            e = F.zeros(x.dims[u])
            e[b] = F.one
            fs[k] = e
            out.append(map_to_injective(x, inj, fs))
    return out


# ---------------------------------------------------------------------------
# Hom spaces


def _generic_hom(x: Rep, y: Rep) -> list[RepMap]:
    F = x.field
    alg = x.algebra
    n = alg.n_vertices
    sizes = [y.dims[v] * x.dims[v] for v in range(n)]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    total = int(offs[-1])
    if total == 0:
        return []
    blocks = []
    for k, a in enumerate(alg.arrows):
        i, j = a.source, a.target
        r = y.dims[j] * x.dims[i]
        if r == 0:
            continue
        row = F.zeros(r, total)
        if sizes[i]:
            row[:, offs[i]:offs[i + 1]] = np.kron(y.maps[k], F.eye(x.dims[i]))
        if sizes[j]:
            row[:, offs[j]:offs[j + 1]] = F.sub(row[:, offs[j]:offs[j + 1]], np.kron(F.eye(y.dims[j]), x.maps[k].T))
        blocks.append(F.reduce(row))
    if blocks:
        ker = la.kernel(F, np.concatenate(blocks, axis=0))
    else:
        ker = F.eye(total)
    out = []
    for c in range(ker.shape[1]):
        col = ker[:, c]
        mats = tuple(col[offs[v]:offs[v + 1]].reshape(y.dims[v], x.dims[v]) for v in range(n))
        out.append(RepMap(x, y, mats))
    return out


def _embed(f: RepMap, x: Rep, y: Rep, xo: list[int], yo: list[int]) -> RepMap:
    F = x.field
    mats = []
    for v, m in enumerate(f.mats):
        big = F.zeros(y.dims[v], x.dims[v])
        big[yo[v]:yo[v] + m.shape[0], xo[v]:xo[v] + m.shape[1]] = m
        mats.append(big)
    return RepMap(x, y, tuple(mats))


def hom_basis(x: Rep, y: Rep) -> list[RepMap]:
    """A basis of ``Hom(x, y)``."""
    if x.algebra is not y.algebra:
        raise RepError("modules over different algebras")
    if x.dim == 0 or y.dim == 0:
        return []
    if x.tops is not None:
        return _yoneda_basis(x, y)
    if y.socs is not None:
        return _dual_yoneda_basis(x, y)
    if x.parts or y.parts:
        xparts = x.parts or (x,)
        yparts = y.parts or (y,)
        xo = x.part_offsets or [[0] * len(x.dims)]
        yo = y.part_offsets or [[0] * len(y.dims)]
        out = []
        for a, xp in enumerate(xparts):
            for b, yp in enumerate(yparts):
                for f in hom_basis(xp, yp):
                    out.append(_embed(f, x, y, xo[a], yo[b]))
        return out
    return _hom_via_cover(x, y)


def _cover_data(x: Rep):
    if "cover" not in x._cache:
        F = x.field
        p, pi = projective_cover(x)
        kers = [la.kernel(F, m) if m.shape[1] else F.zeros(0, 0) for m in pi.mats]
        rights = [la.solve(F, m, F.eye(m.shape[0])) if m.shape[0] else F.zeros(m.shape[1], 0) for m in pi.mats]
        x._cache["cover"] = (p, pi, kers, rights)
    return x._cache["cover"]


def _hom_via_cover(x: Rep, y: Rep) -> list[RepMap]:
    """Maps out of the projective cover that vanish on its kernel, pushed down to x."""
    F = x.field
    p, _, kers, rights = _cover_data(x)
    cands = _yoneda_basis(p, y)
    if not cands:
        return []
    cols = []
    for f in cands:
        parts = [F.matmul(m, k).ravel() for m, k in zip(f.mats, kers) if k.shape[1] and m.shape[0]]
        cols.append(np.concatenate(parts) if parts else F.zeros(0))
    if cols[0].size:
        coeffs = la.kernel(F, np.stack(cols, axis=1))
    else:
        coeffs = F.eye(len(cands))
    out = []
    for c in range(coeffs.shape[1]):
        phi = linear_combination(coeffs[:, c], cands, p, y)
        out.append(RepMap(x, y, tuple(F.matmul(m, r) for m, r in zip(phi.mats, rights))))
    return out


def hom_dim(x: Rep, y: Rep) -> int:
    if x.dim == 0 or y.dim == 0:
        return 0
    if x.tops is not None:
        return sum(y.dims[v] for v in x.tops)
    if y.socs is not None:
        return sum(x.dims[u] for u in y.socs)
    if x.parts or y.parts:
        return sum(hom_dim(a, b) for a in (x.parts or (x,)) for b in (y.parts or (y,)))
    return len(_hom_via_cover(x, y))


def coordinates(maps: Sequence[RepMap], f: RepMap) -> np.ndarray | None:
    """Coordinates of ``f`` in the span of ``maps`` (None if outside)."""
    F = f.field
    if not maps:
        return F.zeros(0) if f.is_zero() else None
    a = np.stack([g.flat() for g in maps], axis=1)
    x = la.solve(F, a, f.flat().reshape(-1, 1))
    return None if x is None else x.ravel()


def part_inclusion(x: Rep, a: int) -> RepMap:
    part = x.parts[a]
    return _embed(identity_map(part), part, x, [0] * len(x.dims), x.part_offsets[a])


def part_projection(x: Rep, a: int) -> RepMap:
    F = x.field
    part = x.parts[a]
    mats = []
    for v in range(len(x.dims)):
        m = F.zeros(part.dims[v], x.dims[v])
        o = x.part_offsets[a][v]
        m[:, o:o + part.dims[v]] = F.eye(part.dims[v])
        mats.append(m)
    return RepMap(x, part, tuple(mats))


# ---------------------------------------------------------------------------
# sub- and quotient modules


def submodule(x: Rep, bases: Sequence[np.ndarray], name: str = "") -> tuple[Rep, RepMap]:
    """Submodule spanned by independent columns per vertex (assumed arrow-stable)."""
    F = x.field
    alg = x.algebra
    inv = [la.left_inverse(F, b) for b in bases]
    dims = tuple(b.shape[1] for b in bases)
    maps = []
    for k, a in enumerate(alg.arrows):
        i, j = a.source, a.target
        if dims[i] == 0 or dims[j] == 0:
            maps.append(F.zeros(dims[j], dims[i]))
            continue
        img = F.matmul(x.maps[k], bases[i])
        piv, li = inv[j]
        maps.append(F.matmul(li, img[piv, :]))
    sub = Rep(alg, dims, tuple(maps), name=name)
    return sub, RepMap(sub, x, tuple(bases))


def quotient(x: Rep, bases: Sequence[np.ndarray], name: str = "") -> tuple[Rep, RepMap, list[np.ndarray]]:
    """Quotient by an arrow-stable subspace; also returns per-vertex sections."""
    F = x.field
    alg = x.algebra
    qs, ss = [], []
    for v, b in enumerate(bases):
        q, s = la.quotient_projection(F, b, x.dims[v])
        qs.append(q)
        ss.append(s)
    dims = tuple(q.shape[0] for q in qs)
    maps = tuple(F.matmul(qs[a.target], F.matmul(x.maps[k], ss[a.source])) for k, a in enumerate(alg.arrows))
    quo = Rep(alg, dims, maps, name=name)
    return quo, RepMap(x, quo, tuple(qs)), ss


@dataclass(frozen=True)
class Factorization:
    kernel: Rep
    kernel_inclusion: RepMap
    image: Rep
    image_epi: RepMap
    image_mono: RepMap
    cokernel: Rep
    cokernel_projection: RepMap


def map_factorization(f: RepMap) -> Factorization:
    F = f.field
    x, y = f.source, f.target
    kers, ims = [], []
    for v, m in enumerate(f.mats):
        kers.append(la.kernel(F, m) if m.shape[1] else F.zeros(0, 0))
        ims.append(la.column_basis(F, m) if m.shape[1] else F.zeros(m.shape[0], 0))
    ker, inc = submodule(x, kers, name="ker")
    img, mono = submodule(y, ims, name="im")
    epi_mats = []
    for v, m in enumerate(f.mats):
        if img.dims[v] == 0:
            epi_mats.append(F.zeros(0, x.dims[v]))
            continue
        piv, li = la.left_inverse(F, ims[v])
        epi_mats.append(F.matmul(li, m[piv, :]))
    epi = RepMap(x, img, tuple(epi_mats))
    cok, proj, _ = quotient(y, ims, name="coker")
    return Factorization(ker, inc, img, epi, mono, cok, proj)


def kernel_of(f: RepMap) -> tuple[Rep, RepMap]:
    F = f.field
    kers = [la.kernel(F, m) if m.shape[1] else F.zeros(0, 0) for m in f.mats]
    return submodule(f.source, kers, name="ker")


def image_of(f: RepMap) -> tuple[Rep, RepMap, RepMap]:
    fac = map_factorization(f)
    return fac.image, fac.image_epi, fac.image_mono


def radical_bases(x: Rep) -> list[np.ndarray]:
    F = x.field
    alg = x.algebra
    out = []
    for v in range(alg.n_vertices):
        incoming = [x.maps[k] for k, a in enumerate(alg.arrows) if a.target == v and x.dims[a.source]]
        if not incoming or x.dims[v] == 0:
            out.append(F.zeros(x.dims[v], 0))
            continue
        out.append(la.column_basis(F, np.concatenate(incoming, axis=1)))
    return out


@dataclass(frozen=True)
class RadicalTop:
    radical: Rep
    inclusion: RepMap
    top: Rep
    projection: RepMap
    sections: list


def radical_and_top(x: Rep) -> RadicalTop:
    rb = radical_bases(x)
    rad, inc = submodule(x, rb, name=f"rad {x.name}".strip())
    top, proj, ss = quotient(x, rb, name=f"top {x.name}".strip())
    return RadicalTop(rad, inc, top, proj, ss)


def top_multiplicities(x: Rep) -> list[int]:
    return [x.dims[v] - b.shape[1] for v, b in enumerate(radical_bases(x))]


def projective_sum(alg: QuiverAlgebra, tops: Sequence[int]) -> Rep:
    return direct_sum([projective(alg, v) for v in tops], alg)


def projective_cover(x: Rep) -> tuple[Rep, RepMap]:
    """Minimal projective cover; generators are lifts of a basis of the top."""
    if x.dim == 0:
        raise RepError("the zero module has no projective cover")
    F = x.field
    alg = x.algebra
    rb = radical_bases(x)
    tops, gens = [], []
    for v in range(alg.n_vertices):
        _, s = la.quotient_projection(F, rb[v], x.dims[v])
        for c in range(s.shape[1]):
            tops.append(v)
            gens.append(s[:, c])
    p = projective_sum(alg, tops)
    return p, map_from_projective(p, x, gens)


def projective_dim_of(alg: QuiverAlgebra, tops: Sequence[int]) -> int:
    return sum(projective(alg, v).dim for v in tops)


def is_projective(x: Rep) -> bool:
    if x.dim == 0:
        return True
    mult = top_multiplicities(x)
    return x.dim == sum(m * projective(x.algebra, v).dim for v, m in enumerate(mult))


def is_generator(m: Rep) -> bool:
    """True iff every indecomposable projective is a summand of m.

    P_v is local, so it is a summand iff some map m -> P_v is onto, iff some
    Hom basis element reaches the generator e_v outside the radical.
    """
    alg = m.algebra
    parts = m.parts or (m,)
    for v in range(alg.n_vertices):
        pv = projective(alg, v)
        found = False
        for part in parts:
            if part.tops is not None:
                if v in part.tops:
                    found = True
                    break
                continue
            for f in hom_basis(part, pv):
                if np.any(f.mats[v][0, :] != 0):
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def generated_submodule(x: Rep, vertex_elems: Sequence[tuple[int, np.ndarray]]) -> tuple[Rep, RepMap]:
    """Submodule generated by elements ``(v, x_v)``."""
    alg = x.algebra
    p = projective_sum(alg, [v for v, _ in vertex_elems])
    f = map_from_projective(p, x, [e for _, e in vertex_elems])
    img, _, mono = image_of(f)
    return img, mono
