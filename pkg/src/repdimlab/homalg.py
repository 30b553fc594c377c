"""Projective resolutions, Ext, global dimension and M-resolutions."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .decompose import decompose
from .quiver import QuiverAlgebra
from .reps import (Rep, RepError, RepMap, direct_sum, generator_images, hom_basis, identity_map,
                   is_generator, kernel_of, projective_cover, simple, _yoneda_basis)

DEFAULT_CUTOFF = 32


class TruncationError(RuntimeError):
    """A requested degree lies beyond the computed part of a truncated resolution."""


@dataclass(frozen=True)
class PdValue:
    kind: str  # "exact" or "at_least"
    value: int

    @classmethod
    def exact(cls, v: int) -> PdValue:
        return cls("exact", v)

    @classmethod
    def at_least(cls, v: int) -> PdValue:
        return cls("at_least", v)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def __str__(self):
        return str(self.value) if self.is_exact else f">={self.value}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "value": self.value}

    @classmethod
    def from_json(cls, d: dict) -> PdValue:
        return cls(d["kind"], int(d["value"]))

    def at_least_value(self, n: int) -> bool:
        """Whether the true value is known to be >= n."""
        return self.value >= n

    def at_most_value(self, n: int) -> bool:
        """Whether the true value is known to be <= n."""
        return self.is_exact and self.value <= n


def max_pd(values) -> PdValue:
    values = list(values)
    if not values:
        return PdValue.exact(0)
    top = max(v.value for v in values)
    if all(v.is_exact for v in values):
        return PdValue.exact(top)
    return PdValue.at_least(top)


@dataclass
class Resolution:
    module: Rep
    modules: list[Rep]
    differentials: list[RepMap]  # differentials[i]: P_{i+1} -> P_i
    augmentation: RepMap | None
    covers: list[RepMap]  # covers[i]: P_i -> syzygies[i]
    syzygies: list[Rep]  # syzygies[0] = module
    inclusions: list[RepMap]  # inclusions[i]: syzygies[i+1] -> P_i
    minimal: bool = True
    truncated_at: int | None = None

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    @property
    def pd(self) -> PdValue:
        if self.truncated_at is not None:
            return PdValue.at_least(self.truncated_at)
        return PdValue.exact(max(self.length, 0))

    def betti(self) -> list[list[int]]:
        n = self.module.algebra.n_vertices
        out = []
        for p in self.modules:
            row = [0] * n
            for v in p.tops:
                row[v] += 1
            out.append(row)
        return out

    def check(self) -> list[str]:
        """Re-derive the defining properties; returns a list of failures."""
        errs = []
        for i, d in enumerate(self.differentials):
            if not d.is_intertwiner():
                errs.append(f"d{i + 1} is not a module map")
            prev = self.augmentation if i == 0 else self.differentials[i - 1]
            if not prev.compose(d).is_zero():
                errs.append(f"d{i} d{i + 1} != 0")
        if self.augmentation is not None and not self.augmentation.is_surjective():
            errs.append("augmentation not onto")
        # exactness by rank bookkeeping: dim ker d_i = rank d_{i+1}
        maps = ([self.augmentation] if self.augmentation is not None else []) + list(self.differentials)
        for i in range(len(maps) - 1):
            ker = [a - r for a, r in zip(maps[i].source.dims, maps[i].ranks())]
            if ker != maps[i + 1].ranks():
                errs.append(f"not exact at P{i}")
        if self.truncated_at is None and maps:
            last = maps[-1]
            if not last.is_injective():
                errs.append("last map not injective")
        if self.minimal:
            for i, d in enumerate(self.differentials):
                if not _lands_in_radical(d):
                    errs.append(f"d{i + 1} not radical")
        return errs


def _lands_in_radical(f: RepMap) -> bool:
    from .reps import radical_bases
    F = f.field
    rb = radical_bases(f.target)
    for v, m in enumerate(f.mats):
        if m.size == 0:
            continue
        if la.rank(F, np.concatenate([rb[v], m], axis=1)) != rb[v].shape[1]:
            return False
    return True


def min_proj_resolution(x: Rep, cutoff: int = DEFAULT_CUTOFF) -> Resolution:
    """Iterated projective covers.  Computes P_0 .. P_{cutoff-1} at most."""
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if x.dim == 0:
        return Resolution(x, [], [], None, [], [x], [])
    modules, diffs, covers, syz, incs = [], [], [], [x], []
    aug = None
    current = x
    for i in range(cutoff):
        p, pi = projective_cover(current)
        modules.append(p)
        covers.append(pi)
        k, inc = kernel_of(pi)
        if i == 0:
            aug = pi
        else:
            diffs.append(incs[-1].compose(pi))
        syz.append(k)
        incs.append(inc)
        if k.dim == 0:
            return Resolution(x, modules, diffs, aug, covers, syz, incs)
        current = k
    return Resolution(x, modules, diffs, aug, covers, syz, incs, truncated_at=cutoff)


def projective_dimension(x: Rep, cutoff: int = DEFAULT_CUTOFF) -> PdValue:
    return min_proj_resolution(x, cutoff).pd


def global_dimension(alg: QuiverAlgebra, cutoff: int = DEFAULT_CUTOFF) -> PdValue:
    return max_pd(projective_dimension(simple(alg, v), cutoff) for v in range(alg.n_vertices))


def simple_pds(alg: QuiverAlgebra, cutoff: int = DEFAULT_CUTOFF) -> list[PdValue]:
    return [projective_dimension(simple(alg, v), cutoff) for v in range(alg.n_vertices)]


def _precompose_matrix(p: Rep, y: Rep, g: RepMap) -> np.ndarray:
    """Matrix of ``phi -> phi o g`` on the Yoneda basis of Hom(P, Y), flattened outputs."""
    F = y.field
    basis = _yoneda_basis(p, y)
    if not basis:
        return F.zeros(0, 0)
    cols = []
    for phi in basis:
        c = phi.compose(g)
        if g.source.tops is not None:
            vec = generator_images(c)
            cols.append(np.concatenate(vec) if vec else F.zeros(0))
        else:
            cols.append(c.flat())
    return np.stack(cols, axis=1)


def ext_dim(x: Rep, y: Rep, i: int, cutoff: int = DEFAULT_CUTOFF, res: Resolution | None = None) -> int:
    """``dim Ext^i(x, y)`` from a minimal projective resolution of x."""
    if i < 0:
        raise ValueError("negative degree")
    if i > cutoff:
        raise TruncationError(f"degree {i} exceeds cutoff {cutoff}")
    res = res if res is not None else min_proj_resolution(x, max(cutoff, i + 1))
    if i >= len(res.modules):
        if res.truncated_at is not None:
            raise TruncationError(f"resolution truncated at {res.truncated_at}; raise the cutoff above {i}")
        return 0
    F = y.field
    p = res.modules[i]
    hom = sum(y.dims[v] for v in p.tops)
    if hom == 0:
        return 0
    out_rank = 0
    inc = res.inclusions[i]
    if inc.source.dim:
        m = _precompose_matrix(p, y, inc)
        out_rank = la.rank(F, m) if m.size else 0
    in_rank = 0
    if i >= 1:
        m = _precompose_matrix(res.modules[i - 1], y, res.differentials[i - 1])
        in_rank = la.rank(F, m) if m.size else 0
    return hom - out_rank - in_rank


# ---------------------------------------------------------------------------
# M-resolutions


class NotAGenerator(RepError):
    pass


def in_add(x: Rep, summands: list[Rep]) -> bool:
    """Whether x is a summand of a sum of copies of the given modules.

    Equivalent to ``id_x`` factoring through such a sum, a linear condition.
    """
    if x.dim == 0:
        return True
    F = x.field
    target = identity_map(x).flat()
    vecs = []
    for m in summands:
        into = hom_basis(m, x)
        if not into:
            continue
        out = hom_basis(x, m)
        for a in into:
            for b in out:
                vecs.append(a.compose(b).flat())
    if not vecs:
        return False
    basis = la.IncrementalBasis(F, target.size)
    for v in vecs:
        basis.add(v)
        if basis.contains(target):
            return True
    return False


@dataclass
class MStage:
    source: Rep  # the module being approximated
    approximation: Rep  # sum of summand copies; at the last stage isomorphic to source
    copies: list[int]  # summand index of each copy
    universal_copies: list[int]
    epi: RepMap
    kernel: Rep
    kernel_inclusion: RepMap


@dataclass
class MResolution:
    generator: Rep
    target: Rep
    summands: list[Rep]
    stages: list[MStage] = field(default_factory=list)
    length: int | None = None
    truncated_at: int | None = None

    @property
    def modules(self) -> list[Rep]:
        return [s.approximation for s in self.stages]

    def multiplicities(self) -> list[list[int]]:
        k = len(self.summands)
        out = []
        for s in self.stages:
            row = [0] * k
            for c in s.copies:
                row[c] += 1
            out.append(row)
        return out

    @property
    def pd(self) -> PdValue:
        if self.length is None:
            return PdValue.at_least(self.truncated_at)
        return PdValue.exact(self.length)

    def check(self) -> list[str]:
        """Exactness, and exactness after Hom(M_j, -) for every summand, by dimension counts."""
        errs = []
        for i, s in enumerate(self.stages):
            if not s.epi.is_intertwiner() or not s.epi.is_surjective():
                errs.append(f"stage {i}: approximation is not an epimorphism")
            if not s.epi.compose(s.kernel_inclusion).is_zero() or not s.kernel_inclusion.is_injective():
                errs.append(f"stage {i}: kernel map wrong")
            if [a - b for a, b in zip(s.approximation.dims, s.source.dims)] != list(s.kernel.dims):
                errs.append(f"stage {i}: dimensions do not add up")
            F = s.source.field
            for j, mj in enumerate(self.summands):
                target = hom_basis(mj, s.source)
                if not target:
                    continue
                imgs = [s.epi.compose(h).flat() for h in hom_basis(mj, s.approximation)]
                r = la.rank(F, np.stack(imgs, axis=1)) if imgs else 0
                if r != len(target):
                    errs.append(f"stage {i}: Hom(M{j}, -) not onto")
        return errs


def _copy_sum(summands: list[Rep], copies: list[int], alg) -> Rep:
    return direct_sum([summands[c] for c in copies], alg)


def _approximation(x: Rep, summands: list[Rep], hom_into: list[list[RepMap]], stats: dict):
    """Minimized right add(M)-approximation of x."""
    F = x.field
    alg = x.algebra
    copies, phis = [], []
    for j, maps in enumerate(hom_into):
        for f in maps:
            copies.append(j)
            phis.append(f)
    universal = list(copies)
    targets = [len(h) for h in hom_into]
    # products[c][j]: flattened phi_c o h for h in Hom(M_j, M_{copy c})
    homs = {}
    products = []
    for c, phi in enumerate(phis):
        row = []
        for j in range(len(summands)):
            key = (j, copies[c])
            if key not in homs:
                homs[key] = hom_basis(summands[j], summands[copies[c]])
            row.append([phi.compose(h).flat() for h in homs[key]])
        products.append(row)

    def onto(keep: list[int]) -> bool:
        for j in range(len(summands)):
            if targets[j] == 0:
                continue
            vecs = [v for c in keep for v in products[c][j]]
            if len(vecs) < targets[j]:
                return False
            if la.rank(F, np.stack(vecs, axis=1)) < targets[j]:
                return False
        return True

    keep = list(range(len(phis)))
    for c in reversed(range(len(phis))):
        trial = [k for k in keep if k != c]
        if onto(trial):
            keep = trial
    stats["approx_dropped"] = stats.get("approx_dropped", 0) + len(phis) - len(keep)
    kept_copies = [copies[c] for c in keep]
    src = _copy_sum(summands, kept_copies, alg)
    mats = []
    for v in range(alg.n_vertices):
        blocks = [phis[c].mats[v] for c in keep]
        mats.append(la.hstack(F, blocks, x.dims[v]))
    epi = RepMap(src, x, tuple(mats))
    return src, kept_copies, universal, epi


def m_resolution(m: Rep, x: Rep, cutoff: int = DEFAULT_CUTOFF, rng=None) -> MResolution:
    if not is_generator(m):
        raise NotAGenerator("M-resolutions need a generator")
    rep = decompose(m, rng=rng)
    summands = rep.classes
    res = MResolution(m, x, summands)
    current = x
    stats: dict = {}
    for i in range(cutoff + 1):
        if in_add(current, summands):
            # a minimal approximation of a module in add M is an isomorphism
            if current.dim:
                hom_into = [hom_basis(mj, current) for mj in summands]
                src, copies, universal, epi = _approximation(current, summands, hom_into, stats)
            else:
                src, copies, universal, epi = current, [], [], identity_map(current)
            k, inc = kernel_of(epi)
            if k.dim:
                raise RepError("approximation of a module in add M is not injective")
            res.stages.append(MStage(current, src, copies, universal, epi, k, inc))
            res.length = i
            return res
        if i == cutoff:
            break
        hom_into = [hom_basis(mj, current) for mj in summands]
        src, copies, universal, epi = _approximation(current, summands, hom_into, stats)
        k, inc = kernel_of(epi)
        res.stages.append(MStage(current, src, copies, universal, epi, k, inc))
        current = k
    res.truncated_at = cutoff
    return res


def hom_exactness_dims(res: MResolution) -> list[list[tuple[int, int, int]]]:
    """Per stage and summand: (dim Hom(M_j, kernel), dim Hom(M_j, approx), dim Hom(M_j, source))."""
    from .reps import hom_dim
    out = []
    for s in res.stages:
        out.append([(hom_dim(mj, s.kernel), hom_dim(mj, s.approximation), hom_dim(mj, s.source))
                    for mj in res.summands])
    return out
