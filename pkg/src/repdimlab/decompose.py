"""Krull-Schmidt decomposition of representations."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .reps import (Rep, RepMap, direct_sum, hom_basis, identity_map, part_inclusion, part_projection,
                   submodule)
from .splitting import InconclusiveError, primitive_idempotents


@dataclass
class Summand:
    module: Rep
    inclusion: RepMap
    projection: RepMap
    iso_class: int = -1
    # iso from the class representative onto this summand
    witness: RepMap | None = None


@dataclass
class DecompositionReport:
    module: Rep
    summands: list[Summand]
    classes: list[Rep]
    multiplicities: list[int]
    draws: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def basic_summands(self) -> list[Rep]:
        return list(self.classes)

    @property
    def summands_with_multiplicity(self) -> list[tuple[Rep, int]]:
        return list(zip(self.classes, self.multiplicities))

    def iso_witnesses(self) -> tuple[Rep, RepMap, RepMap]:
        """``(S, X -> S, S -> X)`` with S the direct sum of class representatives,
        one copy per summand occurrence, and the two maps mutually inverse."""
        x = self.module
        F = x.field
        order = sorted(range(len(self.summands)), key=lambda i: self.summands[i].iso_class)
        reps = [self.classes[self.summands[i].iso_class] for i in order]
        total = direct_sum(reps, x.algebra)
        offs = [0] * len(x.dims)
        to_mats = [F.zeros(total.dims[v], x.dims[v]) for v in range(len(x.dims))]
        from_mats = [F.zeros(x.dims[v], total.dims[v]) for v in range(len(x.dims))]
        for i in order:
            s = self.summands[i]
            w = s.witness
            for v in range(len(x.dims)):
                d = w.source.dims[v]
                if d == 0:
                    continue
                winv = la.inverse(F, w.mats[v])
                to_mats[v][offs[v]:offs[v] + d, :] = F.matmul(winv, s.projection.mats[v])
                from_mats[v][:, offs[v]:offs[v] + d] = F.matmul(s.inclusion.mats[v], w.mats[v])
                offs[v] += d
        return total, RepMap(x, total, tuple(to_mats)), RepMap(total, x, tuple(from_mats))

    def verify(self) -> bool:
        """Inclusions and projections form a complete orthogonal system."""
        x = self.module
        F = x.field
        total = [F.zeros(d, d) for d in x.dims]
        for i, s in enumerate(self.summands):
            for j, t in enumerate(self.summands):
                comp = t.projection.compose(s.inclusion)
                want = identity_map(s.module) if i == j else None
                if want is not None:
                    if not all(F.equal(a, b) for a, b in zip(comp.mats, want.mats)):
                        return False
                elif not comp.is_zero():
                    return False
            ep = s.inclusion.compose(s.projection)
            total = [F.add(a, b) for a, b in zip(total, ep.mats)]
            if s.witness is not None:
                if not (s.witness.is_intertwiner() and s.witness.is_iso()):
                    return False
        if not all(F.equal(a, F.eye(a.shape[0])) for a in total):
            return False
        for a in range(len(self.classes)):
            for b in range(a + 1, len(self.classes)):
                if find_iso(self.classes[a], self.classes[b]) is not None:
                    return False
        total_rep, fwd, back = self.iso_witnesses()
        if not (fwd.is_intertwiner() and back.is_intertwiner()):
            return False
        return (all(F.equal(m, F.eye(m.shape[0])) for m in fwd.compose(back).mats)
                and all(F.equal(m, F.eye(m.shape[0])) for m in back.compose(fwd).mats))


def _split_by_vertex(x: Rep, mat: np.ndarray) -> list[np.ndarray]:
    out = []
    for v, d in enumerate(x.dims):
        o = x.offsets[v]
        out.append(mat[o:o + d, o:o + d])
    return out


def _decompose_single(x: Rep, rng, budget, stats) -> list[Summand]:
    F = x.field
    ends = hom_basis(x, x)
    if len(ends) == 1:
        return [Summand(x, identity_map(x), identity_map(x))]
    gens = [f.total() for f in ends]
    unit = F.eye(x.dim)
    idems = primitive_idempotents(F, gens, unit, rng, budget, stats)
    if len(idems) == 1:
        return [Summand(x, identity_map(x), identity_map(x))]
    out = []
    for e in idems:
        blocks = _split_by_vertex(x, e)
        bases = [la.column_basis(F, b) if b.shape[0] else F.zeros(0, 0) for b in blocks]
        sub, inc = submodule(x, bases, name="")
        proj_mats = []
        for v, (b, basis) in enumerate(zip(blocks, bases)):
            if basis.shape[1] == 0:
                proj_mats.append(F.zeros(0, x.dims[v]))
                continue
            piv, li = la.left_inverse(F, basis)
            proj_mats.append(F.matmul(li, b[piv, :]))
        out.append(Summand(sub, inc, RepMap(x, sub, tuple(proj_mats))))
    return out


def find_iso(a: Rep, b: Rep) -> RepMap | None:
    """An isomorphism ``a -> b`` between modules with local endomorphism rings, or None.

    For local modules, ``a`` and ``b`` are isomorphic iff some composite
    ``g f`` of basis maps is invertible; such an ``f`` is then an iso.
    """
    if a.dims != b.dims:
        return None
    fs = hom_basis(a, b)
    if not fs:
        return None
    gs = hom_basis(b, a)
    for f in fs:
        if not f.is_injective():
            continue
        for g in gs:
            if g.compose(f).is_injective():
                return f
    return None


def decompose(x: Rep, rng: np.random.Generator | None = None, budget: int = 20) -> DecompositionReport:
    """Split ``x`` into indecomposables and group them by isomorphism class.

    Raises :class:`InconclusiveError` if a randomized splitting step fails.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    stats = {"draws": 0}
    summands: list[Summand] = []
    if x.parts:
        for a, part in enumerate(x.parts):
            inc, proj = part_inclusion(x, a), part_projection(x, a)
            for s in _decompose_single(part, rng, budget, stats):
                summands.append(Summand(s.module, inc.compose(s.inclusion), s.projection.compose(proj)))
    elif x.dim:
        summands = _decompose_single(x, rng, budget, stats)
    classes: list[Rep] = []
    mult: list[int] = []
    for s in summands:
        for k, rep in enumerate(classes):
            w = find_iso(rep, s.module)
            if w is not None:
                s.iso_class, s.witness = k, w
                mult[k] += 1
                break
        else:
            s.iso_class = len(classes)
            s.witness = identity_map(s.module)
            classes.append(s.module)
            mult.append(1)
    for k, rep in enumerate(classes):
        if not rep.name:
            object.__setattr__(rep, "name", f"{x.name or 'X'}[{k}]")
    return DecompositionReport(x, summands, classes, mult, draws=stats["draws"])


__all__ = ["DecompositionReport", "InconclusiveError", "Summand", "decompose", "find_iso"]
