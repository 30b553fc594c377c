"""Bounded complexes of modules, the projective-tower upper bound on level and
the Ext obstruction lower bound, both as checkable certificates.

Complexes are homologically indexed: ``d_i : X_i -> X_{i-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .homalg import DEFAULT_CUTOFF, PdValue, min_proj_resolution, projective_dimension
from .quiver import QuiverAlgebra
from .reps import (Rep, RepMap, direct_sum, generator_images, is_projective, kernel_of, map_from_projective,
                   projective_cover, quotient, submodule, zero_map, zero_rep, _yoneda_basis)
from . import serialize as ser


class ComplexError(ValueError):
    pass


class NoObstruction(Exception):
    """No Ext obstruction exists in the requested degree (projective dimension too small)."""


@dataclass(frozen=True, eq=False)
class RepComplex:
    algebra: QuiverAlgebra
    lo: int
    terms: tuple[Rep, ...]
    diffs: tuple[RepMap, ...]  # diffs[k]: X_{lo+k+1} -> X_{lo+k}

    def __post_init__(self):
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ComplexError("need one differential between consecutive terms")
        for k, d in enumerate(self.diffs):
            if d.source is not self.terms[k + 1] or d.target is not self.terms[k]:
                raise ComplexError(f"differential {self.lo + k + 1} has wrong ends")
            if k + 1 < len(self.diffs) and not d.compose(self.diffs[k + 1]).is_zero():
                raise ComplexError(f"d^2 != 0 at degree {self.lo + k}")

    @classmethod
    def concentrated(cls, x: Rep, degree: int = 0) -> RepComplex:
        return cls(x.algebra, degree, (x,), ())

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, i: int) -> Rep:
        if self.lo <= i <= self.hi:
            return self.terms[i - self.lo]
        return zero_rep(self.algebra)

    def diff(self, i: int) -> RepMap:
        """``d_i : X_i -> X_{i-1}``."""
        if self.lo < i <= self.hi:
            return self.diffs[i - self.lo - 1]
        return zero_map(self.term(i), self.term(i - 1))

    def is_zero(self) -> bool:
        return all(t.dim == 0 for t in self.terms)


@dataclass
class PartsAt:
    cycles: Rep
    cycles_inclusion: RepMap  # Z_i -> X_i
    boundaries: Rep
    boundaries_in_cycles: RepMap  # B_i -> Z_i
    homology: Rep
    homology_projection: RepMap  # Z_i -> H_i
    homology_sections: list  # per vertex: H_v -> Z_v
    corestriction: RepMap  # X_i -> B_{i-1}
    boundaries_right_inverse: list  # per vertex: B_{i-1,v} -> X_{i,v}


@dataclass
class ComplexParts:
    complex: RepComplex
    parts: dict[int, PartsAt]

    def boundaries(self, i: int) -> Rep:
        return self.parts[i].boundaries if i in self.parts else zero_rep(self.complex.algebra)

    def homology(self, i: int) -> Rep:
        return self.parts[i].homology if i in self.parts else zero_rep(self.complex.algebra)

    def cycles(self, i: int) -> Rep:
        return self.parts[i].cycles if i in self.parts else zero_rep(self.complex.algebra)


def complex_parts(c: RepComplex) -> ComplexParts:
    F = c.algebra.field
    n = c.algebra.n_vertices
    # boundaries of X_{i} as column bases
    bcols = {}
    for i in range(c.lo - 1, c.hi + 1):
        d = c.diff(i + 1)
        bcols[i] = [la.column_basis(F, m) if m.size else F.zeros(m.shape[0], 0) for m in d.mats]
    out = {}
    for i in c.degrees:
        x = c.term(i)
        d = c.diff(i)
        zcols = [la.kernel(F, m) if m.shape[1] else F.zeros(0, 0) for m in d.mats]
        z, zinc = submodule(x, zcols, name=f"Z{i}")
        # B_i inside Z_i
        bz = []
        for v in range(n):
            if bcols[i][v].shape[1] == 0:
                bz.append(F.zeros(z.dims[v], 0))
                continue
            piv, li = la.left_inverse(F, zcols[v])
            bz.append(F.matmul(li, bcols[i][v][piv, :]))
        b, binc = submodule(z, bz, name=f"B{i}")
        h, hproj, hsec = quotient(z, bz, name=f"H{i}")
        # X_i -> B_{i-1}
        prev = bcols[i - 1]
        co, rinv = [], []
        for v in range(n):
            if prev[v].shape[1] == 0:
                co.append(F.zeros(0, x.dims[v]))
                rinv.append(F.zeros(x.dims[v], 0))
                continue
            piv, li = la.left_inverse(F, prev[v])
            cv = F.matmul(li, d.mats[v][piv, :])
            co.append(cv)
            rinv.append(la.solve(F, cv, F.eye(cv.shape[0])))
        bprev, _ = submodule(c.term(i - 1), prev, name=f"B{i - 1}")
        corest = RepMap(x, bprev, tuple(co))
        out[i] = PartsAt(z, zinc, b, binc, h, hproj, hsec, corest, rinv)
    # boundaries objects must agree between degree i (as B_i) and degree i+1 (as target of X_{i+1} -> B_i)
    for i in c.degrees:
        if i + 1 in out:
            out[i + 1].corestriction = RepMap(c.term(i + 1), out[i].boundaries, out[i + 1].corestriction.mats)
    return ComplexParts(c, out)


# ---------------------------------------------------------------------------
# projective tower


@dataclass
class TowerStep:
    projective: RepComplex
    epi: list[RepMap]  # per degree, P_i -> X_i
    syzygy: RepComplex
    kernel_inclusions: list[RepMap]  # per degree, K_i -> P_i (K_i sits in degree i+1 of the syzygy)


def _cover_or_zero(x: Rep):
    if x.dim == 0:
        z = zero_rep(x.algebra)
        return z, zero_map(z, x)
    return projective_cover(x)


def christensen_step(c: RepComplex) -> TowerStep:
    alg = c.algebra
    F = alg.field
    parts = complex_parts(c)
    n = alg.n_vertices
    covB = {i: _cover_or_zero(parts.boundaries(i)) for i in c.degrees}
    covH = {i: _cover_or_zero(parts.homology(i)) for i in c.degrees}
    zero_cov = _cover_or_zero(zero_rep(alg))
    terms, epis, blocks = [], [], []
    for i in c.degrees:
        pa = parts.parts[i]
        pb, pib = covB[i]
        ph, pih = covH[i]
        pbp, pibp = covB.get(i - 1, zero_cov)
        x = c.term(i)
        p = direct_sum([pb, ph, pbp], alg)
        if p.dim and p.tops is None:
            raise ComplexError("projective sum lost its tags")
        gens = []
        # boundaries: through B_i -> Z_i -> X_i
        for y in generator_images(pib) if pb.dim else []:
            gens.append(y)
        gens_b = [F.matmul(pa.cycles_inclusion.mats[v], F.matmul(pa.boundaries_in_cycles.mats[v], y.reshape(-1, 1))).ravel()
                  for (v, _), y in zip(_positions(pb), gens)]
        gens_h = []
        for (v, _), y in zip(_positions(ph), generator_images(pih) if ph.dim else []):
            zv = F.matmul(pa.homology_sections[v], y.reshape(-1, 1))
            gens_h.append(F.matmul(pa.cycles_inclusion.mats[v], zv).ravel())
        gens_bp = []
        for (v, _), y in zip(_positions(pbp), generator_images(pibp) if pbp.dim else []):
            gens_bp.append(F.matmul(pa.boundaries_right_inverse[v], y.reshape(-1, 1)).ravel())
        imgs = gens_b + gens_h + gens_bp
        epi = map_from_projective(p, x, imgs) if p.dim else zero_map(p, x)
        terms.append(p)
        epis.append(epi)
        blocks.append((pb.dims, ph.dims, pbp.dims))
    # differential: the P^{B_{i-1}} block of P_i maps identically onto the P^{B_{i-1}} block of P_{i-1}
    diffs = []
    for k in range(1, len(terms)):
        src, tgt = terms[k], terms[k - 1]
        mats = []
        for v in range(n):
            m = F.zeros(tgt.dims[v], src.dims[v])
            off = blocks[k][0][v] + blocks[k][1][v]
            size = blocks[k][2][v]
            m[0:size, off:off + size] = F.eye(size)
            mats.append(m)
        diffs.append(RepMap(src, tgt, tuple(mats)))
    pc = RepComplex(alg, c.lo, tuple(terms), tuple(diffs))
    # degreewise kernels, shifted up by one with negated differential
    kers, incs = [], []
    for epi in epis:
        k, inc = kernel_of(epi)
        kers.append(k)
        incs.append(inc)
    kdiffs = []
    for j in range(1, len(kers)):
        d = diffs[j - 1]
        mats = []
        for v in range(n):
            img = F.matmul(d.mats[v], incs[j].mats[v])
            if kers[j - 1].dims[v] == 0:
                mats.append(F.zeros(0, kers[j].dims[v]))
                continue
            piv, li = la.left_inverse(F, incs[j - 1].mats[v])
            mats.append(F.neg(F.matmul(li, img[piv, :])))
        kdiffs.append(RepMap(kers[j], kers[j - 1], tuple(mats)))
    syz = RepComplex(alg, c.lo + 1, tuple(kers), tuple(kdiffs))
    return TowerStep(pc, epis, syz, incs)


def _positions(p: Rep):
    from .reps import generator_positions
    return generator_positions(p) if p.dim else []


def parts_pd(c: RepComplex, cutoff: int = DEFAULT_CUTOFF) -> dict[str, PdValue]:
    parts = complex_parts(c)
    out = {}
    for i in c.degrees:
        out[f"B{i}"] = projective_dimension(parts.boundaries(i), cutoff)
        out[f"H{i}"] = projective_dimension(parts.homology(i), cutoff)
    return out


def is_projective_type(c: RepComplex) -> bool:
    parts = complex_parts(c)
    return all(is_projective(parts.boundaries(i)) and is_projective(parts.homology(i))
               and is_projective(parts.cycles(i)) for i in c.degrees)


class TruncatedPart(RuntimeError):
    pass


@dataclass
class LevelCertificate:
    target: RepComplex
    level: int
    tower: list[TowerStep] = field(default_factory=list)
    part_pds: dict = field(default_factory=dict)
    valid: bool = False

    def to_json(self) -> dict:
        alg = self.target.algebra
        return {
            "kind": "level-upper",
            "algebra": ser.algebra_to_json(alg),
            "level": self.level,
            "target": complex_to_json(self.target),
            "tower": [{
                "projective": complex_to_json(s.projective),
                "epi": [ser.map_to_json(e) for e in s.epi],
                "syzygy": complex_to_json(s.syzygy),
                "kernel_inclusions": [ser.map_to_json(k) for k in s.kernel_inclusions],
            } for s in self.tower],
            "part_pds": {k: v.to_json() for k, v in sorted(self.part_pds.items())},
            "valid": self.valid,
        }


def complex_to_json(c: RepComplex) -> dict:
    return {"lo": c.lo, "terms": [ser.rep_to_json(t) for t in c.terms],
            "diffs": [ser.map_to_json(d) for d in c.diffs]}


def complex_from_json(alg: QuiverAlgebra, data: dict) -> RepComplex:
    terms = tuple(ser.rep_from_json(alg, t) for t in data["terms"])
    diffs = tuple(ser.map_from_json(terms[k + 1], terms[k], d) for k, d in enumerate(data["diffs"]))
    return RepComplex(alg, int(data["lo"]), terms, diffs)


def level_upper_certificate(c: RepComplex, cutoff: int = DEFAULT_CUTOFF) -> LevelCertificate:
    if c.is_zero():
        cert = LevelCertificate(c, 0)
        cert.valid = True
        return cert
    pds = parts_pd(c, cutoff)
    for name, v in pds.items():
        if not v.is_exact:
            raise TruncatedPart(f"part {name} has projective dimension {v}; cannot bound the level")
    top = max(v.value for v in pds.values())
    cert = LevelCertificate(c, top + 1, part_pds=pds)
    current = c
    for j in range(top):
        step = christensen_step(current)
        new = parts_pd(step.syzygy, cutoff)
        old_max = max(v.value for v in parts_pd(current, cutoff).values())
        if max(v.value for v in new.values()) > old_max - 1:
            raise ArithmeticError("projective dimensions did not drop along the tower")
        cert.tower.append(step)
        current = step.syzygy
    cert.valid = check_level_certificate(cert) == []
    return cert


def check_level_certificate(cert: LevelCertificate) -> list[str]:
    """Re-derive the tower invariants with the in-package routines."""
    errs = []
    current = cert.target
    if cert.level == 0:
        return [] if current.is_zero() else ["nonzero complex with level 0"]
    if len(cert.tower) != cert.level - 1:
        errs.append("tower length does not match the level")
    for j, s in enumerate(cert.tower):
        if not is_projective_type(s.projective):
            errs.append(f"step {j}: P has non-projective parts")
        for i, e in zip(current.degrees, s.epi):
            if not (e.is_intertwiner() and e.is_surjective()):
                errs.append(f"step {j}: epi at degree {i} is not onto")
        for i in current.degrees:
            lhs = current.diff(i).compose(s.epi[i - current.lo])
            if i - 1 >= current.lo:
                rhs = s.epi[i - 1 - current.lo].compose(s.projective.diff(i))
                if not all(np.array_equal(a, b) for a, b in zip(lhs.mats, rhs.mats)):
                    errs.append(f"step {j}: epi does not commute at degree {i}")
        current = s.syzygy
    if not is_projective_type(current):
        errs.append("final complex is not of projective type")
    return errs


# ---------------------------------------------------------------------------
# obstruction


@dataclass
class GhostCertificate:
    module: Rep
    n: int
    witness: Rep
    resolution: object
    splice: list  # (inclusion Omega^i -> P_{i-1}, cover P_{i-1} -> Omega^{i-1})
    cocycle: RepMap  # P_n -> Omega^n
    ext_dim: int
    coordinates: list
    valid: bool = False

    def to_json(self) -> dict:
        res = self.resolution
        alg = self.module.algebra
        n = self.n
        return {
            "kind": "ghost",
            "algebra": ser.algebra_to_json(alg),
            "n": n,
            "module": ser.rep_to_json(self.module),
            "projectives": [ser.rep_to_json(p) for p in res.modules[:n + 1]],
            "augmentation": ser.map_to_json(res.augmentation),
            "differentials": [ser.map_to_json(d) for d in res.differentials[:n]],
            "witness": ser.rep_to_json(self.witness),
            "witness_inclusion": ser.map_to_json(res.inclusions[n - 1]),
            "cocycle": ser.map_to_json(self.cocycle),
            "next_syzygy": ser.rep_to_json(res.syzygies[n + 1]),
            "next_inclusion": ser.map_to_json(res.inclusions[n]),
            "ext_dim": self.ext_dim,
            "coordinates": [self.module.field.to_str(x) for x in self.coordinates],
            "valid": self.valid,
        }


def _yoneda_coords(f: RepMap) -> np.ndarray:
    F = f.field
    imgs = generator_images(f)
    return np.concatenate(imgs) if imgs else F.zeros(0)


def ghost_certificate(x: Rep, n: int, cutoff: int = DEFAULT_CUTOFF) -> GhostCertificate:
    if n < 1:
        raise ValueError("degree must be at least 1")
    res = min_proj_resolution(x, max(cutoff, n + 1))
    pd = res.pd
    if pd.is_exact and pd.value < n:
        raise NoObstruction(f"pd = {pd.value} < {n}: no nonzero class in Ext^{n}(X, Omega^{n} X)")
    F = x.field
    witness = res.syzygies[n]
    splice = [(res.inclusions[i - 1], res.covers[i - 1]) for i in range(1, n + 1)]
    for inc, cov in splice:
        if not (inc.is_injective() and cov.is_surjective() and cov.compose(inc).is_zero()):
            raise ArithmeticError("splice sequence is not exact")
        if [a - b for a, b in zip(cov.source.dims, cov.target.dims)] != list(inc.source.dims):
            raise ArithmeticError("splice sequence is not exact")
    # identity of the witness pushed through the n connecting maps: each connecting
    # map precomposes with a cover, so the composite is the cover P_n -> Omega^n
    cocycle = res.covers[n]
    pn, pn1 = res.modules[n], res.modules[n - 1]
    hom_dim = sum(witness.dims[v] for v in pn.tops)
    # cocycles: phi with phi o (Omega^{n+1} -> P_n) = 0
    basis = _yoneda_basis(pn, witness)
    nxt = res.inclusions[n]
    if nxt.source.dim:
        cons = np.stack([b.compose(nxt).flat() for b in basis], axis=1)
        zb = la.kernel(F, cons)
    else:
        zb = F.eye(hom_dim)
    cob = [_yoneda_coords(psi.compose(res.differentials[n - 1])) for psi in _yoneda_basis(pn1, witness)]
    bmat = np.stack(cob, axis=1) if cob else F.zeros(hom_dim, 0)
    bcols = la.column_basis(F, bmat)
    q, _ = la.quotient_projection(F, bcols, hom_dim)
    ext_basis = la.column_basis(F, F.matmul(q, zb))
    cls = F.matmul(q, _yoneda_coords(cocycle).reshape(-1, 1))
    coords = la.solve(F, ext_basis, cls)
    if coords is None:
        raise ArithmeticError("class is not a cocycle")
    coords = coords.ravel()
    cert = GhostCertificate(x, n, witness, res, splice, cocycle, ext_basis.shape[1], list(coords))
    cert.valid = bool(np.any(coords != 0))
    if not cert.valid:
        raise ArithmeticError("obstruction class vanished although pd >= n")
    return cert
