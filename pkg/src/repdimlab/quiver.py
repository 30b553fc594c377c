"""Quivers with homogeneous relations and their finite-dimensional quotients.

Conventions, fixed once for the whole package:

* a path is a tuple of arrow indices read left to right, so the path
  ``(a, b)`` traverses ``a`` first and then ``b``;
* right modules are quiver representations assigning to an arrow
  ``i -> j`` a linear map ``V_i -> V_j``.

The quotient ``kQ/I`` is computed degree by degree.  Within each
(source, target, length) block the ideal is row-reduced with the columns
ordered from the lexicographically largest path down, so the surviving
(non-pivot) paths are the lexicographically least representatives.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Sequence

import numpy as np

from .linalg import FieldSpec, rref


class PresentationError(ValueError):
    """An algebra presentation outside the supported (admissible, homogeneous) class."""


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        labels = set()
        for a in self.arrows:
            if not (0 <= a.source < self.vertex_count and 0 <= a.target < self.vertex_count):
                raise PresentationError(f"arrow {a.label} has an endpoint outside 0..{self.vertex_count - 1}")
            if a.label in labels:
                raise PresentationError(f"duplicate arrow label {a.label}")
            labels.add(a.label)

    def is_acyclic(self) -> bool:
        indeg = [0] * self.vertex_count
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for a in self.arrows:
            out[a.source].append(a.target)
            indeg[a.target] += 1
        stack = [v for v in range(self.vertex_count) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == self.vertex_count


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __len__(self):
        return len(self.arrows)


@dataclass(frozen=True)
class Relation:
    source: int
    target: int
    terms: tuple[tuple[object, tuple[int, ...]], ...]

    @property
    def length(self) -> int:
        return len(self.terms[0][1])


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple[Relation, ...]
    field: FieldSpec
    nilpotency_bound: int | None = None

    def __post_init__(self):
        q = self.quiver
        for r in self.relations:
            if not r.terms:
                raise PresentationError("empty relation")
            lengths = {len(p) for _, p in r.terms}
            if len(lengths) != 1:
                raise PresentationError("relation is not homogeneous in path length")
            if min(lengths) < 2:
                raise PresentationError("relations must have length at least 2")
            for _, p in r.terms:
                if q.arrows[p[0]].source != r.source or q.arrows[p[-1]].target != r.target:
                    raise PresentationError("relation terms are not parallel")
                for a, b in zip(p, p[1:]):
                    if q.arrows[a].target != q.arrows[b].source:
                        raise PresentationError(f"non-composable arrows {a},{b} in a relation")
        if not q.is_acyclic() and self.nilpotency_bound is None:
            raise PresentationError("a quiver with oriented cycles needs a nilpotency bound")

    @property
    def max_length(self) -> int:
        """Longest path length that can survive in the quotient."""
        if self.nilpotency_bound is not None:
            bound = self.nilpotency_bound - 1
            if self.quiver.is_acyclic():
                bound = min(bound, self.quiver.vertex_count - 1)
            return bound
        return self.quiver.vertex_count - 1

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "vertices": self.quiver.vertex_count,
            "arrows": [[a.source, a.target, a.label] for a in self.quiver.arrows],
            "relations": [[[F.to_str(c), list(p)] for c, p in r.terms] for r in self.relations],
            "nilpotency_bound": self.nilpotency_bound,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> AlgebraPresentation:
        F = FieldSpec.from_json(data["field"])
        arrows = tuple(Arrow(int(s), int(t), str(lab)) for s, t, lab in data["arrows"])
        quiver = Quiver(int(data["vertices"]), arrows)
        rels = []
        for terms in data["relations"]:
            if not terms:
                raise PresentationError("empty relation")
            tt = tuple((F.from_str(str(c)), tuple(int(a) for a in p)) for c, p in terms)
            first = tt[0][1]
            rels.append(Relation(arrows[first[0]].source, arrows[first[-1]].target, tt))
        nb = data.get("nilpotency_bound")
        return cls(quiver, tuple(rels), F, None if nb is None else int(nb))


def build_beilinson(n: int, field: FieldSpec | None = None) -> AlgebraPresentation:
    """The algebra with n+1 vertices, n+1 parallel arrows per gap, commuting relations."""
    if n < 1:
        raise PresentationError("the Beilinson algebra needs n >= 1")
    F = field or FieldSpec.prime()
    arrows = []
    for v in range(n):
        for i in range(n + 1):
            arrows.append(Arrow(v, v + 1, f"x{i}_{v}"))

    def idx(v, i):
        return v * (n + 1) + i

    rels = []
    for v in range(n - 1):
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                rels.append(Relation(v, v + 2, (
                    (F.one, (idx(v, i), idx(v + 1, j))),
                    (F.elem(-1), (idx(v, j), idx(v + 1, i))),
                )))
    return AlgebraPresentation(Quiver(n + 1, tuple(arrows)), tuple(rels), F)


def build_exterior(n: int, field: FieldSpec | None = None) -> AlgebraPresentation:
    """Exterior algebra on n generators as one vertex with n loops."""
    if n < 1:
        raise PresentationError("the exterior algebra needs n >= 1")
    F = field or FieldSpec.prime()
    arrows = tuple(Arrow(0, 0, f"x{i + 1}") for i in range(n))
    rels = []
    for i in range(n):
        rels.append(Relation(0, 0, ((F.one, (i, i)),)))
        for j in range(i + 1, n):
            rels.append(Relation(0, 0, ((F.one, (i, j)), (F.one, (j, i)))))
    return AlgebraPresentation(Quiver(1, arrows), tuple(rels), F, nilpotency_bound=n + 1)


def build_path_algebra(vertex_count: int, arrows: Sequence[tuple[int, int]], field: FieldSpec | None = None,
                       relations=(), nilpotency_bound=None) -> AlgebraPresentation:
    F = field or FieldSpec.prime()
    arr = tuple(Arrow(s, t, f"a{k}") for k, (s, t) in enumerate(arrows))
    return AlgebraPresentation(Quiver(vertex_count, arr), tuple(relations), F, nilpotency_bound)


def beilinson_dimension_formula(n: int) -> int:
    """Sum over gaps d of (n+1-d) * C(d+n, n): commutative monomials per gap."""
    return sum((n + 1 - d) * comb(d + n, n) for d in range(n + 1))


# ---------------------------------------------------------------------------
# basis of the quotient


@dataclass
class DegreeBlock:
    """Paths s -> t of one length, the ideal inside their span, and the normal monomials."""

    source: int
    target: int
    length: int
    paths: list[tuple[int, ...]]
    ideal_rows: np.ndarray
    ideal_pivots: list[int]
    standard: list[tuple[int, ...]]

    @cached_property
    def path_index(self) -> dict[tuple[int, ...], int]:
        return {p: i for i, p in enumerate(self.paths)}

    @cached_property
    def standard_index(self) -> dict[tuple[int, ...], int]:
        return {p: i for i, p in enumerate(self.standard)}


@dataclass
class PathBasis:
    blocks: dict[tuple[int, int, int], DegreeBlock]
    total_dim: int
    field: FieldSpec
    _nf_cache: dict = field(default_factory=dict, repr=False)

    def standard(self, s: int, t: int, length: int) -> list[tuple[int, ...]]:
        b = self.blocks.get((s, t, length))
        return b.standard if b else []

    def normal_form(self, s: int, t: int, path: tuple[int, ...]) -> np.ndarray | None:
        """Coordinates of a path over the standard monomials of its block (None if the block is zero)."""
        key = (s, t, path)
        if key in self._nf_cache:
            return self._nf_cache[key]
        F = self.field
        blk = self.blocks.get((s, t, len(path)))
        if blk is None or not blk.standard:
            res = None
        elif path in blk.standard_index:
            res = F.zeros(len(blk.standard))
            res[blk.standard_index[path]] = F.one
        else:
            col = blk.path_index[path]
            row = blk.ideal_pivots.index(col)
            cols = [blk.path_index[m] for m in blk.standard]
            res = F.neg(blk.ideal_rows[row, cols])
        self._nf_cache[key] = res
        return res

    def reduce_vector(self, s: int, t: int, length: int, vec: np.ndarray) -> np.ndarray:
        """Normal form of an arbitrary vector over all paths of a block."""
        F = self.field
        blk = self.blocks[(s, t, length)]
        v = np.array(vec, copy=True)
        for i, pc in enumerate(blk.ideal_pivots):
            c = v[pc]
            if c != 0:
                v = F.sub(v, F.scale(c, blk.ideal_rows[i])) if not F.is_rational else v - c * blk.ideal_rows[i]
        return v[[blk.path_index[m] for m in blk.standard]]


def _paths_by_length(q: Quiver, max_len: int) -> dict[tuple[int, int, int], list[tuple[int, ...]]]:
    out: dict[tuple[int, int, int], list[tuple[int, ...]]] = {}
    for s in range(q.vertex_count):
        out[(s, s, 0)] = [()]
    cur = {s: [((), s)] for s in range(q.vertex_count)}
    for length in range(1, max_len + 1):
        nxt = {}
        for s, plist in cur.items():
            ext = []
            for p, end in plist:
                for k, a in enumerate(q.arrows):
                    if a.source == end:
                        ext.append((p + (k,), a.target))
            nxt[s] = ext
            for p, end in ext:
                out.setdefault((s, end, length), []).append(p)
        cur = nxt
    for key in out:
        out[key].sort()
    return out


def algebra_basis(pres: AlgebraPresentation) -> PathBasis:
    F = pres.field
    q = pres.quiver
    max_len = pres.max_length
    check_len = max_len + 1 if pres.nilpotency_bound is not None else None
    paths = _paths_by_length(q, check_len if check_len is not None else max_len)
    blocks = {}
    total = 0
    for key in sorted(paths):
        s, t, length = key
        plist = paths[key]
        # columns ordered from the largest path down so pivots take the largest monomials
        ordered = sorted(plist, reverse=True)
        col = {p: i for i, p in enumerate(ordered)}
        gens = []
        if check_len is not None and length == check_len:
            for p in ordered:
                v = F.zeros(len(ordered))
                v[col[p]] = F.one
                gens.append(v)
        else:
            for r in pres.relations:
                rl = r.length
                if rl > length:
                    continue
                for pre_len in range(length - rl + 1):
                    post_len = length - rl - pre_len
                    prefixes = paths.get((s, r.source, pre_len), [])
                    suffixes = paths.get((r.target, t, post_len), [])
                    for pre in prefixes:
                        for post in suffixes:
                            v = F.zeros(len(ordered))
                            for c, rp in r.terms:
                                v[col[pre + rp + post]] = F.add(v[col[pre + rp + post]], F.elem(c)) \
                                    if not F.is_rational else v[col[pre + rp + post]] + c
                            gens.append(v)
        if gens:
            mat = np.stack(gens)
            red, piv = rref(F, mat)
            red = red[: len(piv)]
        else:
            red, piv = F.zeros(0, len(ordered)), []
        pivset = set(piv)
        standard = sorted(ordered[i] for i in range(len(ordered)) if i not in pivset)
        if check_len is not None and length == check_len:
            if standard:
                raise PresentationError("nilpotency bound is inconsistent with the relations")
            continue
        blk = DegreeBlock(s, t, length, ordered, red, list(piv), standard)
        blocks[key] = blk
        total += len(standard)
    return PathBasis(blocks, total, F)


# ---------------------------------------------------------------------------
# bundle: presentation + basis + caches


class QuiverAlgebra:
    """A presented algebra together with its normal-form basis.

    Basis elements are (source, target, monomial) triples; the global order
    is by source, then length, then target, then monomial.
    """

    def __init__(self, pres: AlgebraPresentation):
        self.pres = pres
        self.field = pres.field
        self.quiver = pres.quiver
        self.basis = algebra_basis(pres)
        self.n_vertices = pres.quiver.vertex_count
        elems = []
        for s in range(self.n_vertices):
            for length in range(pres.max_length + 1):
                for t in range(self.n_vertices):
                    for m in self.basis.standard(s, t, length):
                        elems.append((s, t, m))
        self.elements: list[tuple[int, int, tuple[int, ...]]] = elems
        self.element_index = {e: i for i, e in enumerate(elems)}

    def __repr__(self):
        return f"QuiverAlgebra(vertices={self.n_vertices}, dim={self.dim}, field={self.field})"

    @property
    def dim(self) -> int:
        return self.basis.total_dim

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def label(self, elem) -> str:
        s, t, m = elem
        if not m:
            return f"e{s}"
        return "*".join(self.quiver.arrows[a].label for a in m)

    def monomials_from(self, v: int) -> list[list[tuple[int, ...]]]:
        """Standard monomials starting at v, grouped by target; within a target by (length, lex)."""
        out = []
        for t in range(self.n_vertices):
            ms = []
            for length in range(self.pres.max_length + 1):
                ms.extend(self.basis.standard(v, t, length))
            out.append(ms)
        return out

    def monomials_to(self, v: int) -> list[list[tuple[int, ...]]]:
        out = []
        for s in range(self.n_vertices):
            ms = []
            for length in range(self.pres.max_length + 1):
                ms.extend(self.basis.standard(s, v, length))
            out.append(ms)
        return out

    def path_target(self, s: int, m: tuple[int, ...]) -> int:
        return self.quiver.arrows[m[-1]].target if m else s

    def multiply(self, x: tuple, y: tuple) -> np.ndarray:
        """Coordinates (over all basis elements) of the product of two basis elements."""
        F = self.field
        out = F.zeros(self.dim)
        s1, t1, m1 = x
        s2, t2, m2 = y
        if t1 != s2:
            return out
        path = m1 + m2
        if len(path) > self.pres.max_length:
            return out
        nf = self.basis.normal_form(s1, t2, path)
        if nf is None:
            return out
        for k, mon in enumerate(self.basis.standard(s1, t2, len(path))):
            out[self.element_index[(s1, t2, mon)]] = nf[k]
        return out

    def relation_vector(self, r: Relation) -> np.ndarray:
        """A relation evaluated through normal forms (should be zero)."""
        F = self.field
        out = F.zeros(self.dim)
        for c, p in r.terms:
            if len(p) > self.pres.max_length:
                continue
            nf = self.basis.normal_form(r.source, r.target, p)
            if nf is None:
                continue
            for k, mon in enumerate(self.basis.standard(r.source, r.target, len(p))):
                i = self.element_index[(r.source, r.target, mon)]
                out[i] = F.add(out[i], F.elem(c) * nf[k]) if not F.is_rational else out[i] + c * nf[k]
        return out

    def loewy_length(self) -> int:
        """Least L with rad^L = 0 (one more than the longest surviving path)."""
        longest = max(len(m) for _, _, m in self.elements)
        return longest + 1


# ---------------------------------------------------------------------------
# structure-constant algebras


@dataclass(frozen=True, eq=False)
class FDAlgebra:
    """Finite-dimensional algebra given by structure constants.

    ``sc[i, j]`` is the coordinate vector of ``b_i * b_j``.  ``realization``
    optionally carries concrete objects (e.g. module maps) for the basis.
    """

    dim: int
    field: FieldSpec
    sc: np.ndarray
    unit: np.ndarray
    idempotents: tuple[np.ndarray, ...]
    basis_labels: tuple[str, ...] = ()
    realization: tuple = field(default=(), repr=False)

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        F = self.field
        # (x_i y_j) sc[i, j, :]
        t = F.matmul(x.reshape(1, -1), self.sc.reshape(self.dim, -1)).reshape(self.dim, self.dim)
        return F.matmul(y.reshape(1, -1), t).ravel()

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> x*y on coordinate columns."""
        F = self.field
        t = F.matmul(x.reshape(1, -1), self.sc.reshape(self.dim, -1)).reshape(self.dim, self.dim)
        return t.T.copy()

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> y*x on coordinate columns."""
        F = self.field
        d = self.dim
        t = F.matmul(self.sc.transpose(0, 2, 1).reshape(d * d, d), x.reshape(-1, 1)).reshape(d, d)
        return t.T.copy()

    @cached_property
    def left_matrices(self) -> list[np.ndarray]:
        return [self.sc[i].T.copy() for i in range(self.dim)]

    @cached_property
    def right_matrices(self) -> list[np.ndarray]:
        return [self.sc[:, j, :].T.copy() for j in range(self.dim)]

    def opposite(self) -> FDAlgebra:
        """Same basis with ``b_i * b_j`` replaced by ``b_j * b_i``."""
        sc = np.ascontiguousarray(self.sc.transpose(1, 0, 2))
        return FDAlgebra(self.dim, self.field, sc, self.unit, self.idempotents, self.basis_labels,
                         self.realization)

    def check_axioms(self) -> list[str]:
        """Associativity on all basis triples, unit and idempotent invariants; returns failures."""
        F = self.field
        errs = []
        d = self.dim
        # (b_i b_j) b_k against b_i (b_j b_k), one i at a time
        jk = self.sc.reshape(d * d, d)
        right_factor = self.sc.reshape(d, d * d)
        for i in range(d):
            lhs = F.matmul(self.sc[i], right_factor).reshape(d * d, d)
            rhs = F.matmul(jk, self.sc[i])
            if not F.equal(lhs, rhs):
                errs.append(f"multiplication is not associative (first failure at basis element {i})")
                break
        for i in range(d):
            e = self.basis_vector(i)
            if not F.equal(self.mul(self.unit, e), e) or not F.equal(self.mul(e, self.unit), e):
                errs.append(f"unit fails on basis element {i}")
                break
        total = F.zeros(d)
        for a, e in enumerate(self.idempotents):
            total = F.add(total, e)
            for b, f in enumerate(self.idempotents):
                prod = self.mul(e, f)
                want = e if a == b else F.zeros(d)
                if not F.equal(prod, want):
                    errs.append(f"idempotents {a},{b} are not orthogonal idempotents")
        if self.idempotents and not F.equal(total, self.unit):
            errs.append("idempotents do not sum to the unit")
        return errs

    def to_json(self) -> dict:
        F = self.field
        s = np.vectorize(F.to_str, otypes=[object])
        return {
            "dim": self.dim,
            "field": F.to_json(),
            "sc": s(self.sc).tolist() if self.dim else [],
            "unit": [F.to_str(x) for x in self.unit],
            "idempotents": [[F.to_str(x) for x in e] for e in self.idempotents],
        }

    @classmethod
    def from_json(cls, data: dict) -> FDAlgebra:
        F = FieldSpec.from_json(data["field"])
        d = int(data["dim"])
        sc = F.array(data["sc"]) if d else F.zeros_nd((0, 0, 0))
        unit = F.array(data["unit"]) if d else F.zeros(0)
        ids = tuple(F.array(e) for e in data["idempotents"])
        return cls(d, F, sc.reshape(d, d, d), unit, ids)


def structure_constants(pres_or_alg, basis: PathBasis | None = None) -> FDAlgebra:
    alg = pres_or_alg if isinstance(pres_or_alg, QuiverAlgebra) else QuiverAlgebra(pres_or_alg)
    F = alg.field
    d = alg.dim
    sc = F.zeros_nd((d, d, d))
    for i, x in enumerate(alg.elements):
        for j, y in enumerate(alg.elements):
            if x[1] == y[0]:
                sc[i, j] = alg.multiply(x, y)
    unit = F.zeros(d)
    ids = []
    for v in range(alg.n_vertices):
        e = F.zeros(d)
        e[alg.element_index[(v, v, ())]] = F.one
        unit[alg.element_index[(v, v, ())]] = F.one
        ids.append(e)
    labels = tuple(alg.label(e) for e in alg.elements)
    return FDAlgebra(d, F, sc, unit, tuple(ids), labels)


def matrix_algebra(n: int, field: FieldSpec) -> FDAlgebra:
    """Full matrix algebra M_n(k) with the matrix-unit basis."""
    F = field
    d = n * n
    sc = F.zeros_nd((d, d, d))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                sc[i * n + j, j * n + k, i * n + k] = F.one
    unit = F.zeros(d)
    for i in range(n):
        unit[i * n + i] = F.one
    return FDAlgebra(d, F, sc, unit, (unit,), tuple(f"E{i}{j}" for i in range(n) for j in range(n)))


def product_algebra(parts: Sequence[FDAlgebra]) -> FDAlgebra:
    F = parts[0].field
    d = sum(p.dim for p in parts)
    sc = F.zeros_nd((d, d, d))
    unit = F.zeros(d)
    ids = []
    o = 0
    for p in parts:
        sc[o:o + p.dim, o:o + p.dim, o:o + p.dim] = p.sc
        unit[o:o + p.dim] = p.unit
        e = F.zeros(d)
        e[o:o + p.dim] = p.unit
        ids.append(e)
        o += p.dim
    return FDAlgebra(d, F, sc, unit, tuple(ids))
