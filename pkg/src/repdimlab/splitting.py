"""Complete sets of primitive orthogonal idempotents in a matrix algebra.

The algebra is given by a spanning set of square matrices acting faithfully
on some space V.  Each step tests the current corner ``eBe`` for locality
via the trace form: its radical is the kernel of ``(x, y) -> tr(xy)`` when
the characteristic exceeds ``dim eV``, so ``rank`` of the Gram matrix is the
dimension of ``eBe / rad``.  A non-local corner is split with a random
element whose minimal polynomial has two coprime factors.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from . import linalg as la
from . import polynomial as poly
from .linalg import FieldSpec


class InconclusiveError(RuntimeError):
    """A randomized step ran out of its retry budget."""


def _span_basis(F: FieldSpec, mats: Sequence[np.ndarray], r: int) -> list[np.ndarray]:
    if not mats or r == 0:
        return []
    rows, _ = la.row_space(F, np.stack([m.ravel() for m in mats], axis=0))
    return [row.reshape(r, r) for row in rows]


def semisimple_rank(F: FieldSpec, basis: Sequence[np.ndarray]) -> int:
    """``dim B / rad B`` from the trace form."""
    if not basis:
        return 0
    a = np.stack([m.ravel() for m in basis])
    b = np.stack([m.T.ravel() for m in basis])
    return la.rank(F, F.matmul(a, b.T))


def _compress(F: FieldSpec, e: np.ndarray, basis: Sequence[np.ndarray]):
    """Corner ``eBe`` written on the subspace ``eV``."""
    cols = la.column_basis(F, e)
    piv, li = la.left_inverse(F, cols)
    r = cols.shape[1]
    # coords(v) = li @ v[piv]
    coord = F.zeros(r, e.shape[0])
    coord[:, piv] = li
    coord = F.matmul(coord, e)
    small = [F.matmul(coord, F.matmul(g, cols)) for g in basis]
    return cols, coord, _span_basis(F, small, r)


def _split(F, basis, rng, budget, stats):
    r = basis[0].shape[0] if basis else 0
    unit = F.eye(r)
    if r == 0:
        return []
    s = semisimple_rank(F, basis)
    if s == 1:
        return [unit]
    for _ in range(budget):
        stats["draws"] += 1
        coeffs = F.random(rng, len(basis))
        b = F.zeros(r, r)
        for c, g in zip(coeffs, basis):
            b = F.add(b, F.scale(c, g))
        mu = poly.minimal_polynomial(F, b, unit)
        facs = poly.factor(F, mu, rng)
        if len(facs) >= 2:
            q, m = facs[0]
            g = [F.one]
            for _ in range(m):
                g = poly.mul(F, g, q)
            h = poly.divmod_(F, mu, g)[0]
            _, u, _ = poly.xgcd(F, g, h)
            e1 = poly.evaluate(F, poly.mul(F, u, g), b, unit)
            e2 = F.sub(unit, e1)
            out = []
            for e in (e1, e2):
                cols, coord, small = _compress(F, e, basis)
                for x in _split(F, small, rng, budget, stats):
                    out.append(F.matmul(cols, F.matmul(x, coord)))
            return out
        if len(facs) == 1 and poly.deg(facs[0][0]) == s:
            # k[b] maps onto a field of dimension s, so B/rad is that field
            return [unit]
    raise InconclusiveError(f"no splitting element found after {budget} draws")


def primitive_idempotents(F: FieldSpec, gens: Sequence[np.ndarray], unit: np.ndarray,
                          rng: np.random.Generator, budget: int = 20,
                          stats: dict | None = None) -> list[np.ndarray]:
    """Primitive orthogonal idempotents summing to ``unit``.

    ``gens`` spans a subalgebra of square matrices containing ``unit``.
    """
    n = unit.shape[0]
    if not F.is_rational and F.p <= n:
        raise ValueError(f"characteristic {F.p} must exceed the module dimension {n}")
    stats = stats if stats is not None else {}
    stats.setdefault("draws", 0)
    if n == 0 or F.is_zero(unit):
        return []
    cols, coord, small = _compress(F, unit, list(gens) + [unit])
    return [F.matmul(cols, F.matmul(x, coord)) for x in _split(F, small, rng, budget, stats)]

