"""Exact dense linear algebra over Q and prime fields.

Matrices are plain numpy arrays.  Over a prime field they are ``int64``
arrays with entries in ``[0, p)``; over the rationals they are object
arrays holding :class:`fractions.Fraction`.  All array-level algorithms
take the :class:`FieldSpec` as their first argument, and the thin
:class:`Matrix` wrapper bundles an array with its field for the public
``rref_rank`` / ``kernel_basis`` / ``solve_linear`` API.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

DEFAULT_PRIME = 1000003
_MAX_PRIME = 2**31 - 1


class LinalgError(ValueError):
    """Dimension mismatch or malformed input to a linear algebra routine."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            p = self.characteristic
            if not is_prime(p):
                raise ValueError(f"characteristic {p} is not prime")
            if p > _MAX_PRIME:
                raise ValueError(f"prime {p} does not fit a machine word product")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> FieldSpec:
        return cls("prime-field", p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse the CLI spelling: ``q`` or ``fp:<prime>``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls.rationals()
        if text.startswith("fp:"):
            return cls.prime(int(text[3:]))
        if text == "fp":
            return cls.prime()
        raise ValueError(f"cannot parse field {text!r}; use 'q' or 'fp:<prime>'")

    @classmethod
    def from_json(cls, data: dict) -> FieldSpec:
        return cls(data["kind"], int(data["char"]))

    def to_json(self) -> dict:
        return {"kind": self.kind, "char": self.characteristic}

    def __str__(self):
        return "Q" if self.is_rational else f"F_{self.characteristic}"

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def dtype(self):
        return object if self.is_rational else np.int64

    # -- scalars -----------------------------------------------------------

    def elem(self, x) -> int | Fraction:
        if self.is_rational:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.is_rational:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def to_str(self, x) -> str:
        return str(Fraction(x)) if self.is_rational else str(int(x))

    def from_str(self, s: str):
        return self.elem(Fraction(s))

    # -- arrays ------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        if self.is_rational:
            a = np.array(data, dtype=object)
            if a.size:
                a = np.vectorize(Fraction, otypes=[object])(a)
            return a
        a = np.array(data, dtype=object)
        if a.size == 0:
            return np.zeros(a.shape, dtype=np.int64)
        return np.vectorize(self.elem, otypes=[object])(a).astype(np.int64)

    def zeros(self, rows: int, cols: int | None = None) -> np.ndarray:
        shape = (rows,) if cols is None else (rows, cols)
        if self.is_rational:
            a = np.empty(shape, dtype=object)
            a.fill(Fraction(0))
            return a
        return np.zeros(shape, dtype=np.int64)

    def zeros_nd(self, shape: tuple[int, ...]) -> np.ndarray:
        if self.is_rational:
            a = np.empty(shape, dtype=object)
            a.fill(Fraction(0))
            return a
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = self.one
        return a

    @property
    def one(self):
        return Fraction(1) if self.is_rational else 1

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.is_rational:
            return a
        return np.mod(a, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise LinalgError(f"cannot multiply {a.shape} by {b.shape}")
        if self.is_rational:
            if a.size == 0 or b.size == 0:
                return self.zeros(a.shape[0], b.shape[1])
            return a.dot(b)
        k = a.shape[1]
        if (self.p - 1) ** 2 * max(k, 1) < 2**63:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        step = max(1, (2**63 - 1) // ((self.p - 1) ** 2))
        for s in range(0, k, step):
            out = (out + a[:, s:s + step] @ b[s:s + step, :]) % self.p
        return out

    def mm(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def scale(self, c, a):
        if self.is_rational:
            return a * Fraction(c)
        return (a * (int(c) % self.p)) % self.p

    def random(self, rng: np.random.Generator, shape, low: int = -3, high: int = 3) -> np.ndarray:
        """Uniform field elements over F_p; small integers over Q."""
        if self.is_rational:
            a = rng.integers(low, high + 1, size=shape)
            return self.array(a.tolist()) if a.size else self.zeros(*shape)
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and not np.any(a != b)


# ---------------------------------------------------------------------------
# array-level algorithms


def rref(F: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = np.array(a, dtype=F.dtype, copy=True)
    if a.ndim != 2:
        raise LinalgError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    rational = F.is_rational
    p = F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = a[r, c]
        if rational:
            if piv != 1:
                a[r, c:] = a[r, c:] / piv
        elif piv != 1:
            a[r, c:] = a[r, c:] * pow(int(piv), -1, p) % p
        colv = a[:, c].copy()
        colv[r] = 0
        nzr = np.flatnonzero(colv != 0)
        if nzr.size:
            upd = a[nzr, c:] - np.outer(colv[nzr], a[r, c:])
            a[nzr, c:] = upd if rational else upd % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(F: FieldSpec, a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(rref(F, a)[1])


def kernel(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    """Columns spanning the right null space of ``a``."""
    rows, cols = a.shape
    if rows == 0:
        return F.eye(cols)
    r, piv = rref(F, a)
    free = [j for j in range(cols) if j not in set(piv)]
    out = F.zeros(cols, len(free))
    for k, f in enumerate(free):
        out[f, k] = F.one
        for i, pc in enumerate(piv):
            out[pc, k] = -r[i, f]
    return F.reduce(out)


def solve(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x = b`` or ``None`` when inconsistent."""
    if a.shape[0] != b.shape[0]:
        raise LinalgError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    if a.shape[0] == 0:
        return F.zeros(n, b.shape[1])
    aug = np.concatenate([a, b], axis=1)
    r, piv = rref(F, aug)
    if piv and piv[-1] >= n:
        return None
    x = F.zeros(n, b.shape[1])
    for i, pc in enumerate(piv):
        x[pc, :] = r[i, n:]
    return x


def column_basis(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    """Independent columns of ``a`` spanning its column space (a subset of them)."""
    if a.shape[1] == 0 or a.shape[0] == 0:
        return F.zeros(a.shape[0], 0)
    _, piv = rref(F, a)
    return a[:, piv]


def row_space(F: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the rref of ``a`` and their pivots."""
    if a.shape[0] == 0:
        return F.zeros(0, a.shape[1]), []
    r, piv = rref(F, a)
    return r[: len(piv)], piv


def inverse(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise LinalgError("inverse of a non-square matrix")
    x = solve(F, a, F.eye(n))
    if x is None or rank(F, a) != n:
        raise LinalgError("matrix is singular")
    return x


def left_inverse(F: FieldSpec, basis: np.ndarray) -> tuple[list[int], np.ndarray]:
    """For columns of full rank: rows ``piv`` and ``inv`` with ``inv @ v[piv]`` = coordinates.

    Valid for any ``v`` in the column span of ``basis``.
    """
    k = basis.shape[1]
    if k == 0:
        return [], F.zeros(0, 0)
    _, piv = rref(F, basis.T)
    if len(piv) != k:
        raise LinalgError("columns are not independent")
    return piv, inverse(F, basis[piv, :])


def quotient_projection(F: FieldSpec, sub: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection ``q`` of ``F^d`` onto a complement of span(sub) and a section ``s``.

    ``q @ sub == 0``, ``q @ s == I`` and ``s`` consists of standard basis columns.
    """
    if sub.shape[1] == 0:
        return F.eye(d), F.eye(d)
    rows, piv = row_space(F, sub.T)
    pivset = set(piv)
    nonpiv = [j for j in range(d) if j not in pivset]
    full = F.eye(d)
    if piv:
        sel = F.zeros(len(piv), d)
        for i, pc in enumerate(piv):
            sel[i, pc] = F.one
        full = F.sub(full, F.matmul(rows.T, sel))
    q = full[nonpiv, :]
    s = F.eye(d)[:, nonpiv]
    return q, s


def hstack(F: FieldSpec, mats: Sequence[np.ndarray], rows: int) -> np.ndarray:
    if not mats:
        return F.zeros(rows, 0)
    return np.concatenate(list(mats), axis=1)


def vstack(F: FieldSpec, mats: Sequence[np.ndarray], cols: int) -> np.ndarray:
    if not mats:
        return F.zeros(0, cols)
    return np.concatenate(list(mats), axis=0)


def block_diag(F: FieldSpec, mats: Sequence[np.ndarray]) -> np.ndarray:
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = F.zeros(r, c)
    i = j = 0
    for m in mats:
        out[i:i + m.shape[0], j:j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


class IncrementalBasis:
    """Echelon basis grown one vector at a time.

    Optionally tracks, for every stored row, its expression as a
    combination of the inserted vectors, so that a dependent vector can be
    written in terms of earlier ones (used for minimal polynomials).
    """

    def __init__(self, F: FieldSpec, length: int, track: bool = False):
        self.F = F
        self.length = length
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []
        self.track = track
        self.combos: list[dict[int, object]] = []
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: np.ndarray):
        F = self.F
        v = np.array(v, dtype=F.dtype, copy=True)
        combo: dict[int, object] = {}
        for row, pc, rc in zip(self.rows, self.pivots, self.combos or [None] * len(self.rows)):
            c = v[pc]
            if c != 0:
                v = F.sub(v, F.scale(c, row)) if not F.is_rational else v - c * row
                if self.track:
                    for k, val in rc.items():
                        combo[k] = combo.get(k, 0) - c * val
                        if not F.is_rational:
                            combo[k] = int(combo[k]) % F.p
        return v, combo

    def contains(self, v: np.ndarray) -> bool:
        r, _ = self.reduce(v)
        return not np.any(r != 0)

    def add(self, v: np.ndarray) -> bool:
        """Insert ``v``; returns False (and stores nothing) when dependent."""
        F = self.F
        idx = self.count
        self.count += 1
        r, combo = self.reduce(v)
        nz = np.flatnonzero(r != 0)
        if nz.size == 0:
            self.last_dependency = combo
            return False
        pc = int(nz[0])
        inv = F.inv(r[pc])
        r = F.scale(inv, r) if not F.is_rational else r * inv
        self.rows.append(r)
        self.pivots.append(pc)
        if self.track:
            combo = {k: val * inv for k, val in combo.items()}
            combo[idx] = inv
            if not F.is_rational:
                combo = {k: int(val) % F.p for k, val in combo.items()}
            self.combos.append(combo)
        else:
            self.combos.append({})
        return True


# ---------------------------------------------------------------------------
# Matrix wrapper and the public contract


@dataclass(frozen=True, eq=False)
class Matrix:
    field: FieldSpec
    data: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        d = self.data
        if d.ndim != 2:
            raise LinalgError("Matrix data must be 2-d")
        if self.field.is_rational:
            if d.dtype != object:
                object.__setattr__(self, "data", self.field.array(d.tolist()) if d.size else self.field.zeros(*d.shape))
        else:
            object.__setattr__(self, "data", np.mod(np.asarray(d, dtype=np.int64), self.field.p))
        self.data.flags.writeable = False

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if not rows:
            return cls(field, field.zeros(0, cols or 0))
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls(field, field.eye(n))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> list:
        return [x for row in self.data.tolist() for x in row]

    def __matmul__(self, other: Matrix) -> Matrix:
        return Matrix(self.field, self.field.matmul(self.data, other.data))

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.field.equal(self.data, other.data)

    def __hash__(self):
        return hash((self.field, self.data.shape, tuple(map(str, self.entries))))

    def tolist(self) -> list[list[str]]:
        return [[self.field.to_str(x) for x in row] for row in self.data.tolist()]

    def is_zero(self) -> bool:
        return self.field.is_zero(self.data)


@dataclass(frozen=True)
class RrefResult:
    reduced: Matrix
    rank: int
    pivots: tuple[int, ...]


def rref_rank(m: Matrix) -> RrefResult:
    if m.rows == 0 or m.cols == 0:
        return RrefResult(m, 0, ())
    r, piv = rref(m.field, m.data)
    return RrefResult(Matrix(m.field, r), len(piv), tuple(piv))


def kernel_basis(m: Matrix) -> Matrix:
    return Matrix(m.field, kernel(m.field, m.data))


def solve_linear(a: Matrix, b: Matrix) -> Matrix | None:
    if a.field != b.field:
        raise LinalgError("field mismatch")
    if a.rows != b.rows:
        raise LinalgError(f"row mismatch: {a.rows} vs {b.rows}")
    x = solve(a.field, a.data, b.data)
    return None if x is None else Matrix(a.field, x)
