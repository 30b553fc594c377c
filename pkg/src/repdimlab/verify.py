"""Stand-alone certificate checker.

Everything here is recomputed from the JSON file with plain Python lists and
a separate elimination routine; nothing is imported from the construction
code, so a construction bug cannot vouch for itself.
"""
from __future__ import annotations

import json
from fractions import Fraction


class Field:
    def __init__(self, spec: dict):
        self.rational = spec["kind"] == "rationals"
        self.p = None if self.rational else int(spec["char"])

    def parse(self, s):
        if self.rational:
            return Fraction(s)
        return int(s) % self.p

    def norm(self, x):
        return x if self.rational else x % self.p

    def inv(self, x):
        return 1 / Fraction(x) if self.rational else pow(x, -1, self.p)


def _mat(k: Field, data) -> list[list]:
    if isinstance(data, dict):
        r, c = data["shape"]
        return [[0] * c for _ in range(r)]
    return [[k.parse(x) for x in row] for row in data]


def _shape(m, cols_hint=0):
    return (len(m), len(m[0]) if m else cols_hint)


def _mul(k: Field, a, b, inner: int, cols: int):
    out = [[0] * cols for _ in range(len(a))]
    for i, row in enumerate(a):
        for t in range(inner):
            x = row[t]
            if x == 0:
                continue
            brow = b[t]
            o = out[i]
            for j in range(cols):
                if brow[j]:
                    o[j] += x * brow[j]
        out[i] = [k.norm(v) for v in out[i]]
    return out


def rank(k: Field, rows: list[list]) -> int:
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = k.inv(rows[r][c])
        rows[r] = [k.norm(x * inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [k.norm(a - f * b) for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _transpose(m, rows: int, cols: int):
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def col_rank(k, m, rows, cols):
    if rows == 0 or cols == 0:
        return 0
    return rank(k, _transpose(m, rows, cols))


class Algebra:
    def __init__(self, data: dict):
        self.k = Field(data["field"])
        self.n = int(data["vertices"])
        self.arrows = [(int(s), int(t)) for s, t, _ in data["arrows"]]
        self.labels = [str(lab) for _, _, lab in data["arrows"]]
        self.relations = [[(self.k.parse(str(c)), tuple(p)) for c, p in r] for r in data["relations"]]
        self.bound = data.get("nilpotency_bound")
        self._pdims = None

    def _paths(self, src: int, length: int):
        if length == 0:
            return [()]
        out = []
        for p in self._paths(src, length - 1):
            end = self.arrows[p[-1]][1] if p else src
            for a, (s, _) in enumerate(self.arrows):
                if s == end:
                    out.append(p + (a,))
        return out

    def _target(self, src, p):
        return self.arrows[p[-1]][1] if p else src

    def projective_dims(self) -> list[list[int]]:
        """``dims[v][w] = dim e_v A e_w`` from path counts minus ideal ranks."""
        if self._pdims is not None:
            return self._pdims
        k = self.k
        rel_len = [len(r[0][1]) for r in self.relations]
        dims = [[0] * self.n for _ in range(self.n)]
        for v in range(self.n):
            length = 0
            while True:
                paths = self._paths(v, length)
                if not paths:
                    break
                if self.bound is not None and length >= self.bound:
                    break
                by_target: dict[int, list] = {}
                for p in paths:
                    by_target.setdefault(self._target(v, p), []).append(p)
                total = 0
                for w, ps in by_target.items():
                    index = {p: i for i, p in enumerate(ps)}
                    vecs = []
                    for r, L in zip(self.relations, rel_len):
                        if L > length:
                            continue
                        rs = self.arrows[r[0][1][0]][0]
                        for pre_len in range(length - L + 1):
                            for pre in self._paths(v, pre_len):
                                if self._target(v, pre) != rs:
                                    continue
                                rt = self.arrows[r[0][1][-1]][1]
                                for post in self._paths(rt, length - L - pre_len):
                                    if self._target(rt, post) != w:
                                        continue
                                    vec = [0] * len(ps)
                                    for c, mono in r:
                                        vec[index[pre + mono + post]] = k.norm(vec[index[pre + mono + post]] + c)
                                    vecs.append(vec)
                    d = len(ps) - rank(k, vecs)
                    dims[v][w] += d
                    total += d
                if total == 0:
                    break
                length += 1
        self._pdims = dims
        return dims


class Module:
    def __init__(self, alg: Algebra, data: dict):
        self.alg = alg
        self.dims = [int(d) for d in data["dims"]]
        self.maps = [_mat(alg.k, data["arrows"][lab]) for lab in alg.labels]
        for (s, t), m in zip(alg.arrows, self.maps):
            if _shape(m, self.dims[s]) != (self.dims[t], self.dims[s]) and self.dims[t] != 0:
                raise ValueError("arrow matrix has the wrong shape")

    def act(self, path, vecs_cols, start: int):
        """Apply a path to a list of column vectors at its start vertex."""
        k = self.alg.k
        cur = vecs_cols
        for a in path:
            s, t = self.alg.arrows[a]
            m = self.maps[a]
            cur = [[k.norm(sum(m[i][j] * col[j] for j in range(self.dims[s]))) for i in range(self.dims[t])]
                   for col in cur]
        return cur

    def relations_hold(self) -> bool:
        k = self.alg.k
        for r in self.alg.relations:
            s = self.alg.arrows[r[0][1][0]][0]
            basis = [[1 if i == j else 0 for i in range(self.dims[s])] for j in range(self.dims[s])]
            total = None
            for c, p in r:
                img = self.act(p, basis, s)
                img = [[k.norm(c * x) for x in col] for col in img]
                total = img if total is None else [[k.norm(a + b) for a, b in zip(u, w)] for u, w in zip(total, img)]
            if total and any(x != 0 for col in total for x in col):
                return False
        return True


def _maps(alg, data):
    return [_mat(alg.k, m) for m in data]


def _is_module_map(alg, src: Module, tgt: Module, f) -> bool:
    k = alg.k
    for a, (s, t) in enumerate(alg.arrows):
        if tgt.dims[t] == 0 or src.dims[s] == 0:
            continue
        lhs = _mul(k, tgt.maps[a], f[s], tgt.dims[s], src.dims[s])
        rhs = _mul(k, f[t], src.maps[a], src.dims[t], src.dims[s])
        if lhs != rhs:
            return False
    return True


def _compose(alg, f, g, dims_a, dims_b, dims_c):
    """f o g with g: A -> B and f: B -> C, per vertex."""
    out = []
    for v in range(alg.n):
        if dims_c[v] == 0 or dims_a[v] == 0:
            out.append([[0] * dims_a[v] for _ in range(dims_c[v])])
        else:
            out.append(_mul(alg.k, f[v], g[v], dims_b[v], dims_a[v]))
    return out


def _ranks(alg, f, src_dims, tgt_dims):
    return [col_rank(alg.k, f[v], tgt_dims[v], src_dims[v]) for v in range(alg.n)]


def _is_zero(f) -> bool:
    return all(x == 0 for m in f for row in m for x in row)


def _span_rank_vertex(alg, cols_list, d):
    vecs = [c for cols in cols_list for c in cols]
    return rank(alg.k, vecs) if vecs and d else 0


def _columns(m, rows, cols):
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def _kernel_cols(k: Field, m, rows, cols):
    """Basis of the null space as column vectors."""
    a = [list(r) for r in m]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = k.inv(a[r][c])
        a[r] = [k.norm(x * inv) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [k.norm(x - f * y) for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in piv_cols]
    out = []
    for fcol in free:
        v = [0] * cols
        v[fcol] = 1
        for i, pc in enumerate(piv_cols):
            v[pc] = k.norm(-a[i][fcol])
        out.append(v)
    return out


def _subspace_top(alg, mod: Module, spaces):
    """Top multiplicities of the submodule spanned per vertex by the given column lists."""
    k = alg.k
    tops = []
    for v in range(alg.n):
        d = _span_rank_vertex(alg, [spaces[v]], mod.dims[v])
        rad = []
        for a, (s, t) in enumerate(alg.arrows):
            if t == v and spaces[s]:
                rad.extend(mod.act((a,), spaces[s], s))
        tops.append(d - (rank(k, rad) if rad else 0))
    return tops


def _quotient_top(alg, mod: Module, big, small):
    """Top multiplicities of span(big)/span(small), both arrow-stable."""
    k = alg.k
    tops = []
    for v in range(alg.n):
        d = _span_rank_vertex(alg, [big[v]], mod.dims[v]) - _span_rank_vertex(alg, [small[v]], mod.dims[v])
        rad = list(small[v])
        for a, (s, t) in enumerate(alg.arrows):
            if t == v and big[s]:
                rad.extend(mod.act((a,), big[s], s))
        rr = (rank(k, rad) if rad else 0) - _span_rank_vertex(alg, [small[v]], mod.dims[v])
        tops.append(d - rr)
    return tops


def _projective_test(alg, total_dims, tops) -> bool:
    pd = alg.projective_dims()
    expect = sum(t * sum(pd[v]) for v, t in enumerate(tops))
    return sum(total_dims) == expect


def _complex(alg, data):
    terms = [Module(alg, t) for t in data["terms"]]
    diffs = [_maps(alg, d) for d in data["diffs"]]
    return int(data["lo"]), terms, diffs


def _projective_type(alg, terms, diffs, errs, label):
    n = alg.n
    k = alg.k
    for idx, x in enumerate(terms):
        # d_i: X_i -> X_{i-1} is diffs[idx-1]; incoming d_{i+1} is diffs[idx]
        out = diffs[idx - 1] if idx >= 1 else None
        inc = diffs[idx] if idx < len(diffs) else None
        z = []
        for v in range(n):
            if out is None or terms[idx - 1].dims[v] == 0:
                z.append([[1 if i == j else 0 for i in range(x.dims[v])] for j in range(x.dims[v])])
            else:
                z.append(_kernel_cols(k, out[v], terms[idx - 1].dims[v], x.dims[v]))
        b = []
        for v in range(n):
            if inc is None:
                b.append([])
            else:
                b.append(_columns(inc[v], x.dims[v], terms[idx + 1].dims[v]))
        bdims = [_span_rank_vertex(alg, [b[v]], x.dims[v]) for v in range(n)]
        zdims = [len(z[v]) for v in range(n)]
        hdims = [a - c for a, c in zip(zdims, bdims)]
        checks = [("B", bdims, _subspace_top(alg, x, b)), ("Z", zdims, _subspace_top(alg, x, z)),
                  ("H", hdims, _quotient_top(alg, x, z, b))]
        for name, dims, tops in checks:
            if not _projective_test(alg, dims, tops):
                errs.append(f"{label}: {name} at position {idx} is not projective")


def verify_level(data: dict) -> list[str]:
    alg = Algebra(data["algebra"])
    errs = []
    lo, terms, diffs = _complex(alg, data["target"])
    level = int(data["level"])
    tower = data["tower"]
    if level == 0:
        return [] if all(sum(t.dims) == 0 for t in terms) else ["level 0 claimed for a nonzero complex"]
    if len(tower) != level - 1:
        errs.append("tower length differs from level - 1")
    for j, step in enumerate(tower):
        plo, pterms, pdiffs = _complex(alg, step["projective"])
        if plo != lo or len(pterms) != len(terms):
            errs.append(f"step {j}: projective complex has the wrong support")
            break
        for t in terms + pterms:
            if not t.relations_hold():
                errs.append(f"step {j}: a term is not a module")
        for a in range(len(pdiffs) - 1):
            comp = _compose(alg, pdiffs[a], pdiffs[a + 1], pterms[a + 2].dims, pterms[a + 1].dims, pterms[a].dims)
            if not _is_zero(comp):
                errs.append(f"step {j}: d^2 != 0 in the projective complex")
        _projective_type(alg, pterms, pdiffs, errs, f"step {j}")
        epis = [_maps(alg, e) for e in step["epi"]]
        for a, (x, p, e) in enumerate(zip(terms, pterms, epis)):
            if not _is_module_map(alg, p, x, e):
                errs.append(f"step {j}: epi {a} is not a module map")
            if _ranks(alg, e, p.dims, x.dims) != x.dims:
                errs.append(f"step {j}: epi {a} is not onto")
        for a in range(1, len(terms)):
            lhs = _compose(alg, diffs[a - 1], epis[a], pterms[a].dims, terms[a].dims, terms[a - 1].dims)
            rhs = _compose(alg, epis[a - 1], pdiffs[a - 1], pterms[a].dims, pterms[a - 1].dims, terms[a - 1].dims)
            if lhs != rhs:
                errs.append(f"step {j}: epi does not commute with differentials at position {a}")
        slo, sterms, sdiffs = _complex(alg, step["syzygy"])
        incs = [_maps(alg, i) for i in step["kernel_inclusions"]]
        if slo != lo + 1 or len(sterms) != len(terms):
            errs.append(f"step {j}: syzygy has the wrong support")
            break
        for a, (kmod, inc) in enumerate(zip(sterms, incs)):
            if not _is_module_map(alg, kmod, pterms[a], inc):
                errs.append(f"step {j}: kernel inclusion {a} is not a module map")
            if _ranks(alg, inc, kmod.dims, pterms[a].dims) != kmod.dims:
                errs.append(f"step {j}: kernel inclusion {a} is not injective")
            if not _is_zero(_compose(alg, epis[a], inc, kmod.dims, pterms[a].dims, terms[a].dims)):
                errs.append(f"step {j}: kernel does not map to zero")
            if [p - x for p, x in zip(pterms[a].dims, terms[a].dims)] != kmod.dims:
                errs.append(f"step {j}: kernel dimension mismatch at position {a}")
        for a in range(1, len(sterms)):
            lhs = _compose(alg, incs[a - 1], sdiffs[a - 1], sterms[a].dims, sterms[a - 1].dims, pterms[a - 1].dims)
            rhs = _compose(alg, pdiffs[a - 1], incs[a], sterms[a].dims, pterms[a].dims, pterms[a - 1].dims)
            neg = [[[alg.k.norm(-x) for x in row] for row in m] for m in rhs]
            if lhs != neg:
                errs.append(f"step {j}: syzygy differential is not the negated restriction")
        lo, terms, diffs = slo, sterms, sdiffs
    _projective_type(alg, terms, diffs, errs, "final")
    return errs


def _hom_space(alg: Algebra, x: Module, y: Module):
    """Basis of Hom(x, y) by solving the intertwining equations directly."""
    k = alg.k
    offs, o = [], 0
    for v in range(alg.n):
        offs.append(o)
        o += y.dims[v] * x.dims[v]
    total = o
    rows = []
    for a, (s, t) in enumerate(alg.arrows):
        # (Y_a f_s - f_t X_a)[r, c] for r < dimY_t, c < dimX_s
        for r in range(y.dims[t]):
            for c in range(x.dims[s]):
                row = [0] * total
                for m in range(y.dims[s]):
                    coef = y.maps[a][r][m]
                    if coef:
                        idx = offs[s] + m * x.dims[s] + c
                        row[idx] = k.norm(row[idx] + coef)
                for m in range(x.dims[t]):
                    coef = x.maps[a][m][c]
                    if coef:
                        idx = offs[t] + r * x.dims[t] + m
                        row[idx] = k.norm(row[idx] - coef)
                rows.append(row)
    if not rows:
        basis = [[1 if i == j else 0 for i in range(total)] for j in range(total)]
    else:
        basis = _kernel_cols(k, rows, len(rows), total)
    out = []
    for vec in basis:
        f = []
        for v in range(alg.n):
            block = vec[offs[v]:offs[v] + y.dims[v] * x.dims[v]]
            f.append([block[r * x.dims[v]:(r + 1) * x.dims[v]] for r in range(y.dims[v])])
        out.append(f)
    return out


def _flat(f):
    return [x for m in f for row in m for x in row]


def verify_ghost(data: dict) -> list[str]:
    alg = Algebra(data["algebra"])
    k = alg.k
    errs = []
    n = int(data["n"])
    x = Module(alg, data["module"])
    ps = [Module(alg, p) for p in data["projectives"]]
    if len(ps) != n + 1:
        return ["expected projectives P_0 .. P_n"]
    aug = _maps(alg, data["augmentation"])
    ds = [_maps(alg, d) for d in data["differentials"]]
    w = Module(alg, data["witness"])
    winc = _maps(alg, data["witness_inclusion"])
    coc = _maps(alg, data["cocycle"])
    nxt = Module(alg, data["next_syzygy"])
    ninc = _maps(alg, data["next_inclusion"])
    for m in [x, w, nxt] + ps:
        if not m.relations_hold():
            errs.append("a module in the certificate violates the relations")
    for i, p in enumerate(ps):
        if not _projective_test(alg, p.dims, _subspace_top(alg, p, [
                [[1 if a == b else 0 for a in range(p.dims[v])] for b in range(p.dims[v])] for v in range(alg.n)])):
            errs.append(f"P_{i} is not projective")
    if not _is_module_map(alg, ps[0], x, aug) or _ranks(alg, aug, ps[0].dims, x.dims) != x.dims:
        errs.append("augmentation is not an epimorphism")
    chain = [(ps[0], x, aug)] + [(ps[i + 1], ps[i], ds[i]) for i in range(n)]
    for src, tgt, f in chain[1:]:
        if not _is_module_map(alg, src, tgt, f):
            errs.append("a differential is not a module map")
    for i in range(len(chain) - 1):
        (s1, t1, f1), (s2, t2, f2) = chain[i], chain[i + 1]
        if not _is_zero(_compose(alg, f1, f2, s2.dims, s1.dims, t1.dims)):
            errs.append(f"composite of consecutive maps at P_{i} is nonzero")
    # exactness X <- P_0 <- ... <- P_{n-1} <- witness <- 0
    maps = [(ps[0].dims, x.dims, aug)] + [(ps[i + 1].dims, ps[i].dims, ds[i]) for i in range(n - 1)]
    maps.append((w.dims, ps[n - 1].dims, winc))
    for i in range(len(maps) - 1):
        s1, t1, f1 = maps[i]
        s2, t2, f2 = maps[i + 1]
        ker = [a - b for a, b in zip(s1, _ranks(alg, f1, s1, t1))]
        if ker != _ranks(alg, f2, s2, t2):
            errs.append(f"resolution not exact at P_{i}")
    if _ranks(alg, winc, w.dims, ps[n - 1].dims) != w.dims:
        errs.append("witness inclusion is not injective")
    if not _is_module_map(alg, w, ps[n - 1], winc) or not _is_module_map(alg, ps[n], w, coc):
        errs.append("splice maps are not module maps")
    if _compose(alg, winc, coc, ps[n].dims, w.dims, ps[n - 1].dims) != ds[n - 1]:
        errs.append("cocycle is not the corestriction of d_n")
    if not _is_zero(_compose(alg, coc, ninc, nxt.dims, ps[n].dims, w.dims)):
        errs.append("cocycle does not vanish on the next syzygy")
    kd = [a - b for a, b in zip(ps[n].dims, _ranks(alg, coc, ps[n].dims, w.dims))]
    if kd != _ranks(alg, ninc, nxt.dims, ps[n].dims):
        errs.append("next syzygy is not the kernel of the cocycle")
    # the class: coc not of the form psi o d_n
    cob = [_flat(_compose(alg, psi, ds[n - 1], ps[n].dims, ps[n - 1].dims, w.dims))
           for psi in _hom_space(alg, ps[n - 1], w)]
    target = _flat(coc)
    r0 = rank(k, cob) if cob else 0
    r1 = rank(k, cob + [target])
    if r1 == r0:
        errs.append("the obstruction class is zero in Ext")
    return errs


def verify_certificate(data: dict) -> list[str]:
    kind = data.get("kind")
    if kind == "level-upper":
        return verify_level(data)
    if kind == "ghost":
        return verify_ghost(data)
    return [f"unknown certificate kind {kind!r}"]


def verify_file(path: str) -> list[str]:
    with open(path) as fh:
        return verify_certificate(json.load(fh))

