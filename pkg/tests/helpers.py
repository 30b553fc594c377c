"""Random instances shared by the property suites."""
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from repdimlab.experiments import random_quotient
from repdimlab.linalg import FieldSpec
from repdimlab.quiver import QuiverAlgebra, build_beilinson
from repdimlab.reps import Rep, direct_sum, generated_submodule

FP = FieldSpec.prime()
QQ = FieldSpec.rationals()


@lru_cache(maxsize=None)
def beilinson(n: int, field: FieldSpec = FP) -> QuiverAlgebra:
    return QuiverAlgebra(build_beilinson(n, field))


def monomial_count(n: int) -> int:
    """Enumerate commutative monomials in n+1 variables for every vertex pair s <= t."""
    total = 0
    for s in range(n + 1):
        for t in range(s, n + 1):
            total += sum(1 for _ in combinations_with_replacement(range(n + 1), t - s))
    return total


def kronecker_rep(seed: int, field: FieldSpec = FP) -> Rep:
    """Arbitrary matrices over the two-arrow quiver; there are no relations."""
    rng = np.random.default_rng(seed)
    alg = beilinson(1, field)
    d0, d1 = int(rng.integers(0, 4)), int(rng.integers(0, 4))
    maps = tuple(field.array(rng.integers(-2, 3, size=(d1, d0)).tolist()) if d0 and d1
                 else field.zeros(d1, d0) for _ in range(2))
    return Rep(alg, (d0, d1), maps)


def random_module(alg: QuiverAlgebra, seed: int) -> Rep:
    """A quotient, a submodule or a sum of such, all built from projective sums."""
    rng = np.random.default_rng(seed)
    kind = int(rng.integers(0, 3))
    q = random_quotient(alg, rng)
    if kind == 0:
        return q
    if kind == 1:
        spots = [v for v in range(alg.n_vertices) if q.dims[v]]
        v = spots[int(rng.integers(0, len(spots)))]
        x = alg.field.array(rng.integers(-3, 4, size=q.dims[v]).tolist())
        sub, _ = generated_submodule(q, [(v, x)])
        return sub if sub.dim else q
    return direct_sum([q, random_quotient(alg, rng)], alg)


# criterion number -> (passed, detail); filled by the acceptance suite
ACCEPTANCE: dict = {}
