"""Seeded random generators for batteries: coalgebra surjections via random
dual subalgebras, comodules and contramodules as subquotients of cofree/free
objects, and short exact sequences by closing random vectors.

Everything takes an explicit ``random.Random`` so batteries are reproducible
from a single seed.
"""

from __future__ import annotations

from .coalgebra import Coalgebra, CoalgebraMorphism, dual_of_algebra
from .comodule import Comodule, cofree, comodule_closure, quotient_comodule, sub_comodule
from .contramodule import (
    Contramodule, contra_closure, free_contramodule, quotient_contramodule,
    sub_contramodule,
)
from .functors import ShortExactSeq
from .linalg import Subspace
from .matrix import Mat


def random_vector(rng, dim, field, max_support=4) -> dict:
    support = rng.sample(range(dim), k=min(dim, rng.randint(1, max_support)))
    return {i: field.random(rng) for i in support}


def random_subalgebra(rng, c: Coalgebra, tries: int = 2) -> Subspace:
    """Unital subalgebra of the dual algebra C*, generated by random
    functionals and closed under the convolution product."""
    f = c.field
    n = c.dim
    mult = c.delta.transpose()  # C* (x) C* -> C* in first-slot order
    gens = [dict(c.epsilon.row_groups().get(0, {}))]
    for _ in range(rng.randint(0, tries)):
        gens.append(random_vector(rng, n, f))
    sub = Subspace.from_columns(n, f, gens)
    while True:
        extra = []
        cols = sub.basis_columns()
        for x in cols:
            for y in cols:
                xy = {}
                for i, vx in x.items():
                    for j, vy in y.items():
                        prod = mult.apply({i * n + j: f.mul(vx, vy)})
                        for k, v in prod.items():
                            s = f.add(xy.get(k, f.zero()), v)
                            if s == 0:
                                xy.pop(k, None)
                            else:
                                xy[k] = s
                if xy and not sub.contains(xy):
                    extra.append(xy)
        if not extra:
            return sub
        sub = sub.add(Subspace.from_columns(n, f, extra))


def random_surjection(rng, c: Coalgebra) -> CoalgebraMorphism:
    """Surjective coalgebra map out of C: dualize a random subalgebra of C*.

    The target is the dual coalgebra of the subalgebra in its canonical
    basis, and the map is restriction of functionals.
    """
    f = c.field
    sub = random_subalgebra(rng, c)
    k = sub.dim
    n = c.dim
    basis = sub.basis  # n x k, columns = chosen basis of the subalgebra
    mult_c = c.delta.transpose()
    # structure constants of the subalgebra in its basis
    entries = []
    for s in range(k):
        for t in range(k):
            prod = {}
            for i, vx in basis.col(s).items():
                for j, vy in basis.col(t).items():
                    hit = mult_c.apply({i * n + j: f.mul(vx, vy)})
                    for kk, v in hit.items():
                        acc = f.add(prod.get(kk, f.zero()), v)
                        if acc == 0:
                            prod.pop(kk, None)
                        else:
                            prod[kk] = acc
            coords = sub.coords(prod)
            if coords is None:
                raise AssertionError("subalgebra not closed")
            for u, v in coords.items():
                entries.append((u, s * k + t, v))
    mult_sub = Mat.from_entries(k, k * k, f, entries)
    unit_coords = sub.coords(dict(c.epsilon.row_groups().get(0, {})))
    unit = Mat.from_entries(k, 1, f, [(u, 0, v) for u, v in unit_coords.items()])
    target = dual_of_algebra(mult_sub, unit, name=f"dual-sub({k})")
    # rho: C -> target, c |-> (alpha |-> alpha(c)): matrix rows = basis values
    rho = basis.transpose()
    return CoalgebraMorphism(c, target, rho, surjective=True)


def random_comodule(rng, c: Coalgebra, max_cofree: int = 2, side: str = "left") -> Comodule:
    """Random subcomodule or quotient of a cofree comodule."""
    amb = cofree(c, rng.randint(1, max_cofree), side=side)
    vecs = [random_vector(rng, amb.dim, c.field) for _ in range(rng.randint(1, 2))]
    sub = comodule_closure(amb, vecs)
    if sub.dim == 0 or sub.dim == amb.dim:
        return amb
    if rng.random() < 0.5:
        return sub_comodule(amb, sub)[0]
    return quotient_comodule(amb, sub)[0]


def random_contramodule(rng, c: Coalgebra, max_free: int = 2) -> Contramodule:
    """Random subcontramodule or quotient of a free contramodule."""
    amb = free_contramodule(c, rng.randint(1, max_free))
    vecs = [random_vector(rng, amb.dim, c.field) for _ in range(rng.randint(1, 2))]
    sub = contra_closure(amb, vecs)
    if sub.dim == 0 or sub.dim == amb.dim:
        return amb
    if rng.random() < 0.5:
        return sub_contramodule(amb, sub)[0]
    return quotient_contramodule(amb, sub)[0]


def random_contra_ses(rng, c: Coalgebra, max_free: int = 2, attempts: int = 20) -> ShortExactSeq | None:
    """Short exact sequence of contramodules with a nontrivial middle term;
    degenerate draws (zero or full subobject) are redrawn."""
    for _ in range(attempts):
        mid = random_contramodule(rng, c, max_free)
        if mid.dim < 2:
            continue
        sub = contra_closure(mid, [random_vector(rng, mid.dim, c.field)])
        if sub.dim in (0, mid.dim):
            continue
        s, incl = sub_contramodule(mid, sub)
        q, proj = quotient_contramodule(mid, sub)
        return ShortExactSeq(s, mid, q, incl, proj)
    return None


def random_comodule_ses(rng, c: Coalgebra, max_cofree: int = 2, attempts: int = 20):
    """Short exact sequence of left comodules: (sub, mid, quot, incl, proj)."""
    for _ in range(attempts):
        mid = random_comodule(rng, c, max_cofree)
        if mid.dim < 2:
            continue
        sub = comodule_closure(mid, [random_vector(rng, mid.dim, c.field)])
        if sub.dim in (0, mid.dim):
            continue
        s, incl = sub_comodule(mid, sub)
        q, proj = quotient_comodule(mid, sub)
        return s, mid, q, incl, proj
    return None


def socle_filtration_sequences(c: Coalgebra):
    """Deterministic comodule SES battery from subcomodules of C itself;
    these discriminate non-exactness of Cohom(-, B) for the catalog."""
    from .comodule import comodule_over_self

    reg = comodule_over_self(c)
    out = []
    seen = set()
    for j in range(c.dim):
        sub = comodule_closure(reg, [{j: c.field.one()}])
        key = (tuple(sub.pivots), tuple(sorted((k, str(v)) for k, v in sub.basis.data.items())))
        if sub.dim in (0, c.dim) or key in seen:
            continue
        seen.add(key)
        s, incl = sub_comodule(reg, sub)
        q, proj = quotient_comodule(reg, sub)
        out.append((s, reg, q, incl, proj))
    return out
