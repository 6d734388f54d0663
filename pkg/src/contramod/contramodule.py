"""Finite-dimensional contramodules: axioms, free objects, contra-hom spaces,
the comodule conversion, contratensor, Cohom, projectivity and the
Hom/Cohom duality pairing.

A contramodule of dimension b stores the structure map theta as a
b x (n*b) matrix under the identification Hom(C, B) = C* (x) B, column
j*b + k meaning (dual basis vector j) (x) (basis vector k).  The tensor-hom
adjunction used throughout is Hom(U, Hom(V, W)) = Hom(V (x) U, W), the
orientation that makes these LEFT contramodules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coalgebra import Coalgebra, Verdict
from .comodule import Comodule
from .linalg import (
    Coequalizer, Subspace, coequalizer, equalizer, quotient_by_image, rank, solve,
)
from .matrix import Mat, ev_mat, kron, swap_mat


@dataclass
class Contramodule:
    coalgebra: Coalgebra
    dim: int
    theta: Mat   # dim x (n * dim)
    name: str = ""

    def __post_init__(self):
        n, b = self.coalgebra.dim, self.dim
        if self.theta.rows != b or self.theta.cols != n * b:
            raise ValueError(f"theta must be {b}x{n * b}")
        if self.theta.field != self.coalgebra.field:
            raise ValueError("field mismatch")

    @property
    def field(self):
        return self.coalgebra.field

    def __repr__(self):
        label = self.name or "contramodule"
        return f"Contramodule({label}, dim={self.dim} over {self.coalgebra.name or self.coalgebra.dim})"


def _dual_mult(c: Coalgebra) -> Mat:
    """Multiplication of the dual algebra on C* (x) C*, oriented so that the
    second tensor factor is the outer Hom variable."""
    return c.delta.transpose() @ swap_mat(c.field, c.dim, c.dim)


def check_contramodule(b: Contramodule) -> Verdict:
    """Contra-associativity and contra-unity as exact matrix identities."""
    c = b.coalgebra
    f = b.field
    n, bd = c.dim, b.dim
    failures = []
    eye_b = Mat.identity(bd, f)
    if b.theta @ kron(c.epsilon.transpose(), eye_b) != eye_b:
        failures.append("contra-unity")
    lhs = b.theta @ kron(Mat.identity(n, f), b.theta)
    rhs = b.theta @ kron(_dual_mult(c), eye_b)
    if lhs != rhs:
        failures.append("contra-associativity")
    return Verdict(failures)


# -- constructions -----------------------------------------------------------


def free_contramodule(c: Coalgebra, d: int) -> Contramodule:
    """Hom(C, k^d) = C* (x) k^d with theta from comultiplication."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    theta = kron(_dual_mult(c), Mat.identity(d, c.field))
    return Contramodule(c, c.dim * d, theta, name=f"free({d})")


def trivial_contramodule(c: Coalgebra, grouplike_vec: dict) -> Contramodule:
    """k with theta = evaluation at a grouplike element."""
    theta = Mat(1, c.dim, c.field, {(0, j): v for j, v in grouplike_vec.items() if v != 0})
    return Contramodule(c, 1, theta, name="trivial")


def direct_sum(b1: Contramodule, b2: Contramodule) -> Contramodule:
    if b1.coalgebra != b2.coalgebra:
        raise ValueError("coalgebra mismatch")
    n = b1.coalgebra.dim
    d1, d2 = b1.dim, b2.dim
    d = d1 + d2
    entries = []
    for (i, idx), v in b1.theta.data.items():
        j, k = divmod(idx, d1)
        entries.append((i, j * d + k, v))
    for (i, idx), v in b2.theta.data.items():
        j, k = divmod(idx, d2)
        entries.append((d1 + i, j * d + d1 + k, v))
    theta = Mat.from_entries(d, n * d, b1.field, entries)
    return Contramodule(b1.coalgebra, d, theta, name=f"{b1.name}+{b2.name}")


def contra_from_comodule(w: Comodule) -> Contramodule:
    """The natural dual-algebra action on a finite-dimensional left comodule,
    as a contra-action: evaluate the functional against the coaction."""
    if w.side != "left":
        raise ValueError("conversion defined for left comodules")
    md = w.dim
    entries = []
    for (idx, k), v in w.coaction.data.items():
        j, i = divmod(idx, md)
        entries.append((i, j * md + k, v))
    theta = Mat.from_entries(md, w.coalgebra.dim * md, w.field, entries)
    return Contramodule(w.coalgebra, md, theta, name=f"{w.name}~contra")


def contra_from_dual(m: Comodule, d: int) -> Contramodule:
    """Hom(M, k^d) as a contramodule, for M a finite-dimensional right
    comodule; carrier indexed as M* (x) k^d so that M = C reproduces the free
    contramodule on k^d entry for entry."""
    if m.side != "right":
        raise ValueError("contra_from_dual needs a right comodule")
    n, md = m.coalgebra.dim, m.dim
    b = md * d
    entries = []
    for (idx, s), v in m.coaction.data.items():
        i, j = divmod(idx, n)
        for l in range(d):
            entries.append((s * d + l, j * b + i * d + l, v))
    theta = Mat.from_entries(b, n * b, m.field, entries)
    return Contramodule(m.coalgebra, b, theta, name=f"hom({m.name},k^{d})")


# -- contra-hom spaces ----------------------------------------------------------


def _postcompose_theta(target: Contramodule, source_dim: int) -> Mat:
    """Matrix of f -> theta_D o (Id_C* (x) f) on flattened hom spaces."""
    n = target.coalgebra.dim
    d = target.dim
    b = source_dim
    entries = []
    for (d2, idx), v in target.theta.data.items():
        j, delta = divmod(idx, d)
        for beta in range(b):
            entries.append(((j * b + beta) * d + d2, beta * d + delta, v))
    return Mat.from_entries(n * b * d, b * d, target.field, entries)


def hom_contra(b: Contramodule, d: Contramodule) -> Subspace:
    """Contra-homomorphisms B -> D as a subspace of B* (x) D."""
    if b.coalgebra != d.coalgebra:
        raise ValueError("coalgebra mismatch")
    lhs = kron(b.theta.transpose(), Mat.identity(d.dim, d.field))
    rhs = _postcompose_theta(d, b.dim)
    return equalizer(lhs, rhs)


def hom_contra_basis_maps(b: Contramodule, d: Contramodule, sub: Subspace | None = None) -> list[Mat]:
    if sub is None:
        sub = hom_contra(b, d)
    out = []
    for col in sub.basis_columns():
        entries = []
        for idx, v in col.items():
            x, y = divmod(idx, d.dim)
            entries.append((y, x, v))
        out.append(Mat.from_entries(d.dim, b.dim, b.field, entries))
    return out


def is_contra_map(b: Contramodule, d: Contramodule, t: Mat) -> bool:
    n = b.coalgebra.dim
    return t @ b.theta == d.theta @ kron(Mat.identity(n, b.field), t)


# -- subobjects ------------------------------------------------------------------


def theta_stabilizes(b: Contramodule, sub: Subspace) -> bool:
    """True iff theta maps C* (x) sub into sub."""
    n = b.coalgebra.dim
    image_cols = (b.theta @ kron(Mat.identity(n, b.field), sub.basis)).columns()
    return all(sub.contains(col) for col in image_cols.values())


def contra_closure(b: Contramodule, vectors: list[dict]) -> Subspace:
    """Smallest subcontramodule containing the given vectors."""
    sub = Subspace.from_columns(b.dim, b.field, vectors)
    n = b.coalgebra.dim
    eye = Mat.identity(n, b.field)
    while True:
        hit = b.theta @ kron(eye, sub.basis)
        grown = sub.add(Subspace.from_columns(b.dim, b.field, hit.columns().values()))
        if grown.dim == sub.dim:
            return sub
        sub = grown


def sub_contramodule(b: Contramodule, sub: Subspace) -> tuple[Contramodule, Mat]:
    if not theta_stabilizes(b, sub):
        raise ValueError("subspace is not a subcontramodule")
    n = b.coalgebra.dim
    k = sub.dim
    hit = b.theta @ kron(Mat.identity(n, b.field), sub.basis)
    entries = []
    for j_col, col in hit.columns().items():
        coords = sub.coords(col)
        for s, v in coords.items():
            entries.append((s, j_col, v))
    theta = Mat.from_entries(k, n * k, b.field, entries)
    return Contramodule(b.coalgebra, k, theta, name=f"{b.name}|sub"), sub.basis


def quotient_contramodule(b: Contramodule, sub: Subspace) -> tuple[Contramodule, Mat]:
    if not theta_stabilizes(b, sub):
        raise ValueError("subspace is not a subcontramodule")
    n = b.coalgebra.dim
    coeq = quotient_by_image(sub)
    q, sigma = coeq.quotient_map, coeq.section
    theta = q @ b.theta @ kron(Mat.identity(n, b.field), sigma)
    if not (q @ b.theta @ kron(Mat.identity(n, b.field), sub.basis)).is_zero():
        raise ValueError("quotient theta not well defined")
    return Contramodule(b.coalgebra, coeq.dim, theta, name=f"{b.name}/sub"), q


# -- contratensor and Cohom -------------------------------------------------------


def contratensor(m: Comodule, b: Contramodule) -> Coequalizer:
    """Contratensor product of a right comodule with a contramodule: the
    coequalizer of Id (x) theta against evaluation after the coaction,
    presented as a quotient of M (x) B."""
    if m.coalgebra != b.coalgebra:
        raise ValueError("coalgebra mismatch")
    if m.side != "right":
        raise ValueError("contratensor needs a right comodule")
    f = m.field
    n = m.coalgebra.dim
    map1 = kron(Mat.identity(m.dim, f), b.theta)
    ev = ev_mat(f, n)
    map2 = kron(kron(Mat.identity(m.dim, f), ev), Mat.identity(b.dim, f)) @ kron(
        m.coaction, Mat.identity(n * b.dim, f)
    )
    return coequalizer(map1, map2)


def cohom_maps(m: Comodule, b: Contramodule) -> tuple[Mat, Mat]:
    """The coequalizer pair Hom(C (x) M, B) -> Hom(M, B) defining Cohom:
    precomposition with the coaction against the contra-action."""
    if m.coalgebra != b.coalgebra:
        raise ValueError("coalgebra mismatch")
    if m.side != "left":
        raise ValueError("cohom needs a left comodule")
    f = m.field
    n = m.coalgebra.dim
    eye_b = Mat.identity(b.dim, f)
    f_map = kron(m.coaction.transpose(), eye_b)
    g_map = kron(Mat.identity(m.dim, f), b.theta) @ kron(swap_mat(f, n, m.dim), eye_b)
    return f_map, g_map


def cohom(m: Comodule, b: Contramodule) -> Coequalizer:
    """Cohom as a quotient of Hom(M, B) = M* (x) B."""
    f_map, g_map = cohom_maps(m, b)
    return coequalizer(f_map, g_map)


# -- projectivity -----------------------------------------------------------------


def is_projective(b: Contramodule) -> tuple[bool, Mat | None]:
    """Split the canonical free presentation: theta itself is a
    contra-homomorphism from the free contramodule on the carrier of B onto
    B, and B is projective iff it admits a contra-homomorphism section."""
    c = b.coalgebra
    f = b.field
    free = free_contramodule(c, b.dim)
    # hom condition rows for maps B -> free
    lhs = kron(b.theta.transpose(), Mat.identity(free.dim, f))
    rhs = _postcompose_theta(free, b.dim)
    hom_rows = lhs - rhs
    # composition rows: theta o s = id_B
    comp_entries = []
    for (b2, x), v in b.theta.data.items():
        for beta in range(b.dim):
            comp_entries.append((beta * b.dim + b2, beta * free.dim + x, v))
    comp = Mat.from_entries(b.dim * b.dim, b.dim * free.dim, f, comp_entries)
    system = hom_rows.vstack(comp)
    rhs_vec = {hom_rows.rows + i * b.dim + i: f.one() for i in range(b.dim)}
    x = solve(system, rhs_vec)
    if x is None:
        return False, None
    entries = []
    for idx, v in x.items():
        col, row = divmod(idx, free.dim)
        entries.append((row, col, v))
    section = Mat.from_entries(free.dim, b.dim, f, entries)
    return True, section


@dataclass
class CohomExactness:
    exact: bool
    failures: list   # subset of {"left", "middle", "right"}
    dims: tuple      # (dim Cohom(Q,B), dim Cohom(M,B), dim Cohom(A,B))


def cohom_exactness_probe(sub: Comodule, mid: Comodule, quot: Comodule,
                          incl: Mat, proj: Mat, b: Contramodule) -> CohomExactness:
    """Apply Cohom(-, B) to a short exact sequence of left comodules
    0 -> sub -> mid -> quot -> 0 and report where exactness fails.

    The functor is contravariant and right exact; projectivity of B is
    equivalent to exactness on every input sequence.
    """
    from .linalg import image as _image, kernel as _kernel

    f = b.field
    eye_b = Mat.identity(b.dim, f)
    co_a, co_m, co_q = cohom(sub, b), cohom(mid, b), cohom(quot, b)

    def descend(co_src, co_tgt, structural: Mat) -> Mat:
        lifted = co_tgt.quotient_map @ kron(structural.transpose(), eye_b)
        if not (lifted @ co_src.image_subspace.basis).is_zero():
            raise AssertionError("Cohom functorial map does not descend")
        return lifted @ co_src.section

    pi_star = descend(co_q, co_m, proj)
    iota_star = descend(co_m, co_a, incl)
    failures = []
    if rank(pi_star) != co_q.dim:
        failures.append("left")
    if _image(pi_star) != _kernel(iota_star):
        failures.append("middle")
    if rank(iota_star) != co_a.dim:
        failures.append("right")
    return CohomExactness(not failures, failures, (co_q.dim, co_m.dim, co_a.dim))


# -- duality ------------------------------------------------------------------------


@dataclass
class DualityReport:
    cohom_dim: int
    hom_dim: int
    pairing_rank: int

    @property
    def ok(self) -> bool:
        return self.cohom_dim == self.hom_dim == self.pairing_rank


def duality_check(v: Comodule, w: Comodule) -> DualityReport:
    """Compare Cohom(V, W-as-contramodule) with Hom(W, V)* and certify the
    trace pairing between them is perfect.

    Both sides are computed through independent routes (a coequalizer and an
    equalizer); the pairing on representatives is checked to annihilate the
    coequalizer relations and to have full rank.
    """
    from .comodule import hom_basis_maps, hom_comodules

    if v.side != "left" or w.side != "left":
        raise ValueError("duality check needs left comodules")
    f = v.field
    w_contra = contra_from_comodule(w)
    co = cohom(v, w_contra)
    hom = hom_comodules(w, v)
    hom_maps = hom_basis_maps(w, v, hom)

    def trace_pair(map_vw: Mat, map_wv: Mat):
        acc = f.zero()
        for (y, x), val in map_vw.data.items():
            other = map_wv[x, y]
            if other != 0:
                acc = f.add(acc, f.mul(val, other))
        return acc

    # relations must pair to zero against every comodule map
    for rel_col in co.image_subspace.basis.columns().values():
        rel = _map_from_vec(rel_col, v.dim, w.dim, f)
        for hmap in hom_maps:
            if trace_pair(rel, hmap) != 0:
                return DualityReport(co.dim, hom.dim, -1)
    # pairing matrix on section representatives
    entries = []
    sec_cols = co.section.columns()
    for t in range(co.dim):
        rep = _map_from_vec(sec_cols.get(t, {}), v.dim, w.dim, f)
        for s, hmap in enumerate(hom_maps):
            val = trace_pair(rep, hmap)
            if val != 0:
                entries.append((t, s, val))
    pairing = Mat.from_entries(co.dim, hom.dim, f, entries)
    return DualityReport(co.dim, hom.dim, rank(pairing))


def _map_from_vec(vec: dict, dim_x: int, dim_y: int, field) -> Mat:
    entries = []
    for idx, v in vec.items():
        x, y = divmod(idx, dim_y)
        entries.append((y, x, v))
    return Mat.from_entries(dim_y, dim_x, field, entries)
