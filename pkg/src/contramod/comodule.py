"""Comodules over a coalgebra: axioms, cofree objects, hom spaces, cotensor,
duals, injectivity and head/radical structure.

A left comodule of dimension m over an n-dimensional coalgebra stores its
coaction as an (n*m) x m matrix, row index c*m + i meaning e_c (x) e_i; a
right comodule uses shape (m*n) x m with row index i*n + c.  Hom spaces are
cut out by one equalizer in the flattened space M* (x) N.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coalgebra import Coalgebra, Verdict
from .linalg import Subspace, equalizer, kernel, quotient_by_image, solve
from .matrix import Mat, kron


@dataclass
class Comodule:
    coalgebra: Coalgebra
    side: str   # "left" | "right"
    dim: int
    coaction: Mat
    name: str = ""

    def __post_init__(self):
        n, m = self.coalgebra.dim, self.dim
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be left or right, got {self.side!r}")
        if self.coaction.rows != n * m or self.coaction.cols != m:
            raise ValueError(f"coaction must be {n * m}x{m}")
        if self.coaction.field != self.coalgebra.field:
            raise ValueError("field mismatch")

    @property
    def field(self):
        return self.coalgebra.field

    def __repr__(self):
        label = self.name or "comodule"
        return f"Comodule({label}, {self.side}, dim={self.dim} over {self.coalgebra.name or self.coalgebra.dim})"


def _add_into(acc, key, val, f):
    s = f.add(acc.get(key, f.zero()), val)
    if s == 0:
        acc.pop(key, None)
    else:
        acc[key] = s


def check_comodule(m: Comodule) -> Verdict:
    """Coassociativity square and counit triangle, column by column."""
    c = m.coalgebra
    f = c.field
    n, md = c.dim, m.dim
    failures = []
    coact_cols = m.coaction.columns()
    delta_cols = c.delta.columns()
    coassoc_ok = counit_ok = True
    for k in range(md):
        u = coact_cols.get(k, {})
        lhs: dict = {}
        rhs: dict = {}
        counit_acc: dict = {}
        for idx, v in u.items():
            if m.side == "left":
                cc, i = divmod(idx, md)
                for idx2, w in delta_cols.get(cc, {}).items():
                    _add_into(lhs, idx2 * md + i, f.mul(v, w), f)
                for idx2, w in coact_cols.get(i, {}).items():
                    _add_into(rhs, cc * n * md + idx2, f.mul(v, w), f)
                _add_into(counit_acc, i, f.mul(c.eps(cc), v), f)
            else:
                i, cc = divmod(idx, n)
                for idx2, w in delta_cols.get(cc, {}).items():
                    _add_into(lhs, i * n * n + idx2, f.mul(v, w), f)
                for idx2, w in coact_cols.get(i, {}).items():
                    _add_into(rhs, idx2 * n + cc, f.mul(v, w), f)
                _add_into(counit_acc, i, f.mul(c.eps(cc), v), f)
        if lhs != rhs:
            coassoc_ok = False
        if counit_acc != {k: f.one()}:
            counit_ok = False
        if not (coassoc_ok or counit_ok):
            break
    if not coassoc_ok:
        failures.append("coassociativity")
    if not counit_ok:
        failures.append("counit")
    return Verdict(failures)


# -- constructions ---------------------------------------------------------


def cofree(c: Coalgebra, d: int, side: str = "left") -> Comodule:
    """Carrier C (x) k^d (resp. k^d (x) C) with coaction Delta (x) Id."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    eye = Mat.identity(d, c.field)
    if side == "left":
        return Comodule(c, "left", c.dim * d, kron(c.delta, eye), name=f"cofree({d})")
    return Comodule(c, "right", d * c.dim, kron(eye, c.delta), name=f"cofree_r({d})")


def comodule_over_self(c: Coalgebra, side: str = "left") -> Comodule:
    return Comodule(c, side, c.dim, c.delta, name=f"{c.name or 'C'}-regular")


def trivial_comodule(c: Coalgebra, grouplike_vec: dict, side: str = "left") -> Comodule:
    """One-dimensional comodule along a grouplike element."""
    coact = Mat.column(grouplike_vec, c.dim, c.field)
    return Comodule(c, side, 1, coact, name="trivial")


def direct_sum(m1: Comodule, m2: Comodule) -> Comodule:
    if m1.coalgebra is not m2.coalgebra and m1.coalgebra != m2.coalgebra:
        raise ValueError("coalgebra mismatch")
    if m1.side != m2.side:
        raise ValueError("side mismatch")
    n = m1.coalgebra.dim
    d1, d2 = m1.dim, m2.dim
    d = d1 + d2
    entries = []
    if m1.side == "left":
        for (idx, j), v in m1.coaction.data.items():
            cc, i = divmod(idx, d1)
            entries.append((cc * d + i, j, v))
        for (idx, j), v in m2.coaction.data.items():
            cc, i = divmod(idx, d2)
            entries.append((cc * d + d1 + i, j + d1, v))
        coact = Mat.from_entries(n * d, d, m1.field, entries)
    else:
        for (idx, j), v in m1.coaction.data.items():
            i, cc = divmod(idx, n)
            entries.append((i * n + cc, j, v))
        for (idx, j), v in m2.coaction.data.items():
            i, cc = divmod(idx, n)
            entries.append(((d1 + i) * n + cc, j + d1, v))
        coact = Mat.from_entries(d * n, d, m1.field, entries)
    return Comodule(m1.coalgebra, m1.side, d, coact, name=f"{m1.name}+{m2.name}")


def dual_comodule(m: Comodule) -> Comodule:
    """Dual of a left comodule is a right comodule on M* (and conversely);
    with the fixed index conventions the double dual is literally the
    original matrix."""
    c = m.coalgebra
    n, md = c.dim, m.dim
    entries = []
    if m.side == "left":
        for (idx, j), v in m.coaction.data.items():
            cc, i = divmod(idx, md)
            entries.append((j * n + cc, i, v))
        coact = Mat.from_entries(md * n, md, m.field, entries)
        return Comodule(c, "right", md, coact, name=f"{m.name}*")
    for (idx, j), v in m.coaction.data.items():
        i, cc = divmod(idx, n)
        entries.append((cc * md + j, i, v))
    coact = Mat.from_entries(n * md, md, m.field, entries)
    return Comodule(c, "left", md, coact, name=f"{m.name}*")


# -- hom spaces and cotensor --------------------------------------------------


def _postcompose_coaction(m: Comodule, target_dim: int) -> Mat:
    """Matrix of F -> (Id_C (x) F) o coaction_M  (left) or
    F -> (F (x) Id_C) o coaction_M (right) on flattened hom spaces."""
    c = m.coalgebra
    f = m.field
    n, md = c.dim, m.dim
    w_dim = target_dim
    entries = []
    if m.side == "left":
        for (idx, vcol), val in m.coaction.data.items():
            cc, v = divmod(idx, md)
            for w in range(w_dim):
                entries.append((vcol * n * w_dim + cc * w_dim + w, v * w_dim + w, val))
        return Mat.from_entries(md * n * w_dim, md * w_dim, f, entries)
    for (idx, vcol), val in m.coaction.data.items():
        v, cc = divmod(idx, n)
        for w in range(w_dim):
            entries.append((vcol * w_dim * n + w * n + cc, v * w_dim + w, val))
    return Mat.from_entries(md * w_dim * n, md * w_dim, f, entries)


def hom_comodules(m: Comodule, n_mod: Comodule) -> Subspace:
    """All comodule maps M -> N as a subspace of M* (x) N."""
    if m.coalgebra != n_mod.coalgebra:
        raise ValueError("coalgebra mismatch")
    if m.side != n_mod.side:
        raise ValueError("side mismatch")
    lhs = kron(Mat.identity(m.dim, m.field), n_mod.coaction)
    rhs = _postcompose_coaction(m, n_mod.dim)
    return equalizer(lhs, rhs)


def hom_basis_maps(m: Comodule, n_mod: Comodule, sub: Subspace | None = None) -> list[Mat]:
    """Decode a hom subspace into matrices N.dim x M.dim."""
    if sub is None:
        sub = hom_comodules(m, n_mod)
    out = []
    for col in sub.basis_columns():
        entries = []
        for idx, v in col.items():
            x, y = divmod(idx, n_mod.dim)
            entries.append((y, x, v))
        out.append(Mat.from_entries(n_mod.dim, m.dim, m.field, entries))
    return out


def is_comodule_map(m: Comodule, n_mod: Comodule, t: Mat) -> bool:
    if m.side != n_mod.side:
        return False
    n = m.coalgebra.dim
    if m.side == "left":
        return n_mod.coaction @ t == kron(Mat.identity(n, m.field), t) @ m.coaction
    return n_mod.coaction @ t == kron(t, Mat.identity(n, m.field)) @ m.coaction


def cotensor(m: Comodule, n_mod: Comodule) -> Subspace:
    """Cotensor of a right comodule with a left comodule inside M (x) N."""
    if m.coalgebra != n_mod.coalgebra:
        raise ValueError("coalgebra mismatch")
    if m.side != "right" or n_mod.side != "left":
        raise ValueError("cotensor needs (right, left) arguments")
    lhs = kron(m.coaction, Mat.identity(n_mod.dim, m.field))
    rhs = kron(Mat.identity(m.dim, m.field), n_mod.coaction)
    return equalizer(lhs, rhs)


def tensor_over_bialgebra(b, m: Comodule, n_mod: Comodule) -> Comodule:
    """Tensor product of two left comodules over a bialgebra."""
    from .matrix import swap_mat

    c = b.coalgebra
    if m.coalgebra != c or n_mod.coalgebra != c:
        raise ValueError("comodules must live over the bialgebra's coalgebra")
    if m.side != "left" or n_mod.side != "left":
        raise ValueError("tensor implemented for left comodules")
    n = c.dim
    f = c.field
    both = kron(m.coaction, n_mod.coaction)
    mid = kron(kron(Mat.identity(n, f), swap_mat(f, m.dim, n)), Mat.identity(n_mod.dim, f))
    mult_part = kron(kron(b.mult, Mat.identity(m.dim, f)), Mat.identity(n_mod.dim, f))
    coact = mult_part @ mid @ both
    return Comodule(c, "left", m.dim * n_mod.dim, coact, name=f"{m.name}(x){n_mod.name}")


# -- subobjects and quotients ---------------------------------------------------


def _coaction_slices(m: Comodule, vec: dict) -> dict:
    """Apply the coaction to vec and slice the result by coalgebra index."""
    n, md = m.coalgebra.dim, m.dim
    out: dict = {}
    img = m.coaction.apply(vec)
    for idx, v in img.items():
        if m.side == "left":
            cc, i = divmod(idx, md)
        else:
            i, cc = divmod(idx, n)
        out.setdefault(cc, {})[i] = v
    return out


def coaction_stabilizes(m: Comodule, sub: Subspace) -> bool:
    """True iff the coaction maps sub into C (x) sub."""
    for col in sub.basis_columns():
        for slice_vec in _coaction_slices(m, col).values():
            if not sub.contains(slice_vec):
                return False
    return True


def comodule_closure(m: Comodule, vectors: list[dict]) -> Subspace:
    """Smallest subcomodule containing the given vectors."""
    sub = Subspace.from_columns(m.dim, m.field, vectors)
    while True:
        extra = []
        for col in sub.basis_columns():
            for slice_vec in _coaction_slices(m, col).values():
                if not sub.contains(slice_vec):
                    extra.append(slice_vec)
        if not extra:
            return sub
        sub = sub.add(Subspace.from_columns(m.dim, m.field, extra))


def sub_comodule(m: Comodule, sub: Subspace) -> tuple[Comodule, Mat]:
    """Restrict the coaction to a stable subspace; returns (N, inclusion)."""
    if not coaction_stabilizes(m, sub):
        raise ValueError("subspace is not a subcomodule")
    k = sub.dim
    n = m.coalgebra.dim
    entries = []
    for t, col in enumerate(sub.basis_columns()):
        for cc, slice_vec in _coaction_slices(m, col).items():
            coords = sub.coords(slice_vec)
            for s, v in coords.items():
                if m.side == "left":
                    entries.append((cc * k + s, t, v))
                else:
                    entries.append((s * n + cc, t, v))
    shape = n * k if m.side == "left" else k * n
    coact = Mat.from_entries(shape, k, m.field, entries)
    return Comodule(m.coalgebra, m.side, k, coact, name=f"{m.name}|sub"), sub.basis


def quotient_comodule(m: Comodule, sub: Subspace) -> tuple[Comodule, Mat]:
    """Quotient by a subcomodule; returns (M/sub, projection)."""
    if not coaction_stabilizes(m, sub):
        raise ValueError("subspace is not a subcomodule")
    coeq = quotient_by_image(sub)
    q, sigma = coeq.quotient_map, coeq.section
    n = m.coalgebra.dim
    eye = Mat.identity(n, m.field)
    lift = kron(eye, q) if m.side == "left" else kron(q, eye)
    coact = lift @ m.coaction @ sigma
    quot = Comodule(m.coalgebra, m.side, coeq.dim, coact, name=f"{m.name}/sub")
    # well-definedness: the composite must kill the subcomodule
    if not (lift @ m.coaction @ sub.basis).is_zero():
        raise ValueError("quotient coaction not well defined")
    return quot, q


# -- injectivity ----------------------------------------------------------------


def is_injective(m: Comodule) -> tuple[bool, Mat | None]:
    """Split the canonical cofree embedding given by the coaction.

    Returns (flag, retraction): the coaction embeds M into the cofree
    comodule on its own carrier, and M is injective iff that embedding
    admits a comodule retraction, found by one linear solve.
    """
    c = m.coalgebra
    f = m.field
    amb = cofree(c, m.dim, side=m.side)
    # hom condition rows for maps amb -> M
    lhs = kron(Mat.identity(amb.dim, f), m.coaction)
    rhs = _postcompose_coaction(amb, m.dim)
    hom_rows = lhs - rhs
    # composition-with-iota rows: r o coaction = id
    comp_entries = []
    for (x, i), v in m.coaction.data.items():
        for i2 in range(m.dim):
            comp_entries.append((i * m.dim + i2, x * m.dim + i2, v))
    comp = Mat.from_entries(m.dim * m.dim, amb.dim * m.dim, f, comp_entries)
    system = hom_rows.vstack(comp)
    rhs_vec = {
        hom_rows.rows + i * m.dim + i: f.one() for i in range(m.dim)
    }
    x = solve(system, rhs_vec)
    if x is None:
        return False, None
    entries = []
    for idx, v in x.items():
        col, row = divmod(idx, m.dim)
        entries.append((row, col, v))
    retraction = Mat.from_entries(m.dim, amb.dim, f, entries)
    return True, retraction


# -- head and radical -------------------------------------------------------------


@dataclass
class HeadRadical:
    radical: Subspace
    head: dict  # simple label -> multiplicity


def head_radical(m: Comodule, simples: list[Comodule]) -> HeadRadical:
    """Radical and head multiplicities relative to a complete list of simples.

    The list must be complete and irredundant for the coalgebra; this is the
    caller's obligation and cannot be detected here.
    """
    f = m.field
    stacked_rows = []
    head = {}
    for idx, s in enumerate(simples):
        hom = hom_comodules(m, s)
        if hom.dim == 0:
            continue
        end_dim = hom_comodules(s, s).dim
        label = s.name or f"simple{idx}"
        mult, rem = divmod(hom.dim, end_dim)
        if rem:
            raise ValueError("hom dimension not divisible by endomorphism dimension")
        head[label] = mult
        stacked_rows.extend(hom_basis_maps(m, s, hom))
    if not stacked_rows:
        return HeadRadical(Subspace.full(m.dim, f), {})
    big = stacked_rows[0]
    for t in stacked_rows[1:]:
        big = big.vstack(t)
    return HeadRadical(kernel(big), head)
