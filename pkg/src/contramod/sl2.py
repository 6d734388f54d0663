"""Concrete SL2 instantiation in positive characteristic: normal-form
arithmetic in the coordinate ring, rational modules with polynomial
coactions, Frobenius twists and kernels, the characteristic-2 projective
catalog, the twisted tensor tower, and the character multiplicity oracle.

Normal form: the relation ad = 1 + bc eliminates mixed a/d monomials, so a
monomial is (i, j, k, l) for b^i c^j a^k d^l with k*l = 0.  The r-th
Frobenius-kernel coordinate ring has basis b^i c^j a^k with all exponents
below p^r, using a^{p^r} = 1 and d = a^{p^r - 1}(1 + bc).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .coalgebra import Coalgebra, Verdict
from .comodule import Comodule
from .fields import GF
from .linalg import Subspace, kernel
from .matrix import Mat
from .towers import InverseSystem

Mono = tuple  # (b_exp, c_exp, a_exp, d_exp), a_exp * d_exp == 0


def _mono_mul(m1: Mono, m2: Mono, p: int) -> dict:
    """Product of two normal-form monomials; a^k d^l pairs reduce through
    (ad)^t = (1 + bc)^t."""
    i = m1[0] + m2[0]
    j = m1[1] + m2[1]
    k = m1[2] + m2[2]
    l = m1[3] + m2[3]
    t = min(k, l)
    if t == 0:
        return {(i, j, k, l): 1}
    out = {}
    for s in range(t + 1):
        c = comb(t, s) % p
        if c:
            out[(i + s, j + s, k - t, l - t)] = c
    return out


class SL2Poly:
    """Element of k[SL2] over F_p in normal form; immutable by convention."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict | None = None):
        self.p = p
        self.terms = {} if terms is None else terms

    @classmethod
    def const(cls, p: int, val: int) -> "SL2Poly":
        val %= p
        return cls(p, {(0, 0, 0, 0): val} if val else {})

    @classmethod
    def gen(cls, p: int, name: str) -> "SL2Poly":
        mono = {"b": (1, 0, 0, 0), "c": (0, 1, 0, 0), "a": (0, 0, 1, 0), "d": (0, 0, 0, 1)}[name]
        return cls(p, {mono: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, SL2Poly) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        raise TypeError("SL2Poly is not hashable")

    def __add__(self, other: "SL2Poly") -> "SL2Poly":
        p = self.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = (terms.get(m, 0) + c) % p
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return SL2Poly(p, terms)

    def __mul__(self, other: "SL2Poly") -> "SL2Poly":
        p = self.p
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2 % p
                if not c12:
                    continue
                for m, cr in _mono_mul(m1, m2, p).items():
                    s = (acc.get(m, 0) + c12 * cr) % p
                    if s:
                        acc[m] = s
                    else:
                        acc.pop(m, None)
        return SL2Poly(p, acc)

    def frobenius(self, s: int) -> "SL2Poly":
        """Raise to the p^s power: exponents scale, coefficients are fixed."""
        q = self.p ** s
        return SL2Poly(self.p, {
            (i * q, j * q, k * q, l * q): c for (i, j, k, l), c in self.terms.items()
        })

    def eps(self) -> int:
        """Counit: a, d -> 1 and b, c -> 0."""
        return sum(c for (i, j, _, _), c in self.terms.items() if i == 0 and j == 0) % self.p

    def torus_restrict(self) -> dict:
        """Restrict along a -> z, d -> z^-1, b, c -> 0: weight -> coefficient."""
        out: dict = {}
        for (i, j, k, l), c in self.terms.items():
            if i or j:
                continue
            w = k - l
            s = (out.get(w, 0) + c) % self.p
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j, k, l), c in sorted(self.terms.items()):
            mono = "".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip("bcad", (i, j, k, l)) if e
            ) or "1"
            bits.append(f"{c}*{mono}" if c != 1 or mono == "1" else mono)
        return " + ".join(bits)


def _delta_mono(mono: Mono, p: int) -> dict:
    """Coproduct of a normal-form monomial in the tensor square, via the
    closed binomial expansions of the generator coproducts."""
    i, j, k, l = mono
    acc = {((0, 0, 0, 0), (0, 0, 0, 0)): 1}

    def mul_in(acc, pairs):
        out: dict = {}
        for (x1, y1), c1 in acc.items():
            for (x2, y2), c2 in pairs.items():
                c12 = c1 * c2 % p
                if not c12:
                    continue
                for mx, cx in _mono_mul(x1, x2, p).items():
                    for my, cy in _mono_mul(y1, y2, p).items():
                        key = (mx, my)
                        s = (out.get(key, 0) + c12 * cx * cy) % p
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        return out

    # binomial expansions of the generator coproducts, each in one shot:
    # (a(x)b + b(x)d)^i, (c(x)a + d(x)c)^j, (a(x)a + b(x)c)^k, (c(x)b + d(x)d)^l
    db = {((i - t, 0, t, 0), (t, 0, 0, i - t)): c
          for t in range(i + 1) if (c := comb(i, t) % p)}
    dc = {((0, u, 0, j - u), (0, j - u, u, 0)): c
          for u in range(j + 1) if (c := comb(j, u) % p)}
    da = {((k - s, 0, s, 0), (0, k - s, s, 0)): c
          for s in range(k + 1) if (c := comb(k, s) % p)}
    dd = {((0, v, 0, l - v), (v, 0, 0, l - v)): c
          for v in range(l + 1) if (c := comb(l, v) % p)}
    for exp, factor in ((i, db), (j, dc), (k, da), (l, dd)):
        if exp:
            acc = mul_in(acc, factor)
    return acc


def delta_poly(poly: SL2Poly) -> dict:
    """Coproduct of a polynomial as a tensor-square dict {(m1, m2): coeff}."""
    p = poly.p
    acc: dict = {}
    for mono, c in poly.terms.items():
        for key, c2 in _delta_mono(mono, p).items():
            s = (acc.get(key, 0) + c * c2) % p
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    return acc


# -- rational modules -------------------------------------------------------------


@dataclass
class RationalComodule:
    """Module with a polynomial coaction v_j -> sum_i v_i (x) a_ij, stored as
    the matrix of coefficients (a_ij); entries must satisfy the
    matrix-coefficient identities, checked by validate()."""

    p: int
    dim: int
    entries: dict   # (i, j) -> SL2Poly, nonzero only
    name: str = ""

    def entry(self, i: int, j: int) -> SL2Poly:
        return self.entries.get((i, j), SL2Poly(self.p))

    def validate(self) -> Verdict:
        failures = []
        p = self.p
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = delta_poly(self.entry(i, j))
                rhs: dict = {}
                for k in range(self.dim):
                    e1, e2 = self.entries.get((i, k)), self.entries.get((k, j))
                    if e1 is None or e2 is None:
                        continue
                    for m1, c1 in e1.terms.items():
                        for m2, c2 in e2.terms.items():
                            key = (m1, m2)
                            s = (rhs.get(key, 0) + c1 * c2) % p
                            if s:
                                rhs[key] = s
                            else:
                                rhs.pop(key, None)
                if lhs != rhs:
                    failures.append(f"delta({i},{j})")
                want = 1 if i == j else 0
                if self.entry(i, j).eps() != want:
                    failures.append(f"eps({i},{j})")
        return Verdict(failures)

    def character(self) -> dict:
        """Weight multiplicities from the torus restriction of the coaction;
        requires a weight basis (diagonal restricts to single powers and
        off-diagonal entries die on the torus)."""
        ch: dict = {}
        for j in range(self.dim):
            for i in range(self.dim):
                tor = self.entry(i, j).torus_restrict()
                if i == j:
                    if len(tor) != 1 or list(tor.values()) != [1]:
                        raise ValueError(f"basis vector {j} is not a weight vector")
                    w = next(iter(tor))
                    ch[w] = ch.get(w, 0) + 1
                elif tor:
                    raise ValueError(f"off-diagonal entry ({i},{j}) survives the torus")
        return ch

    def __repr__(self):
        return f"RationalComodule({self.name or 'module'}, dim={self.dim}, p={self.p})"


def trivial_rational(p: int) -> RationalComodule:
    return RationalComodule(p, 1, {(0, 0): SL2Poly.const(p, 1)}, name="L0")


def standard_rational(p: int) -> RationalComodule:
    g = {n: SL2Poly.gen(p, n) for n in "abcd"}
    entries = {(0, 0): g["a"], (0, 1): g["b"], (1, 0): g["c"], (1, 1): g["d"]}
    return RationalComodule(p, 2, entries, name="L1")


def frobenius_twist(m: RationalComodule, s: int) -> RationalComodule:
    if s < 0:
        raise ValueError("twist power must be nonnegative")
    entries = {k: poly.frobenius(s) for k, poly in m.entries.items()}
    return RationalComodule(m.p, m.dim, entries, name=f"{m.name}^Fr{s}" if s else m.name)


def tensor_rational(m: RationalComodule, n: RationalComodule) -> RationalComodule:
    if m.p != n.p:
        raise ValueError("characteristic mismatch")
    entries = {}
    for (i, j), e1 in m.entries.items():
        for (i2, j2), e2 in n.entries.items():
            prod = e1 * e2
            if not prod.is_zero():
                entries[(i * n.dim + i2, j * n.dim + j2)] = prod
    return RationalComodule(m.p, m.dim * n.dim, entries, name=f"{m.name}*{n.name}")


def direct_sum_rational(m: RationalComodule, n: RationalComodule) -> RationalComodule:
    if m.p != n.p:
        raise ValueError("characteristic mismatch")
    entries = dict(m.entries)
    for (i, j), poly in n.entries.items():
        entries[(m.dim + i, m.dim + j)] = poly
    return RationalComodule(m.p, m.dim + n.dim, entries, name=f"{m.name}+{n.name}")


def p_adic_digits(lam: int, p: int) -> list:
    if lam < 0:
        raise ValueError("weight must be nonnegative")
    if lam == 0:
        return [0]
    digits = []
    while lam:
        digits.append(lam % p)
        lam //= p
    return digits


def simple_module(p: int, mu: int) -> RationalComodule:
    """Twisted tensor product of restricted simples along the p-adic digits."""
    if p != 2:
        raise NotImplementedError("module catalog is shipped for p = 2 only")
    out = None
    for t, digit in enumerate(p_adic_digits(mu, p)):
        factor = trivial_rational(p) if digit == 0 else standard_rational(p)
        factor = frobenius_twist(factor, t)
        out = factor if out is None else tensor_rational(out, factor)
    out.name = f"L({mu})"
    return out


def catalog_modules(p: int = 2) -> dict:
    """The hard-coded characteristic-2 catalog: simples up to the Steinberg
    square range, the projective G-structures, and the fixed projection q."""
    if p != 2:
        raise NotImplementedError("catalog is shipped for p = 2 only")
    l0 = trivial_rational(p)
    l1 = standard_rational(p)
    l2 = frobenius_twist(l1, 1)
    l2.name = "L2"
    l3 = tensor_rational(l1, l2)
    l3.name = "L3"
    p0 = tensor_rational(l1, l1)
    p0.name = "P0"
    p1 = RationalComodule(p, 2, dict(l1.entries), name="P1")
    field = GF(p)
    q = Mat.from_entries(1, 4, field, [(0, 1, 1), (0, 2, 1)])
    return {"L0": l0, "L1": l1, "L2": l2, "L3": l3, "P0": p0, "P1": p1, "q": q}


def is_rational_map(t: Mat, m: RationalComodule, n: RationalComodule) -> bool:
    """Exact polynomial identity: coaction_N o T = (id (x) T) o coaction_M."""
    p = m.p
    if t.rows != n.dim or t.cols != m.dim:
        return False
    for l2 in range(n.dim):
        for j in range(m.dim):
            lhs = SL2Poly(p)
            for l in range(n.dim):
                coeff = t[l, j]
                if coeff != 0:
                    lhs = lhs + n.entry(l2, l) * SL2Poly.const(p, int(coeff))
            rhs = SL2Poly(p)
            for i in range(m.dim):
                coeff = t[l2, i]
                if coeff != 0:
                    rhs = rhs + m.entry(i, j) * SL2Poly.const(p, int(coeff))
            if lhs != rhs:
                return False
    return True


def hom_rational(m: RationalComodule, n: RationalComodule) -> Subspace:
    """All module maps M -> N, solved by equating normal-form coefficients.

    Unknowns are flattened as M* (x) N, matching the comodule hom convention.
    """
    if m.p != n.p:
        raise ValueError("characteristic mismatch")
    field = GF(m.p)
    nvars = m.dim * n.dim
    rows: dict = {}

    def row_key(l2, j, mono):
        return (l2, j, mono)

    for (l2, l), poly in n.entries.items():
        # T[l, j] contributes poly to equation (l2, j)
        for j in range(m.dim):
            var = j * n.dim + l
            for mono, c in poly.terms.items():
                rows.setdefault(row_key(l2, j, mono), {})
                cur = rows[(l2, j, mono)]
                cur[var] = (cur.get(var, 0) + c) % m.p
    for (i, j), poly in m.entries.items():
        # -T[l2, i] contributes for every l2
        for l2 in range(n.dim):
            var = i * n.dim + l2
            for mono, c in poly.terms.items():
                cur = rows.setdefault((l2, j, mono), {})
                cur[var] = (cur.get(var, 0) - c) % m.p
    entries = []
    for ridx, row in enumerate(rows.values()):
        for var, c in row.items():
            if c:
                entries.append((ridx, var, c))
    big = Mat.from_entries(len(rows), nvars, field, entries)
    return kernel(big)


def hom_rational_maps(m: RationalComodule, n: RationalComodule) -> list:
    sub = hom_rational(m, n)
    field = GF(m.p)
    out = []
    for col in sub.basis_columns():
        entries = []
        for idx, v in col.items():
            x, y = divmod(idx, n.dim)
            entries.append((y, x, v))
        out.append(Mat.from_entries(n.dim, m.dim, field, entries))
    return out


# -- Frobenius kernels ---------------------------------------------------------------


def _kernel_index(mono3, q: int) -> int:
    i, j, k = mono3
    return (i * q + j) * q + k


def _reduce_mono_kernel(mono: Mono, p: int, q: int):
    """Image of a normal-form monomial in the kernel basis {b^i c^j a^k}."""
    i, j, k, l = mono
    if l == 0:
        if i < q and j < q:
            yield (i, j, k % q), 1
        return
    k2 = (k + (q - 1) * l) % q
    for s in range(min(l, q - 1) + 1):
        c = comb(l, s) % p
        if c and i + s < q and j + s < q:
            yield (i + s, j + s, k2), c


def reduce_poly_to_kernel(poly: SL2Poly, r: int) -> dict:
    """Coefficients of a polynomial on the k[G_r] basis, as {mono3: coeff}."""
    p = poly.p
    q = p ** r
    out: dict = {}
    for mono, c in poly.terms.items():
        for m3, c2 in _reduce_mono_kernel(mono, p, q):
            s = (out.get(m3, 0) + c * c2) % p
            if s:
                out[m3] = s
            else:
                out.pop(m3, None)
    return out


def _kernel_delta_factory(p: int, r: int):
    """Comultiplication of k[G_r], built generator by generator in the
    truncated tensor ring where monomial products are single terms."""
    q = p ** r
    dim = q * q * q
    field = GF(p)

    def mul3(m1, m2):
        i = m1[0] + m2[0]
        j = m1[1] + m2[1]
        if i >= q or j >= q:
            return None
        return (i, j, (m1[2] + m2[2]) % q)

    def tmul(acc, factor):
        out: dict = {}
        for (x1, y1), c1 in acc.items():
            for (x2, y2), c2 in factor.items():
                mx = mul3(x1, x2)
                if mx is None:
                    continue
                my = mul3(y1, y2)
                if my is None:
                    continue
                key = (mx, my)
                s = (out.get(key, 0) + c1 * c2) % p
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    e = (0, 0, 0)
    unit = {(e, e): 1}
    # d in the truncated basis: a^{q-1}(1 + bc)
    da = {((0, 0, 1), (0, 0, 1)): 1, ((1, 0, 0), (0, 1, 0)): 1}
    db = {
        ((0, 0, 1), (1, 0, 0)): 1,
        ((1, 0, 0), (0, 0, q - 1)): 1,
        ((1, 0, 0), (1, 1, q - 1)): 1,
    }
    dc = {
        ((0, 1, 0), (0, 0, 1)): 1,
        ((0, 0, q - 1), (0, 1, 0)): 1,
        ((1, 1, q - 1), (0, 1, 0)): 1,
    }

    def build():
        entries = []
        base_i = unit
        for i in range(q):
            if i:
                base_i = tmul(base_i, db)
            base_j = base_i
            for j in range(q):
                if j:
                    base_j = tmul(base_j, dc)
                cur = base_j
                for k in range(q):
                    if k:
                        cur = tmul(cur, da)
                    col = _kernel_index((i, j, k), q)
                    for (m1, m2), c in cur.items():
                        entries.append((_kernel_index(m1, q) * dim + _kernel_index(m2, q), col, c))
        return Mat.from_entries(dim * dim, dim, field, entries)

    return build


@lru_cache(maxsize=None)
def frob_kernel_coalgebra(p: int, r: int) -> Coalgebra:
    """The coordinate ring of the r-th Frobenius kernel as a coalgebra of
    dimension p^(3r); the comultiplication matrix is built lazily."""
    if r < 1:
        raise ValueError("r must be at least 1")
    q = p ** r
    dim = q * q * q
    field = GF(p)
    eps_entries = [(0, _kernel_index((0, 0, k), q), 1) for k in range(q)]
    epsilon = Mat.from_entries(1, dim, field, eps_entries)
    return Coalgebra(
        field, dim, epsilon=epsilon, name=f"k[G_{r}]",
        delta_factory=_kernel_delta_factory(p, r),
    )


def restrict_to_kernel(m: RationalComodule, r: int) -> Comodule:
    """Right comodule over k[G_r] by reducing every coaction entry.

    The polynomial coaction v_j -> sum_i v_i (x) a_ij lands in V (x) k[G_r]
    after reduction; left-comodule consumers take the dual."""
    c = frob_kernel_coalgebra(m.p, r)
    q = m.p ** r
    entries = []
    for (i, j), poly in m.entries.items():
        for mono3, coeff in reduce_poly_to_kernel(poly, r).items():
            entries.append((i * c.dim + _kernel_index(mono3, q), j, coeff))
    coact = Mat.from_entries(m.dim * c.dim, m.dim, c.field, entries)
    return Comodule(c, "right", m.dim, coact, name=f"{m.name}|G{r}")


def kernel_grouplike(p: int, r: int) -> dict:
    """The unit monomial is grouplike in k[G_r]."""
    return {0: GF(p).one()}


# -- characters and multiplicities ------------------------------------------------------


def char_product(c1: dict, c2: dict) -> dict:
    out: dict = {}
    for w1, m1 in c1.items():
        for w2, m2 in c2.items():
            out[w1 + w2] = out.get(w1 + w2, 0) + m1 * m2
    return {w: m for w, m in out.items() if m}


def restricted_simple_character(p: int, d: int) -> dict:
    """For 0 <= d < p the simple of highest weight d has the full string of
    weights d, d-2, .., -d."""
    if not 0 <= d < p:
        raise ValueError("digit out of range")
    return {d - 2 * t: 1 for t in range(d + 1)}


def simple_character(p: int, mu: int) -> dict:
    ch = {0: 1}
    for t, digit in enumerate(p_adic_digits(mu, p)):
        scaled = {w * p ** t: m for w, m in restricted_simple_character(p, digit).items()}
        ch = char_product(ch, scaled)
    return ch


def character_decomposition(p: int, ch: dict) -> dict:
    """Greedy expansion in simple characters from the highest weight down;
    raises on any negative coefficient (inconsistent character)."""
    remaining = {w: m for w, m in ch.items() if m}
    mults: dict = {}
    while remaining:
        w = max(remaining)
        m = remaining[w]
        if w < 0 or m < 0:
            raise ValueError(f"inconsistent character at weight {w}: {m}")
        mults[w] = mults.get(w, 0) + m
        for w2, m2 in simple_character(p, w).items():
            s = remaining.get(w2, 0) - m * m2
            if s:
                remaining[w2] = s
            else:
                remaining.pop(w2, None)
    return mults


def f_multiplicity(lam: int, v: RationalComodule) -> int:
    """Composition multiplicity of the simple of highest weight lam in V."""
    return character_decomposition(v.p, v.character()).get(lam, 0)


# -- the twisted tensor tower --------------------------------------------------------


def build_tower(lam: int, p: int = 2, m_max: int = 3) -> InverseSystem:
    """Stages P_{lam, m} for m = s+1 .. m_max, where s indexes the top p-adic
    digit; transitions tensor the fixed projection q into the top twist."""
    if p != 2:
        raise NotImplementedError("tower catalog is shipped for p = 2 only")
    cat = catalog_modules(p)
    digits = p_adic_digits(lam, p)
    s = len(digits) - 1
    if m_max <= s:
        raise ValueError(f"m_max must exceed the top digit index {s}")
    proj = {0: cat["P0"], 1: cat["P1"]}
    stage = None
    for t, digit in enumerate(digits):
        factor = frobenius_twist(proj[digit], t)
        stage = factor if stage is None else tensor_rational(stage, factor)
    stage.name = f"P({lam},{s + 1})"
    stages = [stage]
    transitions = []
    field = GF(p)
    for m in range(s + 2, m_max + 1):
        prev = stages[-1]
        top = frobenius_twist(cat["P0"], m - 1)
        nxt = tensor_rational(prev, top)
        nxt.name = f"P({lam},{m})"
        stages.append(nxt)
        transitions.append(Mat.identity(prev.dim, field).kron(cat["q"]))
    return InverseSystem(stages, transitions, m0=s + 1)


def battery_module(p: int, expr: str) -> RationalComodule:
    """Parse battery expressions like "L1*L1" or "L3" into catalog tensors."""
    cat = catalog_modules(p)
    factors = [f.strip() for f in expr.split("*")]
    out = None
    for f in factors:
        if f not in cat or f == "q":
            raise KeyError(f"unknown battery module {f!r}")
        m = cat[f]
        out = m if out is None else tensor_rational(out, m)
    out.name = expr
    return out
