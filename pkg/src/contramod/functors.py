"""Restriction and induction of contramodules along a surjective coalgebra
map, the explicit adjunction isomorphism, and exactness probes.

Induction is the Cohom of the target-side comodule structure on the source
coalgebra: a quotient of the free contramodule on the carrier of W, with the
free structure pushed through the quotient after checking it kills the
relations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coalgebra import CoalgebraMorphism, Verdict
from .comodule import Comodule
from .contramodule import (
    Contramodule, check_contramodule, cohom_maps, free_contramodule,
    hom_contra, hom_contra_basis_maps, is_contra_map,
)
from .linalg import Subspace, coequalizer, image, kernel, rank
from .matrix import Mat, kron


def _require_surjective(rho: CoalgebraMorphism):
    if not rho.surjective or rank(rho.matrix) != rho.target.dim:
        raise ValueError("induction is only defined along surjective coalgebra maps")


def restrict(rho: CoalgebraMorphism, v: Contramodule) -> Contramodule:
    """View a C-contramodule as a D-contramodule through rho*: D* -> C*."""
    if v.coalgebra != rho.source:
        raise ValueError("contramodule does not live over the source coalgebra")
    _require_surjective(rho)
    eye = Mat.identity(v.dim, v.field)
    theta = v.theta @ kron(rho.matrix.transpose(), eye)
    return Contramodule(rho.target, v.dim, theta, name=f"{v.name}|res")


def comodule_along(rho: CoalgebraMorphism, side: str = "left") -> Comodule:
    """The source coalgebra as a comodule over the target, via
    (rho (x) id) o Delta (left) or (id (x) rho) o Delta (right)."""
    _require_surjective(rho)
    c = rho.source
    eye = Mat.identity(c.dim, c.field)
    if side == "left":
        coact = kron(rho.matrix, eye) @ c.delta
    else:
        coact = kron(eye, rho.matrix) @ c.delta
    return Comodule(rho.target, side, c.dim, coact, name=f"{c.name or 'C'}-over-{rho.target.name or 'D'}")


def build_f_g(rho: CoalgebraMorphism, w: Contramodule) -> tuple[Mat, Mat]:
    """The coequalizer pair Hom(D (x) C, W) -> Hom(C, W) whose quotient is
    the induced contramodule."""
    if w.coalgebra != rho.target:
        raise ValueError("contramodule does not live over the target coalgebra")
    return cohom_maps(comodule_along(rho, side="left"), w)


@dataclass
class InductionResult:
    induced: Contramodule
    presentation: Mat     # quotient map from the free contramodule on W's carrier
    section: Mat
    f_minus_g: Mat
    relations: Subspace   # Im(f - g) inside Hom(C, W)

    @property
    def dim(self) -> int:
        return self.induced.dim


def induce(rho: CoalgebraMorphism, w: Contramodule) -> InductionResult:
    """Induction along a surjective coalgebra map, with its free presentation."""
    _require_surjective(rho)
    f_map, g_map = build_f_g(rho, w)
    coeq = coequalizer(f_map, g_map)
    free = free_contramodule(rho.source, w.dim)
    n_c = rho.source.dim
    eye = Mat.identity(n_c, w.field)
    pushed = coeq.quotient_map @ free.theta
    if not (pushed @ kron(eye, coeq.image_subspace.basis)).is_zero():
        raise ValueError("free contra-action does not descend to the quotient")
    theta = pushed @ kron(eye, coeq.section)
    induced = Contramodule(rho.source, coeq.dim, theta, name=f"ind({w.name})")
    verdict = check_contramodule(induced)
    if not verdict.ok:
        raise AssertionError(f"induced object fails axioms: {verdict.failures}")
    return InductionResult(
        induced, coeq.quotient_map, coeq.section, f_map - g_map, coeq.image_subspace
    )


def induce_map(
    rho: CoalgebraMorphism,
    res_src: InductionResult,
    res_tgt: InductionResult,
    h: Mat,
) -> Mat:
    """Functorial action on a contra-homomorphism h: W -> W'."""
    n_c = rho.source.dim
    f = h.field
    eye = Mat.identity(n_c, f)
    lifted = res_tgt.presentation @ kron(eye, h)
    if not (lifted @ res_src.relations.basis).is_zero():
        raise ValueError("map does not descend: is h a contra-homomorphism?")
    return lifted @ res_src.section


# -- the adjunction ---------------------------------------------------------------


def gamma(rho: CoalgebraMorphism, res: InductionResult, phi: Mat) -> Mat:
    """Turn a contra-hom Ind(W) -> V into W -> V|_D by precomposing with the
    counit-induced splitting of the free presentation."""
    w_dim = res.presentation.cols // rho.source.dim
    eps_sec = kron(rho.source.epsilon.transpose(), Mat.identity(w_dim, phi.field))
    return phi @ res.presentation @ eps_sec


def gamma_inv(rho: CoalgebraMorphism, res: InductionResult, v: Contramodule, psi: Mat) -> Mat:
    """Inverse direction: extend W -> V|_D to Ind(W) -> V via the
    contra-action of V."""
    n_c = rho.source.dim
    eye = Mat.identity(n_c, psi.field)
    on_free = v.theta @ kron(eye, psi)
    if not (on_free @ res.relations.basis).is_zero():
        raise ValueError("extension does not kill the induction relations")
    return on_free @ res.section


@dataclass
class AdjunctionReport:
    lhs_dim: int
    rhs_dim: int
    roundtrip_ok: bool

    @property
    def ok(self) -> bool:
        return self.lhs_dim == self.rhs_dim and self.roundtrip_ok


def adjunction_check(rho: CoalgebraMorphism, w: Contramodule, v: Contramodule) -> AdjunctionReport:
    """Dimension equality and both round trips on full bases of the two hom
    spaces related by induction/restriction."""
    res = induce(rho, w)
    v_res = restrict(rho, v)
    lhs = hom_contra(res.induced, v)
    rhs = hom_contra(w, v_res)
    ok = True
    for phi in hom_contra_basis_maps(res.induced, v, lhs):
        psi = gamma(rho, res, phi)
        if not is_contra_map(w, v_res, psi):
            ok = False
            break
        if gamma_inv(rho, res, v, psi) != phi:
            ok = False
            break
    if ok:
        for psi in hom_contra_basis_maps(w, v_res, rhs):
            phi = gamma_inv(rho, res, v, psi)
            if not is_contra_map(res.induced, v, phi):
                ok = False
                break
            if gamma(rho, res, phi) != psi:
                ok = False
                break
    return AdjunctionReport(lhs.dim, rhs.dim, ok)


# -- short exact sequences and exactness probes --------------------------------------


@dataclass
class ShortExactSeq:
    sub: Contramodule
    mid: Contramodule
    quot: Contramodule
    incl: Mat
    proj: Mat

    def validate(self) -> Verdict:
        failures = []
        if self.sub.dim + self.quot.dim != self.mid.dim:
            failures.append("dimension-count")
        if rank(self.incl) != self.sub.dim:
            failures.append("inclusion-not-injective")
        if rank(self.proj) != self.quot.dim:
            failures.append("projection-not-surjective")
        if not (self.proj @ self.incl).is_zero():
            failures.append("composite-nonzero")
        if not is_contra_map(self.sub, self.mid, self.incl):
            failures.append("inclusion-not-contra-map")
        if not is_contra_map(self.mid, self.quot, self.proj):
            failures.append("projection-not-contra-map")
        return Verdict(failures)


@dataclass
class ExactnessVerdict:
    exact: bool
    failures: list   # subset of {"left", "middle", "right"}
    dims: tuple      # (dim Ind A, dim Ind B, dim Ind C)


def exactness_probe(rho: CoalgebraMorphism, ses: ShortExactSeq) -> ExactnessVerdict:
    """Induce a short exact sequence and report where exactness fails."""
    v = ses.validate()
    if not v.ok:
        raise ValueError(f"input sequence is not a valid SES: {v.failures}")
    res_a = induce(rho, ses.sub)
    res_b = induce(rho, ses.mid)
    res_c = induce(rho, ses.quot)
    ind_incl = induce_map(rho, res_a, res_b, ses.incl)
    ind_proj = induce_map(rho, res_b, res_c, ses.proj)
    failures = []
    if rank(ind_incl) != res_a.dim:
        failures.append("left")
    img = image(ind_incl)
    ker = kernel(ind_proj)
    if img != ker:
        failures.append("middle")
    if rank(ind_proj) != res_c.dim:
        failures.append("right")
    return ExactnessVerdict(not failures, failures, (res_a.dim, res_b.dim, res_c.dim))
