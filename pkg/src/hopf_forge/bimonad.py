"""Bimonads, canonical maps, antipodes, Hopf modules and coinvariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .calculus import NatGen, Notation, Witness, pipeline_eval, word_label, with_carrier
from .errors import NoAntipodeError, NotInvertibleMap, PreconditionError, ShapeError, SingularMatrixError
from .linalg import IdempotentSplit, invert, matmul_arrays, rank, split_idempotent, vector_str
from .monads import (
    ComonadData,
    LawKind,
    MonadData,
    _require,
    check_comodule,
    check_comonad,
    check_dist_law,
    check_module,
)
from .reports import Report

ENTWINING = "entwining"
CO_ENTWINING = "co-entwining"


@dataclass(frozen=True)
class BimonadData:
    """Monad and comonad on one functor H, tied by ``lam``.

    ``flavor`` is ENTWINING for λ: TG → GT (a monad-to-comonad law, the usual
    case) or CO_ENTWINING for λ: GT → TG, which is the form an adjoint bimonad
    arrives in.
    """

    monad: MonadData
    comonad: ComonadData
    lam: NatGen
    flavor: str = ENTWINING

    def __post_init__(self):
        if (self.lam.src, self.lam.dst) != (2, 2):
            raise ShapeError("entwining must be HH → HH")
        if self.flavor not in (ENTWINING, CO_ENTWINING):
            raise ShapeError(f"unknown bimonad flavor {self.flavor!r}")
        if not (self.monad.backend.same_as(self.comonad.backend) and self.monad.backend.same_as(self.lam.backend)):
            raise ShapeError("bimonad components on different backends")

    @property
    def backend(self):
        return self.monad.backend

    @property
    def m(self):
        return self.monad.m

    @property
    def e(self):
        return self.monad.e

    @property
    def delta(self):
        return self.comonad.delta

    @property
    def eps(self):
        return self.comonad.eps

    def notation(self, **extra) -> Notation:
        return Notation(self.backend, m=self.m, e=self.e, δ=self.delta, ε=self.eps, λ=self.lam, **extra)


def check_bimonad(H: BimonadData, report: Report | None = None) -> Report:
    """Monad, comonad and entwining laws, the product/coproduct square and the three unit/counit diagrams."""
    r = report if report is not None else Report("bimonad")
    from .monads import check_monad

    check_monad(H.monad, r)
    check_comonad(H.comonad, r)
    N = H.notation()
    if H.flavor == ENTWINING:
        check_dist_law(LawKind.MONAD_TO_COMONAD, H.lam, H.monad, H.comonad, r)
        r.law("bimonad.product_coproduct", N("m", "δ"), N("Hδ", "λH", "Hm"))
    else:
        check_dist_law(LawKind.COMONAD_TO_MONAD, H.lam, H.comonad, H.monad, r)
        r.law("bimonad.product_coproduct_adjoint", N("m", "δ"), N("δH", "Hλ", "mH"))
    r.law("bimonad.product_counit", N("m", "ε"), N("Hε", "ε"))
    r.law("bimonad.unit_coproduct", N("e", "δ"), N("e", "eH"))
    r.law("bimonad.unit_counit", N("e", "ε"), N(""))
    return r


def require_bimonad(H: BimonadData) -> Report:
    r = check_bimonad(H)
    _require(r, "bimonad check")
    return r


# ---------------------------------------------------------------- canonical maps


@dataclass
class NoAntipodeCertificate:
    """Why γ is not invertible: a kernel vector (vector backend) or a collision pair (sets)."""

    kind: str
    gamma: NatGen
    kernel: Optional[np.ndarray] = None
    rank: Optional[int] = None
    collision: Optional[tuple] = None
    verified: bool = False

    def labels(self) -> str:
        b = self.gamma.backend
        if self.kind == "kernel":
            nz = [int(i) for i in np.nonzero(self.kernel != 0)[0]]
            return vector_str(b.field, [self.kernel[i] for i in nz], [word_label(b, 2, None, i) for i in nz])
        a, c = self.collision
        return f"{word_label(b, 2, None, a)} and {word_label(b, 2, None, c)}"

    def describe(self) -> str:
        if self.kind == "kernel":
            return f"γ has rank {self.rank} of {self.gamma.matrix.rows}; kernel vector {self.labels()}"
        return f"γ is not injective: {self.labels()} have the same image"

    def witness(self) -> Witness:
        g = self.gamma
        b = g.backend
        if self.kind == "kernel":
            idx = int(np.nonzero(self.kernel != 0)[0][0])
            return Witness(idx, self.labels(), "0", f"γ has rank {self.rank} of {g.matrix.rows}")
        a, c = self.collision
        t = g.payload.table
        return Witness(int(a), self.labels(), word_label(b, 2, None, int(t[a])), word_label(b, 2, None, int(t[c])))

    def verify(self) -> bool:
        """Re-evaluate γ on the witness."""
        g = self.gamma
        if self.kind == "kernel":
            prod = matmul_arrays(g.backend.field, g.matrix.a, self.kernel.reshape(-1, 1))
            ok = bool(np.any(self.kernel != 0)) and not np.any(prod != 0)
        else:
            a, c = self.collision
            t = g.payload.table
            ok = a != c and t[a] == t[c]
        self.verified = ok
        return ok


def invert_gen(g: NatGen) -> NatGen:
    """Inverse generator, or raise SingularMatrixError / NotInvertibleMap."""
    if g.backend.kind == "vect":
        return NatGen(g.backend, g.dst, g.src, invert(g.matrix), g.xout, g.xin)
    return NatGen(g.backend, g.dst, g.src, g.payload.inverse(), g.xout, g.xin)


def certificate_for(g: NatGen) -> Optional[NoAntipodeCertificate]:
    """Certificate of non-invertibility for a square generator, or None if it is invertible."""
    try:
        invert_gen(g)
    except SingularMatrixError as exc:
        cert = NoAntipodeCertificate("kernel", g, kernel=exc.kernel, rank=exc.rank)
    except NotInvertibleMap as exc:
        cert = NoAntipodeCertificate("collision", g, collision=exc.collision)
    else:
        return None
    cert.verify()
    return cert


def is_invertible(g: NatGen) -> bool:
    if g.backend.kind == "vect":
        return g.matrix.rows == g.matrix.cols and rank(g.matrix) == g.matrix.rows
    return g.payload.is_bijective()


@dataclass
class GammaPair:
    gamma: NatGen
    gamma_prime: NatGen
    beta: Optional[NatGen]
    beta_prime: Optional[NatGen]
    report: Report

    @property
    def invertible(self) -> bool:
        return self.beta is not None

    @property
    def prime_invertible(self) -> bool:
        return self.beta_prime is not None


def gamma(H: BimonadData, verify: bool = True) -> GammaPair:
    """γ = Hm·δH and γ′ = mH·Hδ, their inverses when they exist, and their defining identities."""
    if verify:
        require_bimonad(H)
    N = H.notation()
    g = pipeline_eval(N("δH", "Hm"))
    gp = pipeline_eval(N("Hδ", "mH"))
    r = Report("canonical maps")
    N2 = N.extend(γ=g, γp=gp)
    r.law("canonical.gamma_unit", N2("He", "γ"), N2("δ"))
    r.law("canonical.gamma_prime_unit", N2("eH", "γp"), N2("δ"))
    r.law("canonical.gamma_linear", N2("Hm", "γ"), N2("γH", "Hm"))
    r.law("canonical.gamma_prime_linear", N2("mH", "γp"), N2("Hγp", "mH"))
    beta = beta_prime = None
    try:
        beta = invert_gen(g)
    except (SingularMatrixError, NotInvertibleMap):
        pass
    try:
        beta_prime = invert_gen(gp)
    except (SingularMatrixError, NotInvertibleMap):
        pass
    if beta is not None:
        N3 = N2.extend(β=beta)
        r.law("canonical.gamma_invertible", N3("γ", "β"), N3("HH"), check="canonical.gamma_inverse_left")
        r.law("canonical.gamma_invertible", N3("β", "γ"), N3("HH"), check="canonical.gamma_inverse_right")
    if beta_prime is not None:
        N3 = N2.extend(βp=beta_prime)
        r.law("canonical.gamma_prime_invertible", N3("γp", "βp"), N3("HH"), check="canonical.gamma_prime_inverse_left")
        r.law("canonical.gamma_prime_invertible", N3("βp", "γp"), N3("HH"), check="canonical.gamma_prime_inverse_right")
    return GammaPair(g, gp, beta, beta_prime, r)


# ---------------------------------------------------------------- antipodes


@dataclass
class AntipodeCandidate:
    S: NatGen
    left: bool
    right: bool
    report: Report

    @property
    def verified(self) -> bool:
        return self.left and self.right


def check_antipode(H: BimonadData, S: NatGen) -> AntipodeCandidate:
    """Both convolution identities m·SH·δ = e·ε = m·HS·δ."""
    if (S.src, S.dst) != (1, 1) or not S.backend.same_as(H.backend):
        raise ShapeError("antipode must be H → H on the bimonad's backend")
    N = H.notation(S=S)
    r = Report("antipode")
    left = r.law("antipode.left", N("δ", "SH", "m"), N("ε", "e"))
    right = r.law("antipode.right", N("δ", "HS", "m"), N("ε", "e"))
    return AntipodeCandidate(S, left.passed, right.passed, r)


def compute_antipode(H: BimonadData, verify: bool = True) -> AntipodeCandidate:
    """S = εH·β·He with β = γ⁻¹; raises NoAntipodeError with a certificate when γ is singular."""
    if verify:
        require_bimonad(H)
    N = H.notation()
    g = pipeline_eval(N("δH", "Hm"))
    cert = certificate_for(g)
    if cert is not None:
        raise NoAntipodeError(cert)
    beta = invert_gen(g)
    S = pipeline_eval(H.notation(β=beta)("He", "β", "εH"))
    cand = check_antipode(H, S)
    if not cand.verified:
        raise PreconditionError("constructed antipode failed its identities", cand.report)
    return cand


# ---------------------------------------------------------------- Hopf modules


@dataclass(frozen=True)
class HopfModuleData:
    carrier: int
    h: NatGen
    theta: NatGen

    def __post_init__(self):
        x = self.carrier
        if (self.h.src, self.h.dst, self.h.xin, self.h.xout) != (1, 0, x, x):
            raise ShapeError("action must be H(X) → X")
        if (self.theta.src, self.theta.dst, self.theta.xin, self.theta.xout) != (0, 1, x, x):
            raise ShapeError("coaction must be X → H(X)")


def check_hopf_module(H: BimonadData, M: HopfModuleData) -> Report:
    from .monads import ComoduleData, ModuleData

    r = Report("Hopf module")
    check_module(H.monad, ModuleData(M.carrier, M.h), r)
    check_comodule(H.comonad, ComoduleData(M.carrier, M.theta), r)
    N = H.notation(h=M.h, θ=M.theta)
    r.law("hopf_module.mixed", N("h", "θ"), N("Hθ", "λX", "Hh"))
    return r


def comparison(H: BimonadData, v: int, verify: bool = True) -> HopfModuleData:
    """The free Hopf module K(V) = (H(V), m_V, δ_V) on a carrier of size ``v``."""
    if verify:
        require_bimonad(H)
    b = H.backend
    x = b.size * v
    mv = with_carrier(H.m, v)
    dv = with_carrier(H.delta, v)
    h = NatGen(b, 1, 0, mv.payload, x, x)
    theta = NatGen(b, 0, 1, dv.payload, x, x)
    M = HopfModuleData(x, h, theta)
    if verify:
        _require(check_hopf_module(H, M), "free Hopf module")
    return M


def regular_module(H: BimonadData) -> HopfModuleData:
    """B itself with action m and coaction δ."""
    return comparison(H, 1, verify=False)


@dataclass
class CoinvariantSplit:
    q: NatGen
    split: IdempotentSplit
    section: NatGen
    retraction: NatGen
    report: Report

    @property
    def rank(self) -> int:
        return self.split.rank


def coinvariants(H: BimonadData, S: NatGen, M: HopfModuleData) -> CoinvariantSplit:
    """Split the idempotent q = h·S_X·θ onto the coinvariants."""
    b = H.backend
    x = M.carrier
    N = H.notation(S=S, h=M.h, θ=M.theta)
    q = pipeline_eval(N("θ", "SX", "h"))
    r = Report("coinvariants")
    Nq = N.extend(q=q)
    idem = r.law("coinvariants.idempotent", Nq("q", "q"), Nq("q"))
    if not idem.passed:
        raise PreconditionError("h·S·θ is not idempotent", r)
    split = split_idempotent(q.payload)
    k = split.rank
    section = NatGen(b, 0, 0, split.section, k, x)
    retraction = NatGen(b, 0, 0, split.retraction, x, k)
    r.law("coinvariants.equaliser", Nq("q", "eX"), Nq("q", "θ"))
    return CoinvariantSplit(q, split, section, retraction, r)


def fundamental_check(H: BimonadData, S: NatGen, M: HopfModuleData, free_rank: Optional[int] = None) -> Report:
    """α = h·H(i) and β = H(q̄)·θ are mutually inverse, and dim M = dim B · dim coinvariants.

    ``free_rank`` (the size of V when M = K(V)) adds the round-trip check that the
    coinvariants of K(V) recover V.
    """
    cand = check_antipode(H, S)
    if not cand.verified:
        raise PreconditionError("fundamental check needs a verified antipode", cand.report)
    _require(check_hopf_module(H, M), "Hopf module")
    co = coinvariants(H, S, M)
    r = Report("fundamental theorem")
    r.extend(co.report)
    k = co.rank
    N = H.notation(S=S, h=M.h, θ=M.theta, i=co.section, qb=co.retraction)
    r.law("fundamental.alpha_beta", N("θ", "Hqb", "Hi", "h"), N("X", carrier=M.carrier))
    r.law("fundamental.beta_alpha", N("Hi", "h", "θ", "Hqb"), N("HX", carrier=k))
    ok = M.carrier == H.backend.size * k
    detail = f"|M| = {M.carrier}, |B| = {H.backend.size}, coinvariants {k}"
    if free_rank is not None:
        ok = ok and k == free_rank
        detail += f", free on {free_rank}"
    r.add("fundamental.dimension", "fundamental.dimension", ok, detail=detail)
    r.info["coinvariants"] = k
    return r
