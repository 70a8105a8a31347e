"""Monads, comonads, distributive laws, liftings, and (co)modules.

All structures live on one tensor-word backend, so the monad and comonad
functors in a distributive law are both H.  Patterns follow the notation of
:class:`~hopf_forge.calculus.Notation` and are listed in application order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .calculus import (
    NatGen,
    Notation,
    from_matrix,
    from_table,
    identity,
    paired_backend,
    pipeline_eval,
    regroup,
)
from .errors import PreconditionError, ShapeError
from .reports import Report


@dataclass(frozen=True)
class MonadData:
    m: NatGen
    e: NatGen

    def __post_init__(self):
        if (self.m.src, self.m.dst, self.e.src, self.e.dst) != (2, 1, 0, 1):
            raise ShapeError("monad needs m: HH→H and e: 1→H")
        if not self.m.backend.same_as(self.e.backend):
            raise ShapeError("monad components on different backends")

    @property
    def backend(self):
        return self.m.backend


@dataclass(frozen=True)
class ComonadData:
    delta: NatGen
    eps: NatGen

    def __post_init__(self):
        if (self.delta.src, self.delta.dst, self.eps.src, self.eps.dst) != (1, 2, 1, 0):
            raise ShapeError("comonad needs δ: H→HH and ε: H→1")
        if not self.delta.backend.same_as(self.eps.backend):
            raise ShapeError("comonad components on different backends")

    @property
    def backend(self):
        return self.delta.backend


@dataclass(frozen=True)
class ModuleData:
    """A carrier X with action h: H(X) → X."""

    carrier: int
    h: NatGen

    def __post_init__(self):
        h = self.h
        if (h.src, h.dst, h.xin, h.xout) != (1, 0, self.carrier, self.carrier):
            raise ShapeError("module action must be H(X) → X")


@dataclass(frozen=True)
class ComoduleData:
    """A carrier X with coaction θ: X → H(X)."""

    carrier: int
    theta: NatGen

    def __post_init__(self):
        t = self.theta
        if (t.src, t.dst, t.xin, t.xout) != (0, 1, self.carrier, self.carrier):
            raise ShapeError("comodule coaction must be X → H(X)")


class LawKind(enum.Enum):
    MONAD_TO_COMONAD = "monad-to-comonad"
    COMONAD_TO_MONAD = "comonad-to-monad"
    MONAD_MONAD = "monad-monad"
    COMONAD_COMONAD = "comonad-comonad"


@dataclass(frozen=True)
class DistLaw:
    kind: LawKind
    gen: NatGen

    def __post_init__(self):
        if (self.gen.src, self.gen.dst) != (2, 2):
            raise ShapeError("distributive law must be HH → HH")


def _notation(backend, **gens) -> Notation:
    return Notation(backend, **gens)


def check_monad(M: MonadData, report: Report | None = None) -> Report:
    r = report if report is not None else Report("monad")
    N = _notation(M.backend, m=M.m, e=M.e)
    r.law("monad.associativity", N("mH", "m"), N("Hm", "m"))
    r.law("monad.left_unit", N("eH", "m"), N("H"))
    r.law("monad.right_unit", N("He", "m"), N("H"))
    return r


def check_comonad(C: ComonadData, report: Report | None = None) -> Report:
    r = report if report is not None else Report("comonad")
    N = _notation(C.backend, δ=C.delta, ε=C.eps)
    r.law("comonad.coassociativity", N("δ", "δH"), N("δ", "Hδ"))
    r.law("comonad.left_counit", N("δ", "εH"), N("H"))
    r.law("comonad.right_counit", N("δ", "Hε"), N("H"))
    return r


def check_dist_law(kind: LawKind, lam: NatGen, first, second, report: Report | None = None) -> Report:
    """Check the four diagrams of a distributive law ``lam: XY → YX``.

    ``first`` is the structure on X (the left factor of the source word) and
    ``second`` the structure on Y:

    * MONAD_TO_COMONAD: λ: TG → GT, first = monad T, second = comonad G
    * COMONAD_TO_MONAD: λ: GT → TG, first = comonad G, second = monad T
    * MONAD_MONAD: λ: FT → TF, first = monad F, second = monad T
    * COMONAD_COMONAD: φ: TG → GT, first = comonad T, second = comonad G
    """
    kind = LawKind(kind)
    r = report if report is not None else Report(f"{kind.value} distributive law")
    b = lam.backend
    if kind is LawKind.MONAD_TO_COMONAD:
        T, G = first, second
        N = _notation(b, λ=lam, m=T.m, e=T.e, δ=G.delta, ε=G.eps)
        r.law("entwining.unit", N("eH", "λ"), N("He"))
        r.law("entwining.counit", N("λ", "εH"), N("Hε"))
        r.law("entwining.coproduct", N("Hδ", "λH", "Hλ"), N("λ", "δH"))
        r.law("entwining.product", N("Hλ", "λH", "Hm"), N("mH", "λ"))
    elif kind is LawKind.COMONAD_TO_MONAD:
        G, T = first, second
        N = _notation(b, λ=lam, m=T.m, e=T.e, δ=G.delta, ε=G.eps)
        r.law("co_entwining.unit", N("He", "λ"), N("eH"))
        r.law("co_entwining.counit", N("λ", "Hε"), N("εH"))
        r.law("co_entwining.product", N("λH", "Hλ", "mH"), N("Hm", "λ"))
        r.law("co_entwining.coproduct", N("δH", "Hλ", "λH"), N("λ", "Hδ"))
    elif kind is LawKind.MONAD_MONAD:
        F, T = first, second
        N = _notation(b, L=lam, m1=F.m, e1=F.e, m2=T.m, e2=T.e)
        r.law("monad_distributive.inner_unit", N("e1H", "L"), N("He1"))
        r.law("monad_distributive.outer_unit", N("He2", "L"), N("e2H"))
        r.law("monad_distributive.inner_product", N("m1H", "L"), N("HL", "LH", "Hm1"))
        r.law("monad_distributive.outer_product", N("Hm2", "L"), N("LH", "HL", "m2H"))
    else:
        T, G = first, second
        N = _notation(b, L=lam, d1=T.delta, c1=T.eps, d2=G.delta, c2=G.eps)
        r.law("comonad_distributive.inner_counit", N("L", "c2H"), N("Hc2"))
        r.law("comonad_distributive.outer_counit", N("L", "Hc1"), N("c1H"))
        r.law("comonad_distributive.inner_coproduct", N("Hd2", "LH", "HL"), N("L", "d2H"))
        r.law("comonad_distributive.outer_coproduct", N("d1H", "HL", "LH"), N("L", "Hd1"))
    return r


def check_module(M: MonadData, mod: ModuleData, report: Report | None = None) -> Report:
    r = report if report is not None else Report("module")
    N = _notation(M.backend, m=M.m, e=M.e, h=mod.h)
    x = mod.carrier
    r.law("module.associativity", N("mX", "h", carrier=x), N("Hh", "h"))
    r.law("module.unit", N("eX", "h", carrier=x), N("X", carrier=x))
    return r


def check_comodule(C: ComonadData, comod: ComoduleData, report: Report | None = None) -> Report:
    r = report if report is not None else Report("comodule")
    N = _notation(C.backend, δ=C.delta, ε=C.eps, θ=comod.theta)
    x = comod.carrier
    r.law("comodule.coassociativity", N("θ", "δX"), N("θ", "Hθ"))
    r.law("comodule.counit", N("θ", "εX"), N("X", carrier=x))
    return r


def check_bimodule(lam: DistLaw, M: MonadData, C: ComonadData, mod: ModuleData, comod: ComoduleData) -> Report:
    """Module and comodule laws, then the mixed square θ·h = Gh·λX·Tθ."""
    if lam.kind is not LawKind.MONAD_TO_COMONAD:
        raise ShapeError("bimodules need a monad-to-comonad law")
    if mod.carrier != comod.carrier:
        raise ShapeError("action and coaction on different carriers")
    r = Report("mixed bimodule")
    check_module(M, mod, r)
    check_comodule(C, comod, r)
    N = _notation(M.backend, λ=lam.gen, h=mod.h, θ=comod.theta)
    r.law("bimodule.mixed", N("h", "θ"), N("Hθ", "λX", "Hh"))
    return r


def _require(report: Report, what: str) -> None:
    if not report.passed:
        bad = ", ".join(c.check for c in report.failed())
        raise PreconditionError(f"{what} failed: {bad}", report)


@dataclass
class LiftedComonad:
    """Ĝ(X, h) = (H(X), Gh·λX) together with its self-check report."""

    module: ModuleData
    report: Report


@dataclass
class LiftedMonad:
    """T̂(X, θ) = (H(X), λX·Tθ) together with its self-check report."""

    comodule: ComoduleData
    report: Report


def lift_comonad(lam: DistLaw, M: MonadData, C: ComonadData, mod: ModuleData) -> LiftedComonad:
    """Lift the comonad to modules along a monad-to-comonad law."""
    if lam.kind is not LawKind.MONAD_TO_COMONAD:
        raise ShapeError("lifting the comonad needs a monad-to-comonad law")
    _require(check_dist_law(lam.kind, lam.gen, M, C), "distributive law")
    _require(check_module(M, mod), "module")
    b = M.backend
    x = mod.carrier
    N = _notation(b, λ=lam.gen, m=M.m, e=M.e, δ=C.delta, ε=C.eps, h=mod.h)
    action = pipeline_eval(N("λX", "Hh", carrier=x))
    gx = b.size * x
    lifted = ModuleData(gx, NatGen(b, 1, 0, action.payload, gx, gx))
    r = Report("lifted comonad")
    lift = ("λX", "Hh")
    r.law("module.associativity", N("mHX", *lift, carrier=x), N("HλX", "HHh", *lift, carrier=x))
    r.law("module.unit", N("eHX", *lift, carrier=x), N("HX", carrier=x))
    # δ_X and ε_X are module maps for the lifted actions
    r.law("module_morphism", N(*lift, "δX", carrier=x), N("HδX", "λHX", "HλX", "HHh", carrier=x), check="module_morphism.coproduct")
    r.law("module_morphism", N(*lift, "εX", carrier=x), N("HεX", "h", carrier=x), check="module_morphism.counit")
    return LiftedComonad(lifted, r)


def lift_monad(lam: DistLaw, M: MonadData, C: ComonadData, comod: ComoduleData) -> LiftedMonad:
    """Lift the monad to comodules along a monad-to-comonad law."""
    if lam.kind is not LawKind.MONAD_TO_COMONAD:
        raise ShapeError("lifting the monad needs a monad-to-comonad law")
    _require(check_dist_law(lam.kind, lam.gen, M, C), "distributive law")
    _require(check_comodule(C, comod), "comodule")
    b = M.backend
    x = comod.carrier
    N = _notation(b, λ=lam.gen, m=M.m, e=M.e, δ=C.delta, ε=C.eps, θ=comod.theta)
    coaction = pipeline_eval(N("Hθ", "λX"))
    tx = b.size * x
    lifted = ComoduleData(tx, NatGen(b, 0, 1, coaction.payload, tx, tx))
    r = Report("lifted monad")
    lift = ("Hθ", "λX")
    r.law("comodule.coassociativity", N(*lift, "δHX"), N(*lift, "HHθ", "HλX"))
    r.law("comodule.counit", N(*lift, "εHX"), N("HX", carrier=x))
    r.law("comodule_morphism", N("mX", *lift, carrier=x), N("HHθ", "HλX", "λHX", "HmX"), check="comodule_morphism.product")
    r.law("comodule_morphism", N("eX", *lift, carrier=x), N("θ", "HeX"), check="comodule_morphism.unit")
    return LiftedMonad(lifted, r)


@dataclass
class Composite:
    """A composite (co)monad on HH, read over the paired backend, with its check report."""

    structure: object
    report: Report


def compose_monad(lam: DistLaw, F: MonadData, T: MonadData) -> Composite:
    """Monad structure on TF from a monad distributive law λ: FT → TF."""
    if lam.kind is not LawKind.MONAD_MONAD:
        raise ShapeError("composite monad needs a monad-monad law")
    _require(check_dist_law(lam.kind, lam.gen, F, T), "distributive law")
    b = F.backend
    N = _notation(b, L=lam.gen, m1=F.m, e1=F.e, m2=T.m, e2=T.e)
    pb = paired_backend(b)
    m = regroup(pipeline_eval(N("HLH", "m2m1")), pb)
    e = regroup(pipeline_eval(N("e2e1")), pb)
    M = MonadData(m, e)
    r = check_monad(M, Report("composite monad"))
    _require(r, "composite monad self-check")
    return Composite(M, r)


def compose_comonad(phi: DistLaw, T: ComonadData, G: ComonadData) -> Composite:
    """Comonad structure on TG from a comonad distributive law φ: TG → GT."""
    if phi.kind is not LawKind.COMONAD_COMONAD:
        raise ShapeError("composite comonad needs a comonad-comonad law")
    _require(check_dist_law(phi.kind, phi.gen, T, G), "distributive law")
    b = T.backend
    N = _notation(b, L=phi.gen, d1=T.delta, c1=T.eps, d2=G.delta, c2=G.eps)
    pb = paired_backend(b)
    d = regroup(pipeline_eval(N("d1d2", "HLH")), pb)
    c = regroup(pipeline_eval(N("c1c2")), pb)
    C = ComonadData(d, c)
    r = check_comonad(C, Report("composite comonad"))
    _require(r, "composite comonad self-check")
    return Composite(C, r)


def swap(backend) -> NatGen:
    """The flip HH → HH, x⊗y ↦ y⊗x (or (g,h) ↦ (h,g))."""
    d = backend.size
    perm = [j * d + i for i in range(d) for j in range(d)]
    if backend.kind == "set":
        return from_table(backend, 2, 2, perm)
    rows = [[0] * (d * d) for _ in range(d * d)]
    for src, dst in enumerate(perm):
        rows[dst][src] = 1
    return from_matrix(backend, 2, 2, rows)


def identity_law(backend) -> NatGen:
    return identity(backend, 2)
