"""Local prebraidings: double entwinings, τ-bimonads, doubling, opposites,
antipode/braiding identities and convolution products."""

from __future__ import annotations

from dataclasses import dataclass

from .bimonad import BimonadData, check_bimonad
from .calculus import NatGen, Notation, from_matrix, paired_backend, pipeline_eval, regroup
from .errors import ShapeError
from .monads import ComonadData, LawKind, MonadData, _require, check_comonad, check_dist_law, check_monad
from .reports import Report


@dataclass(frozen=True)
class TauBimonadData:
    monad: MonadData
    comonad: ComonadData
    tau: NatGen

    def __post_init__(self):
        if (self.tau.src, self.tau.dst) != (2, 2):
            raise ShapeError("braiding must be HH → HH")

    @property
    def backend(self):
        return self.monad.backend

    def notation(self, **extra) -> Notation:
        return Notation(
            self.backend, m=self.monad.m, e=self.monad.e, δ=self.comonad.delta, ε=self.comonad.eps, τ=self.tau, **extra
        )


def super_swap(backend, parity) -> NatGen:
    """τ(e_a⊗e_b) = (−1)^{p_a p_b} e_b⊗e_a for a parity vector of 0/1 entries."""
    d = backend.dim
    if len(parity) != d:
        raise ShapeError("parity vector length must equal the dimension")
    rows = [[0] * (d * d) for _ in range(d * d)]
    for a in range(d):
        for b in range(d):
            rows[b * d + a][a * d + b] = -1 if parity[a] and parity[b] else 1
    return from_matrix(backend, 2, 2, rows)


def check_double_entwining(tau: NatGen, M: MonadData, C: ComonadData, report: Report | None = None) -> Report:
    r = report if report is not None else Report("double entwining")
    N = Notation(tau.backend, τ=tau, m=M.m, e=M.e, δ=C.delta, ε=C.eps)
    r.law("double_entwining.unit_left", N("eH", "τ"), N("He"))
    r.law("double_entwining.counit_left", N("τ", "εH"), N("Hε"))
    r.law("double_entwining.coproduct_left", N("Hδ", "τH", "Hτ"), N("τ", "δH"))
    r.law("double_entwining.product_left", N("Hτ", "τH", "Hm"), N("mH", "τ"))
    r.law("double_entwining.unit_right", N("He", "τ"), N("eH"))
    r.law("double_entwining.counit_right", N("τ", "Hε"), N("εH"))
    r.law("double_entwining.coproduct_right", N("δH", "Hτ", "τH"), N("τ", "Hδ"))
    r.law("double_entwining.product_right", N("τH", "Hτ", "mH"), N("Hm", "τ"))
    return r


def check_yang_baxter(tau: NatGen, report: Report | None = None) -> Report:
    r = report if report is not None else Report("Yang-Baxter")
    N = Notation(tau.backend, τ=tau)
    r.law("yang_baxter", N("τH", "Hτ", "τH"), N("Hτ", "τH", "Hτ"))
    return r


def check_involutive(tau: NatGen, report: Report | None = None) -> Report:
    r = report if report is not None else Report("involution")
    N = Notation(tau.backend, τ=tau)
    r.law("tau.involutive", N("τ", "τ"), N("HH"))
    return r


def check_tau_bimonad(T: TauBimonadData, report: Report | None = None) -> Report:
    """Monad and comonad laws, the double entwining, δ·m = mm·HτH·δδ and the three unit/counit diagrams."""
    r = report if report is not None else Report("τ-bimonad")
    check_monad(T.monad, r)
    check_comonad(T.comonad, r)
    check_double_entwining(T.tau, T.monad, T.comonad, r)
    N = T.notation()
    r.law("tau.product_coproduct", N("m", "δ"), N("δδ", "HτH", "mm"))
    r.law("tau.product_counit", N("m", "ε"), N("εε"))
    r.law("tau.unit_coproduct", N("e", "δ"), N("ee"))
    r.law("tau.unit_counit", N("e", "ε"), N(""))
    return r


def tau_suite(T: TauBimonadData) -> Report:
    """The full suite: τ-bimonad diagrams plus Yang-Baxter."""
    r = check_tau_bimonad(T)
    check_yang_baxter(T.tau, r)
    return r


def induced_entwining(T: TauBimonadData, verify: bool = True):
    """τ̃ = mH·Hτ·δH, with its mixed-law identities and the bimonad it induces.

    Returns ``(tau_tilde, bimonad, report)``.
    """
    if verify:
        _require(check_tau_bimonad(T), "τ-bimonad check")
    tt = pipeline_eval(T.notation()("δH", "Hτ", "mH"))
    H = BimonadData(T.monad, T.comonad, tt)
    r = Report("induced entwining")
    check_dist_law(LawKind.MONAD_TO_COMONAD, tt, T.monad, T.comonad, r)
    check_bimonad(H, r)
    return tt, H, r


def as_bimonad(T: TauBimonadData) -> BimonadData:
    """The bimonad with entwining τ̃ (no checks)."""
    tt = pipeline_eval(T.notation()("δH", "Hτ", "mH"))
    return BimonadData(T.monad, T.comonad, tt)


@dataclass
class Derived:
    structure: TauBimonadData
    report: Report


def double_bimonad(T: TauBimonadData) -> Derived:
    """The τ̄-bimonad on HH, evaluated over the paired backend, with its full suite."""
    pre = check_tau_bimonad(T)
    check_yang_baxter(T.tau, pre)
    _require(pre, "doubling precondition")
    N = T.notation()
    pb = paired_backend(T.backend)
    mb = regroup(pipeline_eval(N("HτH", "mm")), pb)
    eb = regroup(pipeline_eval(N("ee")), pb)
    db = regroup(pipeline_eval(N("δδ", "HτH")), pb)
    cb = regroup(pipeline_eval(N("εε")), pb)
    tb = regroup(pipeline_eval(_tau_bar(T)), pb)
    D = TauBimonadData(MonadData(mb, eb), ComonadData(db, cb), tb)
    return Derived(D, tau_suite(D))


def _tau_bar(T: TauBimonadData):
    """HHHH → HHHH: HτH, then τHH, then HHτ, then HτH."""
    N = T.notation()
    return N("HτH", "τHH", "HHτ", "HτH")


def opposite_bimonad(T: TauBimonadData) -> Derived:
    """(H, m·τ, e, τ·δ, ε) with the same τ; requires τ·τ = id and Yang-Baxter."""
    pre = check_involutive(T.tau)
    check_yang_baxter(T.tau, pre)
    _require(pre, "opposite precondition")
    N = T.notation()
    mo = pipeline_eval(N("τ", "m"))
    do = pipeline_eval(N("δ", "τ"))
    D = TauBimonadData(MonadData(mo, T.monad.e), ComonadData(do, T.comonad.eps), T.tau)
    return Derived(D, tau_suite(D))


def check_antipode_tau_props(T: TauBimonadData, S: NatGen) -> Report:
    """S·m = m·SS·τ and δ·S = τ·SS·δ; when S commutes with τ, also the morphism
    properties into the opposite structure and that S is its antipode."""
    N = T.notation(S=S)
    r = Report("antipode and braiding")
    r.law("tau_antipode.product", N("m", "S"), N("τ", "SS", "m"))
    r.law("tau_antipode.coproduct", N("S", "δ"), N("δ", "SS", "τ"))
    a = r.law("tau_antipode.commute_left", N("HS", "τ"), N("τ", "SH"))
    b = r.law("tau_antipode.commute_right", N("SH", "τ"), N("τ", "HS"))
    if a.passed and b.passed:
        r.law("tau_antipode.opposite_product", N("m", "S"), N("SS", "τ", "m"))
        r.law("tau_antipode.unit", N("e", "S"), N("e"))
        r.law("tau_antipode.opposite_coproduct", N("S", "δ"), N("δ", "τ", "SS"))
        r.law("tau_antipode.counit", N("S", "ε"), N("ε"))
        r.law("tau_antipode.opposite_left", N("δ", "τ", "SH", "τ", "m"), N("ε", "e"))
        r.law("tau_antipode.opposite_right", N("δ", "τ", "HS", "τ", "m"), N("ε", "e"))
        r.info["commutes_with_tau"] = True
    else:
        r.info["commutes_with_tau"] = False
    return r


HH_TO_H = "HH->H"
H_TO_HH = "H->HH"


def convolution(T: TauBimonadData, f: NatGen, g: NatGen, signature: str) -> NatGen:
    """Convolution product of two transformations.

    HH->H: f*g = m·(f⊗g)·HτH·δδ, unit e·εε.
    H->HH: f*g = mm·HτH·(f⊗g)·δ, unit ee·ε.
    """
    want = {HH_TO_H: (2, 1), H_TO_HH: (1, 2)}.get(signature)
    if want is None:
        raise ShapeError(f"unknown convolution signature {signature!r}")
    for x in (f, g):
        if (x.src, x.dst) != want:
            raise ShapeError(f"convolution {signature} needs generators of arity {want}")
    N = T.notation(f=f, g=g)
    if signature == HH_TO_H:
        return pipeline_eval(N("δδ", "HτH", "fg", "m"))
    return pipeline_eval(N("δ", "fg", "HτH", "mm"))


def convolution_unit(T: TauBimonadData, signature: str) -> NatGen:
    N = T.notation()
    if signature == HH_TO_H:
        return pipeline_eval(N("εε", "e"))
    if signature == H_TO_HH:
        return pipeline_eval(N("ε", "ee"))
    raise ShapeError(f"unknown convolution signature {signature!r}")
