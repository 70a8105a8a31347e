"""Check results, reports, and the JSON report schema."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional

import jsonschema

from .calculus import Witness, compare

# Every check carries one of these law names.
LAWS = {
    "monad.associativity": "m·mH = m·Hm",
    "monad.left_unit": "m·eH = id",
    "monad.right_unit": "m·He = id",
    "comonad.coassociativity": "δH·δ = Hδ·δ",
    "comonad.left_counit": "εH·δ = id",
    "comonad.right_counit": "Hε·δ = id",
    "module.associativity": "h·mX = h·Hh",
    "module.unit": "h·eX = id",
    "comodule.coassociativity": "δX·θ = Hθ·θ",
    "comodule.counit": "εX·θ = id",
    "module_morphism": "structure map commutes with actions",
    "comodule_morphism": "structure map commutes with coactions",
    "entwining.unit": "mixed law: λ·eG = Ge",
    "entwining.counit": "mixed law: εT·λ = Tε",
    "entwining.coproduct": "mixed law: Gλ·λG·Tδ = δT·λ",
    "entwining.product": "mixed law: Gm·λT·Tλ = λ·mG",
    "co_entwining.unit": "comonad-to-monad law: λ·Ge = eG",
    "co_entwining.counit": "comonad-to-monad law: Tε·λ = εT",
    "co_entwining.product": "comonad-to-monad law: mG·Tλ·λT = λ·Gm",
    "co_entwining.coproduct": "comonad-to-monad law: λG·Gλ·δT = Tδ·λ",
    "monad_distributive.inner_unit": "λ·eT = Te",
    "monad_distributive.outer_unit": "λ·Fe' = e'F",
    "monad_distributive.inner_product": "λ·mT = Tm·λF·Fλ",
    "monad_distributive.outer_product": "λ·Fm' = m'F·Tλ·λT",
    "comonad_distributive.inner_counit": "εT·φ = Tε",
    "comonad_distributive.outer_counit": "Gε'·φ = ε'G",
    "comonad_distributive.inner_coproduct": "Gφ·φG·Tδ = δT·φ",
    "comonad_distributive.outer_coproduct": "φT·Tφ·δ'G = Gδ'·φ",
    "bimodule.mixed": "θ·h = Gh·λX·Tθ",
    "bimonad.product_coproduct": "δ·m = Hm·λH·Hδ",
    "bimonad.product_coproduct_adjoint": "δ·m = mH·Hλ·δH (entwining from the comonad side)",
    "bimonad.product_counit": "ε·m = ε·Hε",
    "bimonad.unit_coproduct": "δ·e = eH·e",
    "bimonad.unit_counit": "ε·e = id",
    "canonical.gamma_unit": "γ·He = δ",
    "canonical.gamma_prime_unit": "γ′·eH = δ",
    "canonical.gamma_linear": "γ·Hm = Hm·γH",
    "canonical.gamma_prime_linear": "γ′·mH = mH·Hγ′",
    "canonical.gamma_invertible": "γ is an isomorphism",
    "canonical.gamma_prime_invertible": "γ′ is an isomorphism",
    "antipode.left": "m·SH·δ = e·ε",
    "antipode.right": "m·HS·δ = e·ε",
    "hopf_module.mixed": "θ·h = Hh·λX·Hθ",
    "coinvariants.idempotent": "q·q = q",
    "coinvariants.equaliser": "eX·q = θ·q",
    "fundamental.alpha_beta": "α·β = id",
    "fundamental.beta_alpha": "β·α = id",
    "fundamental.dimension": "dim M = dim B · dim coinvariants",
    "double_entwining.unit_left": "He = τ·eH",
    "double_entwining.counit_left": "Hε = εH·τ",
    "double_entwining.coproduct_left": "δH·τ = Hτ·τH·Hδ",
    "double_entwining.product_left": "τ·mH = Hm·τH·Hτ",
    "double_entwining.unit_right": "eH = τ·He",
    "double_entwining.counit_right": "εH = Hε·τ",
    "double_entwining.coproduct_right": "Hδ·τ = τH·Hτ·δH",
    "double_entwining.product_right": "τ·Hm = mH·Hτ·τH",
    "yang_baxter": "τH·Hτ·τH = Hτ·τH·Hτ",
    "tau.product_coproduct": "δ·m = mm·HτH·δδ",
    "tau.product_counit": "ε·m = εε",
    "tau.unit_coproduct": "δ·e = ee",
    "tau.unit_counit": "ε·e = id",
    "tau.involutive": "τ·τ = id",
    "tau_antipode.product": "S·m = m·SS·τ",
    "tau_antipode.coproduct": "δ·S = τ·SS·δ",
    "tau_antipode.commute_left": "τ·HS = SH·τ",
    "tau_antipode.commute_right": "τ·SH = HS·τ",
    "tau_antipode.opposite_product": "S·m = m′·SS (monad morphism to the opposite)",
    "tau_antipode.unit": "S·e = e",
    "tau_antipode.opposite_coproduct": "δ·S = SS·δ′ (comonad morphism to the opposite)",
    "tau_antipode.counit": "ε·S = ε",
    "tau_antipode.opposite_left": "m′·SH·δ′ = e·ε",
    "tau_antipode.opposite_right": "m′·HS·δ′ = e·ε",
    "convolution.unit": "convolution unit law",
    "convolution.associativity": "convolution associativity",
    "adjunction.triangle_left": "εL·Lη = id",
    "adjunction.triangle_right": "Rε·ηR = id",
    "mate.round_trip": "mate of mate is the original",
    "mate.matches_dual": "adjoint structure equals dualized structure constants",
    "mate.closed_form": "unit/counit composite equals the reversed transpose",
    "mate.composition": "mate(α·β) = mate(β)·mate(α)",
    "mate.whisker_inner": "mate(αL) = R·mate(α)",
    "mate.whisker_outer": "mate(Lα) = mate(α)·R",
    "transfer.gamma_agreement": "γ invertible on both sides of the adjunction or neither",
    "transfer.antipode": "transferred antipode satisfies both antipode identities",
    "group.monoid": "table is associative with two-sided unit",
    "group.gamma_bijective": "γ(g,h) = (g,gh) is a bijection",
    "group.oracle_agreement": "γ verdict agrees with the inverse-search oracle",
    "construction.distinct": "derived structure differs from the original",
    "construction.round_trip": "construction applied twice returns the original",
    "probe.naturality": "transferred map is natural at the probe object",
    "probe.structure": "transferred structure satisfies its law at the probe object",
}

CLASSIFICATIONS = ("not-bimonad", "bimonad-no-antipode", "hopf-monad")


@dataclass
class CheckResult:
    check: str
    law: str
    passed: bool
    witness: Optional[Witness] = None
    detail: Optional[str] = None

    def __post_init__(self):
        if self.law not in LAWS:
            raise ValueError(f"unknown law name {self.law!r}")

    def to_json(self) -> dict:
        out = {"check": self.check, "law": self.law, "verdict": "pass" if self.passed else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out

    def line(self) -> str:
        s = f"{'PASS' if self.passed else 'FAIL'}  {self.check}  [{self.law}]"
        if self.witness is not None:
            s += f"  witness {self.witness.describe()}"
        if self.detail:
            s += f"  ({self.detail})"
        return s


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    classification: Optional[str] = None
    timing: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def failed_laws(self) -> list:
        return [c.law for c in self.failed()]

    def get(self, check: str) -> CheckResult:
        for c in self.checks:
            if c.check == check:
                return c
        raise KeyError(check)

    def add(self, check: str, law: str, passed: bool, witness=None, detail=None) -> CheckResult:
        r = CheckResult(check, law, bool(passed), witness, detail)
        self.checks.append(r)
        return r

    def law(self, law: str, lhs, rhs, check: Optional[str] = None) -> CheckResult:
        """Compare two composites and record the verdict (check id defaults to the law name)."""
        v = compare(lhs, rhs)
        return self.add(check or law, law, v.equal, v.witness)

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.check, c.law, c.passed, c.witness, c.detail))
        for k, v in other.timing.items():
            self.timing[prefix + k] = v
        return self

    @contextmanager
    def timed(self, key: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timing[key] = round(time.perf_counter() - t0, 6)

    def to_json(self) -> dict:
        out = {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "timing": dict(self.timing),
        }
        if self.classification is not None:
            out["classification"] = self.classification
        if self.info:
            out["info"] = self.info
        validate_report(out)
        return out

    def lines(self) -> list:
        out = [f"== {self.title}"]
        out += [c.line() for c in self.checks]
        if self.classification:
            out.append(f"classification: {self.classification}")
        for k, v in self.info.items():
            out.append(f"{k}: {v}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


_WITNESS = {
    "type": "object",
    "required": ["index", "element", "lhs", "rhs"],
    "properties": {
        "index": {"type": "integer", "minimum": 0},
        "element": {"type": "string"},
        "lhs": {"type": "string"},
        "rhs": {"type": "string"},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["title", "passed", "checks", "timing"],
    "properties": {
        "title": {"type": "string"},
        "passed": {"type": "boolean"},
        "classification": {"enum": list(CLASSIFICATIONS)},
        "timing": {"type": "object", "additionalProperties": {"type": "number", "minimum": 0}},
        "info": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check", "law", "verdict"],
                "properties": {
                    "check": {"type": "string"},
                    "law": {"enum": sorted(LAWS)},
                    "verdict": {"enum": ["pass", "fail"]},
                    "witness": _WITNESS,
                    "detail": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


def validate_report(doc: dict) -> None:
    jsonschema.validate(doc, REPORT_SCHEMA)
