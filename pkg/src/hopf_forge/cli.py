"""Command-line interface: ``hopf-forge <command> --in FILE ...``.

Exit codes: 0 every check passed, 1 some check failed, 2 parse or
precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import adjunction as adjmod
from .bimonad import (
    NoAntipodeCertificate,
    certificate_for,
    check_antipode,
    check_bimonad,
    comparison,
    compute_antipode,
    fundamental_check,
    gamma,
)
from .calculus import limits, nat_equal, pipeline_eval
from .errors import CapExceeded, HopfForgeError, NoAntipodeError, PreconditionError
from .instances import (
    Instance,
    dumps_spec,
    load,
    read_spec,
    set_spec_from_structure,
    spec_from_structure,
    write_spec,
)
from .monads import check_comonad, check_monad
from .reports import Report
from .tau import double_bimonad, opposite_bimonad, tau_suite

SUITES = ("monad", "comonad", "bimonad", "tau", "all")

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _gamma_failure(report: Report, cert: NoAntipodeCertificate) -> None:
    report.add("canonical.gamma_invertible", "canonical.gamma_invertible", False, cert.witness(), cert.describe())


def _antipode_checks(inst: Instance, report: Report) -> bool:
    """Canonical-map and antipode checks; True when a verified antipode exists."""
    H = inst.bimonad()
    g = gamma(H, verify=False)
    report.extend(g.report)
    if not g.invertible:
        _gamma_failure(report, certificate_for(g.gamma))
        return False
    cand = compute_antipode(H, verify=False)
    report.extend(cand.report)
    if inst.antipode is not None:
        given = check_antipode(H, inst.antipode)
        report.extend(given.report, "given.")
    return cand.verified


def run_verify(inst: Instance, suite: str) -> Report:
    r = Report(f"verify {inst.name} ({suite})")
    with r.timed("total"):
        if suite == "monad":
            check_monad(inst.monad, r)
        elif suite == "comonad":
            check_comonad(inst.comonad, r)
        elif suite == "tau":
            r.extend(tau_suite(inst.tau_bimonad()))
        else:
            b = check_bimonad(inst.bimonad())
            r.extend(b)
            if not b.passed:
                r.classification = "not-bimonad"
            if suite == "all":
                r.extend(tau_suite(inst.tau_bimonad()), "tau_suite.")
                if b.passed:
                    hopf = _antipode_checks(inst, r)
                    r.classification = "hopf-monad" if hopf else "bimonad-no-antipode"
            elif b.passed:
                hopf = certificate_for(pipeline_eval(inst.bimonad().notation()("δH", "Hm"))) is None
                r.classification = "hopf-monad" if hopf else "bimonad-no-antipode"
    return r


def cmd_verify(args) -> tuple:
    inst = load(args.infile)
    return run_verify(inst, args.suite), None


def cmd_antipode(args) -> tuple:
    inst = load(args.infile)
    r = Report(f"antipode {inst.name}")
    with r.timed("total"):
        H = inst.bimonad()
        b = check_bimonad(H)
        r.extend(b)
        if not b.passed:
            r.classification = "not-bimonad"
            raise PreconditionError("not a bimonad", r)
        try:
            cand = compute_antipode(H, verify=False)
        except NoAntipodeError as exc:
            _gamma_failure(r, exc.certificate)
            r.classification = "bimonad-no-antipode"
            return r, None
        r.extend(cand.report)
        r.classification = "hopf-monad"
        S = cand.S
        if inst.kind == "vect":
            r.info["antipode"] = S.matrix.tolist()
            doc = dict(inst.spec)
            doc.pop("antipode", None)
            doc["antipode"] = S.matrix.tolist()
            return r, doc
        r.info["antipode"] = [inst.backend.labels[int(v)] for v in S.payload.array()]
    return r, None


def cmd_fundamental(args) -> tuple:
    inst = load(args.infile)
    r = Report(f"fundamental {inst.name}")
    with r.timed("total"):
        H = inst.bimonad()
        b = check_bimonad(H)
        if not b.passed:
            raise PreconditionError("not a bimonad", b)
        S = compute_antipode(H, verify=False).S
        dims = {}
        for v in range(1, args.max_dim + 1):
            M = comparison(H, v)
            sub = fundamental_check(H, S, M, free_rank=v)
            r.extend(sub, f"free[{v}].")
            dims[f"free[{v}]"] = {"module": M.carrier, "coinvariants": sub.info["coinvariants"]}
        reg = comparison(H, 1, verify=False)
        sub = fundamental_check(H, S, reg)
        r.extend(sub, "regular.")
        dims["regular"] = {"module": reg.carrier, "coinvariants": sub.info["coinvariants"]}
        r.info["dimensions"] = dims
        r.classification = "hopf-monad"
    return r, None


def _derived_spec(inst: Instance, structure, suffix: str) -> dict:
    name = f"{inst.name}.{suffix}"
    b = structure.backend
    if b.kind == "vect":
        return spec_from_structure(name, b, structure.monad, structure.comonad, structure.tau)
    return set_spec_from_structure(name, b, structure.monad, structure.comonad, structure.tau)


def _construction(inst: Instance, build, suffix: str) -> tuple:
    r = Report(f"{suffix} {inst.name}")
    with r.timed("total"):
        der = build(inst.tau_bimonad())
        r.extend(der.report)
        doc = _derived_spec(inst, der.structure, suffix)
    return r, doc, der.structure


def cmd_double(args) -> tuple:
    r, doc, _ = _construction(load(args.infile), double_bimonad, "double")
    return r, doc


def cmd_opposite(args) -> tuple:
    inst = load(args.infile)
    r, doc, D = _construction(inst, opposite_bimonad, "opposite")
    T = inst.tau_bimonad()
    back = opposite_bimonad(D).structure
    same = back.monad.m == T.monad.m and back.comonad.delta == T.comonad.delta
    r.add("construction.round_trip", "construction.round_trip", same)
    for what, new, old in (("m", D.monad.m, T.monad.m), ("δ", D.comonad.delta, T.comonad.delta)):
        v = nat_equal(new, old)
        if not v.equal:
            r.info["differs_from_original"] = f"{what}: {v.witness.describe()}"
            break
    else:
        r.info["differs_from_original"] = False
    return r, doc


def cmd_dualize(args) -> tuple:
    spec = read_spec(args.infile)
    r = Report(f"dualize {spec.get('name')}")
    with r.timed("total"):
        dual, rep = adjmod.check_dualize(spec)
        r.extend(rep)
    return r, dual


def cmd_mate(args) -> tuple:
    inst = load(args.infile)
    adj = adjmod.adjunction_for(inst.backend)
    r = Report(f"mate {inst.name}")
    with r.timed("total"):
        r.extend(adjmod.check_triangles(adj))
        H = inst.bimonad()
        transfer = adjmod.antipode_transfer_check(H, adj)
        r.extend(transfer)
        r.info.update(transfer.info)
        tt = adjmod.tau_transfer(inst.tau_bimonad(), adj)
        r.extend(tt.report, "adjoint_tau.")
        if inst.kind == "set":
            r.extend(adjmod.map_functor_probe(H, probe_sizes=(2,)), "")
            return r, None
        D = tt.structure
        S = None
        if transfer.info["gamma_invertible"]["H"]:
            S = adjmod.mate(compute_antipode(H, verify=False).S, adj).gen
        doc = spec_from_structure(f"{inst.name}.dual", D.backend, D.monad, D.comonad, D.tau, parity=inst.parity, antipode=S)
    return r, doc


def cmd_group(args) -> tuple:
    spec = read_spec(args.infile)
    inst = load(args.infile)
    if inst.kind != "set":
        raise PreconditionError("group needs a set-backend instance (a Cayley table)")
    v = adjmod.group_check(spec["table"], spec["unit"], labels=inst.backend.labels)
    return v.report, None


COMMANDS = {
    "verify": cmd_verify,
    "antipode": cmd_antipode,
    "fundamental": cmd_fundamental,
    "double": cmd_double,
    "opposite": cmd_opposite,
    "dualize": cmd_dualize,
    "mate": cmd_mate,
    "group": cmd_group,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopf-forge", description="Exact checks for bimonads and Hopf monads.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", required=True, help="instance file or catalog name")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--arity-cap", type=int, default=None, help="largest tensor arity (default 8)")
    common.add_argument("--dense-cap", type=int, default=None, help="largest dense dimension (default 4096)")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run law suites")
    v.add_argument("--suite", choices=SUITES, default="all")
    a = sub.add_parser("antipode", parents=[common], help="compute and verify the antipode")
    a.add_argument("--out", help="write a copy of the instance with the antipode")
    f = sub.add_parser("fundamental", parents=[common], help="check free Hopf modules and coinvariants")
    f.add_argument("--max-dim", type=int, default=3)
    for name, text in (
        ("double", "the doubled τ-bimonad on HH"),
        ("opposite", "the opposite τ-bimonad"),
        ("dualize", "the dual bialgebra"),
        ("mate", "the adjoint structure via mates"),
    ):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--out", help="where to write the derived instance")
    sub.add_parser("group", parents=[common], help="decide whether a monoid is a group")
    return p


def _emit(report: Report, args, out=None) -> None:
    out = out or sys.stdout
    if args.json:
        json.dump(report.to_json(), out, ensure_ascii=False, indent=2)
        out.write("\n")
    else:
        out.write(str(report) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        with limits(args.arity_cap, args.dense_cap):
            report, doc = COMMANDS[args.command](args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None:
            for c in exc.report.failed():
                print("  " + c.line(), file=sys.stderr)
        return EXIT_ERROR
    except CapExceeded as exc:
        print(f"error: {exc} (raise --arity-cap/--dense-cap)", file=sys.stderr)
        return EXIT_ERROR
    except HopfForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report.timing.setdefault("total", round(time.perf_counter() - t0, 6))
    if doc is not None:
        out = getattr(args, "out", None)
        if out:
            write_spec(doc, out)
            report.info["written"] = out
        elif not args.json:
            sys.stdout.write(dumps_spec(doc))
    _emit(report, args)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
