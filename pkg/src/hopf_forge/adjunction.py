"""The adjunctions B⊗− ⊣ B*⊗− and G×− ⊣ Map(G,−), mates, and transfer of
(co)monad, bimonad, antipode and braiding structure to the right adjoint.

Word conventions.  L^n = B^{⊗n}⊗− and R^n = B*^{⊗n}⊗− (resp. G^n×− and
Map(G^n,−)), leftmost factor outermost.  The composite adjunction L^n ⊣ R^n
pairs factors nested from the inside out, so the pairing of a B*-word with a
B-word matches f_i against b_{n+1-i}.  The dual basis is indexed like the
basis; the factor reversal this nesting forces is the only permutation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bimonad import (
    CO_ENTWINING,
    ENTWINING,
    BimonadData,
    certificate_for,
    check_antipode,
    check_bimonad,
    compute_antipode,
    is_invertible,
    require_bimonad,
)
from .calculus import (
    NatGen,
    Pipeline,
    SetBackend,
    Step,
    VectBackend,
    Witness,
    from_table,
    identity,
    pipeline_eval,
    word_label,
)
from .errors import CapExceeded, PreconditionError, ShapeError, SpecError
from .linalg import ExactMatrix
from .monads import ComonadData, MonadData, _require, check_comonad, check_monad
from .reports import Report
from .tau import Derived, TauBimonadData, tau_suite


def reversal(base: int, n: int) -> np.ndarray:
    """Index permutation reversing the factor order of words of length n."""
    if n <= 1:
        return np.arange(base**n, dtype=np.int64)
    digits = np.indices((base,) * n).reshape(n, -1)
    out = np.zeros(base**n, dtype=np.int64)
    for k in range(n):
        out = out * base + digits[n - 1 - k]
    return out


def _relabel(b, dual: bool):
    if b.kind == "vect":
        labels = [lab[:-1] if lab.endswith("*") else lab + "*" for lab in b.labels]
        return VectBackend(b.dim, b.field, labels, b.weight)
    return SetBackend(b.size, b.labels, contravariant=dual, weight=b.weight)


@dataclass(frozen=True)
class Adjunction:
    """L ⊣ R with L on ``left`` and R on ``right``."""

    left: object
    right: object

    @property
    def kind(self) -> str:
        return self.left.kind

    def coev(self, n: int) -> NatGen:
        """Unit of L^n ⊣ R^n as a generator I → R^n L^n (vector backend)."""
        b = self._vect()
        if n == 0:
            return identity(b, 0)
        d = b.dim
        rev = reversal(d, n)
        col = np.zeros((d ** (2 * n), 1), dtype=np.int64)
        for w in range(d**n):
            col[rev[w] * d**n + w, 0] = 1
        return NatGen(b, 0, 2 * n, ExactMatrix.from_array(b.field, col))

    def ev(self, n: int) -> NatGen:
        """Counit of L^n ⊣ R^n as a generator L^n R^n → I (vector backend)."""
        b = self._vect()
        if n == 0:
            return identity(b, 0)
        d = b.dim
        rev = reversal(d, n)
        row = np.zeros((1, d ** (2 * n)), dtype=np.int64)
        for w in range(d**n):
            row[0, w * d**n + rev[w]] = 1
        return NatGen(b, 2 * n, 0, ExactMatrix.from_array(b.field, row))

    def _vect(self) -> VectBackend:
        if self.kind != "vect":
            raise ShapeError("coevaluation and evaluation are generators only on the vector backend")
        return self.left


def tensor_hom_adjunction(backend: VectBackend) -> Adjunction:
    """B⊗− ⊣ Hom(B,−) ≅ B*⊗− with the dual-basis unit and counit."""
    if backend.kind != "vect":
        raise ShapeError("tensor-hom adjunction needs a vector backend")
    return Adjunction(backend, _relabel(backend, True))


def map_adjunction(backend: SetBackend) -> Adjunction:
    """G×− ⊣ Map(G,−)."""
    if backend.kind != "set" or backend.contravariant:
        raise ShapeError("the Map adjunction needs a covariant set backend")
    return Adjunction(backend, _relabel(backend, True))


def adjunction_for(backend) -> Adjunction:
    return tensor_hom_adjunction(backend) if backend.kind == "vect" else map_adjunction(backend)


# ---------------------------------------------------------------- triangles


def _set_probe_elements(size: int, count: int):
    return itertools.product(range(size), repeat=count)


def check_triangles(adj: Adjunction, max_arity: int = 2, probe_sizes=(1, 2, 3), budget: int = 1 << 14) -> Report:
    """εL^n·L^nη = id and R^nε·ηR^n = id.

    Exact on generators for the vector backend; on the set backend the maps are
    evaluated elementwise at probe objects whose Map sets fit in ``budget``.
    """
    r = Report("adjunction triangles")
    if adj.kind == "vect":
        b = adj.left
        for n in range(1, max_arity + 1):
            co, ev = adj.coev(n), adj.ev(n)
            left = Pipeline(b, n, None, (Step(co, n, 0), Step(ev, 0, n)))
            right = Pipeline(b, n, None, (Step(co, 0, n), Step(ev, n, 0)))
            r.law("adjunction.triangle_left", left, identity(b, n), check=f"adjunction.triangle_left[{n}]")
            r.law("adjunction.triangle_right", right, identity(b, n), check=f"adjunction.triangle_right[{n}]")
        return r
    G = adj.left.size
    for n in range(1, max_arity + 1):
        N = G**n
        rev = reversal(G, n)
        for a in probe_sizes:
            if a**N > budget:
                continue
            # L^n a -> L^n R^n L^n a -> L^n a
            bad = None
            for w in range(N):
                for x in range(a):
                    psi = tuple((int(rev[h]), x) for h in range(N))
                    back = psi[rev[w]]
                    if back != (w, x):
                        bad = Witness(w * a + x, f"({w},{x})", str(back), f"({w},{x})")
                        break
                if bad:
                    break
            r.add(f"adjunction.triangle_left[{n},{a}]", "adjunction.triangle_left", bad is None, bad)
            # R^n a -> R^n L^n R^n a -> R^n a
            bad = None
            for i, phi in enumerate(_set_probe_elements(a, N)):
                eta = tuple((int(rev[h]), phi) for h in range(N))
                back = tuple(p[int(rev[w])] for w, p in eta)
                if back != phi:
                    bad = Witness(i, str(phi), str(back), str(phi))
                    break
            r.add(f"adjunction.triangle_right[{n},{a}]", "adjunction.triangle_right", bad is None, bad)
    return r


# ---------------------------------------------------------------- mates


@dataclass(frozen=True)
class MateResult:
    gen: NatGen
    source: str
    target: str


def _rewrap(g: NatGen, backend) -> NatGen:
    return NatGen(backend, g.src, g.dst, g.payload, g.xin, g.xout)


def _check_input(g: NatGen, b) -> None:
    if g.has_carrier:
        raise ShapeError("mates are taken of carrier-free generators")
    if not b.same_as(g.backend):
        raise ShapeError(f"generator lives on {g.backend!r}, expected {b!r}")


def mate(alpha: NatGen, adj: Adjunction) -> MateResult:
    """α: L^m → L^n  ↦  ᾱ: R^n → R^m, the composite Rε·RαR·ηR."""
    _check_input(alpha, adj.left)
    m, n = alpha.src, alpha.dst
    if adj.kind == "vect":
        b = adj.left
        p = Pipeline(b, n, None, (Step(adj.coev(m), 0, n), Step(alpha, m, n), Step(adj.ev(n), m, 0)))
        gen = _rewrap(pipeline_eval(p), adj.right)
    else:
        gen = from_table(adj.right, n, m, _set_mate(alpha.payload.array(), adj.left.size, m, n))
    return MateResult(gen, "R" * n, "R" * m)


def comate(beta: NatGen, adj: Adjunction) -> MateResult:
    """Inverse direction: β: R^n → R^m  ↦  L^m → L^n, the composite εL·LβL·Lη."""
    _check_input(beta, adj.right)
    n, m = beta.src, beta.dst
    if adj.kind == "vect":
        b = adj.left
        g = _rewrap(beta, b)
        p = Pipeline(b, m, None, (Step(adj.coev(n), m, 0), Step(g, m, n), Step(adj.ev(m), 0, n)))
        gen = pipeline_eval(p)
    else:
        gen = from_table(adj.left, m, n, _set_comate(beta.payload.array(), adj.left.size, m, n))
    return MateResult(gen, "L" * m, "L" * n)


def _set_mate(t, G: int, m: int, n: int) -> list:
    """Mate of (c, x) ↦ (t(c), x), read off at the universal element id ∈ Map(G^n, G^n)."""
    rev_m, rev_n = reversal(G, m), reversal(G, n)

    def eta(x):  # X → Map(G^m, G^m × X)
        return lambda h: (int(rev_m[h]), x)

    def alpha(pair):
        return int(t[pair[0]]), pair[1]

    def counit(pair):  # G^n × Map(G^n, a) → a
        return pair[1](int(rev_n[pair[0]]))

    phi = lambda w: w  # noqa: E731
    psi = eta(phi)
    out = []
    for h in range(G**m):
        out.append(counit(alpha(psi(h))))
    return out


def _set_comate(s, G: int, m: int, n: int) -> list:
    """Inverse mate of φ ↦ φ∘s, evaluated at a one-point probe."""
    rev_m, rev_n = reversal(G, m), reversal(G, n)

    def eta(x):  # a → Map(G^n, G^n × a)
        return lambda h: (int(rev_n[h]), x)

    def beta(psi):
        return lambda h: psi(int(s[h]))

    out = []
    for c in range(G**m):
        word, _ = beta(eta(0))(int(rev_m[c]))
        out.append(word)
    return out


def mate_closed_form(g: NatGen, adj: Adjunction, inverse: bool = False) -> NatGen:
    """Reversed transpose: ᾱ[c, f] = α[rev f, rev c] (tables: rev∘t∘rev)."""
    target = adj.left if inverse else adj.right
    src, dst = g.dst, g.src
    if g.backend.kind == "vect":
        d = g.backend.dim
        A = g.matrix.a
        out = A.T[reversal(d, g.src)][:, reversal(d, g.dst)]
        return NatGen(target, src, dst, ExactMatrix(g.backend.field, out, _trusted=True))
    G = g.backend.size
    t = g.payload.array()
    # the outer reversal acts on the values, the inner one on the points
    inner = reversal(G, g.src if not inverse else g.dst)
    outer = reversal(G, g.dst if not inverse else g.src)
    return from_table(target, src, dst, outer[t[inner]])


def check_mate_laws(alpha: NatGen, beta: NatGen, adj: Adjunction, whisker_by: int = 1) -> Report:
    """Round trip, closed form, contravariant composition and both whisker correspondences.

    ``beta`` must compose after ``alpha`` (β·α).
    """
    from .calculus import vcomp, whisker

    r = Report("mate laws")
    ma = mate(alpha, adj).gen
    mb = mate(beta, adj).gen
    r.law("mate.round_trip", comate(ma, adj).gen, alpha)
    r.law("mate.closed_form", ma, mate_closed_form(alpha, adj))
    r.law("mate.composition", mate(vcomp(alpha, beta), adj).gen, vcomp(mb, ma))
    k = whisker_by
    r.law("mate.whisker_inner", mate(whisker(0, alpha, k), adj).gen, whisker(k, ma, 0))
    r.law("mate.whisker_outer", mate(whisker(k, alpha, 0), adj).gen, whisker(0, ma, k))
    return r


# ---------------------------------------------------------------- adjoint structures


def adjoint_comonad(M: MonadData, adj: Adjunction, verify: bool = True) -> Derived:
    """(R, mate(m), mate(e)) with its comonad check."""
    if verify:
        _require(check_monad(M), "monad check")
    C = ComonadData(mate(M.m, adj).gen, mate(M.e, adj).gen)
    return Derived(C, check_comonad(C, Report("adjoint comonad")))


def adjoint_monad(C: ComonadData, adj: Adjunction, verify: bool = True) -> Derived:
    """(R, mate(δ), mate(ε)) with its monad check."""
    if verify:
        _require(check_comonad(C), "comonad check")
    M = MonadData(mate(C.delta, adj).gen, mate(C.eps, adj).gen)
    return Derived(M, check_monad(M, Report("adjoint monad")))


def dual_generator(g: NatGen, backend) -> NatGen:
    """Dualized structure constants by explicit index reversal: out[c, f] = g[rev f, rev c]."""
    d = g.backend.dim
    A = g.matrix.a
    n_out, n_in = g.src, g.dst
    rows = []
    for c in itertools.product(range(d), repeat=n_out):
        row = []
        rc = _index(reversed(c), d)
        for f in itertools.product(range(d), repeat=n_in):
            row.append(A[_index(reversed(f), d), rc])
        rows.append(row)
    return NatGen(backend, n_in, n_out, ExactMatrix(g.backend.field, np.array(rows, dtype=A.dtype).reshape(d**n_out, d**n_in), _trusted=True))


def _index(word, d: int) -> int:
    i = 0
    for x in word:
        i = i * d + x
    return i


def adjoint_bimonad(H: BimonadData, adj: Adjunction, verify: bool = True) -> Derived:
    """Bimonad on R: monad from the comonad of H, comonad from its monad, entwining mate(λ).

    The entwining changes flavor.  On the vector backend each generator is
    also compared against the directly dualized structure constants.
    """
    if verify:
        require_bimonad(H)
    M = MonadData(mate(H.delta, adj).gen, mate(H.eps, adj).gen)
    C = ComonadData(mate(H.m, adj).gen, mate(H.e, adj).gen)
    flavor = CO_ENTWINING if H.flavor == ENTWINING else ENTWINING
    R = BimonadData(M, C, mate(H.lam, adj).gen, flavor)
    r = check_bimonad(R, Report("adjoint bimonad"))
    if adj.kind == "vect":
        pairs = (("m", M.m, H.delta), ("e", M.e, H.eps), ("δ", C.delta, H.m), ("ε", C.eps, H.e), ("λ", R.lam, H.lam))
        for name, got, src in pairs:
            r.law("mate.matches_dual", got, dual_generator(src, adj.right), check=f"mate.matches_dual[{name}]")
    return Derived(R, r)


def antipode_transfer_check(H: BimonadData, adj: Adjunction) -> Report:
    """γ_H invertible ⟺ γ_R invertible, each computed on its own side; the mate
    of S_H is checked as an antipode of R and against R's own antipode.

    The equivalence is confirmed on this instance only.
    """
    require_bimonad(H)
    der = adjoint_bimonad(H, adj, verify=False)
    _require(der.report, "adjoint bimonad check")
    R = der.structure
    r = Report("antipode transfer")
    r.extend(der.report, "adjoint.")
    gH = pipeline_eval(H.notation()("δH", "Hm"))
    gR = pipeline_eval(R.notation()("δH", "Hm"))
    invH, invR = is_invertible(gH), is_invertible(gR)
    r.add("transfer.gamma_agreement", "transfer.gamma_agreement", invH == invR, detail=f"γ_H {'invertible' if invH else 'singular'}, γ_R {'invertible' if invR else 'singular'}")
    r.info["gamma_invertible"] = {"H": invH, "R": invR}
    r.info["scope"] = "equivalence confirmed on this instance, not as a general statement"
    if not invH or not invR:
        certs = {}
        for side, g in (("H", gH), ("R", gR)):
            c = certificate_for(g)
            if c is not None:
                certs[side] = {"description": c.describe(), "verified": c.verified}
        r.info["certificates"] = certs
    if invH:
        SH = compute_antipode(H, verify=False).S
        SR = mate(SH, adj).gen
        cand = check_antipode(R, SR)
        r.extend(cand.report, "adjoint.")
        r.add("transfer.antipode", "transfer.antipode", cand.verified)
        if invR:
            r.law("transfer.antipode", SR, compute_antipode(R, verify=False).S, check="transfer.antipode_matches_direct")
    return r


def tau_transfer(T: TauBimonadData, adj: Adjunction) -> Derived:
    """τ_R = mate(τ) on the adjoint monad and comonad, with the full τ-suite (including Yang-Baxter)."""
    _require(tau_suite(T), "τ-bimonad suite")
    M = MonadData(mate(T.comonad.delta, adj).gen, mate(T.comonad.eps, adj).gen)
    C = ComonadData(mate(T.monad.m, adj).gen, mate(T.monad.e, adj).gen)
    D = TauBimonadData(M, C, mate(T.tau, adj).gen)
    r = tau_suite(D)
    if adj.kind == "vect":
        r.law("mate.matches_dual", D.tau, dual_generator(T.tau, adj.right), check="mate.matches_dual[τ]")
    return Derived(D, r)


# ---------------------------------------------------------------- dual instance documents


def _toggle_label(lab: str) -> str:
    return lab[:-1] if lab.endswith("*") else lab + "*"


def _toggle_name(name: str) -> str:
    return name[: -len(".dual")] if name.endswith(".dual") else name + ".dual"


def dualize(doc: dict) -> dict:
    """Structure constants of the dual: the input is validated, entries are moved, never rewritten.

    mul*[i][j][k] = comul[k][j][i], comul*[k][i][j] = mul[j][i][k],
    unit* = counit, counit* = unit, braiding*[(a,b),(c,e)] = braiding[(e,c),(b,a)],
    antipode* = antipodeᵀ; a parity vector is kept.
    """
    from .instances import from_spec

    if doc.get("backend") != "vect":
        raise SpecError("dualize needs a vector-backend instance", field="backend")
    from_spec(doc)
    d = doc["dim"]
    mul, comul = doc["mul"], doc["comul"]
    out = {}
    for key, value in doc.items():
        if key == "name":
            out[key] = _toggle_name(value)
        elif key == "labels":
            out[key] = [_toggle_label(x) for x in value]
        elif key == "mul":
            out[key] = [[[comul[k][j][i] for k in range(d)] for j in range(d)] for i in range(d)]
        elif key == "comul":
            out[key] = [[[mul[j][i][k] for j in range(d)] for i in range(d)] for k in range(d)]
        elif key == "unit":
            out[key] = list(doc["counit"])
        elif key == "counit":
            out[key] = list(doc["unit"])
        elif key == "braiding":
            t = value
            out[key] = [[t[e * d + c][b * d + a] for c in range(d) for e in range(d)] for a in range(d) for b in range(d)]
        elif key == "antipode":
            out[key] = [[value[j][i] for j in range(d)] for i in range(d)]
        else:
            out[key] = value
    return out


def check_dualize(doc: dict) -> tuple:
    """Dualize, then compare the dual's generators with the mates of the original's.

    Returns ``(dual_doc, report)``.
    """
    from .instances import from_spec

    src = from_spec(doc)
    dual = dualize(doc)
    tgt = from_spec(dual)
    adj = tensor_hom_adjunction(src.backend)
    r = Report("dualize")
    pairs = (
        ("m", tgt.monad.m, src.comonad.delta),
        ("e", tgt.monad.e, src.comonad.eps),
        ("δ", tgt.comonad.delta, src.monad.m),
        ("ε", tgt.comonad.eps, src.monad.e),
        ("τ", tgt.tau, src.tau),
    )
    if src.antipode is not None:
        pairs += (("S", tgt.antipode, src.antipode),)
    for name, got, orig in pairs:
        r.law("mate.matches_dual", _rewrap(got, adj.right), mate(orig, adj).gen, check=f"mate.matches_dual[{name}]")
    r.add("construction.round_trip", "construction.round_trip", dualize(dual) == doc)
    return dual, r


# ---------------------------------------------------------------- groups


@dataclass
class GroupVerdict:
    is_group: bool
    oracle: bool
    collision: Optional[tuple]
    report: Report


def _monoid_report(table, unit: int, r: Report) -> bool:
    s = len(table)
    for a in range(s):
        if table[unit][a] != a or table[a][unit] != a:
            r.add("group.monoid[unit]", "group.monoid", False, detail=f"{unit} is not a two-sided unit at {a}")
            return False
    for a, b, c in itertools.product(range(s), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            r.add("group.monoid[associativity]", "group.monoid", False, detail=f"({a}{b}){c} ≠ {a}({b}{c})")
            return False
    r.add("group.monoid", "group.monoid", True)
    return True


def group_oracle(table, unit: int) -> bool:
    """Every element has a two-sided inverse (direct search)."""
    s = len(table)
    return all(any(table[g][h] == unit and table[h][g] == unit for h in range(s)) for g in range(s))


def group_check(table, unit: Optional[int] = None, labels=None, adjoint: bool = True) -> GroupVerdict:
    """G is a group iff γ(g,h) = (g,gh) is a bijection of G×G.

    The verdict is compared with the inverse-search oracle; a collision pair is
    re-evaluated directly from the table.  With ``adjoint`` the same question
    is asked of Map(G,−) via mates.
    """
    from .instances import from_spec

    s = len(table)
    if s == 0 or any(len(row) != s for row in table):
        raise SpecError("Cayley table must be square and non-empty", field="table")
    if unit is None:
        found = [u for u in range(s) if all(table[u][a] == a and table[a][u] == a for a in range(s))]
        unit = found[0] if found else 0
    r = Report("group check")
    if not _monoid_report(table, unit, r):
        raise PreconditionError("not a monoid", r)
    doc = {"backend": "set", "size": s, "table": [list(row) for row in table], "unit": unit}
    if labels is not None:
        doc["labels"] = list(labels)
    inst = from_spec(doc)
    H = inst.bimonad()
    g = pipeline_eval(H.notation()("δH", "Hm"))
    bij = is_invertible(g)
    r.add("group.gamma_bijective", "group.gamma_bijective", bij)
    collision = None
    if not bij:
        cert = certificate_for(g)
        a, c = cert.collision
        direct = [(x // s, table[x // s][x % s]) for x in (a, c)]
        ok = cert.verified and direct[0] == direct[1]
        collision = (a, c)
        r.add(
            "group.collision_verified",
            "group.gamma_bijective",
            ok,
            detail=f"γ{word_label(H.backend, 2, None, a)} = γ{word_label(H.backend, 2, None, c)} = {word_label(H.backend, 2, None, direct[0][0] * s + direct[0][1])}",
        )
        r.info["collision"] = [word_label(H.backend, 2, None, a), word_label(H.backend, 2, None, c)]
    oracle = group_oracle(table, unit)
    r.add("group.oracle_agreement", "group.oracle_agreement", oracle == bij)
    if adjoint:
        adj = map_adjunction(inst.backend)
        der = adjoint_bimonad(H, adj, verify=False)
        gR = pipeline_eval(der.structure.notation()("δH", "Hm"))
        r.add("transfer.gamma_agreement", "transfer.gamma_agreement", is_invertible(gR) == bij)
    r.info["verdict"] = "group" if bij else "not-group"
    return GroupVerdict(bij, oracle, collision, r)


# ---------------------------------------------------------------- Map(G,−) probes


def _component(gen: NatGen, G: int, a: int):
    """Component at a of a Map-backend generator, acting on tuples φ ∈ Map(G^src, a)."""
    s = gen.payload.array()
    return lambda phi: tuple(phi[int(h)] for h in s)


def map_functor_probe(
    H: BimonadData, probe_sizes=(2,), budget: int = 1 << 16, trials: int = 32, seed: int = 0
) -> Report:
    """Evaluate the transferred structure of Map(G,−) at small sets.

    Each structure map is compared pointwise with its direct description (the
    reader monad and the comonad precomposing with the product) and checked for
    naturality against random functions between probe sets.
    """
    b = H.backend
    if b.kind != "set" or b.contravariant:
        raise ShapeError("probes need a bimonad on G×−")
    G = b.size
    adj = map_adjunction(b)
    R = adjoint_bimonad(H, adj).structure
    mt = H.m.payload.array()
    unit = int(H.e.payload.array()[0])
    rng = random.Random(seed)
    r = Report("Map(G,−) probe")
    for a in probe_sizes:
        if a ** (G**2) > budget:
            raise CapExceeded(f"probe Map(G², {a}) has {a ** (G**2)} elements, budget {budget}")
        direct = {
            "m": lambda psi: tuple(psi[h * G + h] for h in range(G)),
            "e": lambda x: tuple(x[0] for _ in range(G)),
            "δ": lambda phi: tuple(phi[int(mt[h2 * G + h1])] for h1 in range(G) for h2 in range(G)),
            "ε": lambda phi: (phi[unit],),
        }
        gens = {"m": R.m, "e": R.e, "δ": R.delta, "ε": R.eps, "λ": R.lam}
        for name, gen in gens.items():
            comp = _component(gen, G, a)
            n_src = G**gen.src
            if name in direct:
                bad = None
                for phi in itertools.product(range(a), repeat=n_src):
                    lhs, rhs = comp(phi), direct[name](phi)
                    if lhs != rhs:
                        bad = Witness(0, str(phi), str(lhs), str(rhs))
                        break
                r.add(f"probe.structure[{name},{a}]", "probe.structure", bad is None, bad)
            bad = None
            for _ in range(trials):
                c = rng.choice(probe_sizes)
                f = [rng.randrange(c) for _ in range(a)]
                phi = tuple(rng.randrange(a) for _ in range(n_src))
                lhs = tuple(f[v] for v in comp(phi))
                rhs = _component(gen, G, c)(tuple(f[v] for v in phi))
                if lhs != rhs:
                    bad = Witness(0, str(phi), str(lhs), str(rhs))
                    break
            r.add(f"probe.naturality[{name},{a}]", "probe.naturality", bad is None, bad)
        # unit laws of the transferred product, evaluated elementwise
        mc = _component(R.m, G, a)
        ec = _component(R.e, G, a)
        bad = None
        for phi in itertools.product(range(a), repeat=G):
            inner = tuple(v for h in range(G) for v in ec((phi[h],)))
            outer = tuple(v for t in ec((phi,)) for v in t)
            for got in (mc(inner), mc(outer)):
                if got != phi:
                    bad = Witness(0, str(phi), str(got), str(phi))
            if bad:
                break
        r.add(f"probe.structure[unit_laws,{a}]", "probe.structure", bad is None, bad)
    return r
