import itertools
import random

import pytest

from hopf_forge.adjunction import (
    adjoint_bimonad,
    adjoint_comonad,
    adjoint_monad,
    adjunction_for,
    antipode_transfer_check,
    check_dualize,
    check_mate_laws,
    check_triangles,
    comate,
    dual_generator,
    dualize,
    group_check,
    map_adjunction,
    map_functor_probe,
    mate,
    mate_closed_form,
    reversal,
    tau_transfer,
    tensor_hom_adjunction,
)
from hopf_forge.bimonad import ENTWINING, BimonadData
from hopf_forge.calculus import SetBackend, VectBackend, from_matrix, from_table, identity
from hopf_forge.errors import CapExceeded, PreconditionError, ShapeError, SpecError
from hopf_forge.instances import CATALOG, from_spec, load, read_spec
from hopf_forge.linalg import GF
from hopf_forge.monads import ComonadData, MonadData


def trivial_bimonad():
    b = VectBackend(1, GF(7))
    one = [[1]]
    M = MonadData(from_matrix(b, 2, 1, one), from_matrix(b, 0, 1, one))
    C = ComonadData(from_matrix(b, 1, 2, one), from_matrix(b, 1, 0, one))
    return BimonadData(M, C, from_matrix(b, 2, 2, one))


def test_reversal():
    assert reversal(2, 2).tolist() == [0, 2, 1, 3]
    assert reversal(3, 1).tolist() == [0, 1, 2]


def test_unit_and_counit_matrices():
    adj = tensor_hom_adjunction(VectBackend(1, GF(3)))
    assert adj.coev(1).matrix.tolist() == [[1]] and adj.ev(1).matrix.tolist() == [[1]]
    assert check_triangles(adj).passed
    adj = tensor_hom_adjunction(VectBackend(2, GF(2), ["a", "b"]))
    # Σ e_i ⊗ e_i*, in the basis aa, ab, ba, bb
    assert adj.coev(1).matrix.tolist() == [[1], [0], [0], [1]]
    assert adj.ev(1).matrix.tolist() == [[1, 0, 0, 1]]
    assert adj.right.labels == ["a*", "b*"]
    assert check_triangles(adj).passed


@pytest.mark.parametrize("name", CATALOG)
def test_triangles_for_catalog(name):
    assert check_triangles(adjunction_for(load(name).backend)).passed


def test_map_adjunction_rejects_contravariant_backend():
    with pytest.raises(ShapeError):
        map_adjunction(SetBackend(2, contravariant=True))
    with pytest.raises(ShapeError):
        tensor_hom_adjunction(SetBackend(2))


@pytest.mark.parametrize("name", ["c2_f2", "z4_set"])
def test_mate_of_identity(name):
    b = load(name).backend
    adj = adjunction_for(b)
    for n in range(3):
        assert mate(identity(b, n), adj).gen == identity(adj.right, n)


def test_mate_of_multiplication_is_transposed_structure_constants():
    H = load("c2_f2").bimonad()
    adj = tensor_hom_adjunction(H.backend)
    got = mate(H.m, adj).gen
    M = H.m.matrix.tolist()
    # out[(c1, c2), f] = m[f, (c2, c1)]
    want = [[M[f][c2 * 2 + c1] for f in range(2)] for c1 in range(2) for c2 in range(2)]
    assert got.matrix.tolist() == want
    assert (got.src, got.dst) == (1, 2)
    assert got == mate_closed_form(H.m, adj)
    assert got == dual_generator(H.m, adj.right)
    assert mate(got, tensor_hom_adjunction(adj.right)).gen.matrix == H.m.matrix


def test_mate_round_trip_random():
    rng = random.Random(1)
    for _ in range(30):
        d = rng.randint(1, 3)
        b = VectBackend(d, GF(rng.choice([2, 3, 5])))
        adj = tensor_hom_adjunction(b)
        src, dst = rng.choice([(0, 1), (1, 0), (1, 2), (2, 1), (2, 2)])
        a = from_matrix(b, src, dst, [[rng.randrange(b.field.p) for _ in range(d**src)] for _ in range(d**dst)])
        assert comate(mate(a, adj).gen, adj).gen == a
        assert mate_closed_form(mate(a, adj).gen, adj, inverse=True) == a
    for _ in range(30):
        s = rng.randint(1, 3)
        b = SetBackend(s)
        adj = map_adjunction(b)
        src, dst = rng.choice([(0, 1), (1, 0), (1, 2), (2, 1), (2, 2)])
        a = from_table(b, src, dst, [rng.randrange(s**dst) for _ in range(s**src)])
        assert comate(mate(a, adj).gen, adj).gen == a


def test_mate_laws():
    b = VectBackend(2, GF(3))
    adj = tensor_hom_adjunction(b)
    rng = random.Random(4)
    a = from_matrix(b, 1, 2, [[rng.randrange(3) for _ in range(2)] for _ in range(4)])
    c = from_matrix(b, 2, 1, [[rng.randrange(3) for _ in range(4)] for _ in range(2)])
    assert check_mate_laws(a, c, adj).passed


def test_mate_rejects_carriers_and_foreign_backends():
    b = VectBackend(2, GF(3))
    adj = tensor_hom_adjunction(b)
    with pytest.raises(ShapeError):
        mate(identity(b, 1, carrier=2), adj)
    with pytest.raises(ShapeError):
        mate(identity(SetBackend(2), 1), adj)


def test_adjoint_monad_and_comonad():
    inst = load("sweedler_f5")
    adj = adjunction_for(inst.backend)
    assert adjoint_comonad(inst.monad, adj).report.passed
    assert adjoint_monad(inst.comonad, adj).report.passed


@pytest.mark.parametrize("name", ["c2_f2", "sweedler_f5", "sweedler_q", "monoid_1z_f2", "z4_set", "monoid_1z_set"])
def test_adjoint_of_adjoint_is_the_original(name):
    H = load(name).bimonad()
    adj = adjunction_for(H.backend)
    R = adjoint_bimonad(H, adj)
    assert R.report.passed
    assert R.structure.flavor != H.flavor
    if H.backend.kind == "vect":
        back = adjoint_bimonad(R.structure, tensor_hom_adjunction(adj.right)).structure
        assert back.flavor == ENTWINING
        for got, want in ((back.m, H.m), (back.e, H.e), (back.delta, H.delta), (back.eps, H.eps), (back.lam, H.lam)):
            assert got.matrix == want.matrix


def test_antipode_transfer():
    r = antipode_transfer_check(load("c2_f2").bimonad(), adjunction_for(load("c2_f2").backend))
    assert r.passed and r.info["gamma_invertible"] == {"H": True, "R": True}
    assert r.get("transfer.antipode").passed
    inst = load("monoid_1z_f2")
    r = antipode_transfer_check(inst.bimonad(), adjunction_for(inst.backend))
    assert r.passed and r.info["gamma_invertible"] == {"H": False, "R": False}
    assert set(r.info["certificates"]) == {"H", "R"}
    H = trivial_bimonad()
    assert antipode_transfer_check(H, tensor_hom_adjunction(H.backend)).passed


def test_tau_transfer():
    for name in ("exterior_f3", "sweedler_f5", "z4_set"):
        inst = load(name)
        assert tau_transfer(inst.tau_bimonad(), adjunction_for(inst.backend)).report.passed


@pytest.mark.parametrize("name", ["c2_f2", "c3_f3", "s3_q", "sweedler_f5", "sweedler_q", "monoid_1z_f2", "exterior_f3"])
def test_dualize(name):
    doc = read_spec(name)
    dual, rep = check_dualize(doc)
    assert rep.passed
    assert dualize(dual) == doc
    assert dual["name"] == f"{name}.dual"
    assert from_spec(dual).bimonad() is not None


def test_dualize_moves_entries():
    doc = read_spec("sweedler_f5")
    dual = dualize(doc)
    d = doc["dim"]
    for i, j, k in itertools.product(range(d), repeat=3):
        assert dual["mul"][i][j][k] == doc["comul"][k][j][i]
        assert dual["comul"][k][i][j] == doc["mul"][j][i][k]
    assert dual["unit"] == doc["counit"] and dual["counit"] == doc["unit"]


def test_dualize_needs_vector_backend():
    with pytest.raises(SpecError):
        dualize(read_spec("z4_set"))


def test_group_examples():
    v = group_check([[0]], 0)
    assert v.is_group and v.report.passed
    v = group_check(read_spec("z4_set")["table"], 0)
    assert v.is_group and v.collision is None and v.report.passed
    v = group_check([[0, 1], [1, 1]], 0, labels=["1", "z"])
    assert not v.is_group and v.report.failed_laws() == ["group.gamma_bijective"]
    assert v.report.get("group.collision_verified").passed
    assert v.report.get("group.oracle_agreement").passed
    assert v.report.info["collision"] == ["(z,1)", "(z,z)"]
    a, c = v.collision
    assert {a, c} == {2, 3}


def test_group_check_rejects_non_monoid():
    with pytest.raises(PreconditionError):
        group_check([[1, 0], [0, 1]], 0)
    with pytest.raises(SpecError):
        group_check([[0, 1]], 0)


def test_probe_on_small_groups():
    for table in ([[0, 1], [1, 0]], [[(i + j) % 3 for j in range(3)] for i in range(3)]):
        H = from_spec({"backend": "set", "size": len(table), "table": table, "unit": 0}).bimonad()
        r = map_functor_probe(H, probe_sizes=(2,) if len(table) == 2 else (3,), budget=1 << 15)
        assert r.passed
        assert any(c.check.startswith("probe.structure") for c in r.checks)
        assert any(c.check.startswith("probe.naturality") for c in r.checks)


def test_probe_budget():
    H = load("z4_set").bimonad()
    with pytest.raises(CapExceeded):
        map_functor_probe(H, probe_sizes=(3,), budget=1000)
