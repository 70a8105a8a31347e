import random

import pytest

from oracles import Naive
from hopf_forge.calculus import (
    Pipeline,
    SetBackend,
    Step,
    VectBackend,
    compare,
    dense_compose,
    from_matrix,
    from_table,
    hcomp,
    identity,
    limits,
    nat_equal,
    oracle_mode,
    pipeline_eval,
    vcomp,
    whisker,
    whisker_left,
    whisker_right,
)
from hopf_forge.errors import ArityCapExceeded, DenseCapExceeded, ShapeError
from hopf_forge.instances import load, read_spec
from hopf_forge.linalg import GF, QQ, ExactMatrix


@pytest.fixture(scope="module")
def c2():
    return load("c2_f2").bimonad()


def test_vcomp_identities(c2):
    m = c2.m
    assert vcomp(identity(c2.backend, 2), m) == m
    assert vcomp(m, identity(c2.backend, 1)) == m
    one = VectBackend(1, GF(3))
    e, eps = from_matrix(one, 0, 1, [[1]]), from_matrix(one, 1, 0, [[1]])
    assert vcomp(e, eps) == identity(one, 0)


def test_vcomp_shape_mismatch(c2):
    with pytest.raises(ShapeError):
        vcomp(c2.m, c2.m)


def test_delta_then_m_on_group_algebra(c2):
    # m·δ(g) = g·g = 1 and m·δ(1) = 1
    assert vcomp(c2.delta, c2.m).matrix == ExactMatrix(GF(2), [[1, 1], [0, 0]])


def test_whiskering_conventions(c2):
    b, e = c2.backend, c2.e
    assert whisker_left(0, c2.m) == c2.m and whisker_right(c2.m, 0) == c2.m
    # He: x ↦ x⊗1, eH: x ↦ 1⊗x; basis order 11, 1g, g1, gg
    assert whisker_left(1, e).matrix.tolist() == [[1, 0], [0, 0], [0, 1], [0, 0]]
    assert whisker_right(e, 1).matrix.tolist() == [[1, 0], [0, 1], [0, 0], [0, 0]]
    f = from_matrix(b, 1, 1, [[1, 1], [0, 1]])
    F = f.matrix.tolist()
    assert whisker_left(1, f).matrix.tolist() == [F[0] + [0, 0], F[1] + [0, 0], [0, 0] + F[0], [0, 0] + F[1]]
    assert whisker_right(f, 1).matrix.tolist() == [[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_hcomp(c2):
    b = c2.backend
    assert hcomp(identity(b, 1), identity(b, 1)) == identity(b, 2)
    assert hcomp(c2.m, identity(b, 0)) == c2.m
    mm = hcomp(c2.m, c2.m)
    assert (mm.matrix.rows, mm.matrix.cols) == (4, 16)
    assert mm == vcomp(whisker(0, c2.m, 2), whisker(1, c2.m, 0))
    assert mm == vcomp(whisker(2, c2.m, 0), whisker(0, c2.m, 1))


def test_pipeline_eval_basics(c2):
    N = c2.notation()
    assert pipeline_eval(Pipeline(c2.backend, 2)) == identity(c2.backend, 2)
    assert pipeline_eval(N("Hm")) == whisker(1, c2.m, 0)
    assert pipeline_eval(Pipeline(c2.backend, 3, steps=(Step(c2.m, 1, 0),))) == whisker(1, c2.m, 0)


@pytest.mark.parametrize("name", ["c2_f2", "sweedler_f5", "sweedler_q", "monoid_1z_f2"])
def test_gamma_pipeline_against_brute_force(name):
    H = load(name).bimonad()
    N = H.notation()
    g = pipeline_eval(N("δH", "Hm"))
    assert g == dense_compose(N("δH", "Hm"))
    naive = Naive(read_spec(name)).gamma_matrix()
    F = H.backend.field
    assert g.matrix.tolist() == [[F(x) for x in row] for row in naive]


def test_gamma_differs_from_gamma_prime_on_group_algebra(c2):
    N = c2.notation()
    g = pipeline_eval(N("δH", "Hm"))
    gp = pipeline_eval(N("Hδ", "mH"))
    v = nat_equal(g, gp)
    assert not v.equal
    assert v.witness.element == "1⊗g"
    assert (v.witness.lhs, v.witness.rhs) == ("1⊗g", "g⊗g")
    # γ′ is γ conjugated by the flip
    N = N.extend(σ=from_matrix(c2.backend, 2, 2, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]))
    assert compare(N("σ", "δH", "Hm", "σ"), N("Hδ", "mH")).equal


def test_nat_equal_witness_on_monoid_bialgebra():
    H = load("monoid_1z_f2").bimonad()
    v = nat_equal(pipeline_eval(H.notation()("δH", "Hm")), identity(H.backend, 2))
    assert not v.equal
    assert (v.witness.element, v.witness.lhs, v.witness.rhs) == ("z⊗1", "z⊗z", "z⊗1")


def test_nat_equal_shape_mismatch(c2):
    with pytest.raises(ShapeError):
        nat_equal(c2.m, c2.delta)


def test_compare_rational_pipelines():
    H = load("sweedler_q").bimonad()
    N = H.notation()
    assert compare(N("δ", "δH"), N("δ", "Hδ")).equal
    assert not compare(N("δH", "Hm"), N("HH")).equal


def test_set_backend_whisker_and_compose():
    b = SetBackend(3)
    f = from_table(b, 1, 1, [1, 2, 0])
    assert vcomp(vcomp(f, f), f) == identity(b, 1)
    mult = from_table(b, 2, 1, [(i + j) % 3 for i in range(3) for j in range(3)])
    lhs = vcomp(whisker(0, mult, 1), mult)
    rhs = vcomp(whisker(1, mult, 0), mult)
    assert lhs == rhs
    assert dense_compose(Pipeline.of(mult, 1, 0)) == whisker(1, mult, 0)


def test_notation_tokens(c2):
    N = c2.notation()
    p = N("δδ", "HλH", "mm")
    assert (p.src, p.dst) == (2, 2)
    with pytest.raises(ShapeError):
        N("mm", "m", "m")


def test_arity_cap(c2):
    with limits(arity_cap=3):
        with pytest.raises(ArityCapExceeded):
            whisker(2, c2.m, 0)
        with pytest.raises(ArityCapExceeded):
            c2.notation()("HHHH")


def test_dense_cap():
    b = VectBackend(4, GF(2))
    with limits(dense_cap=16):
        with pytest.raises(DenseCapExceeded):
            dense_compose(Pipeline(b, 3))


def test_oracle_mode_runs_comparisons(c2):
    with oracle_mode(256) as stats:
        pipeline_eval(c2.notation()("δδ", "HλH", "mm"))
    assert stats.comparisons >= 1


def test_random_pipelines_match_dense_composition():
    rng = random.Random(3)
    for field in (GF(3), QQ):
        b = VectBackend(2, field)
        for _ in range(20):
            n = rng.randint(1, 3)
            steps = []
            for _ in range(rng.randint(1, 4)):
                src = rng.randint(0, min(n, 2))
                dst = rng.randint(0, 2)
                if n - src + dst > 4 or n - src + dst < 0:
                    continue
                left = rng.randint(0, n - src)
                vals = [[rng.randint(-2, 2) for _ in range(2**src)] for _ in range(2**dst)]
                steps.append(Step(from_matrix(b, src, dst, vals), left, n - src - left))
                n = n - src + dst
            p = Pipeline(b, steps[0].gen.src + steps[0].left + steps[0].right if steps else 1, steps=tuple(steps))
            assert pipeline_eval(p) == dense_compose(p)
