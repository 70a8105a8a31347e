from fractions import Fraction

import numpy as np
import pytest

from hopf_forge.errors import ConfigError, NotIdempotentError, NotInvertibleMap, ShapeError, SingularMatrixError
from hopf_forge.linalg import (
    GF,
    QQ,
    ExactMatrix,
    FiniteMap,
    invert,
    kernel,
    mat_mul,
    parse_scalar,
    rank,
    split_idempotent,
)

F2, F5 = GF(2), GF(5)


def M(field, rows):
    return ExactMatrix(field, rows)


def test_mat_mul_identity_and_zero():
    A = M(F5, [[1, 2], [3, 4]])
    assert mat_mul(ExactMatrix.identity(F5, 2), A) == A
    assert mat_mul(ExactMatrix.zeros(F5, 2, 2), A).is_zero()


def test_mat_mul_over_f2():
    assert mat_mul(M(F2, [[1, 1], [0, 1]]), M(F2, [[1, 0], [1, 1]])) == M(F2, [[0, 1], [1, 1]])


def test_mat_mul_shape_and_field_mismatch():
    with pytest.raises(ShapeError):
        mat_mul(M(F2, [[1, 0]]), M(F2, [[1, 0]]))
    with pytest.raises((ShapeError, ConfigError)):
        mat_mul(M(F2, [[1]]), M(F5, [[1]]))


def test_invert():
    assert invert(ExactMatrix.identity(F5, 3)) == ExactMatrix.identity(F5, 3)
    assert invert(M(F5, [[2, 0], [0, 3]])) == M(F5, [[3, 0], [0, 2]])
    A = M(QQ, [[1, 2], [3, 4]])
    assert mat_mul(A, invert(A)) == ExactMatrix.identity(QQ, 2)
    assert invert(A)[0, 0] == Fraction(-2)


@pytest.mark.parametrize("field", [F5, QQ])
def test_singular_matrix_carries_kernel(field):
    A = M(field, [[1, 1], [1, 1]])
    with pytest.raises(SingularMatrixError) as exc:
        invert(A)
    v = [field(x) for x in exc.value.kernel]
    assert v == [field(1), field(-1)]
    assert rank(A) == 1


def test_kernel_vectors_are_normalized():
    A = M(GF(7), [[1, 2, 3], [2, 4, 6]])
    basis = kernel(A)
    assert len(basis) == 2
    for v in basis:
        assert (A.a @ v % 7 == 0).all()
        assert v[np.nonzero(v)[0][0]] == 1


def test_rational_entries_and_parsing():
    assert parse_scalar("-3/6") == Fraction(-1, 2)
    A = M(QQ, [["1/2", 0], [0, 2]])
    assert invert(A) == M(QQ, [[2, 0], [0, "1/2"]])
    assert F5("1/2") == 3


def test_split_idempotent_matrix():
    I = ExactMatrix.identity(QQ, 2)
    s = split_idempotent(I)
    assert s.rank == 2 and s.section == I and s.retraction == I
    s = split_idempotent(M(QQ, [[1, 0], [0, 0]]))
    assert s.rank == 1
    assert s.section == M(QQ, [[1], [0]])
    assert s.retraction == M(QQ, [[1, 0]])


def test_split_idempotent_finite_map():
    q = FiniteMap(3, 3, (0, 0, 2))
    s = split_idempotent(q)
    assert s.rank == 2
    assert s.section.table == (0, 2)
    assert s.retraction.table == (0, 0, 1)


def test_split_rejects_non_idempotent():
    with pytest.raises(NotIdempotentError):
        split_idempotent(M(F2, [[0, 1], [1, 0]]))
    with pytest.raises(NotIdempotentError):
        split_idempotent(FiniteMap(3, 3, (1, 2, 0)))


def test_finite_map_inverse_and_collision():
    f = FiniteMap(3, 3, (2, 0, 1))
    assert f.then(f.inverse()) == FiniteMap.identity(3)
    g = FiniteMap(3, 3, (0, 1, 1))
    assert g.collision() == (1, 2)
    with pytest.raises(NotInvertibleMap):
        g.inverse()
