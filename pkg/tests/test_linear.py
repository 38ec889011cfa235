import pytest

from triverify.fields import field, field_of_order
from triverify.linear import (ActionError, MatrixGroupSpec, SemilinearMap, action_points,
                              diagonal, hermitian, isotropic_points, projective_action,
                              projective_degree, sl_generators)


def spec(q, d, action, extra=()):
    F = field_of_order(q)
    return MatrixGroupSpec(d, F, tuple(sl_generators(F, d)) + tuple(extra), action)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25])
def test_psl2_order_and_degree(q):
    G = projective_action(spec(q, 2, "projective-line"))
    assert G.degree == q + 1
    assert G.order == q * (q * q - 1) // (2 if q % 2 else 1)
    assert G.is_transitive()


def test_pgl2_13():
    F = field(13)
    G = projective_action(spec(13, 2, "projective-line", [SemilinearMap(diagonal(F, [F.primitive, 1]))]),
                          target_order=2184)
    assert G.degree == 14


@pytest.mark.parametrize("q,order", [(2, 168), (3, 5616), (4, 20160), (5, 372000)])
def test_projective_plane(q, order):
    G = projective_action(spec(q, 3, "projective-plane"))
    assert G.degree == q * q + q + 1 == projective_degree(q, 3)
    assert G.order == order


def test_target_order_mismatch_raises():
    with pytest.raises(ActionError):
        projective_action(spec(9, 2, "projective-line"), target_order=720)


def test_action_errors():
    F = field(3)
    with pytest.raises(ActionError):
        action_points(MatrixGroupSpec(3, F, (), "projective-line"))
    with pytest.raises(ActionError):
        action_points(MatrixGroupSpec(3, F, (), "unitary-isotropic-points"))
    with pytest.raises(ActionError):
        action_points(MatrixGroupSpec(2, F, (), "no-such-action"))
    singular = SemilinearMap(((1, 1), (1, 1)))
    with pytest.raises(ActionError):
        projective_action(MatrixGroupSpec(2, F, (singular,), "projective-line"))
    dual = SemilinearMap(((1, 0), (0, 1)), dual=True)
    with pytest.raises(ActionError):
        projective_action(MatrixGroupSpec(2, F, (dual,), "projective-line"))


@pytest.mark.parametrize("q,count", [(4, 9), (9, 28), (16, 65)])
def test_isotropic_point_counts(q, count):
    # r^3 + 1 isotropic points for the hermitian form over GF(r^2)
    F = field_of_order(q)
    pts = isotropic_points(F, 3)
    assert len(pts) == count
    assert all(hermitian(F, v, v) == 0 for v in pts)


def test_raw_points():
    G = projective_action(spec(3, 2, "raw-points"))
    assert G.degree == 8 and G.order == 24
