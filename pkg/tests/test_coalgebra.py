"""Coalgebra axioms, morphism checks, and the constructor catalog."""

import pytest

from contramod.coalgebra import (
    Bialgebra, CoalgebraMorphism, augmentation, check_bialgebra, check_coalgebra,
    check_morphism, divided_power_dual, divided_power_surjection, dual_of_algebra,
    group_algebra, grouplike, grouplike_elements, identity_morphism,
    matrix_coalgebra, truncated_poly_algebra,
)
from contramod.fields import GF2, GF3, QQ
from contramod.matrix import Mat

FIELDS = [QQ, GF2, GF3]


@pytest.mark.parametrize("field", FIELDS)
def test_grouplike_passes(field):
    for n in (1, 2, 3):
        assert check_coalgebra(grouplike(field, n)).ok


@pytest.mark.parametrize("field", FIELDS)
def test_matrix_coalgebra_passes(field):
    assert check_coalgebra(matrix_coalgebra(field, 2)).ok


@pytest.mark.parametrize("field", FIELDS)
def test_divided_power_dual_passes(field):
    for m in (2, 3, 4):
        assert check_coalgebra(divided_power_dual(field, m)).ok


def test_divided_power_structure():
    # Delta c_2 = c_0 (x) c_2 + c_1 (x) c_1 + c_2 (x) c_0, eps = delta_0
    c = divided_power_dual(QQ, 3)
    col = c.delta.col(2)
    assert col == {0 * 3 + 2: QQ.one(), 1 * 3 + 1: QQ.one(), 2 * 3 + 0: QQ.one()}
    assert c.epsilon.col(0) == {0: QQ.one()}
    assert c.epsilon.col(2) == {}


def test_dual_of_algebra_matches_divided_power():
    mult, unit = truncated_poly_algebra(QQ, 3)
    assert dual_of_algebra(mult, unit).delta == divided_power_dual(QQ, 3).delta


def test_dual_of_algebra_involution():
    # dualizing the dual's structure tensors recovers the original algebra
    mult, unit = truncated_poly_algebra(GF2, 3)
    c = dual_of_algebra(mult, unit)
    assert c.delta.transpose() == mult
    assert c.epsilon.transpose() == unit


def test_corrupted_counit_fails():
    c = grouplike(QQ, 2)
    bad = Mat.zeros(1, 2, QQ)
    broken = type(c)(QQ, 2, c.delta, bad)
    verdict = check_coalgebra(broken)
    assert not verdict.ok
    assert any("counit" in f for f in verdict.failures)


def test_identity_morphism_passes():
    for c in (grouplike(GF2, 3), divided_power_dual(QQ, 3), matrix_coalgebra(GF3, 2)):
        assert check_morphism(identity_morphism(c)).ok


def test_divided_power_surjection_passes():
    for field in FIELDS:
        rho = divided_power_surjection(field, 3, 2, 2)
        assert check_morphism(rho).ok
        # c_0 -> d_0, c_1 -> 0, c_2 -> d_1
        assert rho.matrix.col(0) == {0: field.one()}
        assert rho.matrix.col(1) == {}
        assert rho.matrix.col(2) == {1: field.one()}


def test_truncation_projection_is_not_coalgebra_map():
    # killing the top divided power leaves a surviving middle term
    c3 = divided_power_dual(QQ, 3)
    d2 = divided_power_dual(QQ, 2)
    proj = Mat.from_entries(2, 3, QQ, [(0, 0, 1), (1, 1, 1)])
    rho = CoalgebraMorphism(c3, d2, proj, surjective=True)
    verdict = check_morphism(rho)
    assert "comultiplication-compatibility" in verdict.failures


def test_augmentation_morphism():
    for c in (grouplike(GF2, 3), divided_power_dual(QQ, 3), matrix_coalgebra(GF3, 2)):
        assert check_morphism(augmentation(c)).ok


def test_surjectivity_flag_is_verified():
    c3 = divided_power_dual(QQ, 3)
    rho = CoalgebraMorphism(c3, c3, Mat.zeros(3, 3, QQ), surjective=True)
    assert "surjectivity-flag" in check_morphism(rho).failures


def test_group_algebra_bialgebra():
    for field in FIELDS:
        assert check_bialgebra(group_algebra(field, 3)).ok


def test_broken_bialgebra_detected():
    b = group_algebra(QQ, 2)
    bad = Bialgebra(b.coalgebra, Mat.zeros(2, 4, QQ), b.unit)
    assert not check_bialgebra(bad).ok


def test_grouplike_elements_found():
    assert len(grouplike_elements(grouplike(QQ, 3))) == 3
    assert len(grouplike_elements(divided_power_dual(GF2, 3))) == 1
    assert len(grouplike_elements(matrix_coalgebra(QQ, 2))) == 0


def test_catalog_dispatch():
    from contramod.coalgebra import catalog

    assert catalog("grouplike", QQ, 1).dim == 1
    assert catalog("matrix_coalgebra", GF2, 2).dim == 4
    mult, unit = truncated_poly_algebra(QQ, 3)
    assert check_coalgebra(catalog("dual_of_algebra", QQ, mult, unit)).ok
    assert check_bialgebra(catalog("group_algebra", GF3, 2)).ok
    with pytest.raises(KeyError):
        catalog("unknown", QQ, 1)
