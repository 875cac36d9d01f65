from fractions import Fraction

import pytest

from qes.diffop import DiffOp, commutator
from qes.families import (BasisElement, FamilyError, FamilySpec, NotInSpan,
                          apply_op, decompose, family_operators,
                          independence_rank, matrix_rep, operator_in_span,
                          solve_preserving, verify_invariance)
from qes.laurent import LaurentPoly
from qes.linalg import mat_commutator, mat_mul
from qes.sampling import sample_grid

F = Fraction


def spec_from(family_id: int, n_max: int, params) -> FamilySpec:
    return FamilySpec(family_id, n_max, **params)


# -- parameter validation -----------------------------------------------------

def test_spec_rejects_degenerate_parameters():
    with pytest.raises(FamilyError):
        FamilySpec(1, 2, s=F(0))
    with pytest.raises(FamilyError):
        FamilySpec(1, 2, s=F(-3))
    with pytest.raises(FamilyError):
        FamilySpec(2, 2, s=F(7, 2), alpha=F(0))
    with pytest.raises(FamilyError):
        FamilySpec(3, 3, s=F(7, 2), alpha=F(-2))
    with pytest.raises(FamilyError):
        FamilySpec(7, 1)
    with pytest.raises(FamilyError):
        FamilySpec(1, -1, s=F(1, 2))


def test_dimension_is_two_chains_except_the_shifted_parameter_family():
    assert FamilySpec(1, 3, s=F(1, 2)).dimension == 8
    assert FamilySpec(3, 3, s=F(1, 2), alpha=F(1, 3)).dimension == 4
    assert FamilySpec(4, 0).dimension == 2
    assert FamilySpec(5, 2, nu=F(1, 4)).dimension == 6


# -- hand-checked ladder actions -----------------------------------------------

def test_lowering_action_on_the_kernel_itself():
    # With x F'' + s F' = F, applying x d^2 + (s+1) d to F gives F + F'.
    spec = FamilySpec(1, 1, s=F(5, 2))
    _, j_minus = family_operators(spec)
    coords = decompose(apply_op(j_minus, BasisElement(spec, 0, "+")), spec)
    assert not isinstance(coords, NotInSpan)
    # F itself plus (1/s) times the minus seed s F'.
    expected = [F(1), F(0), F(2, 5), F(0)]
    assert coords == expected


def test_raising_action_on_the_kernel_is_a_pure_derivative_multiple():
    # x^2 F'' + (s-2)x F' - x F = -2 x F' after eliminating F'' via the ODE.
    spec = FamilySpec(1, 1, s=F(5, 2))
    j_plus, _ = family_operators(spec)
    pair = apply_op(j_plus, BasisElement(spec, 0, "+"))
    assert pair.r == LaurentPoly.zero()
    assert pair.s == LaurentPoly.x(1, F(-2))


def test_second_chain_of_the_shifted_parameter_family_is_contiguous():
    # f_{n+1} = f_n + x/(alpha+n) * f_n', the parameter-shift recurrence.
    spec = FamilySpec(3, 3, s=F(9, 2), alpha=F(2, 3))
    x = LaurentPoly.x()
    for n in range(spec.n_max):
        f_n = BasisElement(spec, n).to_pair()
        shifted = f_n + f_n.derivative().times_poly(
            x.map_coeffs(lambda c: c / (spec.alpha + n)))
        f_next = BasisElement(spec, n + 1).to_pair()
        assert shifted.r == f_next.r and shifted.s == f_next.s


# -- invariance across sampled parameters --------------------------------------

@pytest.mark.parametrize("family_id", [1, 2, 3, 4, 5, 6])
def test_operators_preserve_every_sampled_subspace(family_id):
    for n_max in (0, 2):
        for params in sample_grid(family_id, n_max, count=2, seed=11):
            report = verify_invariance(spec_from(family_id, n_max, params))
            assert report["ok"], report["mismatches"]
            assert report["checks"] == 2 * FamilySpec(family_id, n_max, **params).dimension


@pytest.mark.parametrize("family_id", [1, 2, 3, 4, 5, 6])
def test_basis_elements_are_linearly_independent(family_id):
    for params in sample_grid(family_id, 3, count=2, seed=7):
        spec = spec_from(family_id, 3, params)
        assert independence_rank(spec) == spec.dimension


def test_a_nonpreserving_operator_is_reported_with_a_witness():
    spec = FamilySpec(1, 1, s=F(5, 2))
    shift = DiffOp.mul_by(LaurentPoly.x())  # multiplication by x escapes the span
    outcome = decompose(apply_op(shift, BasisElement(spec, 1, "-")), spec)
    assert isinstance(outcome, NotInSpan)
    assert outcome.rank_basis < outcome.rank_augmented


# -- matrix representation ------------------------------------------------------

@pytest.mark.parametrize("family_id", [1, 4, 6])
def test_matrix_representation_is_multiplicative(family_id):
    params = sample_grid(family_id, 2, count=1, seed=3)[0]
    spec = spec_from(family_id, 2, params)
    j_plus, j_minus = family_operators(spec)
    rep_plus = matrix_rep(j_plus, spec)
    rep_minus = matrix_rep(j_minus, spec)
    assert matrix_rep(j_plus * j_minus, spec) == mat_mul(rep_plus, rep_minus)
    assert (matrix_rep(commutator(j_plus, j_minus), spec)
            == mat_commutator(rep_plus, rep_minus))


# -- re-derivation of the preserving operators -----------------------------------

def test_preserving_space_is_two_dimensional_modulo_constants():
    spec = FamilySpec(1, 0, s=F(7, 3))
    found = solve_preserving(spec, max_order=2, degree_bound=2)
    assert found["dimension_mod_constants"] == 2
    j_plus, j_minus = family_operators(spec)
    assert operator_in_span(found, j_plus)
    assert operator_in_span(found, j_minus)


def test_preserving_space_excludes_foreign_operators():
    spec = FamilySpec(1, 0, s=F(7, 3))
    found = solve_preserving(spec, max_order=2, degree_bound=2)
    assert not operator_in_span(found, DiffOp.mul_by(LaurentPoly.x()))
