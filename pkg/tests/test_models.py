"""Direct-sum shift groups, linear shift spaces, and cylinder families."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algentropy.abelian import FgAbGroup
from algentropy.errors import AmbientMismatchError, BudgetExceededError, DomainError
from algentropy.models import (
    CylinderFamily,
    LinearShiftSpace,
    ShiftGroup,
    cylinder_cotrajectory_index,
    shift_trajectory_order,
    two_sided_shift_inert_index,
)


def test_shift_element_normalizes_support():
    g = ShiftGroup(FgAbGroup([4]))
    a = g.element({0: [1], 3: [0]})
    assert a.support == ((0, (1,)),)
    assert g.element({2: [4]}).is_zero()
    assert (a - a).is_zero()


def test_shift_addition_is_cellwise():
    g = ShiftGroup(FgAbGroup([2, 4]))
    a = g.element({0: [1, 3], 1: [0, 1]})
    b = g.element({0: [1, 1], 2: [1, 0]})
    # position 0 sums to (2, 4) = 0 in the cell and drops out
    assert dict((a + b).support) == {1: (0, 1), 2: (1, 0)}


def test_shifted_moves_support():
    g = ShiftGroup(FgAbGroup([3]))
    a = g.element({0: [1], 2: [2]})
    assert dict(a.shifted().support) == {1: (1,), 3: (2,)}
    assert dict(a.shifted(3).support) == {3: (1,), 5: (2,)}
    # the right shift is not invertible on the one-sided sum
    with pytest.raises(DomainError):
        a.shifted(-1)


def test_first_coordinate_copy_generates_cell():
    g = ShiftGroup(FgAbGroup([2, 4]))
    gens = g.first_coordinate_copy()
    assert len(gens) == 2
    assert len(g.closure(gens)) == 8


@given(st.integers(1, 4))
def test_closure_orders_are_powers_of_cell_order(k):
    g = ShiftGroup(FgAbGroup([2]))
    gens = [g.element({i: [1]}) for i in range(k)]
    assert len(g.closure(gens)) == 2**k


def test_closure_cap_enforced():
    g = ShiftGroup(FgAbGroup([2]))
    gens = [g.element({i: [1]}) for i in range(8)]
    with pytest.raises(BudgetExceededError):
        g.closure(gens, cap=100)


def test_closure_rejects_foreign_elements():
    g, h = ShiftGroup(FgAbGroup([2])), ShiftGroup(FgAbGroup([3]))
    with pytest.raises(AmbientMismatchError):
        g.closure([h.element({0: [1]})])


def test_shift_trajectory_order_doubles_per_step():
    # T_n(shift, cell copy) spreads over n coordinates
    g = ShiftGroup(FgAbGroup([2]))
    gens = list(g.first_coordinate_copy())
    assert [shift_trajectory_order(g, gens, n) for n in (1, 2, 3, 4)] == [2, 4, 8, 16]


def test_linear_shift_space_reduce_mod_p():
    s = LinearShiftSpace(p=5)
    vecs = [s.vector([1, 2]), s.vector([2, 4]), s.vector([0, 1])]
    assert s.dim(vecs) == 2
    assert s.dim([s.vector([])]) == 0
    assert s.dim([s.vector([5, 10])]) == 0


def test_linear_shift_space_rational():
    s = LinearShiftSpace(p=0)
    assert s.dim([s.vector([1]), s.vector([3])]) == 1
    assert s.dim([s.vector([1]), s.vector([0, 1]), s.vector([1, 1])]) == 2


def test_linear_shift_space_prime_required():
    with pytest.raises(DomainError):
        LinearShiftSpace(p=4)
    LinearShiftSpace(p=2)


def test_shift_operator_on_vectors():
    s = LinearShiftSpace(p=3)
    v = s.vector([1, 0, 2])
    assert s.shift(v) == s.vector([0, 1, 0, 2])
    assert s.shift(s.vector([])) == ()


def test_cylinder_cotrajectory_closed_form():
    fam = CylinderFamily(FgAbGroup([3]))
    assert [cylinder_cotrajectory_index(fam, 0, n) for n in (1, 2, 3)] == [1, 3, 9]
    # independent of which cylinder starts the chain
    assert cylinder_cotrajectory_index(fam, 5, 4) == 27
    with pytest.raises(DomainError):
        cylinder_cotrajectory_index(CylinderFamily(FgAbGroup([3]), two_sided=True), 0, 2)
    with pytest.raises(DomainError):
        cylinder_cotrajectory_index(fam, 0, 0)


def test_two_sided_inert_index_constant_in_k():
    fam = CylinderFamily(FgAbGroup([2, 2]), two_sided=True)
    assert [two_sided_shift_inert_index(fam, k) for k in (0, 1, 5)] == [4, 4, 4]
    with pytest.raises(DomainError):
        two_sided_shift_inert_index(CylinderFamily(FgAbGroup([2])), 1)


def test_cylinder_index_between():
    fam = CylinderFamily(FgAbGroup([4]))
    assert fam.index_between(0, 3) == 64
    assert fam.index_between(2, 2) == 1
    fam2 = CylinderFamily(FgAbGroup([4]), two_sided=True)
    # two-sided windows grow on both ends
    assert fam2.index_between(0, 2) == 4**4


def test_infinite_cell_rejected():
    with pytest.raises(DomainError):
        ShiftGroup(FgAbGroup([], free_rank=1))
    with pytest.raises(DomainError):
        CylinderFamily(FgAbGroup([2], free_rank=1))
