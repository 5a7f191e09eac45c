import pytest

from symknot.algebra import AbelianGroup, LaurentPolynomial, cokernel
from symknot.diagram import BudgetError, PlanarDiagram, connected_sum, mirror
from symknot.fixtures import (
    figure_eight,
    kn_template,
    knot_5_2,
    knot_10_22,
    pretzel,
    rational_knot,
    torus_2k,
    trefoil,
    two_unlink,
    unknot_kink,
    unknot_r2,
    unknot_zero,
)
from symknot.polynomials import (
    alexander,
    determinant_alexander,
    jones,
    jones_normalized,
    kauffman_bracket,
    wirtinger,
)

L = LaurentPolynomial

UNKNOT_JONES = L({1: 1, -1: 1})


def test_bracket_base_cases():
    assert kauffman_bracket(unknot_zero()) == L.one()
    assert kauffman_bracket(two_unlink()) == L({2: -1, -2: -1})
    # a positive kink multiplies the bracket by -A^3
    assert kauffman_bracket(unknot_kink(1)) == L({3: -1})
    assert kauffman_bracket(unknot_kink(-1)) == L({-3: -1})
    with pytest.raises(ValueError):
        kauffman_bracket(PlanarDiagram([], loops=0))


def test_bracket_budget():
    with pytest.raises(BudgetError) as exc:
        kauffman_bracket(figure_eight(), budget=3)
    assert exc.value.needed == 4 and exc.value.budget == 3
    with pytest.raises(BudgetError):
        jones(torus_2k(25))


def test_jones_unknots():
    # Reidemeister-representative unknot diagrams all give q + q^-1
    for d in (unknot_zero(), unknot_kink(1), unknot_kink(-1), unknot_r2()):
        assert jones(d) == UNKNOT_JONES
        assert jones_normalized(d) == L.one()
    assert jones(two_unlink()) == UNKNOT_JONES * UNKNOT_JONES
    # positive Hopf link, frozen from its standard homology table
    assert jones(torus_2k(2)) == L({0: 1, 2: 1, 4: 1, 6: 1})


def test_jones_frozen_small_knots():
    assert jones(trefoil(True)) == L({1: 1, 3: 1, 5: 1, 9: -1})
    assert jones(figure_eight()) == L({5: 1, -5: 1})
    assert jones(knot_5_2(True)) == L({1: 1, 5: 1, 7: 1, 13: -1})
    assert jones_normalized(knot_5_2(True)) == L(
        {2: 1, 4: -1, 6: 2, 8: -1, 10: 1, 12: -1}
    )


def test_jones_10_22():
    expected = L(
        {
            -9: 1,
            -7: -1,
            -5: 2,
            -3: -2,
            -1: 2,
            3: -1,
            5: 1,
            7: -2,
            9: 2,
            11: -1,
            13: 1,
        }
    )
    assert jones(knot_10_22()) == expected
    # the single-twist union member realizes the same knot
    assert jones(kn_template(1)) == expected


def test_jones_mirror():
    for d in (trefoil(True), knot_5_2(True), knot_10_22(), pretzel(3, 1, -3)):
        assert jones(mirror(d)) == jones(d).mirror()


def test_jones_connected_sum():
    a, b = trefoil(True), figure_eight()
    cs = connected_sum(a, b, 1, 1)
    assert jones(cs) * UNKNOT_JONES == jones(a) * jones(b)
    assert jones_normalized(cs) == jones_normalized(a) * jones_normalized(b)


def test_jones_distinguishes_family():
    polys = [jones(kn_template(n)) for n in range(-3, 4)]
    assert len({tuple(sorted(p.coeffs.items())) for p in polys}) == len(polys)
    for n in (1, 2, 3):
        assert jones(kn_template(-n)) == jones(kn_template(n)).mirror()
    # the zero-twist member is the square of 5_2 under connected sum
    prod = jones(knot_5_2(True)) * jones(mirror(knot_5_2(True)))
    assert jones(kn_template(0)) * UNKNOT_JONES == prod


def test_jones_same_knot_different_builders():
    # the two-bridge builder reproduces figure-eight (fraction 5/2) exactly
    # and 5_2 (fraction 7/2) up to chirality
    assert jones(rational_knot([1, 1, 2])) == jones(figure_eight())
    j = jones(rational_knot([1, 1, 3]))
    assert j in (jones(knot_5_2(True)), jones(knot_5_2(False)))


def test_wirtinger_shapes():
    for build, arcs in ((trefoil, 3), (figure_eight, 4), (knot_5_2, 5), (knot_10_22, 11)):
        pres = wirtinger(build())
        assert len(pres.generators) == arcs
        assert len(pres.relators) == arcs
        assert all(len(word) == 4 for word in pres.relators)
        # knot group abelianizes to Z
        assert cokernel(pres.abelianized_matrix()) == AbelianGroup((), 1)
    pres = wirtinger(unknot_kink(1))
    assert len(pres.generators) == 1 and len(pres.relators) == 1
    pres = wirtinger(unknot_zero())
    assert pres.generators == ("x1",) and pres.relators == ()


def test_alexander_frozen_values():
    assert alexander(unknot_zero()) == L.one()
    assert alexander(unknot_kink(1)) == L.one()
    assert alexander(unknot_r2()) == L.one()
    assert alexander(trefoil(True)) == L({1: 1, 0: -1, -1: 1})
    assert alexander(figure_eight()) == L({1: -1, 0: 3, -1: -1})
    assert alexander(knot_5_2(True)) == L({1: 2, 0: -3, -1: 2})
    assert alexander(torus_2k(5)) == L({2: 1, 1: -1, 0: 1, -1: -1, -2: 1})
    assert alexander(knot_10_22()) == L({2: 2, 1: -12, 0: 21, -1: -12, -2: 2})


def test_alexander_symmetry_and_one():
    for build in (trefoil, figure_eight, knot_5_2, knot_10_22):
        p = alexander(build())
        assert p == p.mirror()
        assert p.evaluate(1) == 1


def test_alexander_mirror_invariance():
    for d in (trefoil(True), knot_5_2(True), knot_10_22()):
        assert alexander(mirror(d)) == alexander(d)


def test_alexander_multiplicative():
    cs = connected_sum(trefoil(True), knot_5_2(False), 2, 3)
    assert alexander(cs) == alexander(trefoil(True)) * alexander(knot_5_2(False))


def test_alexander_squares_on_even_family():
    square = alexander(knot_5_2(True)) ** 2
    assert square == L({2: 4, 1: -12, 0: 17, -1: -12, -2: 4})
    for n in (0, 2, 4):
        assert alexander(kn_template(n)) == square
    # odd members differ from the square
    assert alexander(kn_template(1)) == alexander(knot_10_22())
    assert alexander(kn_template(1)) != square


def test_alexander_rejects_links():
    with pytest.raises(ValueError):
        alexander(two_unlink())
    with pytest.raises(ValueError):
        determinant_alexander(torus_2k(2))


def test_determinants():
    cases = [
        (unknot_zero(), 1),
        (unknot_kink(1), 1),
        (trefoil(True), 3),
        (figure_eight(), 5),
        (knot_5_2(True), 7),
        (torus_2k(5), 5),
        (knot_10_22(), 49),
        (pretzel(3, 1, -3), 9),
        (rational_knot([1, 1, 2]), 5),
        (rational_knot([1, 1, 3]), 7),
        (rational_knot([1, 1, 4]), 9),
    ]
    for d, expected in cases:
        assert determinant_alexander(d) == expected
        assert abs(alexander(d).evaluate(-1)) == expected


def test_determinant_family_sweep():
    for n in range(-5, 8):
        assert determinant_alexander(kn_template(n)) == 49


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
