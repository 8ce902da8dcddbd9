import pytest

from conleylab import algebra, complexes as cxm


def ranks(hom):
    return [h["rank"] for h in hom]


def test_homology_pinned_spaces():
    assert ranks(algebra.homology(cxm.circle(6))) == [1, 1]
    assert ranks(algebra.homology(cxm.sphere(3, 6))) == [1, 0, 1]
    assert ranks(algebra.homology(cxm.torus(4, 4))) == [1, 2, 1]

    k = algebra.homology(cxm.klein(4, 4))
    assert ranks(k) == [1, 1, 0]
    assert k[1]["torsion"] == [2]
    assert ranks(algebra.homology(cxm.klein(4, 4), ring="z2")) == [1, 2, 1]

    r = algebra.homology(cxm.rp2())
    assert ranks(r) == [1, 0, 0]
    assert r[1]["torsion"] == [2]
    assert ranks(algebra.homology(cxm.rp2(), ring="z2")) == [1, 1, 1]

    assert ranks(algebra.homology(cxm.t3(3))) == [1, 3, 3, 1]


def test_relative_disc_mod_boundary():
    d = cxm.disc(2, 6)
    free = {e for e in d.cells_of_dim(1) if len(d.top_cofaces(e)) == 1}
    rim = d.closure(free)
    p = algebra.poincare_polynomial(d, rel=rim, ring="z")
    assert algebra.poly_to_string(p) == "t^2"
    rel = algebra.relative_homology(d, rim)
    assert ranks(rel) == [0, 0, 1]


def test_cohomology_ranks():
    assert algebra.cohomology_ranks(cxm.torus(4, 4)) == [1, 2, 1]
    # integral cohomology of the Klein bottle loses the torsion rank
    assert algebra.cohomology_ranks(cxm.klein(4, 4)) == [1, 1, 0]
    assert algebra.cohomology_ranks(cxm.klein(4, 4), ring="z2") == [1, 2, 1]
    # universal coefficients: free ranks agree both ways over z
    for cx in (cxm.sphere(3, 6), cxm.torus(4, 4), cxm.rp2(), cxm.t3(3)):
        assert algebra.cohomology_ranks(cx) == ranks(algebra.homology(cx))


def test_euler_matches_polynomial_at_minus_one():
    for cx in (cxm.torus(4, 4), cxm.sphere(3, 6), cxm.klein(4, 4),
               cxm.rp2(), cxm.t3(3)):
        p = algebra.poincare_polynomial(cx, ring="z2")
        assert sum(v * (-1) ** k for k, v in p.items()) == cx.euler()


def test_poly_helpers():
    assert algebra.poly_to_string({}) == "0"
    assert algebra.poly_to_string({1: 1}) == "t"
    assert algebra.poly_to_string({0: 1, 1: 1, 3: 1}) == "t^3 + t + 1"
    assert algebra.poly_to_string({1: 2, 2: 2}) == "2t^2 + 2t"
    assert algebra.poly_symmetric({1: 1, 2: 1}, 2)
    assert not algebra.poly_symmetric({1: 1, 2: 1}, 3)
    assert algebra.poly_mul_t({0: 1, 1: 2}) == {1: 1, 2: 2}


def test_smith_normal_form():
    rank, divisors = algebra.smith_normal_form(
        {(0, 0): 2, (0, 1): 4, (1, 0): 6, (1, 1): 8}, 2, 2)
    assert rank == 2 and divisors == [2, 4]
    rank, divisors = algebra.smith_normal_form({(0, 0): 1, (1, 1): 1}, 2, 3)
    assert rank == 2 and divisors == []


def test_gf2_rank():
    assert algebra.gf2_rank([0b110, 0b011, 0b101]) == 2
    assert algebra.gf2_rank([0b1, 0b10, 0b100]) == 3
    assert algebra.gf2_rank([0, 0]) == 0


def test_cup_forms_and_max_null_system():
    genus2 = cxm.connected_sum(cxm.torus(4, 4), cxm.torus(4, 4),
                               "e:2@e2", "e:2@e2")
    cases = [
        (cxm.sphere(3, 6), 0),
        (cxm.rp2(), 0),
        (cxm.torus(4, 4), 1),
        (genus2, 2),
    ]
    for cx, want in cases:
        form = algebra.cup_form_h1(cx)
        assert algebra.max_null_system(form) == want, cx.name
    assert algebra.cup_form_h1(cxm.torus(4, 4)) == [[0, 1], [1, 0]]
    assert algebra.cup_form_h1(cxm.rp2()) == [[1]]
    # t3 carries an exterior-algebra presentation
    assert algebra.cup_form_h1(cxm.t3(3)) == ("exterior", 3)
    assert algebra.max_null_system(("exterior", 3)) == 1


def test_algebra_errors():
    with pytest.raises(algebra.AlgebraError) as ei:
        algebra.homology(cxm.torus(4, 4), ring="q")
    assert ei.value.code == "unsupported-ring"
    with pytest.raises(algebra.AlgebraError) as ei:
        algebra.cup_form_h1(cxm.circle(6))
    assert ei.value.code == "unsupported-space"


def test_suspension_pair_homology():
    pair, base = algebra.suspension_pair_homology(cxm.circle(6))
    assert ranks(pair) == [0, 1, 1]
    assert ranks(base) == [1, 1]
    pair, base = algebra.suspension_pair_homology(cxm.rp2())
    assert [h["torsion"] for h in pair] == [[], [], [2], []]
