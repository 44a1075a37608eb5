import random
from fractions import Fraction
from itertools import product

import pytest

from stackychow.exactalg import AbelianInvariants, cokernel_invariants
from stackychow.srchow import (
    ChowClass,
    ChowRing,
    class_of_monomial,
    coarse_intersection_table,
    cycle_class,
    face_supported_monomials,
    graded_piece,
    graded_piece_oracle,
    multiply,
    normal_form,
    presentation,
)
from stackychow.stackyfan import FanError, HypothesisError, parse_fan, spanning_pairs
from stackychow.testing import random_fans

from conftest import weighted_line

Z = AbelianInvariants


def forms(pres):
    return [[int(x) for x in row] for row in pres.linear_forms]


def test_presentation_examples(ex_i, smooth_cone):
    pres = presentation(ex_i)
    assert forms(pres) == [[2, -1, -1], [-1, 2, -1]]
    assert pres.nonface_generators == ((0, 1, 2),)
    pres = presentation(weighted_line(2, 3))
    assert forms(pres) == [[2, -3]]
    assert pres.nonface_generators == ((0, 1),)
    pres = presentation(smooth_cone)
    assert forms(pres) == [[1, 0], [0, 1]]
    assert pres.nonface_generators == ()


def test_presentation_rejects_non_spanning():
    fan = parse_fan({"dim": 2, "rays": [[1, 0]], "max_cones": [[0]]})
    with pytest.raises(HypothesisError, match="span"):
        presentation(fan)


def test_example_i_pieces(ex_i):
    ring = ChowRing(ex_i)
    assert ring[0].invariants == Z(1)
    assert ring[1].invariants == Z(1, (3,))
    assert ring[2].invariants == Z(1, (3, 3))
    assert ring[4].invariants == Z(0, (3, 3, 3))


def test_weighted_line_degree_two():
    ring = ChowRing(weighted_line(2, 3))
    assert ring[2].invariants == Z(0, (6,))
    assert graded_piece_oracle(ring.presentation, ring.fan, 2) == Z(0, (6,))


def test_basis_is_lexicographic_face_supported(ex_i):
    for k in range(5):
        piece = ChowRing(ex_i)[k]
        assert list(piece.basis) == sorted(piece.basis)
        brute = sorted(
            m
            for m in product(range(k + 1), repeat=3)
            if sum(m) == k and tuple(i for i in range(3) if m[i]) in ex_i.cones
        )
        assert list(piece.basis) == brute


@pytest.mark.parametrize("k", range(7))
def test_oracle_example_i(ex_i, k):
    pres = presentation(ex_i)
    assert graded_piece(pres, ex_i, k).invariants == graded_piece_oracle(pres, ex_i, k)


@pytest.mark.parametrize("k", range(6))
def test_oracle_weighted_line(k):
    fan = weighted_line(2, 3)
    pres = presentation(fan)
    assert graded_piece(pres, fan, k).invariants == graded_piece_oracle(pres, fan, k)


def test_oracle_p2(p2):
    pres = presentation(p2)
    got = [graded_piece_oracle(pres, p2, k) for k in range(5)]
    assert got == [Z(1), Z(1), Z(1), Z(0), Z(0)]


def test_oracle_corpus(corpus_fan):
    ring = ChowRing(corpus_fan)
    for k in range(7):
        assert ring[k].invariants == graded_piece_oracle(ring.presentation, corpus_fan, k)


def test_pic_equals_degree_one(corpus_fan):
    ring = ChowRing(corpus_fan)
    pic = cokernel_invariants(ring.presentation.linear_forms.T.copy(), corpus_fan.num_rays)
    assert ring[1].invariants == pic
    assert pic.free_rank == corpus_fan.num_rays - corpus_fan.dim


def test_torsion_above_dimension(ex_i):
    ring = ChowRing(ex_i)
    for k in range(3, 9):
        inv = ring[k].invariants
        assert inv.free_rank == 0 and inv.torsion


def test_classical_jurkiewicz(p2, p1xp1):
    assert [ChowRing(p2)[k].invariants for k in range(5)] == [Z(1), Z(1), Z(1), Z(0), Z(0)]
    assert [ChowRing(p1xp1)[k].invariants for k in range(4)] == [Z(1), Z(2), Z(1), Z(0)]


def test_class_of_monomial(ex_i):
    ring = ChowRing(ex_i)
    zero = class_of_monomial(ring[3], (1, 1, 1))
    assert not any(zero.coords)
    d0 = class_of_monomial(ring[1], (1, 0, 0))
    assert d0.coords[ring[1].index[(1, 0, 0)]] == 1 and sum(d0.coords) == 1
    unit = class_of_monomial(ring[0], (0, 0, 0))
    assert unit.coords == (1,)
    with pytest.raises(ValueError):
        class_of_monomial(ring[2], (1, 0, 0))


def test_multiply_examples(ex_i):
    ring = ChowRing(ex_i)
    prod_ = multiply(ring.monomial_class((1, 0, 0)), ring.monomial_class((0, 1, 0)), ring)
    assert normal_form(prod_, ring[2]) == normal_form(cycle_class(ex_i, ring, (0, 1)), ring[2])
    unit = ring.monomial_class((0, 0, 0))
    x = ring.monomial_class((2, 1, 0))
    assert multiply(x, unit, ring) == x
    line = ChowRing(weighted_line(2, 3))
    p = multiply(line.monomial_class((1, 0)), line.monomial_class((0, 1)), line)
    assert not any(normal_form(p, line[2]))


def test_normal_form_examples(ex_i):
    ring = ChowRing(ex_i)
    for m in ring[3].basis:
        c = ring.monomial_class(m)
        assert not any(normal_form(3 * c, ring[3]))
    assert not any(normal_form(ChowClass(3, (0,) * len(ring[3].basis)), ring[3]))
    line = ChowRing(weighted_line(2, 3))
    sq = line.monomial_class((2, 0))
    assert not any(normal_form(6 * sq, line[2]))
    assert any(normal_form(5 * sq, line[2]))


def test_normal_form_detects_relations(ex_i):
    # 2 D_0 - D_1 - D_2 is a linear form, hence zero in degree one
    ring = ChowRing(ex_i)
    c = 2 * ring.monomial_class((1, 0, 0)) + (-1) * ring.monomial_class((0, 1, 0))
    c = c + (-1) * ring.monomial_class((0, 0, 1))
    assert not any(normal_form(c, ring[1]))
    assert any(normal_form(ring.monomial_class((1, 0, 0)), ring[1]))


def test_cycle_class(ex_i):
    ring = ChowRing(ex_i)
    assert cycle_class(ex_i, ring, ()).coords == (1,)
    assert cycle_class(ex_i, ring, (0, 1)) == ring.monomial_class((1, 1, 0))
    with pytest.raises(FanError):
        cycle_class(ex_i, ring, (0, 1, 2))


def test_relation_star_random():
    for fan in random_fans(23, 25):
        ring = ChowRing(fan)
        for s, t, g in spanning_pairs(fan):
            lhs = multiply(cycle_class(fan, ring, s), cycle_class(fan, ring, t), ring)
            assert normal_form(lhs, ring[len(g)]) == normal_form(
                cycle_class(fan, ring, g), ring[len(g)]
            )


def test_multiplication_commutative_associative(ex_i, p1xp1):
    rng = random.Random(29)
    for fan in (ex_i, p1xp1, *random_fans(31, 5)):
        ring = ChowRing(fan)

        def rand_class(k):
            return ChowClass(k, tuple(rng.randint(-3, 3) for _ in ring[k].basis))

        for _ in range(10):
            i, j, k = (rng.randint(0, 3) for _ in range(3))
            a, b, c = rand_class(i), rand_class(j), rand_class(k)
            ab, ba = multiply(a, b, ring), multiply(b, a, ring)
            assert normal_form(ab, ring[i + j]) == normal_form(ba, ring[i + j])
            left = multiply(ab, c, ring)
            right = multiply(a, multiply(b, c, ring), ring)
            assert normal_form(left, ring[i + j + k]) == normal_form(right, ring[i + j + k])


def test_coarse_table(ex_i, p2):
    table = coarse_intersection_table(ex_i)
    assert len(table) == 3
    assert {q for *_, q in table} == {Fraction(1, 3)}
    assert ((0,), (1,), (0, 1), Fraction(1, 3)) in table
    assert {q for *_, q in coarse_intersection_table(p2)} == {Fraction(1)}


def test_coarse_table_rejects_stacky_net(ex_ii):
    with pytest.raises(HypothesisError):
        coarse_intersection_table(ex_ii)


def test_face_supported_counts(ex_i):
    # three pure powers and two mixed terms per 2-cone for k >= 2
    for k in range(2, 7):
        assert len(face_supported_monomials(ex_i, k)) == 3 + 3 * (k - 1)


def test_ring_cache_is_stable(ex_i):
    ring = ChowRing(ex_i)
    assert ring[3] is ring[3]
