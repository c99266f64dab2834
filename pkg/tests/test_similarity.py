import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys
from wreathrep.constructions import degree_p, theorem3, theorem4
from wreathrep.laurent import LaurentRing, NotInIdealError, divides, parse_poly
from wreathrep.lattice import Lattice, mat_mul
from wreathrep.similarity import (
    AugmentationClosedForm,
    EvaluationKernel,
    ExponentReduction,
    SimilarityPair,
    VirtualEndo,
    check_simplicity_degree_p,
    check_skew_condition,
    enumerate_deformations,
    ideal_contains,
    invariant_ideal_witness,
    mu_apply,
    mu_apply_via_decomposition,
    pair_from_json,
    random_ideal_element,
    replace_pair,
    twist_pair,
)
from wreathrep.wreath import WreathElement


def test_ideal_membership():
    r1 = LaurentRing(2, 1)
    x = r1.var(1)
    ev = EvaluationKernel((1,))
    assert ideal_contains(ev, r1.zero())
    assert ideal_contains(ev, x - 1) and not ideal_contains(ev, x)
    er = ExponentReduction(2)
    assert ideal_contains(er, x**3 + x)
    assert not ideal_contains(er, x**2 + x)
    assert er.index(LaurentRing(2, 2)) == 2**4
    assert len(er.transversal(LaurentRing(2, 2))) == 16


@pytest.fixture
def aug22():
    return theorem4(2, 2)


def test_augmentation_mu_values(aug22):
    r = aug22.ring
    P = lambda s: parse_poly(r, s)  # noqa: E731
    assert aug22.mu(r.zero()) == r.zero()
    assert aug22.mu(P("x1^3 - 1")) == P("x2")
    for k in (-2, 1, 3):
        assert aug22.mu(r.monomial((0, k)) - 1) == r.zero()
    assert aug22.mu(P("x1^2 * (x1 - 1)")) == P("x2")
    # for d = 2, alpha(x2) = x1
    assert aug22.mu(P("(x2 - 1)(x1 - 1)")) == P("x1 - 1")
    with pytest.raises(NotInIdealError):
        aug22.mu(P("x1"))


def test_degree_p_mu_values():
    for p, j in [(3, 2), (5, 3)]:
        pair = theorem3(p, j)
        r = pair.ring
        f = parse_poly(r, "x^2 + 2*x^-1 + 1")
        assert pair.mu(f * (r.var(1) - j)) == f
    pair = degree_p(5, 2, "1 + x", 1)
    r = pair.ring
    x = r.var(1)
    # mu(x (x - 1)) = x^n u
    assert pair.mu(x * (x - 1)) == x**2 * (1 + x)


def test_skew_examples(aug22):
    r = aug22.ring
    w = r.var(2)
    nu = r.var(1) - 1
    assert aug22.mu(w * nu) == r.var(1) == aug22.alpha_poly(w) * aug22.mu(nu)


@pytest.mark.parametrize(
    "pair",
    [theorem4(2, 2), theorem4(3, 2), theorem4(2, 3), theorem3(5, 2), degree_p(3, 2, "1 + x + x^2", 2)],
    ids=["aug22", "aug32", "aug23", "deg5", "deg3-twisted-u"],
)
def test_skew_condition_sampled(pair):
    rep = check_skew_condition(pair, trials=200, seed=7)
    assert rep.ok, rep.to_json()


@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.integers(0, 2**32))
def test_mu_oracle_agreement(pd, seed):
    pair = theorem4(*pd)
    rng = random.Random(seed)
    for _ in range(10):
        f = random_ideal_element(pair.a0, pair.ring, rng)
        assert mu_apply(pair.endo, f) == mu_apply_via_decomposition(pair.endo, f)


@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.integers(0, 2**32))
def test_mu_additive(pd, seed):
    pair = theorem4(*pd)
    rng = random.Random(seed)
    f = random_ideal_element(pair.a0, pair.ring, rng)
    g = random_ideal_element(pair.a0, pair.ring, rng)
    assert pair.mu(f + g) == pair.mu(f) + pair.mu(g)


def test_decomposition_oracle_rejects_other_families():
    with pytest.raises(TypeError):
        mu_apply_via_decomposition(theorem3(3, 1).endo, LaurentRing(3, 1).zero())


def test_pair_invariants():
    r = LaurentRing(2, 1)
    pair = theorem3(2, 1)
    with pytest.raises(ValueError, match="lies in A0"):
        SimilarityPair(r, pair.a0, pair.y, (r.var(1) - 1,), pair.endo)
    r2 = LaurentRing(2, 2)
    with pytest.raises(ValueError, match="injective"):
        VirtualEndo(((1, 0), (2, 0)), AugmentationClosedForm())
    with pytest.raises(ValueError):
        AugmentationClosedForm().ideal(r)
    assert theorem4(2, 2).index == 4 and theorem4(3, 3).index == 9
    assert r2.d == 2


def test_json_roundtrip():
    for pair in (theorem4(3, 2), degree_p(5, 3, "1 + 2*x", 2)):
        assert pair_from_json(pair.to_json()) == pair


def test_replace_pair():
    pair = theorem3(2, 1)
    r = pair.ring
    deformed = SimilarityPair(r, pair.a0, pair.y, (r.one(),), pair.endo)
    assert deformed.is_deformed()
    plain = replace_pair(deformed)
    assert not plain.is_deformed()
    assert plain.index == deformed.index
    assert plain.endo == deformed.endo
    assert replace_pair(plain) == plain


def _same_pair(p1, p2, rng):
    if not p1.y.same_subgroup(p2.y) or p1.a0 != p2.a0:
        return False
    for row in p1.y.basis:
        if p1.alpha(row) != p2.alpha(row):
            return False
    for _ in range(30):
        f = random_ideal_element(p1.a0, p1.ring, rng)
        if p1.mu(f) != p2.mu(f):
            return False
    return True


def test_twist_swap():
    pair = theorem4(2, 2)
    swap = ((0, 1), (1, 0))
    tw = twist_pair(pair, swap)
    assert tw.y.same_subgroup(Lattice([[0, 2], [1, 0]]))
    assert tw.index == pair.index
    assert check_skew_condition(tw, trials=200).ok
    assert _same_pair(twist_pair(pair, ((1, 0), (0, 1))), pair, random.Random(0))
    with pytest.raises(ValueError):
        twist_pair(pair, ((2, 0), (0, 1)))


@given(st.integers(0, 10**6))
def test_twist_composition(seed):
    rng = random.Random(seed)
    gens = [((0, 1), (1, 0)), ((1, 1), (0, 1)), ((1, 0), (-1, 1)), ((-1, 0), (0, 1))]
    g1 = rng.choice(gens)
    g2 = rng.choice(gens)
    pair = theorem4(3, 2)
    lhs = twist_pair(twist_pair(pair, g1), g2)
    rhs = twist_pair(pair, mat_mul(g1, g2))
    assert _same_pair(lhs, rhs, rng)


# -- simplicity -----------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_unit_multiplier_parameters_simple(p):
    r = LaurentRing(p, 1)
    for j in range(1, p):
        assert check_simplicity_degree_p(1, r.one(), j).status == "Simple"


def test_factor_of_u_gives_not_simple():
    r = LaurentRing(5, 1)
    x = r.var(1)
    v = check_simplicity_degree_p(1, (x - 2) * (x + 1), 2)
    assert v.status == "NotSimple" and v.witness_name == "M"
    assert v.witness == x - 2
    v = check_simplicity_degree_p(1, x - 1, 1)
    assert v.witness_name == "I"


def test_orbit_vanishing_later():
    # c = 2 in GF(5), n = 2: orbit 2 -> 4 -> 1 -> 1; u = x - 4 vanishes at c^n
    r = LaurentRing(5, 1)
    x = r.var(1)
    v = check_simplicity_degree_p(2, x - 4, 2)
    assert v.status == "NotSimple"
    assert v.witness == (x - 2) * (x - 4)


@pytest.mark.parametrize("p, n", [(2, 2), (2, 6), (3, 3), (3, 6), (5, 5)])
def test_p_dividing_n(p, n):
    r = LaurentRing(p, 1)
    v = check_simplicity_degree_p(n, r.one(), 1)
    assert v.status == "NotSimple" and v.witness_name == "I(x-1)^2"
    assert v.witness == (r.var(1) - 1) ** 3


def test_inconclusive_and_errors():
    r = LaurentRing(5, 1)
    assert check_simplicity_degree_p(1, r.var(1), 2).status == "Inconclusive"
    assert check_simplicity_degree_p(2, r.one(), 1).status == "Simple"
    with pytest.raises(ValueError):
        check_simplicity_degree_p(1, r.zero(), 1)
    with pytest.raises(ValueError):
        check_simplicity_degree_p(0, r.one(), 1)


@given(st.sampled_from([2, 3, 5]), st.integers(1, 12), st.data())
def test_not_simple_witness_is_invariant(p, n, data):
    """The returned generator w spans a mu-invariant ideal inside A0."""
    r = LaurentRing(p, 1)
    c = data.draw(st.integers(1, p - 1))
    u = data.draw(polys(r).filter(lambda f: not f.is_zero()))
    v = check_simplicity_degree_p(n, u, c)
    if v.status != "NotSimple":
        return
    pair = degree_p(p, n, u, c)
    w = v.witness
    assert pair.a0.contains(w)
    rmul = data.draw(polys(r))
    assert divides(w, pair.mu(w * rmul))


def test_invariant_ideal_witness():
    pair = degree_p(5, 1, "(x - 2)(x + 1)", 2)
    r = pair.ring
    assert invariant_ideal_witness(pair, [r.zero()]) is None
    found = invariant_ideal_witness(pair, [r.var(1) - 2])
    assert found is not None and found.generators == [r.var(1) - 2]
    assert invariant_ideal_witness(theorem3(5, 2), [r.var(1) - 2]) is None
    aug = theorem4(2, 2)
    rng = random.Random(3)
    seeds = [random_ideal_element(aug.a0, aug.ring, rng) for _ in range(20)]
    assert invariant_ideal_witness(aug, seeds, 2000) is None


# -- deformations ------------------------------------------------------------


def _commutator_rule(pair_ring, a0, y, values):
    ys = [WreathElement.x(pair_ring, row) for row in y.basis]
    ws = [WreathElement.a(pair_ring, v).conjugate(yy) for v, yy in zip(values, ys)]
    for i in range(len(ys)):
        for j in range(len(ys)):
            lhs = ys[i].commutator(ws[j])
            rhs = ys[j].commutator(ws[i])
            if not a0.contains((lhs * rhs.inverse()).f):
                return False
    return True


def test_deformations_rank_one():
    pair = theorem3(3, 1)
    found = enumerate_deformations(pair.ring, pair.a0, pair.y)
    assert len(found) == 3
    assert (pair.ring.zero(),) in found


@pytest.mark.parametrize("p", [2, 3])
def test_deformations_match_group_oracle(p):
    pair = theorem4(p, 2)
    r = pair.ring
    found = set(enumerate_deformations(r, pair.a0, pair.y))
    trans = pair.a0.transversal(r)
    expected = {(a, b) for a in trans for b in trans if _commutator_rule(r, pair.a0, pair.y, (a, b))}
    assert found == expected
    assert (r.zero(), r.zero()) in found


def test_deformation_bound():
    r = LaurentRing(2, 2)
    with pytest.raises(ValueError, match="bound"):
        enumerate_deformations(r, ExponentReduction(4), Lattice.full(2), transversal_bound=100)
