import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreathrep.constructions import classical_lamplighter, degree_p, theorem2, theorem3, theorem4
from wreathrep.similarity import SimilarityPair, enumerate_deformations, twist_pair
from wreathrep.tree import (
    Action,
    RepContext,
    act_on_vertex,
    coset_action,
    decompose,
    is_trivial_action,
    kernel_scan,
    parse_vertex,
    portrait,
    state_closure,
    verify_closed_form,
    wreath_compose,
)
from wreathrep.wreath import Permutation, WreathElement, parse_element


def _deformed_pairs():
    out = []
    base = theorem3(3, 1)
    out.append(SimilarityPair(base.ring, base.a0, base.y, (base.ring.const(2),), base.endo))
    base = theorem4(2, 2)
    for choice in enumerate_deformations(base.ring, base.a0, base.y):
        if any(choice):
            out.append(SimilarityPair(base.ring, base.a0, base.y, choice, base.endo))
    return out


PAIRS = [
    classical_lamplighter(),
    theorem3(3, 2),
    theorem2(3, 2, "1 + x"),
    degree_p(5, 3, "x + 2", 2),
    theorem4(2, 2),
    theorem4(3, 2),
    theorem4(2, 3),
    twist_pair(theorem4(2, 2), ((1, 1), (0, 1))),
] + _deformed_pairs()

CONTEXTS = [RepContext(p) for p in PAIRS]


def random_element(ring, rng, spread=3):
    terms = {}
    for _ in range(rng.randint(0, 4)):
        e = tuple(rng.randint(-spread, spread) for _ in range(ring.d))
        terms[e] = rng.randrange(ring.p)
    return WreathElement(ring.from_terms(terms), tuple(rng.randint(-spread, spread) for _ in range(ring.d)))


@pytest.fixture(scope="module")
def g22():
    return RepContext(theorem4(2, 2))


def P(ctx, text):
    return parse_element(ctx.ring, text)


def test_transversal_letters(g22):
    assert g22.m == 4
    assert g22.transversal[0].is_identity()
    # x1^i a^j has letter p*i + j
    for i in range(2):
        for j in range(2):
            t = WreathElement.gen_x(g22.ring, 1) ** i * WreathElement.a(g22.ring, j)
            assert g22.transversal[2 * i + j] == t
    deg = RepContext(theorem3(5, 2))
    assert [t for t in deg.transversal] == [WreathElement.a(deg.ring, i) for i in range(5)]


def test_coset_actions(g22):
    r = g22.ring
    assert coset_action(g22, WreathElement.identity(r)).is_identity()
    assert coset_action(g22, P(g22, "a")) == Permutation.from_cycles(4, [(0, 1), (2, 3)])
    assert coset_action(g22, P(g22, "x1")) == Permutation.from_cycles(4, [(0, 2), (1, 3)])
    for p in (3, 5):
        for j in range(1, p):
            ctx = RepContext(theorem3(p, j))
            assert coset_action(ctx, WreathElement.gen_x(ctx.ring, 1)) == Permutation([i * j % p for i in range(p)])


def test_generator_recursions(g22):
    kids, perm = decompose(g22, P(g22, "x1"))
    assert [k for k in kids] == [P(g22, s) for s in ("e", "a^{x2^{-1}}", "x2", "a^{x2^{-1}}x2")]
    kids, perm = decompose(g22, P(g22, "x2"))
    assert perm.is_identity()
    assert list(kids) == [P(g22, "x1")] * 3 + [P(g22, "a^{(1+x1^{-1})x2^{-1}}x1")]
    kids, perm = decompose(g22, WreathElement.identity(g22.ring))
    assert perm.is_identity() and all(k.is_identity() for k in kids)


def test_lamplighter():
    ctx = RepContext(classical_lamplighter())
    x = WreathElement.gen_x(ctx.ring, 1)
    a = WreathElement.a(ctx.ring)
    kids, perm = decompose(ctx, x)
    assert kids == (x, x * a) and perm.is_identity()
    assert act_on_vertex(ctx, a, (0, 1)) == (1, 1)
    assert act_on_vertex(ctx, a, ()) == ()


@pytest.mark.parametrize("ctx", CONTEXTS, ids=range(len(CONTEXTS)))
def test_direct_resolution_matches_scan(ctx):
    rng = random.Random(1)
    for _ in range(40):
        g = random_element(ctx.ring, rng)
        j, h = ctx.resolve(g)
        assert j == ctx.resolve_by_scan(g)
        assert ctx.in_subgroup(h)
        assert h * ctx.transversal[j] == g


@pytest.mark.parametrize("ctx", CONTEXTS, ids=range(len(CONTEXTS)))
def test_homomorphism_law(ctx):
    rng = random.Random(2)
    for _ in range(25):
        g = random_element(ctx.ring, rng)
        h = random_element(ctx.ring, rng)
        assert decompose(ctx, g * h) == wreath_compose(decompose(ctx, g), decompose(ctx, h))
        assert coset_action(ctx, g * h) == coset_action(ctx, g) * coset_action(ctx, h)


@pytest.mark.parametrize("ctx", CONTEXTS, ids=range(len(CONTEXTS)))
def test_relations_act_trivially(ctx):
    r = ctx.ring
    rng = random.Random(3)
    a = WreathElement.a(r)
    assert is_trivial_action(ctx, a**r.p) is Action.TRIVIAL
    assert is_trivial_action(ctx, a) is Action.NONTRIVIAL
    for _ in range(5):
        v = tuple(rng.randint(-3, 3) for _ in range(r.d))
        assert is_trivial_action(ctx, a.commutator(a.conjugate(WreathElement.x(r, v)))) is Action.TRIVIAL
    for i in range(1, r.d + 1):
        for j in range(i + 1, r.d + 1):
            c = WreathElement.gen_x(r, i).commutator(WreathElement.gen_x(r, j))
            assert is_trivial_action(ctx, c) is Action.TRIVIAL


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_vertex_action_is_a_level_bijection(seed, level):
    ctx = CONTEXTS[4]
    g = random_element(ctx.ring, random.Random(seed))
    rng = random.Random(seed + 1)
    w = tuple(rng.randrange(ctx.m) for _ in range(level))
    img = act_on_vertex(ctx, g, w)
    assert len(img) == level
    assert act_on_vertex(ctx, g, w[:-1]) == img[:-1]  # prefixes preserved
    assert act_on_vertex(ctx, g.inverse(), img) == w


def test_level_two_bijection(g22):
    g = P(g22, "a^{x2}x1^3x2^-1")
    level = [(i, j) for i in range(4) for j in range(4)]
    assert sorted(act_on_vertex(g22, g, w) for w in level) == level


def test_vertex_errors(g22):
    with pytest.raises(ValueError):
        act_on_vertex(g22, P(g22, "a"), (4,))
    with pytest.raises(ValueError, match="position 1"):
        parse_vertex("05", 4)
    assert parse_vertex("013", 4) == (0, 1, 3)


def test_portraits(g22):
    r = g22.ring
    assert portrait(g22, P(g22, "x1"), 0).labels == {}
    a = P(g22, "a")
    assert portrait(g22, a * a, 3) == portrait(g22, WreathElement.identity(r), 3)
    pt = portrait(g22, P(g22, "x1"), 3)
    assert pt.labels[()] == Permutation.from_cycles(4, [(0, 2), (1, 3)])
    assert len(pt.labels) == 1 + 4 + 16
    assert pt.render().splitlines()[0] == "*: (0,2)(1,3)"


def test_state_closure(g22):
    r = g22.ring
    aut = state_closure(g22, WreathElement.identity(r))
    assert len(aut) == 1
    assert len(state_closure(g22, P(g22, "x1"))) == 12
    x2 = state_closure(g22, P(g22, "x2"))
    x1 = state_closure(g22, P(g22, "x1"))
    assert set(x2.states) <= set(x1.states)
    assert state_closure(g22, P(g22, "x1"), max_states=5) is None
    with pytest.raises(ValueError):
        state_closure(g22, P(g22, "x1"), max_states=0)
    for row in x1.transitions:
        assert all(0 <= t < len(x1) for t in row)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_unit_multiplier_closures(p):
    for j in range(1, p):
        ctx = RepContext(theorem3(p, j))
        x = WreathElement.gen_x(ctx.ring, 1)
        aut = state_closure(ctx, x)
        assert set(aut.states) == {x * WreathElement.a(ctx.ring, k) for k in range(p)}


def test_unknown_verdict():
    ctx = RepContext(theorem2(3, 2, "1 + x"))
    ax = WreathElement.a(ctx.ring) * WreathElement.gen_x(ctx.ring, 1)
    assert is_trivial_action(ctx, ax, max_states=1) is Action.NONTRIVIAL
    # x has identity root permutation here and more than 3 sections with one too
    assert is_trivial_action(ctx, WreathElement.gen_x(ctx.ring, 1), max_states=3) is Action.UNKNOWN


def test_closed_forms():
    for pair in (theorem4(2, 2), theorem4(3, 2), theorem4(3, 3), theorem3(3, 2), theorem2(3, 1, 1), theorem2(5, 3, "x + 1")):
        rep = verify_closed_form(RepContext(pair))
        assert rep.ok, rep.to_json()
    rep = verify_closed_form(CONTEXTS[-1])
    assert rep.family == "none" and not rep.ok


def test_kernel_scan_small():
    ctx = RepContext(theorem4(2, 2))
    rep = kernel_scan(ctx, 0)
    assert rep.words == 0 and rep.ok
    rep = kernel_scan(ctx, 3)
    assert rep.ok and rep.words == 6 + 30 + 150
    bad = RepContext(degree_p(3, 1, "x - 2", 2))
    rep = kernel_scan(bad, 4)
    assert rep.witnesses
    for _, g in rep.witnesses:
        assert not g.is_identity()
        assert is_trivial_action(bad, g) is Action.TRIVIAL


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("l", [-1, 0, 2])
def test_mixed_conjugates_and_state_formulas(g22, n, l):
    r = g22.ring
    a = WreathElement.a(r)
    X = lambda i, k: WreathElement.gen_x(r, i) ** k  # noqa: E731
    A = lambda *exps: WreathElement.a(r, sum((r.monomial(e) for e in exps), r.zero()))  # noqa: E731
    e = WreathElement.identity(r)
    s = Permutation.from_cycles(4, [(0, 1), (2, 3)])
    q = Permutation.from_cycles(4, [(0, 3), (1, 2)])
    g = a.conjugate(X(1, 2 * n) * X(2, l))
    assert decompose(g22, g) == ((e, e) + (A((l, n - 1), (0, -1)),) * 2, s)
    g = a.conjugate(X(1, 2 * n + 1) * X(2, l))
    assert decompose(g22, g) == ((A((l, n)),) * 2 + (A((0, -1)),) * 2, s)
    g = a.conjugate(X(1, 2 * n) * X(2, l)) * X(1, 1)
    kids = (A((0, -1)), e, A((l, n - 1)) * X(2, 1), A((l, n - 1), (0, -1)) * X(2, 1))
    assert decompose(g22, g) == (kids, q)
    g = a.conjugate(X(1, 2 * n + 1) * X(2, l)) * X(1, 1)
    kids = (A((l, n), (0, -1)), A((l, n)), X(2, 1), A((0, -1)) * X(2, 1))
    assert decompose(g22, g) == (kids, q)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=5, unique=True))
def test_products_of_even_conjugates(ns):
    # a^{sum x1^{2n_k}} has sections sum_k (x2^{n_k - 1} + x2^{-1}) at letters 2 and 3
    ctx = CONTEXTS[4]
    r = ctx.ring
    f = sum((r.monomial((2 * k, 0)) for k in ns), r.zero())
    sec = sum((r.monomial((0, k - 1)) + r.monomial((0, -1)) for k in ns), r.zero())
    kids, perm = decompose(ctx, WreathElement.a(r, f))
    e = WreathElement.identity(r)
    assert kids == (e, e, WreathElement.a(r, sec), WreathElement.a(r, sec))
    assert perm.is_identity() == (len(ns) % 2 == 0)
