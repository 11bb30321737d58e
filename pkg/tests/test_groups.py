import random

import pytest
from hypothesis import given, strategies as st

from oracle_utils import bs1n_affine
from relend.errors import InternalError
from relend.groups import (
    BsGroup,
    FreeGroup,
    ProductGroup,
    Witness,
    ZdGroup,
    ball_elements,
    coset_cocycle,
    coset_of,
    find_separated_element,
    in_subgroup,
    inv,
    k_ball,
    mul,
    verify_witness,
    witness,
)

ALL_GROUPS = [
    ZdGroup(2, ()),
    ZdGroup(2, (0,)),
    ZdGroup(3, (0,)),
    FreeGroup(2),
    BsGroup(1, 2),
    BsGroup(2, 3),
    ProductGroup(ZdGroup(1, (0,)), ZdGroup(1, ())),
]


def letters_of(group):
    return st.lists(st.sampled_from(group.s_letters), max_size=8)


@pytest.mark.parametrize("group", ALL_GROUPS, ids=lambda g: repr(g))
def test_normal_form_respects_concatenation(group):
    rng = random.Random(1)
    for _ in range(1000):
        u = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 6))]
        v = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 6))]
        assert group.element_from_word(u + v) == mul(
            group.element_from_word(u), group.element_from_word(v)
        )


@pytest.mark.parametrize("group", ALL_GROUPS, ids=lambda g: repr(g))
def test_inverse_and_canonical_word(group):
    rng = random.Random(2)
    for _ in range(300):
        w = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 7))]
        g = group.element_from_word(w)
        assert mul(g, inv(g)).is_identity()
        assert group.element_from_word(g.word) == g


def test_zd_examples():
    z2 = ZdGroup(2, ())
    assert mul(z2.parse_element("a"), z2.parse_element("b")).payload == (1, 1)
    z3 = ZdGroup(3, ())
    assert inv(z3.element_from_word([1, 2, 2, -3])).payload == (-1, -2, 1)


def test_free_examples():
    f = FreeGroup(2)
    assert mul(f.parse_element("a"), f.parse_element("A")).is_identity()
    assert inv(f.parse_element("a b")).word == (-2, -1)


def test_bs_normal_form_against_affine_model():
    rng = random.Random(3)
    g = BsGroup(1, 2)
    for _ in range(2000):
        w1 = [rng.choice(g.s_letters) for _ in range(rng.randrange(0, 9))]
        w2 = [rng.choice(g.s_letters) for _ in range(rng.randrange(0, 9))]
        e1, e2 = g.element_from_word(w1), g.element_from_word(w2)
        assert (e1 == e2) == (bs1n_affine(w1, 2) == bs1n_affine(w2, 2))


def test_bs_rewrite_example():
    g = BsGroup(1, 2)
    xt = mul(g.parse_element("x"), g.parse_element("t"))
    assert g.word_str(xt) == "t x x"


def test_subgroup_membership():
    z = ZdGroup(2, (0,))
    assert in_subgroup(z.element_from_word([1, 1, 1]))
    assert not in_subgroup(z.element_from_word([1, 1, 1, 2]))
    b = BsGroup(1, 2)
    assert in_subgroup(b.element_from_word([1] * 5))
    assert not in_subgroup(b.parse_element("t"))


def test_coset_reps():
    z = ZdGroup(2, (0,))
    g = z.element_from_word([1, 1, 1] + [2] * 5)  # (3, 5)
    assert coset_of(g).rep.payload == (0, 5)
    assert coset_of(z.element_from_word([1, 1])).rep.is_identity()
    b = BsGroup(1, 2)
    assert b.word_str(coset_of(b.parse_element("x x x t")).rep) == "t"


@pytest.mark.parametrize("group", ALL_GROUPS, ids=lambda g: repr(g))
def test_coset_rep_idempotent_and_constant(group):
    rng = random.Random(4)
    for _ in range(200):
        w = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 6))]
        g = group.element_from_word(w)
        rep = coset_of(g).rep
        assert coset_of(rep).rep == rep
        k = rng.choice(k_ball(group, 3))
        assert coset_of(mul(g, k)) == coset_of(g)
        assert in_subgroup(mul(inv(rep), g))


@pytest.mark.parametrize("group", ALL_GROUPS, ids=lambda g: repr(g))
def test_coset_cocycle_identity(group):
    # the correcting cocycle composes: d(g1 g2, c) = d(g1, g2 c) d(g2, c)
    rng = random.Random(5)
    base = coset_of(group.identity())
    for _ in range(250):
        w1 = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 5))]
        w2 = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 5))]
        ws = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 5))]
        g1 = group.element_from_word(w1)
        g2 = group.element_from_word(w2)
        c = coset_of(group.element_from_word(ws))
        moved = coset_of(mul(g2, c.rep))
        lhs = coset_cocycle(mul(g1, g2), c)
        rhs = mul(coset_cocycle(g1, moved), coset_cocycle(g2, c))
        assert lhs == rhs
    assert coset_cocycle(group.identity(), base).is_identity()


def test_coset_cocycle_values():
    z = ZdGroup(2, (0,))
    base = coset_of(z.identity())
    d = coset_cocycle(z.element_from_word([1, 2, 2]), base)
    assert d.payload == (1, 0)
    k = z.element_from_word([1, 1])
    assert coset_cocycle(k, base) == k


def test_coset_cocycle_flags_broken_rep():
    class Broken(ZdGroup):
        def coset_rep_element(self, a):
            return self.identity()  # collapses distinct cosets

    bad = Broken(2, (0,))
    c = coset_of(bad.element_from_word([2]))
    with pytest.raises(InternalError):
        coset_cocycle(bad.element_from_word([2]), c)


@pytest.mark.parametrize("group", ALL_GROUPS, ids=lambda g: repr(g))
def test_witnesses_verified(group):
    for letter in group.s_letters:
        w = witness(group, letter)
        assert verify_witness(group, w, 8)


def test_witness_values():
    b = BsGroup(1, 2)
    f_t_inv = witness(b, -2)
    assert [b.word_str(f) for f in f_t_inv.elements] == ["T", "x T"]
    assert not verify_witness(b, Witness(-2, (b.letter_element(-2),)), 2)
    z = ZdGroup(2, (0,))
    assert witness(z, 1).elements == (z.identity(),)  # generator inside K
    assert witness(z, 2).elements == (z.letter_element(2),)


def test_find_separated_element():
    z = ZdGroup(2, (0,))
    e = z.identity()
    g = find_separated_element(z, [e], [e], 3)
    assert g is not None and g.payload == (0, 1)
    # empty families: the first nonidentity element qualifies
    g = find_separated_element(z, [], [], 2)
    assert g is not None and not g.is_identity()
    # finite index: zd(1) with K = everything, the union covers G
    full = ZdGroup(1, (0,))
    assert find_separated_element(full, [full.identity()], [full.identity()], 4) is None


@given(st.data())
def test_shortlex_ball_is_deduplicated(data):
    group = data.draw(st.sampled_from(ALL_GROUPS))
    radius = data.draw(st.integers(min_value=0, max_value=3))
    ball = ball_elements(group, radius)
    assert len(ball) == len(set(ball))
    assert ball[0].is_identity()


def test_element_serialization_round_trip():
    for group in ALL_GROUPS:
        rng = random.Random(6)
        for _ in range(50):
            w = [rng.choice(group.s_letters) for _ in range(rng.randrange(0, 6))]
            g = group.element_from_word(w)
            assert group.parse_element(group.word_str(g)) == g
