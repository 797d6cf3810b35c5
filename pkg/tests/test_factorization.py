import pytest
from hypothesis import given, settings, strategies as st

from pencilforge.braid import full_twist_power
from pencilforge.factorization import (
    Arc,
    BOUNDARY_MULTITWIST,
    ChainSpec,
    Curve,
    Factorization,
    IDENTITY,
    Section,
    cap_boundary,
    chain_spec,
    cyclic_rotate,
    descend_to_braid,
    from_json,
    hurwitz_move,
    lantern_quadruple,
    rechain,
    standard_chain,
    standard_curve,
    to_json,
    unchain,
)
from pencilforge.homology import chain_class, sp_product
from pencilforge.intmat import identity, mat_pow


def full_chain_relator(g):
    cc = [standard_curve(g, j) for j in range(1, 2 * g + 2)]
    word = tuple((c, 1) for c in cc) * (2 * g + 2)
    return Factorization(genus=g, boundary_count=0, twists=word, target=IDENTITY)


def test_factorization_rejects_non_relator():
    a = standard_curve(2, 1)
    with pytest.raises(ValueError):
        Factorization(genus=2, boundary_count=0, twists=((a, 1),), target=IDENTITY)


def test_full_chain_sp_product_is_identity():
    for g in (1, 2, 3):
        f = full_chain_relator(g)
        assert f.sp_matrix() == identity(2 * g)


def test_hurwitz_move_involution():
    f = full_chain_relator(2)
    g1 = hurwitz_move(f, 3, "left")
    g2 = hurwitz_move(g1, 3, "right")
    assert [(c.h1, s) for c, s in g2.twists] == [(c.h1, s) for c, s in f.twists]


def test_hurwitz_move_disjoint_swap_keeps_curves():
    # on a pair of homologically disjoint curves the move is a bare swap
    g = 2
    spec = chain_spec(g, 1, 1, b_name="x")
    b1, b2 = spec.boundary_pair
    block = tuple((c, 1) for c in spec.curves) * 4
    f = Factorization(genus=g, boundary_count=0,
                      twists=block + ((b1, -1), (b2, -1)), target=IDENTITY)
    # c3 at position 2 and c1 at position 3 are distant chain curves
    moved = hurwitz_move(f, 2, "left")
    a_before, b_before = f.twists[2][0], f.twists[3][0]
    assert moved.twists[2][0].name == b_before.name
    assert moved.twists[3][0].name == a_before.name
    assert moved.twists[3][0].h1 == a_before.h1


def test_hurwitz_move_preserves_sp_product_everywhere():
    f = full_chain_relator(2)
    for pos in range(f.length - 1):
        assert hurwitz_move(f, pos, "left").sp_matrix() == identity(4)


def test_cyclic_rotate_identity_cases():
    f = full_chain_relator(2)
    assert cyclic_rotate(f, 0).twists == f.twists
    assert cyclic_rotate(f, f.length).twists == f.twists
    assert cyclic_rotate(f, 7).length == f.length


def test_cap_boundary_counts():
    g = 3
    cc = [standard_curve(g, j) for j in range(1, 2 * g + 2)]
    word = tuple((c, 1) for c in cc) * (2 * g + 2)
    pencil = Factorization(genus=g, boundary_count=2, twists=word,
                           target=BOUNDARY_MULTITWIST,
                           sections=(Section(-1), Section(-1)))
    capped = cap_boundary(pencil)
    assert capped.target == IDENTITY
    assert capped.boundary_count == 0
    assert capped.length == (2 * g + 2) * (2 * g + 1) == 56
    assert all(s.square == -1 for s in capped.sections)


def test_cap_boundary_rejects_fibration():
    with pytest.raises(ValueError):
        cap_boundary(full_chain_relator(2))


def test_standard_chain_validates():
    for g in (1, 2, 3, 4, 5, 6):
        spec = standard_chain(g)
        spec.validate(g)
        assert len(spec.curves) == 2 * g + 1
        # boundary classes of the full chain cap to zero
        assert all(x == 0 for x in spec.boundary_pair[0].h1)


def test_chain_spec_intersection_invariants():
    g = 3
    spec = chain_spec(g, 1, 1)
    with pytest.raises(ValueError):
        ChainSpec((spec.curves[0], spec.curves[0], spec.curves[2]),
                  spec.boundary_pair)


def test_chain_spec_sub_chains_give_x_class():
    # both the 3-chain and the long chain bound +-a2 on Sigma_g
    for g in (3, 4, 5, 6):
        s3 = chain_spec(g, 1, 1)
        b = list(s3.boundary_pair[0].h1)
        a2 = [0] * (2 * g); a2[1] = 1
        assert b == a2 or b == [-x for x in a2]
        slong = chain_spec(g, 5, g - 2)
        b = list(slong.boundary_pair[0].h1)
        assert b == a2 or b == [-x for x in a2]


def test_chain_identity_power_matches_spec():
    # (Sp of chain word)^{2h+2} = T_{b1} T_{b2} for h = 1 and h = g-1
    from pencilforge.homology import transvection
    from pencilforge.intmat import mat_mul
    for g in (2, 3, 4, 5, 6):
        for start, h in ((1, 1), (1, g - 1)):
            spec = chain_spec(g, start, h)
            m = mat_pow(sp_product(g, [list(c.h1) for c in spec.curves]), 2 * h + 2)
            b1, b2 = spec.boundary_pair
            assert m == mat_mul(transvection(g, list(b1.h1)),
                                transvection(g, list(b2.h1)))


def test_unchain_drops_ten_and_restores():
    g = 3
    spec = chain_spec(g, 1, 1, b_name="x")
    block = tuple((c, 1) for c in spec.curves) * 4
    # embed the block in a relator: block * block^-1 ... need honest relator:
    # use the full chain raised so the cube block appears? Simplest honest
    # relator containing the block: (c1c2c3)^4 times its inverse is not
    # positive; instead use (c1 c2 c3)^{4(2g+2)/?}: on the torus the cube
    # block powers close up. Use g=1: (c1c2c3)^4 is T_x T_x' there; take
    # (c1c2c3)^{12} = relator on the torus? (t1t2t3)^{12}: Sp product is
    # identity at g=1? (T1T2T3)^4 = T_{a}^2-matrix squared-ish; cube:
    # ((T1T2T3)^4)^3 = T^6 != I. Use instead the genus-2 full chain which
    # contains no literal cube; so test unchain on a synthetic relator:
    # block followed by the inverse pair twists is not positive...
    # Cleanest: test on the catalog block-form word in test_catalog; here test
    # the mechanics against a relator built as block + padding whose product
    # closes: (c1c2c3)^4 * (x x')^-1 = 1 with negative scratch twists.
    b1, b2 = spec.boundary_pair
    word = block + ((b1, -1), (b2, -1))
    f = Factorization(genus=g, boundary_count=0, twists=word, target=IDENTITY)
    out = unchain(f, 0, spec)
    assert out.length == f.length - 10
    back = rechain(out, 0, spec)
    assert [(c.h1, s) for c, s in back.twists] == [(c.h1, s) for c, s in f.twists]


def test_unchain_rejects_mismatch():
    g = 3
    spec = chain_spec(g, 1, 1)
    f = full_chain_relator(g)
    with pytest.raises(ValueError):
        unchain(f, 0, spec)


def test_lantern_record_sp_identity():
    for g in (2, 3, 4):
        rec = lantern_quadruple(g)
        lhs = sp_product(g, [list(c.h1) for c in rec.left])
        rhs = sp_product(g, [list(c.h1) for c in rec.right])
        assert lhs == rhs
        assert len(rec.left) == 4 and len(rec.right) == 3


def test_descend_full_chain_has_power_one():
    for g in (2, 3):
        w = descend_to_braid(full_chain_relator(g))
        assert full_twist_power(w) == 1


def test_descend_genus_one_powers():
    g = 1
    cc = [standard_curve(g, j) for j in (1, 2, 3)]
    for n in (1, 2, 3):
        word = tuple((c, 1) for c in cc) * (4 * n)
        f = Factorization(genus=g, boundary_count=0, twists=word, target=IDENTITY)
        assert full_twist_power(descend_to_braid(f)) == n


def test_descend_is_homomorphism_on_concatenation():
    g = 1
    cc = [standard_curve(g, j) for j in (1, 2, 3)]
    word = tuple((c, 1) for c in cc) * 4
    f = Factorization(genus=g, boundary_count=0, twists=word, target=IDENTITY)
    w = descend_to_braid(f)
    half = Factorization(genus=g, boundary_count=0, twists=word * 2, target=IDENTITY)
    assert descend_to_braid(half).letters == (w * w).letters


def test_descend_refuses_arcless_curves():
    g = 1
    bare = Curve("v", tuple(chain_class(g, 1)))
    cc = [standard_curve(g, j) for j in (1, 2, 3)]
    word = ((bare, 1),) + tuple((c, 1) for c in cc) * 4
    f = Factorization(genus=g, boundary_count=0,
                      twists=word + ((bare, -1),), target=IDENTITY)
    with pytest.raises(ValueError):
        descend_to_braid(f)


def test_empty_relator_descends_to_empty():
    f = Factorization(genus=1, boundary_count=0, twists=(), target=IDENTITY)
    w = descend_to_braid(f)
    assert w.letters == ()
    assert full_twist_power(w) == 0


def test_json_round_trip():
    f = full_chain_relator(2)
    g = from_json(to_json(f))
    assert g.genus == f.genus
    assert [(c.name, c.h1, s) for c, s in g.twists] == \
        [(c.name, c.h1, s) for c, s in f.twists]
    assert g.target == f.target


@given(st.integers(min_value=0, max_value=29), st.sampled_from(["left", "right"]))
@settings(max_examples=40, deadline=None)
def test_hurwitz_random_positions_preserve_relator(pos, direction):
    f = full_chain_relator(2)
    moved = hurwitz_move(f, pos % (f.length - 1), direction)
    assert moved.sp_matrix() == identity(4)
