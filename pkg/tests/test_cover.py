import random

import pytest
from fractions import Fraction

from pencilforge.cover import (
    BaseLedger,
    BranchClass,
    ReplayState,
    RibbonFamilyState,
    ScriptError,
    blow_down,
    cancel_trivial_bands,
    cover_invariants,
    dive,
    handle_slide,
    ledger,
    lemma_rewrite,
    replay,
    rounds,
)
from pencilforge.intmat import determinant, symmetric_signature


def f_n_ledger(n):
    """Hirzebruch surface: 0-framed fiber + n-framed section, linking 1."""
    return ledger([("f", 0), ("s", n)], links=[("f", "s", 1)])


def test_slide_framing_formula():
    # sliding s over f: framing += framing(f) + 2 lk(s, f)
    L = f_n_ledger(3)
    L2 = handle_slide(L, "s", "f", -1)
    assert L2.framing("s") == 3 + 0 - 2 * 1


def test_slide_endgame_framing():
    # (i+1)-framed handle slid k+1 times over the 0-framed one: -(g-i) odd case
    for g in (3, 5):
        for i in range(g):
            k = (g - 1) // 2
            L = f_n_ledger(i + 1)
            for _ in range(k + 1):
                L = handle_slide(L, "s", "f", -1)
            assert L.framing("s") == (i + 1) - 2 * (k + 1) == -(g - i)


def test_slide_then_inverse_is_identity():
    L = ledger([("a", 2), ("b", -3), ("c", 0)],
               links=[("a", "b", 1), ("b", "c", -2)])
    L2 = handle_slide(handle_slide(L, "a", "b", 1), "a", "b", -1)
    assert L2.linking == L.linking


def test_slide_preserves_det_and_signature():
    rng = random.Random(5)
    for _ in range(30):
        n = 5
        names = [f"h{i}" for i in range(n)]
        handles = [(nm, rng.randint(-3, 3)) for nm in names]
        links = []
        for i in range(n):
            for j in range(i + 1, n):
                links.append((names[i], names[j], rng.randint(-2, 2)))
        L = ledger(handles, links)
        det0, sig0 = L.det(), L.sig()
        h, over = rng.sample(names, 2)
        L2 = handle_slide(L, h, over, rng.choice((1, -1)))
        assert L2.det() == det0
        assert L2.sig() == sig0


def test_blow_down_effects():
    L = ledger([("a", 0), ("e", -1)], links=[("a", "e", 2)], meridians=["e"])
    det0, sig0 = L.det(), L.sig()
    L2 = blow_down(L, "e")
    assert L2.framing("a") == 0 + 2 * 2
    assert L2.det() == -det0
    assert L2.sig() == sig0 + 1
    assert L2.blown_up == 1


def test_blow_down_unlinked_handle_changes_nothing_else():
    L = ledger([("a", 3), ("e", -1)], meridians=["e"])
    L2 = blow_down(L, "e")
    assert L2.framing("a") == 3


def test_blow_down_preconditions():
    L = ledger([("a", -2), ("b", -1)], meridians=["a"])
    with pytest.raises(ValueError):
        blow_down(L, "a")   # framing not -1
    with pytest.raises(ValueError):
        blow_down(L, "b")   # not flagged meridional


def test_lemma_rewrite_chain_odd_case():
    # F(2g+2, 0, 0) with 2g+2 caps; k iterations reach F(4, k, 4k) for g=2k+1
    for g in (3, 5, 7):
        k = (g - 1) // 2
        bands0 = 4 * g - 4 + 12 * g  # the X'(0)-style ribbon: closure bands + cubes
        st = RibbonFamilyState(R=2 * g + 2, S=0, T=0, band_count=bands0,
                               caps=2 * g + 2)
        chi0 = st.chi()
        for _ in range(k):
            st = lemma_rewrite(st)
            assert st.chi() == chi0
        assert (st.R, st.S, st.T) == (4, k, 4 * k)
        st = cancel_trivial_bands(st, 2 * g - 2)
        assert st.caps == 4
        assert st.chi() == chi0


def test_lemma_rewrite_chain_even_case():
    for g in (4, 6, 8):
        k = (g - 2) // 2
        bands0 = 4 * g - 4 + 12 * g
        st = RibbonFamilyState(R=2 * g + 2, S=0, T=0, band_count=bands0,
                               caps=2 * g + 2)
        chi0 = st.chi()
        for _ in range(k):
            st = lemma_rewrite(st)
        assert (st.R, st.S, st.T) == (6, k, 4 * k)
        st = dive(st)
        st = rounds(st, 2)
        assert (st.R, st.T) == (4, 4 * k + 2)
        st = cancel_trivial_bands(st, 2 * g - 2)
        assert st.caps == 4
        assert st.chi() == chi0


def test_lemma_rewrite_needs_eight_disks():
    st = RibbonFamilyState(R=6, S=0, T=0, band_count=10, caps=6)
    with pytest.raises(ValueError):
        lemma_rewrite(st)


def test_cancel_preconditions():
    st = RibbonFamilyState(R=4, S=1, T=2, band_count=6, caps=4)
    with pytest.raises(ValueError):
        cancel_trivial_bands(st, 3)
    out = cancel_trivial_bands(st, 2)
    assert out.chi() == st.chi()


def test_cover_invariants_elliptic_family():
    # base F_m, branch class 4s: the elliptic surface E(m)
    for m in (1, 2, 3):
        L = f_n_ledger(m)
        st = RibbonFamilyState(R=4, S=0, T=0, band_count=12 * m, caps=4)
        cls = BranchClass(4, 0, m)
        e, s = cover_invariants(L, st, cls)
        assert (e, s) == (12 * m, -8 * m)


def test_cover_invariants_empty_branch():
    L = f_n_ledger(1)
    st = RibbonFamilyState(R=0, S=0, T=0, band_count=0, caps=0)
    e, s = cover_invariants(L, st, BranchClass(0, 0, 1))
    assert (e, s) == (2 * L.euler(), 2 * L.sig())


def test_branch_class_divisibility():
    with pytest.raises(ValueError):
        BranchClass(3, 0, 1)
    with pytest.raises(ValueError):
        BranchClass(4, 1, 1)


def test_replay_script_and_assert_failure_line():
    st = ReplayState(
        ledger=f_n_ledger(2),
        ribbon=RibbonFamilyState(R=12, S=0, T=0, band_count=44, caps=12),
        cls=BranchClass(4, 0, 4),
    )
    script = "LEMMA41\nASSERT R=8 S=1 T=4\nLEMMA41\nASSERT R=4 S=2 T=8\n"
    out = replay(script, st)
    assert out.ribbon.R == 4
    bad = "LEMMA41\n"
    with pytest.raises(ScriptError) as err:
        replay(bad, out)
    assert "line 1" in str(err.value)


def test_replay_empty_script_echoes_state():
    st = ReplayState(ledger=f_n_ledger(1),
                     ribbon=RibbonFamilyState(R=4, S=0, T=0, band_count=0, caps=4))
    out = replay("# nothing to do\n", st)
    assert out.ribbon.R == 4
