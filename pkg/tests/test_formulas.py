import pytest

from circuit_energy import (
    FANIN2,
    INPUT,
    NonLeafNegation,
    NOT,
    NotReadOnce,
    RootNotAllowed,
    decompose_gk,
    energy_exhaustive,
    equivalent,
    formula_from_tree,
    formula_stats,
    nonskew_energy_estimate,
    readonce_leafneg_energy,
    restriction_energy_check,
)
from circuit_energy.corpus import GenSpec, generate, generate_nonskew
from circuit_energy.ir import structural_stats


def F(tree, n):
    return formula_from_tree(tree, n, FANIN2)


AND_OR = F(("or", [("and", [("var", 0), ("var", 1)]), ("var", 2)]), 3)


# --------------------------------------------------------------------------
# restriction stability


def test_restriction_at_the_and_gate():
    rep = restriction_energy_check(AND_OR, 2, 0)  # gate 2 is the AND
    assert rep.ec == 2 and rep.depth == 2
    assert rep.ec_restricted == 1
    assert rep.holds
    # the restricted formula computes x2
    assert energy_exhaustive(rep.restricted).ec == 1


def test_restriction_refuses_the_root():
    with pytest.raises(RootNotAllowed):
        restriction_energy_check(AND_OR, AND_OR.output, 1)


def test_restriction_holds_across_corpus():
    for s in range(40):
        f = generate(
            GenSpec(seed=s, num_vars=2 + s % 4, size_budget=3 + s % 9,
                    neg_density=0.3, shape="FORMULA")
        )
        for gid, g in enumerate(f.gates):
            if gid == f.output or g.kind == INPUT:
                continue
            for bit in (0, 1):
                assert restriction_energy_check(f, gid, bit).holds


# --------------------------------------------------------------------------
# block decomposition


def test_decomposition_of_single_negation():
    f = F(("or", [("not", ("var", 0)), ("var", 1)]), 2)
    res = decompose_gk(f)
    assert res.blocks == ((0, 2), (3, 5), (6, 6))
    assert res.skeleton_gates == (7, 8, 9)
    assert res.block_count == 3
    assert equivalent(res.f_prime, f)
    assert energy_exhaustive(res.f_prime).ec == 5


def test_decomposition_invariants_on_corpus():
    checked = 0
    for s in range(120):
        f = generate(
            GenSpec(seed=s, num_vars=2 + s % 5, size_budget=4 + s % 12,
                    neg_density=0.3, shape="FORMULA")
        )
        negs = structural_stats(f).negs
        if not 1 <= negs <= 4:
            continue
        checked += 1
        res = decompose_gk(f)
        assert equivalent(res.f_prime, f)
        assert res.f_prime.leaves() <= 2 * f.leaves()
        assert res.block_count <= 5 * negs - 2
        covered = set()
        for start, end in res.blocks:
            for gid in range(start, end + 1):
                assert res.f_prime.gates[gid].kind != NOT
                covered.add(gid)
        # every input leaf lives inside some block
        for gid, g in enumerate(res.f_prime.gates):
            if g.kind == INPUT:
                assert gid in covered
        st = structural_stats(f)
        bound = (5 * negs - 2) * (energy_exhaustive(f).ec + st.depth + 1)
        assert energy_exhaustive(res.f_prime).ec <= bound
    assert checked >= 30


def test_decomposition_of_negation_free_formula_is_one_block():
    f = F(("and", [("var", 0), ("or", [("var", 1), ("var", 2)])]), 3)
    res = decompose_gk(f)
    assert res.block_count == 1
    assert res.skeleton_gates == ()
    assert equivalent(res.f_prime, f)


# --------------------------------------------------------------------------
# read-once, negations at the leaves


def test_readonce_energy_is_leaves_minus_one():
    rep = readonce_leafneg_energy(F(("and", [("var", 0), ("not", ("var", 1))]), 2))
    assert rep.ec == 1 and rep.leaf_count == 2 and rep.equal
    assert rep.witness_input == (1, 0)

    rep = readonce_leafneg_energy(
        F(
            (
                "and",
                [
                    ("or", [("var", 0), ("var", 1)]),
                    ("or", [("not", ("var", 2)), ("var", 3)]),
                ],
            ),
            4,
        )
    )
    assert rep.ec == 3 and rep.leaf_count == 4 and rep.equal


def test_readonce_single_literal_spends_nothing():
    assert readonce_leafneg_energy(F(("var", 0), 1)).ec == 0
    assert readonce_leafneg_energy(F(("not", ("var", 0)), 1)).ec == 0
    assert readonce_leafneg_energy(F(("not", ("var", 0)), 1)).equal


def test_readonce_rejections():
    with pytest.raises(NotReadOnce):
        readonce_leafneg_energy(F(("and", [("var", 0), ("var", 0)]), 1))
    with pytest.raises(NonLeafNegation):
        readonce_leafneg_energy(F(("not", ("and", [("var", 0), ("var", 1)])), 2))


def test_readonce_on_generated_instances():
    for s in range(50):
        L = 2 + s % 12
        f = generate(
            GenSpec(seed=s, num_vars=L, size_budget=L, neg_density=0.4,
                    shape="READONCE_LEAFNEG")
        )
        rep = readonce_leafneg_energy(f)
        assert rep.equal, (s, rep)


# --------------------------------------------------------------------------
# skew-free mean energy


def test_nonskew_counts_bottom_gates_and_matches_exact_mean():
    f = F(
        (
            "and",
            [("or", [("var", 0), ("var", 1)]), ("or", [("var", 2), ("var", 3)])],
        ),
        4,
    )
    st = nonskew_energy_estimate(f, samples=2000, seed=1)
    assert st.t == 2
    assert st.lower_envelope == 0.5
    assert st.exact_energy_total == 33  # 12 + 12 firings for the ORs, 9 for the AND
    assert st.exact_mean == 33 / 16
    assert st.exact_mean >= st.lower_envelope
    assert abs(st.empirical_mean_energy - st.exact_mean) < 0.15


def test_nonskew_envelope_on_generated_formulas():
    for s in range(40):
        f = generate_nonskew(seed=s, num_vars=2 + s % 6, leaf_budget=4 + 2 * (s % 7))
        st = nonskew_energy_estimate(f, samples=500, seed=s)
        assert st.exact_mean is not None
        assert st.exact_mean >= st.lower_envelope


# --------------------------------------------------------------------------
# headline stats


def test_formula_stats():
    st = formula_stats(AND_OR)
    assert (st.leaves, st.size, st.depth, st.negs) == (3, 2, 2, 0)
    assert st.ec == 2
    assert st.argmax_input in ((1, 1, 0), (1, 1, 1))
