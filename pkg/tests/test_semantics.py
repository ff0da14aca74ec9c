import pytest
from hypothesis import given, strategies as st

from circuit_energy import (
    CapExceeded,
    LengthMismatch,
    TruthTable,
    dt_depth,
    energies,
    energy_exhaustive,
    equivalent,
    evaluate,
    firing_patterns,
    is_monotone,
    psens,
    psens_at,
    truth_table,
    var_masks,
)
from circuit_energy.corpus import GenSpec, fixture, generate
from circuit_energy.textio import parse_netlist

XOR2 = TruthTable(2, 0b0110)


def test_var_masks_small():
    assert var_masks(2) == (0b1010, 0b1100)


def test_truth_table_from_values_and_cofactor():
    f = TruthTable.from_values(2, [0, 1, 1, 0])
    assert f == XOR2
    assert f.cofactor(0, 1).value_at((1, 1)) == 0
    assert f.depends_on(0) and f.depends_on(1)
    assert not TruthTable(2, 0b1111).depends_on(0)


def test_padded_tiles():
    f = TruthTable(1, 0b10)  # x0
    g = f.padded(2)
    assert g.bitstring() == "0101"


def test_evaluate_counts_op_gates_only():
    c = parse_netlist("INPUT x0\ng1 = CONST 1\ng2 = AND x0 g1\nOUTPUT g2\n")
    tr = evaluate(c, (1,))
    assert tr.value == 1
    assert tr.energy == 1  # the AND; INPUT and CONST never count


def test_evaluate_length_mismatch():
    c = fixture("and_tree(2)")
    with pytest.raises(LengthMismatch):
        evaluate(c, (1, 0, 1))


def test_energy_exhaustive_first_argmax():
    c = parse_netlist("INPUT x0\nINPUT x1\ng2 = NOT x0\nOUTPUT g2\n")
    rep = energy_exhaustive(c)
    assert rep.ec == 1
    assert rep.argmax_input == (0, 0)  # first input reaching the peak


@given(st.integers(0, 2**16 - 1), st.integers(0, 15))
def test_energies_matches_evaluate(bits, j):
    from circuit_energy.synth import compile_truth_table

    c = compile_truth_table(TruthTable(4, bits))
    arr = energies(c)
    x = tuple((j >> i) & 1 for i in range(4))
    assert int(arr[j]) == evaluate(c, x).energy


def test_firing_patterns_and2():
    c = fixture("and_tree(2)")
    assert firing_patterns(c) == [(0,), (1,)]


def test_firing_patterns_cover_inputs_without_gates():
    c = parse_netlist("INPUT x0\nOUTPUT x0\n")
    assert firing_patterns(c) == [()]


def test_psens_oracles():
    and3 = fixture("and_tree(3)")
    rep = psens(truth_table(and3))
    assert rep.value == 3
    assert rep.witness_input == (1, 1, 1)
    assert rep.witness_indices == {0, 1, 2}

    or4 = fixture("or_tree(4)")
    assert psens(truth_table(or4)).value == 1

    assert psens(TruthTable(2, 0b1111)).value == 0
    assert psens(TruthTable(3, sum(1 << j for j in range(8) if bin(j).count("1") % 2))).value == 3


def test_psens_at():
    f = truth_table(fixture("or_tree(3)"))
    assert psens_at(f, (1, 0, 0)) == {0}
    assert psens_at(f, (1, 1, 0)) == set()


def test_is_monotone():
    assert is_monotone(truth_table(fixture("and_tree(3)")))
    assert not is_monotone(XOR2)


def test_dt_depth_oracles():
    assert dt_depth(truth_table(fixture("and_tree(4)"))).depth == 4
    xor3 = TruthTable(3, sum(1 << j for j in range(8) if bin(j).count("1") % 2))
    assert dt_depth(xor3).depth == 3
    addr1 = truth_table(fixture("addr(1)"))
    assert dt_depth(addr1).depth == 2
    assert dt_depth(TruthTable(3, 0)).depth == 0


def test_dt_depth_returns_an_optimal_tree():
    f = truth_table(fixture("addr(1)"))
    res = dt_depth(f)
    got = TruthTable.from_callable(f.num_vars, res.optimal_tree.evaluate)
    assert got == f
    assert res.optimal_tree.depth() == res.depth


def test_equivalent_pads_to_common_width():
    c1 = parse_netlist("INPUT x0\nOUTPUT x0\n")
    c2 = parse_netlist("INPUT x0\nINPUT x1\ng2 = AND x0 x0\nOUTPUT g2\n")
    assert equivalent(c1, c2)


def test_eval_cap_guard():
    big = GenSpec(seed=0, num_vars=30, size_budget=3, shape="CIRCUIT")
    c = generate(big)
    with pytest.raises(CapExceeded):
        truth_table(c)
