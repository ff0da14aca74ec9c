import pytest

from circuit_energy import (
    AND,
    CapExceeded,
    Circuit,
    DecisionTree,
    IncompatibleArity,
    INPUT,
    NOT,
    OR,
    TruthTable,
    VarOutOfRange,
    compile_truth_table,
    connector_merge,
    dt_to_circuit,
    energy_exhaustive,
    evaluate,
    fanin2_reduce,
    gate_masks,
    minterm_cascade,
    truth_table,
)
from circuit_energy.corpus import GenSpec, generate
from circuit_energy.ir import structural_stats
from circuit_energy.textio import parse_netlist


def negs_of(c):
    return sum(1 for g in c.gates if g.kind == NOT)


# --------------------------------------------------------------------------
# cascade


def test_cascade_taps_are_minterms():
    mc = minterm_cascade(3)
    masks = gate_masks(mc.circuit)
    for j, tap in enumerate(mc.taps):
        assert masks[tap] == 1 << j


def test_cascade_energy_peak():
    rep = energy_exhaustive(minterm_cascade(2).circuit)
    assert rep.ec == 3
    assert rep.argmax_input == (0, 0)


def test_cascade_single_variable_costs_one():
    assert energy_exhaustive(minterm_cascade(1).circuit).ec == 1


def test_cascade_rejects_bad_sizes():
    with pytest.raises(CapExceeded):
        minterm_cascade(0)
    with pytest.raises(CapExceeded):
        minterm_cascade(30)


# --------------------------------------------------------------------------
# truth-table compiler


def test_compile_xor_exact_energy():
    c = compile_truth_table(TruthTable(2, 0b0110))
    assert truth_table(c).bits == 0b0110
    assert energy_exhaustive(c).ec == 4


def test_compile_constants():
    for n, bits in [(0, 0), (0, 1), (2, 0), (2, 0b1111)]:
        c = compile_truth_table(TruthTable(n, bits))
        assert truth_table(c).padded(max(n, 1)).bits == TruthTable(n, bits).padded(max(n, 1)).bits


def test_compile_respects_cap():
    with pytest.raises(CapExceeded):
        compile_truth_table(TruthTable(13, 0), cap=12)


# --------------------------------------------------------------------------
# selector behaviour


def test_selector_fires_at_most_two_gates():
    # NOT(OR(AND(~x, f0), AND(x, f1))) with the feeders driven directly:
    # of the four fresh gates at most two fire for any (x, f0, f1)
    for x in (0, 1):
        for f0 in (0, 1):
            for f1 in (0, 1):
                a0 = (1 - x) & f0
                a1 = x & f1
                orr = a0 | a1
                sel = 1 - orr
                assert a0 + a1 + orr + sel <= 2


def test_connector_merge_semantics_and_negs():
    c0 = parse_netlist("INPUT x0\nINPUT x1\ng2 = NOT x0\nOUTPUT g2\n")
    c1 = parse_netlist("INPUT x0\nINPUT x1\ng2 = NOT x1\nOUTPUT g2\n")
    merged = connector_merge(c0, c1, 1)
    want = TruthTable.from_callable(2, lambda v: (1 - v[0]) if v[1] == 0 else (1 - v[1]))
    assert truth_table(merged) == want
    assert negs_of(merged) == 1 + max(negs_of(c0), negs_of(c1))


def test_connector_merge_rejects_mismatches():
    c0 = parse_netlist("INPUT x0\nOUTPUT x0\n")
    c1 = parse_netlist("INPUT x0\nINPUT x1\ng = AND x0 x1\nOUTPUT g\n")
    with pytest.raises(IncompatibleArity):
        connector_merge(c0, c1, 0)
    with pytest.raises(VarOutOfRange):
        connector_merge(c1, c1, 5)


# --------------------------------------------------------------------------
# decision-tree compiler


def tree_tt(n, root):
    return TruthTable.from_callable(n, DecisionTree(n, root).evaluate)


def check_compiled(root, n):
    tree = DecisionTree(n, root)
    d = tree.depth()
    res = dt_to_circuit(tree)
    c = res.circuit
    assert truth_table(c) == tree_tt(n, root)
    assert negs_of(c) <= d
    assert energy_exhaustive(c).ec <= 2 * d * d
    for g in c.gates:
        if g.kind == OR:
            assert len(g.children) == 2
            for ch in g.children:
                assert c.gates[ch].kind not in (INPUT, NOT)
        if g.kind == AND:
            assert len(g.children) <= d + 2
    return res


def test_compile_leaf_and_literal_trees():
    check_compiled(0, 2)
    check_compiled(1, 2)
    check_compiled((0, 0, 1), 2)  # plain literal
    check_compiled((0, 1, 0), 2)  # negated literal


def test_compile_both_sides_negated_literals():
    # depth 2 with two negated-literal branches: selector sharing keeps
    # the negation count at 2, not 3
    root = (0, (1, 1, 0), (2, 1, 0))
    res = check_compiled(root, 3)
    assert negs_of(res.circuit) <= 2


def test_compile_xor3():
    root = (0, (1, (2, 0, 1), (2, 1, 0)), (1, (2, 1, 0), (2, 0, 1)))
    check_compiled(root, 3)


def test_guard_map_points_at_literal_gates():
    root = (0, (1, 0, 1), (1, 1, 0))
    res = dt_to_circuit(DecisionTree(2, root))
    c = res.circuit
    for gid, guards in res.guards.items():
        assert c.gates[gid].kind == AND
        for lit in guards:
            assert lit in c.gates[gid].children


# --------------------------------------------------------------------------
# fan-in-2 expansion


def test_fanin2_reduce_equivalence_and_width():
    root = (0, (1, (2, 0, 1), 1), (1, 1, (2, 1, 0)))
    res = dt_to_circuit(DecisionTree(3, root))
    c2 = fanin2_reduce(res)
    assert c2.max_fanin() <= 2
    assert truth_table(c2) == tree_tt(3, root)
    d = res.tree_depth
    assert energy_exhaustive(c2).ec <= 2 * d * d * (d + 1)


def test_fanin2_on_random_trees():
    for s in range(40):
        tree = generate(GenSpec(seed=s, num_vars=6, size_budget=4, shape="DTREE"))
        res = dt_to_circuit(tree)
        c2 = fanin2_reduce(res)
        assert c2.max_fanin() <= 2
        assert truth_table(c2) == tree_tt(6, tree.root)
