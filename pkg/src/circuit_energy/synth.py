"""Circuit constructions: the minterm cascade, the truth-table compiler, the
negation-sharing connector merge, the decision-tree-to-circuit compiler, and
the fan-in-2 reduction.

The merge and the tree compiler are easiest to get right over an identity-based
node graph (gates appear, get rewired, and die during negation elimination);
``_emit`` lays a finished graph back out as a dense topologically ordered
Circuit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, IncompatibleArity, VarOutOfRange
from .ir import (
    AND,
    CONST,
    FANIN2,
    INPUT,
    NOT,
    OR,
    UNBOUNDED,
    Circuit,
    DecisionTree,
    FaninMode,
    Gate,
    and_gate,
    bounded,
    const_gate,
    input_gate,
    not_gate,
    or_gate,
    restrict,
)

SYNTH_CAP = 24


# --------------------------------------------------------------------------
# node graph


class _Node:
    __slots__ = ("kind", "children", "arg", "guards")

    def __init__(self, kind: str, children=(), arg: int = 0) -> None:
        self.kind = kind
        self.children: list[_Node] = list(children)
        self.arg = arg
        # literal nodes appended during guard injection, innermost level first
        self.guards: list[_Node] = []

    def __repr__(self) -> str:  # debugging aid
        return f"_Node({self.kind}, kids={len(self.children)}, arg={self.arg})"


def _emit(root: _Node, num_vars: int, fanin_mode: FaninMode, cls=Circuit):
    """Lay a node graph out as a Circuit; returns (circuit, node-id -> gate id)."""
    gates: list[Gate] = []
    gid: dict[int, int] = {}

    def visit(node: _Node) -> int:
        key = id(node)
        got = gid.get(key)
        if got is not None:
            return got
        kids = tuple(visit(c) for c in node.children)
        gid[key] = g = len(gates)
        gates.append(Gate(node.kind, kids, node.arg))
        return g

    out = visit(root)
    return cls(num_vars, gates, out, fanin_mode, validate=False), gid


def _walk(root: _Node) -> list[_Node]:
    """All nodes under root, children-first, deduplicated, deterministic."""
    order: list[_Node] = []
    seen: set[int] = set()

    def visit(node: _Node) -> None:
        if id(node) in seen:
            return
        seen.add(id(node))
        for c in node.children:
            visit(c)
        order.append(node)

    visit(root)
    return order


def _replace_node(nodes: list[_Node], old: _Node, new: _Node) -> None:
    """Rewire every child/guard reference to ``old`` among ``nodes``."""
    for nd in nodes:
        for i, c in enumerate(nd.children):
            if c is old:
                nd.children[i] = new
        for i, g in enumerate(nd.guards):
            if g is old:
                nd.guards[i] = new


# --------------------------------------------------------------------------
# minterm cascade


@dataclass(slots=True)
class MintermCascade:
    circuit: Circuit  # multi-tap: all taps are live gates, output = top tap
    n: int
    taps: tuple[int, ...]  # gate id of the minterm for input j, little-endian


@lru_cache(maxsize=32)
def _cascade(n: int) -> MintermCascade:
    gates: list[Gate] = [input_gate(v) for v in range(n)]
    gates.append(not_gate(0))
    taps = [n, 0]  # [not x0, x0]
    for k in range(1, n):
        notk = len(gates)
        gates.append(not_gate(k))
        new_taps = [0] * (2 << k)
        for b in (0, 1):
            sel = k if b else notk
            for j, t in enumerate(taps):
                new_taps[j + (b << k)] = len(gates)
                gates.append(and_gate(t, sel))
        taps = new_taps
    circ = Circuit(n, gates, taps[-1], FANIN2, validate=False)
    return MintermCascade(circ, n, tuple(taps))


def minterm_cascade(n: int, cap: int | None = None) -> MintermCascade:
    """The shared-negation minterm generator: 2^n AND-chain taps, tap j firing
    exactly on input j; one NOT per variable, whole-circuit energy <= 2n-1."""
    if n < 1:
        raise CapExceeded(f"cascade needs n >= 1, got {n}")
    limit = SYNTH_CAP if cap is None else cap
    if n > limit:
        raise CapExceeded(f"n={n} exceeds the construction cap {limit}")
    return _cascade(n)


# --------------------------------------------------------------------------
# truth-table compiler

COMPILE_CAP = 12  # the circuit has 2^O(n) gates; keep it desk-scale


def compile_truth_table(f, cap: int | None = None) -> Circuit:
    """Compile any function into the cascade + balanced OR2 tree circuit.

    Leaf j of the OR tree is cascade tap j when f(j)=1 and a shared CONST 0
    otherwise, so on input v at most the cascade (<= 2n-1) plus the n ORs
    above tap v fire: EC <= 3n-1.
    """
    n = f.num_vars
    limit = COMPILE_CAP if cap is None else cap
    if n > limit:
        raise CapExceeded(f"n={n} exceeds the compile cap {limit}")
    if n == 0:
        return Circuit(0, [const_gate(f.bits & 1)], 0, FANIN2, validate=False)
    casc = minterm_cascade(n, cap)
    gates = list(casc.circuit.gates)
    const0 = None
    level: list[int] = []
    for j in range(1 << n):
        if f.value(j):
            level.append(casc.taps[j])
        else:
            if const0 is None:
                const0 = len(gates)
                gates.append(const_gate(0))
            level.append(const0)
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level), 2):
            nxt.append(len(gates))
            gates.append(or_gate(level[i], level[i + 1]))
        level = nxt
    return Circuit(n, gates, level[0], FANIN2, validate=False)


# --------------------------------------------------------------------------
# connector merge


def _clone_into(circuit: Circuit, X: dict[int, _Node]) -> list[_Node]:
    nodes: list[_Node] = []
    for g in circuit.gates:
        if g.kind == INPUT:
            nodes.append(X[g.arg])
        elif g.kind == CONST:
            nodes.append(_Node(CONST, arg=g.arg))
        else:
            nodes.append(_Node(g.kind, [nodes[c] for c in g.children]))
    return nodes


def _selector_steps(
    side_nodes: list[list[_Node]],
    side_roots: list[_Node],
    xi: _Node,
    not_xi: _Node,
) -> list[_Node]:
    """Run min(negs0, negs1) negation-elimination steps.

    Each step takes the topologically first remaining NOT of each side and
    replaces both with one shared selector NOT(OR(AND(~xi, f0), AND(xi, f1))),
    where f0/f1 are the two feeders.  On any input at most 2 of the 3 selector
    gates fire, and each step removes one negation net.  Returns the selector
    AND nodes created (they already contain their x_i literal and are exempt
    from this level's guard injection).
    """
    nots = [
        [nd for nd in side_nodes[0] if nd.kind == NOT],
        [nd for nd in side_nodes[1] if nd.kind == NOT],
    ]
    selector_ands: list[_Node] = []
    k = min(len(nots[0]), len(nots[1]))
    if k == 0:
        return selector_ands
    all_nodes = side_nodes[0] + side_nodes[1]
    for step in range(k):
        t0, t1 = nots[0][step], nots[1][step]
        f0, f1 = t0.children[0], t1.children[0]
        a0 = _Node(AND, [not_xi, f0])
        a1 = _Node(AND, [xi, f1])
        sel = _Node(NOT, [_Node(OR, [a0, a1])])
        selector_ands.extend((a0, a1))
        _replace_node(all_nodes, t0, sel)
        _replace_node(all_nodes, t1, sel)
        for s in (0, 1):
            if side_roots[s] is (t0 if s == 0 else t1):
                side_roots[s] = sel
        # later steps may need to rewire the selector's internals too
        all_nodes.extend((a0, a1, sel.children[0], sel))
    return selector_ands


def connector_merge(c0: Circuit, c1: Circuit, i: int) -> Circuit:
    """Merge two circuits into one computing (~x_i AND c0) OR (x_i AND c1)
    with negs = 1 + max(negs(c0), negs(c1)).

    Sides are pruned to their output cones first (dead negations would make
    the count meaningless).  min(negs0, negs1) selector steps each eliminate
    one NOT from each side in favour of one shared selector negation.
    """
    if c0.num_vars != c1.num_vars:
        raise IncompatibleArity(
            f"sides disagree on the variable set ({c0.num_vars} vs {c1.num_vars})"
        )
    if c0.fanin_mode.limit() is None or c1.fanin_mode.limit() is None:
        raise IncompatibleArity("connector merge wants fan-in bounded sides")
    n = c0.num_vars
    if not 0 <= i < n:
        raise VarOutOfRange(f"x{i} out of range for n={n}")
    c0 = restrict(c0, {})
    c1 = restrict(c1, {})
    X = {v: _Node(INPUT, arg=v) for v in range(n)}
    s0 = _clone_into(c0, X)
    s1 = _clone_into(c1, X)
    roots = [s0[c0.output], s1[c1.output]]
    not_xi = _Node(NOT, [X[i]])
    _selector_steps([s0, s1], roots, X[i], not_xi)
    top = _Node(OR, [_Node(AND, [not_xi, roots[0]]), _Node(AND, [X[i], roots[1]])])
    if c0.fanin_mode == FANIN2 and c1.fanin_mode == FANIN2:
        mode = FANIN2
    else:
        mode = bounded(max(c0.fanin_mode.limit(), c1.fanin_mode.limit(), 2))
    circuit, _ = _emit(top, n, mode)
    return circuit


# --------------------------------------------------------------------------
# decision tree -> circuit


@dataclass(slots=True)
class DtCompileResult:
    circuit: Circuit  # UNBOUNDED mode
    # per-AND ordered guard literal gate ids, innermost recursion level first;
    # a guard slot may point at a selector output once negation elimination
    # has consumed the original literal
    guards: dict[int, tuple[int, ...]]
    tree_depth: int


def dt_to_circuit(tree: DecisionTree) -> DtCompileResult:
    """Compile a reduced decision tree into a circuit with OR fan-in 2,
    AND fan-in <= depth+2, no OR fed by a literal, negs <= depth, and
    EC <= 2*depth^2.

    Recursion: a depth-d node becomes OR(L0, L1).  A constant-0 branch feeds
    the OR as CONST 0; a constant-1 or literal branch is wrapped as
    (guard AND branch); a deeper branch contributes its own OR top directly
    after (a) selector steps that pair up and eliminate negations across the
    two branches and (b) injection of the branch literal into every AND the
    branch brought along (this level's selector ANDs already carry it).
    """
    X: dict[int, _Node] = {}

    def var_node(v: int) -> _Node:
        nd = X.get(v)
        if nd is None:
            nd = X[v] = _Node(INPUT, arg=v)
        return nd

    def build(t) -> _Node:
        if isinstance(t, int):
            return _Node(CONST, arg=t)
        var, lo, hi = t
        if isinstance(lo, int) and isinstance(hi, int):
            if lo == hi:
                return _Node(CONST, arg=lo)
            if (lo, hi) == (0, 1):
                return var_node(var)
            return _Node(NOT, [var_node(var)])
        guard1 = var_node(var)
        guard0 = _Node(NOT, [guard1])
        sides = [build(lo), build(hi)]
        side_nodes = [_walk(sides[0]), _walk(sides[1])]
        # ANDs each side brought along, before this level adds its own
        side_ands = [
            [nd for nd in side_nodes[b] if nd.kind == AND] for b in (0, 1)
        ]
        _selector_steps(side_nodes, sides, guard1, guard0)
        legs: list[_Node] = []
        for b in (0, 1):
            r = sides[b]
            guard = guard0 if b == 0 else guard1
            if r.kind == CONST and r.arg == 0:
                legs.append(r)
            elif r.kind == OR:
                for a in side_ands[b]:
                    a.children.append(guard)
                    a.guards.append(guard)
                legs.append(r)
            else:  # literal, eliminated-negation selector, or CONST 1
                w = _Node(AND, [guard, r])
                w.guards.append(guard)
                legs.append(w)
        return _Node(OR, legs)

    root = build(tree.root)
    circuit, gid = _emit(root, tree.num_vars, UNBOUNDED)
    guards = {
        gid[id(nd)]: tuple(gid[id(g)] for g in nd.guards)
        for nd in _walk(root)
        if nd.kind == AND and nd.guards
    }
    return DtCompileResult(circuit, guards, tree.depth())


# --------------------------------------------------------------------------
# fan-in-2 reduction


def fanin2_reduce(result: DtCompileResult) -> Circuit:
    """Expand every wide AND of a compiled tree into a right-comb of AND2
    gates with the guard literals deepest (outermost level's literal at the
    very bottom), so a false guard zeroes the entire comb.  The output is an
    equivalent FANIN2 circuit with EC <= 2*d^2*(d+1)."""
    src = result.circuit
    gates: list[Gate] = []
    idmap: dict[int, int] = {}

    def comb(kind: str, ordered: list[int]) -> int:
        acc = len(gates)
        gates.append(Gate(kind, (ordered[-2], ordered[-1])))
        for c in reversed(ordered[:-2]):
            nxt = len(gates)
            gates.append(Gate(kind, (c, acc)))
            acc = nxt
        return acc

    for old_id, g in enumerate(src.gates):
        if g.kind in (AND, OR) and len(g.children) > 2:
            guard_ids = list(result.guards.get(old_id, ())) if g.kind == AND else []
            rest = list(g.children)
            for gd in guard_ids:
                rest.remove(gd)  # first occurrence; guards are distinct literals
            ordered = [idmap[c] for c in rest + guard_ids]
            idmap[old_id] = comb(g.kind, ordered)
        else:
            idmap[old_id] = len(gates)
            gates.append(Gate(g.kind, tuple(idmap[c] for c in g.children), g.arg))
    return Circuit(src.num_vars, gates, idmap[src.output], FANIN2, validate=False)
