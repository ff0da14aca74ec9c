"""Circuit intermediate representation.

A circuit is a topologically ordered list of gates over the basis
{AND, OR, NOT} plus INPUT and CONST sources.  Gate ids are dense and 0-based
and equal the gate's position in the list; children always point backwards.
Evaluation-order things (energy, truth tables) live in ``semantics``; this
module owns the data model, validation, and structural surgery
(restrict / substitute_leaf / structural_stats).

Conventions used throughout the package:

* input vectors are tuples/lists of 0/1, index ``i`` is variable ``x_i``;
* the integer encoding of an input is little-endian: bit ``i`` of the index
  is ``x_i``;
* ``size`` counts AND/OR/NOT gates only — INPUT and CONST gates are free,
  and CONST gates never contribute energy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

from .errors import (
    ArityViolation,
    CycleOrForwardRef,
    DuplicateInputVar,
    NotAFormula,
    ParseError,
    UnknownGateRef,
    VarOutOfRange,
)

# --------------------------------------------------------------------------
# gates

INPUT = "INPUT"
CONST = "CONST"
NOT = "NOT"
AND = "AND"
OR = "OR"

#: kinds that carry no children and produce a value on their own
SOURCE_KINDS = (INPUT, CONST)
#: kinds that count toward size() and can spend energy
OP_KINDS = (NOT, AND, OR)


class Gate(NamedTuple):
    """One gate.  ``arg`` is the variable index for INPUT, the bit for CONST,
    and unused otherwise."""

    kind: str
    children: tuple[int, ...] = ()
    arg: int = 0


def input_gate(var: int) -> Gate:
    return Gate(INPUT, (), var)


def const_gate(bit: int) -> Gate:
    return Gate(CONST, (), bit)


def not_gate(child: int) -> Gate:
    return Gate(NOT, (child,))


def and_gate(*children: int) -> Gate:
    return Gate(AND, tuple(children))


def or_gate(*children: int) -> Gate:
    return Gate(OR, tuple(children))


# --------------------------------------------------------------------------
# fan-in modes


@dataclass(frozen=True, slots=True)
class FaninMode:
    kind: str  # "FANIN2" | "BOUNDED" | "UNBOUNDED"
    cap: int | None = None

    def limit(self) -> int | None:
        """Maximum allowed AND/OR fan-in, or None if unbounded."""
        if self.kind == "FANIN2":
            return 2
        if self.kind == "BOUNDED":
            return self.cap
        return None

    def __str__(self) -> str:
        if self.kind == "BOUNDED":
            return f"BOUNDED({self.cap})"
        return self.kind


FANIN2 = FaninMode("FANIN2")
UNBOUNDED = FaninMode("UNBOUNDED")


def bounded(cap: int) -> FaninMode:
    if cap < 2:
        raise ArityViolation(f"fan-in bound must be >= 2, got {cap}")
    return FaninMode("BOUNDED", cap)


def parse_fanin_mode(text: str) -> FaninMode:
    text = text.strip()
    if text == "FANIN2":
        return FANIN2
    if text == "UNBOUNDED":
        return UNBOUNDED
    if text.startswith("BOUNDED(") and text.endswith(")"):
        return bounded(int(text[len("BOUNDED(") : -1]))
    raise ValueError(f"bad fan-in mode {text!r}")


# --------------------------------------------------------------------------
# circuits


class Circuit:
    """A topologically ordered gate list with a designated output.

    ``gates[i]`` has id ``i``; children of gate ``i`` are all ``< i``.  At most
    one INPUT gate per variable (formulas relax this, see :class:`Formula`).
    Construction validates by default; internal builders that construct gates
    in bulk pass ``validate=False`` and the test suite re-validates.
    """

    __slots__ = ("num_vars", "gates", "output", "fanin_mode")

    def __init__(
        self,
        num_vars: int,
        gates: Iterable[Gate],
        output: int,
        fanin_mode: FaninMode = UNBOUNDED,
        *,
        validate: bool = True,
    ) -> None:
        self.num_vars = num_vars
        self.gates = tuple(gates)
        self.output = output
        self.fanin_mode = fanin_mode
        if validate:
            self.validate()

    # -- validation -------------------------------------------------------

    def validate(self, *, allow_duplicate_inputs: bool = False) -> None:
        if self.num_vars < 0:
            raise VarOutOfRange(f"numVars must be >= 0, got {self.num_vars}")
        n_gates = len(self.gates)
        limit = self.fanin_mode.limit()
        seen_vars: set[int] = set()
        for gid, g in enumerate(self.gates):
            for c in g.children:
                if c < 0 or c >= n_gates:
                    raise UnknownGateRef(f"gate {gid} references missing gate {c}")
                if c >= gid:
                    raise CycleOrForwardRef(
                        f"gate {gid} references gate {c} at or after itself"
                    )
            if g.kind == INPUT:
                if g.children:
                    raise ArityViolation(f"INPUT gate {gid} has children")
                if not 0 <= g.arg < self.num_vars:
                    raise VarOutOfRange(
                        f"gate {gid}: variable x{g.arg} out of range for n={self.num_vars}"
                    )
                if g.arg in seen_vars and not allow_duplicate_inputs:
                    raise DuplicateInputVar(f"variable x{g.arg} has two INPUT gates")
                seen_vars.add(g.arg)
            elif g.kind == CONST:
                if g.children:
                    raise ArityViolation(f"CONST gate {gid} has children")
                if g.arg not in (0, 1):
                    raise ArityViolation(f"CONST gate {gid} holds non-bit {g.arg!r}")
            elif g.kind == NOT:
                if len(g.children) != 1:
                    raise ArityViolation(
                        f"NOT gate {gid} has {len(g.children)} children, wants 1"
                    )
            elif g.kind in (AND, OR):
                if len(g.children) < 2:
                    raise ArityViolation(
                        f"{g.kind} gate {gid} has {len(g.children)} children, wants >= 2"
                    )
                if limit is not None and len(g.children) > limit:
                    raise ArityViolation(
                        f"{g.kind} gate {gid} has fan-in {len(g.children)}, "
                        f"mode {self.fanin_mode} allows {limit}"
                    )
            else:
                raise ArityViolation(f"gate {gid} has unknown kind {g.kind!r}")
        if not 0 <= self.output < n_gates:
            raise UnknownGateRef(f"output points at missing gate {self.output}")

    # -- small structural helpers -----------------------------------------

    def consumers(self) -> list[list[int]]:
        """For each gate, the ids of gates that list it as a child."""
        out: list[list[int]] = [[] for _ in self.gates]
        for gid, g in enumerate(self.gates):
            for c in g.children:
                out[c].append(gid)
        return out

    def input_gate_ids(self) -> dict[int, int]:
        """Map variable index -> id of its INPUT gate (first one if duplicated)."""
        m: dict[int, int] = {}
        for gid, g in enumerate(self.gates):
            if g.kind == INPUT and g.arg not in m:
                m[g.arg] = gid
        return m

    def max_fanin(self) -> int:
        """Largest AND/OR fan-in present (1 if only NOTs, 0 if no op gates)."""
        best = 0
        for g in self.gates:
            if g.kind in (AND, OR):
                best = max(best, len(g.children))
            elif g.kind == NOT:
                best = max(best, 1)
        return best

    def __repr__(self) -> str:
        return (
            f"Circuit(n={self.num_vars}, gates={len(self.gates)}, "
            f"output=g{self.output}, mode={self.fanin_mode})"
        )


class Formula(Circuit):
    """A circuit whose non-output gates each feed exactly one gate.

    Leaves are INPUT gates; a variable that occurs in several leaves gets one
    INPUT gate per occurrence, so the one-INPUT-per-variable rule is relaxed.
    ``leaves()`` is the leaf-count L (CONST leaves do not count).
    """

    __slots__ = ()

    def __init__(
        self,
        num_vars: int,
        gates: Iterable[Gate],
        output: int,
        fanin_mode: FaninMode = UNBOUNDED,
        *,
        validate: bool = True,
    ) -> None:
        super().__init__(num_vars, gates, output, fanin_mode, validate=False)
        if validate:
            self.validate()

    def validate(self, *, allow_duplicate_inputs: bool = True) -> None:
        super().validate(allow_duplicate_inputs=True)
        fanout = [0] * len(self.gates)
        for g in self.gates:
            for c in g.children:
                fanout[c] += 1
        for gid, k in enumerate(fanout):
            if gid == self.output:
                if k != 0:
                    raise NotAFormula(f"output gate g{gid} feeds {k} gates")
            elif k != 1:
                raise NotAFormula(
                    f"gate g{gid} feeds {k} gates; a formula gate feeds exactly 1"
                )

    def leaves(self) -> int:
        return sum(1 for g in self.gates if g.kind == INPUT)

    def __repr__(self) -> str:
        return (
            f"Formula(n={self.num_vars}, gates={len(self.gates)}, "
            f"leaves={self.leaves()}, output=g{self.output})"
        )


def as_formula(circuit: Circuit) -> Formula:
    """Reinterpret a circuit as a formula (validates tree shape)."""
    return Formula(
        circuit.num_vars, circuit.gates, circuit.output, circuit.fanin_mode
    )


# --------------------------------------------------------------------------
# structural stats


@dataclass(slots=True)
class StructuralStats:
    size: int  # AND/OR/NOT gates
    depth: int  # longest output-to-source path, in edges
    negs: int  # NOT gates
    leaves: int  # INPUT gates (for formulas this is L)
    max_fanin: int


def structural_stats(circuit: Circuit) -> StructuralStats:
    size = negs = leaves = 0
    depth = [0] * len(circuit.gates)
    for gid, g in enumerate(circuit.gates):
        if g.kind == INPUT:
            leaves += 1
        elif g.kind != CONST:
            size += 1
            if g.kind == NOT:
                negs += 1
        if g.children:
            depth[gid] = 1 + max(depth[c] for c in g.children)
    return StructuralStats(
        size=size,
        depth=depth[circuit.output] if circuit.gates else 0,
        negs=negs,
        leaves=leaves,
        max_fanin=circuit.max_fanin(),
    )


# --------------------------------------------------------------------------
# restriction (with constant folding) and leaf substitution


def restrict(circuit: Circuit, assignment: dict[int, int]) -> Circuit:
    """Pin variables to constants, fold forced gates, drop dead gates.

    Folding only rewrites gate *kinds*: an AND with one child forced to 1 and
    two live children keeps all three children (the forced one now points at a
    CONST gate) — pruning children would silently change arities.  Gates left
    outside the output cone are dropped and ids are remapped densely,
    preserving relative order.  ``numVars`` is unchanged, so the result is
    still a circuit over the original variable set (possibly with no INPUT
    gate for some variables).
    """
    for v in assignment:
        if not 0 <= v < circuit.num_vars:
            raise VarOutOfRange(f"cannot restrict x{v} in an n={circuit.num_vars} circuit")
    folded: list[Gate] = []
    # value[g] is 0/1 if gate g folded to a constant, else None
    value: list[int | None] = [None] * len(circuit.gates)
    for gid, g in enumerate(circuit.gates):
        if g.kind == INPUT and g.arg in assignment:
            b = assignment[g.arg]
            value[gid] = b
            folded.append(const_gate(b))
        elif g.kind == CONST:
            value[gid] = g.arg
            folded.append(g)
        elif g.kind == NOT:
            b = value[g.children[0]]
            if b is None:
                folded.append(g)
            else:
                value[gid] = 1 - b
                folded.append(const_gate(1 - b))
        elif g.kind in (AND, OR):
            forcing = 0 if g.kind == AND else 1
            vals = [value[c] for c in g.children]
            if forcing in vals:
                value[gid] = forcing
                folded.append(const_gate(forcing))
            elif all(v is not None for v in vals):
                value[gid] = 1 - forcing
                folded.append(const_gate(1 - forcing))
            else:
                folded.append(g)
        else:  # INPUT of an unassigned variable
            folded.append(g)

    # keep only the output cone (children of folded constants are cut)
    live = [False] * len(folded)
    stack = [circuit.output]
    while stack:
        gid = stack.pop()
        if live[gid]:
            continue
        live[gid] = True
        stack.extend(folded[gid].children)
    remap: dict[int, int] = {}
    kept: list[Gate] = []
    for gid, g in enumerate(folded):
        if not live[gid]:
            continue
        remap[gid] = len(kept)
        if g.children:
            g = Gate(g.kind, tuple(remap[c] for c in g.children), g.arg)
        kept.append(g)
    cls = Formula if isinstance(circuit, Formula) else Circuit
    return cls(
        circuit.num_vars, kept, remap[circuit.output], circuit.fanin_mode,
        validate=False,
    )


def substitute_leaf(formula: Formula, leaf_id: int, replacement: Formula) -> Formula:
    """Replace one INPUT leaf of a formula by a whole formula.

    The replacement's gates are spliced in at the leaf's position (its leaves
    keep their own variable indices, which must fit the host's ``numVars``).
    No folding happens; the result is a formula over
    ``max(host.numVars, replacement.numVars)`` variables.
    """
    if not 0 <= leaf_id < len(formula.gates):
        raise UnknownGateRef(f"no gate g{leaf_id}")
    if formula.gates[leaf_id].kind != INPUT:
        raise UnknownGateRef(f"g{leaf_id} is a {formula.gates[leaf_id].kind} gate, not a leaf")
    tree = formula_to_tree(formula)
    target = _tree_path_to(formula, leaf_id)
    new_tree = _tree_replace(tree, target, formula_to_tree(replacement))
    return formula_from_tree(
        new_tree,
        max(formula.num_vars, replacement.num_vars),
        fanin_mode=formula.fanin_mode,
    )


# --------------------------------------------------------------------------
# formulas as nested trees
#
# Tree nodes are plain tuples: ("var", v), ("const", b), ("not", t),
# ("and", [t, ...]), ("or", [t, ...]).  They make formula surgery (GK-style
# decompositions, leaf substitution) easy to get right; ``formula_from_tree``
# lays the result back out in dense post-order.

TreeNode = Union[tuple]


def formula_to_tree(formula: Formula, root: int | None = None):
    g = formula.gates[formula.output if root is None else root]
    if g.kind == INPUT:
        return ("var", g.arg)
    if g.kind == CONST:
        return ("const", g.arg)
    if g.kind == NOT:
        return ("not", formula_to_tree(formula, g.children[0]))
    return (g.kind.lower(), [formula_to_tree(formula, c) for c in g.children])


def formula_from_tree(tree, num_vars: int, fanin_mode: FaninMode = UNBOUNDED) -> Formula:
    gates: list[Gate] = []

    def build(t) -> int:
        tag = t[0]
        if tag == "var":
            gates.append(input_gate(t[1]))
        elif tag == "const":
            gates.append(const_gate(t[1]))
        elif tag == "not":
            gates.append(not_gate(build(t[1])))
        elif tag in ("and", "or"):
            kids = tuple(build(c) for c in t[1])
            gates.append(Gate(AND if tag == "and" else OR, kids))
        else:
            raise ValueError(f"bad tree node {t!r}")
        return len(gates) - 1

    out = build(tree)
    return Formula(num_vars, gates, out, fanin_mode, validate=False)


def _tree_path_to(formula: Formula, target: int) -> tuple[int, ...]:
    """Child-index path from the output gate down to ``target``."""
    parent: dict[int, tuple[int, int]] = {}
    for gid, g in enumerate(formula.gates):
        for slot, c in enumerate(g.children):
            parent[c] = (gid, slot)
    path: list[int] = []
    gid = target
    while gid != formula.output:
        if gid not in parent:
            raise UnknownGateRef(f"g{target} is not in the output cone")
        gid, slot = parent[gid]
        path.append(slot)
    path.reverse()
    return tuple(path)


def _tree_replace(tree, path: tuple[int, ...], replacement):
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    tag = tree[0]
    if tag == "not":
        return ("not", _tree_replace(tree[1], rest, replacement))
    kids = list(tree[1])
    kids[head] = _tree_replace(kids[head], rest, replacement)
    return (tag, kids)


# --------------------------------------------------------------------------
# decision trees
#
# A node is either a leaf 0/1 (plain int) or a tuple (var, low, high); ``low``
# is taken when the variable reads 0.  Kept deliberately lightweight — some
# corpora enumerate hundreds of thousands of trees.

DTNode = Union[int, tuple]


class DecisionTree:
    __slots__ = ("num_vars", "root")

    def __init__(self, num_vars: int, root: DTNode, *, validate: bool = True) -> None:
        self.num_vars = num_vars
        self.root = root
        if validate:
            self.validate()

    def validate(self) -> None:
        def walk(node, seen: frozenset) -> None:
            if isinstance(node, int):
                if node not in (0, 1):
                    raise ParseError(f"leaf must be 0/1, got {node!r}")
                return
            var, low, high = node
            if not 0 <= var < self.num_vars:
                raise VarOutOfRange(f"x{var} out of range for n={self.num_vars}")
            if var in seen:
                raise VarOutOfRange(f"x{var} repeats along a path; tree is not reduced")
            walk(low, seen | {var})
            walk(high, seen | {var})

        walk(self.root, frozenset())

    def depth(self) -> int:
        return dt_depth_of(self.root)

    def evaluate(self, x) -> int:
        node = self.root
        while not isinstance(node, int):
            var, low, high = node
            node = high if x[var] else low
        return node

    def __repr__(self) -> str:
        return f"DecisionTree(n={self.num_vars}, depth={self.depth()})"


def dt_depth_of(node: DTNode) -> int:
    if isinstance(node, int):
        return 0
    return 1 + max(dt_depth_of(node[1]), dt_depth_of(node[2]))
