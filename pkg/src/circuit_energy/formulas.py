"""Formula-level energy results: restriction stability, the block
decomposition that confines negations to a small skeleton, the read-once
leaf-negated exact value, and the mean-energy floor for skew-free formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonLeafNegation, NotReadOnce, RootNotAllowed
from .ir import (
    AND,
    INPUT,
    NOT,
    OR,
    Formula,
    Gate,
    UNBOUNDED,
    const_gate,
    formula_from_tree,
    formula_to_tree,
    input_gate,
    not_gate,
    structural_stats,
    _tree_path_to,
    _tree_replace,
)
from .semantics import energies, energy_exhaustive, evaluate, gate_masks


# --------------------------------------------------------------------------
# restriction stability: EC(D|b) <= EC(D) + Depth(D)


@dataclass(slots=True)
class RestrictionReport:
    ec_restricted: int
    ec: int
    depth: int
    holds: bool
    restricted: Formula


def restriction_energy_check(
    formula: Formula, gate_id: int, bit: int, cap: int | None = None
) -> RestrictionReport:
    """Replace the subtree rooted at ``gate_id`` by the constant ``bit`` and
    compare energies.  The restricted formula can spend at most Depth(D) more
    than the original: forcing a subtree constant only re-routes firing along
    the single root path.
    """
    if gate_id == formula.output:
        raise RootNotAllowed("restricting at the output leaves no formula")
    path = _tree_path_to(formula, gate_id)
    tree = _tree_replace(formula_to_tree(formula), path, ("const", int(bit)))
    restricted = formula_from_tree(tree, formula.num_vars, formula.fanin_mode)
    ec_r = energy_exhaustive(restricted, cap).ec
    ec = energy_exhaustive(formula, cap).ec
    depth = structural_stats(formula).depth
    return RestrictionReport(ec_r, ec, depth, ec_r <= ec + depth, restricted)


# --------------------------------------------------------------------------
# block decomposition


@dataclass(slots=True)
class DecompositionResult:
    f_prime: Formula
    blocks: tuple[tuple[int, int], ...]  # inclusive gate-id ranges, negation-free
    skeleton_gates: tuple[int, ...]  # gates of f_prime outside every block
    block_count: int


def _negs(t) -> int:
    tag = t[0]
    if tag in ("var", "const"):
        return 0
    if tag == "not":
        return 1 + _negs(t[1])
    return sum(_negs(c) for c in t[1])


def _gk(t):
    """Rewrite a formula tree into blocks (negation-free subformulas, marked
    ``("block", sub)``) glued by a skeleton of AND/OR/NOT nodes.

    When all negations live strictly below the root, the subtree F1 at their
    lowest common ancestor is split out by expanding the (monotone) context
    F2 around it:  F = F2[z := F1] = F2|z=0  OR  (F2|z=1 AND F1).  Both
    restrictions are negation-free, so they become blocks, and the recursion
    continues inside F1, whose root is a NOT or has two negation-carrying
    children.
    """
    if _negs(t) == 0:
        return ("block", t)
    path: list[int] = []
    cur = t
    while cur[0] != "not":
        negged = [i for i, c in enumerate(cur[1]) if _negs(c) > 0]
        if len(negged) != 1:
            break
        path.append(negged[0])
        cur = cur[1][negged[0]]
    if not path:
        if t[0] == "not":
            return ("not", _gk(t[1]))
        negged = sum(1 for c in t[1] if _negs(c) > 0)
        assert negged >= 2, "a one-sided root cannot be the negation LCA"
        return (t[0], [_gk(c) for c in t[1]])
    ctx0 = _tree_replace(t, tuple(path), ("const", 0))
    ctx1 = _tree_replace(t, tuple(path), ("const", 1))
    return ("or", [("block", ctx0), ("and", [("block", ctx1), _gk(cur)])])


def _emit_blocks(t, gates: list[Gate], blocks: list[tuple[int, int]]) -> int:
    tag = t[0]
    if tag == "block":
        start = len(gates)
        out = _emit_blocks(t[1], gates, blocks)
        blocks.append((start, len(gates) - 1))
        return out
    if tag == "var":
        gates.append(input_gate(t[1]))
    elif tag == "const":
        gates.append(const_gate(t[1]))
    elif tag == "not":
        gates.append(not_gate(_emit_blocks(t[1], gates, blocks)))
    else:
        kids = tuple(_emit_blocks(c, gates, blocks) for c in t[1])
        gates.append(Gate(AND if tag == "and" else OR, kids))
    return len(gates) - 1


def decompose_gk(formula: Formula) -> DecompositionResult:
    """Equivalent formula built from negation-free blocks and a skeleton of
    at most 5*negs - 2 glue gates; each block occupies a contiguous gate-id
    range.  Leaves at most double.
    """
    marked = _gk(formula_to_tree(formula))
    gates: list[Gate] = []
    blocks: list[tuple[int, int]] = []
    out = _emit_blocks(marked, gates, blocks)
    f_prime = Formula(formula.num_vars, gates, out, UNBOUNDED, validate=False)
    in_block = set()
    for start, end in blocks:
        in_block.update(range(start, end + 1))
    skeleton = tuple(g for g in range(len(gates)) if g not in in_block)
    return DecompositionResult(f_prime, tuple(blocks), skeleton, len(blocks))


# --------------------------------------------------------------------------
# read-once formulas with negations only at the leaves


def _mask_bits(mask: int, size: int) -> np.ndarray:
    raw = mask.to_bytes((size + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size]


@dataclass(slots=True)
class ReadOnceReport:
    ec: int  # counting binary gates only; leaf NOTs are literal markers
    leaf_count: int
    equal: bool  # ec == leaf_count - 1
    witness_input: tuple


def readonce_leafneg_energy(formula: Formula, cap: int | None = None) -> ReadOnceReport:
    """Exact energy of a read-once formula whose negations sit directly on
    input leaves.  Negated leaves are literals, not gates, so only AND/OR
    firings count; the value always lands on leafCount - 1.
    """
    seen: set[int] = set()
    for g in formula.gates:
        if g.kind == INPUT:
            if g.arg in seen:
                raise NotReadOnce(f"x{g.arg} appears more than once")
            seen.add(g.arg)
        elif g.kind == NOT:
            if formula.gates[g.children[0]].kind != INPUT:
                raise NonLeafNegation("negation above a non-leaf subformula")
    masks = gate_masks(formula, cap)
    size = 1 << formula.num_vars
    total = np.zeros(size, dtype=np.uint32)
    for gid, g in enumerate(formula.gates):
        if g.kind in (AND, OR):
            total += _mask_bits(masks[gid], size)
    peak = int(total.max())
    arg = int(np.argmax(total))
    witness = tuple((arg >> i) & 1 for i in range(formula.num_vars))
    leaves = formula.leaves()
    return ReadOnceReport(peak, leaves, peak == leaves - 1, witness)


# --------------------------------------------------------------------------
# skew-free mean energy


@dataclass(slots=True)
class NonSkewStats:
    t: int  # gates whose children are all leaves
    sample_count: int
    empirical_mean_energy: float
    lower_envelope: float  # t / 4
    exact_mean: float | None  # only for small variable counts
    exact_energy_total: int | None


def nonskew_energy_estimate(
    formula: Formula, samples: int = 1000, seed: int = 0
) -> NonSkewStats:
    """Monte-Carlo mean energy under uniform inputs, against the t/4 floor:
    every binary gate reading two leaves fires with probability >= 1/4, so
    the mean energy of a skew-free formula is at least t/4 where t counts
    its bottom gates.  For small formulas the exact mean is computed too.
    """
    n = formula.num_vars
    t = sum(
        1
        for g in formula.gates
        if g.kind in (AND, OR)
        and g.children
        and all(formula.gates[c].kind == INPUT for c in g.children)
    )
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, 1 << n, size=samples, dtype=np.uint64)
    exact_total: int | None = None
    exact_mean: float | None = None
    if n <= 12:
        table = energies(formula)
        drawn = table[idx]
        exact_total = int(table.sum(dtype=np.uint64))
        exact_mean = exact_total / (1 << n)
    else:
        drawn = np.array(
            [
                evaluate(formula, tuple((int(j) >> i) & 1 for i in range(n))).energy
                for j in idx
            ],
            dtype=np.uint32,
        )
    return NonSkewStats(
        t, samples, float(drawn.mean()), t / 4, exact_mean, exact_total
    )


# --------------------------------------------------------------------------
# convenience: headline numbers for one formula


@dataclass(slots=True)
class FormulaStats:
    leaves: int
    size: int
    depth: int
    negs: int
    ec: int
    argmax_input: tuple


def formula_stats(formula: Formula, cap: int | None = None) -> FormulaStats:
    s = structural_stats(formula)
    rep = energy_exhaustive(formula, cap)
    return FormulaStats(
        formula.leaves(), s.size, s.depth, s.negs, rep.ec, rep.argmax_input
    )


__all__ = [
    "RestrictionReport",
    "restriction_energy_check",
    "DecompositionResult",
    "decompose_gk",
    "ReadOnceReport",
    "readonce_leafneg_energy",
    "NonSkewStats",
    "nonskew_energy_estimate",
    "FormulaStats",
    "formula_stats",
]
