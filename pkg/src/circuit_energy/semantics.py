"""Exhaustive semantics for circuits: evaluation traces, energy, firing
patterns, truth tables, positive sensitivity, monotonicity, and optimal
decision-tree depth.

Everything here sweeps the full input space, so every operation takes a cap on
the variable count (default 24 for plain sweeps, 5 for dt_depth) and raises
CapExceeded beyond it.  Truth tables and per-gate columns are stored as Python
int bitmasks over the 2^n little-endian input indices: bit j of the mask is
the value on the input whose i-th variable is bit i of j.  That keeps the
bulk sweeps in C (big-int bitwise ops / numpy unpackbits) instead of Python
loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, LengthMismatch
from .ir import AND, CONST, INPUT, NOT, OP_KINDS, OR, Circuit, DecisionTree

EVAL_CAP = 24  # exhaustive sweeps
DT_CAP = 5  # dt_depth's memoized recursion


def _check_cap(n: int, cap: int | None, default: int) -> None:
    limit = default if cap is None else cap
    if n > limit:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {limit}")


@lru_cache(maxsize=64)
def var_masks(n: int) -> tuple[int, ...]:
    """Bitmask of each variable's column over all 2^n inputs.

    Variable i reads 1 exactly on the inputs whose index has bit i set, i.e.
    blocks of 2^i zeros then 2^i ones, repeated.
    """
    total = 1 << n
    masks = []
    for i in range(n):
        period = 1 << (i + 1)
        block = ((1 << (1 << i)) - 1) << (1 << i)  # one period: low half 0s
        reps = ((1 << total) - 1) // ((1 << period) - 1)
        masks.append(block * reps)
    return tuple(masks)


def gate_masks(circuit: Circuit, cap: int | None = None) -> list[int]:
    """Truth-table bitmask of every gate, in gate order (whole gate list, not
    just the output cone — multi-tap circuits rely on this)."""
    n = circuit.num_vars
    _check_cap(n, cap, EVAL_CAP)
    full = (1 << (1 << n)) - 1
    vm = var_masks(n)
    masks: list[int] = []
    for g in circuit.gates:
        k = g.kind
        if k == INPUT:
            masks.append(vm[g.arg])
        elif k == CONST:
            masks.append(full if g.arg else 0)
        elif k == NOT:
            masks.append(full ^ masks[g.children[0]])
        elif k == AND:
            m = masks[g.children[0]]
            for c in g.children[1:]:
                m &= masks[c]
            masks.append(m)
        else:  # OR
            m = masks[g.children[0]]
            for c in g.children[1:]:
                m |= masks[c]
            masks.append(m)
    return masks


# --------------------------------------------------------------------------
# truth tables


class TruthTable:
    """A Boolean function as an int bitmask: bit j = f(input j), little-endian."""

    __slots__ = ("num_vars", "bits")

    def __init__(self, num_vars: int, bits: int) -> None:
        if num_vars < 0:
            raise LengthMismatch(f"numVars must be >= 0, got {num_vars}")
        full = (1 << (1 << num_vars)) - 1
        if not 0 <= bits <= full:
            raise LengthMismatch(f"table value outside the 2^{1 << num_vars}-bit range")
        self.num_vars = num_vars
        self.bits = bits

    @classmethod
    def from_values(cls, num_vars: int, values) -> "TruthTable":
        vals = list(values)
        if len(vals) != 1 << num_vars:
            raise LengthMismatch(
                f"expected {1 << num_vars} values for n={num_vars}, got {len(vals)}"
            )
        bits = 0
        for j, v in enumerate(vals):
            if v:
                bits |= 1 << j
        return cls(num_vars, bits)

    @classmethod
    def from_callable(cls, num_vars: int, fn) -> "TruthTable":
        bits = 0
        for j in range(1 << num_vars):
            x = tuple((j >> i) & 1 for i in range(num_vars))
            if fn(x):
                bits |= 1 << j
        return cls(num_vars, bits)

    def value(self, index: int) -> int:
        return (self.bits >> index) & 1

    def value_at(self, x) -> int:
        if len(x) != self.num_vars:
            raise LengthMismatch(f"input length {len(x)} != n={self.num_vars}")
        index = 0
        for i, b in enumerate(x):
            if b:
                index |= 1 << i
        return self.value(index)

    def bitstring(self) -> str:
        return "".join(str(self.value(j)) for j in range(1 << self.num_vars))

    def padded(self, num_vars: int) -> "TruthTable":
        """View the same function over a larger variable set (tiled table)."""
        if num_vars < self.num_vars:
            raise LengthMismatch("cannot pad to fewer variables")
        # each extra variable doubles the table by tiling
        bits = self.bits
        size = 1 << self.num_vars
        for _ in range(num_vars - self.num_vars):
            bits = bits | (bits << size)
            size <<= 1
        return TruthTable(num_vars, bits)

    def cofactor(self, var: int, bit: int) -> "TruthTable":
        """Restrict x_var := bit; the result no longer depends on x_var."""
        if not 0 <= var < self.num_vars:
            raise LengthMismatch(f"x{var} out of range")
        p1 = var_masks(self.num_vars)[var]
        shift = 1 << var
        if bit:
            high = self.bits & p1
            bits = high | (high >> shift)
        else:
            low = self.bits & (~p1)
            bits = low | (low << shift)
        return TruthTable(self.num_vars, bits)

    def depends_on(self, var: int) -> bool:
        return self.cofactor(var, 0).bits != self.cofactor(var, 1).bits

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << (1 << self.num_vars)) - 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruthTable)
            and self.num_vars == other.num_vars
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.num_vars, self.bits))

    def __repr__(self) -> str:
        if self.num_vars <= 4:
            return f"TruthTable(n={self.num_vars}, {self.bitstring()})"
        return f"TruthTable(n={self.num_vars}, ones={bin(self.bits).count('1')})"


def truth_table(circuit: Circuit, cap: int | None = None) -> TruthTable:
    return TruthTable(circuit.num_vars, gate_masks(circuit, cap)[circuit.output])


def equivalent(c1: Circuit, c2: Circuit, cap: int | None = None) -> bool:
    """Truth-table equality over max(n1, n2) variables (smaller table tiled)."""
    n = max(c1.num_vars, c2.num_vars)
    return truth_table(c1, cap).padded(n) == truth_table(c2, cap).padded(n)


# --------------------------------------------------------------------------
# evaluation traces and energy


@dataclass(slots=True)
class EvalTrace:
    input: tuple
    gate_values: tuple  # all gates, in id order (INPUT and CONST included)
    value: int
    energy: int  # firing NOT/AND/OR gates (INPUT and CONST never count)


def evaluate(circuit: Circuit, x) -> EvalTrace:
    x = tuple(int(b) for b in x)
    if len(x) != circuit.num_vars:
        raise LengthMismatch(
            f"input length {len(x)} != numVars {circuit.num_vars}"
        )
    if any(b not in (0, 1) for b in x):
        raise LengthMismatch("input must be a 0/1 vector")
    vals: list[int] = []
    energy = 0
    for g in circuit.gates:
        k = g.kind
        if k == INPUT:
            v = x[g.arg]
        elif k == CONST:
            v = g.arg
        elif k == NOT:
            v = 1 - vals[g.children[0]]
        elif k == AND:
            v = 1
            for c in g.children:
                if not vals[c]:
                    v = 0
                    break
        else:  # OR
            v = 0
            for c in g.children:
                if vals[c]:
                    v = 1
                    break
        if v and k in OP_KINDS:
            energy += v
        vals.append(v)
    return EvalTrace(x, tuple(vals), vals[circuit.output], energy)


@dataclass(slots=True)
class EnergyReport:
    ec: int
    argmax_input: tuple


# byte-spread table: 8 mask bits -> 8 little-endian byte lanes
_SPREAD8 = tuple(
    int.from_bytes(bytes((b >> i) & 1 for i in range(8)), "little")
    for b in range(256)
)


def _spread(mask: int, nbytes: int) -> int:
    """Place bit j of ``mask`` into byte lane j of an nbytes-wide integer."""
    out = 0
    shift = 0
    while mask:
        out |= _SPREAD8[mask & 0xFF] << shift
        mask >>= 8
        shift += 64
    return out


def energy_bytes(circuit: Circuit, cap: int | None = None) -> bytes:
    """Per-input energy as one byte per input (requires < 256 op gates and
    n <= 16; the hot path for small exhaustive sweeps)."""
    n = circuit.num_vars
    if n > 16:
        raise CapExceeded("energy_bytes handles n <= 16")
    masks = gate_masks(circuit, cap)
    op_masks = [m for g, m in zip(circuit.gates, masks) if g.kind in OP_KINDS]
    if len(op_masks) > 255:
        raise CapExceeded("energy_bytes handles < 256 op gates")
    total = 1 << n
    nbytes = max(total, 1)
    acc = 0
    for m in op_masks:
        acc += _spread(m, nbytes)
    return acc.to_bytes(nbytes, "little")


def energies(circuit: Circuit, cap: int | None = None) -> np.ndarray:
    """Per-input energy over all 2^n inputs as a numpy uint32 array."""
    n = circuit.num_vars
    _check_cap(n, cap, EVAL_CAP)
    if n <= 16 and sum(1 for g in circuit.gates if g.kind in OP_KINDS) < 256:
        return np.frombuffer(energy_bytes(circuit, cap), dtype=np.uint8).astype(
            np.uint32
        )
    masks = gate_masks(circuit, cap)
    op_masks = [m for g, m in zip(circuit.gates, masks) if g.kind in OP_KINDS]
    total = 1 << n
    acc = np.zeros(total, dtype=np.uint32)
    nbytes = max(1, total // 8) if total >= 8 else 1
    for m in op_masks:
        arr = np.frombuffer(m.to_bytes(nbytes, "little"), dtype=np.uint8)
        acc += np.unpackbits(arr, bitorder="little", count=total).astype(np.uint32)
    return acc


def energy_exhaustive(circuit: Circuit, cap: int | None = None) -> EnergyReport:
    """EC(C) with the first input (little-endian order) attaining it."""
    n = circuit.num_vars
    _check_cap(n, cap, EVAL_CAP)
    e = energies(circuit, cap)
    if len(e) == 0:  # unreachable: 2^n >= 1
        return EnergyReport(0, ())
    idx = int(e.argmax())
    return EnergyReport(int(e[idx]), tuple((idx >> i) & 1 for i in range(n)))


def firing_patterns(circuit: Circuit, cap: int | None = None) -> list[tuple]:
    """Distinct vectors of non-input gate values over all inputs, sorted.

    CONST gates are non-input gates and contribute their (constant) bit;
    pattern entries follow ascending gate id.
    """
    n = circuit.num_vars
    _check_cap(n, cap, EVAL_CAP)
    total = 1 << n
    masks = gate_masks(circuit, cap)
    rows = [
        np.unpackbits(
            np.frombuffer(m.to_bytes(max(1, total // 8) if total >= 8 else 1, "little"), dtype=np.uint8),
            bitorder="little",
            count=total,
        )
        for g, m in zip(circuit.gates, masks)
        if g.kind != INPUT
    ]
    if not rows:
        return [()]
    matrix = np.vstack(rows).T  # inputs x gates
    uniq = np.unique(matrix, axis=0)
    return [tuple(int(v) for v in row) for row in uniq]


# --------------------------------------------------------------------------
# positive sensitivity


@dataclass(slots=True)
class PsensReport:
    value: int
    witness_input: tuple
    witness_indices: set


def psens_at(f: TruthTable, a) -> set:
    """Indices i with a_i = 1 whose flip changes f(a)."""
    if len(a) != f.num_vars:
        raise LengthMismatch(f"input length {len(a)} != n={f.num_vars}")
    base = f.value_at(a)
    out = set()
    for i, b in enumerate(a):
        if b:
            flipped = list(a)
            flipped[i] = 0
            if f.value_at(flipped) != base:
                out.add(i)
    return out


def psens(f: TruthTable, cap: int | None = None) -> PsensReport:
    """max over a of |{i : a_i = 1, f(a xor e_i) != f(a)}|, with a witness."""
    n = f.num_vars
    _check_cap(n, cap, EVAL_CAP)
    total = 1 << n
    nbytes = max(1, total // 8) if total >= 8 else 1
    x = np.unpackbits(
        np.frombuffer(f.bits.to_bytes(nbytes, "little"), dtype=np.uint8),
        bitorder="little",
        count=total,
    )
    counts = np.zeros(total, dtype=np.uint32)
    idx = np.arange(total)
    for i in range(n):
        partner = x[idx ^ (1 << i)]
        has_one = ((idx >> i) & 1).astype(np.uint8)
        counts += ((x != partner) & (has_one == 1)).astype(np.uint32)
    if total == 0:
        return PsensReport(0, (), set())
    best = int(counts.argmax())
    witness = tuple(int((best >> i) & 1) for i in range(n))
    return PsensReport(int(counts[best]), witness, psens_at(f, witness))


def is_monotone(f: TruthTable, cap: int | None = None) -> bool:
    """Check f(x) <= f(y) along every single-bit-increase edge."""
    _check_cap(f.num_vars, cap, EVAL_CAP)
    for i in range(f.num_vars):
        f0 = f.cofactor(i, 0).bits
        f1 = f.cofactor(i, 1).bits
        if f0 & ~f1:
            return False
    return True


# --------------------------------------------------------------------------
# optimal decision-tree depth


@dataclass(slots=True)
class DtDepthResult:
    depth: int
    optimal_tree: DecisionTree


def dt_depth(f: TruthTable, cap: int | None = None) -> DtDepthResult:
    """Exact DT(f) by memoized recursion, with one optimal tree.

    Cofactoring canonicalizes the subfunction (the table becomes independent
    of the fixed variable), so the memo key is the table bitmask alone.
    Ties break toward the smallest variable index; only support variables are
    branched on.
    """
    n = f.num_vars
    _check_cap(n, cap, DT_CAP)
    full = (1 << (1 << n)) - 1
    memo: dict[int, tuple[int, int | None]] = {}

    def solve(bits: int) -> int:
        if bits == 0 or bits == full:
            return 0
        hit = memo.get(bits)
        if hit is not None:
            return hit[0]
        t = TruthTable(n, bits)
        best_d, best_v = 1 << 30, None
        for i in range(n):
            lo, hi = t.cofactor(i, 0).bits, t.cofactor(i, 1).bits
            if lo == hi:
                continue
            d = 1 + max(solve(lo), solve(hi))
            if d < best_d:
                best_d, best_v = d, i
        memo[bits] = (best_d, best_v)
        return best_d

    def rebuild(bits: int):
        if bits == 0:
            return 0
        if bits == full:
            return 1
        _, v = memo[bits]
        t = TruthTable(n, bits)
        return (v, rebuild(t.cofactor(v, 0).bits), rebuild(t.cofactor(v, 1).bits))

    depth = solve(f.bits)
    return DtDepthResult(depth, DecisionTree(n, rebuild(f.bits)))
