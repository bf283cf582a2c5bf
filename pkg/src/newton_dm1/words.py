"""0/1 words classifying truncated Dieudonne modules of level one (DM1).

A word ``delta_1 ... delta_h`` is kept as a plain ``str`` over ``"01"``.
Positions are 1-based everywhere in the public API, matching the usual
``e_1, ..., e_h`` basis.

The module covers the F/V structure of a word, its (F, V^-1) permutation
and cycle decomposition, the periodic binary expansions used to merge
words into direct sums, and the elementary "01" -> "10" moves that
generate the combinatorial specialization order.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cmp_to_key, lru_cache, reduce, total_ordering
from itertools import product
from math import gcd
from typing import Iterable, Optional, Sequence

F = "F"
VINV = "Vinv"

LESS, EQUAL, GREATER = -1, 0, 1


class WordError(ValueError):
    """Raised for malformed words or out-of-range positions."""


class NoZeroOneError(WordError):
    """``minus`` was applied to a word of the form 1^u 0^v."""


def validate_word(w: str) -> str:
    if not isinstance(w, str) or any(c not in "01" for c in w):
        raise WordError(f"not a 0/1 word: {w!r}")
    return w


# ---------------------------------------------------------------------------
# F, V and the (F, V^-1) diagram
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FVStructure:
    """Images of the basis vectors under F and V (``None`` means 0)."""

    f_image: tuple[Optional[int], ...]
    v_image: tuple[Optional[int], ...]

    @property
    def height(self) -> int:
        return len(self.f_image)

    def ker_f(self) -> set[int]:
        return {i for i, t in enumerate(self.f_image, 1) if t is None}

    def im_f(self) -> set[int]:
        return {t for t in self.f_image if t is not None}

    def ker_v(self) -> set[int]:
        return {j for j, t in enumerate(self.v_image, 1) if t is None}

    def im_v(self) -> set[int]:
        return {t for t in self.v_image if t is not None}


def fv_structure(w: str) -> FVStructure:
    validate_word(w)
    v = w.count("0")
    f_image: list[Optional[int]] = []
    zeros = 0
    for c in w:
        if c == "0":
            zeros += 1
            f_image.append(zeros)
        else:
            f_image.append(None)
    ones = [i for i, c in enumerate(w, 1) if c == "1"]
    v_image = [None if j <= v else ones[j - v - 1] for j in range(1, len(w) + 1)]
    return FVStructure(tuple(f_image), tuple(v_image))


def check_dm1_axioms(s: FVStructure) -> bool:
    """Ker F = Im V and Im F = Ker V, as sets of basis indices."""
    return s.ker_f() == s.im_v() and s.im_f() == s.ker_v()


@dataclass(frozen=True)
class FVPermutation:
    """``succ[i-1]`` is the target of the unique arrow leaving position i;
    ``label[j-1]`` is the label of the arrow entering position j."""

    succ: tuple[int, ...]
    label: tuple[str, ...]

    def is_permutation(self) -> bool:
        return sorted(self.succ) == list(range(1, len(self.succ) + 1))

    def pred(self) -> tuple[int, ...]:
        inv = [0] * len(self.succ)
        for i, j in enumerate(self.succ, 1):
            inv[j - 1] = i
        return tuple(inv)


@lru_cache(maxsize=1 << 16)
def fv_permutation(w: str) -> FVPermutation:
    s = fv_structure(w)
    h = len(w)
    v = w.count("0")
    back_v = {t: j for j, t in enumerate(s.v_image, 1) if t is not None}
    succ = []
    for i, c in enumerate(w, 1):
        succ.append(s.f_image[i - 1] if c == "0" else back_v[i])
    label = tuple(F if j <= v else VINV for j in range(1, h + 1))
    return FVPermutation(tuple(succ), label)


@dataclass(frozen=True, order=True)
class CyclicWord:
    """One (F, V^-1) cycle of a word.

    ``word`` is the indecomposable summand it spans: the symbols of the
    parent word at ``positions``, read in position order.
    """

    word: str
    positions: tuple[int, ...] = field(default=(), compare=False)

    def __str__(self) -> str:
        return self.word


@lru_cache(maxsize=1 << 16)
def _cycles(w: str) -> tuple[tuple[int, ...], ...]:
    succ = fv_permutation(w).succ
    seen = [False] * (len(w) + 1)
    out = []
    for start in range(1, len(w) + 1):
        if seen[start]:
            continue
        orbit = []
        i = start
        while not seen[i]:
            seen[i] = True
            orbit.append(i)
            i = succ[i - 1]
        out.append(tuple(sorted(orbit)))
    return tuple(out)


def cycle_decomposition(w: str) -> list[CyclicWord]:
    """Cycles of the (F, V^-1) permutation, sorted by summand word."""
    validate_word(w)
    cycles = [CyclicWord("".join(w[i - 1] for i in pos), pos) for pos in _cycles(w)]
    return sorted(cycles, key=lambda c: (c.word, c.positions))


def cycle_words(w: str) -> list[str]:
    return [c.word for c in cycle_decomposition(w)]


# ---------------------------------------------------------------------------
# Periodic binary expansions and direct sums
# ---------------------------------------------------------------------------


def compare_b(x: "PeriodicBinary", y: "PeriodicBinary") -> int:
    """Exact comparison of two purely periodic expansions.

    Two periodic sequences with periods p and q that agree on their first
    p + q bits agree everywhere, so that prefix decides.
    """
    n = len(x.period) + len(y.period)
    a, b = x.prefix(n), y.prefix(n)
    return (a > b) - (a < b)


@total_ordering
@dataclass(frozen=True, eq=False)
class PeriodicBinary:
    """The number 0.(p_1 ... p_l) repeating, stored by its period."""

    period: str

    def __post_init__(self) -> None:
        if not self.period or any(c not in "01" for c in self.period):
            raise WordError(f"bad period {self.period!r}")

    def prefix(self, n: int) -> str:
        reps = -(-n // len(self.period))
        return (self.period * reps)[:n]

    def fraction(self):
        from fractions import Fraction

        ell = len(self.period)
        return Fraction(int(self.period, 2), 2**ell - 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PeriodicBinary):
            return NotImplemented
        return compare_b(self, other) == EQUAL

    def __lt__(self, other: "PeriodicBinary") -> bool:
        return compare_b(self, other) == LESS

    def __hash__(self) -> int:
        # primitive root of the period is rotation/repetition invariant for equal values
        p = self.period
        n = len(p)
        for d in range(1, n + 1):
            if n % d == 0 and p[:d] * (n // d) == p:
                return hash(p[:d])
        return hash(p)  # pragma: no cover

    def __str__(self) -> str:
        return f"0.({self.period})"


@lru_cache(maxsize=1 << 16)
def _b_periods(w: str) -> tuple[str, ...]:
    perm = fv_permutation(w)
    pred = perm.pred()
    cycles = _cycles(w)
    length = {}
    for pos in cycles:
        for i in pos:
            length[i] = len(pos)
    out = []
    for i in range(1, len(w) + 1):
        bits = []
        j = i
        for _ in range(length[i]):
            bits.append("0" if perm.label[j - 1] == F else "1")
            j = pred[j - 1]
        out.append("".join(bits))
    return tuple(out)


def b_expansion(w: str, i: int) -> PeriodicBinary:
    """Expansion read off the arrows entering position i, walking backwards
    through the diagram: F gives 0, V^-1 gives 1."""
    validate_word(w)
    if not 1 <= i <= len(w):
        raise WordError(f"position {i} out of range for word of length {len(w)}")
    return PeriodicBinary(_b_periods(w)[i - 1])


def _merge(words: Sequence[str]) -> str:
    items = []
    for w in words:
        validate_word(w)
        for c, p in zip(w, _b_periods(w)):
            items.append((PeriodicBinary(p), c))
    # sorted() is stable: ties keep operand order, left operand first
    items.sort(key=cmp_to_key(lambda s, t: compare_b(s[0], t[0])))
    return "".join(c for _, c in items)


@lru_cache(maxsize=1 << 16)
def direct_sum(a: str, b: str) -> str:
    return _merge((a, b))


def direct_sum_all(words: Iterable[str]) -> str:
    return reduce(direct_sum, words, "")


# ---------------------------------------------------------------------------
# Simple words, statistics, and word operations
# ---------------------------------------------------------------------------


def simple_word(m: int, n: int) -> str:
    if m < 0 or n < 0 or gcd(m, n) != 1:
        raise WordError(f"({m},{n}) is not a coprime pair of non-negative integers")
    return "1" * m + "0" * n


def length_ell(w: str) -> int:
    """Number of pairs i < j with delta_i = 0 and delta_j = 1."""
    validate_word(w)
    zeros = total = 0
    for c in w:
        if c == "0":
            zeros += 1
        else:
            total += zeros
    return total


def swap_at(w: str, s: int) -> str:
    """Replace the "01" at 1-based positions s, s+1 by "10"."""
    if w[s - 1 : s + 1] != "01":
        raise WordError(f"no '01' at position {s} of {w}")
    return w[: s - 1] + "10" + w[s + 1 :]


def minus(w: str) -> str:
    validate_word(w)
    k = w.find("01")
    if k < 0:
        raise NoZeroOneError(f"{w!r} has no adjacent '01'")
    return swap_at(w, k + 1)


def dual(w: str) -> str:
    validate_word(w)
    return w[::-1].translate(str.maketrans("01", "10"))


# ---------------------------------------------------------------------------
# Elementary moves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MoveWitness:
    """``before = q_before + P`` and ``after = q_after + P`` (direct sums),
    where ``q_after`` is ``q_before`` with the "01" at ``swap_index``
    (1-based) turned into "10"."""

    before: str
    after: str
    p_cycles: tuple[str, ...]
    q_before: str
    q_after: str
    swap_index: int

    def to_json(self) -> dict:
        return {
            "before": self.before,
            "after": self.after,
            "p_cycles": list(self.p_cycles),
            "q_before": self.q_before,
            "q_after": self.q_after,
            "swap_index": self.swap_index,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MoveWitness":
        return cls(
            before=obj["before"],
            after=obj["after"],
            p_cycles=tuple(obj["p_cycles"]),
            q_before=obj["q_before"],
            q_after=obj["q_after"],
            swap_index=int(obj["swap_index"]),
        )

    def lift(self, extra_cycles: Sequence[str]) -> "MoveWitness":
        """The same move with ``extra_cycles`` added to the untouched part."""
        p = tuple(sorted(self.p_cycles + tuple(extra_cycles)))
        return MoveWitness(
            before=direct_sum_all(p + (self.q_before,)),
            after=direct_sum_all(p + (self.q_after,)),
            p_cycles=p,
            q_before=self.q_before,
            q_after=self.q_after,
            swap_index=self.swap_index,
        )

    def dualize(self) -> "MoveWitness":
        # reverse-complement keeps the swap a "01" -> "10" swap, mirrored
        h = len(self.q_before)
        return MoveWitness(
            before=dual(self.before),
            after=dual(self.after),
            p_cycles=tuple(sorted(dual(c) for c in self.p_cycles)),
            q_before=dual(self.q_before),
            q_after=dual(self.q_after),
            swap_index=h - self.swap_index,
        )


def whole_word_move(w: str, s: int) -> MoveWitness:
    return MoveWitness(w, swap_at(w, s), (), w, swap_at(w, s), s)


def minus_move(w: str) -> MoveWitness:
    return whole_word_move(w, w.find("01") + 1)


def check_move(wit: MoveWitness) -> Optional[str]:
    """Return ``None`` if the witness is a valid elementary move, else a reason."""
    try:
        for w in (wit.before, wit.after, wit.q_before, wit.q_after, *wit.p_cycles):
            validate_word(w)
        s = wit.swap_index
        if not 1 <= s < len(wit.q_before):
            return f"swap_index {s} out of range"
        if swap_at(wit.q_before, s) != wit.q_after:
            return "q_after is not q_before with one '01' -> '10' swap"
    except WordError as exc:
        return str(exc)
    for c in wit.p_cycles:
        if len(_cycles(c)) != 1:
            return f"p-cycle {c} is not a single cycle"
    p = tuple(wit.p_cycles)
    if direct_sum_all(p + (wit.q_before,)) != wit.before:
        return "before != P + q_before"
    if direct_sum_all(p + (wit.q_after,)) != wit.after:
        return "after != P + q_after"
    cyc_before = Counter(cycle_words(wit.before))
    expected = Counter(cycle_words(wit.q_before)) + Counter(p)
    if cyc_before != expected:
        return "cycles of before differ from cycles of q_before plus P"
    return None


@lru_cache(maxsize=1 << 15)
def _moves(w: str) -> tuple[tuple[str, MoveWitness], ...]:
    counts = sorted(Counter(cycle_words(w)).items())
    distinct = [c for c, _ in counts]
    found: dict[str, MoveWitness] = {}
    for pick in product(*(range(k + 1) for _, k in counts)):
        if not any(pick):
            continue
        q_parts: list[str] = []
        p_parts: list[str] = []
        for c, k, (_, total) in zip(distinct, pick, counts):
            q_parts += [c] * k
            p_parts += [c] * (total - k)
        q = direct_sum_all(q_parts)
        p = tuple(p_parts)
        for k in range(len(q) - 1):
            if q[k : k + 2] != "01":
                continue
            q2 = swap_at(q, k + 1)
            after = direct_sum_all(p + (q2,))
            if after not in found:
                found[after] = MoveWitness(w, after, p, q, q2, k + 1)
    return tuple(sorted(found.items()))


def elementary_moves(w: str) -> list[tuple[str, MoveWitness]]:
    """All words reachable from ``w`` by one elementary move, with witnesses.

    The untouched summand P ranges over every sub-multiset of the cycles of
    ``w``; the rest Q is merged back and any adjacent "01" in it may swap.
    """
    validate_word(w)
    return list(_moves(w))


def move_path(a: str, b: str) -> Optional[list[MoveWitness]]:
    """A shortest sequence of elementary moves from ``a`` down to ``b``."""
    validate_word(a)
    validate_word(b)
    if len(a) != len(b):
        raise WordError("length mismatch")
    if a == b:
        return []
    floor = length_ell(b)
    if a.count("1") != b.count("1") or length_ell(a) <= floor:
        return None
    parent: dict[str, Optional[MoveWitness]] = {a: None}
    queue = deque([a])
    while queue:
        w = queue.popleft()
        for w2, wit in _moves(w):
            if w2 in parent or length_ell(w2) < floor:
                continue
            parent[w2] = wit
            if w2 == b:
                path = []
                while parent[w2] is not None:
                    path.append(parent[w2])
                    w2 = parent[w2].before
                return path[::-1]
            queue.append(w2)
    return None


def leq_oracle(b: str, a: str) -> bool:
    """True iff ``b <= a``: b is reachable from a by elementary moves."""
    return move_path(a, b) is not None


@lru_cache(maxsize=1 << 14)
def down_set(a: str) -> frozenset[str]:
    """Every word reachable from ``a`` by elementary moves, ``a`` included."""
    out = {a}
    for w2, _ in _moves(a):
        out |= down_set(w2)
    return frozenset(out)


def witness_json(wits: Sequence[MoveWitness]) -> str:
    return json.dumps([w.to_json() for w in wits], sort_keys=True)
