"""Certified specialization chains between minimal words.

For Newton polygons ``zeta`` preceding ``xi`` we build words
``A_zeta = A(0) < A(1) < ... < A(c) = A_xi`` with ``c = c(zeta, xi)``, each
step carrying the elementary moves that realise it.

The mixed-slope two-segment case (slope2 < 1/2 < slope1) is built by the
recursion on ``minus(minus(A_xi))``: that word splits into the cycle of a
simple word ``A_rho`` and the word ``minus(A_xi')`` of a smaller polygon
``xi'``, so a chain for ``(zeta - rho, xi')`` lifts by ``+ A_rho``.  Other
shapes fall back to a breadth-first search in the move graph.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .polygons import (
    NewtonPolygon,
    PolygonError,
    Segment,
    c_value,
    is_saturated,
    minimal_word,
    np_normalize,
    polygon_from_json,
    poset,
    precedes,
)
from .words import (
    MoveWitness,
    NoZeroOneError,
    check_move,
    cycle_words,
    direct_sum,
    direct_sum_all,
    dual,
    length_ell,
    minus,
    minus_move,
    move_path,
)

HALF = Fraction(1, 2)

CONSTRUCTIVE = "constructive"
SEARCH = "search"


class CaseTag(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    BASE_H2 = "BASE_H2"


class PreconditionError(ValueError):
    """Inputs violate a documented precondition (CLI exit code 2)."""


class PropositionViolation(RuntimeError):
    """A structural identity the construction relies on failed (exit code 3)."""


class SaturationStructureError(PropositionViolation):
    """The segment split off by the recursion is missing from zeta."""


# ---------------------------------------------------------------------------
# Two-segment polygons and their six cases
# ---------------------------------------------------------------------------


def two_segments(xi: NewtonPolygon) -> tuple[int, int, int, int]:
    if len(xi) != 2 or xi.segments[0].slope == xi.segments[1].slope:
        raise PreconditionError(f"{xi} is not made of two segments of distinct slopes")
    (m1, n1), (m2, n2) = ((s.m, s.n) for s in xi.segments)
    return m1, n1, m2, n2


def is_mixed(xi: NewtonPolygon) -> bool:
    """Two segments with slope2 < 1/2 < slope1."""
    if len(xi) != 2:
        return False
    s1, s2 = xi.segments
    return s2.slope < HALF < s1.slope


def classify_case(xi: NewtonPolygon) -> CaseTag:
    if not is_mixed(xi):
        raise PreconditionError(f"{xi} does not satisfy slope2 < 1/2 < slope1")
    m1, n1, m2, n2 = two_segments(xi)
    if xi.height == 2:
        return CaseTag.BASE_H2
    tags = []
    if n1 - m1 > 1 and n2 > 0:
        tags.append(CaseTag.I)
    if n1 - m1 == 1 and m1 > 0 and n2 == 1:
        tags.append(CaseTag.II)
    if n2 == 0 and m1 > 1:
        tags.append(CaseTag.III)
    if n1 - m1 == 1 and n2 > 1:
        tags.append(CaseTag.IV)
    if m1 == 0 and n2 == 1:
        tags.append(CaseTag.V)
    if m1 == 1 and n2 == 0:
        tags.append(CaseTag.VI)
    if len(tags) != 1:
        raise PropositionViolation(f"{xi} matches cases {[t.value for t in tags]}, expected one")
    return tags[0]


def _unit_solution(p: int, q: int) -> tuple[int, int]:
    """The (x, y) with x*q - y*p = 1, 1 <= x <= p and y >= 0 (needs p >= 1)."""
    if p < 1 or gcd(p, q) != 1:
        raise PropositionViolation(f"no unit solution for ({p},{q})")
    x = (pow(q, -1, p) - 1) % p + 1
    return x, (x * q - 1) // p


def rho_segment(xi: NewtonPolygon, case: CaseTag) -> Segment:
    m1, n1, m2, n2 = two_segments(xi)
    if case in (CaseTag.I, CaseTag.III):
        a, b = _unit_solution(m1, n1)  # a*n1 - b*m1 = 1
    elif case is CaseTag.II:
        a, b = 1, 1
    elif case is CaseTag.IV:
        b, a = _unit_solution(n2, m2)  # b*m2 - a*n2 = 1
    else:
        raise PreconditionError(f"no rho for case {case.value}")
    m, n = (m1, n1) if case is not CaseTag.IV else (m2, n2)
    if not (0 <= a <= m and 1 <= b <= n):
        raise PropositionViolation(f"rho = ({a},{b}) outside its range for {xi}")
    return Segment(a, b)


@dataclass(frozen=True)
class DecompositionResult:
    xi_prime: NewtonPolygon
    rho: Segment
    left_word: str
    rho_word: str
    case: CaseTag


def minus_square_decompose(xi: NewtonPolygon) -> DecompositionResult:
    """Split ``minus(minus(A_xi))`` into ``minus(A_xi') + A_rho`` (cases I-IV)."""
    case = classify_case(xi)
    if case not in (CaseTag.I, CaseTag.II, CaseTag.III, CaseTag.IV):
        raise PreconditionError(f"{xi} is in case {case.value}; use prop3_decompose")
    m1, n1, m2, n2 = two_segments(xi)
    w2 = minus(minus(minimal_word(xi)))
    cycles = cycle_words(w2)
    if len(cycles) != 2:
        raise PropositionViolation(f"minus^2 of A_{xi} = {w2} has {len(cycles)} cycles, expected 2")
    rho = rho_segment(xi, case)
    rho_word = rho.word
    if rho_word not in cycles:
        raise PropositionViolation(f"no cycle of {w2} equals A_rho = {rho_word}")
    cycles.remove(rho_word)
    left = cycles[0]
    if case is CaseTag.IV:
        xi_p = np_normalize([(m1, n1), (m2 - rho.m, n2 - rho.n)])
    else:
        xi_p = np_normalize([(m1 - rho.m, n1 - rho.n), (m2, n2)])
    try:
        expected = minus(minimal_word(xi_p))
    except NoZeroOneError as exc:
        raise PropositionViolation(f"A_xi' for xi' = {xi_p} has no '01'") from exc
    if left != expected:
        raise PropositionViolation(f"left cycle {left} != minus(A_xi') = {expected} for xi' = {xi_p}")
    if direct_sum(left, rho_word) != w2:
        raise PropositionViolation("left + A_rho does not reassemble minus^2(A_xi)")
    return DecompositionResult(xi_p, rho, left, rho_word, case)


def prop3_decompose(xi: NewtonPolygon) -> tuple[list[Segment], str]:
    """The terminal cases: ``minus(A_xi)`` (h = 2) or ``minus^2(A_xi)``
    is already the minimal word of the returned segments."""
    case = classify_case(xi)
    m1, n1, m2, n2 = two_segments(xi)
    a_xi = minimal_word(xi)
    if case is CaseTag.BASE_H2:
        segs, w = [Segment(1, 1)], minus(a_xi)
    elif case is CaseTag.V:
        segs, w = [Segment(1, 1), Segment(m2 - 1, 1)], minus(minus(a_xi))
    elif case is CaseTag.VI:
        segs, w = [Segment(1, n1 - 1), Segment(1, 1)], minus(minus(a_xi))
    else:
        raise PreconditionError(f"{xi} is in case {case.value}; use minus_square_decompose")
    if direct_sum_all(s.word for s in segs) != w:
        raise PropositionViolation(f"{w} is not the sum of {[str(s) for s in segs]}")
    return segs, w


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------


@dataclass
class Chain:
    zeta: NewtonPolygon
    xi: NewtonPolygon
    words: list[str]
    steps: list[list[MoveWitness]]
    method: str = CONSTRUCTIVE
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def c(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "zeta": self.zeta.to_json(),
            "xi": self.xi.to_json(),
            "c": self.c,
            "method": self.method,
            "words": list(self.words),
            "steps": [[w.to_json() for w in step] for step in self.steps],
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), sort_keys=True, **kw)

    @classmethod
    def from_json(cls, obj: dict) -> "Chain":
        ch = cls(
            zeta=polygon_from_json(obj["zeta"]),
            xi=polygon_from_json(obj["xi"]),
            words=list(obj["words"]),
            steps=[[MoveWitness.from_json(w) for w in step] for step in obj["steps"]],
            method=obj["method"],
        )
        if ch.c != obj["c"]:
            raise ValueError(f"c = {obj['c']} disagrees with {ch.c} steps")
        return ch

    def lift(self, extra: NewtonPolygon) -> "Chain":
        """Add the minimal summand of ``extra`` to every word and witness."""
        cyc = [s.word for s in extra.segments]
        return Chain(
            zeta=self.zeta + extra,
            xi=self.xi + extra,
            words=[direct_sum_all([w, *cyc]) for w in self.words],
            steps=[[wit.lift(cyc) for wit in step] for step in self.steps],
            method=self.method,
            notes=dict(self.notes),
        )

    def dualize(self) -> "Chain":
        flip = lambda p: np_normalize((s.n, s.m) for s in p.segments)  # noqa: E731
        return Chain(
            zeta=flip(self.zeta),
            xi=flip(self.xi),
            words=[dual(w) for w in self.words],
            steps=[[wit.dualize() for wit in step] for step in self.steps],
            method=self.method,
            notes=dict(self.notes),
        )


def _claim(zeta: NewtonPolygon, xi: NewtonPolygon, trace: list) -> tuple[list[str], list[MoveWitness]]:
    """Words ``A_zeta = B(0) < ... < B(c-1) = minus(A_xi)``, one move per step."""
    case = classify_case(xi)
    trace.append(case)
    if case is CaseTag.BASE_H2:
        segs, w = prop3_decompose(xi)
        if zeta != np_normalize(segs):
            raise SaturationStructureError(f"zeta = {zeta} is not (1,1) in the h = 2 base case")
        return [w], []
    if case in (CaseTag.V, CaseTag.VI):
        segs, w2 = prop3_decompose(xi)
        if zeta != np_normalize(segs):
            raise SaturationStructureError(
                f"zeta = {zeta} is not {np_normalize(segs)} in case {case.value}"
            )
        w1 = minus(minimal_word(xi))
        return [w2, w1], [minus_move(w1)]

    dec = minus_square_decompose(xi)
    rho = dec.rho
    steep, shallow = zeta.segments[0], zeta.segments[-1]
    expected = shallow if case is CaseTag.IV else steep
    if rho != expected:
        raise SaturationStructureError(
            f"rho = {rho} is not the {'shallowest' if case is CaseTag.IV else 'steepest'} "
            f"segment of zeta = {zeta} (case {case.value})"
        )
    zeta_p = zeta - np_normalize([rho])
    if zeta_p.endpoint != dec.xi_prime.endpoint or not precedes(zeta_p, dec.xi_prime):
        raise PropositionViolation(f"zeta' = {zeta_p} does not precede xi' = {dec.xi_prime}")
    if zeta_p == dec.xi_prime or not is_saturated(zeta_p, dec.xi_prime):
        raise PropositionViolation(f"zeta' = {zeta_p} < xi' = {dec.xi_prime} is not saturated")

    b_words, b_wits = _claim(zeta_p, dec.xi_prime, trace)
    if b_words[-1] != dec.left_word:
        raise PropositionViolation("recursive chain does not end at minus(A_xi')")
    words = [direct_sum(b, dec.rho_word) for b in b_words]
    wits = [w.lift([dec.rho_word]) for w in b_wits]
    w1 = minus(minimal_word(xi))
    if words[-1] != minus(w1):
        raise PropositionViolation("lifted chain does not end at minus^2(A_xi)")
    return words + [w1], wits + [minus_move(w1)]


def _search_chain(zeta: NewtonPolygon, xi: NewtonPolygon) -> Chain:
    """Chain found by breadth-first search in the move graph."""
    a_xi, a_zeta = minimal_word(xi), minimal_word(zeta)
    path = move_path(a_xi, a_zeta)
    if path is None:
        raise PropositionViolation(f"no move path from A_xi = {a_xi} down to A_zeta = {a_zeta}")
    c = c_value(zeta, xi)
    # one move per step; surplus moves (if any) go into the topmost step
    head = max(1, len(path) - c + 1)
    groups = [path[:head]] + [[m] for m in path[head:]] if path else []
    steps = groups[::-1]
    words = [a_zeta] + [g[0].before for g in steps]
    return Chain(zeta, xi, words, steps, SEARCH)


def chain_saturated_two_segment(zeta: NewtonPolygon, xi: NewtonPolygon) -> Chain:
    two_segments(xi)
    if zeta.endpoint != xi.endpoint or not precedes(zeta, xi) or zeta == xi:
        raise PreconditionError(f"{zeta} does not strictly precede {xi}")
    if not is_saturated(zeta, xi):
        raise PreconditionError(f"{zeta} < {xi} is not saturated")
    if is_mixed(xi):
        trace: list[CaseTag] = []
        words, wits = _claim(zeta, xi, trace)
        a_xi = minimal_word(xi)
        words.append(a_xi)
        wits.append(minus_move(a_xi))
        ch = Chain(zeta, xi, words, [[w] for w in wits], CONSTRUCTIVE)
        ch.notes["cases"] = [t.value for t in trace]
        return ch
    if xi.segments[1].slope >= HALF:
        # 1/2 <= slope2 < slope1: solve the mirrored problem below 1/2
        return _search_chain(_flip(zeta), _flip(xi)).dualize()
    return _search_chain(zeta, xi)


def _flip(p: NewtonPolygon) -> NewtonPolygon:
    return np_normalize((s.n, s.m) for s in p.segments)


def saturated_path(zeta: NewtonPolygon, xi: NewtonPolygon) -> list[NewtonPolygon]:
    """Shortest chain ``zeta = eta_0 < ... < eta_r = xi`` of saturated pairs.

    Among equally short chains, covers whose reduced window has a
    two-segment upper polygon are explored first.
    """
    P = poset(*xi.endpoint)
    start, goal = P.index[xi], P.index[zeta]
    parent = {start: None}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if i == goal:
            break
        covers = [P.index[z] for z in P.covers_down(P.polys[i])]
        covers = [j for j in covers if goal == j or goal in P.above[j]]
        covers.sort(key=lambda j: len(_window(P.polys[j], P.polys[i])[2]) != 2)
        for j in covers:
            if j not in parent:
                parent[j] = i
                queue.append(j)
    if goal not in parent:
        raise PreconditionError(f"{zeta} does not precede {xi}")
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return [P.polys[i] for i in path]


def _window(zeta: NewtonPolygon, xi: NewtonPolygon):
    common = zeta.counter & xi.counter
    P = np_normalize(common.elements())
    return P, zeta - P, xi - P


def _cover_chain(zeta: NewtonPolygon, xi: NewtonPolygon, stats: dict) -> Chain:
    P, z, x = _window(zeta, xi)
    reduced_ok = (
        len(x) == 2
        and x.segments[0].slope != x.segments[1].slope
        and precedes(z, x)
        and z != x
        and is_saturated(z, x)
    )
    if reduced_ok:
        sub = chain_saturated_two_segment(z, x)
        stats["two_segment_windows"] = stats.get("two_segment_windows", 0) + 1
        return sub.lift(P) if P.segments else sub
    stats["whole_word_fallbacks"] = stats.get("whole_word_fallbacks", 0) + 1
    return _search_chain(zeta, xi)


def chain_general(zeta: NewtonPolygon, xi: NewtonPolygon) -> Chain:
    if zeta.endpoint != xi.endpoint or not precedes(zeta, xi):
        raise PreconditionError(f"{zeta} does not precede {xi}")
    if zeta == xi:
        return Chain(zeta, xi, [minimal_word(xi)], [], CONSTRUCTIVE)
    etas = saturated_path(zeta, xi)
    stats: dict = {}
    words: list[str] = []
    steps: list[list[MoveWitness]] = []
    method = CONSTRUCTIVE
    for lo, hi in zip(etas, etas[1:]):
        piece = _cover_chain(lo, hi, stats)
        if piece.method == SEARCH:
            method = SEARCH
        words = piece.words if not words else words + piece.words[1:]
        steps += piece.steps
    ch = Chain(zeta, xi, words, steps, method)
    ch.notes.update(stats, saturated_path=[str(e) for e in etas])
    return ch


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_chain(ch: Chain) -> Verdict:
    try:
        if ch.words[0] != minimal_word(ch.zeta):
            return Verdict(False, "first word is not A_zeta")
        if ch.words[-1] != minimal_word(ch.xi):
            return Verdict(False, "last word is not A_xi")
        if len(ch.steps) != len(ch.words) - 1:
            return Verdict(False, "number of steps does not match number of words")
        if ch.method == CONSTRUCTIVE and len(ch.steps) != c_value(ch.zeta, ch.xi):
            return Verdict(False, f"{len(ch.steps)} steps but c(zeta, xi) = {c_value(ch.zeta, ch.xi)}")
    except (PolygonError, ValueError) as exc:
        return Verdict(False, f"endpoint check failed: {exc}")
    for i, step in enumerate(ch.steps):
        upper, lower = ch.words[i + 1], ch.words[i]
        if not step:
            return Verdict(False, f"step {i + 1} has no moves")
        if step[0].before != upper:
            return Verdict(False, f"step {i + 1} does not start at A({i + 1})")
        for a, b in zip(step, step[1:]):
            if a.after != b.before:
                return Verdict(False, f"step {i + 1} moves are not consecutive")
        if step[-1].after != lower:
            return Verdict(False, f"step {i + 1} does not end at A({i})")
        for wit in step:
            why = check_move(wit)
            if why:
                return Verdict(False, f"step {i + 1}: {why}")
            if length_ell(wit.after) >= length_ell(wit.before):
                return Verdict(False, f"step {i + 1}: move does not lower the length")
    return Verdict(True)


def chain_for(zeta: NewtonPolygon, xi: NewtonPolygon) -> Chain:
    """Dispatch used by the CLI: the direct two-segment route when it applies."""
    if zeta != xi and len(xi) == 2 and xi.segments[0].slope != xi.segments[1].slope:
        if precedes(zeta, xi) and is_saturated(zeta, xi):
            return chain_saturated_two_segment(zeta, xi)
    return chain_general(zeta, xi)

