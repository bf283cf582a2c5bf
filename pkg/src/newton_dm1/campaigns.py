"""Exhaustive verification campaigns.

Each campaign walks a finite family of instances, records pass/fail per
instance and returns a :class:`Report`.  Failures are collected as
counterexamples, never raised, so one bad instance does not hide others.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator

from .polygons import (
    NewtonPolygon,
    bottom_polygon,
    c_of,
    c_value,
    cross,
    enumerate_nps,
    lattice_interior_empty,
    minimal_word,
    precedes,
    saturated_below,
    straight_line,
)
from .specialization import (
    CONSTRUCTIVE,
    CaseTag,
    PropositionViolation,
    chain_saturated_two_segment,
    classify_case,
    is_mixed,
    minus_square_decompose,
    prop3_decompose,
    verify_chain,
)
from .words import (
    check_dm1_axioms,
    cycle_words,
    direct_sum,
    direct_sum_all,
    down_set,
    dual,
    fv_permutation,
    fv_structure,
    length_ell,
    minus,
    simple_word,
)

DEFAULT_SEED = 20171005
JOBS_ENV = "NEWTON_DM1_JOBS"


@dataclass(frozen=True)
class CampaignConfig:
    h_max: int
    seed: int = DEFAULT_SEED
    jobs: int = 1
    random_triples: int = 1000


# largest accepted --hmax per campaign; defaults equal these bounds
BOUNDS = {
    "theorem": 14,
    "prop4": 14,
    "props123": 14,
    "dimension": 14,
    "axioms": 10,
    "order": 10,
    "triangles": 8,
    "algebra": 12,
}


class BoundError(ValueError):
    pass


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class Report:
    campaign: str
    h_max: int
    instances: int = 0
    passed: int = 0
    failed: int = 0
    per_case: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and not self.counterexamples

    def record(self, ok: bool, case: str | None = None, **info) -> None:
        self.instances += 1
        if case is not None:
            self.per_case[case] = self.per_case.get(case, 0) + 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.counterexamples.append(info)

    def merge(self, other: "Report") -> None:
        self.instances += other.instances
        self.passed += other.passed
        self.failed += other.failed
        for k, v in other.per_case.items():
            self.per_case[k] = self.per_case.get(k, 0) + v
        self.counterexamples += other.counterexamples
        for k, v in other.details.items():
            if isinstance(v, int) and isinstance(self.details.get(k, 0), int):
                self.details[k] = self.details.get(k, 0) + v
            else:
                self.details.setdefault(k, v)

    def to_json(self) -> dict:
        out = asdict(self)
        out["status"] = "pass" if self.ok else "fail"
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Report":
        obj = {k: v for k, v in obj.items() if k != "status"}
        return cls(**obj)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        cases = ", ".join(f"{k}: {v}" for k, v in sorted(self.per_case.items()))
        return (
            f"{status} {self.campaign} (h_max={self.h_max}): {self.passed}/{self.instances} passed"
            + (f" [{cases}]" if cases else "")
            + f" in {self.wall_time:.2f}s"
        )


# ---------------------------------------------------------------------------
# Families of instances
# ---------------------------------------------------------------------------


def all_words(h_max: int) -> Iterator[str]:
    for h in range(h_max + 1):
        for t in itertools.product("01", repeat=h):
            yield "".join(t)


def all_polygons(h_max: int, h_min: int = 0) -> Iterator[NewtonPolygon]:
    for h in range(h_min, h_max + 1):
        for d in range(h + 1):
            yield from enumerate_nps(h, d)


def two_segment_polygons(h_max: int, mixed_only: bool = False) -> list[NewtonPolygon]:
    out = []
    for xi in all_polygons(h_max, 2):
        if len(xi) == 2 and xi.segments[0].slope != xi.segments[1].slope:
            if not mixed_only or is_mixed(xi):
                out.append(xi)
    return out


def slope_regime(xi: NewtonPolygon) -> str:
    s1, s2 = xi.segments[0].slope, xi.segments[-1].slope
    half = Fraction(1, 2)
    if s2 < half < s1:
        return "mixed"
    return "below_half" if s1 <= half else "above_half"


# ---------------------------------------------------------------------------
# Campaigns
# ---------------------------------------------------------------------------


def campaign_axioms(cfg: CampaignConfig) -> Report:
    rep = Report("axioms", cfg.h_max)
    for w in all_words(cfg.h_max):
        problems = []
        if not check_dm1_axioms(fv_structure(w)):
            problems.append("Ker F = Im V / Im F = Ker V fails")
        if not fv_permutation(w).is_permutation():
            problems.append("(F, V^-1) map is not a permutation")
        if direct_sum_all(cycle_words(w)) != w:
            problems.append("cycle decomposition does not reassemble")
        rep.record(not problems, f"h={len(w)}", word=w, problems=problems)
    return rep


def campaign_prop4(cfg: CampaignConfig) -> Report:
    rep = Report("prop4", cfg.h_max)
    for xi in two_segment_polygons(cfg.h_max):
        for zeta in saturated_below(xi):
            c = c_value(zeta, xi)
            rep.record(
                c == len(zeta), slope_regime(xi),
                zeta=str(zeta), xi=str(xi), c=c, segments=len(zeta),
            )
    return rep


def check_props123(xi: NewtonPolygon) -> list[str]:
    """Problems found with the minus^2 decomposition of one mixed xi."""
    problems = []
    try:
        case = classify_case(xi)
        m1, n1, m2, n2 = (v for s in xi.segments for v in (s.m, s.n))
        if case in (CaseTag.V, CaseTag.VI, CaseTag.BASE_H2):
            prop3_decompose(xi)
            return problems
        dec = minus_square_decompose(xi)
        a, b = dec.rho.m, dec.rho.n
        w2 = minus(minus(minimal_word(xi)))
        if len(cycle_words(w2)) != 2:
            problems.append("minus^2 does not have two cycles")
        if case is CaseTag.IV:
            if b * m2 - a * n2 != 1 or not (0 <= a <= m2 and 1 <= b <= n2):
                problems.append(f"rho = ({a},{b}) fails b*m2 - a*n2 = 1")
        elif a * n1 - b * m1 != 1 or not (0 <= a <= m1 and 1 <= b <= n1):
            problems.append(f"rho = ({a},{b}) fails a*n1 - b*m1 = 1")
        if dec.left_word != minus(minimal_word(dec.xi_prime)):
            problems.append("left cycle is not minus(A_xi')")
        if direct_sum(dec.left_word, dec.rho_word) != w2:
            problems.append("summands do not reassemble minus^2(A_xi)")
        if not is_mixed(dec.xi_prime):
            problems.append(f"xi' = {dec.xi_prime} leaves the mixed-slope regime")
    except (PropositionViolation, ValueError) as exc:
        problems.append(f"{type(exc).__name__}: {exc}")
    return problems


def campaign_props123(cfg: CampaignConfig) -> Report:
    rep = Report("props123", cfg.h_max)
    for xi in two_segment_polygons(cfg.h_max, mixed_only=True):
        problems = check_props123(xi)
        rep.record(not problems, classify_case(xi).value, xi=str(xi), problems=problems)
    return rep


def _theorem_one(xi: NewtonPolygon) -> Report:
    rep = Report("theorem", xi.height)
    case = classify_case(xi).value
    dim_ok = length_ell(minimal_word(xi)) == c_of(xi)
    dec_problems = check_props123(xi)
    for zeta in saturated_below(xi):
        problems = list(dec_problems)
        if not dim_ok:
            problems.append("length(A_xi) != c(sigma, xi)")
        c = c_value(zeta, xi)
        if c != len(zeta):
            problems.append(f"c = {c} but zeta has {len(zeta)} segments")
        try:
            ch = chain_saturated_two_segment(zeta, xi)
            verdict = verify_chain(ch)
            if ch.method != CONSTRUCTIVE:
                problems.append("chain was not constructive")
            if ch.c != c:
                problems.append(f"chain has {ch.c} steps, c = {c}")
            if not verdict:
                problems.append(f"verify_chain: {verdict.reason}")
            drop = length_ell(ch.words[-1]) - length_ell(ch.words[0])
            if drop != sum(len(s) for s in ch.steps):
                problems.append("length drops do not add up along the chain")
        except (PropositionViolation, ValueError) as exc:
            problems.append(f"{type(exc).__name__}: {exc}")
        rep.record(not problems, case, zeta=str(zeta), xi=str(xi), problems=problems)
    return rep


def campaign_theorem(cfg: CampaignConfig) -> Report:
    rep = Report("theorem", cfg.h_max)
    xis = two_segment_polygons(cfg.h_max, mixed_only=True)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            parts = list(pool.map(_theorem_one, xis, chunksize=4))
    else:
        parts = [_theorem_one(xi) for xi in xis]
    for part in parts:
        rep.merge(part)
    rep.details["two_segment_xi"] = len(xis)
    return rep


def campaign_dimension(cfg: CampaignConfig) -> Report:
    rep = Report("dimension", cfg.h_max)
    for xi in all_polygons(cfg.h_max):
        ell, c = length_ell(minimal_word(xi)), c_of(xi)
        rep.record(ell == c, f"h={xi.height}", xi=str(xi), ell=ell, c=c)
    for h in range(cfg.h_max + 1):
        for d in range(h + 1):
            sigma, chi = straight_line(h, d), bottom_polygon(h, d)
            ok = length_ell(minimal_word(sigma)) == 0 == c_of(sigma)
            ok &= length_ell(minimal_word(chi)) == (h - d) * d == c_of(chi)
            rep.record(ok, "extremes", h=h, d=d)
    return rep


def campaign_order(cfg: CampaignConfig) -> Report:
    rep = Report("order", cfg.h_max)
    for h in range(1, cfg.h_max + 1):
        for d in range(h + 1):
            polys = enumerate_nps(h, d)
            for xi in polys:
                reach = down_set(minimal_word(xi))
                for zeta in polys:
                    by_moves = minimal_word(zeta) in reach
                    by_graph = precedes(zeta, xi)
                    rep.record(
                        by_moves == by_graph, "related" if by_graph else "unrelated",
                        zeta=str(zeta), xi=str(xi), leq=by_moves, precedes=by_graph,
                    )
    return rep


def campaign_triangles(cfg: CampaignConfig) -> Report:
    """Interior-empty triangle iff unit cross product, over a coordinate box."""
    r = cfg.h_max
    rep = Report("triangles", r)
    box = list(itertools.product(range(-r, r + 1), repeat=2))
    for a in box:
        for b in box:
            det = cross(a, b)
            if det <= 0:
                continue
            empty = lattice_interior_empty(a, b)
            rep.record(empty == (det == 1), f"det={'1' if det == 1 else '>1'}", a=a, b=b, det=det, empty=empty)
    return rep


def campaign_algebra(cfg: CampaignConfig) -> Report:
    rep = Report("algebra", cfg.h_max)
    n = cfg.h_max
    simples = [simple_word(m, k) for m in range(n + 1) for k in range(n + 1 - m) if m + k and gcd(m, k) == 1]
    for a, b, c in itertools.product(simples, repeat=3):
        if len(a) + len(b) + len(c) > n:
            continue
        ok = direct_sum(a, b) == direct_sum(b, a)
        ok &= direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c))
        rep.record(ok, "simple_triples", a=a, b=b, c=c)
    rng = random.Random(cfg.seed)
    for _ in range(cfg.random_triples):
        total = rng.randint(0, 15)
        cuts = sorted(rng.randint(0, total) for _ in range(2))
        lens = (cuts[0], cuts[1] - cuts[0], total - cuts[1])
        a, b, c = ("".join(rng.choice("01") for _ in range(k)) for k in lens)
        ok = direct_sum(a, b) == direct_sum(b, a)
        ok &= direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c))
        rep.record(ok, "random_triples", a=a, b=b, c=c)
    for w in all_words(min(n, 10)):
        ok = direct_sum_all(cycle_words(w)) == w
        ok &= dual(dual(w)) == w and length_ell(dual(w)) == length_ell(w)
        rep.record(ok, "words", word=w)
    for m in range(n + 1):
        for k in range(n + 1 - m):
            if m + k and gcd(m, k) == 1:
                rep.record(dual(simple_word(m, k)) == simple_word(k, m), "dual_simple", m=m, n=k)
    return rep


CAMPAIGNS: dict[str, Callable[[CampaignConfig], Report]] = {
    "theorem": campaign_theorem,
    "prop4": campaign_prop4,
    "props123": campaign_props123,
    "dimension": campaign_dimension,
    "axioms": campaign_axioms,
    "order": campaign_order,
    "triangles": campaign_triangles,
    "algebra": campaign_algebra,
}


def run_campaign(name: str, h_max: int | None = None, seed: int = DEFAULT_SEED, jobs: int | None = None) -> Report:
    if name not in CAMPAIGNS:
        raise KeyError(f"unknown campaign {name!r}")
    bound = BOUNDS[name]
    h_max = bound if h_max is None else h_max
    if not 0 <= h_max <= bound:
        raise BoundError(f"--hmax for {name} must lie in [0, {bound}], got {h_max}")
    cfg = CampaignConfig(h_max=h_max, seed=seed, jobs=default_jobs() if jobs is None else jobs)
    t0 = time.perf_counter()
    rep = CAMPAIGNS[name](cfg)
    rep.wall_time = round(time.perf_counter() - t0, 3)
    return rep


def verify_theorem_campaign(h_max: int = BOUNDS["theorem"]) -> Report:
    return run_campaign("theorem", h_max)
