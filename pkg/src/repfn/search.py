"""Search for additive bases of Z_m with a small maximum representation count.

The exact path is a depth-first branch and bound over subsets of Z_m with
incremental representation counters, a lazy coverage-infeasibility prune and
translation/reflection symmetry reduction; it can prove UNSAT.  The heuristic
path is a seeded local search that only ever claims verified upper bounds.
Every SAT or heuristic result carries a certificate re-checked through the
pair-enumeration profile, never through the search's own counters.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Iterable

from .groups import Group, GroupSubset, VerificationError
from .profiles import rep_profile_naive
from .singer import DEFAULT_PRIME_BOUND, is_prime, singer_set

DEFAULT_NODE_BUDGET = 200_000
_RESTART_EVERY = 400
_TIME_CHECK_MASK = 1023


class SearchStatus(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    EXHAUSTED = "EXHAUSTED"


@dataclass(frozen=True)
class SearchConfig:
    """Parameters for one search run.

    node_budget counts visited nodes in exact mode and proposed moves per
    worker in heuristic mode.  counter_check is a probability per exact node
    of cross-checking the incremental counters against the pair-enumeration
    profile (a test hook; 0 disables it).
    """

    m: int
    r: int
    mode: str = "exact"
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: float | None = None
    seed: int = 0
    threads: int = 1
    reflection: bool = True
    counter_check: float = 0.0

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("modulus m must be at least 1")
        if self.r < 1:
            raise ValueError("target cap r must be at least 1")
        if self.mode not in ("exact", "heuristic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.node_budget < 1:
            raise ValueError("node budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if not 0.0 <= self.counter_check <= 1.0:
            raise ValueError("counter_check must be a probability")


@dataclass(frozen=True)
class SearchCertificate:
    """A claimed basis of Z_m with max representation count <= claimed_r;
    verified is set only by the independent re-check."""

    m: int
    elements: tuple[int, ...]
    claimed_r: int
    verified: bool

    def subset(self) -> GroupSubset:
        return GroupSubset.from_elements(Group.cyclic(self.m), self.elements)


def make_certificate(m: int, elements: Iterable[int], claimed_r: int) -> SearchCertificate:
    """Re-check the basis property and the cap via the pair-enumeration
    profile."""
    subset = GroupSubset.from_elements(Group.cyclic(m), elements)
    profile = rep_profile_naive(subset)
    ok = all(c >= 1 for c in profile.counts) and profile.max_rep <= claimed_r
    return SearchCertificate(m, tuple(subset.elements()), claimed_r, ok)


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    certificate: SearchCertificate | None
    nodes: int
    prunes: dict[str, int]
    wall_time_s: float
    notes: tuple[str, ...]


class _BudgetExceeded(Exception):
    pass


class _ExactSearch:
    """DFS over subsets of Z_m in ascending element order, include branch
    first.  Counters: R[g] is the representation count of the current partial
    set; P[g] is the number of ordered pairs over still-available elements
    (members plus undecided) summing to g, so P[g] = 0 with R[g] = 0 proves
    the branch dead."""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.m = cfg.m
        self.r = cfg.r
        self.R = [0] * cfg.m
        self.P = [cfg.m] * cfg.m
        self.avail = [True] * cfg.m
        self.members: list[int] = []
        self.uncovered = cfg.m
        self.nodes = 0
        self.prunes = {"max_rep": 0, "coverage": 0, "reflection": 0}
        self.deadline = (
            time.monotonic() + cfg.time_budget if cfg.time_budget is not None else None
        )
        self.check_rng = random.Random(cfg.seed) if cfg.counter_check > 0 else None
        self.witness: list[int] | None = None

    def run(self) -> bool:
        if self.m == 1:
            self.nodes = 1
            self.witness = [0]
            return True
        self._apply_include(0)
        return self._dfs(1)

    # R updates: adding e creates pairs (a,e) and (e,a) for each prior member
    # plus the single pair (e,e).
    def _apply_include(self, e: int) -> list[tuple[int, int]]:
        changes: list[tuple[int, int]] = []
        m = self.m
        for a in self.members:
            self._bump((a + e) % m, 2, changes)
        self._bump((2 * e) % m, 1, changes)
        self.members.append(e)
        return changes

    def _bump(self, g: int, d: int, changes: list[tuple[int, int]]) -> None:
        if self.R[g] == 0:
            self.uncovered -= 1
        self.R[g] += d
        changes.append((g, d))

    def _undo_include(self, changes: list[tuple[int, int]]) -> None:
        self.members.pop()
        for g, d in reversed(changes):
            self.R[g] -= d
            if self.R[g] == 0:
                self.uncovered += 1

    def _apply_exclude(self, e: int) -> list[tuple[int, int]]:
        self.avail[e] = False
        changes: list[tuple[int, int]] = []
        m = self.m
        P = self.P
        for x in range(m):
            if self.avail[x]:
                g = (e + x) % m
                P[g] -= 2
                changes.append((g, 2))
        g = (2 * e) % m
        P[g] -= 1
        changes.append((g, 1))
        return changes

    def _undo_exclude(self, e: int, changes: list[tuple[int, int]]) -> None:
        for g, d in changes:
            self.P[g] += d
        self.avail[e] = True

    def _verify_counters(self) -> None:
        subset = GroupSubset.from_elements(Group.cyclic(self.m), self.members)
        expected = rep_profile_naive(subset).counts
        if tuple(self.R) != expected:
            raise VerificationError("incremental counters diverged from the profile")

    def _dfs(self, e: int) -> bool:
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            raise _BudgetExceeded
        if (
            self.deadline is not None
            and (self.nodes & _TIME_CHECK_MASK) == 0
            and time.monotonic() > self.deadline
        ):
            raise _BudgetExceeded
        if self.check_rng is not None and self.check_rng.random() < self.cfg.counter_check:
            self._verify_counters()
        if self.uncovered == 0:
            self.witness = list(self.members)
            return True
        if e == self.m:
            return False

        # Include branch first.  Reflection reduction: once the smallest
        # nonzero member a1 is fixed, a canonical witness (the better of A
        # and -A) satisfies a1 + max(A) <= m, so larger elements are barred.
        a1 = self.members[1] if len(self.members) > 1 else None
        if self.cfg.reflection and a1 is not None and a1 + e > self.m:
            self.prunes["reflection"] += 1
        else:
            changes = self._apply_include(e)
            capped = any(self.R[g] > self.r for g, _ in changes)
            if capped:
                self.prunes["max_rep"] += 1
                ok = False
            else:
                ok = self._dfs(e + 1)
            self._undo_include(changes)
            if ok:
                return True

        ex = self._apply_exclude(e)
        dead = any(self.P[g] == 0 and self.R[g] == 0 for g, _ in ex)
        if dead:
            self.prunes["coverage"] += 1
            ok = False
        else:
            ok = self._dfs(e + 1)
        self._undo_exclude(e, ex)
        return ok


def exists_basis(cfg: SearchConfig) -> SearchOutcome:
    """Exact decision: does Z_m admit an additive basis with max count <= r.

    UNSAT is only returned after the symmetry-reduced space is fully drained;
    running out of budget yields EXHAUSTED instead.
    """
    if cfg.mode != "exact":
        raise ValueError("exists_basis requires mode='exact'")
    t0 = time.monotonic()
    notes = [
        "translation reduction: 0 is fixed in A; translating any basis to "
        "contain 0 preserves its spectrum",
    ]
    if cfg.reflection:
        notes.append(
            "reflection reduction: witnesses restricted to min-nonzero + max <= m; "
            "-A has the same spectrum as A, so one of A, -A always qualifies"
        )
    search = _ExactSearch(cfg)
    try:
        found = search.run()
    except _BudgetExceeded:
        return SearchOutcome(
            SearchStatus.EXHAUSTED,
            None,
            search.nodes,
            dict(search.prunes),
            time.monotonic() - t0,
            tuple(notes + ["budget exhausted before the reduced space was drained"]),
        )
    if found:
        cert = make_certificate(cfg.m, search.witness, cfg.r)
        if not cert.verified:
            raise VerificationError("witness failed the independent re-check")
        return SearchOutcome(
            SearchStatus.SAT,
            cert,
            search.nodes,
            dict(search.prunes),
            time.monotonic() - t0,
            tuple(notes),
        )
    return SearchOutcome(
        SearchStatus.UNSAT,
        None,
        search.nodes,
        dict(search.prunes),
        time.monotonic() - t0,
        tuple(notes),
    )


@dataclass(frozen=True)
class RuzsaResult:
    """Outcome of the minimum-cap search for Z_m.

    value is set only when every probe below it proved UNSAT and the probe at
    it proved SAT; otherwise [lo, hi] brackets the answer (lo from UNSAT
    proofs, hi from a verified certificate).
    """

    m: int
    value: int | None
    lo: int
    hi: int
    certificate: SearchCertificate | None
    unsat_record: SearchOutcome | None
    probes: tuple[tuple[int, SearchStatus], ...]
    nodes: int
    wall_time_s: float

    @property
    def exact(self) -> bool:
        return self.value is not None


def ruzsa_number(
    m: int,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float | None = None,
) -> RuzsaResult:
    """Least r such that Z_m has an additive basis with max count <= r.

    Probes r = 1, 2, ... with the exact search; the full group is a basis
    with max count m, so the loop always terminates by r = m.  If a probe
    exhausts its budget the result degrades to a bracket, never to a guess.
    """
    t0 = time.monotonic()
    prev_unsat: SearchOutcome | None = None
    probes: list[tuple[int, SearchStatus]] = []
    nodes = 0
    for r in range(1, m + 1):
        out = exists_basis(
            SearchConfig(m=m, r=r, mode="exact", node_budget=node_budget, time_budget=time_budget)
        )
        probes.append((r, out.status))
        nodes += out.nodes
        if out.status is SearchStatus.SAT:
            return RuzsaResult(
                m, r, r, r, out.certificate, prev_unsat, tuple(probes), nodes,
                time.monotonic() - t0,
            )
        if out.status is SearchStatus.UNSAT:
            prev_unsat = out
            continue
        # Budget ran out at this r: bracket with a heuristic upper bound.
        heur = heuristic_upper_bound(
            SearchConfig(
                m=m, r=m, mode="heuristic",
                node_budget=min(node_budget, 20_000), seed=0,
            )
        )
        hi_cert = heur.certificate
        hi = hi_cert.claimed_r if hi_cert is not None else m
        if hi < r:
            raise VerificationError("certified upper bound contradicts an UNSAT proof")
        return RuzsaResult(
            m, None, r, hi, hi_cert, prev_unsat, tuple(probes), nodes,
            time.monotonic() - t0,
        )
    raise VerificationError("the full group must be found as a basis by r = m")


# -- heuristic local search --------------------------------------------------


def _isqrt_ceil(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def _seed_pool(m: int) -> list[tuple[int, ...] | None]:
    """Restart seeds: None means a fresh random draw; when m has the
    perfect-difference-set order p^2 + p + 1 the set itself is seeded too."""
    pool: list[tuple[int, ...] | None] = [None]
    p = 1
    while p * p + p + 1 < m:
        p += 1
    if p * p + p + 1 == m and is_prime(p) and p <= DEFAULT_PRIME_BOUND:
        pool.append(tuple(singer_set(p).elements))
    return pool


class _LocalSearch:
    """One worker: hill-climb with sideways moves and periodic restarts over
    the lexicographic objective (uncovered, max count, excess over r, |A|)."""

    def __init__(self, m: int, r: int, rng: random.Random, pool: list[tuple[int, ...] | None]):
        self.m = m
        self.r = r
        self.rng = rng
        self.pool = pool
        self.restarts = 0
        self.in_set = [False] * m
        self.members: set[int] = set()
        self.R = [0] * m
        self.uncovered = m
        self.best: tuple[tuple[int, int, int, int], tuple[int, ...]] | None = None

    def _reset(self, elems: Iterable[int]) -> None:
        m = self.m
        self.in_set = [False] * m
        self.members = set()
        self.R = [0] * m
        self.uncovered = m
        for e in elems:
            self._add(e)

    def _add(self, e: int) -> None:
        m = self.m
        for a in self.members:
            g = (a + e) % m
            if self.R[g] == 0:
                self.uncovered -= 1
            self.R[g] += 2
        g = (2 * e) % m
        if self.R[g] == 0:
            self.uncovered -= 1
        self.R[g] += 1
        self.members.add(e)
        self.in_set[e] = True

    def _remove(self, e: int) -> None:
        self.members.discard(e)
        self.in_set[e] = False
        m = self.m
        for a in self.members:
            g = (a + e) % m
            self.R[g] -= 2
            if self.R[g] == 0:
                self.uncovered += 1
        g = (2 * e) % m
        self.R[g] -= 1
        if self.R[g] == 0:
            self.uncovered += 1

    def _objective(self) -> tuple[int, int, int, int]:
        max_rep = max(self.R) if self.m else 0
        excess = sum(c - self.r for c in self.R if c > self.r)
        return (self.uncovered, max_rep, excess, len(self.members))

    def _restart(self) -> None:
        base = self.pool[self.restarts % len(self.pool)]
        self.restarts += 1
        if base is None:
            size = max(1, min(self.m, _isqrt_ceil(2 * self.m)))
            base = self.rng.sample(range(self.m), size)
        self._reset(base)

    def _record(self, obj: tuple[int, int, int, int]) -> None:
        if obj[0] == 0 and (self.best is None or obj < self.best[0]):
            self.best = (obj, tuple(sorted(self.members)))

    def run(self, moves: int) -> None:
        self._restart()
        cur = self._objective()
        self._record(cur)
        rng = self.rng
        m = self.m
        for step in range(moves):
            if step and step % _RESTART_EVERY == 0:
                self._restart()
                cur = self._objective()
                self._record(cur)
            card = len(self.members)
            roll = rng.random()
            if card == 0:
                kind = "add"
            elif card == m:
                kind = "remove"
            elif self.uncovered > 0:
                kind = "add" if roll < 0.6 else ("swap" if roll < 0.9 else "remove")
            else:
                kind = "remove" if roll < 0.4 else ("swap" if roll < 0.9 else "add")
            if kind == "add":
                e = rng.randrange(m)
                while self.in_set[e]:
                    e = rng.randrange(m)
                self._add(e)
                undo = (("remove", e),)
            elif kind == "remove":
                e = rng.choice(sorted(self.members))
                self._remove(e)
                undo = (("add", e),)
            else:
                out_e = rng.choice(sorted(self.members))
                in_e = rng.randrange(m)
                while self.in_set[in_e]:
                    in_e = rng.randrange(m)
                self._remove(out_e)
                self._add(in_e)
                undo = (("remove", in_e), ("add", out_e))
            cand = self._objective()
            if cand <= cur:
                cur = cand
                self._record(cur)
            else:
                for op, e in undo:
                    (self._add if op == "add" else self._remove)(e)


def heuristic_upper_bound(cfg: SearchConfig) -> SearchOutcome:
    """Best verified basis certificate reachable within the move budget.

    Workers run sequentially with seeds derived as Random(f"{seed}/{w}"), so
    the outcome is a deterministic function of (m, r, seed, threads, budget).
    The full group is always considered, so a verified certificate (possibly
    the trivial one with max count m) is always returned; the status is SAT
    when its cap meets cfg.r and EXHAUSTED otherwise.  UNSAT is never claimed.
    """
    if cfg.mode != "heuristic":
        raise ValueError("heuristic_upper_bound requires mode='heuristic'")
    t0 = time.monotonic()
    m = cfg.m
    pool = _seed_pool(m)
    notes = ["restart seed pool: random draws" + ("" if len(pool) == 1 else " plus the perfect difference set")]

    full_profile = rep_profile_naive(GroupSubset.full(Group.cyclic(m)))
    full_obj = (
        0,
        full_profile.max_rep,
        sum(c - cfg.r for c in full_profile.counts if c > cfg.r),
        m,
    )
    # (objective, worker index) ordering makes the merge deterministic; the
    # full-group fallback ranks behind any worker's find of equal objective.
    best = (full_obj, cfg.threads, tuple(range(m)))

    total_moves = 0
    for w in range(cfg.threads):
        worker = _LocalSearch(m, cfg.r, random.Random(f"{cfg.seed}/{w}"), pool)
        worker.run(cfg.node_budget)
        total_moves += cfg.node_budget
        if worker.best is not None:
            cand = (worker.best[0], w, worker.best[1])
            if cand < best:
                best = cand

    obj, _, elements = best
    cert = make_certificate(m, elements, obj[1])
    if not cert.verified:
        raise VerificationError("heuristic winner failed the independent re-check")
    met = cert.claimed_r <= cfg.r
    notes.append(
        f"target cap r={cfg.r} {'met' if met else 'not reached'}; best verified cap {cert.claimed_r}"
    )
    return SearchOutcome(
        SearchStatus.SAT if met else SearchStatus.EXHAUSTED,
        cert,
        total_moves,
        {},
        time.monotonic() - t0,
        tuple(notes),
    )
