"""Clique -> segregated PPM -> vincular / bivincular / mesh PPM.

Segregated PPM (SPPM) asks for a matching mu of P into T with
``mu(i) <= t  iff  i <= p``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .matchers import Matching, MatchResult, MatchStats, backtrack_segregated, match_backtrack
from .patterns import Bivincular, MeshPattern, Vincular, cells_stat, cols_stat, rows_stat
from .perm import Permutation, parse_permutation, standardize


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise InstanceError("graph needs at least one vertex")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InstanceError(f"self-loop at {u}")
            if not (1 <= u <= self.n_vertices and 1 <= v <= self.n_vertices):
                raise InstanceError(f"edge {u}-{v} outside [1,{self.n_vertices}]")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


def parse_graph(text: str) -> Graph:
    """``n m`` on the first line, then m lines ``u v``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise InstanceError("graph file must start with 'n m'")
    try:
        n, m = map(int, lines[0])
        edges = [tuple(map(int, ln)) for ln in lines[1:]]
    except ValueError:
        raise InstanceError("graph file contains a non-integer token") from None
    if len(edges) != m:
        raise InstanceError(f"header announces {m} edges, found {len(edges)}")
    for e in edges:
        if len(e) != 2:
            raise InstanceError(f"edge line must have two vertices: {e}")
    g = Graph(n, frozenset(edges))
    if len(g.edges) != m:
        raise InstanceError("duplicate edge")
    return g


def format_graph(g: Graph) -> str:
    edges = g.sorted_edges()
    return "\n".join([f"{g.n_vertices} {len(edges)}", *(f"{u} {v}" for u, v in edges)]) + "\n"


@dataclass(frozen=True)
class SppmInstance:
    pattern: Permutation
    text: Permutation
    p: int
    t: int

    def __post_init__(self) -> None:
        k, n = len(self.pattern), len(self.text)
        if not 1 <= self.p <= k:
            raise InstanceError(f"p={self.p} outside [1,{k}]")
        if k > n:
            raise InstanceError(f"pattern longer than text ({k} > {n})")
        if not 1 <= self.t <= n:
            raise InstanceError(f"t={self.t} outside [1,{n}]")


def parse_sppm(text: str) -> SppmInstance:
    fields = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        key, sep, val = ln.partition(":")
        key = key.strip()
        if not sep or key not in ("pattern", "text", "p", "t") or key in fields:
            raise InstanceError(f"bad SPPM line {ln!r}")
        fields[key] = val.strip()
    if set(fields) != {"pattern", "text", "p", "t"}:
        raise InstanceError("SPPM file needs pattern:, text:, p:, t: lines")
    try:
        return SppmInstance(
            parse_permutation(fields["pattern"]),
            parse_permutation(fields["text"]),
            int(fields["p"]),
            int(fields["t"]),
        )
    except ValueError as exc:
        raise InstanceError(str(exc)) from None


def format_sppm(inst: SppmInstance) -> str:
    return f"pattern: {inst.pattern}\ntext: {inst.text}\np: {inst.p}\nt: {inst.t}\n"


# -- SPPM solving -------------------------------------------------------------

def is_segregated(inst: SppmInstance, m: Matching) -> bool:
    return all((w <= inst.t) == (v <= inst.p) for v, w in enumerate(m.assignment, 1))


def match_segregated(inst: SppmInstance, method: str = "backtrack", time_cap: float | None = None) -> MatchResult:
    if method == "backtrack":
        return backtrack_segregated(inst.pattern, inst.text, inst.p, inst.t, time_cap=time_cap)
    if method != "exhaustive":
        raise ValueError(f"unknown method {method!r}")
    t0 = time.perf_counter()
    stats = MatchStats()
    P, T = inst.pattern.values, inst.text.values
    k = len(P)
    by_value = [j for j in inst.pattern.positions()[1:]]
    found = None
    for positions in combinations(range(1, len(T) + 1), k):
        stats.nodes += 1
        img = [T[positions[j - 1] - 1] for j in by_value]
        if all(a < b for a, b in zip(img, img[1:])) and all(
            (w <= inst.t) == (v <= inst.p) for v, w in enumerate(img, 1)
        ):
            found = positions
            break
    stats.elapsed = time.perf_counter() - t0
    witness = Matching.from_positions(inst.pattern, inst.text, found) if found else None
    return MatchResult(found is not None, witness, stats, "segregated-exhaustive")


# -- Clique -------------------------------------------------------------------

def clique_oracle(g: Graph, k: int) -> tuple[bool, tuple[int, ...] | None]:
    if not 1 <= k <= g.n_vertices:
        raise InstanceError(f"k={k} outside [1,{g.n_vertices}]")
    for S in combinations(range(1, g.n_vertices + 1), k):
        if all(g.has_edge(u, v) for u, v in combinations(S, 2)):
            return True, S
    return False, None


@dataclass
class SideTrace:
    """Layout of one side of a clique reduction (1-based positions)."""

    rational: list[Fraction]
    blocks: list[tuple[int, int]]
    guard_positions: list[tuple[int, int]]
    guard_values: list[tuple[int, int]]
    maximum: int


@dataclass
class ReductionTrace:
    pattern: SideTrace
    text: SideTrace
    p: int
    t: int


def _encode_side(n_letters: int, pairs: list[tuple[int, int]]) -> tuple[list[int], SideTrace]:
    """Vertex block 1..n_letters followed by one block per pair, de-duplicated
    into distinct rationals and guarded."""
    copies = [0] * (n_letters + 1)
    for a, b in pairs:
        copies[a] += 1
        copies[b] += 1
    den = max(10, max(copies) + 2)
    high = Fraction(den - 1, den)

    blocks: list[list[Fraction]] = [[]]
    for j in range(1, n_letters + 1):
        blocks[0] += [j + high, Fraction(j)]
    used = [0] * (n_letters + 1)
    for a, b in pairs:
        blk = []
        for j in (a, b):
            used[j] += 1
            blk.append(j + Fraction(used[j], den))
        blocks.append(blk)

    rational = [x for blk in blocks for x in blk]
    ranks = standardize(rational).values
    top = len(rational)

    seq: list[int] = []
    spans, gpos, gval = [], [], []
    r = 0
    for i, blk in enumerate(blocks, 1):
        open_v, close_v = top + 2 * i, top + 2 * i - 1
        seq.append(open_v)
        start = len(seq) + 1
        seq.extend(ranks[r : r + len(blk)])
        r += len(blk)
        spans.append((start, len(seq)))
        seq.append(close_v)
        gpos.append((start - 1, len(seq)))
        gval.append((open_v, close_v))
    return seq, SideTrace(rational, spans, gpos, gval, top)


def clique_sides(g: Graph, k: int) -> tuple[list[int], list[int], ReductionTrace]:
    """Both guarded sequences of the clique reduction, without the k <= n check."""
    if not 1 <= k <= g.n_vertices:
        raise InstanceError(f"k={k} outside [1,{g.n_vertices}]")
    pat, ptrace = _encode_side(k, list(combinations(range(1, k + 1), 2)))
    txt, ttrace = _encode_side(g.n_vertices, g.sorted_edges())
    return pat, txt, ReductionTrace(ptrace, ttrace, ptrace.maximum, ttrace.maximum)


def reduce_clique_to_sppm(g: Graph, k: int) -> tuple[SppmInstance, ReductionTrace]:
    pat, txt, trace = clique_sides(g, k)
    if len(pat) > len(txt):
        raise InstanceError(
            f"reduced pattern ({len(pat)}) is longer than the text ({len(txt)}); "
            f"too few edges for a {k}-clique"
        )
    inst = SppmInstance(Permutation(tuple(pat)), Permutation(tuple(txt)), trace.p, trace.t)
    return inst, trace


# -- onward reductions --------------------------------------------------------

_HALF = Fraction(1, 2)


def reduce_sppm_to_vincular(inst: SppmInstance) -> tuple[Vincular, Permutation]:
    """Prepend p + 1/2 to the pattern and t + 1/2 to the text; anchor the
    pattern at the first text position."""
    pat = standardize([inst.p + _HALF, *inst.pattern.values])
    txt = standardize([inst.t + _HALF, *inst.text.values])
    return Vincular(pat, frozenset({0})), txt


def reduce_sppm_to_bivincular(inst: SppmInstance) -> tuple[Bivincular, Permutation]:
    """Pattern ``p', k+1, P`` with its top row shaded, text ``t', n+1, T``.

    The shaded top row sends the pattern maximum onto the text maximum n+1 at
    position 2, leaving t' as the only possible image of p'.
    """
    k, n = len(inst.pattern), len(inst.text)
    pat = standardize([inst.p + _HALF, k + 1, *inst.pattern.values])
    txt = standardize([inst.t + _HALF, n + 1, *inst.text.values])
    return Bivincular(pat, frozenset(), frozenset({k + 2})), txt


def reduce_sppm_to_mesh(inst: SppmInstance) -> tuple[MeshPattern, Permutation]:
    """Pattern ``p' P`` with the single cell (0, k+1), text ``t' (n+1) T``.

    That layout breaks when some pattern entry can land on the blocker n+1:
    p' itself when p = k, or P(1) when it is the maximum k.  Those instances
    get an explicit maximum behind p' instead -- pattern ``p' (k+1) P``, cell
    (0, k+2), same text -- which still has exactly one shaded cell.
    """
    k, n = len(inst.pattern), len(inst.text)
    txt = standardize([inst.t + _HALF, n + 1, *inst.text.values])
    if inst.p < k and inst.pattern.values[0] != k:
        pat = standardize([inst.p + _HALF, *inst.pattern.values])
        return MeshPattern(pat, frozenset({(0, k + 1)})), txt
    pat = standardize([inst.p + _HALF, k + 1, *inst.pattern.values])
    return MeshPattern(pat, frozenset({(0, k + 2)})), txt


ONWARD = {
    "vincular": reduce_sppm_to_vincular,
    "bivincular": reduce_sppm_to_bivincular,
    "mesh": reduce_sppm_to_mesh,
}


def onward_statistic(kind: str, pattern) -> int:
    return {"vincular": cols_stat, "bivincular": rows_stat, "mesh": cells_stat}[kind](pattern)


# -- end-to-end check -----------------------------------------------------------

@dataclass
class ChainReport:
    graph: Graph
    k: int
    answers: dict[str, bool | None] = field(default_factory=dict)
    timeouts: list[str] = field(default_factory=list)
    mismatch: str | None = None
    structural_errors: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.mismatch is None and not self.structural_errors and not self.timeouts


def check_trace_counts(g: Graph, k: int, pattern_len: int, text_len: int, trace: ReductionTrace) -> list[str]:
    l, m = g.n_vertices, len(g.edges)
    errs = []
    expect = {
        "pattern length": (pattern_len, 2 * k * k + 2),
        "non-guard pattern entries": (trace.pattern.maximum, k * k + k),
        "text length": (text_len, 2 * l + 4 * m + 2),
        "p": (trace.p, k * k + k),
        "t": (trace.t, 2 * l + 2 * m),
    }
    for name, (got, want) in expect.items():
        if got != want:
            errs.append(f"{name}: {got} != {want}")
    return errs


def verify_reduction_chain(
    g: Graph,
    k: int,
    time_cap: float | None = 60.0,
    onward: bool = True,
) -> ChainReport:
    rep = ChainReport(g, k)
    truth, _ = clique_oracle(g, k)
    rep.answers["clique"] = truth

    def record(stage: str, res: MatchResult) -> None:
        if res.timed_out:
            rep.timeouts.append(stage)
            rep.answers[stage] = None
            return
        rep.answers[stage] = res.found
        if res.found != truth and rep.mismatch is None:
            rep.mismatch = stage

    pat, txt, trace = clique_sides(g, k)
    rep.structural_errors += check_trace_counts(g, k, len(pat), len(txt), trace)
    if len(pat) > len(txt):
        # a longer pattern embeds nowhere, and every onward reduction adds the
        # same number of entries to both sides
        for stage in ("sppm", *(ONWARD if onward else ())):
            rep.answers[stage] = False
        if truth:
            rep.mismatch = "sppm"
        return rep
    inst = SppmInstance(Permutation(tuple(pat)), Permutation(tuple(txt)), trace.p, trace.t)
    res = match_segregated(inst, time_cap=time_cap)
    record("sppm", res)
    if res.witness is not None and not guards_aligned(inst, res.witness):
        rep.structural_errors.append("witness maps a guard to a non-guard")
    if onward:
        for kind, fn in ONWARD.items():
            pat, txt = fn(inst)
            if onward_statistic(kind, pat) != 1:
                rep.structural_errors.append(f"{kind} statistic != 1")
            record(kind, match_backtrack(pat.to_mesh(), txt, time_cap=time_cap))
    return rep


def guards_aligned(inst: SppmInstance, m: Matching) -> bool:
    """Guards (values > p) map to text guards (values > t), others to others."""
    return all((v > inst.p) == (w > inst.t) for v, w in enumerate(m.assignment, 1))
