"""Run-length-two blow-up of a classical instance."""
from __future__ import annotations

from dataclasses import dataclass, field

from .matchers import Matching, match_backtrack
from .patterns import MeshPattern, is_occurrence
from .perm import Permutation, lrun


@dataclass(frozen=True)
class BlowupResult:
    pattern_out: Permutation
    text_out: Permutation


def interleave_high(p: Permutation) -> Permutation:
    """``(m+1) p1 (m+2) p2 ... (2m) pm`` for p of length m."""
    m = len(p)
    out = []
    for j, v in enumerate(p.values, 1):
        out.append(m + j)
        out.append(v)
    return Permutation(tuple(out))


def blowup_run2(p: Permutation, t: Permutation) -> BlowupResult:
    return BlowupResult(interleave_high(p), interleave_high(t))


def lift_matching(p: Permutation, t: Permutation, witness: Matching) -> tuple[int, ...]:
    """Positions in the blown-up text of the lifted occurrence.

    Each new pattern entry goes to the new text entry just left of its
    partner's image.
    """
    out = []
    for i in witness.positions:
        out.extend((2 * i - 1, 2 * i))
    return tuple(out)


@dataclass
class BlowupReport:
    pattern: Permutation
    text: Permutation
    contained: bool
    contained_after: bool
    lengths_ok: bool
    lrun_ok: bool
    lift_ok: bool | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_blowup(p: Permutation, t: Permutation, time_cap: float | None = None) -> BlowupReport:
    res = blowup_run2(p, t)
    before = match_backtrack(MeshPattern(p), t, time_cap=time_cap)
    after = match_backtrack(MeshPattern(res.pattern_out), res.text_out, time_cap=time_cap)
    k, n = len(p), len(t)
    lengths_ok = len(res.pattern_out) == 2 * k and len(res.text_out) == 2 * n
    # a length-1 input blows up to "21", whose only run has length 2
    lrun_ok = lrun(res.pattern_out) == 2 and lrun(res.text_out) == 2
    rep = BlowupReport(p, t, before.found, after.found, lengths_ok, lrun_ok)
    if before.timed_out or after.timed_out:
        rep.failures.append("timeout")
    if before.found != after.found:
        rep.failures.append(f"containment differs: {before.found} vs {after.found}")
    if not lengths_ok:
        rep.failures.append("length not doubled")
    if not lrun_ok:
        rep.failures.append("lrun != 2")
    if before.witness is not None:
        lifted = lift_matching(p, t, before.witness)
        rep.lift_ok = is_occurrence(MeshPattern(res.pattern_out), res.text_out, lifted)
        if not rep.lift_ok:
            rep.failures.append("lifted witness is not an occurrence")
    return rep
