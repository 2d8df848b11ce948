"""Counting and listing words that avoid a forbidden set, and checking the
cluster-theorem identities against those counts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, asdict
from typing import Sequence

from .clusters import cluster_gf
from .ncseries import IntPoly, NcPolySeries, NcSeries, eval_t, invert
from .words import (
    Alphabet,
    ForbiddenSet,
    Letters,
    Word,
    check_enumeration_budget,
)
from .words import reduce as reduce_forbidden


class PatternAutomaton:
    """Trie of pattern prefixes with failure links, completed to a DFA.

    ``hits[s]`` is the number of patterns that end when the automaton enters
    state ``s`` (own pattern plus those reached through failure links).
    """

    def __init__(self, alphabet: Alphabet, patterns: Sequence[Letters]):
        k = len(alphabet)
        self.alphabet = alphabet
        goto: list[dict[int, int]] = [{}]
        hits = [0]
        for p in patterns:
            s = 0
            for a in p:
                if a not in goto[s]:
                    goto.append({})
                    hits.append(0)
                    goto[s][a] = len(goto) - 1
                s = goto[s][a]
            hits[s] += 1
        fail = [0] * len(goto)
        delta = [[0] * k for _ in goto]
        order = deque()
        for a in range(k):
            nxt = goto[0].get(a)
            if nxt is None:
                delta[0][a] = 0
            else:
                delta[0][a] = nxt
                order.append(nxt)
        while order:
            s = order.popleft()
            hits[s] += hits[fail[s]]
            for a in range(k):
                nxt = goto[s].get(a)
                if nxt is None:
                    delta[s][a] = delta[fail[s]][a]
                else:
                    fail[nxt] = delta[fail[s]][a]
                    delta[s][a] = nxt
                    order.append(nxt)
        self.delta = delta
        self.hits = hits
        self.fail = fail

    def __len__(self) -> int:
        return len(self.delta)

    def count(self, letters: Sequence[int]) -> int:
        """Number of pattern occurrences in the word."""
        s, total = 0, 0
        for a in letters:
            s = self.delta[s][a]
            total += self.hits[s]
        return total


class AvoidanceAutomaton:
    """Complete DFA accepting exactly the words that avoid F.

    Built over reduce(F); every state where a pattern ends is merged into
    one absorbing dead state, stored last.
    """

    def __init__(self, F: ForbiddenSet):
        self.forbidden = reduce_forbidden(F)
        self.alphabet = F.alphabet
        ac = PatternAutomaton(F.alphabet, self.forbidden.patterns)
        live = [s for s in range(len(ac)) if ac.hits[s] == 0]
        renum = {s: i for i, s in enumerate(live)}
        dead = len(live)
        k = len(F.alphabet)
        self.transitions: list[list[int]] = []
        for s in live:
            self.transitions.append([renum.get(ac.delta[s][a], dead) for a in range(k)])
        self.transitions.append([dead] * k)
        self.dead = dead
        self.start = 0

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    def accepts(self, w: "Word | Sequence[int]") -> bool:
        letters = w.letters if isinstance(w, Word) else w
        s = self.start
        for a in letters:
            s = self.transitions[s][a]
            if s == self.dead:
                return False
        return True

    def matrix(self) -> list[list[int]]:
        """Transfer matrix between live states: entry (i, j) counts letters i -> j."""
        n = self.dead
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in self.transitions[i]:
                if j != self.dead:
                    out[i][j] += 1
        return out


def count_avoiding(F: ForbiddenSet, max_len: int) -> list[int]:
    """c_0, ..., c_L where c_n counts the length-n words avoiding F."""
    aut = AvoidanceAutomaton(F)
    vec = [0] * aut.num_states
    vec[aut.start] = 1
    counts = [1]
    for _ in range(max_len):
        nxt = [0] * aut.num_states
        for s, c in enumerate(vec):
            if c and s != aut.dead:
                for t in aut.transitions[s]:
                    nxt[t] += c
        nxt[aut.dead] = 0
        vec = nxt
        counts.append(sum(vec))
    return counts


def avoiding_words(F: ForbiddenSet, max_len: int) -> list[Letters]:
    aut = AvoidanceAutomaton(F)
    k = len(F.alphabet)
    layer = [((), aut.start)]
    out = [()]
    for _ in range(max_len):
        nxt = []
        for w, s in layer:
            for a in range(k):
                t = aut.transitions[s][a]
                if t != aut.dead:
                    nxt.append((w + (a,), t))
        out.extend(w for w, _ in nxt)
        layer = nxt
    return out


def avoiding_series(F: ForbiddenSet, max_len: int) -> NcSeries:
    """Sum of the words of length <= max_len that avoid F."""
    return NcSeries(F.alphabet, max_len, {w: 1 for w in avoiding_words(F, max_len)})


def occurrence_gf(F: ForbiddenSet, max_len: int) -> NcPolySeries:
    """Sum of t^{s_F(w)} w over every word w of length <= max_len."""
    check_enumeration_budget(F.alphabet, max_len)
    ac = PatternAutomaton(F.alphabet, F.patterns)
    k = len(F.alphabet)
    powers: dict[int, IntPoly] = {}
    coeffs: dict[Letters, IntPoly] = {}
    layer = [((), 0, 0)]
    for n in range(max_len + 1):
        nxt = []
        for w, s, c in layer:
            if c not in powers:
                powers[c] = IntPoly.t(c)
            coeffs[w] = powers[c]
            if n < max_len:
                for a in range(k):
                    t = ac.delta[s][a]
                    nxt.append((w + (a,), t, c + ac.hits[t]))
        layer = nxt
    out = NcPolySeries(F.alphabet, max_len)
    out.coeffs = coeffs
    return out


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    checked: int
    first_failure: str | None = None
    expected: str | None = None
    actual: str | None = None


@dataclass
class Report:
    """Machine-readable outcome of a batch of identity checks."""

    subject: str
    max_len: int | None = None
    checks: list[IdentityCheck] = field(default_factory=list)
    unit: str = "words"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"subject": self.subject, "max_len": self.max_len, "passed": self.passed,
                "checks": [asdict(c) for c in self.checks]}

    def render(self) -> str:
        lines = [self.subject if self.max_len is None else f"{self.subject} (L={self.max_len})"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"  [{status}] {c.name} ({c.checked} {self.unit})"
            if not c.passed:
                line += f": first mismatch at {c.first_failure}: expected {c.expected}, got {c.actual}"
            lines.append(line)
        return "\n".join(lines)


def compare_series(name: str, expected: NcSeries, actual: NcSeries) -> IdentityCheck:
    L = min(expected.max_len, actual.max_len)
    words = {w for w in expected.coeffs if len(w) <= L} | {w for w in actual.coeffs if len(w) <= L}
    bad = expected.first_difference(actual)
    if bad is None:
        return IdentityCheck(name, True, len(words))
    fmt = expected.alphabet.format
    return IdentityCheck(name, False, len(words), fmt(bad), str(expected[bad]), str(actual[bad]))


def cluster_denominator(F: ForbiddenSet, C: NcSeries) -> NcSeries:
    """``1 - (sum of letters) - C``."""
    L = C.max_len
    return NcSeries.one(F.alphabet, L) - NcSeries.letter_sum(F.alphabet, L) - C


def verify_cluster_theorem(F: ForbiddenSet, max_len: int) -> Report:
    """Check both counting identities coefficient by coefficient.

    ``cluster-t``: sum (1+t)^{s_F(w)} w equals (1 - sum letters - C_F(t))^-1,
    compared as polynomials in t. ``cluster-t=0``: the avoiding series equals
    (1 - sum letters - C_F(-1))^-1.
    """
    C = cluster_gf(F, max_len)
    report = Report(f"cluster theorem for F={F}", max_len)
    lhs = occurrence_gf(F, max_len).shift_t(1)
    rhs = invert(cluster_denominator(F, C))
    report.checks.append(compare_series("cluster-t", lhs, rhs))
    lhs0 = avoiding_series(F, max_len)
    rhs0 = invert(cluster_denominator(F, eval_t(C, -1)))
    report.checks.append(compare_series("cluster-t=0", lhs0, rhs0))
    return report
