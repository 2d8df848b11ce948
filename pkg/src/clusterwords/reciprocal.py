"""Coefficients M(w) of the reciprocal of the avoiding-word series.

M is computed along three independent routes: direct series inversion,
cluster polynomials evaluated at t = -1, and the recursive salient-word
classification. Every route must land in {-1, 0, 1} and all three must agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .avoidance import IdentityCheck, Report, avoiding_series, avoiding_words, compare_series
from .clusters import _trace, cluster_words
from .ncseries import NcSeries, invert
from .words import Alphabet, ForbiddenSet, Letters, Word, word_key
from .words import reduce as reduce_forbidden

Provenance = Literal["inversion", "cluster_eval", "salient"]


class RangeViolation(RuntimeError):
    """A reciprocal coefficient fell outside {-1, 0, 1}; this is a bug signal."""


class PathDisagreement(RuntimeError):
    def __init__(self, word: str, values: dict[str, int]):
        self.word = word
        self.values = values
        super().__init__(f"computation paths disagree at {word}: {values}")


@dataclass
class MTable:
    """M(w) for every word of length <= max_len; absent words have M = 0."""

    alphabet: Alphabet
    max_len: int
    values: dict[Letters, int]
    provenance: str

    def __post_init__(self):
        self.values = {w: v for w, v in self.values.items() if v}
        bad = {w: v for w, v in self.values.items() if v not in (-1, 1)}
        if bad:
            w = min(bad, key=word_key)
            raise RangeViolation(f"M({self.alphabet.format(w)}) = {bad[w]} ({self.provenance})")

    def __getitem__(self, w: "Word | Letters | str") -> int:
        if isinstance(w, str):
            w = self.alphabet.word(w)
        key = w.letters if isinstance(w, Word) else tuple(w)
        if len(key) > self.max_len:
            raise KeyError(f"word of length {len(key)} is beyond {self.max_len}")
        return self.values.get(key, 0)

    def nonzero(self) -> list[Letters]:
        return sorted(self.values, key=word_key)

    def as_series(self) -> NcSeries:
        return NcSeries(self.alphabet, self.max_len, self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MTable):
            return NotImplemented
        return (self.alphabet, self.max_len, self.values) == (other.alphabet, other.max_len, other.values)

    def first_difference(self, other: "MTable") -> Letters | None:
        bad = [w for w in set(self.values) | set(other.values) if self[w] != other[w]]
        return min(bad, key=word_key) if bad else None

    def to_json(self) -> list[dict]:
        return [{"word": self.alphabet.format(w), "M": self.values[w], "provenance": self.provenance}
                for w in self.nonzero()]

    def render(self) -> str:
        lines = [f"# nonzero M(w), |w| <= {self.max_len} ({self.provenance}); all other words have M = 0"]
        for w in self.nonzero():
            lines.append(f"{self.alphabet.format(w)}\t{self.values[w]:+d}")
        return "\n".join(lines)


def _base(alphabet: Alphabet, max_len: int) -> dict[Letters, int]:
    out = {(): 1}
    if max_len >= 1:
        out.update({(a,): -1 for a in range(len(alphabet))})
    return out


def m_by_inversion(F: ForbiddenSet, max_len: int) -> MTable:
    T = invert(avoiding_series(F, max_len))
    return MTable(F.alphabet, max_len, dict(T.coeffs), "inversion")


def m_by_clusters(F: ForbiddenSet, max_len: int) -> MTable:
    """M(w) = -P_{F,w}(-1) for |w| >= 2, using the reduced set."""
    G = reduce_forbidden(F)
    values = _base(F.alphabet, max_len)
    for w in cluster_words(G, max_len):
        tr = _trace(w, G.patterns)
        if tr is not None:
            values[w] = -tr.polynomial(-1)
    return MTable(F.alphabet, max_len, values, "cluster_eval")


@dataclass(frozen=True)
class SalientRecord:
    word: Word
    sign: int
    witness: Word | None = None
    candidates: tuple[Word, ...] = field(default=())

    def chain(self, records: dict[Letters, "SalientRecord"]) -> list[Word]:
        """This word followed by its witness, the witness's witness, and so on."""
        out = [self.word]
        rec = self
        while rec.witness is not None:
            rec = records[rec.witness.letters]
            out.append(rec.word)
        return out


def salient_words(F: ForbiddenSet, max_len: int) -> list[SalientRecord]:
    """Salient words of length 2..max_len, found by the prefix recursion.

    A member of F is salient with sign +1. Any other cluster word whose last
    forbidden occurrence starts at letter j is salient exactly when one of its
    prefixes of length j..n-1 (the candidates) is salient, and then takes the
    opposite sign.
    """
    G = reduce_forbidden(F)
    alpha = F.alphabet
    records: dict[Letters, SalientRecord] = {}
    for w in cluster_words(G, max_len):
        word = Word(alpha, w)
        if w in G.patterns:
            records[w] = SalientRecord(word, 1)
            continue
        n = len(w)
        last = next(p for p in G.patterns if len(p) <= n and w[n - len(p):] == p)
        j = n - len(last) + 1
        cands = tuple(Word(alpha, w[:m]) for m in range(j, n))
        hits = [c for c in cands if c.letters in records]
        if len(hits) == 1:
            records[w] = SalientRecord(word, -records[hits[0].letters].sign, hits[0], cands)
    return [records[w] for w in sorted(records, key=word_key)]


def m_by_salient(F: ForbiddenSet, max_len: int) -> MTable:
    values = _base(F.alphabet, max_len)
    for rec in salient_words(F, max_len):
        values[rec.word.letters] = rec.sign
    return MTable(F.alphabet, max_len, values, "salient")


METHODS = {"inversion": m_by_inversion, "clusters": m_by_clusters, "salient": m_by_salient}


def m_table(F: ForbiddenSet, max_len: int, method: str = "all") -> MTable:
    """M table along one route, or along all three with a hard cross-check."""
    if method != "all":
        return METHODS[method](F, max_len)
    tables = {name: fn(F, max_len) for name, fn in METHODS.items()}
    ref = tables["inversion"]
    for name, tab in tables.items():
        bad = ref.first_difference(tab)
        if bad is not None:
            raise PathDisagreement(F.alphabet.format(bad), {k: t[bad] for k, t in tables.items()})
    return MTable(F.alphabet, max_len, ref.values, "all")


def _validate_sign_input(u: Sequence[int], r: Sequence[int]) -> None:
    m = len(u)
    if m == 0 or u[0] != -1:
        raise ValueError("the sequence must start with u_1 = -1")
    if len(r) != m - 1:
        raise ValueError(f"need r_2..r_m ({m - 1} values), got {len(r)}")
    for k in range(2, m + 1):
        rk = r[k - 2]
        if not 1 <= rk <= k - 1:
            raise ValueError(f"r_{k} = {rk} is outside [1, {k - 1}]")
        if u[k - 1] != -sum(u[rk - 1:k - 1]):
            raise ValueError(f"u_{k} = {u[k - 1]} does not satisfy the recurrence")


def check_sign_lemma(u: Sequence[int], r: Sequence[int]) -> bool:
    """Nonzero entries of u alternate -1, 1, -1, ...

    When r is weakly increasing, also require every defining sum to have at
    most two nonzero terms. ``r`` lists r_2..r_m, 1-based.
    """
    _validate_sign_input(u, r)
    nz = [x for x in u if x]
    if any(x != (-1 if i % 2 == 0 else 1) for i, x in enumerate(nz)):
        return False
    if all(a <= b for a, b in zip(r, r[1:])):
        for k in range(2, len(u) + 1):
            if sum(1 for x in u[r[k - 2] - 1:k - 1] if x) > 2:
                return False
    return True


def sign_sequence(r: Sequence[int]) -> list[int]:
    """The sequence u determined by u_1 = -1 and the offsets r_2..r_m."""
    u = [-1]
    for k in range(2, len(r) + 2):
        u.append(-sum(u[r[k - 2] - 1:k - 1]))
    return u


def random_offsets(rng: random.Random, m: int, weakly_increasing: bool = False) -> list[int]:
    r = [rng.randint(1, k - 1) for k in range(2, m + 1)]
    if weakly_increasing:
        out, lo = [], 1
        for k in range(2, m + 1):
            lo = rng.randint(lo, k - 1)
            out.append(lo)
        r = out
    return r


def complement2(F: ForbiddenSet) -> ForbiddenSet:
    """All length-2 words not in F."""
    k = len(F.alphabet)
    return ForbiddenSet(F.alphabet, [(a, b) for a in range(k) for b in range(k) if (a, b) not in F.patterns])


def csv_check(F: ForbiddenSet, max_len: int) -> Report:
    """Avoiding series of F against the inverse of the signed avoiding series of its complement."""
    if any(len(p) != 2 for p in F.patterns):
        raise ValueError(f"{F} has a word whose length is not 2")
    Fbar = complement2(F)
    lhs = avoiding_series(F, max_len)
    signed = NcSeries(F.alphabet, max_len, {w: (-1) ** len(w) for w in avoiding_words(Fbar, max_len)})
    report = Report(f"length-2 complement identity for F={F}, complement={Fbar}", max_len)
    report.checks.append(compare_series("complement", lhs, invert(signed)))
    return report


def path_agreement(F: ForbiddenSet, max_len: int) -> IdentityCheck:
    """All three routes agree (and stay in range) up to max_len."""
    name = "M paths agree"
    try:
        tab = m_table(F, max_len, "all")
    except PathDisagreement as exc:
        return IdentityCheck(name, False, 0, exc.word, str(exc.values.get("inversion")), str(exc.values))
    except RangeViolation as exc:
        return IdentityCheck(name, False, 0, None, "{-1,0,1}", str(exc))
    return IdentityCheck(name, True, len(tab.values))
