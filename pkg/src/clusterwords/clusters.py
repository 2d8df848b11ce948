"""Marked words, clusters and cluster polynomials.

A mark is a forbidden-word occurrence, stored as a :class:`~.words.Span`
plus the index of the pattern in ``F.patterns``. A marked word is a cluster
when its word has length >= 2 and the gap intervals ``[start, end)`` of its
marks cover ``[1, |w|)``: sorted by start, the first mark starts at letter 1,
the marks overlap their predecessors' reach by at least one letter, and the
reach finally hits the last letter.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence, Union

from .ncseries import IntPoly, NcPolySeries
from .words import (
    ForbiddenSet,
    Letters,
    Occurrence,
    Span,
    Word,
    check_enumeration_budget,
    occurrences,
    scan,
    word_key,
)
from .words import reduce as reduce_forbidden

Mark = tuple[Span, int]


class NotReduced(ValueError):
    pass


class NotAClusterWord(ValueError):
    pass


def _mark_key(mark: Mark) -> tuple[int, int, int]:
    span, idx = mark
    return (span.start, span.end, idx)


@dataclass(frozen=True)
class MarkedWord:
    word: Word
    forbidden: ForbiddenSet
    marks: frozenset[Mark] = field(default_factory=frozenset)

    def __post_init__(self):
        marks = frozenset(self.marks)
        object.__setattr__(self, "marks", marks)
        if self.word.alphabet != self.forbidden.alphabet:
            raise ValueError("marked word and forbidden set use different alphabets")
        letters = self.word.letters
        for span, idx in marks:
            if not 0 <= idx < len(self.forbidden.patterns):
                raise ValueError(f"pattern index {idx} out of range")
            pat = self.forbidden.patterns[idx]
            if span.pattern_len != len(pat) or span.end > len(letters) or letters[span.start - 1:span.end] != pat:
                raise ValueError(
                    f"mark {span} does not hold {self.forbidden.alphabet.format(pat)} in {self.word}"
                )

    @classmethod
    def from_occurrences(cls, word: Word, forbidden: ForbiddenSet, occs: Iterable[Occurrence]) -> "MarkedWord":
        return cls(word, forbidden, frozenset((o.span, o.index) for o in occs))

    @classmethod
    def from_intervals(cls, word: Word, forbidden: ForbiddenSet, intervals: Iterable[tuple[int, int]]) -> "MarkedWord":
        """Build from gap intervals ``(i, j)`` meaning ``[i, j)``; the pattern is read off the word."""
        marks = []
        for i, j in intervals:
            span = Span.from_interval(i, j)
            sub = word.letters[span.start - 1:span.end]
            if sub not in forbidden.patterns:
                raise ValueError(f"[{i},{j}) of {word} is not a forbidden word")
            marks.append((span, forbidden.patterns.index(sub)))
        return cls(word, forbidden, frozenset(marks))

    def sorted_marks(self) -> list[Mark]:
        return sorted(self.marks, key=_mark_key)

    def intervals(self) -> list[tuple[int, int]]:
        return [span.interval for span, _ in self.sorted_marks()]

    def __len__(self) -> int:
        return len(self.word)

    def concat(self, other: "MarkedWord") -> "MarkedWord":
        shift = len(self.word)
        moved = {(Span(s.start + shift, s.pattern_len), idx) for s, idx in other.marks}
        return MarkedWord(self.word + other.word, self.forbidden, self.marks | moved)

    def render(self) -> str:
        """The word on one line, then one underline row per mark."""
        alpha = self.word.alphabet
        cells = [alpha.letters[i] for i in self.word.letters]
        width = max((len(c) for c in cells), default=1)
        sep = "" if alpha.compact else " "
        lines = [sep.join(c.ljust(width) for c in cells).rstrip() or "1"]
        for span, _ in self.sorted_marks():
            row = []
            for pos in range(1, len(cells) + 1):
                row.append(("-" if span.start <= pos <= span.end else " ") * width)
            lines.append(sep.join(row).rstrip())
        return "\n".join(lines)

    def __str__(self) -> str:
        ivs = ", ".join(f"[{i},{j})" for i, j in self.intervals())
        return f"({self.word}, {{{ivs}}})"


def _covers(n: int, raw: Sequence[tuple[int, int, int]]) -> bool:
    if n < 2 or not raw:
        return False
    reach = 1
    for s, e, _ in sorted(raw):
        if s > reach:
            return False
        reach = max(reach, e)
    return reach == n


def is_cluster(mw: MarkedWord) -> bool:
    raw = [(s.start, s.end, idx) for s, idx in mw.marks]
    return _covers(len(mw.word), raw)


def _cluster_subsets(n: int, occ: Sequence[tuple[int, int, int]]) -> Iterable[tuple[int, ...]]:
    """Index tuples of the occurrence subsets that cover ``[1, n)``.

    Occurrences are visited in (start, end, index) order; a branch dies as
    soon as the next occurrence starts past the current reach, since no
    later one can close the gap.
    """
    m = len(occ)
    chosen: list[int] = []

    def go(k: int, reach: int):
        if k == m or occ[k][0] > reach:
            if chosen and reach == n:
                yield tuple(chosen)
            return
        s, e, _ = occ[k]
        chosen.append(k)
        yield from go(k + 1, max(reach, e))
        chosen.pop()
        yield from go(k + 1, reach)

    if n >= 2:
        yield from go(0, 1)


def enumerate_clusters(w: Word, F: ForbiddenSet) -> list[tuple[Occurrence, ...]]:
    """Every mark set I on w that makes (w, I) a cluster.

    Sorted by number of marks, then by mark positions.
    """
    occs = occurrences(w, F)
    raw = [o.key for o in occs]
    found = [tuple(occs[k] for k in sub) for sub in _cluster_subsets(len(w), raw)]
    found.sort(key=lambda I: (len(I), [o.key for o in I]))
    return found


def _poly_subset(letters: Letters, patterns) -> IntPoly:
    counts: dict[int, int] = {}
    for sub in _cluster_subsets(len(letters), scan(letters, patterns)):
        counts[len(sub)] = counts.get(len(sub), 0) + 1
    if not counts:
        return IntPoly()
    out = [0] * (max(counts) + 1)
    for k, c in counts.items():
        out[k] = c
    return IntPoly(out)


@dataclass(frozen=True)
class RecurrenceTrace:
    """Data of the prefix recurrence ``p_k = t (p_{r_k} + ... + p_{k-1})``.

    ``r[k-2]`` holds ``r_k`` and ``p[k-1]`` holds ``p_k`` (1-based k).
    """

    spans: tuple[Span, ...]
    r: tuple[int, ...]
    p: tuple[IntPoly, ...]

    @property
    def m(self) -> int:
        return len(self.spans)

    @property
    def polynomial(self) -> IntPoly:
        return self.p[-1]


def _trace(letters: Letters, patterns) -> RecurrenceTrace | None:
    occ = scan(letters, patterns)
    n = len(letters)
    if not occ or occ[0][0] != 1 or occ[-1][1] != n:
        return None
    starts = [s for s, _, _ in occ]
    ends = [e for _, e, _ in occ]
    if len(set(starts)) != len(starts) or any(a >= b for a, b in zip(ends, ends[1:])):
        raise NotReduced("occurrences are nested; the forbidden set is not reduced")
    t = IntPoly.t()
    r: list[int] = []
    p = [t]
    for k in range(1, len(occ)):
        if ends[k - 1] < starts[k]:
            return None
        rk = next(l for l in range(k) if ends[l] >= starts[k])
        r.append(rk + 1)
        acc = IntPoly()
        for l in range(rk, k):
            acc = acc + p[l]
        p.append(t * acc)
    spans = tuple(Span(s, e - s + 1) for s, e, _ in occ)
    return RecurrenceTrace(spans, tuple(r), tuple(p))


def _require_reduced(F: ForbiddenSet) -> None:
    if not F.is_reduced:
        raise NotReduced(f"{F} is not reduced; the recurrence needs a reduced set")


def recurrence_trace(w: Word, F: ForbiddenSet) -> RecurrenceTrace:
    _require_reduced(F)
    if w.alphabet != F.alphabet:
        raise ValueError("word and forbidden set use different alphabets")
    tr = _trace(w.letters, F.patterns)
    if tr is None:
        raise NotAClusterWord(f"{w} is not a cluster word for {F}")
    return tr


Method = Literal["subset", "recurrence"]


def cluster_polynomial(w: Word, F: ForbiddenSet, method: Method = "subset") -> IntPoly:
    """Sum of t^|I| over the clusters (w, I); zero when w is not a cluster word."""
    if w.alphabet != F.alphabet:
        raise ValueError("word and forbidden set use different alphabets")
    if method == "subset":
        return _poly_subset(w.letters, F.patterns)
    if method == "recurrence":
        _require_reduced(F)
        tr = _trace(w.letters, F.patterns)
        return tr.polynomial if tr is not None else IntPoly()
    raise ValueError(f"unknown method {method!r}")


def cluster_words(F: ForbiddenSet, max_len: int) -> list[Letters]:
    """All cluster words of length <= max_len, in canonical order.

    Grows partial clusters breadth first: a cluster word u extends to
    ``u + x`` whenever some forbidden word starts inside u, matches u's
    tail, and runs past u's end by the letters x.
    """
    pats = F.patterns
    seen = {p for p in pats if len(p) <= max_len}
    queue = deque(sorted(seen, key=word_key))
    while queue:
        u = queue.popleft()
        n = len(u)
        for f in pats:
            m = len(f)
            for s in range(max(0, n - m + 1), n):
                ext = n + (m - (n - s))
                if ext > max_len:
                    continue
                if u[s:] == f[:n - s]:
                    v = u + f[n - s:]
                    if v not in seen:
                        seen.add(v)
                        queue.append(v)
    return sorted(seen, key=word_key)


def cluster_words_scan(F: ForbiddenSet, max_len: int) -> list[Letters]:
    """Oracle for :func:`cluster_words`: test every word of length <= max_len."""
    check_enumeration_budget(F.alphabet, max_len)
    return [
        w for w in F.alphabet.words_upto(max_len)
        if _covers(len(w), scan(w, F.patterns))
    ]


def cluster_gf(F: ForbiddenSet, max_len: int, method: Literal["extend", "scan"] = "extend") -> NcPolySeries:
    """The series sum of P_{F,w}(t) w over words of length <= max_len."""
    words = cluster_words(F, max_len) if method == "extend" else cluster_words_scan(F, max_len)
    fast = F.is_reduced
    coeffs = {}
    for w in words:
        if fast:
            tr = _trace(w, F.patterns)
            poly = tr.polynomial if tr is not None else IntPoly()
        else:
            poly = _poly_subset(w, F.patterns)
        if poly:
            coeffs[w] = poly
    return NcPolySeries(F.alphabet, max_len, coeffs)


Segment = Union[Word, MarkedWord]


def factor_marked_word(mw: MarkedWord) -> list[Segment]:
    """Split a marked word into unmarked letters and clusters.

    Marks are merged into blocks of overlapping letter ranges; each block is
    a cluster (re-based to start at letter 1) and every letter outside all
    blocks is its own segment.
    """
    n = len(mw.word)
    marks = mw.sorted_marks()
    blocks: list[tuple[int, int, list[Mark]]] = []
    for span, idx in marks:
        if blocks and span.start <= blocks[-1][1]:
            lo, hi, ms = blocks[-1]
            blocks[-1] = (lo, max(hi, span.end), ms + [(span, idx)])
        else:
            blocks.append((span.start, span.end, [(span, idx)]))
    out: list[Segment] = []
    pos = 1
    for lo, hi, ms in blocks:
        for i in range(pos, lo):
            out.append(mw.word[i - 1:i])
        sub = mw.word[lo - 1:hi]
        shifted = frozenset((Span(s.start - lo + 1, s.pattern_len), idx) for s, idx in ms)
        out.append(MarkedWord(sub, mw.forbidden, shifted))
        pos = hi + 1
    for i in range(pos, n + 1):
        out.append(mw.word[i - 1:i])
    return out


def concat_segments(segments: Sequence[Segment], forbidden: ForbiddenSet) -> MarkedWord:
    out = MarkedWord(Word(forbidden.alphabet, ()), forbidden)
    for seg in segments:
        if isinstance(seg, Word):
            seg = MarkedWord(seg, forbidden)
        out = out.concat(seg)
    return out


def reduced(F: ForbiddenSet) -> ForbiddenSet:
    return F if F.is_reduced else reduce_forbidden(F)
