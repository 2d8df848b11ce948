"""Alphabets, words, forbidden-word sets and occurrence scanning."""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

Letters = tuple[int, ...]

# Brute-force paths enumerate every word of length <= L.
MAX_ENUMERATION = 10**7


class AlphabetMismatch(ValueError):
    pass


class EnumerationTooLarge(ValueError):
    pass


_POWER = re.compile(r"^(.+)\^(\d+)$")


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of letter tokens.

    The order of ``letters`` fixes the canonical word order: shorter words
    first, then lexicographic by letter index.
    """

    letters: tuple[str, ...]

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        for tok in letters:
            if not isinstance(tok, str) or not tok:
                raise ValueError(f"letters must be nonempty strings, got {tok!r}")
            if "." in tok or "^" in tok or tok.isspace():
                raise ValueError(f"letter {tok!r} contains a reserved character")
        if len(set(letters)) != len(letters):
            raise ValueError(f"letters must be distinct: {letters}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        """``"abc"`` or ``"x1,x2"`` (commas or dots separate multi-character tokens)."""
        text = text.strip()
        if "," in text or "." in text:
            toks = [t.strip() for t in re.split(r"[,.]", text) if t.strip()]
        else:
            toks = list(text)
        return cls(toks)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    @property
    def compact(self) -> bool:
        return all(len(tok) == 1 for tok in self.letters)

    def index(self, token: str) -> int:
        try:
            return self.letters.index(token)
        except ValueError:
            raise ValueError(f"{token!r} is not a letter of {self}") from None

    def word(self, text: "str | Word | Sequence[int]") -> "Word":
        if isinstance(text, Word):
            if text.alphabet != self:
                raise AlphabetMismatch(f"{text} is over {text.alphabet}, not {self}")
            return text
        if isinstance(text, str):
            return Word(self, self._parse(text))
        return Word(self, tuple(text))

    def _parse(self, text: str) -> Letters:
        text = text.strip()
        if text in ("", "1") and "1" not in self.letters:
            return ()
        if "." in text or not self.compact:
            chunks = text.split(".")
        else:
            chunks = re.findall(r".(?:\^\d+)?", text)
        out: list[int] = []
        for chunk in chunks:
            m = _POWER.match(chunk)
            if m:
                out.extend([self.index(m.group(1))] * int(m.group(2)))
            else:
                out.append(self.index(chunk))
        return tuple(out)

    def format(self, letters: Sequence[int], powers: bool = False) -> str:
        if not letters:
            return "1"
        if powers and len(letters) > 1 and len(set(letters)) == 1:
            return f"{self.letters[letters[0]]}^{len(letters)}"
        sep = "" if self.compact else "."
        return sep.join(self.letters[i] for i in letters)

    def words(self, n: int) -> Iterator[Letters]:
        """All letter tuples of length n, in canonical order."""
        return itertools.product(range(len(self.letters)), repeat=n)

    def words_upto(self, max_len: int) -> Iterator[Letters]:
        for n in range(max_len + 1):
            yield from self.words(n)

    def __str__(self) -> str:
        return "{" + ",".join(self.letters) + "}"


def check_enumeration_budget(alphabet: Alphabet, max_len: int, limit: int = MAX_ENUMERATION) -> None:
    total = sum(len(alphabet) ** n for n in range(max_len + 1))
    if total > limit:
        raise EnumerationTooLarge(
            f"enumerating all words of length <= {max_len} over {len(alphabet)} letters "
            f"means {total} words (limit {limit}); lower the length bound"
        )


def word_key(letters: Sequence[int]) -> tuple[int, Sequence[int]]:
    """Sort key for the canonical word order."""
    return (len(letters), letters)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: Letters

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        k = len(self.alphabet)
        for i in self.letters:
            if not (isinstance(i, int) and 0 <= i < k):
                raise ValueError(f"letter index {i!r} out of range for {self.alphabet}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.alphabet.format(self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def __getitem__(self, item: slice) -> "Word":
        if not isinstance(item, slice):
            raise TypeError("words are sliced, not indexed; use .letters for indices")
        return Word(self.alphabet, self.letters[item])

    def __lt__(self, other: "Word") -> bool:
        return word_key(self.letters) < word_key(other.letters)


@dataclass(frozen=True)
class Span:
    """An occurrence position: letters ``start .. end`` inclusive, 1-based.

    The same block written as a half-open interval of letter gaps is
    ``[start, end)``; its integer set ``{start, ..., end - 1}`` has one
    element fewer than the pattern length.
    """

    start: int
    pattern_len: int

    def __post_init__(self):
        if self.start < 1 or self.pattern_len < 1:
            raise ValueError(f"invalid span start={self.start} len={self.pattern_len}")

    @property
    def end(self) -> int:
        return self.start + self.pattern_len - 1

    @property
    def interval(self) -> tuple[int, int]:
        """Half-open gap interval ``(i, j)`` standing for ``[i, j)``."""
        return (self.start, self.end)

    @classmethod
    def from_interval(cls, i: int, j: int) -> "Span":
        if not i < j:
            raise ValueError(f"[{i},{j}) is not a valid mark interval")
        return cls(i, j - i + 1)

    def gaps(self) -> range:
        return range(self.start, self.end)

    def __str__(self) -> str:
        return f"[{self.start},{self.end})"


class Occurrence(NamedTuple):
    span: Span
    pattern: Word
    index: int

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.span.start, self.span.end, self.index)


@dataclass(frozen=True)
class ForbiddenSet:
    """A finite set of forbidden words, each of length at least two.

    ``patterns`` holds the members as letter tuples in canonical order;
    pattern indices used by marks refer to this order.
    """

    alphabet: Alphabet
    patterns: tuple[Letters, ...]

    def __init__(self, alphabet: Alphabet, words: Iterable["str | Word | Sequence[int]"] = ()):
        pats = set()
        for w in words:
            letters = alphabet.word(w).letters
            if len(letters) < 2:
                raise ValueError(
                    f"forbidden word {alphabet.format(letters)!r} has length {len(letters)}; "
                    "forbidden words need length >= 2"
                )
            pats.add(letters)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "patterns", tuple(sorted(pats, key=word_key)))

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, w: "Word | Sequence[int]") -> bool:
        letters = w.letters if isinstance(w, Word) else tuple(w)
        return letters in self.patterns

    @property
    def words(self) -> list[Word]:
        return [Word(self.alphabet, p) for p in self.patterns]

    @property
    def is_reduced(self) -> bool:
        return len(reduce(self)) == len(self)

    @property
    def max_pattern_len(self) -> int:
        return max((len(p) for p in self.patterns), default=0)

    def __str__(self) -> str:
        return "{" + ", ".join(self.alphabet.format(p) for p in self.patterns) + "}"


def is_factor(u: Sequence[int], v: Sequence[int]) -> bool:
    """True if u occurs as a consecutive block of v."""
    n = len(u)
    return any(tuple(v[i:i + n]) == tuple(u) for i in range(len(v) - n + 1))


def scan(letters: Sequence[int], patterns: Sequence[Letters]) -> list[tuple[int, int, int]]:
    """Raw occurrences as ``(start, end, pattern index)``, 1-based inclusive, sorted."""
    letters = tuple(letters)
    n = len(letters)
    found = []
    for idx, p in enumerate(patterns):
        m = len(p)
        for i in range(n - m + 1):
            if letters[i:i + m] == p:
                found.append((i + 1, i + m, idx))
    found.sort()
    return found


def _check(w: Word, F: ForbiddenSet) -> None:
    if w.alphabet != F.alphabet:
        raise AlphabetMismatch(f"word {w} is over {w.alphabet} but F is over {F.alphabet}")


def occurrences(w: Word, F: ForbiddenSet) -> list[Occurrence]:
    _check(w, F)
    words = F.words
    return [
        Occurrence(Span(s, e - s + 1), words[idx], idx)
        for s, e, idx in scan(w.letters, F.patterns)
    ]


def avoids(w: Word, F: ForbiddenSet) -> bool:
    _check(w, F)
    return not any(is_factor(p, w.letters) for p in F.patterns)


def reduce(F: ForbiddenSet) -> ForbiddenSet:
    """Drop every member that contains another member; the avoiding set is unchanged."""
    keep = [
        p for p in F.patterns
        if not any(q != p and is_factor(q, p) for q in F.patterns)
    ]
    return ForbiddenSet(F.alphabet, keep)


def random_forbidden_set(
    alphabet: Alphabet,
    rng: random.Random,
    max_size: int = 3,
    max_pattern_len: int = 4,
    reduced: bool = True,
) -> ForbiddenSet:
    """A random nonempty forbidden set; reduced unless asked otherwise."""
    k = len(alphabet)
    size = rng.randint(1, max_size)
    pats = []
    for _ in range(size):
        m = rng.randint(2, max_pattern_len)
        pats.append(tuple(rng.randrange(k) for _ in range(m)))
    F = ForbiddenSet(alphabet, pats)
    return reduce(F) if reduced else F
