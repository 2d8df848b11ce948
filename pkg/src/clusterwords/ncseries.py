"""Truncated noncommutative power series over a finite alphabet.

Coefficients are exact integers (:class:`NcSeries`) or integer polynomials
in one variable ``t`` (:class:`NcPolySeries`). A series stores only the
words of length at most its truncation bound ``max_len``; arithmetic on two
series truncates to the smaller bound.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterator, Mapping, Sequence, Union

from .words import Alphabet, AlphabetMismatch, Letters, Word, word_key


class IntPoly:
    """Dense polynomial in ``t`` with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def t(cls, power: int = 1) -> "IntPoly":
        return cls([0] * power + [1])

    @classmethod
    def coerce(cls, x: "IntPoly | int") -> "IntPoly":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return cls([x])
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if not isinstance(other, IntPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        out = IntPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c: int) -> "IntPoly":
        """The polynomial ``p(t + c)``."""
        out = IntPoly()
        step = IntPoly([c, 1])
        for coef in reversed(self.coeffs):
            out = out * step + coef
        return out

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if abs(c) == 1 else f"{abs(c)}{var}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


Coeff = Union[int, IntPoly]
WordLike = Union[Word, Letters, str]


class NcSeries:
    """Truncated series with exact integer coefficients.

    ``S[w]`` accepts a :class:`Word`, a tuple of letter indices, or word text.
    Equality compares the two series at the smaller truncation bound.
    """

    def __init__(self, alphabet: Alphabet, max_len: int, coeffs: Mapping[WordLike, Coeff] | None = None):
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        self.alphabet = alphabet
        self.max_len = max_len
        self.coeffs: dict[Letters, Coeff] = {}
        k = len(alphabet)
        for w, c in (coeffs or {}).items():
            key = self._key(w)
            if any(not 0 <= i < k for i in key):
                raise ValueError(f"word {w!r} is not over {alphabet}")
            c = self._coerce(c)
            if len(key) <= max_len and c:
                self.coeffs[key] = self.coeffs.get(key, self._zero()) + c
        self.coeffs = {w: c for w, c in self.coeffs.items() if c}

    # ring hooks

    @staticmethod
    def _coerce(c) -> Coeff:
        if isinstance(c, IntPoly):
            raise TypeError("integer series cannot hold polynomial coefficients")
        return int(c)

    @staticmethod
    def _zero() -> Coeff:
        return 0

    @staticmethod
    def _unit_inverse(c: Coeff) -> Coeff:
        if c not in (1, -1):
            raise ValueError(f"constant term {c} is not a unit")
        return c

    def _key(self, w: WordLike) -> Letters:
        if isinstance(w, str):
            return self.alphabet.word(w).letters
        if isinstance(w, Word):
            if w.alphabet != self.alphabet:
                raise AlphabetMismatch(f"{w} is not over {self.alphabet}")
            return w.letters
        return tuple(w)

    def _new(self, max_len: int, coeffs: dict) -> "NcSeries":
        out = type(self).__new__(type(self))
        out.alphabet = self.alphabet
        out.max_len = max_len
        out.coeffs = {w: c for w, c in coeffs.items() if c and len(w) <= max_len}
        return out

    # constructors

    @classmethod
    def one(cls, alphabet: Alphabet, max_len: int) -> "NcSeries":
        return cls(alphabet, max_len, {(): 1})

    @classmethod
    def letter_sum(cls, alphabet: Alphabet, max_len: int) -> "NcSeries":
        return cls(alphabet, max_len, {(i,): 1 for i in range(len(alphabet))})

    # access

    def __getitem__(self, w: WordLike) -> Coeff:
        key = self._key(w)
        if len(key) > self.max_len:
            raise KeyError(f"word of length {len(key)} is beyond truncation {self.max_len}")
        return self.coeffs.get(key, self._zero())

    def __len__(self) -> int:
        return len(self.coeffs)

    def items(self) -> Iterator[tuple[Letters, Coeff]]:
        """Nonzero terms in canonical word order."""
        for w in sorted(self.coeffs, key=word_key):
            yield w, self.coeffs[w]

    def terms(self) -> Iterator[tuple[Word, Coeff]]:
        for w, c in self.items():
            yield Word(self.alphabet, w), c

    def by_length(self) -> list[dict[Letters, Coeff]]:
        out: list[dict[Letters, Coeff]] = [{} for _ in range(self.max_len + 1)]
        for w, c in self.coeffs.items():
            out[len(w)][w] = c
        return out

    def truncate(self, max_len: int) -> "NcSeries":
        return self._new(min(max_len, self.max_len), self.coeffs)

    # arithmetic

    def _compatible(self, other: "NcSeries") -> tuple["NcSeries", "NcSeries"]:
        if not isinstance(other, NcSeries):
            raise TypeError(f"expected a series, got {type(other).__name__}")
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"series over {self.alphabet} and {other.alphabet}")
        a, b = self, other
        if isinstance(b, NcPolySeries) and not isinstance(a, NcPolySeries):
            a = a.to_poly()
        elif isinstance(a, NcPolySeries) and not isinstance(b, NcPolySeries):
            b = b.to_poly()
        return a, b

    def __add__(self, other: "NcSeries") -> "NcSeries":
        return add(self, other)

    def __neg__(self) -> "NcSeries":
        return scale(self, -1)

    def __sub__(self, other: "NcSeries") -> "NcSeries":
        return add(self, scale(other, -1))

    def __mul__(self, other) -> "NcSeries":
        if isinstance(other, (int, IntPoly)):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other) -> "NcSeries":
        if isinstance(other, (int, IntPoly)):
            return scale(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcSeries):
            return NotImplemented
        if self.alphabet != other.alphabet:
            return False
        L = min(self.max_len, other.max_len)
        a = {w: c for w, c in self.coeffs.items() if len(w) <= L}
        b = {w: c for w, c in other.coeffs.items() if len(w) <= L}
        return a == b

    __hash__ = None

    def first_difference(self, other: "NcSeries") -> Letters | None:
        """Shortest canonical word whose coefficients differ, or None."""
        L = min(self.max_len, other.max_len)
        keys = {w for w in self.coeffs if len(w) <= L} | {w for w in other.coeffs if len(w) <= L}
        bad = [w for w in keys if self[w] != other[w]]
        return min(bad, key=word_key) if bad else None

    def invert(self) -> "NcSeries":
        return invert(self)

    def to_poly(self) -> "NcPolySeries":
        return NcPolySeries(self.alphabet, self.max_len, self.coeffs)

    # rendering

    def _format_coeff(self, c: Coeff, word: str) -> tuple[bool, str]:
        if word == "1":
            return c < 0, str(abs(c))
        return c < 0, word if abs(c) == 1 else f"{abs(c)}{word}"

    def render(self) -> str:
        parts = []
        for w, c in self.items():
            neg, body = self._format_coeff(c, self.alphabet.format(w, powers=True))
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()!r}, max_len={self.max_len})"

    def to_json(self) -> list[dict]:
        return [{"word": self.alphabet.format(w), "coeff": c} for w, c in self.items()]


class NcPolySeries(NcSeries):
    """Truncated series with coefficients in Z[t]."""

    @staticmethod
    def _coerce(c) -> Coeff:
        return IntPoly.coerce(c)

    @staticmethod
    def _zero() -> Coeff:
        return IntPoly()

    @staticmethod
    def _unit_inverse(c: Coeff) -> Coeff:
        if c == 1 or c == -1:
            return c
        raise ValueError(f"constant term {c} is not a unit of Z[t]")

    def to_poly(self) -> "NcPolySeries":
        return self

    def eval_t(self, t0: int) -> NcSeries:
        return eval_t(self, t0)

    def shift_t(self, c: int) -> "NcPolySeries":
        """Substitute ``t -> t + c`` in every coefficient."""
        return self._new(self.max_len, {w: p.shift(c) for w, p in self.coeffs.items()})

    def _format_coeff(self, c: IntPoly, word: str) -> tuple[bool, str]:
        if c.is_monomial():
            lead = c.coeffs[-1]
            if c.degree == 0:
                return NcSeries._format_coeff(self, lead, word)
            mono = str(IntPoly.t(c.degree) * abs(lead))
            return lead < 0, mono if word == "1" else f"{mono} {word}"
        return False, f"({c})" if word == "1" else f"({c}) {word}"

    def to_json(self) -> list[dict]:
        return [{"word": self.alphabet.format(w), "poly": list(p.coeffs)} for w, p in self.items()]


def add(S: NcSeries, T: NcSeries) -> NcSeries:
    S, T = S._compatible(T)
    L = min(S.max_len, T.max_len)
    out = {w: c for w, c in S.coeffs.items() if len(w) <= L}
    for w, c in T.coeffs.items():
        if len(w) <= L:
            out[w] = out[w] + c if w in out else c
    return S._new(L, out)


def scale(S: NcSeries, c: Coeff) -> NcSeries:
    if isinstance(c, IntPoly) and not isinstance(S, NcPolySeries):
        S = S.to_poly()
    return S._new(S.max_len, {w: x * c for w, x in S.coeffs.items()})


def mul(S: NcSeries, T: NcSeries) -> NcSeries:
    """Cauchy product by concatenation, truncated to the smaller bound."""
    S, T = S._compatible(T)
    L = min(S.max_len, T.max_len)
    s_len = S.by_length()
    t_len = T.by_length()
    out: dict[Letters, Coeff] = defaultdict(S._zero)
    for i in range(L + 1):
        for j in range(L + 1 - i):
            if i >= len(s_len) or j >= len(t_len):
                continue
            for p, a in s_len[i].items():
                for q, b in t_len[j].items():
                    out[p + q] = out[p + q] + a * b
    return S._new(L, out)


def invert(S: NcSeries) -> NcSeries:
    """Two-sided inverse, built length by length.

    ``T(1) = S(1)^-1`` and ``T(v) = -S(1)^-1 * sum S(p) T(q)`` over the
    factorizations ``v = pq`` with ``p`` nonempty. Only products of
    nonzero terms are visited.
    """
    u = S._unit_inverse(S[()])
    L = S.max_len
    s_len = S.by_length()
    t_len: list[dict[Letters, Coeff]] = [{(): u}]
    for n in range(1, L + 1):
        acc: dict[Letters, Coeff] = defaultdict(S._zero)
        for k in range(1, n + 1):
            for p, a in s_len[k].items():
                for q, b in t_len[n - k].items():
                    acc[p + q] = acc[p + q] + a * b
        t_len.append({v: -(u * c) for v, c in acc.items() if c})
    coeffs = {}
    for layer in t_len:
        coeffs.update(layer)
    return S._new(L, coeffs)


def eval_t(S: NcPolySeries, t0: int) -> NcSeries:
    out = NcSeries(S.alphabet, S.max_len)
    out.coeffs = {w: v for w, p in S.coeffs.items() if (v := p(t0))}
    return out
