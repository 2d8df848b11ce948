"""Lattices of unions of integer intervals and their Möbius functions.

Elements are subsets of a small ground set ``{1, ..., N}`` stored as bit
masks (bit ``x - 1`` stands for the integer ``x``); the public API also
accepts and returns plain sets of integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .avoidance import IdentityCheck, Report
from .clusters import cluster_polynomial
from .words import Alphabet, ForbiddenSet, Word, scan

DEFAULT_MAX_INTERVALS = 16


def _mask(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        if x < 1:
            raise ValueError(f"lattice ground set starts at 1, got {x}")
        m |= 1 << (x - 1)
    return m


def _members(mask: int) -> frozenset[int]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return frozenset(out)


@dataclass(frozen=True)
class IntervalFamily:
    """Nonempty integer intervals ``{lo, ..., hi}``, shifted so the smallest lo is 1."""

    intervals: tuple[tuple[int, int], ...]

    def __init__(self, intervals: Iterable[Sequence[int]]):
        ivs = []
        for iv in intervals:
            lo, hi = (int(v) for v in iv)
            if lo > hi:
                raise ValueError(f"interval [{lo},{hi}] is empty")
            ivs.append((lo, hi))
        if not ivs:
            raise ValueError("interval family must be nonempty")
        off = 1 - min(lo for lo, _ in ivs)
        object.__setattr__(self, "intervals", tuple((lo + off, hi + off) for lo, hi in ivs))

    @classmethod
    def from_json(cls, text: str) -> "IntervalFamily":
        data = json.loads(text)
        return cls(data["intervals"])

    def to_json(self) -> dict:
        return {"intervals": [list(iv) for iv in self.intervals]}

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def ground(self) -> int:
        return max(hi for _, hi in self.intervals)

    def atoms(self) -> list[tuple[int, int]]:
        """Distinct intervals that contain no other member of the family."""
        uniq = sorted(set(self.intervals))
        return [
            (lo, hi) for lo, hi in uniq
            if not any((a, b) != (lo, hi) and lo <= a and b <= hi for a, b in uniq)
        ]


def occurrence_family(w: Word, F: ForbiddenSet) -> IntervalFamily:
    """The gap sets ``{start, ..., end - 1}`` of every occurrence of F in w."""
    return IntervalFamily([(s, e - 1) for s, e, _ in scan(w.letters, F.patterns)])


class UnionLattice:
    """A finite family of sets closed under union, ordered by inclusion.

    ``elements`` is sorted by size, so every element comes after all of its
    subsets. ``bottom`` is the least element (the empty set for a lattice
    built from a family; the lower end for a restricted interval).
    """

    def __init__(self, masks: Iterable[int], generators: Iterable[int] = ()):
        self.generators = sorted(set(generators))
        self.elements: list[int] = sorted(set(masks), key=lambda m: (m.bit_count(), m))
        self.bottom = self.elements[0]
        self.top = self.elements[-1]
        for m in self.elements:
            if m & self.bottom != self.bottom or m | self.top != self.top:
                raise ValueError("lattice needs a least and a greatest element")
        self._up: dict[int, list[int]] = {}
        self._mu: dict[int, dict[int, int]] = {}
        self._cross: dict[int, dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return self._m(x) in self._index

    @cached_property
    def _index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.elements)}

    def _m(self, x) -> int:
        return x if isinstance(x, int) else _mask(x)

    def sets(self) -> list[frozenset[int]]:
        return [_members(m) for m in self.elements]

    def up(self, x: int) -> list[int]:
        ups = self._up.get(x)
        if ups is None:
            ups = self._up[x] = [m for m in self.elements if m & x == x]
        return ups

    def covers(self, x: int) -> list[int]:
        if self.generators:
            # every cover of x is x joined with a single generator
            cands = sorted({x | g for g in self.generators if g & ~x}, key=lambda m: (m.bit_count(), m))
        else:
            cands = self.up(x)
        found: list[int] = []
        for a in cands:
            # elements arrive smallest first; a is a cover unless it sits above one
            if a != x and not any(b & a == b for b in found):
                found.append(a)
        return found

    @cached_property
    def atoms(self) -> list[int]:
        return self.covers(self.bottom)

    def restrict(self, x, y) -> "UnionLattice":
        """The interval [x, y] as a lattice in its own right."""
        x, y = self._m(x), self._m(y)
        if x & y != x:
            raise ValueError("restrict needs x <= y")
        return UnionLattice(m for m in self.elements if m & x == x and m | y == y)

    def mu_from(self, x: int) -> dict[int, int]:
        """mu(x, y) for every y >= x, by the defining recursion."""
        if x not in self._mu:
            mu = {x: 1}
            nonzero = [(x, 1)]
            for y in self.up(x):
                if y != x:
                    v = -sum([c for z, c in nonzero if z & y == z])
                    mu[y] = v
                    if v:
                        nonzero.append((y, v))
            self._mu[x] = mu
        return self._mu[x]

    def crosscut_from(self, x: int) -> dict[int, int]:
        """Signed count of cover subsets of x by their join: the atom cross-cut sums."""
        if x not in self._cross:
            acc = [(x, 1)]
            for a in self.covers(x):
                acc += [(o | a, -s) for o, s in acc]
            tally: dict[int, int] = {}
            for o, s in acc:
                tally[o] = tally.get(o, 0) + s
            self._cross[x] = tally
        return self._cross[x]


def build_lattice(fam: IntervalFamily, max_intervals: int = DEFAULT_MAX_INTERVALS) -> UnionLattice:
    if len(fam) > max_intervals:
        raise ValueError(f"{len(fam)} intervals exceeds the bound {max_intervals}; the lattice can reach 2^m elements")
    elems = {0}
    gens = {((1 << (hi - lo + 1)) - 1) << (lo - 1) for lo, hi in fam.intervals}
    for iv in gens:
        elems |= {e | iv for e in elems}
    return UnionLattice(elems, gens)


def mobius_recursive(lat: UnionLattice, X, Y) -> int:
    x, y = lat._m(X), lat._m(Y)
    if x not in lat or y not in lat:
        raise ValueError("both arguments must be lattice elements")
    if x & y != x:
        raise ValueError("mu(X, Y) needs X <= Y")
    return lat.mu_from(x)[y]


def mobius_crosscut(lat: UnionLattice, x) -> int:
    """mu(bottom, x) as the signed number of atom subsets joining to x."""
    x = lat._m(x)
    if x not in lat:
        raise ValueError("argument must be a lattice element")
    return lat.crosscut_from(lat.bottom).get(x, 0)


def _runs(mask: int) -> list[tuple[int, int]]:
    members = sorted(_members(mask))
    runs = []
    for x in members:
        if runs and runs[-1][1] == x - 1:
            runs[-1] = (runs[-1][0], x)
        else:
            runs.append((x, x))
    return runs


def mobius_via_cluster(fam: IntervalFamily) -> int:
    """mu(empty set, union of all intervals) through cluster polynomials.

    Only the atoms matter. If they miss part of the union the value is 0.
    Otherwise each maximal run {a..b} of the union becomes a word of b - a + 2
    distinct letters, each atom {lo..hi} inside it becomes the forbidden
    factor at letters lo..hi+1, and the run contributes P(-1). Runs multiply
    because the lattice is their product.
    """
    atoms = fam.atoms()
    top = _mask(x for lo, hi in fam.intervals for x in range(lo, hi + 1))
    covered = _mask(x for lo, hi in atoms for x in range(lo, hi + 1))
    if covered != top:
        return 0
    value = 1
    for a, b in _runs(top):
        n = b - a + 2
        alpha = Alphabet(f"x{i}" for i in range(1, n + 1))
        w = Word(alpha, tuple(range(n)))
        pats = [tuple(range(lo - a, hi - a + 2)) for lo, hi in atoms if a <= lo and hi <= b]
        F = ForbiddenSet(alpha, pats)
        value *= cluster_polynomial(w, F, "recurrence")(-1)
    return value


def greene_check(
    fam: IntervalFamily,
    all_pairs: bool = True,
    max_intervals: int = DEFAULT_MAX_INTERVALS,
    lattice: UnionLattice | None = None,
) -> Report:
    """Range and agreement checks for the Möbius function of the union lattice.

    With ``all_pairs`` every comparable pair (X, Y) is checked, the cross-cut
    side running on the restricted lattice [X, top]; otherwise only
    (bottom, top).
    """
    lat = lattice if lattice is not None else build_lattice(fam, max_intervals)
    fmt = lambda m: "{" + ",".join(map(str, sorted(_members(m)))) + "}"
    pairs = 0
    out_of_range = None
    mismatch = None
    for x in (lat.elements if all_pairs else [lat.bottom]):
        rec = lat.mu_from(x)
        if not all_pairs:
            rec = {lat.top: rec[lat.top]}
        pairs += len(rec)
        if out_of_range is None and not set(rec.values()) <= {-1, 0, 1}:
            y = next(y for y, v in rec.items() if v not in (-1, 0, 1))
            out_of_range = (x, y, rec[y])
        if mismatch is None:
            cc = lat.crosscut_from(x)
            bad = [y for y, v in rec.items() if cc.get(y, 0) != v]
            if bad:
                mismatch = (x, bad[0], rec[bad[0]], cc.get(bad[0], 0))
    report = Report(f"union lattice of {list(fam.intervals)} ({len(lat)} elements)", unit="pairs")
    if out_of_range is None:
        report.checks.append(IdentityCheck("mu in {-1,0,1}", True, pairs))
    else:
        x, y, v = out_of_range
        report.checks.append(IdentityCheck("mu in {-1,0,1}", False, pairs, f"({fmt(x)}, {fmt(y)})", "{-1,0,1}", str(v)))
    if mismatch is None:
        report.checks.append(IdentityCheck("recursive = crosscut", True, pairs))
    else:
        x, y, v, c = mismatch
        report.checks.append(IdentityCheck("recursive = crosscut", False, pairs, f"({fmt(x)}, {fmt(y)})", str(v), str(c)))
    rec = lat.mu_from(lat.bottom)[lat.top]
    cc = mobius_crosscut(lat, lat.top)
    via = mobius_via_cluster(fam)
    agree = rec == cc == via
    report.checks.append(
        IdentityCheck("three methods agree at (bottom, top)", agree, 1,
                      None if agree else "(bottom, top)", str(rec), None if agree else f"crosscut={cc}, cluster={via}")
    )
    return report


def mobius_all(fam: IntervalFamily, max_intervals: int = DEFAULT_MAX_INTERVALS) -> dict[str, int]:
    lat = build_lattice(fam, max_intervals)
    return {
        "recursive": mobius_recursive(lat, lat.bottom, lat.top),
        "crosscut": mobius_crosscut(lat, lat.top),
        "cluster": mobius_via_cluster(fam),
    }

