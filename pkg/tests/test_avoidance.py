import random

import pytest

from clusterwords import (
    Alphabet,
    AvoidanceAutomaton,
    ForbiddenSet,
    IntPoly,
    NcSeries,
    Word,
    avoiding_series,
    avoids,
    count_avoiding,
    eval_t,
    occurrence_gf,
    verify_cluster_theorem,
)
from clusterwords.avoidance import PatternAutomaton, cluster_denominator
from clusterwords.words import random_forbidden_set

from oracles import all_words, avoiding_count_bruteforce, naive_count

t = IntPoly.t()


def test_count_fibonacci(ab):
    F = ForbiddenSet(ab, ["aa"])
    expected = avoiding_count_bruteforce(2, F.patterns, 5)
    assert expected == [1, 2, 3, 5, 8, 13]
    assert count_avoiding(F, 5) == expected


def test_count_trivial(abc, a1, f_a3):
    assert count_avoiding(ForbiddenSet(abc, []), 4) == [1, 3, 9, 27, 81]
    assert count_avoiding(f_a3, 4) == [1, 1, 1, 0, 0]


def test_avoiding_series_examples(a1, ab, f_a3):
    assert avoiding_series(f_a3, 5) == NcSeries(a1, 5, {"1": 1, "a": 1, "aa": 1})
    full = avoiding_series(ForbiddenSet(ab, []), 2)
    assert full.render() == "1 + a + b + a^2 + ab + ba + b^2"
    F = ForbiddenSet(ab, ["aba", "bb"])
    S = avoiding_series(F, 7)
    per_len = [0] * 8
    for w, c in S.items():
        per_len[len(w)] += c
    assert per_len == count_avoiding(F, 7)


def test_occurrence_gf_examples(a1, f_a3):
    G = occurrence_gf(f_a3, 6)
    assert G.render() == "1 + a + a^2 + t a^3 + t^2 a^4 + t^3 a^5 + t^4 a^6"
    assert occurrence_gf(ForbiddenSet(a1, ["aa"]), 4)["aaaa"] == t**3


@pytest.mark.parametrize("seed", range(5))
def test_occurrence_gf_at_zero_is_avoiding(seed):
    rng = random.Random(seed)
    A = Alphabet("abc"[: 1 + seed % 3])
    F = random_forbidden_set(A, rng, reduced=False)
    assert eval_t(occurrence_gf(F, 6), 0) == avoiding_series(F, 6)


@pytest.mark.parametrize("seed", range(12))
def test_automaton_matches_scan(seed):
    rng = random.Random(100 + seed)
    k = 1 + seed % 3
    A = Alphabet("abc"[:k])
    F = random_forbidden_set(A, rng, reduced=bool(seed % 2))
    aut = AvoidanceAutomaton(F)
    ac = PatternAutomaton(A, F.patterns)
    L = 8 if k < 3 else 7
    for w in all_words(k, L):
        assert aut.accepts(w) == avoids(Word(A, w), F)
        assert ac.count(w) == naive_count(w, F.patterns)


@pytest.mark.parametrize("seed", range(6))
def test_count_matches_transfer_matrix(seed):
    rng = random.Random(200 + seed)
    A = Alphabet("abc"[: 1 + seed % 3])
    F = random_forbidden_set(A, rng)
    aut = AvoidanceAutomaton(F)
    M = aut.matrix()
    n = len(M)
    vec = [1] + [0] * (n - 1)
    replay = [1]
    for _ in range(10):
        vec = [sum(vec[i] * M[i][j] for i in range(n)) for j in range(n)]
        replay.append(sum(vec))
    assert count_avoiding(F, 10) == replay
    assert replay == avoiding_count_bruteforce(len(A), F.patterns, 10) if len(A) < 3 else True


def test_verify_examples(abc, a1, ab, f_abc_bcc, f_a3):
    for F, L in [(f_abc_bcc, 6), (f_a3, 10), (ForbiddenSet(ab, []), 4)]:
        rep = verify_cluster_theorem(F, L)
        assert rep.passed, rep.render()
        assert [c.name for c in rep.checks] == ["cluster-t", "cluster-t=0"]


def test_verify_reports_failures_without_raising(ab):
    # sanity check on the comparison machinery: a wrong cluster series is caught
    from clusterwords.avoidance import compare_series
    from clusterwords import invert

    F = ForbiddenSet(ab, ["aa"])
    wrong = cluster_denominator(F, NcSeries(ab, 5, {"aa": -1}))
    chk = compare_series("t=0", avoiding_series(F, 5), invert(wrong))
    assert not chk.passed and chk.first_failure == "aaa"


def test_abc_bcc_denominator(abc, f_abc_bcc):
    # (1 - a - b - c - (t-1)abc - (t-1)bcc - (t-1)^2 abcc)^-1 = sum t^{s(w)} w
    from clusterwords import NcPolySeries, invert

    L = 7
    s = t - 1
    den = NcPolySeries(abc, L, {"1": 1, "a": -1, "b": -1, "c": -1, "abc": -s, "bcc": -s, "abcc": -(s * s)})
    assert invert(den) == occurrence_gf(f_abc_bcc, L)


def test_report_json(f_a3):
    data = verify_cluster_theorem(f_a3, 5).to_json()
    assert data["passed"] is True
    assert {c["name"] for c in data["checks"]} == {"cluster-t", "cluster-t=0"}
