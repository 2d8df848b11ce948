import itertools

import pytest

from clusterwords import Alphabet, ForbiddenSet, Span, Word, avoids, occurrences, reduce
from clusterwords.words import AlphabetMismatch, EnumerationTooLarge, check_enumeration_budget

from oracles import all_words, naive_count


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet([])
    with pytest.raises(ValueError):
        Alphabet(["a", "a"])
    with pytest.raises(ValueError):
        Alphabet(["a", ""])


def test_word_text_roundtrip(ab):
    w = ab.word("aaab")
    assert w.letters == (0, 0, 0, 1)
    assert str(w) == "aaab"
    assert ab.word("a^3b") == w
    assert str(ab.word("1")) == "1"
    assert len(ab.word("")) == 0


def test_multichar_tokens():
    x = Alphabet.from_string("x1,x2")
    w = x.word("x1.x2.x1")
    assert w.letters == (0, 1, 0)
    assert str(w) == "x1.x2.x1"
    assert x.word("x1^2.x2").letters == (0, 0, 1)


def test_canonical_order(ab):
    words = [ab.word(s) for s in ["ba", "b", "1", "ab", "a", "aa"]]
    assert [str(w) for w in sorted(words)] == ["1", "a", "b", "aa", "ab", "ba"]


def test_forbidden_rejects_short_words(ab):
    with pytest.raises(ValueError):
        ForbiddenSet(ab, ["a"])
    with pytest.raises(ValueError):
        ForbiddenSet(ab, ["c"])


def test_span_interval_conversion():
    s = Span(2, 3)
    assert s.end == 4
    assert s.interval == (2, 4)
    assert Span.from_interval(2, 4) == s
    assert list(s.gaps()) == [2, 3]


def test_occurrences_a4(a1):
    occ = occurrences(a1.word("aaaa"), ForbiddenSet(a1, ["aa"]))
    assert [o.span.start for o in occ] == [1, 2, 3]
    assert len(occ) == 3


def test_occurrences_empty_word(ab):
    assert occurrences(ab.word("1"), ForbiddenSet(ab, ["aa", "ab"])) == []


def test_occurrences_aaab(f_aa_aab, ab):
    occ = occurrences(ab.word("aaab"), f_aa_aab)
    assert [(o.span.interval, str(o.pattern)) for o in occ] == [
        ((1, 2), "aa"), ((2, 3), "aa"), ((2, 4), "aab"),
    ]


def test_alphabet_mismatch(ab, abc):
    with pytest.raises(AlphabetMismatch):
        occurrences(abc.word("abc"), ForbiddenSet(ab, ["ab"]))
    with pytest.raises(AlphabetMismatch):
        avoids(abc.word("abc"), ForbiddenSet(ab, ["ab"]))


def test_avoids_examples(ab, a1):
    assert avoids(ab.word("abab"), ForbiddenSet(ab, ["aa"]))
    assert not avoids(a1.word("aaa"), ForbiddenSet(a1, ["aaa"]))
    assert avoids(ab.word("1"), ForbiddenSet(ab, ["aa"]))


def test_reduce_examples(ab, abc):
    assert reduce(ForbiddenSet(ab, ["aa", "aab"])).patterns == ((0, 0),)
    F = ForbiddenSet(abc, ["abc", "bcc"])
    assert reduce(F) == F and F.is_reduced
    assert len(reduce(ForbiddenSet(ab, []))) == 0


def _small_sets(k):
    pats = [p for n in (2, 3) for p in itertools.product(range(k), repeat=n)]
    for r in (1, 2):
        yield from itertools.combinations(pats, r)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_occurrence_count_matches_naive(k):
    A = Alphabet("abc"[:k])
    for pats in list(_small_sets(k))[:60]:
        F = ForbiddenSet(A, pats)
        for w in all_words(k, 5):
            assert len(occurrences(Word(A, w), F)) == naive_count(w, F.patterns)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_reduce_preserves_avoidance(k):
    A = Alphabet("abc"[:k])
    sets = list(_small_sets(k))
    for pats in sets[:: max(1, len(sets) // 80)]:
        F = ForbiddenSet(A, pats)
        G = reduce(F)
        assert G.is_reduced
        for w in all_words(k, 6):
            word = Word(A, w)
            assert avoids(word, F) == avoids(word, G)


def test_superadditive_occurrences(ab):
    F = ForbiddenSet(ab, ["aa", "aba"])
    ws = list(all_words(2, 4))
    for u in ws:
        for v in ws:
            su = len(occurrences(Word(ab, u), F))
            sv = len(occurrences(Word(ab, v), F))
            assert len(occurrences(Word(ab, u + v), F)) >= su + sv


def test_enumeration_budget(ab):
    check_enumeration_budget(ab, 10)
    with pytest.raises(EnumerationTooLarge):
        check_enumeration_budget(ab, 30)
