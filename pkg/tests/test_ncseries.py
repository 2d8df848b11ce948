import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterwords import Alphabet, IntPoly, NcPolySeries, NcSeries, add, eval_t, invert, mul, scale
from clusterwords.words import AlphabetMismatch

from oracles import all_words, dense_inverse

A1 = Alphabet("a")
A2 = Alphabet("ab")
A3 = Alphabet("abc")


def S(alpha, L, terms):
    return NcSeries(alpha, L, terms)


class TestIntPoly:
    def test_normalization(self):
        assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
        assert not IntPoly([0, 0])
        assert IntPoly() == 0

    def test_arithmetic(self):
        t = IntPoly.t()
        p = t * t + t * 2
        assert p == IntPoly([0, 2, 1])
        assert (1 + t) ** 3 == IntPoly([1, 3, 3, 1])
        assert p(-1) == -1
        assert IntPoly([0, 0, 0, 2, 1])(-1) == -1

    def test_shift(self):
        p = IntPoly.t(3)
        assert p.shift(1) == IntPoly([1, 3, 3, 1])
        assert p.shift(1).shift(-1) == p

    def test_str(self):
        assert str(IntPoly([0, 0, 0, 2, 1])) == "2t^3 + t^4"
        assert str(IntPoly([1, -1])) == "1 - t"
        assert str(IntPoly()) == "0"


def test_add_examples():
    assert S(A1, 3, {"1": 1, "a": 1}) + S(A1, 3, {"1": 1, "a": -1}) == S(A1, 3, {"1": 2})
    assert scale(S(A1, 3, {"1": 1, "a": 1}), 0) == S(A1, 3, {})
    assert add(S(A2, 3, {"a": 1, "b": 1}), S(A2, 3, {"a": 1, "b": -1})) == S(A2, 3, {"a": 2})


def test_add_truncates_to_min():
    x = S(A1, 5, {"a^4": 1}) + S(A1, 3, {"a": 1})
    assert x.max_len == 3
    assert x == S(A1, 3, {"a": 1})


def test_mul_examples():
    assert mul(S(A1, 4, {"1": 1, "a": 1}), S(A1, 4, {"1": 1, "a": -1})) == S(A1, 4, {"1": 1, "aa": -1})
    ab = mul(S(A2, 3, {"a": 1}), S(A2, 3, {"b": 1}))
    ba = mul(S(A2, 3, {"b": 1}), S(A2, 3, {"a": 1}))
    assert ab == S(A2, 3, {"ab": 1})
    assert ab != ba


def test_mul_against_reciprocal_of_a3():
    left = S(A1, 7, {"1": 1, "a": 1, "a^2": 1})
    right = S(A1, 7, {"1": 1, "a": -1, "a^3": 1, "a^4": -1, "a^6": 1, "a^7": -1})
    assert left * right == NcSeries.one(A1, 7)


def test_invert_examples():
    L = 6
    geo = invert(S(A1, L, {"1": 1, "a": -1}))
    assert geo == S(A1, L, {"a" * n if n else "1": 1 for n in range(L + 1)})
    assert invert(NcSeries.one(A2, 4)) == NcSeries.one(A2, 4)
    r = invert(S(A1, 8, {"1": 1, "a": 1, "a^2": 1}))
    assert r.render() == "1 - a + a^3 - a^4 + a^6 - a^7"


def test_invert_rejects_non_unit():
    with pytest.raises(ValueError):
        invert(S(A1, 3, {"1": 2, "a": 1}))
    with pytest.raises(ValueError):
        invert(NcPolySeries(A1, 3, {"1": IntPoly([1, 1])}))


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        S(A1, 2, {"a": 1}) + S(A2, 2, {"a": 1})


def test_eval_t_examples():
    t = IntPoly.t()
    C = NcPolySeries(A3, 5, {"abc": t, "bcc": t, "abcc": t * t})
    assert eval_t(C, -1) == S(A3, 5, {"abc": -1, "bcc": -1, "abcc": 1})
    mixed = NcPolySeries(A1, 3, {"a": IntPoly([1, 1]), "aa": t})
    assert eval_t(mixed, 0) == S(A1, 3, {"a": 1})


def test_eval_t_on_a3_cluster_series():
    # t a^3 (1 - t(a + a^2))^-1, truncated at length 7
    L = 7
    t = IntPoly.t()
    inner = invert(NcPolySeries(A1, L, {"1": 1, "a": -t, "a^2": -t}))
    C = NcPolySeries(A1, L, {"a^3": t}) * inner
    assert eval_t(C, -1) == S(A1, L, {"a^3": -1, "a^4": 1, "a^6": -1, "a^7": 1})


def test_rendering_and_json():
    t = IntPoly.t()
    C = NcPolySeries(A3, 5, {"abc": t, "bcc": t, "abcc": t * t})
    assert C.render() == "t abc + t bcc + t^2 abcc"
    assert C.to_json() == [
        {"word": "abc", "poly": [0, 1]},
        {"word": "bcc", "poly": [0, 1]},
        {"word": "abcc", "poly": [0, 0, 1]},
    ]
    assert S(A1, 3, {"1": 1, "a": -2}).to_json() == [{"word": "1", "coeff": 1}, {"word": "a", "coeff": -2}]


def test_no_zero_coefficients_stored():
    x = S(A2, 3, {"a": 1}) - S(A2, 3, {"a": 1})
    assert len(x) == 0 and x.coeffs == {}


# -- ring properties on random small series --------------------------------

def series_strategy(alpha, L, unit=False):
    words = list(all_words(len(alpha), L))
    terms = st.dictionaries(st.sampled_from(words), st.integers(-3, 3), max_size=8)

    def build(d):
        if unit:
            d = dict(d)
            d[()] = 1
        return NcSeries(alpha, L, d)

    return terms.map(build)


alphas = st.sampled_from([A1, A2, A3])


@st.composite
def triple(draw, unit=False):
    alpha = draw(alphas)
    L = draw(st.integers(0, 5 if len(alpha) < 3 else 4))
    s = series_strategy(alpha, L, unit)
    return draw(s), draw(s), draw(s)


@settings(max_examples=60, deadline=None)
@given(triple())
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert x + y == y + x


@settings(max_examples=60, deadline=None)
@given(triple(unit=True))
def test_inverse_two_sided(xyz):
    x = xyz[0]
    one = NcSeries.one(x.alphabet, x.max_len)
    inv = invert(x)
    assert x * inv == one
    assert inv * x == one
    assert invert(inv) == x


@settings(max_examples=30, deadline=None)
@given(triple(unit=True))
def test_inverse_matches_dense_oracle(xyz):
    x = xyz[0]
    expected = dense_inverse(lambda w: x.coeffs.get(w, 0), len(x.alphabet), x.max_len)
    assert invert(x).coeffs == expected


def test_exact_big_coefficients():
    x = S(A1, 40, {"1": 1, "a": -3})
    inv = invert(x)
    assert inv["a" * 40] == 3 ** 40
