from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from amenalg.convolution import (
    ConvElement,
    CylinderTerm,
    cylinder,
    embed_monomial,
    folner_conv_check,
    from_json,
    graded_degree,
    letter_indicator,
    refine,
    shift,
    star,
    unit,
)
from amenalg.errors import NoUniqueExtensionWitness, NotAFactor
from amenalg.subshift import builtin

GM = builtin("golden-mean")
FIB = builtin("fibonacci")


def cyl(o, w, p=0, k=0):
    return cylinder(o, o.alphabet.parse(w), p, k)


def generators(o):
    return [letter_indicator(o, i) for i in range(o.alphabet.size)] + [shift(o, 1), shift(o, -1)]


def test_product_examples():
    T = shift(GM, 1)
    a, b = letter_indicator(GM, 0), letter_indicator(GM, 1)
    assert (a * T) * (b * T) == cyl(GM, "ab", 0, 2)
    assert ((b * T) * (b * T)).is_zero
    one = a + b
    e = cyl(GM, "ab", 1, 1) + cyl(GM, "a", -1, -2).scale(3)
    assert one * e == e == e * one
    assert one == unit(GM)


def test_embedding_examples():
    assert embed_monomial(GM, GM.alphabet.parse("ab")) == cyl(GM, "ab", 0, 2)
    assert embed_monomial(GM, GM.alphabet.parse("bb")).is_zero
    assert embed_monomial(GM, ()) == unit(GM)


def test_star_examples():
    a = letter_indicator(GM, 0)
    assert star(a * shift(GM, 1)) == cyl(GM, "a", -1, -1)
    assert star(shift(GM, 1)) == shift(GM, -1)


def test_graded_degree():
    assert graded_degree(embed_monomial(GM, GM.alphabet.parse("ab"))) == 2
    assert graded_degree(letter_indicator(GM, 0) + shift(GM, 1)) is None
    assert graded_degree(ConvElement(GM, {})) == 0


def test_shift_inverse():
    for o in (GM, FIB):
        T, Ti = shift(o, 1), shift(o, -1)
        assert T * Ti == unit(o) == Ti * T


def test_shift_moves_cylinders():
    # T^k 1_[v]_q = 1_[v]_(q+k) T^k
    v = GM.alphabet.parse("ab")
    for k in (-2, 1, 3):
        assert shift(GM, k) * cylinder(GM, v, 0) == cylinder(GM, v, k) * shift(GM, k)


def test_cylinder_rejects_non_factor():
    with pytest.raises(NotAFactor):
        cyl(GM, "bb")


def test_json_roundtrip():
    e = cyl(GM, "ab", 1, 2).scale(Fraction(3, 2)) - cyl(GM, "a", 0, -1)
    data = e.to_json()
    assert all(set(t) == {"word", "anchor", "shift", "coeff"} for t in data["terms"])
    assert from_json(GM, data) == e
    with pytest.raises(NotAFactor):
        from_json(GM, {"terms": [{"word": "bb", "anchor": 0, "shift": 0, "coeff": "1"}]})


@pytest.mark.parametrize("o", [GM, FIB], ids=["golden-mean", "fibonacci"])
def test_embedding_is_multiplicative(o):
    # non-factor words included: forbidden concatenations must map to zero
    words = [w for n in range(7) for w in o.alphabet.words(n)]
    emb = {w: embed_monomial(o, w) for w in words}
    for u in words:
        for v in words:
            if len(u) + len(v) <= 6:
                assert emb[u + v] == emb[u] * emb[v]


@pytest.mark.parametrize("o", [GM, FIB], ids=["golden-mean", "fibonacci"])
def test_generator_associativity(o):
    gs = generators(o)
    for x in gs:
        for y in gs:
            for z in gs:
                assert (x * y) * z == x * (y * z)


def test_star_reverses_products_of_generators():
    gs = generators(GM)
    degree_two = [x * y for x in gs for y in gs]
    for e1 in gs + degree_two:
        for e2 in gs:
            assert star(e1 * e2) == star(e2) * star(e1)


def _elements(o):
    words = [w for n in range(3) for w in o.factors(n)]
    term = st.builds(
        lambda w, p, k, c: CylinderTerm(w, p, k, Fraction(c)),
        st.sampled_from(words), st.integers(-2, 2), st.integers(-2, 2), st.integers(-3, 3),
    )
    return st.lists(term, max_size=3).map(lambda ts: ConvElement.from_terms(o, ts))


@settings(max_examples=30)
@given(_elements(GM), _elements(GM), _elements(GM))
def test_random_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=40)
@given(_elements(GM), _elements(GM))
def test_random_star(x, y):
    assert star(star(x)) == x
    assert star(x * y) == star(y) * star(x)
    assert x * (y + x) == x * y + x * x


@settings(max_examples=40)
@given(_elements(FIB), st.integers(0, 2), st.integers(0, 2))
def test_refinement_preserves_value(x, left, right):
    r = refine(x, left, right)
    assert r == x and r.canonical() == x


@pytest.mark.parametrize("D,r,dimL,dimLW", [(6, 4, 5, 7), (10, 8, 9, 11)])
def test_folner_transfer(D, r, dimL, dimLW):
    cert = folner_conv_check(FIB, D, r)
    assert (cert.dimL, cert.dimLW) == (dimL, dimLW)
    assert cert.dimLW <= cert.dimL + 2
    assert cert.holds()
    assert all(ok for _, ok in cert.identities) and len(cert.identities) == r


def test_folner_transfer_needs_witness():
    with pytest.raises(NoUniqueExtensionWitness):
        folner_conv_check(builtin("full"), 3, 2, search_len=6)
