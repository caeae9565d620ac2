import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tvkit.heegaard import (
    DehnGenerator,
    DehnWord,
    HeegaardSplitting,
    WordError,
    generators,
    intersection_number,
    mcg_plus_generators,
    parse_word,
    read_splitting,
    stabilize,
    write_splitting,
)


@pytest.mark.parametrize("g", range(1, 7))
def test_lickorish_count(g):
    gens = generators(g)
    assert len(gens) == 3 * g - 1
    assert len(set(gens)) == len(gens)
    assert mcg_plus_generators(g) == [DehnGenerator("m", i) for i in range(1, g + 1)]


def test_chain_intersections():
    g = 4
    chain = [DehnGenerator("m", 1), DehnGenerator("l", 1)]
    for i in range(1, g):
        chain += [DehnGenerator("c", i), DehnGenerator("l", i + 1)]
    chain.append(DehnGenerator("m", g))
    for a in generators(g):
        for b in generators(g):
            if a in chain and b in chain:
                expected = int(abs(chain.index(a) - chain.index(b)) == 1)
            else:
                # meridians m2..m<g-1> sit off the chain and meet only their longitude
                expected = int({a.kind, b.kind} == {"m", "l"} and a.index == b.index)
            assert intersection_number(a, b) == expected, (a, b)


@pytest.mark.parametrize("text", ["m9", "c2", "x1", "m0", "l1^2", "m1^-1^-1"])
def test_parse_rejects(text):
    with pytest.raises(WordError):
        parse_word(text, 2)


def test_empty_word_and_inverse():
    assert len(parse_word("", 3)) == 0
    w = parse_word("m1 l1^-1 c1", 2)
    assert w.inverse().render() == "c1^-1 l1 m1^-1"
    assert (w + w.inverse()).inverse() == w + w.inverse()


def test_genus_mismatch():
    with pytest.raises(WordError):
        parse_word("m1", 1) + parse_word("m1", 2)
    with pytest.raises(WordError):
        HeegaardSplitting(2, parse_word("m1", 1))


def test_stabilize():
    s = stabilize(HeegaardSplitting.from_text("m1 l1 m1", 1))
    assert s.genus == 2 and s.word.render() == "m1 l1 m1 m2 l2 m2"


def letters(g):
    gens = generators(g)
    return st.tuples(st.sampled_from(gens), st.sampled_from([1, -1]))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda g: st.tuples(st.just(g), st.lists(letters(g), max_size=30))))
def test_render_parse_roundtrip(data):
    g, lets = data
    w = DehnWord(tuple(lets), g)
    assert parse_word(w.render(), g) == w
    assert w.inverse().inverse() == w


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda g: st.tuples(st.just(g), st.lists(letters(g), max_size=15))))
def test_file_roundtrip(tmp_path_factory, data):
    g, lets = data
    s = HeegaardSplitting(g, DehnWord(tuple(lets), g))
    path = tmp_path_factory.mktemp("hs") / "x.hs"
    write_splitting(s, path)
    assert read_splitting(path) == s


def test_read_errors(tmp_path):
    p = tmp_path / "bad.hs"
    p.write_text("word: m1\n")
    with pytest.raises(WordError, match="genus"):
        read_splitting(p)
    p.write_text("genus: 2\nword: m3\n")
    with pytest.raises(WordError, match="out of range"):
        read_splitting(p)
