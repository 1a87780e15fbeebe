"""Weight sequences: constructors, modes, exact l2 norms, file round trips."""

from fractions import Fraction

import pytest

from momentcurve import (
    ParameterError,
    format_weights,
    geometric_weights,
    make_weights,
    parse_weights,
    random_weights,
    read_weight_file,
    rho,
    spike_weights,
    unit_weights,
    weights_from_spec,
    write_weight_file,
)
from momentcurve.weights import (
    MODE_COMPLEX,
    MODE_INTEGER,
    MODE_RATIONAL,
    Weights,
    weight_corpus,
)


def test_unit_weights_basics():
    w = unit_weights(2)
    assert w.n_max == 2
    assert w.mode == MODE_INTEGER
    assert sorted(w.support) == [-2, -1, 0, 1, 2]
    assert all(w.amp(n) == 1 for n in w.support)
    assert rho(w).squared == 5


def test_spike_weights():
    w = spike_weights(3)
    assert w.amp(0) == 1 and w.amp(1) == 0
    assert rho(w).squared == 1
    off = spike_weights(3, at=-2)
    assert off.amp(-2) == 1 and off.amp(0) == 0
    with pytest.raises(ParameterError):
        spike_weights(3, at=5)


def test_geometric_weights_exact_profile():
    w = geometric_weights(2, Fraction(1, 2))
    assert w.mode == MODE_RATIONAL
    assert [w.amp(n) for n in (-2, -1, 0, 1, 2)] == [
        Fraction(1, 4), Fraction(1, 2), 1, Fraction(1, 2), Fraction(1, 4)]
    # string ratios go through the same exact path
    assert geometric_weights(2, "1/2").values == w.values


def test_random_weights_deterministic_and_rational():
    a = random_weights(6, 9)
    b = random_weights(6, 9)
    c = random_weights(6, 10)
    assert a.values == b.values
    assert a.values != c.values
    assert a.mode == MODE_RATIONAL
    assert len(a.values) == 13
    assert all(isinstance(v, Fraction) for v in a.values.values())
    assert all(abs(v) <= 1 for v in a.values.values())


def test_rho_zero_convention():
    assert rho(make_weights(3, {})).squared == 1
    assert rho(make_weights(3, {1: 0, 2: 0})).squared == 1


def test_mode_promotion():
    w = make_weights(1, {0: 1, 1: Fraction(1, 3)})
    assert w.mode == MODE_RATIONAL
    z = make_weights(1, {0: 1 + 2j})
    assert z.mode == MODE_COMPLEX
    # exact complex tokens with zero imaginary part stay exact
    e = make_weights(1, {0: 1, -1: 2})
    assert e.mode == MODE_INTEGER


def test_restrict_keeps_only_residue_class():
    w = unit_weights(6)
    r = w.restrict(3, 1)
    assert sorted(r.support) == [-5, -2, 1, 4]
    assert r.n_max == 6
    assert rho(r).squared == 4


def test_format_parse_round_trip():
    for w in (unit_weights(3), geometric_weights(3, Fraction(2, 7)),
              random_weights(4, 2)):
        again = parse_weights(format_weights(w))
        assert again.n_max == w.n_max
        assert again.mode == w.mode
        assert again.values == w.values


def test_weight_file_round_trip(tmp_path):
    w = random_weights(5, 3)
    path = tmp_path / "w.txt"
    write_weight_file(w, path)
    again = read_weight_file(path)
    assert again.values == w.values
    assert again.mode == w.mode


def test_parse_rejects_malformed_input():
    with pytest.raises(ParameterError):
        parse_weights("not a number\n")
    with pytest.raises(ParameterError):
        parse_weights("2\n9 1 0\n")  # index outside radius


def test_weights_from_spec_descriptors(tmp_path):
    assert weights_from_spec("unit", 2).values == unit_weights(2).values
    assert weights_from_spec("spike:-1", 3).amp(-1) == 1
    assert weights_from_spec("geometric:1/2", 2).values == \
        geometric_weights(2, Fraction(1, 2)).values
    assert weights_from_spec("random:4", 5).values == random_weights(5, 4).values
    path = tmp_path / "w.txt"
    write_weight_file(unit_weights(2), path)
    assert weights_from_spec(f"file:{path}", 2).values == unit_weights(2).values
    with pytest.raises(ParameterError):
        weights_from_spec(f"file:{path}", 7)  # radius mismatch
    with pytest.raises(ParameterError):
        weights_from_spec("mystery:1", 2)
    with pytest.raises(ParameterError):
        weights_from_spec("unit", None)


def test_weight_corpus_composition():
    corpus = weight_corpus(2)
    assert set(corpus) == {
        "unit", "spike", "geometric-1/2",
        "random-1", "random-2", "random-3", "random-4", "random-5"}
    assert all(w.n_max == 2 for w in corpus.values())


def test_make_weights_validation():
    with pytest.raises(ParameterError):
        make_weights(-1, {})
    with pytest.raises(ParameterError):
        make_weights(2, {5: 1})
