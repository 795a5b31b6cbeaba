"""Lexicon scoring and moral congruence."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mevir import FoundationVector, MoralLexicon, compute_footprint, moral_congruence, tokenize
from mevir.foundations import FOUNDATION_NAMES

from conftest import random_lexicon, random_text
from reference import ref_footprint

_unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)


def vectors():
    return st.builds(FoundationVector, *([_unit] * len(FOUNDATION_NAMES)))


class TestTokenize:
    def test_empty(self):
        assert tokenize("") == []

    def test_punctuation_and_case(self):
        assert tokenize("My body, my rules!") == ["my", "body", "my", "rules"]

    def test_hyphen_splits(self):
        assert tokenize("COVID-19") == ["covid", "19"]

    def test_underscore_splits(self):
        assert tokenize("a_b") == ["a", "b"]


class TestFootprint:
    def test_empty_text_zero_vector(self):
        lex = MoralLexicon(entries={"harm": FoundationVector(care=1.0)})
        fp = compute_footprint("", lex)
        assert fp.vector.is_zero()
        assert fp.intensity == 0.0
        assert fp.matched_count == 0

    def test_repeated_words_sum_and_normalize(self):
        lex = MoralLexicon(entries={
            "freedom": FoundationVector(liberty=1.0),
            "harm": FoundationVector(care=1.0),
        })
        fp = compute_footprint("Freedom, freedom: harm!", lex)
        assert fp.vector.care == pytest.approx(1 / 3)
        assert fp.vector.liberty == pytest.approx(2 / 3)
        assert fp.intensity == pytest.approx(1.0)
        assert fp.matched_count == 3

    def test_phrase_match_single_use_tokens(self):
        lex = MoralLexicon(entries={"my body": FoundationVector(purity=0.5, liberty=0.5)})
        fp = compute_footprint("my body my rules", lex)
        assert fp.vector.purity == pytest.approx(0.5)
        assert fp.vector.liberty == pytest.approx(0.5)
        assert fp.intensity == pytest.approx(0.5)
        assert fp.matched_count == 1

    def test_longest_match_preferred(self):
        lex = MoralLexicon(entries={
            "my": FoundationVector(loyalty=1.0),
            "my body": FoundationVector(purity=1.0),
        })
        fp = compute_footprint("my body", lex)
        assert fp.vector.purity == pytest.approx(1.0)
        assert fp.vector.loyalty == 0.0

    def test_matches_reference_scanner_on_random_pairs(self):
        rng = random.Random(123)
        for _ in range(200):
            lex = random_lexicon(rng)
            text = random_text(rng)
            got = compute_footprint(text, lex)
            want = ref_footprint(text, lex)
            assert got.vector.as_tuple() == pytest.approx(want["vector"], abs=1e-12)
            assert got.intensity == pytest.approx(want["intensity"], abs=1e-12)
            assert got.matched_count == want["matched_count"]

    def test_normalization_invariant_on_random_pairs(self):
        rng = random.Random(321)
        for _ in range(200):
            fp = compute_footprint(random_text(rng), random_lexicon(rng))
            total = fp.vector.l1()
            if fp.matched_count > 0:
                assert abs(total - 1.0) <= 1e-9
            else:
                assert total == 0.0


class TestCongruence:
    def test_identical_direction(self):
        a = FoundationVector(care=1.0)
        assert moral_congruence(a, a) == pytest.approx(1.0)

    def test_orthogonal(self):
        assert moral_congruence(
            FoundationVector(care=1.0), FoundationVector(liberty=1.0)
        ) == pytest.approx(0.0)

    def test_hand_cosine(self):
        a = FoundationVector(care=1.0, fairness_equity=1.0)
        b = FoundationVector(care=1.0)
        assert moral_congruence(a, b) == pytest.approx(1 / math.sqrt(2))

    def test_zero_vector_is_neutral(self):
        z = FoundationVector()
        assert moral_congruence(z, FoundationVector(care=1.0)) == 0.5
        assert moral_congruence(FoundationVector(care=1.0), z) == 0.5
        assert moral_congruence(z, z) == 0.5

    @given(a=vectors(), b=vectors())
    @settings(max_examples=200)
    def test_symmetric_and_bounded(self, a, b):
        ab = moral_congruence(a, b)
        assert 0.0 <= ab <= 1.0
        assert ab == pytest.approx(moral_congruence(b, a), abs=1e-12)

    @given(a=vectors(), b=vectors(), scale=st.floats(min_value=0.01, max_value=1.0))
    @settings(max_examples=200)
    def test_scale_invariant(self, a, b, scale):
        scaled = FoundationVector(*(v * scale for v in a.as_tuple()))
        assert moral_congruence(scaled, b) == pytest.approx(moral_congruence(a, b), abs=1e-9)


class TestLexiconFormat:
    def test_tsv_round_trip(self):
        lex = MoralLexicon(
            entries={
                "harm": FoundationVector(care=1.0),
                "my body": FoundationVector(purity=0.5, liberty=0.5),
            },
            name="demo", version="1",
        )
        again = MoralLexicon.from_tsv(lex.to_tsv(), name="demo", version="1")
        assert again == lex

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError, match="header"):
            MoralLexicon.from_tsv("word\tscore\nharm\t1\n")

    def test_duplicate_phrase_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            MoralLexicon(entries={
                "My Body": FoundationVector(care=1.0),
                "my body": FoundationVector(purity=1.0),
            })
