import pytest
from hypothesis import given, strategies as st

from conftest import BANKER_VECTOR
from punsense import textprep
from punsense.errors import BadPartition
from punsense.vectorizer import (
    SemanticFieldVectorizer,
    semantic_vector,
    sort_full,
    sort_partitioned,
)

counts_34 = st.lists(st.integers(min_value=0, max_value=9), min_size=34, max_size=34)


class TestSemanticVector:
    def test_banker_golden_vector(self, banker, index):
        v = semantic_vector(banker.tokens, banker.collocations, index)
        assert v.counts == BANKER_VECTOR

    def test_all_stopwords_yield_zero_vector(self, index):
        sentence = textprep.analyze("I to a but", index)
        v = semantic_vector(sentence.tokens, sentence.collocations, index)
        assert v.counts == [0] * 34

    def test_single_word_banker(self, index):
        sentence = textprep.analyze("banker", index)
        v = semantic_vector(sentence.tokens, sentence.collocations, index)
        expected = [0] * 34
        expected[30] = expected[31] = 1
        assert v.counts == expected

    def test_source_words_match_counts(self, banker, index):
        v = semantic_vector(banker.tokens, banker.collocations, index)
        for k, count in enumerate(v.counts):
            assert len(v.source_words[k]) == count
        assert sum(len(w) for w in v.source_words.values()) == sum(v.counts)

    def test_adding_a_content_word_is_monotone(self, index):
        base = textprep.analyze("banker", index)
        more = textprep.analyze("banker interest", index)
        v1 = semantic_vector(base.tokens, base.collocations, index).counts
        v2 = semantic_vector(more.tokens, more.collocations, index).counts
        assert all(b >= a for a, b in zip(v1, v2))
        assert sum(v2) - sum(v1) == len(index.lookup_sections("interest"))


class TestSortFull:
    def test_banker_sorted(self):
        expected = [4, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1] + [0] * 23
        assert sort_full(BANKER_VECTOR) == expected

    def test_zero_vector(self):
        assert sort_full([0] * 34) == [0] * 34

    def test_one_hot(self):
        v = [0] * 34
        v[17] = 1
        assert sort_full(v) == [1] + [0] * 33

    @given(counts_34)
    def test_is_descending_permutation(self, counts):
        out = sort_full(counts)
        assert sorted(out) == sorted(counts)
        assert all(a >= b for a, b in zip(out, out[1:]))


class TestSortPartitioned:
    def test_banker_blocks(self):
        blocks = (
            [1, 1, 1, 0, 0, 0, 0, 0]
            + [0, 0, 0, 0, 0, 0, 0, 0]
            + [2, 1, 1, 0, 0, 0, 0, 0]
            + [4, 2, 2, 1, 1, 0, 0, 0, 0, 0]
        )
        assert sort_partitioned(BANKER_VECTOR) == blocks

    def test_single_block_equals_full_sort(self):
        assert sort_partitioned(BANKER_VECTOR, [34]) == sort_full(BANKER_VECTOR)

    def test_bad_partition(self):
        with pytest.raises(BadPartition):
            sort_partitioned(BANKER_VECTOR, [8, 8, 8, 9])

    @given(counts_34)
    def test_preserves_sum_and_blocks(self, counts):
        out = sort_partitioned(counts)
        assert sum(out) == sum(counts)
        edges = [0, 8, 16, 24, 34]
        for lo, hi in zip(edges, edges[1:]):
            assert sorted(out[lo:hi]) == sorted(counts[lo:hi])
            assert all(a >= b for a, b in zip(out[lo:hi], out[lo + 1 : hi]))


class TestVectorizerEstimator:
    def test_transform_matches_function(self, index):
        vec = SemanticFieldVectorizer(index=index).fit(["x"])
        X = vec.transform(["banker", "I used to be a banker, but I lost interest."])
        assert X.shape == (2, 34)
        assert X[1].tolist() == [float(c) for c in BANKER_VECTOR]

    def test_sorted_transform(self, index):
        vec = SemanticFieldVectorizer(index=index, transform_name="sort_full")
        X = vec.transform(["I used to be a banker, but I lost interest."])
        assert X[0].tolist() == [float(c) for c in sort_full(BANKER_VECTOR)]

    def test_get_params_round_trip(self, index):
        vec = SemanticFieldVectorizer(index=index, transform_name="sort_full")
        params = vec.get_params()
        assert params["transform_name"] == "sort_full"
        clone = SemanticFieldVectorizer(**params)
        assert clone.transform_name == "sort_full"
