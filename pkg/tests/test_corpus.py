"""
Tests for tokenization, vocabulary construction and document-term matrix weighting.
"""

import math

import numpy as np
import pytest
from pytest import mark

from src import exceptions
from src.corpus import (
    build_vocabulary,
    default_stopwords,
    idf,
    l2_normalize,
    load_stopwords,
    stem,
    tf_matrix,
    tfidf_matrix,
    tokenize,
    tokenize_corpus,
)
from src.entities import Corpus, DocTermMatrix, Document, TokenizerConfig, Vocabulary, Weighting


@mark.parametrize(
    "text,stopwords,expected",
    [
        ("My ATM card was blocked!!", {"my", "was"}, ["atm", "card", "blocked"]),
        ("", {"my", "was"}, []),
        ("No a an it", {"a", "an", "it", "no"}, []),
        ("Card-2024 charged 3 times", set(), ["card", "charged", "times"]),
        ("Überweisung fehlgeschlagen", set(), ["überweisung", "fehlgeschlagen"]),
    ],
)
def test_tokenize(text: str, stopwords: set[str], expected: list[str]):
    config = TokenizerConfig(stopwords=frozenset(stopwords))
    assert tokenize(text, config) == expected


@mark.parametrize(
    "token,expected",
    [
        ("blocked", "block"),
        ("charges", "charge"),
        ("banking", "bank"),
        ("bed", "bed"),
        ("yes", "yes"),
        ("cards", "card"),
    ],
)
def test_stem(token: str, expected: str):
    assert stem(token) == expected
    assert stem(expected) == expected


def test_tokenize_with_stemming():
    config = TokenizerConfig(stopwords=frozenset({"this", "was"}), stem=True)
    assert tokenize("This card was blocked", config) == ["card", "block"]


def test_tokenize_is_idempotent():
    config = TokenizerConfig(stopwords=default_stopwords())
    tokens = tokenize("The ATM at the branch swallowed my debit card, twice!", config)
    assert tokens
    assert tokenize(" ".join(tokens), config) == tokens


def test_load_stopwords(tmp_path):
    path = tmp_path / "stopwords.txt"
    path.write_text("# comment\nLoan\n\n  bank \n", encoding="utf-8")
    assert load_stopwords(path) == frozenset({"loan", "bank"})
    bundled = load_stopwords()
    assert {"my", "was", "the"} <= bundled
    assert not any(word.startswith("#") for word in bundled)


def test_tokenize_corpus_preserves_order():
    documents = [Document(id=str(i), text=f"complaint number {word}") for i, word in enumerate(
        ["alpha", "bravo", "charlie", "delta", "echo", "foxtrot"]
    )]
    config = TokenizerConfig()
    serial = tokenize_corpus(documents, config, workers=1)
    threaded = tokenize_corpus(documents, config, workers=4)
    assert serial == threaded
    assert serial[2] == ["complaint", "number", "charlie"]


@mark.parametrize(
    "token_lists,terms,doc_frequency",
    [
        ([["b", "a", "a"], ["b", "c"]], ["a", "b", "c"], [1, 2, 1]),
        ([["x"]], ["x"], [1]),
        ([["loan"], [], ["atm", "loan"]], ["atm", "loan"], [1, 2]),
    ],
)
def test_build_vocabulary(token_lists: list, terms: list[str], doc_frequency: list[int]):
    vocab = build_vocabulary(token_lists)
    assert vocab.terms == terms
    assert vocab.doc_frequency == doc_frequency
    assert all(vocab.index[term] == i for i, term in enumerate(terms))


def test_build_vocabulary_is_order_independent():
    token_lists = [["card", "block"], ["loan", "rate"], ["card", "loan"]]
    assert build_vocabulary(token_lists) == build_vocabulary(token_lists[::-1])


def test_build_vocabulary_empty():
    with pytest.raises(exceptions.EmptyCorpus):
        build_vocabulary([[], []])


@mark.parametrize(
    "terms,doc_frequency",
    [
        (["b", "a"], [1, 1]),
        (["a", "a"], [1, 1]),
        (["a"], [0]),
        (["a", "b"], [1]),
    ],
)
def test_vocabulary_invariants(terms: list[str], doc_frequency: list[int]):
    with pytest.raises(ValueError):
        Vocabulary(terms=terms, doc_frequency=doc_frequency)


@mark.parametrize(
    "token_lists,expected",
    [
        ([["a", "b", "a"], ["b", "c"]], [[2, 1, 0], [0, 1, 1]]),
        ([["a"]], [[1]]),
        ([["a", "a", "a", "a"]], [[4]]),
    ],
)
def test_tf_matrix(token_lists: list, expected: list):
    vocab = build_vocabulary(token_lists)
    dtm = tf_matrix(token_lists, vocab)
    assert dtm.weighting == Weighting.TF
    assert not dtm.normalized
    assert np.array_equal(dtm.to_dense(), np.array(expected, dtype=float))
    assert dtm.nnz == np.count_nonzero(expected)


def test_tf_matrix_unknown_term():
    vocab = build_vocabulary([["a"]])
    with pytest.raises(exceptions.UnknownTerm):
        tf_matrix([["a", "z"]], vocab)


@mark.parametrize(
    "doc_frequency,n,expected",
    [
        (10, 10, 0.0),
        (1, 10, math.log(10)),
        (2, 8, math.log(4)),
    ],
)
def test_idf(doc_frequency: int, n: int, expected: float):
    assert abs(idf(doc_frequency, n) - expected) <= 1e-12


@mark.parametrize("doc_frequency,n", [(0, 10), (11, 10), (-1, 1)])
def test_idf_invalid(doc_frequency: int, n: int):
    with pytest.raises(exceptions.InvalidFrequency):
        idf(doc_frequency, n)


def test_tfidf_matrix():
    token_lists = [["a", "b", "a"], ["b", "c"]]
    vocab = build_vocabulary(token_lists)
    dtm = tfidf_matrix(tf_matrix(token_lists, vocab), vocab)
    expected = [[2 * math.log(2), 0, 0], [0, 0, math.log(2)]]
    assert dtm.weighting == Weighting.TFIDF
    assert np.allclose(dtm.to_dense(), expected, rtol=0, atol=1e-12)
    # the term present in every document is not stored at all
    assert dtm.nnz == 2


def test_tfidf_single_document():
    vocab = build_vocabulary([["a"]])
    dtm = tfidf_matrix(tf_matrix([["a"]], vocab), vocab)
    assert dtm.nnz == 0
    assert np.array_equal(dtm.to_dense(), [[0.0]])


def test_tfidf_requires_tf():
    vocab = build_vocabulary([["a"], ["b"]])
    dtm = tfidf_matrix(tf_matrix([["a"], ["b"]], vocab), vocab)
    with pytest.raises(ValueError):
        tfidf_matrix(dtm, vocab)


@mark.parametrize(
    "rows,expected,zero_rows",
    [
        ([[3.0, 4.0]], [[0.6, 0.8]], 0),
        ([[0.0, 0.0]], [[0.0, 0.0]], 1),
        ([[5.0]], [[1.0]], 0),
        ([[3.0, 4.0], [0.0, 0.0], [0.0, 2.0]], [[0.6, 0.8], [0.0, 0.0], [0.0, 1.0]], 1),
    ],
)
def test_l2_normalize(rows: list, expected: list, zero_rows: int):
    normalized, zeros = l2_normalize(DocTermMatrix.from_dense(rows))
    assert normalized.normalized
    assert zeros == zero_rows
    assert np.allclose(normalized.to_dense(), expected, rtol=0, atol=1e-12)


def test_normalized_rows_have_unit_length(clusters):
    data, _ = clusters
    norms = data.row_norms()
    dense_norms = np.linalg.norm(data.to_dense(), axis=1)
    assert np.all(np.abs(norms[norms > 0] - 1.0) <= 1e-9)
    assert np.allclose(norms, dense_norms, rtol=0, atol=1e-12)


@mark.parametrize(
    "rows",
    [
        [[-1.0, 0.0]],
        [[np.inf, 0.0]],
        [[np.nan, 1.0]],
    ],
)
def test_doc_term_matrix_rejects_invalid_weights(rows: list):
    with pytest.raises(ValueError):
        DocTermMatrix.from_dense(rows)


def test_doc_term_matrix_drops_explicit_zeros():
    dtm = DocTermMatrix.from_dense([[0.0, 1.0], [0.0, 0.0]])
    assert dtm.nnz == 1
    assert dtm.nonzero_rows().tolist() == [0]
    assert dtm.row(0).tolist() == [0.0, 1.0]


def test_corpus_statistics():
    documents = [
        Document(id="a", text="loan rate", severity=1),
        Document(id="b", text="", severity=None),
    ]
    tokens = [["loan", "rate"], []]
    corpus = Corpus(documents=documents, tokens=tokens, vocabulary=build_vocabulary(tokens))
    assert corpus.empty_count == 1
    assert corpus.labelled_count == 1
    with pytest.raises(ValueError):
        Corpus(documents=documents * 2, tokens=tokens * 2, vocabulary=corpus.vocabulary)
