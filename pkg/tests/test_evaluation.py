import random
from fractions import Fraction

import pytest

from gramtopic.evaluation import (
    CorpusReport,
    PrecisionScore,
    RelevanceLevel,
    aggregate,
    load_gold_csv,
    precision,
    recall,
    relevance_level,
)
from gramtopic.ngram import ExtractionConfig
from gramtopic.pipeline import TopicResult


def make_result(doc_id: str, phrases: list[str]) -> TopicResult:
    topics = [(phrase, len(phrases) - i + 1) for i, phrase in enumerate(phrases)]
    return TopicResult(document_id=doc_id, topics=topics, config_echo=ExtractionConfig())


# ----------------------------------------------------------------- precision


def test_two_of_three_is_high():
    score = precision(make_result("d", ["a b", "c d", "e f"]), {"a b", "c d", "zz zz"})
    assert score.true_positives == 2
    assert score.retrieved == 3
    assert score.rate == Fraction(2, 3)
    assert score.level is RelevanceLevel.HIGH


def test_perfect_match():
    score = precision(make_result("d", ["a b", "c d"]), {"a b", "c d"})
    assert score.rate == 1


def test_one_of_four_is_low():
    score = precision(make_result("d", ["a b", "c d", "e f", "g h"]), {"a b"})
    assert score.rate == Fraction(1, 4)
    assert score.level is RelevanceLevel.LOW


def test_nothing_retrieved_scores_zero_with_flag():
    score = precision(make_result("d", []), {"a b"})
    assert score.rate == 0
    assert score.empty
    assert score.level is RelevanceLevel.LOW


def test_gold_normalized_before_matching():
    score = precision(make_result("d", ["active safety"]), {"Active  Safety?"})
    assert score.rate == 1


def test_containment_matching_is_opt_in():
    auto = make_result("d", ["active safety"])
    gold = {"active safety control"}
    assert precision(auto, gold).rate == 0
    assert precision(auto, gold, containment=True).rate == 1
    # containment means a contiguous window, not scattered words
    assert precision(make_result("d", ["active control"]), gold, containment=True).rate == 0


# -------------------------------------------------------------------- recall


def test_recall_full_coverage():
    assert recall(make_result("d", ["a b", "c d", "e f"]), {"a b", "c d"}) == 1


def test_recall_no_overlap():
    assert recall(make_result("d", ["a b"]), {"x y"}) == 0


def test_recall_partial():
    assert recall(make_result("d", ["a b", "c d", "e f"]), {"a b", "c d", "e f", "g h"}) == Fraction(3, 4)


def test_recall_rejects_empty_gold():
    with pytest.raises(ValueError):
        recall(make_result("d", ["a b"]), set())


# ------------------------------------------------------------------- banding


@pytest.mark.parametrize(
    "rate,expected",
    [
        (Fraction(1), RelevanceLevel.HIGH),
        (Fraction(3, 4), RelevanceLevel.HIGH),
        (Fraction(2, 3), RelevanceLevel.HIGH),
        (0.667, RelevanceLevel.HIGH),
        (0.666, RelevanceLevel.MEDIUM),
        (Fraction(1, 2), RelevanceLevel.MEDIUM),
        (0.334, RelevanceLevel.MEDIUM),
        (Fraction(1, 3), RelevanceLevel.MEDIUM),
        (0.333, RelevanceLevel.LOW),
        (Fraction(1, 4), RelevanceLevel.LOW),
        (0, RelevanceLevel.LOW),
    ],
)
def test_band_boundaries(rate, expected):
    assert relevance_level(rate) is expected


@pytest.mark.parametrize("rate", [-0.1, 1.1, Fraction(-1, 3), 2])
def test_band_rejects_out_of_range(rate):
    with pytest.raises(ValueError):
        relevance_level(rate)


def check_banding_against_integer_oracle(max_exhaustive: int = 100, samples: int = 1000) -> None:
    """Banding must agree with pure integer arithmetic for any TP/retrieved."""

    def oracle(tp: int, retrieved: int) -> RelevanceLevel:
        if 3 * tp >= 2 * retrieved:
            return RelevanceLevel.HIGH
        if 3 * tp >= retrieved:
            return RelevanceLevel.MEDIUM
        return RelevanceLevel.LOW

    for retrieved in range(1, max_exhaustive + 1):
        for tp in range(0, retrieved + 1):
            assert relevance_level(Fraction(tp, retrieved)) is oracle(tp, retrieved)
    rng = random.Random(2468)
    for _ in range(samples):
        retrieved = rng.randint(1, 1000)
        tp = rng.randint(0, retrieved)
        assert relevance_level(Fraction(tp, retrieved)) is oracle(tp, retrieved)


def test_banding_has_no_float_hazard():
    check_banding_against_integer_oracle()


def test_banding_monotone_in_rate():
    order = {RelevanceLevel.LOW: 0, RelevanceLevel.MEDIUM: 1, RelevanceLevel.HIGH: 2}
    previous = RelevanceLevel.LOW
    for i in range(0, 301):
        level = relevance_level(Fraction(i, 300))
        assert order[level] >= order[previous]
        previous = level


# ----------------------------------------------------------------- aggregate

# published distribution: (rate, files); level counts follow by summation:
# High = 28 + 3 + 19 = 50, Medium = 22 + 14 = 36, Low = 4 + 10 = 14
REFERENCE_DISTRIBUTION = [
    (Fraction(1), 28),
    (Fraction(3, 4), 3),
    (Fraction(2, 3), 19),
    (Fraction(1, 2), 22),
    (Fraction(1, 3), 14),
    (Fraction(1, 4), 4),
    (Fraction(0), 10),
]


def scores_from_distribution(distribution) -> list[PrecisionScore]:
    scores = []
    for rate, files in distribution:
        for i in range(files):
            scores.append(
                PrecisionScore(
                    document_id=f"f{len(scores)}",
                    true_positives=rate.numerator,
                    retrieved=rate.denominator,
                    rate=rate,
                    level=relevance_level(rate),
                )
            )
    return scores


def test_aggregate_published_distribution():
    report = aggregate(scores_from_distribution(REFERENCE_DISTRIBUTION))
    assert report.file_count == 100
    assert report.per_type == {rate: files for rate, files in REFERENCE_DISTRIBUTION}
    assert report.per_level == {
        RelevanceLevel.HIGH: 50,
        RelevanceLevel.MEDIUM: 36,
        RelevanceLevel.LOW: 14,
    }
    assert report.level_percentages() == {
        RelevanceLevel.HIGH: Fraction(50),
        RelevanceLevel.MEDIUM: Fraction(36),
        RelevanceLevel.LOW: Fraction(14),
    }
    assert report.mean_rate == Fraction(143, 240)


def test_aggregate_single_score():
    report = aggregate(scores_from_distribution([(Fraction(1, 2), 1)]))
    assert report.per_level == {RelevanceLevel.MEDIUM: 1}
    assert report.level_percentages() == {RelevanceLevel.MEDIUM: Fraction(100)}


def test_aggregate_identical_scores_one_bucket():
    report = aggregate(scores_from_distribution([(Fraction(2, 3), 5)]))
    assert report.per_type == {Fraction(2, 3): 5}


def test_aggregate_rejects_empty():
    with pytest.raises(ValueError):
        aggregate([])


def test_aggregate_counts_conserved_on_random_input():
    rng = random.Random(13579)
    for _ in range(50):
        scores = []
        for i in range(rng.randint(1, 40)):
            retrieved = rng.randint(1, 6)
            tp = rng.randint(0, retrieved)
            rate = Fraction(tp, retrieved)
            scores.append(PrecisionScore(f"d{i}", tp, retrieved, rate, relevance_level(rate)))
        report = aggregate(scores)
        assert sum(report.per_type.values()) == len(scores)
        assert sum(report.per_level.values()) == len(scores)
        assert list(report.per_type) == sorted(report.per_type, reverse=True)


def test_report_renderings():
    report = aggregate(scores_from_distribution(REFERENCE_DISTRIBUTION))
    payload = report.to_json_dict()
    assert payload["per_level"] == [
        {"level": "High", "files": 50, "percent": 50.0},
        {"level": "Medium", "files": 36, "percent": 36.0},
        {"level": "Low", "files": 14, "percent": 14.0},
    ]
    assert payload["per_type"][0] == {
        "type": 1, "rate_exact": "1", "rate_percent": 100.0, "files": 28, "level": "High",
    }
    assert payload["per_type"][2]["rate_percent"] == 66.7
    assert payload["mean_rate_percent"] == 59.6
    table = report.to_text_table()
    assert table.splitlines()[0].split() == ["PT", "PR", "NoF", "PL"]
    assert "66.7%" in table and "19" in table


# ---------------------------------------------------------------- gold files


def test_load_gold_csv(tmp_path):
    path = tmp_path / "gold.csv"
    path.write_text(
        "# document_id,phrase\n"
        "doc1,Active Safety\n"
        "doc1,roadway departure\n"
        "doc2,vehicle control\n"
        "\n",
        encoding="utf-8",
    )
    gold = load_gold_csv(path)
    assert gold.by_document == {
        "doc1": {"active safety", "roadway departure"},
        "doc2": {"vehicle control"},
    }
    assert "doc1" in gold
    assert gold.for_document("doc2") == {"vehicle control"}


def test_gold_csv_phrase_with_comma(tmp_path):
    path = tmp_path / "gold.csv"
    path.write_text("doc1,braking, and steering\n", encoding="utf-8")
    gold = load_gold_csv(path)
    assert gold.by_document == {"doc1": {"braking and steering"}}


# ------------------------------------------------------- oracle equivalence


def check_precision_recall_oracle(iterations: int = 1000) -> None:
    """Exact matching must agree with plain set intersection."""
    rng = random.Random(112358)
    vocab = [f"p{i} q{i}" for i in range(12)]
    for i in range(iterations):
        auto_phrases = rng.sample(vocab, rng.randint(0, 8))
        gold = set(rng.sample(vocab, rng.randint(1, 8)))
        auto = make_result(f"d{i}", auto_phrases)
        overlap = set(auto_phrases) & gold
        score = precision(auto, gold)
        assert score.true_positives == len(overlap)
        assert score.retrieved == len(auto_phrases)
        expected_rate = Fraction(len(overlap), len(auto_phrases)) if auto_phrases else Fraction(0)
        assert score.rate == expected_rate
        assert score.true_positives <= score.retrieved
        assert score.true_positives <= len(gold)
        assert recall(auto, gold) == Fraction(len(overlap), len(gold))


def test_precision_recall_match_set_oracle():
    check_precision_recall_oracle(1000)
