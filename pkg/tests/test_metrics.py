"""Rank-metric oracles: pairwise counting for AUC, hand examples for AUPR."""

import math
import random

import pytest

from plexflow.openpredict import (
    PipelineError, average_precision, metrics, roc_auc,
)


def auc_by_pair_counting(scores, labels) -> float:
    """Concordant-pair oracle: ties count one half."""
    pos = [s for s, y in zip(scores, labels) if y == 1]
    neg = [s for s, y in zip(scores, labels) if y == 0]
    total = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                total += 1.0
            elif p == n:
                total += 0.5
    return total / (len(pos) * len(neg))


def random_case(rng: random.Random):
    n = rng.randrange(2, 51)
    # Coarse score grid so ties actually happen.
    scores = [rng.choice((0.0, 0.1, 0.25, 0.5, 0.5, 0.75, 0.9, 1.0))
              if rng.random() < 0.5 else rng.random() for _ in range(n)]
    labels = [rng.randrange(2) for _ in range(n)]
    if all(l == 1 for l in labels):
        labels[0] = 0
    if all(l == 0 for l in labels):
        labels[0] = 1
    return scores, labels


def test_auc_matches_pair_counting_on_1000_cases():
    rng = random.Random(314159)
    for _ in range(1000):
        scores, labels = random_case(rng)
        assert abs(roc_auc(scores, labels)
                   - auc_by_pair_counting(scores, labels)) < 1e-12


def test_auc_hand_example():
    # Pairs: (0.35 vs 0.1) and (0.8 vs both) concordant, (0.35 vs 0.4) not.
    assert roc_auc([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]) == pytest.approx(0.75,
                                                                         abs=1e-15)


def test_perfect_ranking():
    scores = [0.1, 0.2, 0.8, 0.9]
    labels = [0, 0, 1, 1]
    assert roc_auc(scores, labels) == 1.0
    assert average_precision(scores, labels) == 1.0


def test_all_tied_scores_give_half_auc():
    assert roc_auc([0.5] * 6, [0, 1, 0, 1, 0, 1]) == 0.5


def test_degenerate_labels_rejected():
    with pytest.raises(PipelineError):
        roc_auc([0.1, 0.2], [1, 1])
    with pytest.raises(PipelineError):
        average_precision([0.1, 0.2], [0, 0])


def test_auc_invariant_under_strictly_increasing_transforms():
    rng = random.Random(2718)
    transforms = (lambda x: 3.0 * x + 1.0,
                  lambda x: math.exp(x),
                  lambda x: x ** 3 + 0.5 * x)
    for _ in range(200):
        scores, labels = random_case(rng)
        base = roc_auc(scores, labels)
        for f in transforms:
            assert roc_auc([f(s) for s in scores], labels) == base


def test_aupr_hand_example():
    # Descending order: 0.9(+), 0.7(-), 0.5(+), 0.2(-).
    # AP = 1/2 * (1/1) + 1/2 * (2/3) = 5/6.
    ap = average_precision([0.5, 0.2, 0.9, 0.7], [1, 0, 1, 0])
    assert ap == pytest.approx(5.0 / 6.0, abs=1e-15)


def test_aupr_with_tied_block():
    # The tied pair (one positive, one negative at 0.5) is admitted as a
    # block: AP = 1/2 * 1 + 1/2 * (2/3).
    ap = average_precision([0.9, 0.5, 0.5], [1, 1, 0])
    assert ap == pytest.approx(0.5 + 0.5 * (2.0 / 3.0), abs=1e-15)


def test_f1_consistent_with_precision_and_recall():
    rng = random.Random(161803)
    for _ in range(300):
        scores, labels = random_case(rng)
        record = metrics(scores, labels)
        if record.precision + record.recall > 0:
            expected = (2 * record.precision * record.recall
                        / (record.precision + record.recall))
        else:
            expected = 0.0
        assert abs(record.f1 - expected) < 1e-12


def test_threshold_metrics_hand_example():
    record = metrics([0.9, 0.6, 0.4, 0.1], [1, 0, 1, 0], threshold=0.5)
    assert record.accuracy == 0.5
    assert record.precision == 0.5
    assert record.recall == 0.5
    assert record.f1 == pytest.approx(0.5, abs=1e-15)


def test_metrics_bounds():
    rng = random.Random(42424)
    for _ in range(100):
        scores, labels = random_case(rng)
        record = metrics(scores, labels)
        for value in record.as_dict().values():
            assert 0.0 <= value <= 1.0
