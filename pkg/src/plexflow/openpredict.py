"""Desk-scale drug-repositioning pipeline.

Feature generation follows the similarity-profile scheme: a candidate
(drug, disease) pair gets, for every (drug measure i, disease measure j)
combination, the maximum over known associations (d', s') of the weighted
geometric mean of drugSim_i(drug, d') and diseaseSim_j(disease, s').
With 5 drug measures and 2 disease measures that yields 10 features, each
in [0, 1]. A plain logistic classifier trained by full-batch gradient
descent scores candidates, and two 10-fold cross-validation schemes
evaluate it: hiding whole drugs (all their associations leave the training
side) or hiding individual associations.

Everything is seeded and deterministic: per-fold RNG streams derive from
(seed, repetition, fold), so fold order or parallel evaluation cannot
change results. Negative examples are unlabeled pairs sampled uniformly at
a 1:1 ratio to positives per fold.

A synthetic generator produces block-structured similarity bundles with a
planted cluster signal (or none), sized for tests rather than for real
corpora; real matrices can be loaded from CSV instead.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .rdf import Graph
from .trace import Tracer
from .fixture import MEASURES

HIDE_DRUGS = "drugs"
HIDE_ASSOCIATIONS = "associations"

N_DRUG_MEASURES = 5
N_DISEASE_MEASURES = 2
N_FEATURES = N_DRUG_MEASURES * N_DISEASE_MEASURES


class PipelineError(ValueError):
    pass


@dataclass
class SimilarityBundle:
    drug_ids: tuple[str, ...]
    disease_ids: tuple[str, ...]
    drug_sims: np.ndarray     # (5, D, D)
    disease_sims: np.ndarray  # (2, S, S)

    @property
    def n_drugs(self) -> int:
        return len(self.drug_ids)

    @property
    def n_diseases(self) -> int:
        return len(self.disease_ids)

    def validate(self, tol: float = 1e-12) -> None:
        if self.drug_sims.shape != (N_DRUG_MEASURES, self.n_drugs, self.n_drugs):
            raise PipelineError("drug similarity tensor has the wrong shape")
        if self.disease_sims.shape != (N_DISEASE_MEASURES, self.n_diseases,
                                       self.n_diseases):
            raise PipelineError("disease similarity tensor has the wrong shape")
        for name, sims in (("drug", self.drug_sims), ("disease", self.disease_sims)):
            if np.min(sims) < 0 or np.max(sims) > 1:
                raise PipelineError(f"{name} similarities must lie in [0, 1]")
            if np.max(np.abs(sims - sims.transpose(0, 2, 1))) > tol:
                raise PipelineError(f"{name} similarities must be symmetric")
            diag = sims[:, range(sims.shape[1]), range(sims.shape[1])]
            if np.max(np.abs(diag - 1.0)) > tol:
                raise PipelineError(f"{name} similarities need a unit diagonal")


@dataclass(frozen=True)
class GoldStandard:
    pairs: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.pairs)

    def validate(self, n_drugs: int, n_diseases: int) -> None:
        for d, s in self.pairs:
            if not (0 <= d < n_drugs and 0 <= s < n_diseases):
                raise PipelineError(f"association ({d}, {s}) is out of range")


@dataclass
class FeatureMatrix:
    pairs: tuple[tuple[int, int], ...]
    X: np.ndarray  # (n, 10), column order (drug measure i, disease measure j)
    y: np.ndarray  # (n,) in {0, 1}


def weighted_geometric_mean(x: float, y: float,
                            weights: tuple[float, float] = (0.5, 0.5)) -> float:
    """x**w1 * y**w2 with w1 + w2 = 1; zero inputs give zero (continuous limit)."""
    w1, w2 = _check_weights(weights)
    if x < 0 or y < 0:
        raise PipelineError("similarities must be nonnegative")
    if x == 0.0 or y == 0.0:
        return 0.0
    return float(x ** w1 * y ** w2)


def _check_weights(weights) -> tuple[float, float]:
    if len(weights) != 2:
        raise PipelineError("exactly two combination weights are required")
    w1, w2 = float(weights[0]), float(weights[1])
    if w1 < 0 or w2 < 0 or abs((w1 + w2) - 1.0) > 1e-9:
        raise PipelineError("weights must be nonnegative and sum to 1")
    return w1, w2


def build_features(bundle: SimilarityBundle, gold: GoldStandard,
                   candidates: Iterable[tuple[int, int]],
                   exclude_self: bool = False,
                   weights: tuple[float, float] = (0.5, 0.5)) -> FeatureMatrix:
    """Similarity-profile features for candidate pairs against a gold standard.

    ``exclude_self`` drops a candidate's own association from the maximum,
    so a known positive cannot score against itself.
    """
    w1, w2 = _check_weights(weights)
    if not gold.pairs:
        raise PipelineError("gold standard is empty")
    pairs = tuple(candidates)
    gold_list = sorted(gold.pairs)
    gd = np.fromiter((d for d, _ in gold_list), dtype=np.int64)
    gs = np.fromiter((s for _, s in gold_list), dtype=np.int64)
    cd = np.fromiter((d for d, _ in pairs), dtype=np.int64, count=len(pairs))
    cs = np.fromiter((s for _, s in pairs), dtype=np.int64, count=len(pairs))

    drug_part = bundle.drug_sims[:, cd[:, None], gd[None, :]]       # (5, n, G)
    disease_part = bundle.disease_sims[:, cs[:, None], gs[None, :]]  # (2, n, G)
    combined = (drug_part[:, None, :, :] ** w1) * (disease_part[None, :, :, :] ** w2)
    if exclude_self:
        self_mask = (cd[:, None] == gd[None, :]) & (cs[:, None] == gs[None, :])
        combined = np.where(self_mask[None, None, :, :], 0.0, combined)
    feats = combined.max(axis=3)                 # (5, 2, n)
    X = feats.reshape(N_FEATURES, len(pairs)).T.copy()
    y = np.fromiter((1.0 if p in gold.pairs else 0.0 for p in pairs),
                    dtype=np.float64, count=len(pairs))
    return FeatureMatrix(pairs=pairs, X=X, y=y)


# ---------------------------------------------------------------------------
# Logistic classifier


@dataclass(frozen=True)
class Hyper:
    learning_rate: float = 0.1
    iterations: int = 2000
    l2: float = 1e-4
    seed: int = 0


@dataclass
class LogisticModel:
    weights: np.ndarray
    bias: float
    hyper: Hyper


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss_and_grad(weights: np.ndarray, bias: float, X: np.ndarray,
                           y: np.ndarray, l2: float) -> tuple[float, np.ndarray, float]:
    """Mean cross-entropy with an L2 penalty on the weights, plus gradients."""
    n = X.shape[0]
    z = X @ weights + bias
    p = _sigmoid(z)
    # log(p) / log(1-p) written via logaddexp for stability at extreme z.
    loss = float(np.mean((1.0 - y) * z + np.logaddexp(0.0, -z)))
    loss += 0.5 * l2 * float(weights @ weights)
    residual = p - y
    grad_w = X.T @ residual / n + l2 * weights
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


def train_logistic(features: FeatureMatrix, hyper: Optional[Hyper] = None) -> LogisticModel:
    """Full-batch gradient descent from zero weights; deterministic."""
    hyper = hyper or Hyper()
    X, y = features.X, features.y
    classes = np.unique(y)
    if len(classes) < 2:
        raise PipelineError("training data must contain both classes")
    weights = np.zeros(X.shape[1])
    bias = 0.0
    for _ in range(hyper.iterations):
        _, grad_w, grad_b = logistic_loss_and_grad(weights, bias, X, y, hyper.l2)
        weights -= hyper.learning_rate * grad_w
        bias -= hyper.learning_rate * grad_b
    return LogisticModel(weights=weights, bias=bias, hyper=hyper)


def predict_proba(model: LogisticModel, X: np.ndarray) -> np.ndarray:
    if X.ndim != 2 or X.shape[1] != model.weights.shape[0]:
        raise PipelineError("feature width does not match the model")
    return _sigmoid(X @ model.weights + model.bias)


# ---------------------------------------------------------------------------
# Metrics


@dataclass(frozen=True)
class MetricsRecord:
    roc_auc: float
    aupr: float
    accuracy: float
    precision: float
    recall: float
    f1: float

    def as_dict(self) -> dict[str, float]:
        return {"roc_auc": self.roc_auc, "aupr": self.aupr,
                "accuracy": self.accuracy, "precision": self.precision,
                "recall": self.recall, "f1": self.f1}


@dataclass
class CrossValRecord:
    scheme: str
    folds: int
    repetitions: int
    seed: int
    per_fold: list[MetricsRecord]
    mean: MetricsRecord
    std: MetricsRecord

    def to_payload(self) -> dict:
        return {
            "scheme": self.scheme,
            "folds": self.folds,
            "repetitions": self.repetitions,
            "seed": self.seed,
            "mean": self.mean.as_dict(),
            "std": self.std.as_dict(),
            "per_fold": [m.as_dict() for m in self.per_fold],
        }


def _midranks(scores: np.ndarray) -> np.ndarray:
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(len(scores), dtype=np.float64)
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def roc_auc(scores, labels) -> float:
    """Rank-statistic ROC AUC; tied scores contribute midranks."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    npos = int(np.sum(labels == 1))
    nneg = int(np.sum(labels == 0))
    if npos == 0 or nneg == 0:
        raise PipelineError("ROC AUC needs at least one positive and one negative")
    ranks = _midranks(scores)
    pos_rank_sum = float(np.sum(ranks[labels == 1]))
    return (pos_rank_sum - npos * (npos + 1) / 2.0) / (npos * nneg)


def average_precision(scores, labels) -> float:
    """Area under the precision-recall curve in average-precision form.

    Tied scores are handled as blocks: precision is taken after the whole
    block of equal scores has been admitted.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    npos = int(np.sum(labels == 1))
    if npos == 0 or int(np.sum(labels == 0)) == 0:
        raise PipelineError("AUPR needs at least one positive and one negative")
    order = np.argsort(-scores, kind="mergesort")
    ap = 0.0
    tp = 0
    seen = 0
    i = 0
    n = len(scores)
    while i < n:
        j = i
        while j + 1 < n and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        block = order[i:j + 1]
        block_tp = int(np.sum(labels[block] == 1))
        tp += block_tp
        seen += len(block)
        if block_tp:
            ap += (block_tp / npos) * (tp / seen)
        i = j + 1
    return ap


def metrics(scores, labels, threshold: float = 0.5) -> MetricsRecord:
    """The full metric suite at one decision threshold."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    predicted = scores >= threshold
    actual = labels == 1
    tp = int(np.sum(predicted & actual))
    fp = int(np.sum(predicted & ~actual))
    fn = int(np.sum(~predicted & actual))
    tn = int(np.sum(~predicted & ~actual))
    accuracy = (tp + tn) / len(labels)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return MetricsRecord(
        roc_auc=roc_auc(scores, labels),
        aupr=average_precision(scores, labels),
        accuracy=accuracy, precision=precision, recall=recall, f1=f1)


# ---------------------------------------------------------------------------
# Cross-validation


def _all_negative_candidates(n_drugs, n_diseases, gold_pairs, drug_pool=None):
    pool = range(n_drugs) if drug_pool is None else sorted(drug_pool)
    return [(d, s) for d in pool for s in range(n_diseases)
            if (d, s) not in gold_pairs]


def _sample_pairs(candidates: list[tuple[int, int]], count: int,
                  rng: np.random.Generator) -> list[tuple[int, int]]:
    if count > len(candidates):
        raise PipelineError("not enough unlabeled pairs to sample negatives")
    index = rng.choice(len(candidates), size=count, replace=False)
    return [candidates[i] for i in sorted(index)]


def _chunk(items: list, folds: int) -> list[list]:
    out = []
    base, extra = divmod(len(items), folds)
    pos = 0
    for k in range(folds):
        size = base + (1 if k < extra else 0)
        out.append(items[pos:pos + size])
        pos += size
    return out


def _aggregate(scheme, folds, repetitions, seed, records) -> CrossValRecord:
    arrays = {name: np.array([getattr(r, name) for r in records])
              for name in ("roc_auc", "aupr", "accuracy", "precision",
                           "recall", "f1")}
    mean = MetricsRecord(**{k: float(np.mean(v)) for k, v in arrays.items()})
    std = MetricsRecord(**{k: float(np.std(v)) for k, v in arrays.items()})
    return CrossValRecord(scheme=scheme, folds=folds, repetitions=repetitions,
                          seed=seed, per_fold=records, mean=mean, std=std)


def cross_validate(bundle: SimilarityBundle, gold: GoldStandard, scheme: str,
                   folds: int = 10, repetitions: int = 1, seed: int = 0,
                   hyper: Optional[Hyper] = None,
                   weights: tuple[float, float] = (0.5, 0.5)) -> CrossValRecord:
    """k-fold evaluation under the hide-drugs or hide-associations scheme."""
    if scheme not in (HIDE_DRUGS, HIDE_ASSOCIATIONS):
        raise PipelineError(f"unknown scheme: {scheme!r}")
    if folds < 2:
        raise PipelineError("at least 2 folds are required")
    if repetitions < 1:
        raise PipelineError("at least 1 repetition is required")
    bundle.validate()
    gold.validate(bundle.n_drugs, bundle.n_diseases)
    hyper = hyper or Hyper(seed=seed)

    records: list[MetricsRecord] = []
    for rep in range(repetitions):
        if scheme == HIDE_DRUGS:
            records.extend(_run_hide_drugs(bundle, gold, folds, seed, rep,
                                           hyper, weights))
        else:
            records.extend(_run_hide_associations(bundle, gold, folds, seed, rep,
                                                  hyper, weights))
    return _aggregate(scheme, folds, repetitions, seed, records)


def _run_hide_drugs(bundle, gold, folds, seed, rep, hyper, weights):
    rng = np.random.default_rng([seed, rep])
    drugs = list(rng.permutation(bundle.n_drugs))
    records = []
    for fold, test_drugs in enumerate(_chunk(drugs, folds)):
        test_set = set(int(d) for d in test_drugs)
        train_gold = GoldStandard(frozenset(
            p for p in gold.pairs if p[0] not in test_set))
        if not train_gold.pairs:
            raise PipelineError(f"fold {fold} leaves no training associations")
        test_pairs = [(d, s) for d in sorted(test_set)
                      for s in range(bundle.n_diseases)]
        if not any(p in gold.pairs for p in test_pairs):
            raise PipelineError(f"fold {fold} contains no positive association")
        rng_fold = np.random.default_rng([seed, rep, fold])
        train_drugs = [d for d in range(bundle.n_drugs) if d not in test_set]
        negatives = _sample_pairs(
            _all_negative_candidates(bundle.n_drugs, bundle.n_diseases,
                                     gold.pairs, drug_pool=train_drugs),
            len(train_gold.pairs), rng_fold)
        train_pairs = sorted(train_gold.pairs) + negatives
        train = build_features(bundle, train_gold, train_pairs,
                               exclude_self=True, weights=weights)
        test = build_features(bundle, train_gold, test_pairs,
                              exclude_self=False, weights=weights)
        test_labels = np.fromiter((1.0 if p in gold.pairs else 0.0
                                   for p in test_pairs), dtype=np.float64)
        model = train_logistic(train, hyper)
        scores = predict_proba(model, test.X)
        records.append(metrics(scores, test_labels))
    return records


def _run_hide_associations(bundle, gold, folds, seed, rep, hyper, weights):
    rng = np.random.default_rng([seed, rep])
    positives = sorted(gold.pairs)
    order = [positives[int(i)] for i in rng.permutation(len(positives))]
    records = []
    for fold, test_pos in enumerate(_chunk(order, folds)):
        if not test_pos:
            raise PipelineError(f"fold {fold} contains no positive association")
        train_gold = GoldStandard(frozenset(gold.pairs) - frozenset(test_pos))
        if not train_gold.pairs:
            raise PipelineError(f"fold {fold} leaves no training associations")
        rng_fold = np.random.default_rng([seed, rep, fold])
        unlabeled = _all_negative_candidates(bundle.n_drugs, bundle.n_diseases,
                                             gold.pairs)
        test_neg = _sample_pairs(unlabeled, len(test_pos), rng_fold)
        remaining = [p for p in unlabeled if p not in set(test_neg)]
        train_neg = _sample_pairs(remaining, len(train_gold.pairs), rng_fold)
        train_pairs = sorted(train_gold.pairs) + train_neg
        test_pairs = sorted(test_pos) + test_neg
        train = build_features(bundle, train_gold, train_pairs,
                               exclude_self=True, weights=weights)
        test = build_features(bundle, train_gold, test_pairs,
                              exclude_self=False, weights=weights)
        test_labels = np.fromiter((1.0 if p in gold.pairs else 0.0
                                   for p in test_pairs), dtype=np.float64)
        model = train_logistic(train, hyper)
        scores = predict_proba(model, test.X)
        records.append(metrics(scores, test_labels))
    return records


# ---------------------------------------------------------------------------
# Synthetic data


def generate_bundle(n_drugs: int, n_diseases: int, seed: int,
                    n_clusters: int = 5, planted: bool = True,
                    pairs_per_drug: int = 3) -> tuple[SimilarityBundle, GoldStandard]:
    """Block-structured similarity bundle with (optionally) a planted signal.

    Drugs and diseases are assigned to matching clusters; similarities are
    high inside a cluster and low across clusters. With ``planted`` the
    gold associations align drug and disease clusters, so similarity to a
    known association predicts membership; without it they are uniform
    noise and nothing is learnable.
    """
    rng = np.random.default_rng([seed])
    drug_cluster = rng.integers(0, n_clusters, size=n_drugs)
    disease_cluster = rng.integers(0, n_clusters, size=n_diseases)

    def cluster_sims(cluster: np.ndarray, count: int) -> np.ndarray:
        size = len(cluster)
        same = cluster[:, None] == cluster[None, :]
        out = np.empty((count, size, size))
        for m in range(count):
            low = rng.uniform(0.02, 0.35, size=(size, size))
            high = rng.uniform(0.60, 0.95, size=(size, size))
            sims = np.where(same, high, low)
            sims = (sims + sims.T) / 2.0
            np.fill_diagonal(sims, 1.0)
            out[m] = sims
        return out

    drug_sims = cluster_sims(drug_cluster, N_DRUG_MEASURES)
    disease_sims = cluster_sims(disease_cluster, N_DISEASE_MEASURES)
    pairs: set[tuple[int, int]] = set()
    for d in range(n_drugs):
        if planted:
            pool = np.flatnonzero(disease_cluster == drug_cluster[d])
        else:
            pool = np.arange(n_diseases)
        if len(pool) == 0:
            continue
        count = min(pairs_per_drug, len(pool))
        chosen = rng.choice(pool, size=count, replace=False)
        pairs.update((d, int(s)) for s in chosen)
    bundle = SimilarityBundle(
        drug_ids=tuple(f"DRUG:{i:04d}" for i in range(n_drugs)),
        disease_ids=tuple(f"DISEASE:{i:04d}" for i in range(n_diseases)),
        drug_sims=drug_sims, disease_sims=disease_sims)
    return bundle, GoldStandard(frozenset(pairs))


# ---------------------------------------------------------------------------
# CSV input


def load_similarity_csv(path) -> tuple[tuple[str, ...], np.ndarray]:
    """Square similarity matrix with a header row and identifiers in column 0."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        rows = [row for row in reader if row]
    if len(rows) < 2:
        raise PipelineError(f"{path}: no data rows")
    ids = tuple(rows[0][1:])
    matrix = np.zeros((len(ids), len(ids)))
    if len(rows) - 1 != len(ids):
        raise PipelineError(f"{path}: matrix is not square")
    for i, row in enumerate(rows[1:]):
        if row[0] != ids[i]:
            raise PipelineError(f"{path}: row identifier {row[0]!r} does not "
                                f"match header order")
        if len(row) - 1 != len(ids):
            raise PipelineError(f"{path}: row {i + 1} has the wrong width")
        matrix[i] = [float(v) for v in row[1:]]
    return ids, matrix


def load_bundle_csv(drug_paths, disease_paths) -> SimilarityBundle:
    if len(drug_paths) != N_DRUG_MEASURES:
        raise PipelineError(f"expected {N_DRUG_MEASURES} drug similarity files")
    if len(disease_paths) != N_DISEASE_MEASURES:
        raise PipelineError(f"expected {N_DISEASE_MEASURES} disease similarity files")
    drug_ids = None
    drug_mats = []
    for path in drug_paths:
        ids, matrix = load_similarity_csv(path)
        if drug_ids is None:
            drug_ids = ids
        elif ids != drug_ids:
            raise PipelineError(f"{path}: drug identifiers disagree across files")
        drug_mats.append(matrix)
    disease_ids = None
    disease_mats = []
    for path in disease_paths:
        ids, matrix = load_similarity_csv(path)
        if disease_ids is None:
            disease_ids = ids
        elif ids != disease_ids:
            raise PipelineError(f"{path}: disease identifiers disagree across files")
        disease_mats.append(matrix)
    bundle = SimilarityBundle(drug_ids=drug_ids, disease_ids=disease_ids,
                              drug_sims=np.stack(drug_mats),
                              disease_sims=np.stack(disease_mats))
    bundle.validate()
    return bundle


def load_gold_csv(path, bundle: SimilarityBundle) -> GoldStandard:
    """Two-column CSV of (drug id, disease id) positive associations."""
    drug_index = {name: i for i, name in enumerate(bundle.drug_ids)}
    disease_index = {name: i for i, name in enumerate(bundle.disease_ids)}
    pairs = set()
    with open(path, newline="", encoding="utf-8") as handle:
        for row in csv.reader(handle):
            if not row or row[0].startswith("#"):
                continue
            drug, disease = row[0].strip(), row[1].strip()
            if drug not in drug_index:
                raise PipelineError(f"{path}: unknown drug id {drug!r}")
            if disease not in disease_index:
                raise PipelineError(f"{path}: unknown disease id {disease!r}")
            pairs.add((drug_index[drug], disease_index[disease]))
    if not pairs:
        raise PipelineError(f"{path}: no associations")
    return GoldStandard(frozenset(pairs))


# ---------------------------------------------------------------------------
# Provenance


def run_and_trace(bundle: SimilarityBundle, gold: GoldStandard, scheme: str,
                  workflow_graph: Graph, step: str, agent: str, role: str,
                  folds: int = 10, repetitions: int = 1, seed: int = 0,
                  hyper: Optional[Hyper] = None,
                  weights: tuple[float, float] = (0.5, 0.5),
                  at: Optional[int] = None) -> tuple[CrossValRecord, Graph]:
    """Run cross-validation and record it as an execution of ``step``.

    The activity generates six model-evaluation artifacts (accuracy,
    average precision, F1, precision, recall, ROC AUC), each holding the
    cross-validation mean formatted to six decimals.
    """
    record = cross_validate(bundle, gold, scheme, folds=folds,
                            repetitions=repetitions, seed=seed, hyper=hyper,
                            weights=weights)
    # A deterministic timestamp: fixed base plus the seed, so identical
    # invocations emit identical graphs.
    moment = at if at is not None else 1_560_000_000 + seed
    tracer = Tracer(workflow_graph)
    activity = tracer.begin_activity(step, agent, role, moment)
    mean = record.mean
    for key, value in (("accuracy", mean.accuracy),
                       ("average_precision", mean.aupr),
                       ("f1", mean.f1),
                       ("precision", mean.precision),
                       ("recall", mean.recall),
                       ("roc_auc", mean.roc_auc)):
        tracer.record_evaluation(activity, MEASURES[key], f"{value:.6f}", moment)
    return record, tracer.emit()
