"""Top-k error evaluation for arbitration policies over a classification log.

Five policies are scored: each system alone, mean-probability fusion,
a random-review baseline (a seeded budget of items handed to an oracle
reviewer), and disagreement-gated review (items where the two systems'
top-1 predictions differ go to the oracle, everything else is scored by
the primary).  The oracle reviewer is assumed correct, so reviewed
items never count as errors.  A detector view of the same log reports
how well top-1 mismatch predicts primary failures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .streams import ClassLog

METHODS = (
    "primary_only",
    "secondary_only",
    "ensemble",
    "random_arbitrator",
    "arguing_machines",
)

_ENSEMBLE_CHUNK = 4096


@dataclass(frozen=True)
class ArbitrationReport:
    """Error of one policy at one k, with the review load it required."""

    method: str
    k: int
    error_pct: float
    review_fraction: float = 0.0


@dataclass(frozen=True)
class DetectorMetrics:
    """Top-1 mismatch as a detector of primary top-k failures.

    precision_pct/recall_pct are None when their denominator is zero
    (no disagreements / no failures), never silently 0.
    """

    k: int
    tp: int
    fp: int
    fn: int
    precision_pct: float | None
    recall_pct: float | None


def _require_nonempty(log: ClassLog) -> None:
    if len(log) == 0:
        raise ValueError("empty log")


def _check_k(log: ClassLog, k: int) -> None:
    if int(k) != k or not 1 <= k <= 5:
        raise ValueError(f"k must be an integer in [1, 5], got {k}")


def _failure_mask(log: ClassLog, system: str, k: int) -> np.ndarray:
    """Boolean mask: truth not among the system's top-k predictions."""
    if system == "primary":
        topk = log.primary_topk_array
    elif system == "secondary":
        topk = log.secondary_topk_array
    else:
        raise ValueError(f"system must be 'primary' or 'secondary', got {system!r}")
    truth = log.truth_array
    return ~(topk[:, :k] == truth[:, None]).any(axis=1)


def _disagree_mask(log: ClassLog) -> np.ndarray:
    return log.primary_topk_array[:, 0] != log.secondary_topk_array[:, 0]


def topk_error(log: ClassLog, system: str, k: int) -> float:
    """Percent of records whose truth is not in the system's top k."""
    _require_nonempty(log)
    _check_k(log, k)
    return 100.0 * float(_failure_mask(log, system, k).sum()) / len(log)


def arguing_machines_error(log: ClassLog, k: int) -> tuple[float, float]:
    """(error_pct, review_fraction) under disagreement-gated review.

    Top-1 mismatch routes a record to the oracle regardless of k; the
    remainder is scored by the primary's top-k.
    """
    _require_nonempty(log)
    _check_k(log, k)
    disagree = _disagree_mask(log)
    fail = _failure_mask(log, "primary", k)
    n = len(log)
    error_pct = 100.0 * float((fail & ~disagree).sum()) / n
    review_fraction = float(disagree.sum()) / n
    return error_pct, review_fraction


def random_arbitrator_error(
    log: ClassLog, budget_fraction: float, k: int, seed: int
) -> float:
    """Error when floor(budget*N) uniformly chosen records go to the oracle.

    Sampling is without replacement via numpy's PCG64 generator, so a
    given (log, budget, seed) triple always reviews the same records.
    """
    _require_nonempty(log)
    _check_k(log, k)
    if not 0.0 <= budget_fraction <= 1.0:
        raise ValueError(f"budget_fraction must be in [0, 1], got {budget_fraction}")
    n = len(log)
    m = int(np.floor(budget_fraction * n))
    reviewed = np.zeros(n, dtype=bool)
    if m > 0:
        idx = np.random.default_rng(seed).choice(n, size=m, replace=False)
        reviewed[idx] = True
    fail = _failure_mask(log, "primary", k)
    return 100.0 * float((fail & ~reviewed).sum()) / n


def random_arbitrator_expectation(log: ClassLog, budget_fraction: float, k: int) -> float:
    """Closed-form expected error: primary error scaled by the unreviewed share."""
    _require_nonempty(log)
    n = len(log)
    m = int(np.floor(budget_fraction * n))
    return topk_error(log, "primary", k) * (1.0 - m / n)


def random_arbitrator_draws(
    log: ClassLog, budget_fraction: float, k: int, seeds
) -> np.ndarray:
    """One random_arbitrator_error draw per seed, as an array."""
    return np.asarray(
        [random_arbitrator_error(log, budget_fraction, k, int(s)) for s in seeds]
    )


def ensemble_error(log: ClassLog, k: int) -> float:
    """Top-k error of the unweighted mean of the two probability vectors.

    Every record must carry both vectors.  A record counts correct at k
    when fewer than k classes have strictly greater fused probability
    than the truth (ties resolve in the truth's favor).
    """
    _require_nonempty(log)
    _check_k(log, k)
    for rec in log.records:
        if rec.primary_probs is None or rec.secondary_probs is None:
            raise ValueError(
                f"record id={rec.item_id!r} lacks probability vectors; "
                "ensemble fusion needs both"
            )
    truth = log.truth_array
    n = len(log)
    failures = 0
    for lo in range(0, n, _ENSEMBLE_CHUNK):
        hi = min(lo + _ENSEMBLE_CHUNK, n)
        p = np.stack([log.records[i].primary_probs for i in range(lo, hi)])
        s = np.stack([log.records[i].secondary_probs for i in range(lo, hi)])
        fused = (p + s) / 2.0
        at_truth = fused[np.arange(hi - lo), truth[lo:hi]]
        rank = (fused > at_truth[:, None]).sum(axis=1)
        failures += int((rank >= k).sum())
    return 100.0 * failures / n


def detector_metrics(log: ClassLog, k: int) -> DetectorMetrics:
    """Precision/recall of top-1 mismatch against primary top-k failures."""
    _require_nonempty(log)
    _check_k(log, k)
    disagree = _disagree_mask(log)
    fail = _failure_mask(log, "primary", k)
    tp = int((disagree & fail).sum())
    fp = int((disagree & ~fail).sum())
    fn = int((~disagree & fail).sum())
    precision = 100.0 * tp / (tp + fp) if tp + fp > 0 else None
    recall = 100.0 * tp / (tp + fn) if tp + fn > 0 else None
    return DetectorMetrics(k=k, tp=tp, fp=fp, fn=fn, precision_pct=precision, recall_pct=recall)


def evaluate(
    log: ClassLog,
    method: str,
    k: int,
    budget_fraction: float | None = None,
    seed: int | None = None,
) -> ArbitrationReport:
    """Score one policy at one k and package it as an ArbitrationReport."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if method == "primary_only":
        return ArbitrationReport(method, k, topk_error(log, "primary", k))
    if method == "secondary_only":
        return ArbitrationReport(method, k, topk_error(log, "secondary", k))
    if method == "ensemble":
        return ArbitrationReport(method, k, ensemble_error(log, k))
    if method == "random_arbitrator":
        if budget_fraction is None or seed is None:
            raise ValueError("random_arbitrator needs budget_fraction and seed")
        err = random_arbitrator_error(log, budget_fraction, k, seed)
        m = int(np.floor(budget_fraction * len(log)))
        return ArbitrationReport(method, k, err, review_fraction=m / len(log))
    err, review = arguing_machines_error(log, k)
    return ArbitrationReport(method, k, err, review_fraction=review)
