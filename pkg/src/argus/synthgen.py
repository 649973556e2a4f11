"""Seeded synthetic stream generators with exact joint counts.

gen_class_log builds a classification log whose primary failure counts
(top-1/top-5), disagreement count, and true-positive overlaps match a
requested spec exactly; the seed only shuffles which items land in
which cell.  Secondary failure counts and mean-fusion failure counts
can additionally be pinned, again as exact counts.  Probability
vectors are constructed from per-cell mass templates and satisfy the
argmax/top-1 consistency invariant; beyond the top slot, list ranks
and masses may disagree (some variants steer fusion by placing named
mass on an unlisted class, or list the truth with only baseline mass).

gen_steering_scenario builds an aligned steering trace: both streams
follow a shared slow curve, the secondary carries iid (optionally
AR(1)-smoothed) Gaussian noise, and during the ramp_len frames before
each disengagement the primary holds +divergence_deg while the
secondary holds -divergence_deg, so a fully covered window at range R
and length L scores L * 2 * divergence / R.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .streams import ClassLog, ClassRecord, DisengagementEvent, SteeringTrace


class InfeasibleSpecError(ValueError):
    """Requested counts cannot be realized by any log."""


# record cells: (agree?, primary outcome); outcomes: 0 = correct at top-1,
# 1 = top-1 failure only, 2 = top-5 failure (implies top-1 failure)
_A_OK, _A_F1, _A_F5, _D_OK, _D_F1, _D_F5 = range(6)

# roles inside one record's class pool
_T, _A, _B = 0, 1, 2
_ROLES = 11


# Fused ranks engineered per ensemble outcome: "ok" keeps the truth on
# top of the mean vector, "f1" keeps it inside the fused top-5 but not
# on top, "f5" pushes it out of the fused top-5.  Agreeing records with
# a wrong shared top-1 can never be "ok" (both argmaxes coincide, so
# the fused argmax does too).  The primary side depends only on the
# cell and the ensemble outcome; each entry is (list roles, masses).
_P_SIDES: dict[tuple[int, str], tuple] = {
    (_A_OK, "ok"): ((_T, 3, 4, 5, 6),
                    ((_T, 0.40), (3, 0.10), (4, 0.08), (5, 0.06), (6, 0.04))),
    (_A_F1, "f1"): ((_A, _T, 3, 4, 5),
                    ((_A, 0.30), (_T, 0.22), (3, 0.10), (4, 0.08), (5, 0.06))),
    (_A_F1, "f5"): ((_A, 3, 4, 5, _T),
                    ((_A, 0.30), (3, 0.16), (4, 0.13), (5, 0.10), (_T, 0.07))),
    (_A_F5, "f1"): ((_A, 3, 4, 5, 6),
                    ((_A, 0.30), (3, 0.11), (4, 0.09), (5, 0.07), (6, 0.05))),
    (_A_F5, "f5"): ((_A, 3, 4, 5, 6),
                    ((_A, 0.30), (3, 0.16), (4, 0.13), (5, 0.10), (6, 0.07))),
    (_D_OK, "ok"): ((_T, 3, 4, 5, 6),
                    ((_T, 0.40), (3, 0.10), (4, 0.08), (5, 0.06), (6, 0.04))),
    (_D_OK, "f1"): ((_T, 3, 4, 5, 6),
                    ((_T, 0.30), (3, 0.12), (4, 0.09), (5, 0.06), (6, 0.04))),
    (_D_OK, "f5"): ((_T, 3, 4, 5, 6),
                    ((_T, 0.17), (3, 0.16), (4, 0.16), (5, 0.16), (6, 0.16))),
    (_D_F1, "ok"): ((_A, _T, 3, 4, 5),
                    ((_A, 0.30), (_T, 0.28), (3, 0.08), (4, 0.06), (5, 0.04))),
    (_D_F1, "f1"): ((_A, _T, 3, 4, 5),
                    ((_A, 0.30), (_T, 0.20), (3, 0.10), (4, 0.07), (5, 0.05))),
    (_D_F1, "f5"): ((_A, 3, 4, 5, _T),
                    ((_A, 0.30), (3, 0.16), (4, 0.13), (5, 0.10), (_T, 0.07))),
    # runner-up mass on the unlisted truth, so fusion can recover it
    (_D_F5, "ok"): ((_A, 3, 4, 5, 6),
                    ((_A, 0.32), (_T, 0.28), (3, 0.10), (4, 0.08), (5, 0.06), (6, 0.04))),
    (_D_F5, "f1"): ((_A, 3, 4, 5, 6),
                    ((_A, 0.30), (3, 0.12), (4, 0.09), (5, 0.07), (6, 0.05))),
    (_D_F5, "f5"): ((_A, 3, 4, 5, 6),
                    ((_A, 0.30), (3, 0.16), (4, 0.13), (5, 0.10), (6, 0.07))),
}

# The secondary side additionally depends on where the truth sits in
# the secondary's own list: at the top ("hit1", only possible when the
# streams disagree over a primary failure), at ranks 2-5 ("hit5"), or
# absent ("miss").  Between hit5 and miss of the same cell/outcome the
# masses stay identical where possible so fusion is unaffected; only
# the list membership changes.
_S_SIDES: dict[tuple[int, str, str], tuple] = {
    (_A_OK, "ok", "hit1"): ((_T, 7, 8, 9, 10),
                            ((_T, 0.40), (7, 0.10), (8, 0.08), (9, 0.06), (10, 0.04))),
    (_A_F1, "f1", "hit5"): ((_A, _T, 6, 7, 8),
                            ((_A, 0.30), (_T, 0.22), (6, 0.10), (7, 0.08), (8, 0.06))),
    (_A_F1, "f1", "miss"): ((_A, 6, 7, 8, 9),
                            ((_A, 0.30), (_T, 0.22), (6, 0.10), (7, 0.08), (8, 0.06))),
    (_A_F1, "f5", "hit5"): ((_A, 3, 4, 5, _T),
                            ((_A, 0.30), (3, 0.16), (4, 0.13), (5, 0.10), (6, 0.09))),
    (_A_F1, "f5", "miss"): ((_A, 3, 4, 5, 6),
                            ((_A, 0.30), (3, 0.16), (4, 0.13), (5, 0.10), (6, 0.09))),
    (_A_F5, "f1", "hit5"): ((_A, _T, 7, 8, 9),
                            ((_A, 0.30), (_T, 0.26), (7, 0.10), (8, 0.07), (9, 0.05))),
    (_A_F5, "f1", "miss"): ((_A, 7, 8, 9, 10),
                            ((_A, 0.30), (_T, 0.26), (7, 0.10), (8, 0.07), (9, 0.05))),
    (_A_F5, "f5", "hit5"): ((_A, 7, 8, 9, _T),
                            ((_A, 0.30), (7, 0.16), (8, 0.13), (9, 0.10), (10, 0.07))),
    (_A_F5, "f5", "miss"): ((_A, 7, 8, 9, 10),
                            ((_A, 0.30), (7, 0.16), (8, 0.13), (9, 0.10), (10, 0.07))),
    (_D_OK, "ok", "hit5"): ((_B, _T, 7, 8, 9),
                            ((_B, 0.30), (_T, 0.26), (7, 0.09), (8, 0.07), (9, 0.05))),
    (_D_OK, "ok", "miss"): ((_B, 7, 8, 9, 10),
                            ((_B, 0.30), (_T, 0.26), (7, 0.09), (8, 0.07), (9, 0.05))),
    (_D_OK, "f1", "hit5"): ((_B, _T, 7, 8, 9),
                            ((_B, 0.45), (_T, 0.10), (7, 0.08), (8, 0.06), (9, 0.04))),
    (_D_OK, "f1", "miss"): ((_B, 7, 8, 9, 10),
                            ((_B, 0.45), (7, 0.12), (8, 0.09), (9, 0.06), (10, 0.04))),
    (_D_OK, "f5", "hit5"): ((_B, 3, 4, 5, _T),
                            ((_B, 0.18), (3, 0.16), (4, 0.16), (5, 0.16), (6, 0.16))),
    (_D_OK, "f5", "miss"): ((_B, 3, 4, 5, 6),
                            ((_B, 0.18), (3, 0.16), (4, 0.16), (5, 0.16), (6, 0.16))),
    (_D_F1, "ok", "hit1"): ((_T, 6, 7, 8, 9),
                            ((_T, 0.30), (6, 0.10), (7, 0.08), (8, 0.06), (9, 0.04))),
    (_D_F1, "ok", "hit5"): ((_B, _T, 6, 7, 8),
                            ((_B, 0.30), (_T, 0.28), (6, 0.08), (7, 0.06), (8, 0.04))),
    (_D_F1, "ok", "miss"): ((_B, 6, 7, 8, 9),
                            ((_B, 0.30), (_T, 0.28), (6, 0.08), (7, 0.06), (8, 0.04))),
    (_D_F1, "f1", "hit1"): ((_T, _A, 6, 7, 8),
                            ((_T, 0.26), (_A, 0.24), (6, 0.10), (7, 0.08), (8, 0.06))),
    (_D_F1, "f1", "hit5"): ((_B, _T, 6, 7, 8),
                            ((_B, 0.34), (_T, 0.12), (6, 0.10), (7, 0.08), (8, 0.06))),
    (_D_F1, "f1", "miss"): ((_B, 6, 7, 8, 9),
                            ((_B, 0.34), (6, 0.12), (7, 0.09), (8, 0.06), (9, 0.04))),
    # no (_D_F1, "f5", "hit1"): with the truth on top of the secondary
    # and inside the primary's top 5, at most four classes can outrank
    # it after fusion, so a fused top-5 failure is unreachable
    (_D_F1, "f5", "hit5"): ((_B, 3, 4, 5, _T),
                            ((_B, 0.30), (3, 0.16), (4, 0.13), (5, 0.10), (6, 0.09))),
    (_D_F1, "f5", "miss"): ((_B, 3, 4, 5, 6),
                            ((_B, 0.30), (3, 0.16), (4, 0.13), (5, 0.10), (6, 0.09))),
    (_D_F5, "ok", "hit1"): ((_T, 7, 8, 9, 10),
                            ((_T, 0.30), (7, 0.08), (8, 0.06), (9, 0.04), (10, 0.03))),
    (_D_F5, "ok", "hit5"): ((_B, _T, 7, 8, 9),
                            ((_B, 0.30), (_T, 0.29), (7, 0.08), (8, 0.06), (9, 0.04))),
    (_D_F5, "ok", "miss"): ((_B, 7, 8, 9, 10),
                            ((_B, 0.30), (_T, 0.29), (7, 0.08), (8, 0.06), (9, 0.04))),
    (_D_F5, "f1", "hit1"): ((_T, _A, 7, 8, 9),
                            ((_T, 0.24), (_A, 0.20), (7, 0.08), (8, 0.06), (9, 0.04))),
    (_D_F5, "f1", "hit5"): ((_B, _T, 7, 8, 9),
                            ((_B, 0.30), (_T, 0.26), (7, 0.08), (8, 0.06), (9, 0.04))),
    (_D_F5, "f1", "miss"): ((_B, 7, 8, 9, 10),
                            ((_B, 0.30), (_T, 0.26), (7, 0.08), (8, 0.06), (9, 0.04))),
    (_D_F5, "f5", "hit1"): ((_T, 3, 4, 5, 6),
                            ((_T, 0.17), (3, 0.16), (4, 0.16), (5, 0.16), (6, 0.16))),
    (_D_F5, "f5", "hit5"): ((_B, 7, 8, 9, _T),
                            ((_B, 0.30), (7, 0.16), (8, 0.13), (9, 0.10), (10, 0.07))),
    (_D_F5, "f5", "miss"): ((_B, 7, 8, 9, 10),
                            ((_B, 0.30), (7, 0.16), (8, 0.13), (9, 0.10), (10, 0.07))),
}

# ensemble outcome when no targets are requested: fusion mirrors the
# primary outcome of the cell
_NATURAL_OUTCOME = {
    _A_OK: "ok", _A_F1: "f1", _A_F5: "f5",
    _D_OK: "ok", _D_F1: "f1", _D_F5: "f5",
}

# secondary placement when no secondary targets are requested
_DEFAULT_SVAR = {
    (_A_OK, "ok"): "hit1",
    (_A_F1, "f1"): "hit5", (_A_F1, "f5"): "miss",
    (_A_F5, "f1"): "hit5", (_A_F5, "f5"): "miss",
    (_D_OK, "ok"): "hit5", (_D_OK, "f1"): "miss", (_D_OK, "f5"): "miss",
    (_D_F1, "ok"): "hit5", (_D_F1, "f1"): "miss", (_D_F1, "f5"): "miss",
    (_D_F5, "ok"): "hit5", (_D_F5, "f1"): "hit5", (_D_F5, "f5"): "miss",
}


@dataclass(frozen=True)
class ClassLogSpec:
    """Exact joint counts for a synthetic classification log.

    fail1/fail5: primary top-1/top-5 failure counts (fail5 <= fail1).
    disagree: records whose top-1 predictions differ.  tp1/tp5: overlap
    of disagreement with top-1/top-5 failures.  Optional s_fail1/s_fail5
    pin the secondary's failure counts (agreeing-wrong and
    disagreeing-correct records force a wrong secondary top-1, so
    s_fail1 can range over that floor plus any subset of the tp1
    records).  Optional ensemble targets request exact mean-fusion
    failure counts and imply probability vector generation.
    """

    n: int
    fail1: int
    fail5: int
    disagree: int
    tp1: int
    tp5: int
    seed: int = 0
    num_classes: int = 1000
    with_probs: bool = False
    s_fail1: int | None = None
    s_fail5: int | None = None
    ens_fail1: int | None = None
    ens_fail5: int | None = None

    def wants_probs(self) -> bool:
        return self.with_probs or self.ens_fail1 is not None or self.ens_fail5 is not None


def _cell_sizes(spec: ClassLogSpec) -> dict[int, int]:
    return {
        _A_OK: spec.n - spec.disagree - (spec.fail1 - spec.tp1),
        _A_F1: (spec.fail1 - spec.fail5) - (spec.tp1 - spec.tp5),
        _A_F5: spec.fail5 - spec.tp5,
        _D_OK: spec.disagree - spec.tp1,
        _D_F1: spec.tp1 - spec.tp5,
        _D_F5: spec.tp5,
    }


def _validate_class_spec(spec: ClassLogSpec) -> None:
    if spec.n < 1:
        raise InfeasibleSpecError(f"n must be >= 1, got {spec.n}")
    names = ("fail1", "fail5", "disagree", "tp1", "tp5")
    for name in names:
        v = getattr(spec, name)
        if v < 0:
            raise InfeasibleSpecError(f"{name} must be >= 0, got {v}")
    sizes = _cell_sizes(spec)
    labels = {
        _A_OK: "agree & correct (n - disagree - fail1 + tp1)",
        _A_F1: "agree & top-1-only failures (fail1 - fail5 - tp1 + tp5)",
        _A_F5: "agree & top-5 failures (fail5 - tp5)",
        _D_OK: "disagree & correct (disagree - tp1)",
        _D_F1: "disagree & top-1-only failures (tp1 - tp5)",
        _D_F5: "disagree & top-5 failures (tp5)",
    }
    for cell, size in sizes.items():
        if size < 0:
            raise InfeasibleSpecError(f"cell {labels[cell]} would need {size} records")
    min_classes = 50 if spec.wants_probs() else 12
    if spec.num_classes < min_classes:
        raise InfeasibleSpecError(
            f"num_classes must be >= {min_classes} "
            f"({'with' if spec.wants_probs() else 'without'} probability vectors), "
            f"got {spec.num_classes}"
        )
    if (spec.s_fail1 is None) != (spec.s_fail5 is None):
        raise InfeasibleSpecError(
            "secondary failure targets must be given together or not at all"
        )
    if spec.s_fail1 is not None:
        floor = sizes[_A_F1] + sizes[_A_F5] + sizes[_D_OK]
        ceil = floor + sizes[_D_F1] + sizes[_D_F5]
        if not floor <= spec.s_fail1 <= ceil:
            raise InfeasibleSpecError(
                f"s_fail1={spec.s_fail1} outside feasible range [{floor}, {ceil}] "
                "(agreeing-wrong and disagreeing-correct records force secondary "
                "top-1 failures; only disagreeing primary failures are tunable)"
            )
        if not 0 <= spec.s_fail5 <= spec.s_fail1:
            raise InfeasibleSpecError(
                f"need 0 <= s_fail5 <= s_fail1, got {spec.s_fail5}, {spec.s_fail1}"
            )
    if (spec.ens_fail1 is None) != (spec.ens_fail5 is None):
        raise InfeasibleSpecError("ensemble targets must be given together or not at all")
    if spec.ens_fail1 is not None:
        forced = sizes[_A_F1] + sizes[_A_F5]
        if not forced <= spec.ens_fail1 <= forced + spec.disagree:
            raise InfeasibleSpecError(
                f"ens_fail1={spec.ens_fail1} outside feasible range "
                f"[{forced}, {forced + spec.disagree}] (agreeing wrong records always "
                "fail fusion; only disagreeing records are tunable)"
            )
        if not 0 <= spec.ens_fail5 <= spec.ens_fail1:
            raise InfeasibleSpecError(
                f"need 0 <= ens_fail5 <= ens_fail1, got {spec.ens_fail5}, {spec.ens_fail1}"
            )


def _assign_outcomes(spec: ClassLogSpec, cells: np.ndarray) -> list[str]:
    """Pick each record's ensemble outcome so totals hit the targets exactly."""
    outcomes = [_NATURAL_OUTCOME[c] for c in cells]
    if spec.ens_fail1 is None:
        return outcomes
    members = {c: np.flatnonzero(cells == c) for c in range(6)}
    for c in (_A_F1, _A_F5):
        for i in members[c]:
            outcomes[i] = "f1"
    forced = members[_A_F1].size + members[_A_F5].size
    extra1 = spec.ens_fail1 - forced
    d_pool = np.concatenate([members[_D_F5], members[_D_F1], members[_D_OK]])
    for i in d_pool[:extra1]:
        outcomes[i] = "f1"
    for i in d_pool[extra1:]:
        outcomes[i] = "ok"
    e5_pool = [i for c in (_A_F5, _D_F5, _A_F1, _D_F1, _D_OK) for i in members[c]
               if outcomes[i] == "f1"]
    for i in e5_pool[: spec.ens_fail5]:
        outcomes[i] = "f5"
    return outcomes


def _assign_secondary(spec: ClassLogSpec, cells: np.ndarray, outcomes: list[str]) -> list[str]:
    """Pick where the truth sits in each secondary list (hit1/hit5/miss)."""
    if spec.s_fail1 is None:
        return [_DEFAULT_SVAR[(int(c), o)] for c, o in zip(cells, outcomes)]
    svar: list[str | None] = [None] * cells.size
    for i in np.flatnonzero(cells == _A_OK):
        svar[i] = "hit1"
    sizes = _cell_sizes(spec)
    floor = sizes[_A_F1] + sizes[_A_F5] + sizes[_D_OK]
    hit1_needed = floor + sizes[_D_F1] + sizes[_D_F5] - spec.s_fail1
    pool = [int(i) for i in np.flatnonzero(cells == _D_F1) if outcomes[i] != "f5"]
    pool += [int(i) for i in np.flatnonzero(cells == _D_F5)]
    if hit1_needed > len(pool):
        raise InfeasibleSpecError(
            f"s_fail1={spec.s_fail1} needs a correct secondary on {hit1_needed} "
            f"disagreeing failures, but only {len(pool)} records are eligible "
            "(a disagreeing top-1-only failure whose fusion must fail at top-5 "
            "cannot also keep a correct secondary)"
        )
    for i in pool[:hit1_needed]:
        svar[i] = "hit1"
    miss_left = spec.s_fail5
    for i in range(cells.size):
        if svar[i] is None:
            if miss_left > 0:
                svar[i] = "miss"
                miss_left -= 1
            else:
                svar[i] = "hit5"
    return svar


def gen_class_log(spec: ClassLogSpec) -> ClassLog:
    """Build a log hitting the requested counts exactly (recounted before return).

    The seed shuffles cell membership and the class pool; counts never
    change with the seed.  Class indices rotate round-robin through a
    seeded permutation, 11 distinct roles per record.
    """
    _validate_class_spec(spec)
    rng = np.random.default_rng(spec.seed)
    sizes = _cell_sizes(spec)
    cells = np.repeat(np.arange(6), [sizes[c] for c in range(6)])
    rng.shuffle(cells)
    outcomes = _assign_outcomes(spec, cells)
    svars = _assign_secondary(spec, cells, outcomes)

    c = spec.num_classes
    perm = rng.permutation(c)
    role_matrix = perm[(_ROLES * np.arange(spec.n)[:, None] + np.arange(_ROLES)) % c]

    want_probs = spec.wants_probs()
    p_probs = np.zeros((spec.n, c)) if want_probs else None
    s_probs = np.zeros((spec.n, c)) if want_probs else None

    records: list[ClassRecord] = []
    for i in range(spec.n):
        p_roles, p_mass = _P_SIDES[(int(cells[i]), outcomes[i])]
        s_roles, s_mass = _S_SIDES[(int(cells[i]), outcomes[i], svars[i])]
        roles = role_matrix[i]
        p_list = tuple(int(roles[r]) for r in p_roles)
        s_list = tuple(int(roles[r]) for r in s_roles)
        if want_probs:
            for probs, mass in ((p_probs, p_mass), (s_probs, s_mass)):
                named = sum(m for _, m in mass)
                probs[i, :] = (1.0 - named) / (c - len(mass))
                for r, m in mass:
                    probs[i, roles[r]] = m
        records.append(
            ClassRecord(
                item_id=f"item-{i:06d}",
                truth=int(roles[_T]),
                primary_topk=p_list,
                secondary_topk=s_list,
                primary_probs=p_probs[i] if want_probs else None,
                secondary_probs=s_probs[i] if want_probs else None,
            )
        )
    log = ClassLog(num_classes=c, records=records)
    _recount(spec, log)
    return log


def _recount(spec: ClassLogSpec, log: ClassLog) -> None:
    """Assert the finished log reproduces every requested count."""
    truth = log.truth_array
    p_topk = log.primary_topk_array
    s_topk = log.secondary_topk_array
    disagree = p_topk[:, 0] != s_topk[:, 0]
    fail1 = p_topk[:, 0] != truth
    fail5 = ~(p_topk == truth[:, None]).any(axis=1)
    got = {
        "fail1": int(fail1.sum()),
        "fail5": int(fail5.sum()),
        "disagree": int(disagree.sum()),
        "tp1": int((disagree & fail1).sum()),
        "tp5": int((disagree & fail5).sum()),
    }
    want = {k: getattr(spec, k) for k in got}
    if got != want:
        raise RuntimeError(f"generator invariant violated: wanted {want}, produced {got}")
    if spec.s_fail1 is not None:
        s1 = int((s_topk[:, 0] != truth).sum())
        s5 = int((~(s_topk == truth[:, None]).any(axis=1)).sum())
        if (s1, s5) != (spec.s_fail1, spec.s_fail5):
            raise RuntimeError(
                f"generator invariant violated: secondary failures ({s1}, {s5}) "
                f"!= requested ({spec.s_fail1}, {spec.s_fail5})"
            )
    if spec.ens_fail1 is not None:
        from .arbitration import ensemble_error

        for k, target in ((1, spec.ens_fail1), (5, spec.ens_fail5)):
            got_err = ensemble_error(log, k)
            want_err = 100.0 * target / spec.n
            if got_err != want_err:
                raise RuntimeError(
                    f"generator invariant violated: ensemble top-{k} error "
                    f"{got_err!r} != requested {want_err!r}"
                )


def reference_class_spec(
    num_classes: int = 1000, with_probs: bool = False, seed: int = 7
) -> ClassLogSpec:
    """The documented 50000-item benchmark log.

    Primary errors 25.2/8.0 percent, secondary 29.0/10.1, 23.29 percent
    disagreements, and detector overlaps giving review precision
    62.3/22.2 and recall 57.6/64.6; with probs, fusion errors are
    24.4/7.8 percent.
    """
    return ClassLogSpec(
        n=50_000,
        fail1=12_600,
        fail5=4_000,
        disagree=11_645,
        tp1=7_258,
        tp5=2_584,
        seed=seed,
        num_classes=num_classes,
        with_probs=with_probs,
        s_fail1=14_500,
        s_fail5=5_050,
        ens_fail1=12_200 if with_probs else None,
        ens_fail5=3_900 if with_probs else None,
    )


# ---------------------------------------------------------------------------
# Steering scenarios


@dataclass(frozen=True)
class SteeringScenarioSpec:
    """An aligned steering pair with divergence ramps before each event.

    baseline_noise_deg is the sigma of the per-frame angle difference
    in agreeing phases; divergence_deg is the half-separation held
    during the ramp_len_frames before each event (primary at +d,
    secondary at -d).  noise_ar1 in [0, 1) optionally smooths the noise
    with a first-order filter while keeping its marginal sigma.
    """

    duration_frames: int
    fps: int = 30
    event_frames: tuple[int, ...] = ()
    baseline_noise_deg: float = 0.0
    divergence_deg: float = 0.0
    ramp_len_frames: int = 0
    seed: int = 0
    noise_ar1: float = 0.0


_BASE_AMPLITUDE_DEG = 2.0
_BASE_PERIOD_SECONDS = 20.0


def _validate_steering_spec(spec: SteeringScenarioSpec) -> None:
    if spec.duration_frames < 1:
        raise InfeasibleSpecError(f"duration_frames must be >= 1, got {spec.duration_frames}")
    if spec.fps < 1:
        raise InfeasibleSpecError(f"fps must be >= 1, got {spec.fps}")
    if not np.isfinite(spec.baseline_noise_deg) or spec.baseline_noise_deg < 0:
        raise InfeasibleSpecError(f"baseline_noise_deg must be >= 0, got {spec.baseline_noise_deg}")
    if not np.isfinite(spec.divergence_deg) or spec.divergence_deg < 0:
        raise InfeasibleSpecError(f"divergence_deg must be >= 0, got {spec.divergence_deg}")
    if spec.ramp_len_frames < 0:
        raise InfeasibleSpecError(f"ramp_len_frames must be >= 0, got {spec.ramp_len_frames}")
    if not 0.0 <= spec.noise_ar1 < 1.0:
        raise InfeasibleSpecError(f"noise_ar1 must be in [0, 1), got {spec.noise_ar1}")
    prev = None
    for e in spec.event_frames:
        if not 0 <= e < spec.duration_frames:
            raise InfeasibleSpecError(
                f"event frame {e} outside [0, {spec.duration_frames})"
            )
        if prev is not None and e <= prev:
            raise InfeasibleSpecError("event_frames must be strictly increasing")
        prev = e


def gen_steering_scenario(
    spec: SteeringScenarioSpec,
) -> tuple[SteeringTrace, list[DisengagementEvent]]:
    """Simulate the paired trace and its disengagement events.

    Ramps cover [event - ramp_len, event - 1]; a ramp that would reach
    past the previous event is truncated with a warning.  Both streams
    share a slow sine base, so only their difference carries signal.
    """
    _validate_steering_spec(spec)
    rng = np.random.default_rng(spec.seed)
    n = spec.duration_frames
    t = np.arange(n)
    base = _BASE_AMPLITUDE_DEG * np.sin(
        2.0 * np.pi * t / (_BASE_PERIOD_SECONDS * spec.fps)
    )
    noise = np.zeros(n)
    if spec.baseline_noise_deg > 0:
        noise = rng.normal(0.0, spec.baseline_noise_deg, size=n)
        if spec.noise_ar1 > 0.0:
            phi = spec.noise_ar1
            smoothed = np.empty(n)
            smoothed[0] = noise[0]
            scale = np.sqrt(1.0 - phi * phi)
            for i in range(1, n):
                smoothed[i] = phi * smoothed[i - 1] + scale * noise[i]
            noise = smoothed
    diverging = np.zeros(n, dtype=bool)
    prev_event = None
    for e in spec.event_frames:
        start = max(0, e - spec.ramp_len_frames)
        if prev_event is not None and start <= prev_event:
            warnings.warn(
                f"ramp before event {e} overlaps previous event {prev_event}; truncated",
                stacklevel=2,
            )
            start = prev_event + 1
        diverging[start:e] = True
        prev_event = e
    offset = spec.divergence_deg * diverging
    trace = SteeringTrace(
        frame_index=t,
        primary_angle_deg=base + offset,
        secondary_angle_deg=base - offset + noise,
        fps=spec.fps,
    )
    events = [DisengagementEvent(int(e), "human") for e in spec.event_frames]
    return trace, events


def reference_steering_spec(seed: int = 20) -> SteeringScenarioSpec:
    """The documented benchmark scenario: 20 ramped events in ~55 minutes."""
    return SteeringScenarioSpec(
        duration_frames=100_000,
        fps=30,
        event_frames=tuple(2_500 + 5_000 * i for i in range(20)),
        baseline_noise_deg=0.5,
        divergence_deg=4.0,
        ramp_len_frames=150,
        seed=seed,
    )
