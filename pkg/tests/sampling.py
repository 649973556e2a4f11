"""Random feasible log specs for property and acceptance tests."""

import numpy as np

from argus import ClassLogSpec


def random_feasible_spec(
    rng: np.random.Generator,
    with_probs: bool = False,
    with_secondary: bool = False,
    with_ensemble: bool = False,
    max_n: int = 400,
) -> ClassLogSpec:
    """Draw joint cell sizes directly, so feasibility is by construction.

    Retries until the log has at least one top-1 and one top-5 primary
    failure, keeping recall defined at both k.  Secondary and ensemble
    targets are drawn independently of each other; combining both flags
    can produce a draw whose secondary targets exceed the fused-outcome
    capacity, so callers doing that must be prepared to redraw.
    """
    while True:
        n = int(rng.integers(6, max_n + 1))
        a_ok, a_f1, a_f5, d_ok, d_f1, d_f5 = (
            int(x) for x in rng.multinomial(n, np.full(6, 1 / 6))
        )
        fail5 = a_f5 + d_f5
        fail1 = a_f1 + d_f1 + fail5
        if fail1 >= 1 and fail5 >= 1:
            break
    s_fail1 = s_fail5 = None
    if with_secondary:
        floor = a_f1 + a_f5 + d_ok
        s_fail1 = int(rng.integers(floor, floor + d_f1 + d_f5 + 1))
        s_fail5 = int(rng.integers(0, s_fail1 + 1))
    ens_fail1 = ens_fail5 = None
    if with_ensemble:
        forced = a_f1 + a_f5
        ens_fail1 = int(rng.integers(forced, forced + d_ok + d_f1 + d_f5 + 1))
        ens_fail5 = int(rng.integers(0, ens_fail1 + 1))
    return ClassLogSpec(
        n=n,
        fail1=fail1,
        fail5=fail5,
        disagree=d_ok + d_f1 + d_f5,
        tp1=d_f1 + d_f5,
        tp5=d_f5,
        seed=int(rng.integers(2**31)),
        num_classes=50 if (with_probs or with_ensemble) else 12,
        with_probs=with_probs,
        s_fail1=s_fail1,
        s_fail5=s_fail5,
        ens_fail1=ens_fail1,
        ens_fail5=ens_fail5,
    )
