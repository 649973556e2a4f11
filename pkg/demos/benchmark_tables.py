"""Reproduce the two headline result tables on the built-in benchmark log.

The generator engineers a 50000-item log with fixed failure and
disagreement counts, so the arbitration numbers below come out the same
on every machine.  Expected output: primary 25.2/8.0, supervised
pipeline 10.7/2.8 at a 23.3 percent review load, detector precision
62.3/22.2 and recall 57.6/64.6 for top-1/top-5.
"""

from argus.arbitration import (
    arguing_machines_error,
    detector_metrics,
    random_arbitrator_expectation,
    topk_error,
)
from argus.synthgen import gen_class_log, reference_class_spec


def main() -> None:
    log = gen_class_log(reference_class_spec())
    print(f"benchmark log: {len(log)} records")
    print()

    print("error rates (percent)          top-1    top-5   review")
    for stream in ("primary", "secondary"):
        e1 = topk_error(log, stream, 1)
        e5 = topk_error(log, stream, 5)
        print(f"  {stream + '_only':<28} {e1:6.2f}   {e5:6.2f}     0.00")
    budget = 0.233
    r1 = random_arbitrator_expectation(log, budget, 1)
    r5 = random_arbitrator_expectation(log, budget, 5)
    print(f"  {'random_arbitrator (E)':<28} {r1:6.2f}   {r5:6.2f}    {budget:5.2f}")
    a1, review = arguing_machines_error(log, 1)
    a5, _ = arguing_machines_error(log, 5)
    print(f"  {'disagreement + oracle':<28} {a1:6.2f}   {a5:6.2f}    {review:5.2f}")
    print()

    print("disagreement as a failure detector")
    for k in (1, 5):
        met = detector_metrics(log, k)
        print(
            f"  top-{k}: tp={met.tp} fp={met.fp} fn={met.fn}  "
            f"precision {met.precision_pct:.1f}%  recall {met.recall_pct:.1f}%"
        )
    print()
    print("routing every disagreement to a perfect reviewer removes the")
    print("caught failures, so the residual error is primary * (1 - recall).")


if __name__ == "__main__":
    main()
