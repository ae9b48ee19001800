"""Run the growth-bound suite and print a per-kind summary table.

The CSV from `nevkit verify` is the machine-readable artifact; this script is
the human-readable companion: it groups the cases by integrator composition,
reports the worst ratio per group, and lists any failures in full.
"""
import argparse
import math
import sys
import time

from nevkit.bounds import generate_cases, growth_bound_verify, reference_case, verify_suite

KINDS = {
    0: "pieces",
    1: "pieces+cantor",
    2: "pieces+jumps",
    3: "cantor+jumps",
    4: "pieces+cantor+jumps",
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=200, help="number of random cases")
    ap.add_argument("--seed", type=int, default=1, help="case stream seed")
    ap.add_argument("--tol", type=float, default=1e-6, help="verdict tolerance")
    ap.add_argument("--workers", type=int, default=None,
                    help="thread count (default: NEVKIT_THREADS or 1)")
    args = ap.parse_args(argv)

    start = time.perf_counter()
    reports = verify_suite(generate_cases(args.cases, seed=args.seed, tol=args.tol),
                           workers=args.workers)
    elapsed = time.perf_counter() - start

    by_kind = {k: [] for k in KINDS}
    for rep in reports:
        by_kind[rep.case_id % 5].append(rep)

    print(f"{'kind':<22}{'cases':>6}{'pass':>6}{'rhs=inf':>9}{'worst ratio':>13}")
    for k, label in KINDS.items():
        group = by_kind[k]
        if not group:
            continue
        # jump components push rhs to +inf; the ratio only means anything on
        # the finite cases
        ratios = [r.ratio for r in group if math.isfinite(r.rhs)]
        worst = f"{max(ratios):.4f}" if ratios else "-"
        unbounded = sum(1 for r in group if math.isinf(r.rhs))
        passed = sum(1 for r in group if r.passed)
        print(f"{label:<22}{len(group):>6}{passed:>6}{unbounded:>9}{worst:>13}")

    fixture = growth_bound_verify(reference_case(tol=args.tol))
    print(f"\nclosed-form fixture: lhs={fixture.lhs:.6f} rhs={fixture.rhs:.6f} "
          f"ratio={fixture.ratio:.6f} [{fixture.verdict}]")

    failures = [r for r in reports if not r.passed]
    for rep in failures:
        print(f"FAIL case {rep.case_id}: lhs={rep.lhs!r} rhs={rep.rhs!r}",
              file=sys.stderr)
    total_pass = sum(1 for r in reports if r.passed)
    print(f"\n{total_pass}/{len(reports)} cases hold in {elapsed:.1f}s")
    return 0 if not failures else 1


if __name__ == "__main__":
    raise SystemExit(main())
