"""Quick look at the root-n CLT for the toy urn (4,5;3,2).

Prints the predicted limit, the ensemble estimates at a few horizons,
and the KS verdict at the final horizon.  Small enough to run in well
under a minute; bump --paths/--horizon for tighter estimates.
"""

import argparse

from urnsa import EnsembleConfig, ReplacementMatrix, run_ensemble


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--paths", type=int, default=4000)
    ap.add_argument("--horizon", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=123456789)
    args = ap.parse_args()

    cfg = EnsembleConfig(
        matrix=ReplacementMatrix(4, 5, 3, 2),
        w0=1,
        b0=1,
        horizon=args.horizon,
        paths=args.paths,
        master_seed=args.seed,
    )
    res = run_ensemble(cfg)
    pred = res.prediction
    print(f"regime {pred.regime.value}, predicted variance "
          f"{pred.predicted_variance:.8f} (= 1/252)")
    print("\n  n        mean(scaled)   var(scaled)")
    for s in res.checkpoint_summaries[-8:]:
        print(f"  {s.n:>8}  {s.mean:>12.5f}  {s.variance:>12.6f}")
    ks = res.ks
    print(f"\nKS vs predicted normal: d={ks.d:.4f}, "
          f"5% threshold {ks.threshold_5:.4f} -> "
          f"{'pass' if ks.pass_at_5 else 'fail'}")


if __name__ == "__main__":
    main()
