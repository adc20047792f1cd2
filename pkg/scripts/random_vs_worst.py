"""Monte Carlo contrast: average gains from integration in uniformly random
markets versus the worst-case family, for each (kappa, n)."""
import argparse
import statistics

from integration_losses import Side, gains_report, stable_scheme, trivial_lower_bound, worst_case_value
from integration_losses.generators import random_instance


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kappa", type=int, nargs="+", default=[2, 4])
    parser.add_argument("--n", type=int, nargs="+", default=[2, 4, 8])
    parser.add_argument("--seeds", type=int, default=200)
    parser.add_argument("--side", choices=["men", "women"], default="men")
    args = parser.parse_args()
    side = Side.MAN if args.side == "men" else Side.WOMAN

    print("kappa  n   mean_Gamma_bar  min_Gamma_bar  frac_negative  worst_case  trivial_bound")
    for kappa in args.kappa:
        for n in args.n:
            values, negative = [], 0
            for seed in range(args.seeds):
                inst = random_instance(kappa, n, seed)
                report = gains_report(inst, stable_scheme(inst, side))
                values.append(report.Gamma_bar)
                negative += report.Gamma_bar < 0
            worst = float(worst_case_value(kappa, n)) if kappa % 2 == 0 and n % 2 == 0 else float("nan")
            print(
                f"{kappa:<6} {n:<3} {float(statistics.mean(values)):+.5f}        "
                f"{float(min(values)):+.5f}       {negative / args.seeds:.3f}          "
                f"{worst:+.5f}    {float(trivial_lower_bound(kappa, n)):+.5f}"
            )


if __name__ == "__main__":
    main()
