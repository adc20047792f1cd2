"""Print the gains from integration for the two-community example, the
worst-case family over a grid, and the cloned instances."""
import argparse

from integration_losses import gains_report, is_unique_stable, stable_scheme, worst_case_value
from integration_losses.generators import proposition1_instance, replicate, worst_case_instance


def row(name, inst):
    report = gains_report(inst, stable_scheme(inst))
    predicted = worst_case_value(inst.kappa, inst.n)
    print(
        f"{name:<22} kappa={inst.kappa:<3} n={inst.n:<3} Gamma_bar={str(report.Gamma_bar):<9} "
        f"({float(report.Gamma_bar):+.4f}) predicted={str(predicted):<9} "
        f"gainers={report.gainers:<4} losers={report.losers:<4} unique={is_unique_stable(inst)}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-size", type=int, default=64, help="largest kappa*n in the grid")
    args = parser.parse_args()

    row("prop1", proposition1_instance())
    inst = proposition1_instance()
    for depth in range(1, 4):
        inst = replicate(inst)
        row(f"replicate^{depth}(prop1)", inst)
    for kappa in (2, 4, 8, 16):
        for n in (2, 4, 8, 16):
            if kappa * n <= args.max_size:
                row(f"worst({kappa},{n})", worst_case_instance(kappa, n))


if __name__ == "__main__":
    main()
