"""Run the attack-result table rows that fit on a desk and print CSV.

    python3 demos/table7_rows.py [all-ones|impulse]
"""

import sys

from shrinkca.repro import repro_table7, table7_csv


def main(convention="all-ones"):
    results = repro_table7(range(1, 13), convention=convention, workers=None)
    sys.stdout.write(table7_csv(results))
    for i, r in enumerate(results, 1):
        print(f"# row {i}: {r.elapsed:.2f} s, true key among survivors: {r.true_key_found}", file=sys.stderr)


if __name__ == "__main__":
    main(*sys.argv[1:2])
