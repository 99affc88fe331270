"""Print the 14x14 rule-102 CA of a small shrinking generator and write it as PBM.

    python3 demos/ca_table.py [out.pbm]
"""

import sys

from shrinkca.automaton import ca_evolve, grid_to_pbm, grid_to_text, shrunken_ca, triangle_recover
from shrinkca.shrinking import ShrinkingGeneratorConfig, shrunken_generate


def main(out=None):
    cfg = ShrinkingGeneratorConfig.from_text("1+x+x^2", "11", "1+x+x^3", "111")
    s = shrunken_generate(cfg, cfg.period)
    print("shrunken sequence:", s)
    # Z(1) = 5 for 1+x^2+x^3, the characteristic polynomial of the interleaved sequences
    grid = ca_evolve(shrunken_ca(s, 2, 3, 5), cfg.period)
    print(grid_to_text(grid), end="")
    rec = triangle_recover(s.bits[:6], 2, 3, 5)
    print("rebuilt from 6 bits:", rec.full)
    if out:
        with open(out, "w") as f:
            f.write(grid_to_pbm(grid))
        print("wrote", out)


if __name__ == "__main__":
    main(*sys.argv[1:2])
