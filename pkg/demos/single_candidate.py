"""Trace the attack on two selector candidates and recover the data register.

    python3 demos/single_candidate.py
"""

from shrinkca.attack import attack_setup, recover_r2_state, subcrypto
from shrinkca.shrinking import ShrinkingGeneratorConfig, shrunken_generate

P1, P2 = "1+x+x^3+x^4+x^6", "1+x^3+x^7"
S = "1000010000"


def main():
    setup = attack_setup(P1, P2)
    print("setup:", setup.summary())
    bad = subcrypto(P1, setup.p, setup.delta, S, "111011", record_trace=True)
    for k, positions in enumerate(bad.trace):
        print(f"round {k}: {positions}")
    print("111011 stops:", not bad.stop, "at position", bad.contradiction_position)

    good = subcrypto(P1, setup.p, setup.delta, S, "100000")
    print("100000 survives with", len(good.matrix), "recovered bits")
    print(good.state_text)
    rec = recover_r2_state(good.matrix, setup.p, setup.delta, setup.L2, setup.L1)
    r2 = "".join(map(str, rec.state))
    print("R2 state:", r2, "filled", rec.fills[:4], "...")
    key = ShrinkingGeneratorConfig.from_text(P1, "100000", P2, r2)
    print("regenerated:", shrunken_generate(key, len(S)), "intercepted:", S)


if __name__ == "__main__":
    main()
