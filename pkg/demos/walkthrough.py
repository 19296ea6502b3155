"""Tour of the main objects on a single block of width three.

Builds the packet members of (rho, A=2, B=0, +) for both signs, shows the
recursive and explicit forms, one Jacquet strip, and the stable combination.
"""

from arthur_packets.groth import render
from arthur_packets.jacquet import jac_strip
from arthur_packets.packets import complementary_count, pi_explicit, pi_recursive
from arthur_packets.params import MINUS, PLUS, TRIVIAL, Block, HalfInt, Parameter, signed
from arthur_packets.stability import stable_sum


def show(title, text):
    print(f"{title}:\n  {text}")


def main():
    blk = Block(TRIVIAL, HalfInt(2), HalfInt(0), PLUS)
    for sign in (PLUS, MINUS):
        p, e = signed([(blk, sign)])
        print(f"=== block {blk}, sign {'+' if sign == PLUS else '-'} ===")
        show("recursion with pending Jacquet prefixes", render(pi_recursive(p, e, mode="prefix")))
        show("evaluated", render(pi_recursive(p, e, mode="evaluate")))
        members = pi_explicit(p, e)
        print("explicit constituents:")
        for irr in members:
            print("  ", irr)
        print("complementary count:", complementary_count(blk.top, blk.bottom, sign))
        show("crossing strip (drops to the block (1,1))", render(jac_strip(members.as_groth(), blk, "cross")))
        print()

    s = stable_sum(Parameter((blk,)), mode="evaluate")
    show("stable combination over both signs", render(s.value))


if __name__ == "__main__":
    main()
