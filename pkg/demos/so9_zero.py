"""A non-diagonal-discrete parameter of odd orthogonal type whose packet member vanishes.

Two blocks sit at 1/2 with opposite orientation, so the parameter is not
diagonal-discrete.  The member is computed from a shifted, diagonal-discrete
parameter and pulled back with Jacquet operators; every dominating choice
gives the same answer.
"""

from arthur_packets.general import (
    domination_independence_check,
    extra_dominations,
    minimal_dominating,
    pi_via,
    so9_example,
)
from arthur_packets.groth import render
from arthur_packets.packets import pi_standard
from arthur_packets.params import is_diagonal_discrete


def main():
    p, e = so9_example()
    print("parameter:", p)
    print("signs:    ", e)
    print("diagonal-discrete:", is_diagonal_discrete(p))

    d = minimal_dominating(p)
    print("\nminimal dominating parameter:", d.source, "shifts", d.shifts())
    print("its member before transfer:")
    print("  ", render(pi_standard(d.source, d.transport(e))))
    print("after transfer:", render(pi_via(d, e)))

    print("\nother dominating choices (extra shifts up to 2):")
    for other in extra_dominations(p, 2):
        same = domination_independence_check(p, e, d, other)
        print(f"  shifts {other.shifts()}: agrees with minimal = {same}")


if __name__ == "__main__":
    main()
