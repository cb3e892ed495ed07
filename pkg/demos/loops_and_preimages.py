#!/usr/bin/env python3
"""Running the map backwards and around in circles: preimage sets,
validated closed loops, and loop powers."""

from collatzkit import (
    ClosedLoop,
    LoopError,
    MapVariant,
    col,
    find_cycle,
    loop_power,
    preimage,
    validate_loop,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    banner("Preimages")
    for x in (1, 4, 10, 16):
        pre = sorted(preimage(x))
        print(f"  preimage({x}) = {pre}")
        for y in pre:
            assert col(y) == x

    banner("Only one residue class gets a second parent")
    twins = [x for x in range(1, 60) if len(preimage(x)) == 2]
    print("values below 60 with two preimages:", twins)
    print("each is 4 mod 6:", all(x % 6 == 4 for x in twins))

    banner("The canonical loop")
    loop = find_cycle(1)
    print("cycle from 1:", loop)
    print("period:", loop.period, " minimum:", loop.minimum)

    banner("Validation catches broken loops")
    try:
        validate_loop((1, 4, 3, 1))
    except LoopError as err:
        print("rejected (1, 4, 3, 1):", err)

    banner("Loops compose")
    tripled = loop_power(loop, 3)
    print("third power:", tripled)
    print("still a valid loop of period", tripled.period)

    banner("The variant that pins 1 in place")
    fixed = ClosedLoop((1, 1), MapVariant.STAR)
    print("fixed point at 1:", fixed)
    print("found by search:", find_cycle(1, MapVariant.STAR))


if __name__ == "__main__":
    main()
