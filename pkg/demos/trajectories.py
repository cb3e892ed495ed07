#!/usr/bin/env python3
"""A tour of single trajectories: stopping times, excursions, and the
three ways a bounded classification can come out."""

from collatzkit import (
    MapVariant,
    classify_trajectory,
    col,
    iterate_k,
    total_stopping_time,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    banner("One step at a time")
    x = 27
    print("col(27) =", col(27))
    print("five steps from 27:", [iterate_k(x, k) for k in range(6)])

    banner("Total stopping times")
    for x in (1, 2, 6, 7, 27):
        print(f"  {x:>3} reaches 1 after {total_stopping_time(x)} steps")

    banner("The famous 27")
    record = classify_trajectory(27, record_values=True)
    print("outcome:", record.outcome)
    print("max excursion:", record.max_excursion)
    print("first ten values:", record.values[:10])
    print("last five values:", record.values[-5:])

    banner("Classification is bounded")
    starved = classify_trajectory(27, step_budget=50)
    print("27 with a 50-step budget:", starved.outcome)
    capped = classify_trajectory(27, value_bound=100)
    print("27 with values capped at 100:", capped.outcome)

    banner("Starting on the loop itself")
    on_loop = classify_trajectory(1)
    print("1 under the standard map:", on_loop.outcome)
    fixed = classify_trajectory(1, MapVariant.STAR)
    print("1 under the loop-breaking variant:", fixed.outcome)


if __name__ == "__main__":
    main()
