#!/usr/bin/env python3
"""The map seen through a modulus: residue-class transition graphs,
their degree structure, and their strongly connected pieces."""

from collatzkit import (
    BranchLabel,
    build_graph,
    edge_witness,
    out_degree,
    strongly_connected_components,
    to_dot,
    transition_targets,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    banner("Where each residue class can go (mod 10)")
    for r in range(10):
        targets = sorted(transition_targets(10, r))
        shown = ", ".join(f"{t}[{lab.value}]" for t, lab in targets)
        print(f"  {r} -> {shown}")

    banner("Out-degrees split by parity for an even modulus")
    graph = build_graph(10)
    degrees = [out_degree(graph, r) for r in range(10)]
    print("degrees 0..9:", degrees)
    print("even classes fan out, odd classes are forced")

    banner("Every edge is realized by an actual integer")
    for edge in graph.edges[:5]:
        x = edge_witness(graph, edge)
        print(f"  {x} is {edge.src} mod 10 and maps into {edge.dst} mod 10"
              f" via {edge.label.value}")

    banner("One strongly connected component")
    sccs = strongly_connected_components(graph)
    print("components of the mod-10 graph:", sccs)

    banner("Odd moduli lose the parity split")
    five = build_graph(5)
    print("mod 5 degrees:", [out_degree(five, r) for r in range(5)])
    halve_only = [t for t, lab in transition_targets(5, 3)
                  if lab is BranchLabel.HALVE]
    print("halving from class 3 mod 5 lands in:", halve_only)

    banner("DOT output, ready for graphviz")
    print(to_dot(build_graph(4)))


if __name__ == "__main__":
    main()
