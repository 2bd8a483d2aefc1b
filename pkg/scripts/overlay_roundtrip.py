#!/usr/bin/env python3
"""Encode a period-3 letter sequence onto the grid action and read it back.

Runs the two patch transformers against each other: the sequence is
overlaid onto a ball via the action (psi), then recovered by walking the
arrows from the identity (phi).

Example:
    python3 scripts/overlay_roundtrip.py --radius 4 --shift 1
"""

from __future__ import annotations

import argparse

from tlaction import (
    Fuel,
    ball,
    engine_for,
    pattern_patch_to_json,
    period3_segment,
    phi_map,
    psi_map,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", default="Z2")
    ap.add_argument("--radius", type=int, default=3, help="ball radius to encode")
    ap.add_argument("--shift", type=int, default=0, help="phase of the period-3 point")
    ap.add_argument("--range", type=int, default=5000, help="sequence covers [-range, range]")
    ap.add_argument("--json", action="store_true", help="also print the patch JSON")
    ap.add_argument("--fuel", type=int, default=200_000_000)
    args = ap.parse_args()

    engine = engine_for(args.group, Fuel(args.fuel))
    graph = engine.graph
    z = period3_segment(-args.range, args.range, shift=args.shift)
    region = ball(graph, 0, args.radius)
    patch = psi_map(engine, z, region)
    print(f"encoded {len(patch.domain)} vertices (ball radius {args.radius}) from the sequence")

    back = phi_map(graph, patch)
    print(f"recovered positions {back.lo}..{back.hi} by walking arrows from the identity:")
    row = "  ".join(f"{n}:{back.at(n)}" for n in back.domain)
    print(f"  {row}")
    mismatches = [n for n in back.domain if back.at(n) != z.at(n)]
    print(f"mismatches against the input sequence: {len(mismatches)}")

    if args.json:
        print(pattern_patch_to_json(graph, patch))


if __name__ == "__main__":
    main()
