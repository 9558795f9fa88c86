"""Weight-spread witnesses, and the batch front door.

A weight that is unbounded, or not bounded away from zero, admits injective
symbols with arbitrarily large ratio supremum. The constructors below build
the finite witnesses greedily (heaviest sources to lightest admissible
targets, patched into a permutation); across deeper truncations the achieved
ratios grow, while bounded-both-ways weights yield no witness at all.

The same experiment can be driven from a JSON document through the CLI:
``spectree analyze | spectrum | adversary | verify``.
"""

import json
import pathlib
import subprocess
import sys
import tempfile

from spectree import (OperatorSpec, adversary_unbounded, adversary_vanishing,
                      build_bary, constant_weight, geometric_weight, ratio_sup,
                      reciprocal_depth_weight)

print("== witnesses across a depth ladder on paths ==")
for label, weight_of, build in (
    ("weight 1/(1+depth), vanishing side", reciprocal_depth_weight, adversary_vanishing),
    ("weight 2^depth, unbounded side", lambda t: geometric_weight(t, 2.0), adversary_unbounded),
):
    sups = []
    for depth in (4, 16, 64):
        path = build_bary(1, depth)
        weight = weight_of(path)
        symbol = build(path, weight)
        sups.append(ratio_sup(OperatorSpec(path, weight, symbol, 2.0)).value)
    print(f"{label}: ratio_sup at depths 4/16/64 = {sups}")

path = build_bary(1, 16)
flat = constant_weight(path, 1.0)
print(f"constant weight: unbounded-side witness = {adversary_unbounded(path, flat)}, "
      f"vanishing-side witness = {adversary_vanishing(path, flat)}")

print("\n== the same analysis through the CLI ==")
workdir = pathlib.Path(tempfile.mkdtemp(prefix="spectree_demo_"))
spec_doc = {
    "schema_version": 1,
    "tree": {"generator": "bary", "branching": 2},
    "weight": {"family": "reciprocal_depth"},
    "map": {"builtin": "depth_square"},
    "p": 2,
    "depth_ladder": [4, 9, 16],
    "schatten_exponents": [1, 2],
}
spec_path = workdir / "experiment.json"
spec_path.write_text(json.dumps(spec_doc, indent=2), encoding="utf-8")
print(f"experiment document: {spec_path}")

for argv in (
    ["analyze", str(spec_path), "--out", str(workdir / "analyze.json")],
    ["spectrum", str(spec_path), "--csv", str(workdir / "spectrum.csv"),
     "--out", str(workdir / "spectrum.json")],
    ["adversary", str(spec_path), "--out", str(workdir / "adversary.json")],
):
    print(f"\n$ spectree {' '.join(argv[:2])} ...")
    proc = subprocess.run([sys.executable, "-m", "spectree", *argv],
                          capture_output=True, text=True, check=True)
    print(proc.stdout.rstrip())

print(f"\nreports live in {workdir}; rerunning reproduces them byte for byte.")
