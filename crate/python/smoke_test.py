#!/usr/bin/env python3
"""Smoke test for the apklie Python extension module.

Builds are produced by `cargo build -p apklie-py` (or --release); this script
locates the resulting shared library, stages it under an importable name and
exercises the main types and operations.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path


def stage_module() -> None:
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "libapklie.so",
        root / "target" / "debug" / "libapklie.so",
        root / "target" / "release" / "libapklie.dylib",
        root / "target" / "debug" / "libapklie.dylib",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit(
            "libapklie not found; run `cargo build -p apklie-py` (or --release) first"
        )
    newest = max(built, key=lambda p: p.stat().st_mtime)
    suffix = ".so" if newest.suffix == ".so" else ".so"  # python loads .so on linux
    stage = Path(tempfile.mkdtemp(prefix="apklie-py-"))
    shutil.copy2(newest, stage / f"apklie{suffix}")
    sys.path.insert(0, str(stage))


stage_module()

import apklie  # noqa: E402


def check(condition: bool, message: str) -> None:
    if not condition:
        sys.exit(f"FAIL: {message}")
    print(f"ok: {message}")


names = apklie.catalog_names()
check(len(names) == 6, "catalog lists six entries")
check("two-step-5d" in names and "n7" in names, "expected entries present")

# every catalog entry passes kind-aware validation
for name in names:
    violations = apklie.validate_json(apklie.catalog_json(name))
    check(violations == [], f"catalog entry {name} validates")

# the 5-dimensional 2-step example
p5 = apklie.ApkPair.catalog("two-step-5d")
check(p5.dim() == 5, "two-step-5d has complex dimension 5")
check(p5.signature() == (3, 2), "two-step-5d has signature (3, 2)")
flags = p5.classify()
check(flags["nilpotent"] and flags["two_step"], "two-step-5d is nilpotent 2-step")
check(not flags["flat"] and flags["ricci_flat"], "two-step-5d: Ricci-flat, not flat")

# reduction strips one hyperbolic layer
reduced, data_json = p5.reduce()
check(reduced.dim() == 3, "reduction drops the complex dimension by 2")
rebuilt = reduced.extend(data_json)
check(rebuilt.dim() == 5, "re-extension restores the dimension")
check(rebuilt.signature() == (3, 2), "re-extension restores the signature")
base, steps = p5.tower()
check(steps == 1 and base.dim() == 3, "the tower of two-step-5d has one step")

# flat non-nilpotent example
p4 = apklie.ApkPair.catalog("flat-4d")
check(p4.is_flat() and not p4.is_nilpotent(), "flat-4d is flat, not nilpotent")
check(p4.is_novikov(), "flat-4d has an associative left-symmetric product")

# Einstein pair
ec = apklie.ApkPair.catalog("einstein-c")
check(ec.einstein_factor() == "1", "einstein-c has factor 1")
check(ec.ricci() == [["-4", "0"], ["0", "-4"]], "einstein-c Ricci is -4·id")
check(ec.detect_aff() is not None, "einstein-c is of aff type")

# symmetric algebra round trip through complexification
kt = apklie.SymmetricAlgebra.from_json(apklie.catalog_json("kodaira-thurston"))
pair = kt.complexify()
check(pair.dim() == 2 and pair.is_nilpotent(), "complexified KT pair is nilpotent")
lie = json.loads(kt.standard_lie_json())
check(lie["kind"] == "lie_pk" and lie["dim"] == 4, "standard structure emits lie_pk")

# n7 enters through the inverse construction
n7 = apklie.ApkPair.from_json(apklie.catalog_json("n7"))
check(n7.dim() == 3, "n7 corresponds to a 3-dimensional pair")
check(not n7.is_novikov(), "n7's left-symmetric product is not associative")
cert = apklie.cocycle_certificate(apklie.catalog_json("remark-2-10"))
check(cert == ["0", "0", "0", "0", "0", "1"], "remark-2-10 certificate is E6")

# deterministic generation and JSON round trips
a = apklie.generate_json(42, 4, "tower")
b = apklie.generate_json(42, 4, "tower")
check(a == b, "generation is deterministic in the seed")
round_trip = apklie.ApkPair.from_json(p5.to_json())
check(round_trip.to_json() == p5.to_json(), "to_json/from_json round trips")

# direct sums add signatures
sum_pair = p5.direct_sum(p4)
check(sum_pair.dim() == 9, "direct sum adds dimensions")
check(sum_pair.signature() == (5, 4), "direct sum adds signatures")

print("smoke test passed")
