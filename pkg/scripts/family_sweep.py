"""Verify the mod-3 congruence families over a genus range and summarise."""

import argparse
import json
import time
from collections import Counter

from hypercount.family import verify_range


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--g-min", type=int, default=3)
    ap.add_argument("--g-max", type=int, default=200)
    ap.add_argument("--json", action="store_true", help="print every record as JSON")
    args = ap.parse_args()

    t0 = time.perf_counter()
    recs = verify_range(args.g_min, args.g_max)
    elapsed = time.perf_counter() - t0
    if args.json:
        print(json.dumps([r.to_dict() for r in recs], indent=2))
        return
    failed = [r.genus for r in recs if not r.passed]
    variants = Counter(r.variant for r in recs)
    print(f"genus {args.g_min}..{args.g_max}: {len(recs) - len(failed)}/{len(recs)} passed in {elapsed:.2f}s")
    for name, n in sorted(variants.items()):
        print(f"  {name}: {n}")
    if failed:
        print(f"  failed: {failed}")


if __name__ == "__main__":
    main()
