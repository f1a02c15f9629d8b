#!/usr/bin/env python3
"""Evaluate every Lie-type row at a range of parameters and report the divisibility checks.

Rows that can be built at desk scale are also compared against the computed group.
"""
import argparse
import json

from codegree_lab.lietables import LieTableError, lemma12_divisibility_check, load_rows

RANKED = {"A": 3, "2A": 3, "B": 3, "C": 3, "D": 4, "2D": 4}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 8, 9, 27, 32, 243])
    ap.add_argument("--no-construct", action="store_true", help="skip building groups")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    reports = []
    for row in load_rows():
        family = row.family + (str(RANKED.get(row.family, row.rank_min)) if row.has_rank else "")
        for q in args.q:
            try:
                rep = lemma12_divisibility_check(family, q, construct=not args.no_construct)
            except LieTableError:
                continue
            if rep.row != row.id:
                continue
            reports.append(rep.to_json())
    if args.json:
        print(json.dumps(reports, indent=2, sort_keys=True))
        return
    for r in reports:
        extra = "" if r["spec"] is None else f"  vs {r['spec']}: alpha in degrees {r['alpha_in_degrees']}"
        notes = f"  [{'; '.join(r['notes'])}]" if r["notes"] else ""
        print(f"{r['row']:<7} q={r['q']:<4} alpha {r['alpha']:<12} beta {r['beta']:<12} "
              f"{'pass' if r['passed'] else 'FAIL'}{extra}{notes}")


if __name__ == "__main__":
    main()
