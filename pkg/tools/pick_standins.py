"""Pick one closure per target whose as-built orientation matches.

Walks the archived hit pool in file order and keeps the first word per
target that closes to a no-free-loop diagram whose engine Jones
evaluation at the identity orientation equals the target scalar.  The
chosen diagrams become the bundled stand-in records, so the catalog's
as-written orientation is the matching one and needs no reversal note
beyond the provenance line.

Usage: python3 pick_standins.py [hits-file]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from braids import closure_pd
from fastskein import MOD, inv
from find_links import TARGET_L1, TARGET_L2, eval_generic, parse_generic
from find_links4 import A_FIXED, real_targets
from confirm_links import collapse_terms, diff_count, mirror_terms

from conwaylink.algebra import make_instance
from conwaylink.diagram import from_pd
from conwaylink.laurent import render
from conwaylink.skein import invariant

NOTES = Path("/root/notes")


def pd_text(entries) -> str:
    parts = []
    for quad, over in entries:
        a, b, c, d = quad
        suffix = "+" if over == 1 else "-"
        parts.append(f"X({a},{b},{c},{d}){suffix}")
    return " ".join(parts)


def main():
    hits_file = Path(sys.argv[1]) if len(sys.argv) > 1 else NOTES / "search_hits_b4.jsonl"
    inst = make_instance("generic")
    t1 = dict(parse_generic(TARGET_L1).terms)
    t2 = dict(parse_generic(TARGET_L2).terms)

    a = A_FIXED
    s = inv(a * a % MOD)
    v0, z0 = s * s % MOD, (s - inv(s)) % MOD
    p_pt, q_pt = v0 * v0 % MOD, v0 * z0 % MOD
    scalar_of = {name: scal for scal, name in real_targets(a).items()}

    wanted = ("L2", "L2-mirror")
    chosen: dict[str, dict] = {}
    seen = set()
    with hits_file.open() as fh:
        for line in fh:
            hit = json.loads(line)
            target = hit["target"]
            if target not in wanted or target in chosen:
                continue
            word = tuple(hit["word"])
            if word in seen:
                continue
            seen.add(word)
            if {1, 2, 3} - {abs(l) for l in word}:
                continue
            entries, loops = closure_pd(list(word), hit["k"], positive_over_slot=1)
            if loops:
                continue
            d = from_pd([(q, 1 if o == 1 else -1) for q, o in entries],
                        free_loops=0)
            val = invariant(d, inst).value
            if eval_generic(val, p_pt, q_pt, q_pt) != scalar_of[target]:
                continue
            terms = dict(val.terms)
            std = mirror_terms(terms) if target.endswith("-mirror") else terms
            chosen[target] = {
                "word": list(word),
                "writhe": sum(1 if l > 0 else -1 for l in word),
                "pd": pd_text(entries),
                "value": render(val),
                "dL1": diff_count(std, t1),
                "dL2": diff_count(std, t2),
                "collapse_eq_L2": collapse_terms(std) == collapse_terms(t2),
            }
            if len(chosen) == len(wanted):
                break

    for target in wanted:
        info = chosen.get(target)
        print(f"=== {target} ===")
        if info is None:
            print("no identity-orientation realizer found")
            continue
        for k, v in info.items():
            print(f"{k}: {v}")
    out = NOTES / "standins.json"
    out.write_text(json.dumps(chosen, indent=1))
    print(f"-> {out}")


if __name__ == "__main__":
    main()
