"""Exactly confirm scanner hits with the skein engine and group them.

For each sampled hit word, builds the closure diagram, finds the
component-orientation subset whose engine Jones evaluation equals the
hit's target scalar, and renders that orientation's full invariant.
Hits tagged as mirror targets are mirror-mapped back into the standard
frame before comparison.  Distinct invariant values are grouped and
scored against the two recorded target polynomials: exact equality,
equality of the r->q collapse (the two-variable specialization that
equal links must share), and per-monomial difference counts.

Usage: python3 confirm_links.py [sample-per-target] [hits-file]
"""

from __future__ import annotations

import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from braids import closure_pd
from fastskein import MOD, inv
from find_links import TARGET_L1, TARGET_L2, eval_generic, parse_generic
from find_links4 import A_FIXED, real_targets

from conwaylink.algebra import make_instance
from conwaylink.diagram import from_pd, reverse_component
from conwaylink.laurent import render
from conwaylink.skein import invariant

NOTES = Path("/root/notes")


def mirror_terms(terms: dict) -> dict:
    """Image of a generic value under the mirror substitution.

    p -> 1/p, q -> -q/p, r -> -r/p, monomial by monomial.
    """
    out: dict = {}
    for (a, b, c), coef in terms.items():
        key = (-a - b - c, b, c)
        val = coef if (b + c) % 2 == 0 else -coef
        out[key] = out.get(key, 0) + val
    return {k: v for k, v in out.items() if v}


def collapse_terms(terms: dict) -> dict:
    """Merge q and r exponents; equal links share this image."""
    out: dict = {}
    for (a, b, c), coef in terms.items():
        key = (a, b + c)
        out[key] = out.get(key, 0) + coef
    return {k: v for k, v in out.items() if v}


def diff_count(t1: dict, t2: dict) -> int:
    keys = set(t1) | set(t2)
    return sum(1 for k in keys if t1.get(k, 0) != t2.get(k, 0))


def main():
    sample_per_target = int(sys.argv[1]) if len(sys.argv) > 1 else 60
    hits_file = Path(sys.argv[2]) if len(sys.argv) > 2 else NOTES / "search_hits.jsonl"

    inst = make_instance("generic")
    poly1 = parse_generic(TARGET_L1)
    poly2 = parse_generic(TARGET_L2)
    t1 = dict(poly1.terms)
    t2 = dict(poly2.terms)
    t2_collapse = collapse_terms(t2)

    a = A_FIXED
    s = inv(a * a % MOD)
    t = s * s % MOD
    v0, z0 = t, (s - inv(s)) % MOD
    p_pt, q_pt = v0 * v0 % MOD, v0 * z0 % MOD
    scalar_of = {name: scal for scal, name in real_targets(a).items()}

    by_target: dict[str, list[dict]] = {}
    seen_words = set()
    with hits_file.open() as fh:
        for line in fh:
            hit = json.loads(line)
            key = tuple(hit["word"])
            if key in seen_words:
                continue
            seen_words.add(key)
            by_target.setdefault(hit["target"], []).append(hit)

    rng = random.Random(20260823)
    groups: dict[str, dict] = {}
    t0 = time.time()
    for target, hits in sorted(by_target.items()):
        if len(hits) <= sample_per_target:
            sample = hits
        else:
            sample = rng.sample(hits, sample_per_target)
        print(f"{target}: {len(hits)} distinct words, confirming {len(sample)}",
              flush=True)
        for n, hit in enumerate(sample):
            word = hit["word"]
            entries, loops = closure_pd(word, hit["k"], positive_over_slot=1)
            pd = [(quad, 1 if over == 1 else -1) for quad, over in entries]
            d = from_pd(pd, free_loops=loops)
            matched = None
            for revs in itertools.product([0, 1], repeat=3):
                dd = d
                for ci, flip in enumerate(revs):
                    if flip:
                        dd = reverse_component(dd, ci)
                val = invariant(dd, inst).value
                if eval_generic(val, p_pt, q_pt, q_pt) == scalar_of[target]:
                    matched = (revs, val)
                    break
            if matched is None:
                print(f"  WARNING no orientation matches for {word}", flush=True)
                continue
            revs, val = matched
            terms = {k: v for k, v in val.terms.items()}
            if target.endswith("-mirror"):
                terms = mirror_terms(terms)
            text = render(val)
            key = json.dumps(sorted(
                (list(k), str(Fraction(v))) for k, v in terms.items()))
            if key not in groups:
                print(f"  new group: eqL2={terms == t2} "
                      f"collapseL2={collapse_terms(terms) == t2_collapse} "
                      f"dL1={diff_count(terms, t1)} dL2={diff_count(terms, t2)} "
                      f"word={word}", flush=True)
            g = groups.setdefault(key, {
                "count": 0,
                "targets": {},
                "example_word": word,
                "example_revs": list(revs),
                "example_raw_text": text,
                "standard_frame_terms": sorted(
                    (list(k), str(Fraction(v))) for k, v in terms.items()),
                "equals_printed_L2": terms == t2,
                "collapse_equals_L2": collapse_terms(terms) == t2_collapse,
                "diff_vs_L1": diff_count(terms, t1),
                "diff_vs_L2": diff_count(terms, t2),
            })
            g["count"] += 1
            g["targets"][target] = g["targets"].get(target, 0) + 1
            if (n + 1) % 10 == 0:
                print(f"  {n + 1}/{len(sample)} confirmed, "
                      f"{len(groups)} groups, {time.time() - t0:.0f}s", flush=True)

    digest = sorted(groups.values(), key=lambda g: -g["count"])
    out_path = NOTES / "confirm_digest.json"
    out_path.write_text(json.dumps(digest, indent=1))
    print(f"\n{len(digest)} distinct invariant values -> {out_path}")
    for g in digest:
        print(f"count={g['count']} targets={g['targets']} "
              f"eqL2={g['equals_printed_L2']} "
              f"collapseL2={g['collapse_equals_L2']} "
              f"dL1={g['diff_vs_L1']} dL2={g['diff_vs_L2']} "
              f"word={g['example_word']}")


if __name__ == "__main__":
    main()
