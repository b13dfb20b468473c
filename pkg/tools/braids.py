"""Braid-word helpers for the link search tooling.

A braid word on k strands is a list of nonzero ints; letter g > 0 is
the positive generator crossing positions g, g+1 and -g its inverse.
Closures are encoded either as Gauss states (components as passage
sequences, for the fast field evaluator) or as PD entry lists (for the
exact engine).
"""

from __future__ import annotations


def permutation(word: list[int], k: int) -> list[int]:
    perm = list(range(k))
    for letter in word:
        g = abs(letter) - 1
        perm[g], perm[g + 1] = perm[g + 1], perm[g]
    return perm


def cycles(perm: list[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


def closure_state(word: list[int], k: int):
    """Gauss state of the braid closure: (components, signs, comp_of).

    components: list of tuples (crossing id, role) with role "o"/"u";
    signs: dict id -> +1/-1.  Unused strands close into free loops and
    are returned as empty components.
    """
    strand_passages: dict[int, list] = {j: [] for j in range(k)}
    position = list(range(k))  # position -> strand id
    signs = {}
    for cid, letter in enumerate(word, start=1):
        g = abs(letter) - 1
        left, right = position[g], position[g + 1]
        sign = 1 if letter > 0 else -1
        signs[cid] = sign
        # positive letter: strand entering at the left passes over
        if sign > 0:
            strand_passages[left].append((cid, "o"))
            strand_passages[right].append((cid, "u"))
        else:
            strand_passages[left].append((cid, "u"))
            strand_passages[right].append((cid, "o"))
        position[g], position[g + 1] = right, left
    perm = [0] * k
    for pos, strand in enumerate(position):
        perm[strand] = pos
    components = []
    for cyc in cycles(perm):
        passages = []
        for strand in cyc:
            passages.extend(strand_passages[strand])
        components.append(tuple(passages))
    return components, signs


def linking_matrix(components, signs) -> dict:
    """Pairwise linking numbers lk(i, j) of a closure state."""
    owner = {}
    lk: dict[tuple[int, int], int] = {}
    for i, comp in enumerate(components):
        for cid, _ in comp:
            if cid in owner and owner[cid] != i:
                a, b = sorted((owner[cid], i))
                lk[a, b] = lk.get((a, b), 0) + signs[cid]
            else:
                owner[cid] = i
    return {key: val // 2 for key, val in lk.items()}


def total_linking_options(components, signs) -> set[int]:
    """Values of the summed linking number over orientation classes."""
    lk = linking_matrix(components, signs)
    n = len(components)
    out = set()
    for mask in range(1 << (n - 1)) if n else [0]:
        eps = [1] + [1 if mask >> i & 1 else -1 for i in range(n - 1)]
        out.add(sum(eps[a] * eps[b] * v for (a, b), v in lk.items()))
    return out


def reverse_state_component(components, signs, index):
    """Reverse one component: flip its passage order and mixed signs."""
    new_comps = list(components)
    new_comps[index] = tuple(reversed(components[index]))
    counts: dict[int, int] = {}
    for cid, _ in components[index]:
        counts[cid] = counts.get(cid, 0) + 1
    new_signs = dict(signs)
    for cid, c in counts.items():
        if c == 1:
            new_signs[cid] = -new_signs[cid]
    return new_comps, new_signs


def closure_pd(word: list[int], k: int, positive_over_slot: int = 3):
    """PD entries of the braid closure for the exact engine.

    Returns (entries, free_loops) where entries pair a quad with its
    over-in slot.  positive_over_slot picks which chirality a positive
    letter maps to; calibrate against a known closure once.
    """
    used = {abs(letter) - 1 for letter in word}
    used |= {g + 1 for g in used}
    free_loops = sum(1 for j in range(k) if j not in used)
    next_edge = 1
    bottom = {}
    current = {}
    for pos in range(k):
        if pos in used:
            bottom[pos] = next_edge
            current[pos] = next_edge
            next_edge += 1
    entries = []
    for letter in word:
        g = abs(letter) - 1
        a_in = current[g]
        b_in = current[g + 1]
        a_out = next_edge
        b_out = next_edge + 1
        next_edge += 2
        # after the crossing the left output continues rightwards
        current[g] = b_out
        current[g + 1] = a_out
        if letter > 0:
            over = positive_over_slot
        else:
            over = 4 - positive_over_slot
        if over == 3:
            # left strand over; under runs bottom-right to top-left
            quad = (b_in, a_out, b_out, a_in)
        else:
            # right strand over; under runs bottom-left to top-right
            quad = (a_in, b_in, a_out, b_out)
        entries.append((quad, over))
    closing = {current[pos]: bottom[pos] for pos in current if current[pos] != bottom[pos]}
    fixed = []
    for quad, over in entries:
        fixed.append((tuple(closing.get(e, e) for e in quad), over))
    return fixed, free_loops
