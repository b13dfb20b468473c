"""Temperley-Lieb bracket fingerprints for braid closures.

Evaluates the Kauffman bracket of a braid closure in GF(2^61-1) at a
fixed random bracket variable.  The bracket ignores orientation, so one
evaluation screens all component-orientation classes at once: the Jones
value of each class differs only by a writhe correction computable from
the crossing signs and linking numbers.
"""

from __future__ import annotations

from fastskein import MOD, inv


def _noncrossing_matchings(points: list[int]) -> list[list[tuple[int, int]]]:
    if not points:
        return [[]]
    out = []
    first = points[0]
    for idx in range(1, len(points), 2):
        partner = points[idx]
        inside = points[1:idx]
        outside = points[idx + 1:]
        for a in _noncrossing_matchings(inside):
            for b in _noncrossing_matchings(outside):
                out.append([(first, partner)] + a + b)
    return out


class TLAlgebra:
    """Temperley-Lieb algebra on k strands over GF(MOD).

    Basis elements are noncrossing matchings of 2k circle points: top row
    left to right is 0..k-1, bottom row left to right is 2k-1 down to k,
    so the point below top point i is 2k-1-i.
    """

    def __init__(self, k: int, delta: int):
        self.k = k
        self.delta = delta % MOD
        self.basis = [
            tuple(sorted(tuple(sorted(pair)) for pair in m))
            for m in _noncrossing_matchings(list(range(2 * k)))
        ]
        self.index = {b: i for i, b in enumerate(self.basis)}
        bot = lambda j: 2 * k - 1 - j
        self.bot = bot
        self.identity = self.index[
            tuple(sorted(tuple(sorted((i, bot(i)))) for i in range(k)))
        ]
        self.e_gens = []
        for i in range(k - 1):
            pairs = [(i, i + 1), (bot(i), bot(i + 1))]
            for j in range(k):
                if j not in (i, i + 1):
                    pairs.append((j, bot(j)))
            self.e_gens.append(self.index[tuple(sorted(tuple(sorted(p)) for p in pairs))])
        # right multiplication tables by each e_i: basis -> (basis, loops)
        self.right_e = [
            [self._glue(b, self.basis[e]) for b in self.basis]
            for e in self.e_gens
        ]
        self.closure_loops = [self._closed_loops(b) for b in self.basis]

    def _glue(self, top, bottom):
        """top stacked above bottom: top's bottom row meets bottom's top."""
        k = self.k
        bot = self.bot
        parent = list(range(4 * k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        # top occupies points 0..2k-1, bottom shifted by 2k
        for a, b in top:
            union(a, b)
        for a, b in bottom:
            union(a + 2 * k, b + 2 * k)
        # glue top's bottom row to bottom's top row, column by column
        for j in range(k):
            union(bot(j), 2 * k + j)
        # surviving boundary: top's top row and bottom's bottom row;
        # result point labels reuse the standard layout
        relabel = {}
        for j in range(k):
            relabel[j] = j
            relabel[bot(j) + 2 * k] = bot(j)
        boundary = list(relabel)
        reps = {}
        pairs = []
        for pt in boundary:
            root = find(pt)
            if root in reps:
                other = reps.pop(root)
                pairs.append(tuple(sorted((relabel[other], relabel[pt]))))
            else:
                reps[root] = pt
        touched = {find(pt) for pt in boundary}
        middle_roots = {find(pt) for pt in range(k, 3 * k)}
        loops = len(middle_roots - touched)
        return self.index[tuple(sorted(pairs))], loops

    def _closed_loops(self, b) -> int:
        k = self.k
        parent = list(range(2 * k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for a, c in b:
            union(a, c)
        for i in range(k):
            union(i, self.bot(i))
        return len({find(x) for x in range(2 * k)})


class BracketEvaluator:
    """Bracket of braid closures at one random bracket variable A."""

    def __init__(self, k: int, a: int):
        self.k = k
        self.a = a % MOD
        self.a_inv = inv(self.a)
        delta = (-(self.a * self.a) - self.a_inv * self.a_inv) % MOD
        self.delta = delta
        self.tl = TLAlgebra(k, delta)
        self.delta_pows = [1]
        for _ in range(2 * k + 2):
            self.delta_pows.append(self.delta_pows[-1] * delta % MOD)

    def bracket(self, word: list[int]) -> int:
        """Kauffman bracket of the closure, one loop already divided out."""
        vec = {self.tl.identity: 1}
        for letter in word:
            g = abs(letter) - 1
            table = self.tl.right_e[g]
            if letter > 0:
                straight, turn = self.a, self.a_inv
            else:
                straight, turn = self.a_inv, self.a
            out: dict[int, int] = {}
            for b, c in vec.items():
                out[b] = (out.get(b, 0) + c * straight) % MOD
                nb, loops = table[b]
                out[nb] = (
                    out.get(nb, 0) + c * turn * self.delta_pows[loops]
                ) % MOD
            vec = out
        total = 0
        for b, c in vec.items():
            total = (total + c * self.delta_pows[self.tl.closure_loops[b]]) % MOD
        return total * inv(self.delta) % MOD
