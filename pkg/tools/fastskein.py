"""Field-valued skein fingerprints for bulk link screening.

Evaluates the same first-bad-crossing recursion as the exact engine,
but with carrier values in GF(2^61-1) at a fixed random point, so a
candidate diagram can be screened in milliseconds.  Two links with
different fingerprints are definitely different; equal fingerprints are
confirmed with the exact engine afterwards.

States are Gauss closures: components as tuples of (crossing id, role)
passages plus a sign per crossing.  Empty components are free loops.
"""

from __future__ import annotations

MOD = (1 << 61) - 1


def inv(x: int) -> int:
    return pow(x, MOD - 2, MOD)


class FieldEvaluator:
    """Memoized skein recursion at one (p, q, r) field point."""

    def __init__(self, p: int, q: int, r: int, max_components: int = 40):
        self.p = p % MOD
        self.q = q % MOD
        self.r = r % MOD
        p_inv = inv(self.p)
        # positive self: p*switched + q*smoothed, etc.
        self.coef = {
            (1, True): (self.p, self.q),
            (1, False): (self.p, self.r),
            (-1, True): (p_inv, (-p_inv * self.q) % MOD),
            (-1, False): (p_inv, (-p_inv * self.r) % MOD),
        }
        step = ((1 - self.p) * inv(self.q)) % MOD
        self.units = [1]
        for _ in range(max_components):
            self.units.append(self.units[-1] * step % MOD)
        self.memo: dict = {}

    # -- state plumbing ------------------------------------------------

    @staticmethod
    def canonical(components, signs):
        free = sum(1 for c in components if not c)
        live = [c for c in components if c]
        rotated = []
        for comp in live:
            best = min(
                tuple(comp[i:] + comp[:i]) for i in range(len(comp))
            )
            rotated.append(best)
        rotated.sort()
        relabel: dict[int, int] = {}
        out = []
        for comp in rotated:
            for cid, _ in comp:
                if cid not in relabel:
                    relabel[cid] = len(relabel)
        for comp in rotated:
            out.append(
                tuple((relabel[cid], role) for cid, role in comp)
            )
        sign_vec = [0] * len(relabel)
        for cid, dense in relabel.items():
            sign_vec[dense] = signs[cid]
        return tuple(out), tuple(sign_vec), free

    @staticmethod
    def _first_bad(components):
        seen = set()
        for ci, comp in enumerate(components):
            for pi, (cid, role) in enumerate(comp):
                if cid in seen:
                    continue
                if role == "u":
                    return ci, pi, cid
                seen.add(cid)
        return None

    @staticmethod
    def _positions(components, cid):
        hits = []
        for ci, comp in enumerate(components):
            for pi, (c, _) in enumerate(comp):
                if c == cid:
                    hits.append((ci, pi))
        return hits

    @staticmethod
    def _switch(components, signs, cid):
        comps = [
            tuple(
                (c, ("o" if role == "u" else "u")) if c == cid else (c, role)
                for c, role in comp
            )
            for comp in components
        ]
        new_signs = dict(signs)
        new_signs[cid] = -new_signs[cid]
        return comps, new_signs

    @classmethod
    def _smooth(cls, components, signs, cid):
        hits = cls._positions(components, cid)
        (ci, a), (ck, b) = hits
        comps = list(components)
        new_signs = dict(signs)
        del new_signs[cid]
        if ci == ck:
            comp = comps[ci]
            if a > b:
                a, b = b, a
            old = comp[:a] + comp[b + 1:]
            new = comp[a + 1:b]
            comps[ci] = old
            comps.append(new)
        else:
            if (ci, a) > (ck, b):
                (ci, a), (ck, b) = (ck, b), (ci, a)
            left, right = comps[ci], comps[ck]
            comps[ci] = left[:a] + right[b + 1:] + right[:b] + left[a + 1:]
            del comps[ck]
        return comps, new_signs

    # -- evaluation ----------------------------------------------------

    def evaluate(self, components, signs) -> int:
        key = self.canonical(components, signs)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        comps, sign_vec, free = key
        dense_signs = dict(enumerate(sign_vec))
        value = self._eval_canonical(comps, dense_signs, free)
        self.memo[key] = value
        return value

    def _eval_canonical(self, components, signs, free) -> int:
        found = self._first_bad(components)
        if found is None:
            return self.units[len(components) + free - 1]
        ci, pi, cid = found
        comp = components[ci]
        is_self = sum(1 for c, _ in comp if c == cid) == 2
        a, b = self.coef[(signs[cid], is_self)]
        sw_comps, sw_signs = self._switch(components, signs, cid)
        sm_comps, sm_signs = self._smooth(components, signs, cid)
        sw_comps = [c for c in sw_comps] + [()] * free
        sm_comps = [c for c in sm_comps] + [()] * free
        left = self.evaluate(sw_comps, sw_signs)
        right = self.evaluate(sm_comps, sm_signs)
        return (a * left + b * right) % MOD

    def poly_value(self, poly) -> int:
        """Evaluate an exact generic-carrier polynomial at this point."""
        total = 0
        p, q, r = self.p, self.q, self.r
        for (ep, eq, er), c in poly.terms.items():
            term = c % MOD
            for base, e in ((p, ep), (q, eq), (r, er)):
                term = term * (pow(base, e, MOD) if e >= 0 else pow(inv(base), -e, MOD)) % MOD
            total = (total + term) % MOD
        return total
