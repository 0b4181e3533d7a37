"""Schubert structure constants for affine flag varieties.

Classes are encoded by their restrictions to torus-fixed points (subword sums
over reduced words); products are recovered by a triangular solve against the
restriction table.  Constants for G/P coincide with those of G/B for minimal
coset representatives, so everything is computed once on G/B.

Two parallel value rings are kept: honest integer polynomials in the simple
roots (the contractual representation, used at small length bounds and for
invariant checks) and their evaluations at a fixed positive integer point
(used for large tables; the triangular solve is valid pointwise and the
top-degree entries are the same integers).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .affine import AffineWeight, pair
from .polynomials import (
    Poly,
    poly_const,
    poly_divide_linear,
    poly_eval,
    poly_is_homogeneous,
    poly_linear,
    poly_mul,
    poly_sub,
)
from .weyl import AffineWeylElt, WeylGroupOps, weyl_ops


class InternalConsistencyError(AssertionError):
    """A triangular-solve division failed; the table is inconsistent."""


@dataclass(frozen=True)
class DeformedEntry:
    u1: AffineWeylElt
    u2: AffineWeylElt
    v: AffineWeylElt
    node: int
    n: int
    shift: int

    @property
    def deformed(self) -> int:
        return self.n if self.shift == 0 else 0


class StructureTable:
    """Structure constants n_{u1 u2}^v on G/B up to a length bound."""

    def __init__(self, label: str, max_len: int):
        self.label = label
        self.max_len = max_len
        self.ops: WeylGroupOps = weyl_ops(label)
        self.data = self.ops.data
        nvars = self.data.rank + 1
        self._theta_point = tuple(range(1, nvars + 1))
        self._ball = self.ops.ball(max_len)
        self._by_key = {w.key(): w for w in self._ball}
        self._leq_cache: dict = {}
        self._loc_scalar: dict = {}
        self._loc_poly: dict = {}
        self._pair_cache: dict = {}
        self._pair_cache_poly: dict = {}

    # -- ordering and Bruhat helpers ------------------------------------------

    def elements(self, max_len: int | None = None):
        top = self.max_len if max_len is None else max_len
        return [w for w in self._ball if self.ops.length(w) <= top]

    def leq(self, u: AffineWeylElt, v: AffineWeylElt) -> bool:
        k = (u.key(), v.key())
        hit = self._leq_cache.get(k)
        if hit is None:
            hit = self.ops.bruhat_leq(u, v)
            self._leq_cache[k] = hit
        return hit

    # -- localization ------------------------------------------------------------

    def _root_value(self, root: AffineWeight) -> int:
        coords = self.data.root_coords(root)
        val = sum(int(c) * t for c, t in zip(coords, self._theta_point))
        assert val > 0
        return val

    def _root_poly(self, root: AffineWeight) -> Poly:
        return poly_linear([int(c) for c in self.data.root_coords(root)])

    def _localization_row(self, v: AffineWeylElt, scalar: bool):
        """All restrictions xi^u(v) for u <= v, by one pass over a reduced
        word of v: extend reduced subword products letter by letter."""
        ops = self.ops
        word = ops.reduced_word(v)
        nvars = self.data.rank + 1
        one = 1 if scalar else poly_const(1, nvars)
        table = {ops.identity.key(): (ops.identity, one)}
        prefix = ops.identity
        for i in word:
            beta = ops.act_on_root(prefix, ops.simple_root(i))
            bval = self._root_value(beta) if scalar else self._root_poly(beta)
            updates = []
            for key, (u, val) in table.items():
                u2 = u * ops.generators[i]
                if ops.length(u2) == ops.length(u) + 1:
                    term = val * bval if scalar else poly_mul(val, bval)
                    updates.append((u2, term))
            for u2, term in updates:
                k2 = u2.key()
                if k2 in table:
                    old = table[k2][1]
                    merged = old + term if scalar else _poly_add(old, term)
                    table[k2] = (u2, merged)
                else:
                    table[k2] = (u2, term)
            prefix = prefix * ops.generators[i]
        return {k: val for k, (u, val) in table.items()}

    def localization_scalar(self, v: AffineWeylElt) -> dict:
        k = v.key()
        row = self._loc_scalar.get(k)
        if row is None:
            row = self._localization_row(v, scalar=True)
            self._loc_scalar[k] = row
        return row

    def billey_restriction(self, w: AffineWeylElt, v: AffineWeylElt) -> Poly:
        """Restriction xi^w(v) as an integer polynomial in alpha_0..alpha_l."""
        k = v.key()
        row = self._loc_poly.get(k)
        if row is None:
            row = self._localization_row(v, scalar=False)
            self._loc_poly[k] = row
        out = row.get(w.key(), {})
        assert poly_is_homogeneous(out, self.ops.length(w))
        return out

    def restriction_factors(self, v: AffineWeylElt) -> list[Poly]:
        """xi^v(v) as a list of positive-real-root linear factors."""
        ops = self.ops
        word = ops.reduced_word(v)
        out = []
        prefix = ops.identity
        for i in word:
            beta = ops.act_on_root(prefix, ops.simple_root(i))
            out.append(self._root_poly(beta))
            prefix = prefix * ops.generators[i]
        return out

    # -- products ------------------------------------------------------------------

    def _solve_window(self, u1: AffineWeylElt, u2: AffineWeylElt):
        l1, l2 = self.ops.length(u1), self.ops.length(u2)
        total = l1 + l2
        if total > self.max_len:
            raise ValueError(f"table too small: need max_len >= {total}")
        zs = [z for z in self._ball
              if max(l1, l2) <= self.ops.length(z) <= total
              and self.leq(u1, z) and self.leq(u2, z)]
        zs.sort(key=self.ops.canonical_key)
        return zs, total

    def product(self, u1: AffineWeylElt, u2: AffineWeylElt) -> dict:
        """Expansion of the cup product of the classes of u1 and u2 in top
        degree: dict v.key -> n, for l(v) = l(u1) + l(u2)."""
        a, b = sorted((u1, u2), key=self.ops.canonical_key)
        pk = (a.key(), b.key())
        hit = self._pair_cache.get(pk)
        if hit is not None:
            return hit
        zs, total = self._solve_window(a, b)
        p: dict = {}
        top: dict = {}
        for z in zs:
            row = self.localization_scalar(z)
            val = Fraction(row.get(a.key(), 0)) * row.get(b.key(), 0)
            for ykey, py in p.items():
                if py:
                    xi = row.get(ykey, 0)
                    if xi:
                        val -= py * xi
            val /= row[z.key()]
            p[z.key()] = val
            if self.ops.length(z) == total:
                if val.denominator != 1:
                    raise InternalConsistencyError(
                        f"non-integer structure constant for {pk} at {z.key()}")
                if val:
                    top[z.key()] = int(val)
        self._pair_cache[pk] = top
        return top

    def product_poly(self, u1: AffineWeylElt, u2: AffineWeylElt) -> dict:
        """Same expansion computed in the polynomial ring; every division is
        by the linear factors of xi^z(z) and must be exact."""
        a, b = sorted((u1, u2), key=self.ops.canonical_key)
        pk = (a.key(), b.key())
        hit = self._pair_cache_poly.get(pk)
        if hit is not None:
            return hit
        zs, total = self._solve_window(a, b)
        nvars = self.data.rank + 1
        p: dict = {}
        top: dict = {}
        for z in zs:
            val = poly_mul(self.billey_restriction(a, z), self.billey_restriction(b, z))
            for ykey, py in p.items():
                if py:
                    xi = self._loc_poly[z.key()].get(ykey)
                    if xi:
                        val = poly_sub(val, poly_mul(py, xi))
            try:
                for factor in self.restriction_factors(z):
                    val = poly_divide_linear(val, factor)
            except ArithmeticError as exc:
                raise InternalConsistencyError(str(exc)) from exc
            p[z.key()] = val
            if self.ops.length(z) == total:
                if val and set(val) != {(0,) * nvars}:
                    raise InternalConsistencyError("top-degree entry not constant")
                n = val.get((0,) * nvars, 0)
                if n:
                    top[z.key()] = n
        self._pair_cache_poly[pk] = top
        return top

    def n(self, u1: AffineWeylElt, u2: AffineWeylElt, v: AffineWeylElt) -> int:
        """Structure constant; 0 unless l(v) = l(u1) + l(u2)."""
        if self.ops.length(v) != self.ops.length(u1) + self.ops.length(u2):
            return 0
        return self.product(u1, u2).get(v.key(), 0)

    def element(self, key) -> AffineWeylElt:
        return self._by_key[key]

    # -- Chevalley oracle -------------------------------------------------------

    def chevalley_multiply(self, i: int, u: AffineWeylElt) -> dict:
        """Divisor product: class(s_i) * class(u) = sum over positive real
        roots beta with l(u s_beta) = l(u) + 1 of <fw_i, coroot(beta)> times
        the class of u s_beta.  Independent of the triangular solve."""
        ops = self.ops
        ui = u.inverse()
        out: dict = {}
        target = ops.length(u) + 1
        for x in ops.shell(target):
            t = ui * x
            root = ops.as_reflection_root(t)
            if root is None:
                continue
            coeff = pair(ops.affine_coroot(root), self.data.fundamental_weights[i])
            assert coeff.denominator == 1
            if coeff:
                out[x.key()] = out.get(x.key(), 0) + int(coeff)
        return {k: c for k, c in out.items() if c}

    # -- deformed product ----------------------------------------------------------

    def degree_shift(self, u1, u2, v, node: int) -> int:
        """<u1^{-1}rho + u2^{-1}rho - v^{-1}rho - rho, fcw_node>; integral."""
        ops = self.ops
        rho = self.data.rho
        acc = (ops.act_on_weight(u1.inverse(), rho) - rho) \
            + (ops.act_on_weight(u2.inverse(), rho) - rho) \
            - (ops.act_on_weight(v.inverse(), rho) - rho)
        val = pair(self.data.fundamental_coweights[node], acc)
        assert val.denominator == 1
        return int(val)

    def degree_shift_from_inversions(self, u1, u2, v, node: int) -> int:
        """Independent route: signed sums of inversion-set roots."""
        ops = self.ops
        tau = self.data.fundamental_coweights[node]

        def inv_sum(w):
            return sum((pair(tau, r) for r in ops.inversion_set(w)), Fraction(0))

        val = inv_sum(u1) + inv_sum(u2) - inv_sum(v)
        assert val.denominator == 1
        return int(val)

    def deformed_coefficient(self, u1, u2, v, node: int) -> int:
        """n if the degree shift vanishes, else 0; arguments must be minimal
        representatives for the maximal parabolic at `node` with
        l(v) = l(u1) + l(u2)."""
        ops = self.ops
        par = ops.maximal_parabolic(node)
        for w in (u1, u2, v):
            if not ops.is_min_rep(w, par):
                raise ValueError("arguments must be minimal coset representatives")
        if ops.length(v) != ops.length(u1) + ops.length(u2):
            raise ValueError("length precondition l(v) = l(u1) + l(u2) violated")
        if self.degree_shift(u1, u2, v, node) != 0:
            return 0
        return self.n(u1, u2, v)

    # -- multiplicativity ------------------------------------------------------------

    def check_multiplicativity(self, u1, u2, v, sub_parabolic, parabolic) -> dict:
        """Compare n_{u1 u2}^v with the product of the constants of the
        factorizations through the larger parabolic."""
        ops = self.ops
        l = ops.length
        if l(v) != l(u1) + l(u2):
            raise ValueError("length precondition l(v) = l(u1)+l(u2) violated")
        fac = [ops.coset_factorize(w, sub_parabolic, parabolic) for w in (u1, u2, v)]
        (b1, t1), (b2, t2), (bv, tv) = fac
        if l(bv) != l(b1) + l(b2):
            raise ValueError("length precondition on the quotient factors violated")
        n_full = self.n(u1, u2, v)
        n_bar = self.n(b1, b2, bv)
        n_til = self.n(t1, t2, tv)
        return {
            "n": n_full,
            "n_quotient": n_bar,
            "n_fiber": n_til,
            "holds": n_full == n_bar * n_til,
        }

    # -- central-torus weight profile ----------------------------------------------

    def levi_weight_profile(self, w: AffineWeylElt, node: int) -> Counter:
        """Multiset of alpha_node coefficients over the inversion set of w;
        the classes of the central-torus action on the attached root spaces."""
        ops = self.ops
        if not ops.is_min_rep(w, ops.maximal_parabolic(node)):
            raise ValueError("argument must be a minimal coset representative")
        out: Counter = Counter()
        for root in ops.inversion_set(w):
            coords = self.data.root_coords(root)
            c = coords[node]
            assert c.denominator == 1
            out[int(c)] += 1
        return out

    # -- enumeration over pairs --------------------------------------------------------

    def all_products(self, max_len: int | None = None):
        """Yield (u1, u2, v, n) over every pair with length sum <= bound."""
        top = self.max_len if max_len is None else max_len
        elts = self.elements(top)
        for u1 in elts:
            for u2 in elts:
                if self.ops.length(u1) + self.ops.length(u2) > top:
                    continue
                prod = self.product(u1, u2)
                for vkey, n in sorted(prod.items()):
                    yield u1, u2, self._by_key[vkey], n

    def deformed_indices(self, max_len: int | None = None) -> list[DeformedEntry]:
        """All (u1,u2,v,node) with vanishing shift and nonzero n, l(v) <= bound.

        Pairs are pre-filtered by the shift condition before any product is
        solved, so the expensive step only runs on surviving candidates.
        """
        top = self.max_len if max_len is None else max_len
        ops = self.ops
        out: list[DeformedEntry] = []
        reps = {i: [w for w in self.elements(top)
                    if ops.is_min_rep(w, ops.maximal_parabolic(i))]
                for i in range(self.data.rank + 1)}
        for i, rep in sorted(reps.items()):
            for u1 in rep:
                l1 = ops.length(u1)
                for u2 in rep:
                    l2 = ops.length(u2)
                    if l1 + l2 > top:
                        continue
                    candidates = [v for v in rep
                                  if ops.length(v) == l1 + l2
                                  and self.leq(u1, v) and self.leq(u2, v)
                                  and self.degree_shift(u1, u2, v, i) == 0]
                    if not candidates:
                        continue
                    prod = self.product(u1, u2)
                    for v in candidates:
                        n = prod.get(v.key(), 0)
                        if n:
                            out.append(DeformedEntry(u1, u2, v, i, n, 0))
        out.sort(key=lambda entry: (entry.node, self.ops.canonical_key(entry.v),
                                    self.ops.canonical_key(entry.u1)))
        return out


def _poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


@lru_cache(maxsize=None)
def structure_table(label: str, max_len: int) -> StructureTable:
    return StructureTable(label, max_len)
