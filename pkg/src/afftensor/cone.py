"""The saturated tensor cone: inequalities, the ceiling function, membership.

The cone of triples (lam1, lam2, mu) is cut out, at fixed projection
(lam1, lam2, mubar), by b <= ceiling(x) where the ceiling is the infimum of
countably many affine-linear functionals indexed by triples of minimal coset
representatives whose deformed product coefficient is 1.  The infimum is made
effective: a quadratic lower bound in the translation norm, assembled from
exact constants, yields a certified length cap beyond which no index can
compete, and the enumeration below the cap is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine import AffineRootData, AffineWeight, pair
from .exactmath import Vec, frac, sqrt_lb, sqrt_ub, vec
from .schubert import StructureTable, structure_table
from .weyl import AffineWeylElt

SQRT2_UB = sqrt_ub(2)


class TableTooSmallError(Exception):
    def __init__(self, needed: int, available: int):
        super().__init__(f"table too small: need max_len >= {needed}, have {available}")
        self.needed = needed
        self.available = available


@dataclass(frozen=True)
class InequalityIndex:
    """(u1, u2, v) in (W^{P_node})^3 with deformed coefficient 1, together
    with the translation/finite decompositions entering the functional."""

    u1: AffineWeylElt
    u2: AffineWeylElt
    v: AffineWeylElt
    node: int
    n: int
    shift: int
    h1: tuple
    h2: tuple
    h: tuple

    def label(self, ops) -> str:
        return "({}; {}; {}; i={})".format(
            ops.word_str(self.u1) or "e", ops.word_str(self.u2) or "e",
            ops.word_str(self.v) or "e", self.node)


@dataclass(frozen=True)
class CeilingResult:
    value: Fraction
    tight: tuple[InequalityIndex, ...]
    cap: int
    evaluated: int


@dataclass(frozen=True)
class MembershipReport:
    verdict: str                      # "member_interior" | "member_boundary" | "not_member"
    reason: str
    ceiling: Fraction | None
    b: Fraction | None
    tight: tuple[InequalityIndex, ...]
    violated: tuple[InequalityIndex, ...]
    cap: int


def _finite_part(w: AffineWeylElt) -> AffineWeylElt:
    n = len(w.h)
    return AffineWeylElt((0,) * n, w.mat, w.inv_mat)


class ConeEngine:
    """Inequality enumeration and certified ceiling evaluation over one
    structure-constant table."""

    def __init__(self, table: StructureTable):
        self.table = table
        self.ops = table.ops
        self.data: AffineRootData = table.data
        self._indices: dict[int, list[InequalityIndex]] = {}

    # -- index enumeration ---------------------------------------------------

    def _decorate(self, entry) -> InequalityIndex:
        ops = self.ops
        out = []
        for w in (entry.u1, entry.u2, entry.v):
            if entry.node == 0:
                out.append(w.h)
            else:
                fin_inv = AffineWeylElt((0,) * len(w.h), w.inv_mat, w.mat)
                out.append(tuple(ops.act_dot_coweight(fin_inv, w.h)))
        return InequalityIndex(entry.u1, entry.u2, entry.v, entry.node,
                               entry.n, entry.shift, out[0], out[1], out[2])

    def indices(self, max_len: int) -> list[InequalityIndex]:
        """All inequality indices with l(v) <= max_len (deformed coefficient 1)."""
        hit = self._indices.get(max_len)
        if hit is None:
            if max_len > self.table.max_len:
                raise TableTooSmallError(max_len, self.table.max_len)
            hit = [self._decorate(entry)
                   for entry in self.table.deformed_indices(max_len)
                   if entry.n == 1]
            self._indices[max_len] = hit
        return hit

    # -- the indexed affine-linear functionals ----------------------------------

    def validate_point(self, lam1: AffineWeight, lam2: AffineWeight,
                       mubar: AffineWeight) -> None:
        data = self.data
        if lam1.level <= 0 or lam2.level <= 0:
            raise ValueError("both tensor factors must have positive level")
        if lam1.delta_coeff != 0 or lam2.delta_coeff != 0 or mubar.delta_coeff != 0:
            raise ValueError("projected point must have zero delta coefficients")
        if mubar.level != lam1.level + lam2.level:
            raise ValueError("central charge mismatch")
        for lam in (lam1, lam2, mubar):
            if not data.is_dominant(lam):
                raise ValueError("projected point must be dominant")

    def ceiling_index(self, idx: InequalityIndex, lam1, lam2, mubar) -> Fraction:
        """Value of the functional: the largest b such that the indexed
        inequality holds at (lam1, lam2, mubar + b delta)."""
        fin = self.data.finite
        l1, l2 = lam1.level, lam2.level
        h1, h2, h = vec(idx.h1), vec(idx.h2), vec(idx.h)
        n2 = fin.coweight_norm2
        if idx.node == 0:
            out = (fin.pair(h1, lam1.dot_part) + fin.pair(h2, lam2.dot_part)
                   - fin.pair(h, mubar.dot_part))
            out += l1 / 2 * (n2(h) - n2(h1)) + l2 / 2 * (n2(h) - n2(h2))
            return out
        i = idx.node - 1
        D = frac(fin.marks[i])
        q = vec(tuple(c / D for c in fin.fundamental_coweights[i]))
        pieces = []
        for w, hw in ((idx.u1, h1), (idx.u2, h2), (idx.v, h)):
            fin_part = _finite_part(w)
            moved = self.ops.act_dot_coweight(
                fin_part, tuple(a + b for a, b in zip(hw, q)))
            pieces.append(vec(moved))
        out = (fin.pair(pieces[0], lam1.dot_part)
               + fin.pair(pieces[1], lam2.dot_part)
               - fin.pair(pieces[2], mubar.dot_part))
        fcw = vec(fin.fundamental_coweights[i])
        out += l1 / 2 * (n2(h) - n2(h1)
                         + 2 * fin.coweight_form(fcw, tuple(a - b for a, b in zip(h, h1))) / D)
        out += l2 / 2 * (n2(h) - n2(h2)
                         + 2 * fin.coweight_form(fcw, tuple(a - b for a, b in zip(h, h2))) / D)
        return out

    def ceiling_index_direct(self, idx: InequalityIndex, lam1, lam2, mubar) -> Fraction:
        """Same value from the coweight-action pairing route."""
        ops = self.ops
        tau = self.data.fundamental_coweights[idx.node]
        a_i = frac(1) if idx.node == 0 else frac(self.data.finite.marks[idx.node - 1])
        total = (pair(ops.act_on_coweight(idx.u1, tau), lam1)
                 + pair(ops.act_on_coweight(idx.u2, tau), lam2)
                 - pair(ops.act_on_coweight(idx.v, tau), mubar))
        return total / a_i

    # -- the certified cap ---------------------------------------------------------

    def length_vs_norm_constants(self) -> tuple[Fraction, int]:
        """(K^2, N): N is the number of finite positive roots; K the largest
        constant with K|h| <= sum over positive roots of <h, a>, attained on
        a fundamental-coweight ray of the dominant chamber."""
        fin = self.data.finite
        N = len(fin.positive_roots)
        two_rho = vec([2] * fin.rank)
        best: Fraction | None = None
        for i in range(fin.rank):
            fcw = vec(fin.fundamental_coweights[i])
            num = fin.pair(fcw, two_rho) ** 2
            den = fin.coweight_norm2(fcw)
            val = num / den
            if best is None or val < best:
                best = val
        assert best is not None
        return best, N

    def _lower_bound_coeffs(self, lam1, lam2, mubar, node: int):
        """(quad, B, A) with every functional at `node` bounded below by
        quad*H^2 - B*H - A in terms of the translation norm H of v."""
        fin = self.data.finite
        hv = frac(self.data.dual_coxeter)
        ell = min(lam1.level, lam2.level)
        K2, N = self.length_vs_norm_constants()
        k_lb = sqrt_lb(K2)
        nl1 = sqrt_ub(fin.weight_norm2(lam1.dot_part))
        nl2 = sqrt_ub(fin.weight_norm2(lam2.dot_part))
        nmu = sqrt_ub(fin.weight_norm2(mubar.dot_part))
        nrho = sqrt_ub(fin.weight_norm2(fin.rho()))
        # |h_1|, |h_2| <= M_A + M_B * H
        m_a = frac(2 * N) / k_lb
        m_b = frac(N) / k_lb * SQRT2_UB

        def times_m(c):  # c * (M_A + M_B H) as (const, slope)
            return (c * m_a, c * m_b)

        if node == 0:
            c1, s1 = times_m(nl1 + nl2 + 2 * ell / hv * nrho)
            B = s1 + nmu + ell / hv * nrho
            A = c1
            return ell / 2, B, A
        i = node - 1
        D = frac(fin.marks[i])
        wnorm = sqrt_ub(fin.coweight_norm2(vec(fin.fundamental_coweights[i])))
        C = wnorm / D
        # quadratic bracket: H^2 - T1 - T2 - T3, each T affine in H
        # T1 = (2 nrho/(hv D)) (4 wnorm + D (H + 2M))
        t1c, t1s = times_m(2 * nrho / (hv * D) * D * 2)
        t1c += 2 * nrho / (hv * D) * 4 * wnorm
        t1s += 2 * nrho / (hv * D) * D
        # T2 = (2 wnorm / D)(H + 2M); T3 = (2 wnorm / D)(2H + 2M)
        t2c, t2s = times_m(2 * wnorm / D * 2)
        t2s += 2 * wnorm / D
        t3c, t3s = times_m(2 * wnorm / D * 2)
        t3s += 2 * wnorm / D * 2
        B = ell / 2 * (t1s + t2s + t3s) + nmu
        A = ell / 2 * (t1c + t2c + t3c) + nmu * C
        mc, ms = times_m(nl1 + nl2)
        A += mc + C * (nl1 + nl2)
        B += ms
        return ell / 2, B, A

    def exclusion_length(self, lam1, lam2, mubar, threshold: Fraction,
                         hard_limit: int = 2000) -> int:
        """Smallest L such that every index with l(v) >= L has functional
        value > threshold; enumeration below L is then exhaustive for the
        infimum down to `threshold`."""
        _, N = self.length_vs_norm_constants()
        caps = []
        for node in range(self.data.rank + 1):
            quad, B, A = self._lower_bound_coeffs(lam1, lam2, mubar, node)
            L = None
            for cand in range(N + 1, hard_limit):
                # certified H lower bound at length cand
                h_lb = frac(cand - N) / (SQRT2_UB * N)
                if 2 * quad * h_lb < B:  # need h_lb past the parabola vertex
                    continue
                val = quad * h_lb * h_lb - B * h_lb - A
                if val > threshold:
                    L = cand
                    break
            if L is None:
                raise RuntimeError("no exclusion length below the hard limit")
            caps.append(L)
        return max(caps)

    # -- the ceiling -------------------------------------------------------------

    def ceiling(self, lam1, lam2, mubar, list_threshold: Fraction | None = None) -> CeilingResult:
        """Certified infimum of the indexed functionals at a point of the
        projected cone; `list_threshold` additionally forces the cap high
        enough that every index with value <= list_threshold is enumerated."""
        self.validate_point(lam1, lam2, mubar)
        base = self.indices(min(4, self.table.max_len))
        assert base, "identity indices must exist"
        current = min(self.ceiling_index(i, lam1, lam2, mubar) for i in base)
        threshold = current if list_threshold is None else max(current, list_threshold)
        cap = self.exclusion_length(lam1, lam2, mubar, threshold)
        if cap - 1 > self.table.max_len:
            raise TableTooSmallError(cap - 1, self.table.max_len)
        pool = self.indices(cap - 1)
        values = [(self.ceiling_index(idx, lam1, lam2, mubar), idx) for idx in pool]
        best = min(v for v, _ in values)
        assert best <= current
        tight = tuple(idx for v, idx in values if v == best)
        return CeilingResult(best, tight, cap, len(values))

    # -- membership ------------------------------------------------------------------

    def is_member(self, lam1: AffineWeight, lam2: AffineWeight,
                  mu: AffineWeight) -> MembershipReport:
        """Membership of a rational triple in the closure of the tensor cone
        (positive levels required)."""
        data = self.data
        if lam1.level <= 0 or lam2.level <= 0:
            raise ValueError(
                "membership requires positive levels on both tensor factors")
        for lam in (lam1, lam2, mu):
            if not data.is_dominant(lam):
                return MembershipReport("not_member", "dominance fails",
                                        None, None, (), (), 0)
        if mu.level != lam1.level + lam2.level:
            return MembershipReport("not_member", "central charge mismatch",
                                    None, None, (), (), 0)
        # normalize the delta coefficients of the factors to zero
        b1, b2 = lam1.delta_coeff, lam2.delta_coeff
        lam1 = lam1 - b1 * data.delta
        lam2 = lam2 - b2 * data.delta
        mu = mu - (b1 + b2) * data.delta
        b = mu.delta_coeff
        mubar = mu - b * data.delta
        res = self.ceiling(lam1, lam2, mubar, list_threshold=b)
        pool = self.indices(res.cap - 1)
        violated = tuple(idx for idx in pool
                         if self.ceiling_index(idx, lam1, lam2, mubar) < b)
        if b < res.value:
            verdict, reason = "member_interior", "all inequalities strict"
        elif b == res.value:
            verdict, reason = "member_boundary", "tight inequality attained"
        else:
            verdict, reason = "not_member", "inequality violated"
        return MembershipReport(verdict, reason, res.value, b,
                                res.tight, violated, res.cap)


def cone_engine(label: str, max_len: int) -> ConeEngine:
    return ConeEngine(structure_table(label, max_len))


# -- saturation ------------------------------------------------------------------


def saturation_check(label: str, lam1: AffineWeight, lam2: AffineWeight,
                     mu: AffineWeight, d: int = 2, variant: str = "stretch",
                     depth: int = 6) -> dict:
    """Verify the predicted saturation stretch on a triple: for
    variant='stretch' the factor is d*mark_lcm when the Levi saturation
    constant is 1 and mark_lcm*k_s otherwise; variant='delta' tests the
    k_g*k_s stretch with a -d*delta shift (d >= 2)."""
    from .affine import build_affine
    from .repmult import tensor_multiplicity

    if d < 2:
        raise ValueError("the stretch parameter must be at least 2")
    data = build_affine(label)
    for lam in (lam1, lam2, mu):
        if not (lam.is_integral() and data.is_dominant(lam)):
            raise ValueError("saturation checks need integral dominant weights")
    if not data.in_root_lattice(mu - lam1 - lam2):
        raise ValueError("mu - lam1 - lam2 must lie in the root lattice")
    k_g = data.mark_lcm()
    k_s = data.levi_saturation_factor()
    if variant == "stretch":
        factor = d * k_g if k_s == 1 else k_g * k_s
        target = factor * mu
    elif variant == "delta":
        factor = k_g * k_s
        target = factor * mu - d * data.delta
    else:
        raise ValueError(f"unknown variant {variant!r}")
    res = tensor_multiplicity(label, factor * lam1, factor * lam2, target, depth)
    return {
        "variant": variant,
        "factor": factor,
        "d": d,
        "mark_lcm": k_g,
        "levi_saturation_factor": k_s,
        "multiplicity": res.value,
        "status": res.status,
        "confirmed": res.status == "ok" and (res.value or 0) > 0,
        "depth": depth,
    }
