"""Truncated affine weight and tensor-product multiplicities.

Weight multiplicities come from the Casimir-based recursion truncated at a
delta-degree cutoff; tensor multiplicities from the alternating Weyl-group
sum, with a certified finite enumeration of the group.  "Undecided at this
depth" is a first-class outcome: the enumeration certificate is exact, and a
query only fails to decide when a needed weight multiplicity lies beyond the
truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .affine import AffineRootData, AffineWeight
from .exactmath import frac, sqrt_ub, vec
from .weyl import WeylGroupOps, weyl_ops


class UndecidedAtDepthError(Exception):
    """Raised when a caller requires a value the depth cannot certify."""


class FreudenthalError(AssertionError):
    """Vanishing denominator in the multiplicity recursion (must not occur)."""


def _is_dominant_integral(data: AffineRootData, lam: AffineWeight) -> bool:
    return lam.is_integral() and data.is_dominant(lam) and lam.level >= 0


def dominantize(ops: WeylGroupOps, lam: AffineWeight, max_steps: int = 100000) -> AffineWeight:
    """Dominant representative of the orbit of a positive-level weight."""
    data = ops.data
    n = data.rank + 1
    for _ in range(max_steps):
        i = next((i for i in range(n) if data.pair_simple_coroot(i, lam) < 0), None)
        if i is None:
            return lam
        lam = ops.act_on_weight(ops.generators[i], lam)
    raise RuntimeError("dominantization did not terminate (nonpositive level?)")


class WeightMultTable:
    """Weight multiplicities of one irreducible highest-weight module, exact
    for every weight whose delta-drop below the highest weight is <= depth."""

    def __init__(self, label: str, highest: AffineWeight, depth: int):
        self.ops = weyl_ops(label)
        self.data = self.ops.data
        if not _is_dominant_integral(self.data, highest):
            raise ValueError("highest weight must be dominant integral of level >= 0")
        self.highest = highest
        self.depth = depth
        self._mult: dict[AffineWeight, int] = {}
        if highest.level == 0:
            # level-zero dominant weights are multiples of delta; the module
            # is one dimensional
            self._mult[highest] = 1
        else:
            self._build()

    # -- support -------------------------------------------------------------

    def drop_coords(self, mu: AffineWeight):
        """Coordinates of highest - mu on the affine simple roots, or None
        when the difference leaves the positive root cone."""
        diff = self.highest - mu
        if diff.level != 0:
            return None
        coords = self.data.root_coords(diff)
        if any(c.denominator != 1 or c < 0 for c in coords):
            return None
        return tuple(int(c) for c in coords)

    def dominant_in_support(self, mu: AffineWeight) -> bool:
        """For dominant mu of the right level: is it a weight at all."""
        return self.drop_coords(mu) is not None

    def mult_status(self, mu: AffineWeight) -> tuple[str, int]:
        """('ok', m) when decidable at this depth, ('unknown', 0) otherwise."""
        if mu.level != self.highest.level:
            return ("ok", 0)
        if not mu.is_integral():
            return ("ok", 0)
        if self.highest.level == 0:
            return ("ok", 1 if mu == self.highest else 0)
        md = dominantize(self.ops, mu)
        coords = self.drop_coords(md)
        if coords is None:
            return ("ok", 0)
        if coords[0] > self.depth:
            return ("unknown", 0)
        return ("ok", self._mult.get(md, 0))

    def mult(self, mu: AffineWeight) -> int:
        status, m = self.mult_status(mu)
        if status != "ok":
            raise UndecidedAtDepthError(
                f"weight multiplicity beyond depth {self.depth}")
        return m

    def dominant_weights(self):
        return sorted(self._mult, key=lambda m: (self.highest - m).delta_coeff)

    # -- construction ----------------------------------------------------------

    def _dominant_candidates(self):
        """All dominant weights of the right level within the depth window:
        finite dominant parts bounded by the level polytope, delta parts by
        the depth."""
        data = self.data
        lam = self.highest
        ell = lam.level
        comarks = [int(c) for c in data.finite.comarks]
        rank = data.finite.rank
        out: list[tuple[int, ...]] = []

        def rec(i, budget, coords):
            if i == rank:
                out.append(tuple(coords))
                return
            for k in range(budget // comarks[i] + 1):
                rec(i + 1, budget - k * comarks[i], coords + [k])

        rec(0, int(ell), [])
        found = []
        for m0 in range(self.depth + 1):
            for coords in out:
                mu = AffineWeight(vec(coords), ell, lam.delta_coeff - m0)
                if self.drop_coords(mu) is not None:
                    found.append(mu)
        return found

    def _positive_roots(self):
        """(root, multiplicity) for positive roots with delta-degree <= depth."""
        data = self.data
        fin = data.finite
        roots = []
        for r in fin.positive_roots:
            w = fin.root_to_weight(r)
            roots.append((AffineWeight(w, Fraction(0), Fraction(0)), 1))
        for n in range(1, self.depth + 1):
            for r in fin.positive_roots:
                w = fin.root_to_weight(r)
                roots.append((AffineWeight(w, Fraction(0), frac(n)), 1))
                roots.append((AffineWeight(vec([-x for x in w]), Fraction(0), frac(n)), 1))
            roots.append((AffineWeight(vec([0] * fin.rank), Fraction(0), frac(n)), fin.rank))
        return roots

    def _build(self):
        data = self.data
        lam = self.highest
        rho = data.rho
        candidates = self._dominant_candidates()
        candidates.sort(key=lambda mu: sum(self.drop_coords(mu)))
        roots = self._positive_roots()
        lam_rho_norm = data.weight_norm2(lam + rho)
        for mu in candidates:
            if mu == lam:
                self._mult[mu] = 1
                continue
            total = Fraction(0)
            for alpha, m_alpha in roots:
                k = 1
                while True:
                    nu = mu + k * alpha
                    nd = dominantize(self.ops, nu)
                    coords = self.drop_coords(nd)
                    if coords is None:
                        break
                    # bouncing never increases the drop, so lookups stay
                    # inside the window during construction
                    assert coords[0] <= self.depth
                    m_nu = self._mult.get(nd, 0)
                    if not m_nu:
                        break
                    total += m_alpha * m_nu * data.weight_form(nu, alpha)
                    k += 1
            denom = lam_rho_norm - data.weight_norm2(mu + rho)
            if denom == 0:
                raise FreudenthalError(
                    f"vanishing denominator at {mu} below {lam}")
            val = 2 * total / denom
            assert val.denominator == 1 and val >= 0
            if val:
                self._mult[mu] = int(val)


_weight_tables: dict = {}


def weight_multiplicities(label: str, highest: AffineWeight, depth: int) -> WeightMultTable:
    key = (label, highest, depth)
    table = _weight_tables.get(key)
    if table is None:
        table = WeightMultTable(label, highest, depth)
        _weight_tables[key] = table
    return table


# -- tensor multiplicities -------------------------------------------------------


@dataclass(frozen=True)
class TensorResult:
    value: int | None
    status: str              # "ok" or "undecided"
    depth: int
    shell_cap: int = 0
    undecided_terms: int = 0

    def require(self) -> int:
        if self.status != "ok":
            raise UndecidedAtDepthError(
                f"tensor multiplicity undecided at depth {self.depth}")
        assert self.value is not None
        return self.value

    def decided_zero(self) -> bool:
        return self.status == "ok" and self.value == 0


def _orbit_shell_cap(ops: WeylGroupOps, xi: AffineWeight, lam2: AffineWeight,
                     c0: Fraction, hard_limit: int = 4000) -> int:
    """Smallest shell bound S such that every w of length >= S satisfies
    (w xi, lam2) < c0, certified through the quadratic decay of the delta
    coordinate of w xi in |h| and the length/norm comparison.

    Requires lam2 of positive level and xi of positive level.
    """
    data = ops.data
    fin = data.finite
    N = len(fin.positive_roots)
    L = xi.level
    ell2 = lam2.level
    assert L > 0 and ell2 > 0
    xi_dot_n2 = fin.weight_norm2(xi.dot_part)
    l2_dot_n2 = fin.weight_norm2(lam2.dot_part)
    # (w xi, lam2) <= S0 + R*t - (ell2*L/2) t^2  with t = |h|
    S0 = sqrt_ub(xi_dot_n2 * l2_dot_n2) + L * lam2.delta_coeff + ell2 * xi.delta_coeff
    R = L * sqrt_ub(l2_dot_n2) + ell2 * sqrt_ub(xi_dot_n2)
    half = Fraction(ell2) * L
    for s in range(N + 1, hard_limit):
        q = Fraction(s - N, 2 * N)  # t_min(s) = q * sqrt(2)
        # need t_min >= vertex R/(ell2 L):  2 q^2 >= (R / (ell2 L))^2
        if 2 * q * q * half * half < R * R:
            continue
        rprime = c0 - S0 + Fraction(ell2) * L * q * q
        if rprime <= 0:
            continue
        if 2 * R * R * q * q < rprime * rprime:
            return s
    raise RuntimeError("no shell cap found below the hard limit")


def tensor_multiplicity(label: str, lam1: AffineWeight, lam2: AffineWeight,
                        mu: AffineWeight, depth: int = 6) -> TensorResult:
    """Multiplicity of the module of highest weight mu inside the tensor
    product of those of lam1 and lam2, by the alternating Weyl-group sum
    over weight multiplicities of lam1."""
    ops = weyl_ops(label)
    data = ops.data
    for lam in (lam1, lam2):
        if not _is_dominant_integral(data, lam):
            raise ValueError("tensor factors must be dominant integral")
    if not _is_dominant_integral(data, mu):
        raise ValueError("target weight must be dominant integral")
    if mu.level != lam1.level + lam2.level:
        return TensorResult(0, "ok", depth)
    diff = mu - lam1 - lam2
    if not data.in_root_lattice(diff):
        return TensorResult(0, "ok", depth)
    # one-dimensional factors
    if lam1.level == 0:
        return TensorResult(1 if mu == lam1 + lam2 else 0, "ok", depth)
    if lam2.level == 0:
        return TensorResult(1 if mu == lam1 + lam2 else 0, "ok", depth)

    table = weight_multiplicities(label, lam1, depth)
    rho = data.rho
    xi = mu + rho
    # necessary condition for a nonzero term at w:
    # (w xi, lam2) >= (|xi|^2 + |lam2|^2 - |lam1+rho|^2) / 2
    c0 = (data.weight_norm2(xi) + data.weight_norm2(lam2)
          - data.weight_norm2(lam1 + rho)) / 2
    cap = _orbit_shell_cap(ops, xi, lam2, c0)
    total = 0
    undecided = 0
    for s in range(cap):
        for w in ops.shell(s):
            nu = ops.act_on_weight(w, xi) - rho - lam2
            status, m = table.mult_status(nu)
            if status == "unknown":
                undecided += 1
            elif m:
                total += m if s % 2 == 0 else -m
    if undecided:
        return TensorResult(None, "undecided", depth, cap, undecided)
    assert total >= 0
    return TensorResult(total, "ok", depth, cap)


# -- the largest delta coefficient with nonzero multiplicity ---------------------


@dataclass(frozen=True)
class DeltaSupportReport:
    b0: int | None
    support: tuple[int, ...]
    scanned: tuple[int, ...]
    undecided: tuple[int, ...]
    pattern: str  # "interval", "gap-at-b0-minus-1", "all-zero", "undecided"
    upper_start: int
    depth: int


def delta_support_upper_start(data: AffineRootData, lam1, lam2, mubar) -> int:
    """Rigorous integer upper bound for the largest b with nonzero
    multiplicity at mubar + b delta.

    Combines the coset-Casimir quadratic bound with the cruder necessity
    that every constituent highest weight lies under lam1 + lam2 in the
    positive root cone.
    """
    fin = data.finite
    rho_dot = fin.rho()
    hv = data.dual_coxeter

    def quad(dot, ell):
        return (fin.weight_form(dot, dot) + 2 * fin.weight_form(dot, rho_dot)) / (2 * (ell + hv))

    bound = (quad(lam1.dot_part, lam1.level) + quad(lam2.dot_part, lam2.level)
             - quad(mubar.dot_part, mubar.level)
             + lam1.delta_coeff + lam2.delta_coeff - mubar.delta_coeff)
    out = math.floor(bound)
    # mubar + b delta <= lam1 + lam2 forces b <= alpha_0-coordinate of the gap
    diff = lam1 + lam2 - mubar
    if diff.level == 0:
        coords = data.root_coords(diff)
        if all(c.denominator == 1 for c in coords):
            out = min(out, int(coords[0]))
    return out


def max_delta_shift(label: str, lam1: AffineWeight, lam2: AffineWeight,
                    mubar: AffineWeight, window: int = 8,
                    depth: int = 6) -> DeltaSupportReport:
    """Scan b downward from a certified upper bound and report the largest b
    with nonzero multiplicity at mubar + b delta, plus the observed support
    shape inside the scanned window."""
    ops = weyl_ops(label)
    data = ops.data
    start = delta_support_upper_start(data, lam1, lam2, mubar)
    scanned = []
    support = []
    undecided = []
    b0 = None
    b = start
    while b > start - window:
        target = mubar + b * data.delta
        if data.is_dominant(target):
            res = tensor_multiplicity(label, lam1, lam2, target, depth)
            scanned.append(b)
            if res.status != "ok":
                undecided.append(b)
            elif res.value:
                support.append(b)
                if b0 is None:
                    b0 = b
        b -= 1
    if undecided:
        pattern = "undecided"
    elif b0 is None:
        pattern = "all-zero"
    else:
        inside = [b for b in scanned if b <= b0]
        missing = [b for b in inside if b not in support]
        if not missing:
            pattern = "interval"
        elif missing == [b0 - 1]:
            pattern = "gap-at-b0-minus-1"
        else:
            pattern = "other"
    return DeltaSupportReport(b0, tuple(support), tuple(scanned),
                              tuple(undecided), pattern, start, depth)
