"""Untwisted affine root data, weights and coweights.

An affine weight is a triple (dot part, level, delta coefficient) where the
dot part lives on the finite fundamental-weight basis; an affine coweight is
(dot part, c coefficient, d coefficient) with the dot part on the finite
simple-coroot basis.  The pairing of basis blocks is block diagonal:
<c, Lambda> = 1 and <d, delta> = 1, everything else across blocks vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import (
    CartanTypeError,
    FiniteRootData,
    finite_root_data,
    lcm_list,
    parse_cartan_label,
)
from .exactmath import Vec, dot, frac, frac_str, vec, vec_add, vec_scale, vec_sub


@dataclass(frozen=True)
class AffineWeight:
    """dot_part on fundamental weights of the finite system, level = value on
    c, delta_coeff = value on d."""

    dot_part: Vec
    level: Fraction
    delta_coeff: Fraction

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(vec_add(self.dot_part, other.dot_part),
                            self.level + other.level,
                            self.delta_coeff + other.delta_coeff)

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(vec_sub(self.dot_part, other.dot_part),
                            self.level - other.level,
                            self.delta_coeff - other.delta_coeff)

    def __rmul__(self, c) -> "AffineWeight":
        c = frac(c)
        return AffineWeight(vec_scale(c, self.dot_part), c * self.level, c * self.delta_coeff)

    def __neg__(self) -> "AffineWeight":
        return -1 * self

    def is_zero(self) -> bool:
        return self.level == 0 and self.delta_coeff == 0 and all(x == 0 for x in self.dot_part)

    def is_integral(self) -> bool:
        return (self.level.denominator == 1 and self.delta_coeff.denominator == 1
                and all(x.denominator == 1 for x in self.dot_part))


@dataclass(frozen=True)
class AffineCoweight:
    """dot_part on simple coroots of the finite system, c_coeff, d_coeff."""

    dot_part: Vec
    c_coeff: Fraction
    d_coeff: Fraction

    def __add__(self, other: "AffineCoweight") -> "AffineCoweight":
        return AffineCoweight(vec_add(self.dot_part, other.dot_part),
                              self.c_coeff + other.c_coeff,
                              self.d_coeff + other.d_coeff)

    def __sub__(self, other: "AffineCoweight") -> "AffineCoweight":
        return AffineCoweight(vec_sub(self.dot_part, other.dot_part),
                              self.c_coeff - other.c_coeff,
                              self.d_coeff - other.d_coeff)

    def __rmul__(self, c) -> "AffineCoweight":
        c = frac(c)
        return AffineCoweight(vec_scale(c, self.dot_part), c * self.c_coeff, c * self.d_coeff)


def pair(tau: AffineCoweight, lam: AffineWeight) -> Fraction:
    """<tau, lam>: bilinear pairing of an affine coweight with an affine weight."""
    return dot(tau.dot_part, lam.dot_part) + tau.c_coeff * lam.level + tau.d_coeff * lam.delta_coeff


# Saturation factors of the finite simple types known in the literature;
# G2 admits the two listed values.
_FINITE_SATURATION = {
    "A": lambda l: (1,),
    "B": lambda l: (2,),
    "C": lambda l: (2,),
    "D": lambda l: (1,) if l == 4 else (4,),
    "E": lambda l: {6: (36,), 7: (144,), 8: (3600,)}[l],
    "F": lambda l: (144,),
    "G": lambda l: (2, 3),
}

# lcm of saturation factors over the maximal Levi subalgebras of the affine
# algebra, keyed by the finite type; G2 again carries two possible values.
_AFFINE_KS = {
    "A": lambda l: (1,),
    "B": lambda l: (2,) if l in (2, 3, 4) else (4,),
    "C": lambda l: (2,),
    "D": lambda l: (1,) if l == 4 else (4,),
    "E": lambda l: {6: (36,), 7: (144,), 8: (3600,)}[l],
    "F": lambda l: (144,),
    "G": lambda l: (2, 3),
}


class AffineRootData:
    """Cartan data of the untwisted affine extension of a finite simple type."""

    def __init__(self, finite: FiniteRootData):
        if not finite.cartan_type:
            raise CartanTypeError("affine extension needs a simple finite type")
        self.finite = finite
        self.rank = finite.rank  # finite rank l; affine nodes are 0..l
        f = finite
        self.dual_coxeter = 1 + sum(f.comarks, Fraction(0))
        assert self.dual_coxeter.denominator == 1
        self.dual_coxeter = int(self.dual_coxeter)
        # highest root / coroot as affine objects
        self.theta = AffineWeight(f.root_to_weight(f.highest_root), Fraction(0), Fraction(0))
        self.theta_vee = AffineCoweight(f.highest_coroot, Fraction(0), Fraction(0))
        self.delta = AffineWeight(vec([0] * f.rank), Fraction(0), Fraction(1))
        self.Lambda0 = AffineWeight(vec([0] * f.rank), Fraction(1), Fraction(0))
        self.c = AffineCoweight(vec([0] * f.rank), Fraction(1), Fraction(0))
        self.d = AffineCoweight(vec([0] * f.rank), Fraction(0), Fraction(1))
        # simple roots alpha_0 = delta - theta, alpha_1..alpha_l
        self.simple_roots = [self.delta - self.theta] + [
            AffineWeight(f.root_to_weight(tuple(1 if j == i else 0 for j in range(f.rank))),
                         Fraction(0), Fraction(0))
            for i in range(f.rank)
        ]
        # simple coroots: alpha0_vee = c - theta_vee
        self.simple_coroots = [self.c - self.theta_vee] + [
            AffineCoweight(vec(tuple(1 if j == i else 0 for j in range(f.rank))),
                           Fraction(0), Fraction(0))
            for i in range(f.rank)
        ]
        # fundamental weights: node 0 -> Lambda, node i -> fw_i + comark_i*Lambda
        self.fundamental_weights = [self.Lambda0] + [
            AffineWeight(vec(tuple(1 if j == i else 0 for j in range(f.rank))),
                         f.comarks[i], Fraction(0))
            for i in range(f.rank)
        ]
        # fundamental coweights: node 0 -> d, node i -> fcw_i + mark_i*d
        self.fundamental_coweights = [self.d] + [
            AffineCoweight(f.fundamental_coweights[i], Fraction(0), frac(f.marks[i]))
            for i in range(f.rank)
        ]
        self.rho = AffineWeight(f.rho(), frac(self.dual_coxeter), Fraction(0))

    # -- labels and constants -------------------------------------------------

    @property
    def cartan_type(self) -> str:
        return self.finite.cartan_type + "~"

    def mark_lcm(self) -> int:
        """lcm of the coordinates of the highest root on the simple roots."""
        return lcm_list(self.finite.marks)

    def levi_saturation_values(self) -> tuple[int, ...]:
        letter, rank = parse_cartan_label(self.finite.cartan_type)
        return _AFFINE_KS[letter](rank)

    def levi_saturation_factor(self) -> int:
        """Smallest of the known lcm-of-Levi saturation factors."""
        return min(self.levi_saturation_values())

    # -- weights --------------------------------------------------------------

    def weight(self, dot_part, level=0, delta_coeff=0) -> AffineWeight:
        return AffineWeight(vec(dot_part), frac(level), frac(delta_coeff))

    def weight_from_fw_coords(self, coeffs, delta_coeff=0) -> AffineWeight:
        """Weight sum(a_i * fw_i, i = 0..l) + b * delta."""
        out = AffineWeight(vec([0] * self.rank), Fraction(0), frac(delta_coeff))
        for i, a in enumerate(coeffs):
            out = out + frac(a) * self.fundamental_weights[i]
        return out

    def fw_coords(self, lam: AffineWeight) -> list[Fraction]:
        """Coordinates [a_0..a_l] of lam on the affine fundamental weights,
        modulo delta; lam = sum a_i fw_i + (residual) delta."""
        return [pair(cv, lam) for cv in self.simple_coroots]

    def pair_simple_coroot(self, i: int, lam: AffineWeight) -> Fraction:
        return pair(self.simple_coroots[i], lam)

    def is_dominant(self, lam: AffineWeight) -> bool:
        return all(self.pair_simple_coroot(i, lam) >= 0 for i in range(self.rank + 1))

    def coweight_norm2(self, tau: AffineCoweight) -> Fraction:
        """Norm of the dot part (c and d directions are isotropic here; only
        used for translation lattice elements, which are pure dot)."""
        return self.finite.coweight_norm2(tau.dot_part)

    def weight_form(self, a: AffineWeight, b: AffineWeight) -> Fraction:
        """Normalized invariant form on the affine weight space."""
        return (self.finite.weight_form(a.dot_part, b.dot_part)
                + a.level * b.delta_coeff + b.level * a.delta_coeff)

    def weight_norm2(self, a: AffineWeight) -> Fraction:
        return self.weight_form(a, a)

    # -- lattices ---------------------------------------------------------------

    def dot_root_coords(self, lam: AffineWeight):
        """Rational coordinates of the dot part on the finite simple roots."""
        return self.finite.weight_to_root(lam.dot_part)

    def in_root_lattice(self, lam: AffineWeight) -> bool:
        """Whether lam lies in the affine root lattice Q = Q_fin + Z*delta.

        Requires integral level and delta coefficient; the Lambda coefficient
        of a root-lattice element is 0.
        """
        if not (lam.level.denominator == 1 and lam.delta_coeff.denominator == 1):
            raise ValueError("root-lattice test needs integral level and delta coefficient")
        if lam.level != 0:
            return False
        return all(c.denominator == 1 for c in self.dot_root_coords(lam))

    def root_coords(self, lam: AffineWeight) -> list[Fraction]:
        """Coordinates [m_0..m_l] of a level-zero weight on alpha_0..alpha_l.

        m_0 is the delta coefficient; the finite coordinates absorb
        m_0 * theta.
        """
        if lam.level != 0:
            raise ValueError("only level-zero weights lie in the root lattice span")
        m0 = lam.delta_coeff
        fin = vec_add(self.dot_root_coords(lam),
                      vec_scale(m0, vec(self.finite.highest_root)))
        return [m0] + list(fin)

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        f = self.finite
        return {
            "cartan_type": self.cartan_type,
            "rank": f.rank,
            "cartan_matrix": [list(r) for r in f.cartan],
            "symmetrizers": [frac_str(x) for x in f.symmetrizers],
            "positive_root_count": len(f.positive_roots),
            "positive_roots": [list(r) for r in f.positive_roots],
            "highest_root": list(f.highest_root),
            "highest_coroot": [frac_str(x) for x in f.highest_coroot],
            "marks": list(f.marks),
            "comarks": [frac_str(x) for x in f.comarks],
            "dual_coxeter": self.dual_coxeter,
            "mark_lcm": self.mark_lcm(),
            "levi_saturation_values": list(self.levi_saturation_values()),
            "root_gram": [[frac_str(x) for x in row] for row in f.root_gram],
            "coroot_gram": [[frac_str(x) for x in row] for row in f.coroot_gram],
        }


@lru_cache(maxsize=None)
def build_affine(label: str) -> AffineRootData:
    """Construct the untwisted affine root data for a finite type label."""
    letter, rank = parse_cartan_label(label)
    return AffineRootData(finite_root_data(f"{letter}{rank}"))


def finite_saturation_values(label: str) -> tuple[int, ...]:
    letter, rank = parse_cartan_label(label)
    return _FINITE_SATURATION[letter](rank)
