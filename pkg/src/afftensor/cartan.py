"""Finite simple root systems with exact rational invariant forms.

Roots are stored as integer coordinate vectors on the simple-root basis,
weights on the fundamental-weight basis, coweights on the simple-coroot
basis.  With these conventions the coweight/weight pairing is a plain dot
product.  The invariant form is normalized so the highest root has squared
norm 2; transported through nu to the coroot side this makes short coroots
have squared norm 2 as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exactmath import (
    Mat,
    Vec,
    dot,
    frac,
    mat_inverse,
    mat_vec,
    vec,
)

_LABEL_RE = re.compile(r"^([A-G])[_\s]?(\d+)\s*(~|\^\(1\)|\(1\))?$")

_RANK_BOUNDS = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}


class CartanTypeError(ValueError):
    pass


def parse_cartan_label(label: str) -> tuple[str, int]:
    """Parse labels like 'A1', 'A_1', 'A1~', 'C2^(1)' into (letter, rank).

    The optional affine marker is accepted and ignored: this package always
    works with the untwisted affine extension of the finite type.
    """
    m = _LABEL_RE.match(label.strip())
    if not m:
        raise CartanTypeError(f"unrecognized Cartan type label: {label!r}")
    letter, rank = m.group(1), int(m.group(2))
    lo = _RANK_BOUNDS[letter]
    if rank < lo:
        raise CartanTypeError(f"type {letter}_{rank}: rank must be >= {lo}")
    if letter == "E" and rank not in (6, 7, 8):
        raise CartanTypeError("type E exists only for ranks 6, 7, 8")
    if letter == "F" and rank != 4:
        raise CartanTypeError("type F exists only for rank 4")
    if letter == "G" and rank != 2:
        raise CartanTypeError("type G exists only for rank 2")
    return letter, rank


def cartan_matrix(letter: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with A[i][j] = <coroot_i, root_j> (Bourbaki numbering)."""
    n = rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if letter in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if letter == "B" and n >= 2:
            # alpha_n short: <coroot_n, alpha_{n-1}> = -2
            a[n - 1][n - 2] = -2
        if letter == "C" and n >= 2:
            # alpha_n long: <coroot_{n-1}, alpha_n> = -2
            a[n - 2][n - 1] = -2
    elif letter == "D":
        for i in range(n - 3):
            bond(i, i + 1)
        bond(n - 3, n - 2)
        bond(n - 3, n - 1)
    elif letter == "E":
        # Bourbaki: node 2 attaches to node 4.
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
        for i, j in edges:
            bond(i - 1, j - 1)
    elif letter == "F":
        bond(0, 1)
        bond(2, 3)
        a[1][2] = -1
        a[2][1] = -2  # alpha_3 short
    elif letter == "G":
        a[0][1] = -3  # alpha_1 short
        a[1][0] = -1
    return tuple(tuple(row) for row in a)


def _symmetrizers(a: tuple[tuple[int, ...], ...]) -> Vec:
    """d_i with d_i*a_ij = d_j*a_ji, scaled so max(d) = 1 per component."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        comp = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    stack.append(j)
                    comp.append(j)
        top = max(d[c] for c in comp)  # long roots get d = 1
        for c in comp:
            d[c] = d[c] / top
    return tuple(d)  # type: ignore[arg-type]


@dataclass(frozen=True)
class FiniteRootData:
    """Root/weight data of a finite (semi)simple root system.

    Only simple types get a `cartan_type` label; Levi subsystems built from
    an arbitrary (possibly decomposable) Cartan matrix carry label ''.
    """

    cartan_type: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizers: Vec  # d_i = (alpha_i, alpha_i)/2
    positive_roots: tuple[tuple[int, ...], ...]  # simple-root coordinates
    root_gram: Mat  # (alpha_i, alpha_j)
    coroot_gram: Mat  # (coroot_i, coroot_j) via nu
    fundamental_coweights: Mat  # row i = coords of fcw_i on coroots
    highest_root: tuple[int, ...]
    highest_coroot: Vec  # coroot coords of theta-vee
    marks: tuple[int, ...]
    comarks: Vec

    # -- basic conversions --------------------------------------------------

    def root_to_weight(self, root: tuple) -> Vec:
        """Simple-root coordinates -> fundamental-weight coordinates."""
        return tuple(sum(frac(self.cartan[i][j]) * root[j] for j in range(self.rank))
                     for i in range(self.rank))

    def weight_to_root(self, wcoords: Vec) -> Vec:
        """Fundamental-weight coordinates -> rational simple-root coordinates."""
        return mat_vec(self._cartan_inv(), wcoords)

    @lru_cache(maxsize=None)
    def _cartan_inv(self) -> Mat:
        return mat_inverse(self.cartan)

    def coroot_of(self, root: tuple) -> Vec:
        """Coroot coordinates of the coroot of a given root."""
        d_root = self.root_norm2(root) / 2
        return tuple(frac(c) * self.symmetrizers[i] / d_root for i, c in enumerate(root))

    def root_norm2(self, root: tuple) -> Fraction:
        return dot(root, mat_vec(self.root_gram, vec(root)))

    # -- pairings and norms --------------------------------------------------

    def pair(self, coweight: Vec, weight: Vec) -> Fraction:
        """<h, lambda> for h on the coroot basis, lambda on the fw basis."""
        return dot(coweight, weight)

    def coweight_norm2(self, h: Vec) -> Fraction:
        return dot(h, mat_vec(self.coroot_gram, vec(h)))

    def weight_norm2(self, wcoords: Vec) -> Fraction:
        r = self.weight_to_root(wcoords)
        return dot(r, mat_vec(self.root_gram, r))

    def weight_form(self, w1: Vec, w2: Vec) -> Fraction:
        r1 = self.weight_to_root(w1)
        r2 = self.weight_to_root(w2)
        return dot(r1, mat_vec(self.root_gram, r2))

    def coweight_form(self, h1: Vec, h2: Vec) -> Fraction:
        return dot(h1, mat_vec(self.coroot_gram, vec(h2)))

    def nu_coweight_to_weight(self, h: Vec) -> Vec:
        """nu(h): the weight with <x, nu(h)> = (x, h) for coweights x."""
        root_coords = tuple(frac(c) / self.symmetrizers[i] for i, c in enumerate(h))
        return self.root_to_weight(root_coords)

    # -- dominance -----------------------------------------------------------

    def is_dominant_weight(self, wcoords: Vec) -> bool:
        return all(c >= 0 for c in wcoords)

    def rho(self) -> Vec:
        return tuple(Fraction(1) for _ in range(self.rank))


def _enumerate_positive_roots(cartan) -> list[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            # weight coords m_i = <coroot_i, root>
            m = [sum(cartan[i][j] * root[j] for j in range(n)) for i in range(n)]
            for i in range(n):
                refl = list(root)
                refl[i] -= m[i]
                r = tuple(refl)
                if all(c >= 0 for c in r) and r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(seen, key=lambda r: (sum(r), r))


def finite_root_data_from_cartan(cartan, label: str = "") -> FiniteRootData:
    """Build root data for an arbitrary finite-type Cartan matrix."""
    n = len(cartan)
    d = _symmetrizers(cartan)
    root_gram = tuple(tuple(d[i] * cartan[i][j] for j in range(n)) for i in range(n))
    coroot_gram = tuple(tuple(frac(cartan[i][j]) / d[j] for j in range(n)) for i in range(n))
    positive = _enumerate_positive_roots(cartan)
    height = lambda r: sum(r)
    top = max(positive, key=height)
    if sum(1 for r in positive if height(r) == height(top)) != 1 and label:
        raise CartanTypeError("highest root is not unique; matrix not simple")
    fcw = mat_inverse(cartan)  # row i = fundamental coweight i on coroots
    data = FiniteRootData(
        cartan_type=label,
        rank=n,
        cartan=tuple(tuple(int(x) for x in row) for row in cartan),
        symmetrizers=d,
        positive_roots=tuple(positive),
        root_gram=root_gram,
        coroot_gram=coroot_gram,
        fundamental_coweights=fcw,
        highest_root=top,
        highest_coroot=(),
        marks=tuple(int(c) for c in top),
        comarks=(),
    )
    object.__setattr__(data, "highest_coroot", data.coroot_of(top))
    object.__setattr__(data, "comarks", data.highest_coroot)
    return data


@lru_cache(maxsize=None)
def finite_root_data(label: str) -> FiniteRootData:
    letter, rank = parse_cartan_label(label)
    return finite_root_data_from_cartan(cartan_matrix(letter, rank), f"{letter}{rank}")


def lcm_list(xs) -> int:
    out = 1
    for x in xs:
        x = int(x)
        out = out * x // gcd(out, x)
    return out
