"""Independent oracle for tensor multiplicities: truncated characters.

Characters are computed by dividing the alternating numerator by the product
side of the denominator identity, as formal series over the positive-root
monoid; tensor products are decomposed by greedy highest-weight peeling.
This code path shares nothing with the recursion-based tables in repmult.
"""

from __future__ import annotations

from .affine import AffineWeight, build_affine
from .cartan import FiniteRootData
from .exactmath import frac, sqrt_ub, vec
from .repmult import _orbit_shell_cap
from .weyl import weyl_ops

Series = dict  # exponent tuple on simple roots -> int coefficient


def _box_points(caps):
    if not caps:
        yield ()
        return
    for head in range(caps[0] + 1):
        for tail in _box_points(caps[1:]):
            yield (head,) + tail


class TruncatedCharacter:
    """Weight -> multiplicity for an affine irreducible within a delta window."""

    def __init__(self, label: str, highest: AffineWeight, depth: int):
        self.ops = weyl_ops(label)
        self.data = self.ops.data
        self.highest = highest
        self.depth = depth
        if not (highest.is_integral() and self.data.is_dominant(highest)
                and highest.level >= 0):
            raise ValueError("highest weight must be dominant integral")
        if highest.level == 0:
            self.table = {highest: 1}
            return
        caps = self._caps()
        num = self._numerator(caps)
        den_inv = self._denominator_inverse(caps)
        prod = _series_multiply(num, den_inv, caps)
        table = {}
        for e, c in prod.items():
            if c:
                table[self._weight_at(e)] = c
        assert table.get(highest) == 1
        assert all(c > 0 for c in table.values())
        self.table = table

    def _weight_at(self, e) -> AffineWeight:
        data = self.data
        lam = self.highest
        out = lam
        for i, m in enumerate(e):
            if m:
                out = out - m * data.simple_roots[i]
        return out

    def _caps(self):
        """Coordinate caps on highest - weight guaranteed to contain every
        weight with delta-drop <= depth, from the Casimir norm bound."""
        data = self.data
        fin = data.finite
        lam = self.highest
        rho = data.rho
        L0 = lam.level + data.dual_coxeter
        lam_rho = data.weight_norm2(lam + rho)
        # |dot(nu)+rho_dot|^2 <= lam_rho - 2 L0 (b(lam) - depth)
        r2 = lam_rho - 2 * L0 * (lam.delta_coeff - self.depth)
        assert r2 >= 0
        nu_dot_bound = sqrt_ub(r2) + sqrt_ub(fin.weight_norm2(fin.rho()))
        caps = [self.depth]
        theta_shift = vec([frac(x) for x in fin.root_to_weight(fin.highest_root)])
        for i in range(fin.rank):
            fcw = fin.fundamental_coweights[i]
            exact = (fin.pair(fcw, lam.dot_part)
                     + self.depth * fin.pair(fcw, theta_shift))
            bound = exact + sqrt_ub(fin.coweight_norm2(fcw)) * nu_dot_bound
            caps.append(max(0, int(bound) + 1))
        return tuple(caps)

    def _numerator(self, caps) -> Series:
        data = self.data
        ops = self.ops
        lam = self.highest
        rho = data.rho
        xi = lam + rho
        b_min = xi.delta_coeff - frac(self.depth)
        cap = _orbit_shell_cap(ops, xi, data.Lambda0, b_min)
        out: Series = {}
        nvars = data.rank + 1
        for s in range(cap):
            sign = 1 if s % 2 == 0 else -1
            for w in ops.shell(s):
                term = ops.act_on_weight(w, xi)
                gap = xi - term
                coords = data.root_coords(gap)
                assert all(c.denominator == 1 and c >= 0 for c in coords)
                e = tuple(int(c) for c in coords)
                if all(x <= cap_i for x, cap_i in zip(e, caps)):
                    out[e] = out.get(e, 0) + sign
        return {e: c for e, c in out.items() if c}

    def _denominator_inverse(self, caps) -> Series:
        data = self.data
        fin = data.finite
        roots: list[tuple[tuple[int, ...], int]] = []
        for r in fin.positive_roots:
            roots.append(((0,) + tuple(int(x) for x in r), 1))
        theta = tuple(int(x) for x in fin.highest_root)
        for n in range(1, self.depth + 1):
            for r in fin.positive_roots:
                plus = (n,) + tuple(n * t + x for t, x in zip(theta, r))
                minus = (n,) + tuple(n * t - x for t, x in zip(theta, r))
                roots.append((plus, 1))
                roots.append((minus, 1))
            roots.append(((n,) + tuple(n * t for t in theta), fin.rank))
        out: Series = {(0,) * (data.rank + 1): 1}
        for step, mult in roots:
            if any(s > c for s, c in zip(step, caps)):
                continue
            for _ in range(mult):
                out = _cumulative_along(out, step, caps)
        return out

    def mult(self, mu: AffineWeight) -> int:
        return self.table.get(mu, 0)

    def dominant_part(self) -> dict:
        return {mu: c for mu, c in self.table.items() if self.data.is_dominant(mu)}


def _cumulative_along(series: Series, step, caps) -> Series:
    """series * sum_{j>=0} x^{j*step} truncated to the box."""
    out = dict(series)
    for e in sorted(_box_points(caps)):
        prev = tuple(a - b for a, b in zip(e, step))
        if any(x < 0 for x in prev):
            continue
        add = out.get(prev, 0)
        if add:
            out[e] = out.get(e, 0) + add
    return {e: c for e, c in out.items() if c}


def _series_multiply(a: Series, b: Series, caps) -> Series:
    out: Series = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > c for x, c in zip(e, caps)):
                continue
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


_char_cache: dict = {}


def truncated_character(label: str, highest: AffineWeight, depth: int) -> TruncatedCharacter:
    key = (label, highest, depth)
    out = _char_cache.get(key)
    if out is None:
        out = TruncatedCharacter(label, highest, depth)
        _char_cache[key] = out
    return out


def character_tensor_decompose(label: str, lam1: AffineWeight, lam2: AffineWeight,
                               depth: int) -> dict:
    """Multiply truncated characters and peel constituents greedily by
    highest weight; returns {dominant mu: multiplicity} complete for every mu
    with delta-drop <= depth below lam1 + lam2."""
    data = build_affine(label)
    ops = weyl_ops(label)
    top = lam1 + lam2
    ch1 = truncated_character(label, lam1, depth).table
    ch2 = truncated_character(label, lam2, depth).table
    prod: dict = {}
    for m1, c1 in ch1.items():
        for m2, c2 in ch2.items():
            mu = m1 + m2
            drop = top.delta_coeff - mu.delta_coeff
            assert drop.denominator == 1
            if drop > depth:
                continue
            prod[mu] = prod.get(mu, 0) + c1 * c2
    prod = {m: c for m, c in prod.items() if c}
    out: dict = {}

    def gap_height(mu):
        coords = data.root_coords(top - mu)
        return sum(coords)

    while prod:
        mu = min(prod, key=lambda m: (gap_height(m), m.dot_part, m.delta_coeff))
        c = prod[mu]
        assert c > 0, "peeling found a negative leading coefficient"
        assert data.is_dominant(mu), "peeling found a non-dominant leading weight"
        out[mu] = c
        drop = int(top.delta_coeff - mu.delta_coeff)
        piece = truncated_character(label, mu, depth - drop).table
        for m, mult in piece.items():
            if top.delta_coeff - m.delta_coeff > depth:
                continue
            v = prod.get(m, 0) - c * mult
            if v:
                prod[m] = v
            else:
                prod.pop(m, None)
    return out


# -- finite-type variant (oracle for the Levi route) ------------------------------


def finite_character(fin: FiniteRootData, highest: tuple, weyl_elements) -> dict:
    """Full character of a finite-type irreducible by numerator division;
    weyl_elements must be the complete finite Weyl group as fw-matrices
    (see levi_weyl_group)."""
    n = fin.rank
    rho = tuple([1] * n)
    xi = tuple(h + 1 for h in highest)
    num: Series = {}
    caps = _finite_caps(fin, highest)
    for mat, sign in weyl_elements:
        img = _mat_vec_int(mat, xi)
        gap = tuple(a - b for a, b in zip(xi, img))
        coords = fin.weight_to_root(vec(gap))
        assert all(c.denominator == 1 and c >= 0 for c in coords)
        e = tuple(int(c) for c in coords)
        if all(x <= c for x, c in zip(e, caps)):
            num[e] = num.get(e, 0) + sign
    den_inv: Series = {(0,) * n: 1}
    for r in fin.positive_roots:
        den_inv = _cumulative_along(den_inv, tuple(int(x) for x in r), caps)
    prod = _series_multiply(num, den_inv, caps)
    out = {}
    for e, c in prod.items():
        if c:
            m = tuple(int(a) - int(b) for a, b in
                      zip(highest, fin.root_to_weight(e)))
            out[m] = c
    assert out.get(tuple(highest)) == 1
    assert all(c > 0 for c in out.values())
    return out


def _finite_caps(fin: FiniteRootData, highest: tuple):
    lam_norm = fin.weight_norm2(vec(highest))
    caps = []
    for i in range(fin.rank):
        w2 = fin.coweight_norm2(fin.fundamental_coweights[i])
        caps.append(int(sqrt_ub(w2 * 4 * lam_norm)) + 1)
    return tuple(caps)


def _mat_vec_int(mat, v):
    return tuple(sum(mat[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))


def levi_weyl_group(fin: FiniteRootData, max_size: int = 100000):
    """The full finite Weyl group as (fw-matrix, sign) pairs by closure."""
    n = fin.rank
    gens = []
    for i in range(n):
        s = [[(1 if k == j else 0) - (fin.cartan[k][i] if j == i else 0)
              for j in range(n)] for k in range(n)]
        gens.append(tuple(tuple(row) for row in s))
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    seen = {eye: 1}
    frontier = [eye]
    while frontier:
        nxt = []
        for m in frontier:
            sign = seen[m]
            for g in gens:
                prod = tuple(tuple(sum(m[i][k] * g[k][j] for k in range(n))
                                   for j in range(n)) for i in range(n))
                if prod not in seen:
                    seen[prod] = -sign
                    nxt.append(prod)
                    if len(seen) > max_size:
                        raise RuntimeError("Weyl group too large")
        frontier = nxt
    return list(seen.items())


def finite_tensor_decompose_oracle(fin: FiniteRootData, lam1: tuple, lam2: tuple) -> dict:
    """Finite-type tensor decomposition by character product and peeling."""
    welts = levi_weyl_group(fin)
    ch1 = finite_character(fin, tuple(lam1), welts)
    ch2 = finite_character(fin, tuple(lam2), welts)
    prod: dict = {}
    for m1, c1 in ch1.items():
        for m2, c2 in ch2.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            prod[m] = prod.get(m, 0) + c1 * c2
    prod = {m: c for m, c in prod.items() if c}
    out: dict = {}

    def gap_height(m):
        coords = fin.weight_to_root(vec(tuple(a + b - x for a, b, x in
                                              zip(lam1, lam2, m))))
        return sum(coords)

    while prod:
        m = min(prod, key=lambda mm: (gap_height(mm), mm))
        c = prod[m]
        assert c > 0 and all(x >= 0 for x in m)
        out[m] = c
        for mm, mult in finite_character(fin, m, welts).items():
            v = prod.get(mm, 0) - c * mult
            if v:
                prod[mm] = v
            else:
                prod.pop(mm, None)
    return out
