"""Affine Weyl group arithmetic.

Elements are written w = t_h * wdot with h in the finite coroot lattice and
wdot in the finite Weyl group; wdot is stored as its integer action matrix on
fundamental-weight coordinates together with the matrix of its inverse, so no
matrix inversion is ever performed.

Group law: (h1, w1)(h2, w2) = (h1 + w1 h2, w1 w2); identity (0, e);
inverse (-w^{-1} h, w^{-1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .affine import AffineCoweight, AffineRootData, AffineWeight
from .exactmath import Vec, dot, mat_mul, mat_vec, vec, vec_add, vec_scale

IntMat = tuple[tuple[int, ...], ...]


def _int_mat(m) -> IntMat:
    return tuple(tuple(int(x) for x in row) for row in m)


def _identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _cw_act(inv_mat: IntMat, h) -> tuple[int, ...]:
    """Finite part acting on coroot coordinates: <w h, m> = <h, w^{-1} m>
    makes the coweight matrix the transpose of inv_mat."""
    return tuple(sum(inv_mat[j][k] * h[j] for j in range(len(h))) for k in range(len(h)))


@dataclass(frozen=True)
class AffineWeylElt:
    """w = t_h * wdot; h on simple coroots, mat = wdot on weight coordinates."""

    h: tuple[int, ...]
    mat: IntMat
    inv_mat: IntMat

    def key(self):
        return (self.h, self.mat)

    def __mul__(self, other: "AffineWeylElt") -> "AffineWeylElt":
        wh2 = _cw_act(self.inv_mat, other.h)
        return AffineWeylElt(
            tuple(a + b for a, b in zip(self.h, wh2)),
            _int_mat(mat_mul(self.mat, other.mat)),
            _int_mat(mat_mul(other.inv_mat, self.inv_mat)),
        )

    def inverse(self) -> "AffineWeylElt":
        hi = _cw_act(self.mat, self.h)  # wdot^{-1} acts via transpose of mat
        return AffineWeylElt(tuple(-x for x in hi), self.inv_mat, self.mat)

    def is_identity(self) -> bool:
        n = len(self.h)
        return all(x == 0 for x in self.h) and self.mat == _identity(n)

    def is_translation(self) -> bool:
        return self.mat == _identity(len(self.h))


class WeylGroupOps:
    """Affine Weyl group operations for one affine root datum; caches the
    BFS shells, reduced words and descent data it discovers."""

    def __init__(self, data: AffineRootData):
        self.data = data
        f = data.finite
        n = f.rank
        self._n = n
        eye = _identity(n)
        self._s_fin = [self._finite_reflection_matrix(
            tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
        self.identity = AffineWeylElt(tuple([0] * n), eye, eye)
        thv = tuple(int(x) for x in f.highest_coroot)
        s_theta = self._finite_reflection_matrix(f.highest_root)
        self.generators: tuple[AffineWeylElt, ...] = tuple(
            [AffineWeylElt(thv, s_theta, s_theta)]
            + [AffineWeylElt(tuple([0] * n), s, s) for s in self._s_fin]
        )
        self._shells: list[list[AffineWeylElt]] = [[self.identity]]
        self._seen: set = {self.identity.key()}
        self._word_cache: dict = {self.identity.key(): ()}

    # -- reflection matrices ------------------------------------------------

    def _finite_reflection_matrix(self, root) -> IntMat:
        f = self.data.finite
        n = f.rank
        wcoords = f.root_to_weight(root)
        cor = f.coroot_of(root)
        s = [[0] * n for _ in range(n)]
        for j in range(n):
            for k in range(n):
                v = (1 if k == j else 0) - cor[j] * wcoords[k]
                assert v.denominator == 1
                s[k][j] = int(v)
        return _int_mat(s)

    # -- actions --------------------------------------------------------------

    def act_dot_weight(self, w: AffineWeylElt, m) -> Vec:
        return mat_vec(w.mat, vec(m))

    def act_dot_coweight(self, w: AffineWeylElt, h) -> Vec:
        return tuple(dot(col, h) for col in zip(*w.inv_mat))

    def translation(self, h) -> AffineWeylElt:
        eye = _identity(self._n)
        return AffineWeylElt(tuple(int(x) for x in h), eye, eye)

    def act_on_weight(self, w: AffineWeylElt, lam: AffineWeight) -> AffineWeight:
        """wdot first, then t_h: (x, l, b) -> (x + l nu(h), l, b - <h,x> - l|h|^2/2)."""
        f = self.data.finite
        x = self.act_dot_weight(w, lam.dot_part)
        if all(c == 0 for c in w.h):
            return AffineWeight(x, lam.level, lam.delta_coeff)
        h = vec(w.h)
        nu_h = f.nu_coweight_to_weight(h)
        new_dot = vec_add(x, vec_scale(lam.level, nu_h))
        new_b = lam.delta_coeff - dot(h, x) - lam.level * f.coweight_norm2(h) / 2
        return AffineWeight(new_dot, lam.level, new_b)

    def act_on_coweight(self, w: AffineWeylElt, tau: AffineCoweight) -> AffineCoweight:
        """wdot first, then t_h: x + k d + l c -> x + k h + k d
        + (l - (x,h) - k |h|^2 / 2) c."""
        f = self.data.finite
        x = self.act_dot_coweight(w, tau.dot_part)
        if all(c == 0 for c in w.h):
            return AffineCoweight(x, tau.c_coeff, tau.d_coeff)
        h = vec(w.h)
        k = tau.d_coeff
        new_dot = vec_add(x, vec_scale(k, h))
        new_c = tau.c_coeff - f.coweight_form(x, h) - k * f.coweight_norm2(h) / 2
        return AffineCoweight(new_dot, new_c, k)

    def act_on_root(self, w: AffineWeylElt, root: AffineWeight) -> AffineWeight:
        return self.act_on_weight(w, root)

    # -- real roots -------------------------------------------------------------

    def simple_root(self, i: int) -> AffineWeight:
        return self.data.simple_roots[i]

    def root_is_positive(self, root: AffineWeight) -> bool:
        n = root.delta_coeff
        assert n.denominator == 1
        if n != 0:
            return n > 0
        coords = self.data.dot_root_coords(root)
        pos = all(c >= 0 for c in coords)
        neg = all(c <= 0 for c in coords)
        assert pos != neg, "not a real root"
        return pos

    def reflection_from_root(self, root: AffineWeight) -> AffineWeylElt:
        """s_{a + n delta} = t_{-n a_vee} s_a for a finite root a."""
        f = self.data.finite
        coords = self.data.dot_root_coords(root)
        assert all(c.denominator == 1 for c in coords)
        int_coords = tuple(int(c) for c in coords)
        cor = f.coroot_of(int_coords)
        n = root.delta_coeff
        h = tuple(int(-n * x) for x in cor)
        s = self._finite_reflection_matrix(int_coords)
        return AffineWeylElt(h, s, s)

    def affine_coroot(self, root: AffineWeight) -> AffineCoweight:
        """Coroot of a + n delta: coroot(a) + (2n/(a,a)) c."""
        f = self.data.finite
        coords = self.data.dot_root_coords(root)
        cor = f.coroot_of(tuple(coords))
        norm2 = f.root_norm2(tuple(coords))
        return AffineCoweight(vec(cor), 2 * root.delta_coeff / norm2, Fraction(0))

    def as_reflection_root(self, t: AffineWeylElt) -> AffineWeight | None:
        """If t is the reflection in a positive real root, return that root."""
        f = self.data.finite
        fin_root = self._reflection_roots().get(t.mat)
        if fin_root is None:
            return None
        cor = f.coroot_of(fin_root)
        # A reflection has t.h = -n * coroot(fin_root) for some integer n.
        j = next((j for j, c in enumerate(cor) if c != 0), None)
        n = Fraction(0) if j is None else Fraction(-t.h[j]) / cor[j]
        if n.denominator != 1:
            return None
        if tuple(-n * c for c in cor) != tuple(Fraction(x) for x in t.h):
            return None
        root = AffineWeight(f.root_to_weight(fin_root), Fraction(0), n)
        return root if self.root_is_positive(root) else -1 * root

    @lru_cache(maxsize=None)
    def _reflection_roots(self) -> dict:
        f = self.data.finite
        return {self._finite_reflection_matrix(r): r for r in f.positive_roots}

    # -- length, words, Bruhat order ----------------------------------------------

    def length(self, w: AffineWeylElt) -> int:
        """l(t_h wdot) = sum over finite positive roots a of |<h,a>| when
        wdot^{-1} a > 0 and |<h,a> - 1| when wdot^{-1} a < 0."""
        f = self.data.finite
        total = 0
        h = vec(w.h)
        for root in f.positive_roots:
            m = f.root_to_weight(root)
            val = dot(h, m)
            assert val.denominator == 1
            pre = mat_vec(w.inv_mat, m)
            rc = f.weight_to_root(pre)
            positive = all(c >= 0 for c in rc)
            total += abs(int(val)) if positive else abs(int(val) - 1)
        return total

    def left_descent(self, w: AffineWeylElt, i: int) -> bool:
        root = self.act_on_root(w.inverse(), self.simple_root(i))
        return not self.root_is_positive(root)

    def right_descent(self, w: AffineWeylElt, i: int) -> bool:
        root = self.act_on_root(w, self.simple_root(i))
        return not self.root_is_positive(root)

    def reduced_word(self, w: AffineWeylElt) -> tuple[int, ...]:
        key = w.key()
        cached = self._word_cache.get(key)
        if cached is not None:
            return cached
        word: list[int] = []
        x = w
        while not x.is_identity():
            i = next(j for j in range(self._n + 1) if self.left_descent(x, j))
            word.append(i)
            x = self.generators[i] * x
        out = tuple(word)
        self._word_cache[key] = out
        return out

    def from_word(self, word) -> AffineWeylElt:
        x = self.identity
        for i in word:
            x = x * self.generators[i]
        return x

    def word_str(self, w: AffineWeylElt) -> str:
        return ",".join(str(i) for i in self.reduced_word(w))

    def bruhat_leq(self, u: AffineWeylElt, v: AffineWeylElt) -> bool:
        """Subword criterion walked along a fixed reduced word of v: peel the
        leading letter i of v; recurse on (s_i u, s_i v) when i is a left
        descent of u, on (u, s_i v) otherwise."""
        lu, lv = self.length(u), self.length(v)
        wv = self.reduced_word(v)
        while True:
            if lu > lv:
                return False
            if lu == 0:
                return True
            if lu == lv:
                return u.key() == self.from_word(wv).key()
            i = wv[0]
            wv = wv[1:]
            lv -= 1
            if self.left_descent(u, i):
                u = self.generators[i] * u
                lu -= 1

    # -- enumeration -----------------------------------------------------------

    def shell(self, length: int) -> list[AffineWeylElt]:
        """All elements of exactly the given length (BFS layer, cached)."""
        while len(self._shells) <= length:
            prev = self._shells[-1]
            nxt = []
            for w in prev:
                base_word = self._word_cache[w.key()]
                for i in range(self._n + 1):
                    x = w * self.generators[i]
                    k = x.key()
                    if k in self._seen:
                        continue
                    self._seen.add(k)
                    self._word_cache[k] = base_word + (i,)
                    nxt.append(x)
            self._shells.append(nxt)
        return self._shells[length]

    def ball(self, max_len: int) -> list[AffineWeylElt]:
        out: list[AffineWeylElt] = []
        for L in range(max_len + 1):
            out.extend(self.shell(L))
        return out

    def canonical_key(self, w: AffineWeylElt):
        word = self.reduced_word(w)
        return (len(word), word)

    # -- parabolic machinery -----------------------------------------------------

    def is_min_rep(self, w: AffineWeylElt, parabolic) -> bool:
        """w in W^P iff w(alpha_j) > 0 for every j in Delta(P)."""
        return all(
            self.root_is_positive(self.act_on_root(w, self.simple_root(j)))
            for j in parabolic
        )

    def maximal_parabolic(self, i: int) -> frozenset[int]:
        return frozenset(j for j in range(self._n + 1) if j != i)

    def enumerate_min_reps(self, parabolic, max_len: int) -> list[AffineWeylElt]:
        par = frozenset(parabolic)
        return [w for w in self.ball(max_len) if self.is_min_rep(w, par)]

    def min_rep_of_coset(self, w: AffineWeylElt, parabolic):
        """Minimal representative of w W_P and the word peeled off the right."""
        par = tuple(parabolic)
        peeled: list[int] = []
        x = w
        while True:
            j = next((j for j in par if self.right_descent(x, j)), None)
            if j is None:
                return x, tuple(reversed(peeled))
            x = x * self.generators[j]
            peeled.append(j)

    def coset_factorize(self, w: AffineWeylElt, sub_parabolic, parabolic):
        """Factor w in W^P as wbar * wtilde with wbar in W^Q and wtilde in
        W_Q^P, for P inside Q; lengths add."""
        subp = frozenset(sub_parabolic)
        par = frozenset(parabolic)
        if not subp <= par:
            raise ValueError("sub_parabolic must be contained in parabolic")
        if not self.is_min_rep(w, subp):
            raise ValueError("element is not minimal for the inner parabolic")
        wbar, word = self.min_rep_of_coset(w, par)
        wtilde = self.from_word(word)
        assert self.length(w) == self.length(wbar) + self.length(wtilde)
        assert self.is_min_rep(wtilde, subp)
        return wbar, wtilde

    # -- inversion sets -----------------------------------------------------------

    def inversion_set(self, w: AffineWeylElt) -> list[AffineWeight]:
        """Phi_w = w^{-1} Phi^+ intersect Phi^-, listed as l(w) negative real
        roots via suffix products of a reduced word."""
        word = self.reduced_word(w)
        out: list[AffineWeight] = []
        suffix = self.identity
        for i in reversed(word):
            beta = self.act_on_root(suffix, self.simple_root(i))
            out.append(-1 * beta)
            suffix = suffix * self.generators[i]
        out.reverse()
        return out


@lru_cache(maxsize=None)
def weyl_ops(label: str) -> WeylGroupOps:
    from .affine import build_affine

    return WeylGroupOps(build_affine(label))
