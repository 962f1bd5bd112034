"""Chevalley-basis Lie algebras over GF(p) and their distinguished subalgebras.

Basis order: e_alpha for the positive roots (in ``RootSystem.roots`` order),
then e_-alpha in the same order, then the simple coroots h_1..h_n.

Structure constants come from the extraspecial-pair algorithm.  Positive
roots are totally ordered by (height, reverse-lex coefficients); for each
non-simple positive root xi the extraspecial pair (a, b) has a minimal with
xi - a a positive root, and N_{a,b} = +(r+1) where b - r a is the bottom of
the a-string through b.  The remaining constants follow from the four-root
identity, N_{-x,-y} = -N_{x,y}, and the cyclic rule for mixed signs.  The
exhaustive Jacobi check in ``IntegralLie.check_jacobi`` guards all of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .exactfield import Field, field_create
from .exactla import Subspace, kernel, rref, span
from .rootdata import RootSystem, build_root_system, special_characteristic, weyl_orbit


class AlgebraError(ValueError):
    pass


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _is_pos(a):
    return sum(a) > 0


class IntegralLie:
    """Structure constants of the Chevalley Z-form."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.roots = rs.roots
        self.n_roots = len(self.roots)
        self.dim = self.n_roots + rs.rank
        self._order = {r: i for i, r in enumerate(rs.positive_roots)}
        self._npos: dict = {}
        self.extraspecial: dict = {}
        self._build_positive()

    def index(self, root) -> int:
        return self.rs.root_index[tuple(root)]

    def h_index(self, i: int) -> int:
        return self.n_roots + i

    @cached_property
    def labels(self) -> list[str]:
        out = []
        for r in self.roots:
            sign = "e" if _is_pos(r) else "f"
            out.append(sign + "".join(str(abs(c)) for c in r))
        return out + [f"h{i + 1}" for i in range(self.rs.rank)]

    def _string_bottom(self, a, b) -> int:
        r = 0
        cur = b
        while True:
            cur = tuple(x - y for x, y in zip(cur, a))
            if not self.rs.is_root(cur):
                return r
            r += 1

    def N(self, x, y) -> int:
        x, y = tuple(x), tuple(y)
        s = _add(x, y)
        if not self.rs.is_root(s):
            return 0
        px, py = _is_pos(x), _is_pos(y)
        if px and py:
            return self._npos[(x, y)]
        if not px and not py:
            return -self._npos[(_neg(x), _neg(y))]
        L = self.rs.length2
        w = _neg(s)
        if _is_pos(y) == _is_pos(w):
            val = Fraction(L(w), L(x)) * self.N(y, w)
        else:
            val = Fraction(L(w), L(y)) * self.N(w, x)
        if val.denominator != 1:
            raise AlgebraError(f"non-integral structure constant at {x}, {y}")
        return int(val)

    def _build_positive(self):
        rs = self.rs
        L = rs.length2
        pos = rs.positive_roots
        posset = set(pos)
        for xi in pos:
            if sum(xi) == 1:
                continue
            pairs = []
            for a in pos:
                b = tuple(x - y for x, y in zip(xi, a))
                if b in posset and self._order[a] < self._order[b]:
                    pairs.append((a, b))
            a0, b0 = pairs[0]
            n0 = self._string_bottom(a0, b0) + 1
            self.extraspecial[xi] = (a0, b0, n0)
            self._npos[(a0, b0)] = n0
            self._npos[(b0, a0)] = -n0
            for g, d in pairs[1:]:
                total = Fraction(0)
                bg = _add(b0, _neg(g))
                if rs.is_root(bg):
                    total += Fraction(self.N(b0, _neg(g)) * self.N(a0, _neg(d)), L(bg))
                ag = _add(a0, _neg(g))
                if rs.is_root(ag):
                    total += Fraction(self.N(_neg(g), a0) * self.N(b0, _neg(d)), L(ag))
                val = Fraction(L(xi), n0) * total
                if val.denominator != 1:
                    raise AlgebraError("non-integral structure constant")
                self._npos[(g, d)] = int(val)
                self._npos[(d, g)] = -int(val)

    @cached_property
    def table(self) -> np.ndarray:
        """T[i, j, k] = coefficient of b_k in [b_i, b_j]."""
        rs = self.rs
        d = self.dim
        t = np.zeros((d, d, d), dtype=np.int64)
        for i, a in enumerate(self.roots):
            for j, b in enumerate(self.roots):
                s = _add(a, b)
                if not any(s):
                    for m, c in enumerate(rs.coroot_coords(a)):
                        t[i, j, self.h_index(m)] = c
                elif rs.is_root(s):
                    t[i, j, self.index(s)] = self.N(a, b)
            for m in range(rs.rank):
                v = int(rs.cartan[m] @ np.asarray(a))
                t[self.h_index(m), i, i] = v
                t[i, self.h_index(m), i] = -v
        t.setflags(write=False)
        return t

    @cached_property
    def ad(self) -> np.ndarray:
        """ad[i] is the matrix of ad b_i acting on column vectors."""
        return np.ascontiguousarray(np.swapaxes(self.table, 1, 2))

    def check_jacobi(self) -> bool:
        """ad is a homomorphism on every basis pair, over Z."""
        t = self.table.astype(np.float64)
        ad = self.ad.astype(np.float64)
        for i in range(self.dim):
            lhs = np.tensordot(t[i], ad, axes=([1], [0]))
            rhs = ad[i] @ ad - ad @ ad[i]
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def divided_powers(self, root) -> list[np.ndarray]:
        """[(ad e_a)^k / k! for k = 0, 1, ...] until zero, over Z."""
        a = self.ad[self.index(root)]
        out = [np.eye(self.dim, dtype=np.int64)]
        cur = out[0]
        k = 1
        while True:
            cur = a @ cur
            if not cur.any():
                return out
            fact = 1
            for j in range(2, k + 1):
                fact *= j
            if np.any(cur % fact):
                raise AlgebraError("divided power is not integral")
            out.append(cur // fact)
            k += 1

    # integral realizations -------------------------------------------------

    def extend_simple_action(self, e_simple, f_simple, weights) -> np.ndarray:
        """Full integral action from the simple e_i, f_i and a weight basis.

        Root vectors are built recursively along extraspecial pairs.
        """
        rs = self.rs
        dimv = len(weights)
        mats = np.zeros((self.dim, dimv, dimv), dtype=np.int64)
        wts = np.asarray(weights, dtype=np.int64).reshape(dimv, rs.rank)
        for i in range(rs.rank):
            simple = tuple(int(i == j) for j in range(rs.rank))
            mats[self.index(simple)] = e_simple[i]
            mats[self.index(_neg(simple))] = f_simple[i]
            mats[self.h_index(i)] = np.diag(wts[:, i])
        for xi in rs.positive_roots:
            if sum(xi) == 1:
                continue
            a, b, n = self.extraspecial[xi]
            for sgn in (1, -1):
                ra = mats[self.index(a if sgn > 0 else _neg(a))]
                rb = mats[self.index(b if sgn > 0 else _neg(b))]
                comm = ra @ rb - rb @ ra
                nn = n if sgn > 0 else -n
                if np.any(comm % nn):
                    raise AlgebraError("root vector is not integral")
                mats[self.index(xi if sgn > 0 else _neg(xi))] = comm // nn
        return mats

    def check_representation(self, mats, rng=None, trials: int = 3) -> bool:
        """rho([x, b]) = [rho x, rho b] for simple generators x and all b.

        Exact for small modules; randomized over integer vectors otherwise.
        """
        rs = self.rs
        gens = []
        for i in range(rs.rank):
            simple = tuple(int(i == j) for j in range(rs.rank))
            gens += [self.index(simple), self.index(_neg(simple))]
        m = mats.astype(np.float64)
        dimv = m.shape[1]
        t = self.table.astype(np.float64)
        if dimv <= 64:
            for g in gens:
                lhs = np.tensordot(t[g], m, axes=([1], [0]))
                rhs = m[g] @ m - m @ m[g]
                if not np.array_equal(lhs, rhs):
                    return False
            return True
        rng = rng or np.random.default_rng(0)
        for _ in range(trials):
            v = rng.integers(-(2**12), 2**12, size=dimv).astype(np.float64)
            mv = m @ v
            for g in gens:
                lhs = np.tensordot(t[g], mv, axes=([1], [0]))
                rhs = m[g] @ mv.T
                rhs = rhs.T - m @ (m[g] @ v)
                if not np.array_equal(lhs, rhs):
                    return False
        return True

    def minuscule_action(self, weight) -> tuple[np.ndarray, list]:
        """Integral module with weights one Weyl orbit, all coefficients 1."""
        rs = self.rs
        weights = weyl_orbit(rs, weight)
        pos = {w: i for i, w in enumerate(weights)}
        dimv = len(weights)
        es, fs = [], []
        for i in range(rs.rank):
            e = np.zeros((dimv, dimv), dtype=np.int64)
            f = np.zeros((dimv, dimv), dtype=np.int64)
            ai = tuple(int(x) for x in rs.cartan[:, i])
            for w, j in pos.items():
                if w[i] == 1:
                    f[pos[tuple(x - y for x, y in zip(w, ai))], j] = 1
                elif w[i] == -1:
                    e[pos[_add(w, ai)], j] = 1
                elif w[i] not in (0,):
                    raise AlgebraError("weight is not minuscule")
            es.append(e)
            fs.append(f)
        mats = self.extend_simple_action(es, fs, weights)
        if not self.check_representation(mats):
            raise AlgebraError("minuscule construction failed")
        return mats, weights

    def quasi_minuscule_action(self) -> tuple[np.ndarray, list]:
        """Weyl module for the highest short root: short roots plus zero weights."""
        rs = self.rs
        short = [r for r in rs.roots if rs.is_short(r)]
        weights = [rs.root_to_weight(r) for r in short if _is_pos(r)]
        weights += [rs.root_to_weight(r) for r in short if not _is_pos(r)]
        simple_short = [i for i in rs.short_nodes]
        zeros = [(0,) * rs.rank for _ in simple_short]
        weights = weights[: len(weights) // 2] + zeros + weights[len(weights) // 2 :]
        dimv = len(weights)
        nonzero = {w: i for i, w in enumerate(weights) if any(w)}
        zero_of = {node: weights.index((0,) * rs.rank) + k for k, node in enumerate(simple_short)}
        es, fs = [], []
        for i in range(rs.rank):
            e = np.zeros((dimv, dimv), dtype=np.int64)
            f = np.zeros((dimv, dimv), dtype=np.int64)
            ai = tuple(int(x) for x in rs.cartan[:, i])
            for w, j in nonzero.items():
                if w == ai:
                    f[zero_of[i], j] = 1
                    e[j, zero_of[i]] = 2
                elif w == _neg(ai):
                    e[zero_of[i], j] = 1
                    f[j, zero_of[i]] = 2
                elif w[i] == 1:
                    f[nonzero[tuple(x - y for x, y in zip(w, ai))], j] = 1
                elif w[i] == -1:
                    e[nonzero[_add(w, ai)], j] = 1
            es.append(e)
            fs.append(f)
        if len(simple_short) != 1:
            raise AlgebraError("quasi-minuscule builder needs a unique short simple root")
        mats = self.extend_simple_action(es, fs, weights)
        if not self.check_representation(mats):
            raise AlgebraError("quasi-minuscule construction failed")
        return mats, weights


@lru_cache(maxsize=None)
def integral_lie(family: str, rank: int) -> IntegralLie:
    return IntegralLie(build_root_system(family, rank))


def _faithful_integral(il: IntegralLie):
    rs = il.rs
    n = rs.rank
    if rs.family == "B":
        return il.minuscule_action(tuple(int(i == 0) for i in range(n)))
    if rs.family == "C":
        return il.minuscule_action(tuple(int(i == n - 1) for i in range(n)))
    weights = [rs.root_to_weight(r) for r in rs.roots] + [(0,) * n] * n
    return il.ad.copy(), weights


@dataclass(frozen=True)
class Subalg:
    name: str
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


class LieAlgebra:
    """Chevalley-basis Lie algebra over GF(p)."""

    def __init__(self, rs: RootSystem, p: int):
        self.rs = rs
        self.p = p
        self.field = field_create(p)
        self.integral = integral_lie(rs.family, rs.rank)
        self.dim = self.integral.dim
        self.labels = self.integral.labels
        self.table = self.integral.table % p
        self.ad = self.integral.ad % p
        self.special = p == special_characteristic(rs.family)

    def __repr__(self):
        return f"LieAlgebra({self.rs.family}{self.rs.rank}, p={self.p}, dim={self.dim})"

    @property
    def n_roots(self) -> int:
        return self.integral.n_roots

    def root_index(self, root) -> int:
        return self.integral.index(root)

    def h_index(self, i: int) -> int:
        return self.integral.h_index(i)

    def basis_vector(self, i: int, field: Field | None = None) -> np.ndarray:
        f = field or self.field
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return f.lift(v)

    def e(self, root, field=None):
        return self.basis_vector(self.root_index(root), field)

    def h(self, i: int, field=None):
        return self.basis_vector(self.h_index(i), field)

    def coroot(self, root, field=None) -> np.ndarray:
        """h_alpha = [e_alpha, e_-alpha] as an element."""
        v = np.zeros(self.dim, dtype=np.int64)
        for m, c in enumerate(self.rs.coroot_coords(root)):
            v[self.h_index(m)] = c % self.p
        return (field or self.field).lift(v)

    def random_element(self, rng, field=None) -> np.ndarray:
        return (field or self.field).random(rng, (self.dim,))

    def _field_of(self, x, field):
        if field is not None:
            return field
        if x.ndim == 1:
            return self.field
        raise AlgebraError("extension-field elements need an explicit field")

    def ad_matrix(self, x, field=None) -> np.ndarray:
        """Matrix of ad x on column vectors."""
        f = self._field_of(x, field)
        return f.lin_apply(np.transpose(self.table, (2, 1, 0)), x)

    def bracket(self, x, y, field=None) -> np.ndarray:
        f = self._field_of(x, field)
        m = self.ad_matrix(x, f)
        return f.matmul(m, y[:, None] if y.ndim == 1 else y[:, None, :])[:, 0]

    @cached_property
    def _faithful(self):
        mats, weights = _faithful_integral(self.integral)
        mats = mats % self.p
        flat = mats.reshape(self.dim, -1)
        red, pivots = rref(flat, self.field)
        if len(pivots) != self.dim:
            raise AlgebraError("defining realization is not faithful mod p")
        sel = flat[:, pivots]
        inv = _prime_inverse(sel, self.field)
        return mats, weights, pivots, inv

    def rep_matrix(self, x, field=None) -> np.ndarray:
        f = self._field_of(x, field)
        mats = self._faithful[0]
        return f.lin_apply(np.transpose(mats, (1, 2, 0)), x)

    def p_power(self, x, field=None) -> np.ndarray:
        """x^[p], read back from the p-th power in the defining realization."""
        f = self._field_of(x, field)
        m = self.rep_matrix(x, f)
        out = m
        for _ in range(self.p - 1):
            out = f.matmul(out, m)
        _, _, pivots, inv = self._faithful
        dimv = m.shape[0]
        flat = out.reshape((dimv * dimv,) + f.element_shape)[pivots]
        y = f.lin_apply(inv.T, flat)
        if not np.array_equal(self.rep_matrix(y, f), out):
            raise AlgebraError("p-th power left the image of the realization")
        return y

    def is_closed(self, space: Subspace, rng=None, trials: int = 2) -> bool:
        """Bracket closure; randomized (Schwartz-Zippel) over extension fields."""
        f = space.field
        b = space.basis
        if not f.is_prime and space.dim > 1:
            rng = rng or np.random.default_rng(7)
            for _ in range(trials):
                c = f.random(rng, (2, space.dim))
                x, y = f.matmul(c, b)
                if not space.contains(self.bracket(x, y, f)):
                    return False
            return True
        for x in b:
            br = f.matmul(b, np.swapaxes(self.ad_matrix(x, f), 0, 1))
            if not space.contains(br):
                return False
        return True


def _prime_inverse(m: np.ndarray, field: Field) -> np.ndarray:
    n = m.shape[0]
    aug = np.concatenate([m % field.p, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots = rref(aug, field)
    if pivots[: n] != list(range(n)):
        raise AlgebraError("matrix is singular")
    return red[:, n:]


def build_lie_algebra(family: str, rank: int, p: int | None = None) -> LieAlgebra:
    return _build_lie_algebra(family, rank, p if p is not None else special_characteristic(family))


@lru_cache(maxsize=None)
def _build_lie_algebra(family: str, rank: int, p: int) -> LieAlgebra:
    return LieAlgebra(build_root_system(family, rank), p)


def classify_element(g: LieAlgebra, x, field=None) -> str:
    f = g._field_of(x, field)
    if f.is_zero(x).all():
        return "nilpotent"
    powers = []
    cur = x
    for _ in range(g.dim + 1):
        cur = g.p_power(cur, f)
        if f.is_zero(cur).all():
            return "nilpotent"
        if powers and np.array_equal(cur, powers[0]):
            break
        powers.append(cur)
        if len(powers) > 1 and span(np.stack(powers[:-1]), f, g.dim).contains(cur):
            break
    if np.array_equal(powers[0], x):
        return "toral"
    if span(np.stack(powers), f, g.dim).contains(x):
        return "semisimple"
    return "other"


def generated_subalgebra(g: LieAlgebra, seeds, field=None, name: str = "s") -> Subalg:
    """Smallest bracket-closed subspace containing the seeds."""
    seeds = [np.asarray(s) for s in seeds]
    f = g._field_of(seeds[0], field) if seeds else g.field
    space = span(np.stack(seeds), f, g.dim) if seeds else Subspace.zero(f, g.dim)
    ads = [np.swapaxes(g.ad_matrix(s, f), 0, 1) for s in seeds]
    while True:
        new = [f.matmul(space.basis, a) for a in ads]
        grown = space + span(np.concatenate(new), f, g.dim) if space.dim else space
        if grown.dim == space.dim:
            return Subalg(name, space)
        space = grown


def generated_ideal(g: LieAlgebra, seeds, field=None) -> Subspace:
    """Smallest ideal containing the seeds."""
    seeds = [np.asarray(s) for s in seeds]
    f = g._field_of(seeds[0], field)
    space = span(np.stack(seeds), f, g.dim)
    ads = f.lift(np.swapaxes(g.ad, 1, 2) % g.p)  # row-vector action of each basis element
    while space.dim:
        new = np.concatenate([f.matmul(space.basis, a) for a in ads])
        grown = space + span(new, f, g.dim)
        if grown.dim == space.dim:
            break
        space = grown
    return space


def centralizer_in_g(g: LieAlgebra, x, field=None) -> Subalg:
    f = g._field_of(x, field)
    return Subalg("c_g(x)", kernel(g.ad_matrix(x, f), f))


def center(g: LieAlgebra) -> Subspace:
    stacked = np.transpose(g.table, (1, 2, 0)).reshape(g.dim * g.dim, g.dim)
    return kernel(stacked, g.field)


def _basis_span(g: LieAlgebra, indices) -> Subspace:
    rows = np.zeros((len(indices), g.dim), dtype=np.int64)
    for r, i in enumerate(indices):
        rows[r, i] = 1
    return Subspace(g.field, g.dim, rows)


def maximal_submodule(g: LieAlgebra) -> Subspace:
    """Largest G-submodule of g missing the highest-root line.

    The top functional (coefficient of e_theta) is closed under transposed
    divided powers of positive root vectors; the common kernel is the answer.
    """
    f = g.field
    il = g.integral
    theta = g.rs.highest_root()
    ops = []
    for a in g.rs.positive_roots:
        for d in il.divided_powers(a)[1:]:
            ops.append((d % g.p).T)
    top = np.zeros(g.dim, dtype=np.int64)
    top[il.index(theta)] = 1
    funcs = Subspace(f, g.dim, top)
    while True:
        new = np.concatenate([f.matmul(funcs.basis, op.T) for op in ops])
        grown = funcs + Subspace(f, g.dim, new)
        if grown.dim == funcs.dim:
            break
        funcs = grown
    return kernel(funcs.basis, f)


def _require_special(g: LieAlgebra):
    if not g.special:
        raise AlgebraError(
            f"p = {g.p} is not the special characteristic of {g.rs.family}"
        )


def distinguished_subalgebras(g: LieAlgebra) -> dict:
    _require_special(g)
    rs = g.rs
    cartan = [g.h_index(i) for i in range(rs.rank)]
    long_idx = [i for i, r in enumerate(rs.roots) if rs.is_long(r)]
    short_idx = [i for i, r in enumerate(rs.roots) if rs.is_short(r)]
    out = {
        "g_long": Subalg("g_long", _basis_span(g, cartan + long_idx)),
        "g_short": Subalg("g_short", _basis_span(g, cartan + short_idx)),
        "n": generated_subalgebra(
            g, [g.basis_vector(i) for i in short_idx], name="n"
        ),
        "z": Subalg("z", center(g)),
        "m": Subalg("m", maximal_submodule(g)),
    }
    for s in out.values():
        if not g.is_closed(s.space):
            raise AlgebraError(f"{s.name} is not a subalgebra")
    return out


def center_of(g: LieAlgebra, space: Subspace) -> Subspace:
    """Center of a subalgebra given as a subspace."""
    f = g.field
    b = space.basis
    if space.dim == 0:
        return space
    # coefficients c with [sum c_i b_i, b_j] = 0 for all j
    blocks = []
    for y in b:
        ady = g.ad_matrix(y)  # [y, x] = ady x
        blocks.append(f.matmul(ady, b.T))
    coeffs = kernel(np.concatenate(blocks), f)
    if coeffs.dim == 0:
        return Subspace.zero(f, g.dim)
    return Subspace(f, g.dim, f.matmul(coeffs.basis, b))


def derived(g: LieAlgebra, space: Subspace) -> Subspace:
    b = space.basis
    f = g.field
    rows = [f.matmul(b, g.ad_matrix(x).T) for x in b]
    return span(np.concatenate(rows), f, g.dim)


# very special isogeny -------------------------------------------------------

_DUAL = {"B": "C", "C": "B", "F4": "F4", "G2": "G2"}


def _sigma(family: str, n: int, i: int) -> int:
    if family in ("B", "C"):
        return i
    return n - 1 - i


@dataclass(frozen=True)
class Isogeny:
    source: LieAlgebra
    target: LieAlgebra
    matrix: np.ndarray  # dim target x dim source
    root_map: dict

    def __call__(self, x):
        return self.source.field.matmul(self.matrix, x[:, None])[:, 0]

    def kernel(self) -> Subspace:
        return kernel(self.matrix, self.source.field)

    def image(self) -> Subspace:
        return span(self.matrix.T, self.target.field, self.target.dim)

    def is_homomorphism(self) -> bool:
        p = self.source.p
        d = self.matrix.astype(np.float64)
        ts = self.source.table.astype(np.float64)
        tt = self.target.table.astype(np.float64)
        lhs = np.tensordot(ts, d, axes=([2], [1])) % p
        tmp = np.tensordot(d, tt, axes=([0], [0]))  # (i, b, k)
        rhs = np.tensordot(tmp, d, axes=([1], [0]))  # (i, k, j)
        rhs = np.swapaxes(rhs, 1, 2) % p
        return bool(np.array_equal(lhs, rhs))


def very_special_differential(g: LieAlgebra) -> Isogeny:
    _require_special(g)
    rs = g.rs
    n = rs.rank
    p = g.p
    tgt = build_lie_algebra(_DUAL[rs.family], n, p)
    trs = tgt.rs
    scale = [Fraction(1) if i in rs.long_nodes else Fraction(1, p) for i in range(n)]

    def psi(root):
        out = [Fraction(0)] * n
        for i, c in enumerate(root):
            out[_sigma(rs.family, n, i)] += c * scale[i]
        if any(x.denominator != 1 for x in out):
            raise AlgebraError("long root has non-integral image")
        img = tuple(int(x) for x in out)
        if not trs.is_root(img) or not trs.is_short(img):
            raise AlgebraError(f"{root} does not map to a short root")
        return img

    long_roots = [r for r in rs.roots if rs.is_long(r)]
    root_map = {r: psi(r) for r in long_roots}
    il, tl = g.integral, tgt.integral
    longset = set(long_roots)
    signs = {}
    for sgn in (1, -1):
        side = [r for r in long_roots if _is_pos(r) == (sgn > 0)]
        sums = {_add(a, b) for a in side for b in side if _add(a, b) in longset}
        for r in side:
            if r not in sums:
                signs[r] = 1
        changed = True
        while changed:
            changed = False
            for a in side:
                for b in side:
                    s = _add(a, b)
                    if a in signs and b in signs and s in longset and s not in signs:
                        ns = il.N(a, b) % p
                        if ns == 0:
                            continue
                        nt = tl.N(root_map[a], root_map[b])
                        signs[s] = (signs[a] * signs[b] * nt * pow(ns, -1, p)) % p
                        changed = True
    if len(signs) != len(long_roots):
        raise AlgebraError("could not fix isogeny signs")
    mat = np.zeros((tgt.dim, g.dim), dtype=np.int64)
    for r in long_roots:
        mat[tgt.root_index(root_map[r]), g.root_index(r)] = signs[r] % p
    for i in rs.long_nodes:
        mat[tgt.h_index(_sigma(rs.family, n, i)), g.h_index(i)] = 1
    iso = Isogeny(g, tgt, mat, root_map)
    if not iso.is_homomorphism():
        raise AlgebraError("isogeny differential is not a homomorphism")
    return iso


def ad_one_param(g: LieAlgebra, root, t) -> np.ndarray:
    """Matrix of Ad x_alpha(t) = sum_k t^k (ad e_alpha)^k / k!."""
    f = t.field
    if f.p != g.p:
        raise AlgebraError("field characteristic mismatch")
    out = f.zeros((g.dim, g.dim))
    power = f.one
    for d in g.integral.divided_powers(root):
        out = f.add(out, f.scale(power, f.lift(d % g.p)))
        power = power * t
    return out
