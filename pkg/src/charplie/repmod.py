"""Representations of Chevalley Lie algebras over GF(p).

Every module carries a weight basis: basis vector i has torus weight
``weights[i]`` (fundamental-weight coordinates).  Constructions preserve
this, and subspaces generated from weight vectors have RREF bases made of
weight vectors, so sub- and quotient modules keep a weight basis too.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .chevalley import (
    Isogeny,
    LieAlgebra,
    Subalg,
    build_lie_algebra,
    distinguished_subalgebras,
    very_special_differential,
)
from .exactla import Subspace, kernel, rref
from .rootdata import is_dominant, is_restricted, restricted_split, split_weight

SPIN_RANK_CAP = 12
AMBIENT_CAP = 1200


class ModuleError(ValueError):
    pass


class UnsupportedWeight(ModuleError):
    pass


@dataclass(eq=False)
class GModule:
    algebra: LieAlgebra
    action: np.ndarray  # (dim g, dim V, dim V) over GF(p)
    weights: list
    provenance: str
    highest_weight: tuple | None = None
    hw_vector: int | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def field(self):
        return self.algebra.field

    def __repr__(self):
        return f"GModule(dim={self.dim}, {self.provenance})"

    def weight_decomposition(self) -> dict:
        out: dict = {}
        for i, w in enumerate(self.weights):
            out.setdefault(tuple(w), []).append(i)
        return out

    def rho(self, x, field=None) -> np.ndarray:
        """Matrix of an arbitrary element x (coordinates over ``field``)."""
        f = field or self.field
        return f.lin_apply(np.transpose(self.action, (1, 2, 0)), x)

    def raising(self):
        g = self.algebra
        return [self.action[g.root_index(r)] for r in g.rs.positive_roots]

    def lowering(self):
        g = self.algebra
        n = len(g.rs.positive_roots)
        return [self.action[n + i] for i in range(n)]

    def verify(self, rng=None, trials: int = 24) -> None:
        """Bracket and p-power compatibility; exact when affordable."""
        if not _respects_brackets(self, rng, trials):
            raise ModuleError(f"{self.provenance}: action does not respect brackets")
        if not _respects_p_power(self, rng, trials):
            raise ModuleError(f"{self.provenance}: action is not restricted")


def _generators(g: LieAlgebra):
    rs = g.rs
    out = []
    for i in range(rs.rank):
        s = tuple(int(i == j) for j in range(rs.rank))
        out += [g.root_index(s), g.root_index(tuple(-c for c in s))]
    return out


def _respects_brackets(mod: GModule, rng, trials) -> bool:
    g = mod.algebra
    p = g.p
    a = mod.action.astype(np.float64)
    t = g.table.astype(np.float64)
    gens = _generators(g)
    v = mod.dim
    if g.dim * v**3 * len(gens) <= 6e8:
        for i in gens:
            lhs = np.tensordot(t[i], a, axes=([1], [0])) % p
            rhs = (a[i] @ a - a @ a[i]) % p
            if not np.array_equal(lhs, rhs):
                return False
        return True
    rng = rng or np.random.default_rng(12345)
    for _ in range(trials):
        x = rng.integers(0, p, size=v).astype(np.float64)
        ax = (a @ x) % p  # (dim g, V)
        for i in gens:
            lhs = np.tensordot(t[i], ax, axes=([1], [0])) % p
            rhs = ((ax @ a[i].T) - (a @ ((a[i] @ x) % p))) % p
            if not np.array_equal(lhs, rhs):
                return False
    return True


def _respects_p_power(mod: GModule, rng, trials) -> bool:
    g = mod.algebra
    p = g.p
    a = mod.action.astype(np.float64)
    v = mod.dim
    exact = g.dim * v**3 * (p - 1) <= 6e8
    probes = [np.eye(v)] if exact else [
        (rng or np.random.default_rng(54321)).integers(0, p, size=(v, trials)).astype(np.float64)
    ]
    for x in probes:
        for i in range(g.dim):
            cur = x
            for _ in range(p):
                cur = (a[i] @ cur) % p
            # e_alpha^[p] = 0 and h_i^[p] = h_i on the Chevalley basis
            want = (a[i] @ x) % p if i >= g.n_roots else np.zeros_like(x)
            if not np.array_equal(cur, want):
                return False
    return True


def _make(g, action, weights, provenance, verify=True, **kw) -> GModule:
    mod = GModule(g, np.ascontiguousarray(action % g.p), [tuple(w) for w in weights], provenance, **kw)
    if verify:
        mod.verify()
    return mod


def _hw_index(weights, lam):
    idx = [i for i, w in enumerate(weights) if tuple(w) == tuple(lam)]
    return idx[0] if len(idx) == 1 else None


# basic modules ---------------------------------------------------------------


def trivial_module(g: LieAlgebra) -> GModule:
    zero = (0,) * g.rs.rank
    return _make(g, np.zeros((g.dim, 1, 1), dtype=np.int64), [zero], "trivial",
                 highest_weight=zero, hw_vector=0)


def adjoint_module(g: LieAlgebra) -> GModule:
    rs = g.rs
    weights = [rs.root_to_weight(r) for r in rs.roots] + [(0,) * rs.rank] * rs.rank
    theta = rs.root_to_weight(rs.highest_root())
    return _make(g, g.ad.copy(), weights, "adjoint", highest_weight=theta,
                 hw_vector=_hw_index(weights, theta))


def _fundamental(rs, node):
    return tuple(int(i == node) for i in range(rs.rank))


def spin_module(g: LieAlgebra) -> GModule:
    rs = g.rs
    if rs.family != "B":
        raise ModuleError("spin module is defined for type B")
    if rs.rank > SPIN_RANK_CAP:
        raise ModuleError(f"spin module capped at rank {SPIN_RANK_CAP}")
    lam = _fundamental(rs, 0)
    mats, weights = g.integral.minuscule_action(lam)
    return _make(g, mats, weights, f"spin(B{rs.rank})", highest_weight=lam,
                 hw_vector=_hw_index(weights, lam))


def natural_symplectic(g: LieAlgebra) -> GModule:
    rs = g.rs
    lam = _fundamental(rs, rs.rank - 1)
    mats, weights = g.integral.minuscule_action(lam)
    return _make(g, mats, weights, f"natural(C{rs.rank})", highest_weight=lam,
                 hw_vector=_hw_index(weights, lam))


def weyl_natural(g: LieAlgebra) -> GModule:
    """(2n+1)-dim orthogonal Weyl module of B_n."""
    rs = g.rs
    if rs.family != "B":
        raise ModuleError("Weyl natural module is defined for type B")
    lam = _fundamental(rs, rs.rank - 1)
    mats, weights = g.integral.quasi_minuscule_action()
    return _make(g, mats, weights, f"weyl_natural(B{rs.rank})", highest_weight=lam,
                 hw_vector=_hw_index(weights, lam))


def defining_module(g: LieAlgebra) -> GModule:
    if not g.special:
        raise ModuleError("defining module needs the special characteristic")
    fam = g.rs.family
    if fam == "C":
        return natural_symplectic(g)
    if fam == "B":
        return irreducible_head(weyl_natural(g))
    n = distinguished_subalgebras(g)["n"].space
    mod = sub(adjoint_module(g), n)
    mod.provenance = f"natural(n<{fam})"
    lam = _fundamental(g.rs, g.rs.rank - 1 if fam == "F4" else 1)
    mod.highest_weight = lam
    mod.hw_vector = _hw_index(mod.weights, lam)
    return mod


# constructions ---------------------------------------------------------------


def _same_algebra(*mods):
    g = mods[0].algebra
    for m in mods[1:]:
        if m.algebra is not g:
            raise ModuleError("modules over different algebras")
    return g


def tensor(a: GModule, b: GModule) -> GModule:
    g = _same_algebra(a, b)
    ia, ib = np.eye(a.dim, dtype=np.int64), np.eye(b.dim, dtype=np.int64)
    act = np.stack([np.kron(a.action[i], ib) + np.kron(ia, b.action[i]) for i in range(g.dim)])
    weights = [tuple(x + y for x, y in zip(u, w)) for u in a.weights for w in b.weights]
    hw = None
    if a.highest_weight is not None and b.highest_weight is not None:
        hw = tuple(x + y for x, y in zip(a.highest_weight, b.highest_weight))
    return _make(g, act, weights, f"({a.provenance} (x) {b.provenance})", highest_weight=hw)


def direct_sum(*mods: GModule) -> GModule:
    g = _same_algebra(*mods)
    dim = sum(m.dim for m in mods)
    act = np.zeros((g.dim, dim, dim), dtype=np.int64)
    pos = 0
    for m in mods:
        act[:, pos : pos + m.dim, pos : pos + m.dim] = m.action
        pos += m.dim
    weights = [w for m in mods for w in m.weights]
    names = " + ".join(m.provenance for m in mods)
    return _make(g, act, weights, f"({names})", verify=False)


def copies(mod: GModule, m: int) -> GModule:
    out = direct_sum(*([mod] * m))
    out.provenance = f"{m}*{mod.provenance}"
    return out


def dual(mod: GModule) -> GModule:
    g = mod.algebra
    act = -np.swapaxes(mod.action, 1, 2)
    weights = [tuple(-c for c in w) for w in mod.weights]
    return _make(g, act, weights, f"dual({mod.provenance})", verify=False)


def _wedge_action(mat_stack, basis, index):
    """Action on k-subsets via the Leibniz rule, signs from sorting."""
    g_dim, n, _ = mat_stack.shape
    out = np.zeros((g_dim, len(basis), len(basis)), dtype=np.int64)
    nz = [[(r, c) for r, c in zip(*np.nonzero(mat_stack[x]))] for x in range(g_dim)]
    for x in range(g_dim):
        cols: dict = {}
        for r, c in nz[x]:
            cols.setdefault(c, []).append((r, mat_stack[x, r, c]))
        for j, subset in enumerate(basis):
            for pos, c in enumerate(subset):
                for r, val in cols.get(c, ()):
                    if r != c and r in subset:
                        continue
                    new = list(subset)
                    new[pos] = r
                    # sign of the sort permutation
                    order = sorted(range(len(new)), key=lambda t: new[t])
                    inv = sum(1 for s, t in itertools.combinations(order, 2) if s > t)
                    out[x, index[tuple(sorted(new))], j] += val * (-1) ** inv
    return out


def exterior_power(mod: GModule, k: int) -> GModule:
    g = mod.algebra
    basis = list(itertools.combinations(range(mod.dim), k))
    index = {s: i for i, s in enumerate(basis)}
    act = _wedge_action(mod.action, basis, index)
    weights = [tuple(sum(mod.weights[i][c] for i in s) for c in range(g.rs.rank)) for s in basis]
    return _make(g, act, weights, f"wedge{k}({mod.provenance})")


def sym_square(mod: GModule) -> GModule:
    g = mod.algebra
    n = mod.dim
    basis = [(i, j) for i in range(n) for j in range(i, n)]
    index = {s: t for t, s in enumerate(basis)}
    act = np.zeros((g.dim, len(basis), len(basis)), dtype=np.int64)
    for x in range(g.dim):
        m = mod.action[x]
        for t, (i, j) in enumerate(basis):
            for r in np.flatnonzero(m[:, i]):
                act[x, index[tuple(sorted((r, j)))], t] += m[r, i]
            for r in np.flatnonzero(m[:, j]):
                act[x, index[tuple(sorted((i, r)))], t] += m[r, j]
    weights = [tuple(a + b for a, b in zip(mod.weights[i], mod.weights[j])) for i, j in basis]
    hw = None
    if mod.highest_weight is not None:
        hw = tuple(2 * c for c in mod.highest_weight)
    return _make(g, act, weights, f"sym2({mod.provenance})", highest_weight=hw)


def is_invariant(mod: GModule, space: Subspace) -> bool:
    if space.dim == 0:
        return True
    f = mod.field
    imgs = np.einsum("xij,sj->xsi", mod.action, space.basis).reshape(-1, mod.dim) % f.p
    return space.contains(imgs)


def _weights_of_rows(mod, space):
    return [mod.weights[c] for c in space.pivots]


def sub(mod: GModule, space: Subspace, provenance: str | None = None) -> GModule:
    """Submodule on an invariant subspace, in its RREF basis."""
    if not is_invariant(mod, space):
        raise ModuleError("subspace is not invariant")
    b = space.basis
    imgs = np.einsum("xij,sj->xis", mod.action, b) % mod.field.p  # (g, V, s)
    act = imgs[:, space.pivots, :]
    weights = _weights_of_rows(mod, space)
    for row, w in zip(b, weights):
        support = np.flatnonzero(row)
        if any(mod.weights[c] != w for c in support):
            raise ModuleError("subspace basis is not made of weight vectors")
    out = _make(mod.algebra, act, weights, provenance or f"sub({mod.provenance})", verify=False)
    out.meta["embedding"] = b
    return out


def quotient(mod: GModule, space: Subspace, provenance: str | None = None) -> GModule:
    if not is_invariant(mod, space):
        raise ModuleError("subspace is not invariant")
    q = space.quotient_map()
    free = space.complement_coordinates()
    act = np.einsum("ri,xij->xrj", q, mod.action[:, :, free]) % mod.field.p
    weights = [mod.weights[c] for c in free]
    out = _make(mod.algebra, act, weights, provenance or f"quot({mod.provenance})", verify=False)
    out.meta["projection"] = q
    if mod.highest_weight is not None and mod.hw_vector is not None and mod.hw_vector in free:
        out.highest_weight = mod.highest_weight
        out.hw_vector = free.index(mod.hw_vector)
    return out


def constructions(op: str, *args):
    table = {
        "tensor": tensor,
        "exterior_power": exterior_power,
        "sym_square": sym_square,
        "direct_sum": direct_sum,
        "copies": copies,
        "dual": dual,
        "sub": sub,
        "quotient": quotient,
    }
    if op not in table:
        raise ModuleError(f"unknown construction {op!r}")
    return table[op](*args)


# highest weight modules ----------------------------------------------------




def _independent_rows(cands: np.ndarray, field) -> list[int]:
    """Indices of a greedy maximal independent set of rows."""
    if cands.shape[0] == 0:
        return []
    _, piv = rref(np.ascontiguousarray(cands.T), field)
    return piv


def _lowering_closure(mod: GModule, start: np.ndarray):
    """Spanning words for the u(n^-)-span of a vector.

    Returns (vectors, words, space) where vectors[j] = f_{words[j][1]} vectors[words[j][0]]
    with f indexed like ``mod.lowering()``; vectors[0] is the start vector.
    """
    f = mod.field
    lows = np.stack(mod.lowering())
    r = lows.shape[0]
    vecs = [start % f.p]
    words = [(-1, -1)]
    space = Subspace(f, mod.dim, start)
    frontier = [0]
    while frontier:
        fr = np.stack([vecs[i] for i in frontier])
        cand = (np.einsum("aij,fj->fai", lows, fr) % f.p).reshape(-1, mod.dim)
        keep = _independent_rows(space.reduce(cand), f)
        new_frontier = []
        for c in keep:
            words.append((frontier[c // r], c % r))
            new_frontier.append(len(vecs))
            vecs.append(cand[c])
        if keep:
            space = space + Subspace(f, mod.dim, cand[keep])
        frontier = new_frontier
    return np.stack(vecs), words, space


def primitive_vectors(mod: GModule, lam) -> Subspace:
    """Weight-lam vectors killed by every positive root vector."""
    f = mod.field
    idx = [i for i, w in enumerate(mod.weights) if tuple(w) == tuple(lam)]
    if not idx:
        return Subspace.zero(f, mod.dim)
    rais = np.stack(mod.raising())[:, :, idx].reshape(-1, len(idx))
    ker = kernel(rais, f)
    full = np.zeros((ker.dim, mod.dim), dtype=np.int64)
    full[:, idx] = ker.basis
    return Subspace(f, mod.dim, full)


def invariants_of_nplus(mod: GModule) -> Subspace:
    return kernel(np.stack(mod.raising()).reshape(-1, mod.dim), mod.field)


def hw_submodule(ambient: GModule, lam) -> GModule:
    """g-submodule generated by a primitive vector of weight lam."""
    prim = primitive_vectors(ambient, lam)
    if prim.dim == 0:
        raise ModuleError(f"{tuple(lam)} is not a highest weight of {ambient.provenance}")
    v = prim.basis[0]
    _, _, space = _lowering_closure(ambient, v)
    mod = sub(ambient, space, f"hw{tuple(lam)}<{ambient.provenance}")
    top = [i for i, w in enumerate(mod.weights) if w == tuple(lam)]
    if len(top) != 1:
        raise ModuleError("top weight space is not one-dimensional")
    mod.highest_weight = tuple(lam)
    mod.hw_vector = top[0]
    mod.meta["ambient_dim"] = ambient.dim
    return mod


@dataclass
class ContravariantForm:
    """Contravariant form on a highest-weight module.

    ``gram`` is taken in the basis u_j = X_j v+ of lowering words, with
    <v+, v+> = 1; ``vectors`` holds the u_j in module coordinates and
    ``functionals`` the maps w -> <u_j, w>.
    """

    module: GModule
    vectors: np.ndarray
    functionals: np.ndarray
    gram: np.ndarray

    @classmethod
    def build(cls, mod: GModule) -> "ContravariantForm":
        if mod.hw_vector is None:
            raise ModuleError("module has no marked highest-weight vector")
        f = mod.field
        start = np.zeros(mod.dim, dtype=np.int64)
        start[mod.hw_vector] = 1
        vecs, words, space = _lowering_closure(mod, start)
        if space.dim != mod.dim:
            raise ModuleError("highest-weight vector does not generate the module")
        rais = mod.raising()
        funcs = np.zeros((len(words), mod.dim), dtype=np.int64)
        funcs[0] = start
        for j, (parent, a) in enumerate(words[1:], start=1):
            # <f_a u, w> = <u, e_a w>
            funcs[j] = f.matmul(funcs[parent][None], rais[a])[0]
        gram = f.matmul(funcs, vecs.T)
        if not np.array_equal(gram, gram.T):
            raise ModuleError("contravariant form is not symmetric")
        return cls(mod, vecs, funcs, gram)

    def radical(self) -> Subspace:
        return kernel(self.functionals, self.module.field)

    def rank(self) -> int:
        return self.module.dim - self.radical().dim


def irreducible_head(mod: GModule, certify: bool = True) -> GModule:
    """Quotient by the radical of the contravariant form."""
    form = ContravariantForm.build(mod)
    rad = form.radical()
    head = quotient(mod, rad, f"head({mod.provenance})")
    head.highest_weight = mod.highest_weight
    top = [i for i, w in enumerate(head.weights) if w == tuple(mod.highest_weight)]
    head.hw_vector = top[0]
    head.meta["radical_dim"] = rad.dim
    if certify and invariants_of_nplus(head).dim != 1:
        raise ModuleError(f"{head.provenance} is not irreducible")
    return head


# catalog ------------------------------------------------------------------------


def pullback_weight(iso: Isogeny, mu) -> tuple[int, ...]:
    src, tgt = iso.source.rs, iso.target.rs
    n = src.rank
    p = iso.source.p
    ct = tgt.cartan.astype(np.float64)
    det = int(round(np.linalg.det(ct)))
    adj = np.rint(np.linalg.inv(ct) * det).astype(np.int64)
    c = adj @ np.asarray(mu, dtype=np.int64)  # det * root coordinates
    d = np.zeros(n, dtype=np.int64)
    for i in range(n):
        j = i if src.family in ("B", "C") else n - 1 - i
        d[i] = c[j] * (1 if i in src.long_nodes else p)
    out = src.cartan @ d
    if np.any(out % det):
        raise ModuleError("pulled-back weight is not integral")
    return tuple(int(x) for x in out // det)


def pullback(iso: Isogeny, mod: GModule) -> GModule:
    if mod.algebra is not iso.target:
        raise ModuleError("module is not over the isogeny target")
    g = iso.source
    act = np.tensordot(iso.matrix, mod.action, axes=([0], [0])) % g.p
    weights = [pullback_weight(iso, w) for w in mod.weights]
    hw = None if mod.highest_weight is None else pullback_weight(iso, mod.highest_weight)
    return _make(g, act, weights, f"pullback({mod.provenance})",
                 highest_weight=hw, hw_vector=mod.hw_vector)


def spin_pullback(g: LieAlgebra) -> GModule:
    """Spin module of the dual B_n composed with the very special isogeny."""
    if g.rs.family != "C":
        raise ModuleError("spin pullback is for type C")
    iso = very_special_differential(g)
    return pullback(iso, spin_module(iso.target))


def fundamental_ambient(g: LieAlgebra, node: int) -> GModule:
    """A module containing a primitive vector of weight omega_node (0-based node)."""
    rs = g.rs
    n = rs.rank
    fam = rs.family
    if fam == "B":
        if node == 0:
            return spin_module(g)
        if node == n - 1:
            return weyl_natural(g)
        return exterior_power(weyl_natural(g), n - node)
    if fam == "C":
        if node == 0:
            return spin_pullback(g)
        if node == n - 1:
            return natural_symplectic(g)
        return exterior_power(natural_symplectic(g), n - node)
    if fam == "G2":
        return defining_module(g) if node == 1 else adjoint_module(g)
    if fam == "F4" and node in (0, 3):
        return defining_module(g) if node == 3 else adjoint_module(g)
    raise UnsupportedWeight(f"no ambient recipe for omega_{node + 1} of {fam}")


def _ambient_for(g, lam):
    parts = []
    for node, c in enumerate(lam):
        if c == 0:
            continue
        a = fundamental_ambient(g, node)
        if c == 1:
            parts.append(a)
        elif c == 2:
            parts.append(sym_square(a))
        else:
            raise UnsupportedWeight(f"coefficient {c} at node {node + 1}")
    return parts


def _ambient_dim(g, lam) -> int:
    dims = {"B": None}
    total = 1
    rs = g.rs
    n = rs.rank
    from math import comb

    for node, c in enumerate(lam):
        if c == 0:
            continue
        if rs.family == "B":
            d = 2**n if node == 0 else comb(2 * n + 1, n - node)
        elif rs.family == "C":
            d = 2**n if node == 0 else comb(2 * n, n - node)
        elif rs.family == "G2":
            d = 7 if node == 1 else 14
        else:
            d = 26 if node == 3 else 52
        total *= d if c == 1 else d * (d + 1) // 2
    del dims
    return total


def _check_weight(g, lam):
    lam = tuple(int(c) for c in lam)
    if len(lam) != g.rs.rank:
        raise ModuleError("weight has wrong length")
    if not is_dominant(lam):
        raise ModuleError("weight is not dominant")
    return lam


def irreducible(g: LieAlgebra, lam) -> GModule:
    lam = _check_weight(g, lam)
    if not is_restricted(lam, g.p):
        raise ModuleError("weight is not restricted; use module_for_weight")
    return _irreducible_cached(g.rs.family, g.rs.rank, g.p, lam)


@lru_cache(maxsize=None)
def _irreducible_cached(family, rank, p, lam) -> GModule:
    g = build_lie_algebra(family, rank, p)
    if not any(lam):
        return trivial_module(g)
    lam_s, lam_l = split_weight(g.rs, lam)
    if _ambient_dim(g, lam) > AMBIENT_CAP:
        if any(lam_s) and any(lam_l):
            # tensor product theorem for the short and long parts
            mod = tensor(irreducible(g, lam_l), irreducible(g, lam_s))
            mod.provenance = f"L{lam_l} (x) L{lam_s}"
            mod.highest_weight = lam
            mod.hw_vector = _hw_index(mod.weights, lam)
            return mod
        raise UnsupportedWeight(f"ambient for {lam} exceeds {AMBIENT_CAP}")
    parts = _ambient_for(g, lam)
    ambient = parts[0]
    for other in parts[1:]:
        ambient = tensor(ambient, other)
    head = irreducible_head(hw_submodule(ambient, lam))
    head.provenance = f"L{lam}=head(hw<{ambient.provenance})"
    return head


def nonrestricted_reduce(g: LieAlgebra, lam) -> tuple[tuple, int]:
    lam = _check_weight(g, lam)
    lam0, lam1, _ = restricted_split(lam, g.p)
    if not any(lam1):
        return lam0, 1
    return lam0, module_for_weight(g, lam1).dim


def module_for_weight(g: LieAlgebra, lam) -> GModule:
    """L(lambda) restricted to g: copies of L(lambda_0) for non-restricted lambda."""
    lam0, mult = nonrestricted_reduce(g, lam)
    base = irreducible(g, lam0)
    if mult == 1:
        return base
    return copies(base, mult)


# fixed spaces and kernels ---------------------------------------------------------


def fixed_space(mod: GModule, x=None, subalg=None, field=None) -> Subspace:
    """V^x, or the common fixed space of a subalgebra (Subalg or Subspace)."""
    if subalg is not None:
        space = subalg.space if isinstance(subalg, Subalg) else subalg
        f = space.field
        if space.dim == 0:
            return Subspace.full(f, mod.dim)
        mats = [mod.rho(b, f) for b in space.basis]
        return kernel(np.concatenate(mats), f)
    f = field or mod.field
    return kernel(mod.rho(x, f), f)


def kernel_of_action(mod: GModule) -> Subalg:
    g = mod.algebra
    rows = mod.action.reshape(g.dim, -1).T
    rows = rows[rows.any(axis=1)]
    if rows.shape[0]:
        rows = np.unique(rows, axis=0)
    ker = kernel(rows, g.field) if rows.shape[0] else Subspace.full(g.field, g.dim)
    return Subalg("ker drho", ker)


def is_ideal(g: LieAlgebra, space: Subspace) -> bool:
    f = space.field
    if space.dim == 0:
        return True
    imgs = np.einsum("ijk,sj->isk", g.table, space.basis) % f.p
    return space.contains(imgs.reshape(-1, g.dim))
