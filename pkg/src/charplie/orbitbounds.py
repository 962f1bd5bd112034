"""Conjugacy-class dimensions, class representatives and dimension thresholds.

Orbit dimensions are closed forms.  Lie centralizers are only used as
one-sided cross-checks: in characteristic 2 centralizer schemes need not be
smooth, so dim c_g(x) >= dim G - dim x^G is all one can assert.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb

import numpy as np

from .chevalley import (
    LieAlgebra,
    center_of,
    centralizer_in_g,
    classify_element,
    distinguished_subalgebras,
    generated_subalgebra,
    very_special_differential,
)
from .exactfield import field_create, spawn_rngs
from .exactla import Subspace, kernel, rank, span
from .repmod import GModule, fixed_space, kernel_of_action


class BoundsError(ValueError):
    pass


def _check(cond, msg):
    if not cond:
        raise BoundsError(msg)


def dim_group(family: str, n: int) -> int:
    return {"B": 2 * n * n + n, "C": 2 * n * n + n, "F4": 52, "G2": 14}[family]


def sp_sqzero_orbit_dim(n: int, r: int) -> int:
    _check(1 <= r <= n, f"rank {r} outside 1..{n}")
    return r * (2 * n + 1) - r * r


def sp_sqzero_centralizer(n: int, r: int) -> int:
    _check(0 <= r <= n, f"rank {r} outside 0..{n}")
    if r == 0:
        return dim_group("C", n)
    return 2 * n - r + comb(2 * n - r, 2) + comb(r, 2)


def so_odd_centralizer(n: int, r: int) -> int:
    _check(0 <= r <= 2 * n, f"rank {r} outside 0..{2 * n}")
    return comb(2 * n + 1 - r, 2) + comb(r, 2)


def so_odd_orbit_bound(n: int, r: int) -> int:
    _check(0 <= r <= 2 * n, f"rank {r} outside 0..{2 * n}")
    return r * (2 * n + 1 - r)


def toral_orbit_dim_B(n: int, r: int) -> int:
    """dim B_n - dim(D_r x B_{n-r})."""
    _check(0 <= r <= n, f"r = {r} outside 0..{n}")
    return (2 * n * n + n) - (2 * r * r - r) - (2 * (n - r) ** 2 + (n - r))


def gsp_toral_orbit_dim(n: int) -> int:
    """Orbit of diag(0_n, I_n) under GSp_2n; tabulated only, gsp is not modeled.

    The centralizer is GL_n x G_m, so the orbit has dimension
    (2n^2 + n + 1) - (n^2 + 1).
    """
    _check(n >= 1, "n must be positive")
    return n * n + n


def second_min_dim_C(n: int) -> int:
    _check(n >= 3, "s(n) is defined for n >= 3")
    return 2 * n * n - n - 1 if n % 2 else 2 * n * n - n - 2


@dataclass(frozen=True)
class ClassLabel:
    family: str
    rank: int
    kind: str  # sqzero | toral_B | toral_sp | long_root | short_root
    r: int = 0

    def __post_init__(self):
        n = self.rank
        k = self.kind
        if k == "sqzero":
            _check(self.family == "C" and 1 <= self.r <= n, "square-zero classes are for sp_2n, 1 <= r <= n")
        elif k == "toral_sp":
            _check(self.family == "C" and 1 <= self.r <= n - 1, "toral_sp needs 1 <= r <= n-1")
        elif k == "toral_B":
            _check(self.family == "B" and 0 <= self.r <= n, "toral_B needs 0 <= r <= n")
        elif k not in ("long_root", "short_root"):
            raise BoundsError(f"unknown class kind {k!r}")

    @property
    def s(self) -> int:
        if self.kind == "toral_sp":
            return min(self.r, self.rank - self.r)
        if self.kind == "sqzero":
            return self.r // 2
        raise BoundsError("s is defined for toral_sp and sqzero classes")

    def label(self) -> str:
        return f"{self.kind}({self.r})" if self.kind in ("sqzero", "toral_B", "toral_sp") else self.kind


def orbit_dim(label: ClassLabel) -> int:
    n = label.rank
    if label.kind == "sqzero":
        return sp_sqzero_orbit_dim(n, label.r)
    if label.kind == "toral_B":
        return toral_orbit_dim_B(n, label.r)
    if label.kind == "toral_sp":
        # centralizer Sp_2r x Sp_2(n-r)
        r = label.r
        return dim_group("C", n) - dim_group("C", r) - dim_group("C", n - r)
    if label.kind == "long_root" and label.family == "C":
        return sp_sqzero_orbit_dim(n, 1)
    raise BoundsError(f"no closed form for {label}")


def generation_count(label: ClassLabel) -> int:
    _check(label.family == "C" and label.rank >= 3, "generation counts are for sp_2n, n >= 3")
    n = label.rank
    if label.kind == "long_root" or (label.kind == "sqzero" and label.r == 1):
        return max(8, 2 * n)
    if label.kind in ("toral_sp", "sqzero"):
        return max(4, ceil(n / label.s))
    raise BoundsError(f"no generation count for {label}")


# representatives ------------------------------------------------------------------


def _eps(rs, root) -> tuple[int, ...]:
    """epsilon-coordinates of a B_n / C_n root (Luebeck node k = Bourbaki n+1-k)."""
    n = rs.rank
    out = [0] * n
    for k, c in enumerate(root):
        j = n - 1 - k  # Bourbaki index, 0-based
        if j < n - 1:
            out[j] += c
            out[j + 1] -= c
        else:
            out[j] += c * (2 if rs.family == "C" else 1)
    return tuple(out)


def root_from_eps(rs, eps) -> tuple[int, ...]:
    for r in rs.roots:
        if _eps(rs, r) == tuple(eps):
            return r
    raise BoundsError(f"{eps} is not a root")


def _unit(n, *pairs):
    v = [0] * n
    for i, c in pairs:
        v[i] += c
    return tuple(v)


def representative(g: LieAlgebra, label: ClassLabel) -> np.ndarray:
    rs = g.rs
    n = rs.rank
    _check(rs.family == label.family and n == label.rank, "label does not match the algebra")
    x = np.zeros(g.dim, dtype=np.int64)
    if label.kind == "sqzero":
        s, odd = divmod(label.r, 2)
        _check(2 * s + odd <= n, "rank too large")
        for i in range(s):
            x = x + g.e(root_from_eps(rs, _unit(n, (2 * i, 1), (2 * i + 1, 1))))
        if odd:
            x = x + g.e(root_from_eps(rs, _unit(n, (2 * s, 2))))
    elif label.kind == "toral_sp":
        for i in range(label.r):
            x = x + g.coroot(root_from_eps(rs, _unit(n, (i, 2))))
    elif label.kind == "toral_B":
        if label.r % 2:
            raise BoundsError("odd r has no representative in Lie(T) of Spin")
        for i in range(0, label.r, 2):
            x = x + g.coroot(root_from_eps(rs, _unit(n, (i, 1), (i + 1, 1))))
    elif label.kind == "long_root":
        x = g.e(rs.highest_root())
    else:
        short = [r for r in rs.positive_roots if rs.is_short(r)]
        x = g.e(short[-1])
    return x % g.p


def verify_representative(g: LieAlgebra, label: ClassLabel, x) -> dict:
    """Checks p-power behaviour, defining-matrix rank and the centralizer bound."""
    kind = classify_element(g, x)
    want = "toral" if label.kind.startswith("toral") else "nilpotent"
    px = g.p_power(x)
    out = {"class": kind, "kind_ok": kind == want}
    if want == "nilpotent":
        out["p_power_zero"] = bool(not px.any())
    else:
        out["p_power_fixed"] = bool(np.array_equal(px, x))
    if label.family == "C":
        out["matrix_rank"] = rank(g.rep_matrix(x), g.field)
        out["in_m"] = distinguished_subalgebras(g)["m"].space.contains(span(x[None], g.field, g.dim))
    try:
        od = orbit_dim(label)
        cd = centralizer_in_g(g, x).dim
        out["centralizer_dim"] = cd
        out["centralizer_bound_ok"] = cd >= g.dim - od
    except BoundsError:
        pass
    return out


# inequalities ---------------------------------------------------------------


def mother_inequality(mod: GModule, x, orbit_dimension: int) -> dict:
    """dim x^G + dim V^x < dim V, with V^x computed exactly."""
    vx = fixed_space(mod, x).dim
    margin = mod.dim - orbit_dimension - vx
    return {"holds": margin > 0, "dim_Vx": vx, "orbit_dim": orbit_dimension, "margin": margin}


def _heisenberg(g: LieAlgebra):
    """(h, z(h)) as subspaces of the algebra acting on the module."""
    fam = g.rs.family
    if fam == "B":
        h = distinguished_subalgebras(g)["n"].space
        return h, center_of(g, h)
    if fam == "C":
        iso = very_special_differential(g)
        tgt = iso.target
        ht = distinguished_subalgebras(tgt)["n"].space
        zt = center_of(tgt, ht)
        # preimages under d(pi)
        full = Subspace.full(g.field, g.dim)
        q = zt.quotient_map()
        pre_z = kernel(g.field.matmul(q, iso.matrix), g.field)
        return full, pre_z
    raise BoundsError("Heisenberg criteria are for types B and C")


def heis_criteria(mod: GModule) -> dict:
    g = mod.algebra
    n = g.rs.rank
    if g.rs.family == "C":
        ker = kernel_of_action(mod).space
        if not ker.contains(distinguished_subalgebras(g)["n"].space):
            raise BoundsError("d(rho) does not vanish on ker d(pi)")
    h, zh = _heisenberg(g)
    vz = fixed_space(mod, subalg=zh).dim
    vh = fixed_space(mod, subalg=h).dim
    return {
        "crit1": 4 * n + vz < mod.dim,
        "crit2": vh == 0 and 4 * n * n < mod.dim,
        "dim_V": mod.dim,
        "dim_V_zh": vz,
        "dim_V_h": vh,
    }


_THRESHOLDS = {
    "glong": {"F4": 64, "G2": 20, ("B", 3): 30},
    "gshort": {"F4": 64, "G2": 20, ("C", 3): 30},
    "FG.dim": {"F4": 240, "G2": 48},
}


def thresholds(prop: str, family: str, n: int | None = None, psp: bool = False) -> int:
    """Dimension bound of the named statement; raises on unknown context."""
    if family in ("F4", "G2"):
        n = 4 if family == "F4" else 2
    key = (family, n)
    if prop in ("glong", "gshort"):
        table = _THRESHOLDS[prop]
        if family in table:
            return table[family]
        if key in table:
            return table[key]
        if prop == "glong" and (family == "B" and n >= 4 or family == "C" and n >= 2):
            return 4 * n * n
        if prop == "gshort" and (family == "B" and n >= 2 or family == "C" and n >= 4):
            return 4 * n * n
    elif prop == "FG.dim" and family in _THRESHOLDS["FG.dim"]:
        return _THRESHOLDS["FG.dim"][family]
    elif prop == "C.faithful" and family == "C" and n >= 3:
        if n == 3:
            return 48
        if n == 4:
            return 80 if psp else 72
        return 6 * n * n + 6 * n
    elif prop == "B.faithful" and family == "B" and n >= 2:
        return 4 * n * n + 4 * n
    elif prop == "B.vs" and family == "B" and n >= 3:
        return 4 * n * n
    elif prop == "B.quo" and family == "B" and n >= 2:
        return 8 * n * n + 4 * n
    raise BoundsError(f"no threshold for {prop} on {family}{n}")


THRESHOLD_CONTEXTS = ("glong", "gshort", "FG.dim", "C.faithful", "B.faithful", "B.vs", "B.quo")


def threshold_contexts(max_rank: int = 12):
    """Every (statement, family, rank, psp) combination with a stated bound."""
    out = [(p, f, None, False) for p in ("glong", "gshort", "FG.dim") for f in ("F4", "G2")]
    for n in range(2, max_rank + 1):
        if n == 3 or n >= 4:
            out.append(("glong", "B", n, False))
        out.append(("glong", "C", n, False))
        out.append(("gshort", "B", n, False))
        if n == 3 or n >= 4:
            out.append(("gshort", "C", n, False))
        if n >= 3:
            out.append(("C.faithful", "C", n, False))
            out.append(("B.vs", "B", n, False))
        if n == 4:
            out.append(("C.faithful", "C", n, True))
        out.append(("B.faithful", "B", n, False))
        out.append(("B.quo", "B", n, False))
    return out


# generation experiment ------------------------------------------------------


def random_conjugate(g: LieAlgebra, x, rng, f):
    """Apply Ad x_a(t) for every root a (positive, negative, positive) with random t."""
    il = g.integral
    roots = g.rs.positive_roots
    word = list(roots) + [tuple(-c for c in r) for r in roots] + list(roots)
    for a in word:
        t = f.random(rng, ())
        dps = il.divided_powers(a)
        acc = x
        tk = t
        for d in dps[1:]:
            term = f.lin_apply(d % g.p, x)
            acc = f.add(acc, f.mul(term, tk))
            tk = f.mul(tk, t)
        x = acc
    return x


def generation_experiment(
    g: LieAlgebra, x, count: int, draws: int = 10, seed: int = 0, field_degree: int = 8
) -> dict:
    """Do `count` random conjugates of x generate a subalgebra containing n?

    Existential: success in any draw witnesses the claim; failure of every
    draw is "not witnessed", not a refutation.
    """
    f = field_create(g.p, field_degree)
    xf = f.lift(x)
    n_space = distinguished_subalgebras(g)["n"].space.extend(f)
    dims = []
    for rng in spawn_rngs(seed, draws):
        conj = [random_conjugate(g, xf, rng, f) for _ in range(count)]
        s = generated_subalgebra(g, conj, f).space
        dims.append(s.dim)
        if s.contains(n_space):
            return {"witnessed": True, "draws_used": len(dims), "dims": dims}
    return {"witnessed": False, "draws_used": len(dims), "dims": dims}


def bounds_table(family: str, n: int) -> list[dict]:
    """Rows for the CLI bounds table: class, orbit dim, centralizer dim, generation count."""
    rows = []
    if family == "C":
        for r in range(1, n + 1):
            lab = ClassLabel("C", n, "sqzero", r)
            rows.append({
                "class": lab.label(),
                "orbit_dim": sp_sqzero_orbit_dim(n, r),
                "centralizer_dim": sp_sqzero_centralizer(n, r),
                "generation_count": generation_count(lab) if n >= 3 else None,
            })
        for r in range(1, n):
            lab = ClassLabel("C", n, "toral_sp", r)
            od = orbit_dim(lab)
            rows.append({
                "class": lab.label(),
                "orbit_dim": od,
                "centralizer_dim": dim_group("C", n) - od,
                "generation_count": generation_count(lab) if n >= 3 else None,
            })
    elif family == "B":
        for r in range(1, 2 * n + 1):
            rows.append({
                "class": f"nilpotent_rank({r})",
                "orbit_dim": so_odd_orbit_bound(n, r),
                "centralizer_dim": so_odd_centralizer(n, r),
                "generation_count": None,
            })
        for r in range(0, n + 1):
            od = toral_orbit_dim_B(n, r)
            rows.append({
                "class": f"toral_B({r})",
                "orbit_dim": od,
                "centralizer_dim": dim_group("B", n) - od,
                "generation_count": None,
            })
    else:
        raise BoundsError("bounds table is for types B and C")
    return rows
