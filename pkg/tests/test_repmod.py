import numpy as np
import pytest

from charplie.chevalley import build_lie_algebra, derived, distinguished_subalgebras, very_special_differential
from charplie.exactla import Subspace, kernel, rref, span
from charplie.repmod import (
    ContravariantForm,
    ModuleError,
    UnsupportedWeight,
    adjoint_module,
    constructions,
    copies,
    defining_module,
    direct_sum,
    dual,
    exterior_power,
    fixed_space,
    hw_submodule,
    irreducible,
    irreducible_head,
    is_ideal,
    kernel_of_action,
    module_for_weight,
    natural_symplectic,
    nonrestricted_reduce,
    pullback,
    quotient,
    spin_module,
    spin_pullback,
    sub,
    tensor,
    trivial_module,
    weyl_natural,
)
from charplie.rootdata import split_weight


def g_(fam, n):
    return build_lie_algebra(fam, n)


def invariant_bilinear_forms(mod):
    """Kernel of B -> rho(x)^T B + B rho(x) over all basis x, as dim x dim matrices."""
    d, p = mod.dim, mod.algebra.p
    eye = np.eye(d, dtype=np.int64)
    # vec(B) row-major: (m^T B)_{ij} = sum_k m_ki B_kj ; (B m)_{ij} = sum_k B_ik m_kj
    blocks = [np.kron(m.T, eye) + np.kron(eye, m.T) for m in mod.action % p]
    ker = kernel(np.concatenate(blocks) % p, mod.field)
    return [b.reshape(d, d) for b in ker.basis]


def test_symplectic_natural_has_alternating_invariant_form():
    mod = defining_module(g_("C", 3))
    assert mod.dim == 6
    forms = invariant_bilinear_forms(mod)
    assert len(forms) == 1
    j = forms[0]
    assert np.array_equal(j, j.T) and not np.diag(j).any()  # alternating in char 2
    assert np.linalg.matrix_rank(j.astype(float)) == 6
    for m in mod.action % 2:
        assert not ((m.T @ j + j @ m) % 2).any()


def test_orthogonal_weyl_module_and_head():
    for n in (3, 4):
        w = weyl_natural(g_("B", n))
        head = irreducible_head(w)
        assert w.dim == 2 * n + 1 and head.dim == 2 * n and head.meta["radical_dim"] == 1
    assert defining_module(g_("B", 3)).dim == 6


def test_exceptional_naturals():
    assert defining_module(g_("F4", 4)).dim == 26
    assert defining_module(g_("G2", 2)).dim == 7


@pytest.mark.parametrize("n", [3, 4, 5])
def test_spin_module(n):
    mod = spin_module(g_("B", n))
    assert mod.dim == 2**n and mod.highest_weight == (1,) + (0,) * (n - 1)
    assert len(set(mod.weights)) == 2**n
    mod.verify()
    assert ContravariantForm.build(mod).rank() == mod.dim


def test_spin_rank_cap():
    with pytest.raises(ModuleError):
        spin_module(g_("C", 3))


def test_adjoint_chains():
    c3 = g_("C", 3)
    d = distinguished_subalgebras(c3)
    assert (d["n"].dim, d["m"].dim, adjoint_module(c3).dim) == (14, 15, 21)
    assert adjoint_module(g_("B", 2)).dim == 10
    assert distinguished_subalgebras(g_("B", 2))["n"].dim == 5
    ad = adjoint_module(c3)
    assert is_ideal(c3, d["m"].space) and is_ideal(c3, d["n"].space)
    assert sub(ad, d["m"].space).dim == 15


def test_wedge_square_of_symplectic_natural():
    g = g_("C", 3)
    w = exterior_power(natural_symplectic(g), 2)
    assert w.dim == 15
    full = Subspace.full(g.field, g.dim)
    assert fixed_space(w, subalg=full).dim == 1
    assert irreducible(g, (0, 1, 0)).dim == 14


def test_tensor_with_trivial_and_dual():
    g = g_("B", 3)
    v = spin_module(g)
    t = tensor(v, trivial_module(g))
    assert t.dim == v.dim and np.array_equal(t.action % 2, v.action % 2)
    assert dual(v).dim == v.dim
    assert direct_sum(v, v).dim == copies(v, 2).dim == 16
    assert constructions("tensor", v, v).dim == 64


def test_non_invariant_subspace_rejected():
    g = g_("C", 3)
    v = natural_symplectic(g)
    line = Subspace(g.field, 6, np.eye(6, dtype=np.int64)[:1])
    with pytest.raises(ModuleError):
        sub(v, line)
    with pytest.raises(ModuleError):
        quotient(v, line)


def test_g2_sym_square_head():
    mod = irreducible(build_lie_algebra("G2", 2, 3), (0, 2))
    assert mod.dim == 27 and "sym2" in mod.provenance
    assert kernel_of_action(mod).dim == 0


def test_hw_submodule_examples():
    g = g_("B", 3)
    spin = spin_module(g)
    assert hw_submodule(spin, (1, 0, 0)).dim == 8
    ss = tensor(spin, spin)
    m = hw_submodule(ss, (2, 0, 0))
    assert m.highest_weight == (2, 0, 0) and 0 < m.dim < 64
    with pytest.raises(ModuleError):
        hw_submodule(spin, (0, 1, 0))


def test_b4_wedge3_head_and_b5():
    g = g_("B", 4)
    amb = exterior_power(weyl_natural(g), 3)
    head = irreducible_head(hw_submodule(amb, (0, 1, 0, 0)))
    assert head.dim == 48
    assert irreducible(g_("B", 5), (0, 0, 1, 0, 0)).dim == 100


@pytest.mark.parametrize("fam,n,lam,dim", [("B", 3, (0, 1, 1), 64), ("C", 3, (1, 0, 1), 48), ("G2", 2, (0, 2), 27)])
def test_catalog_dims(fam, n, lam, dim):
    assert irreducible(g_(fam, n), lam).dim == dim


def _form_matrix(form):
    """Gram matrix in module coordinates, from <u_j, w> = psi_j(w)."""
    f = form.module.field
    u, psi = form.vectors, form.functionals
    # choose independent rows of u
    rows = []
    acc = Subspace.zero(f, form.module.dim)
    for j in range(u.shape[0]):
        grown = acc + span(u[j][None], f, form.module.dim)
        if grown.dim > acc.dim:
            rows.append(j)
            acc = grown
    us, ps = u[rows], psi[rows]
    aug = np.concatenate([us, ps], axis=1)
    r, _ = rref(aug, f)
    return r[:, us.shape[1]:]


@pytest.mark.parametrize("fam,n,lam", [("B", 3, (1, 0, 0)), ("C", 3, (0, 1, 0)), ("G2", 2, (0, 1))])
def test_contravariance(fam, n, lam):
    g = g_(fam, n)
    mod = irreducible(g, lam)
    form = ContravariantForm.build(mod)
    gm = _form_matrix(form) % g.p
    assert np.array_equal(gm, gm.T)
    for a in g.rs.roots:
        ea = mod.action[g.root_index(a)] % g.p
        fa = mod.action[g.root_index(tuple(-c for c in a))] % g.p
        assert np.array_equal((ea.T @ gm) % g.p, (gm @ fa) % g.p)
    for i, w in enumerate(mod.weights):
        for j, v in enumerate(mod.weights):
            if w != v:
                assert gm[i, j] == 0


@pytest.mark.parametrize(
    "fam,n,lam", [("B", 2, (1, 1)), ("B", 3, (1, 0, 1)), ("B", 3, (1, 1, 0)), ("C", 3, (1, 0, 1)), ("G2", 2, (1, 1))]
)
def test_steinberg_factorization(fam, n, lam):
    g = g_(fam, n)
    short, long_ = split_weight(g.rs, lam)
    assert any(short) and any(long_)
    assert irreducible(g, lam).dim == irreducible(g, long_).dim * irreducible(g, short).dim


def test_pullbacks():
    m = spin_pullback(g_("C", 3))
    assert (m.dim, kernel_of_action(m).dim) == (8, 14)
    m = spin_pullback(g_("C", 6))
    assert (m.dim, kernel_of_action(m).dim) == (64, 65)
    b3 = g_("B", 3)
    iso = very_special_differential(b3)
    pb = pullback(iso, natural_symplectic(iso.target))
    assert pb.dim == 6
    assert kernel_of_action(pb).space.contains(distinguished_subalgebras(b3)["n"].space)


def test_fixed_space_examples():
    b4 = g_("B", 4)
    spin = spin_module(b4)
    assert fixed_space(spin, np.zeros(b4.dim, dtype=np.int64)).dim == 16
    assert fixed_space(spin, subalg=distinguished_subalgebras(b4)["n"]).dim == 0
    c3 = g_("C", 3)
    pb = spin_pullback(c3)
    assert fixed_space(pb, subalg=distinguished_subalgebras(c3)["n"]).dim == 8


@pytest.mark.parametrize("n,dim", [(4, 27), (5, 44)])
def test_kernel_of_action_is_ideal(n, dim):
    g = g_("C", n)
    ker = kernel_of_action(spin_pullback(g))
    assert ker.dim == dim and is_ideal(g, ker.space)
    assert kernel_of_action(natural_symplectic(g)).dim == 0


def test_nonrestricted_reduce():
    b2 = g_("B", 2)
    assert nonrestricted_reduce(b2, (1, 0)) == ((1, 0), 1)
    assert nonrestricted_reduce(b2, (1, 2)) == ((1, 0), 4)
    assert nonrestricted_reduce(b2, (3, 0)) == ((1, 0), 4)
    assert module_for_weight(b2, (1, 2)).dim == 16


def test_unsupported_weight_is_explicit():
    with pytest.raises(UnsupportedWeight):
        irreducible(g_("F4", 4), (0, 1, 0, 0))


CATALOG = [
    ("B", 2, (1, 0)), ("B", 2, (0, 1)), ("B", 2, (1, 1)), ("B", 3, (1, 0, 0)), ("B", 3, (0, 1, 0)),
    ("B", 3, (0, 0, 1)), ("B", 3, (1, 0, 1)), ("B", 3, (0, 1, 1)), ("B", 4, (0, 0, 0, 1)),
    ("B", 4, (1, 0, 0, 0)), ("C", 2, (1, 0)), ("C", 3, (1, 0, 0)), ("C", 3, (0, 1, 0)),
    ("C", 3, (0, 0, 1)), ("C", 3, (1, 0, 1)), ("C", 4, (0, 0, 0, 1)), ("G2", 2, (0, 1)),
    ("G2", 2, (1, 0)), ("G2", 2, (0, 2)), ("F4", 4, (0, 0, 0, 1)),
]


@pytest.mark.parametrize("fam,n,lam", CATALOG)
def test_fixed_space_annihilator_inclusion(fam, n, lam):
    """(V/V^d)^d lies in the image of V^[d,d], for d = g and d = n."""
    g = g_(fam, n)
    v = irreducible(g, lam)
    v.verify()
    full = Subspace.full(g.field, g.dim)
    for d in (full, distinguished_subalgebras(g)["n"].space):
        vd = fixed_space(v, subalg=d)
        if vd.dim == v.dim:
            continue
        q = quotient(v, vd)
        top = fixed_space(q, subalg=d)
        dd = derived(g, d)
        vdd = fixed_space(v, subalg=dd)
        image = span((q.meta["projection"] @ vdd.basis.T % g.p).T, g.field, q.dim)
        assert image.contains(top)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_root_lattice_weights_kill_n(n):
    g = g_("B", n)
    nn = distinguished_subalgebras(g)["n"].space
    weights = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    weights += [tuple(1 if i in (k, n - 1) else 0 for i in range(n)) for k in range(n - 1)]
    checked = 0
    for lam in weights:
        if g.rs.weight_from_root_lattice(lam) is None:
            continue
        try:
            v = irreducible(g, lam)
        except UnsupportedWeight:
            continue
        assert kernel_of_action(v).space.contains(nn)
        checked += 1
    assert checked >= 1
