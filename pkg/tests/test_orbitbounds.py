from math import comb

import numpy as np
import pytest

from charplie.chevalley import build_lie_algebra, distinguished_subalgebras
from charplie.exactfield import field_create, spawn_rngs
from charplie.exactla import span
from charplie.orbitbounds import (
    BoundsError,
    ClassLabel,
    dim_group,
    bounds_table,
    generation_count,
    gsp_toral_orbit_dim,
    generation_experiment,
    heis_criteria,
    mother_inequality,
    orbit_dim,
    random_conjugate,
    representative,
    second_min_dim_C,
    so_odd_centralizer,
    so_odd_orbit_bound,
    sp_sqzero_centralizer,
    sp_sqzero_orbit_dim,
    threshold_contexts,
    thresholds,
    toral_orbit_dim_B,
    verify_representative,
)
from charplie.repmod import copies, fixed_space, irreducible, spin_module, spin_pullback, trivial_module


def test_sp_formulas():
    assert sp_sqzero_orbit_dim(3, 3) == 12 and sp_sqzero_orbit_dim(3, 1) == 6
    assert sp_sqzero_centralizer(3, 3) == 9 and sp_sqzero_centralizer(2, 1) == 6
    assert sp_sqzero_centralizer(4, 0) == 36
    for n in range(1, 13):
        for r in range(1, n + 1):
            assert sp_sqzero_orbit_dim(n, r) + sp_sqzero_centralizer(n, r) == 2 * n * n + n
    with pytest.raises(BoundsError):
        sp_sqzero_orbit_dim(3, 4)
    with pytest.raises(BoundsError):
        sp_sqzero_orbit_dim(3, 0)


def test_so_formulas():
    assert so_odd_centralizer(4, 2) == 22 and 36 - 22 == 14 == so_odd_orbit_bound(4, 2)
    assert so_odd_orbit_bound(5, 0) == 0
    for n in range(1, 13):
        dim_so = comb(2 * n + 1, 2)
        for r in range(0, 2 * n + 1):
            assert dim_so - so_odd_centralizer(n, r) <= so_odd_orbit_bound(n, r)
    with pytest.raises(BoundsError):
        so_odd_centralizer(2, 5)


def test_toral_B_formula():
    assert toral_orbit_dim_B(5, 0) == 0
    for n in range(2, 13):
        assert max(toral_orbit_dim_B(n, r) for r in range(n + 1)) <= n * n + n
    assert max(toral_orbit_dim_B(8, r) for r in range(9)) == 72
    assert all(toral_orbit_dim_B(4, r) <= 20 for r in range(5))
    with pytest.raises(BoundsError):
        toral_orbit_dim_B(3, 4)


def test_generation_counts():
    assert generation_count(ClassLabel("C", 6, "toral_sp", 1)) == 6
    assert generation_count(ClassLabel("C", 3, "sqzero", 1)) == 8
    assert generation_count(ClassLabel("C", 8, "sqzero", 5)) == 4
    assert generation_count(ClassLabel("C", 5, "long_root")) == 10
    with pytest.raises(BoundsError):
        generation_count(ClassLabel("B", 3, "short_root"))
    with pytest.raises(BoundsError):
        ClassLabel("C", 3, "sqzero", 4)


def test_second_min_dim():
    assert [second_min_dim_C(n) for n in (3, 4, 5)] == [14, 26, 44]
    assert 6 * 14 == 84 and 8 * 26 == 208
    for n in range(5, 13):
        assert 2 * n * second_min_dim_C(n) > 6 * n * n + 6 * n
    with pytest.raises(BoundsError):
        second_min_dim_C(2)


def test_second_min_dim_matches_catalog():
    assert irreducible(build_lie_algebra("C", 3), (0, 1, 0)).dim == second_min_dim_C(3)
    assert irreducible(build_lie_algebra("C", 4), (0, 0, 1, 0)).dim == second_min_dim_C(4)


def test_thresholds():
    assert thresholds("FG.dim", "F4") == 240 and thresholds("FG.dim", "G2") == 48
    assert thresholds("C.faithful", "C", 4) == 72 and thresholds("C.faithful", "C", 4, psp=True) == 80
    assert thresholds("C.faithful", "C", 3) == 48 and thresholds("C.faithful", "C", 5) == 180
    assert thresholds("B.quo", "B", 3) == 84
    assert thresholds("glong", "B", 3) == 30 and thresholds("gshort", "C", 3) == 30
    assert thresholds("glong", "F4") == 64 and thresholds("gshort", "G2") == 20
    assert thresholds("B.faithful", "B", 2) == 24 and thresholds("B.vs", "B", 4) == 64
    for ctx in threshold_contexts():
        assert isinstance(thresholds(*ctx), int)
    for bad in [("glong", "B", 2), ("FG.dim", "B", 3), ("nope", "C", 3), ("C.faithful", "C", 2)]:
        with pytest.raises(BoundsError):
            thresholds(*bad)


C_LABELS = [("sqzero", r) for r in (1, 2, 3)] + [("toral_sp", 1), ("toral_sp", 2), ("long_root", 0)]


@pytest.mark.parametrize("kind,r", C_LABELS)
def test_sp6_representatives(kind, r):
    g = build_lie_algebra("C", 3)
    lab = ClassLabel("C", 3, kind, r)
    info = verify_representative(g, lab, representative(g, lab))
    assert info["kind_ok"] and info["centralizer_bound_ok"]
    if kind == "sqzero":
        assert info["matrix_rank"] == r and info["p_power_zero"]
        assert info["in_m"] == (r % 2 == 0)
    if kind == "toral_sp":
        assert info["p_power_fixed"] and info["in_m"] and info["matrix_rank"] == 2 * r
    if kind == "long_root":
        assert info["matrix_rank"] == 1


def test_sp6_rank3_centralizer():
    g = build_lie_algebra("C", 3)
    info = verify_representative(g, ClassLabel("C", 3, "sqzero", 3), representative(g, ClassLabel("C", 3, "sqzero", 3)))
    assert info["centralizer_dim"] >= 21 - 12


def test_sp8_toral_and_b4_toral():
    c4 = build_lie_algebra("C", 4)
    lab = ClassLabel("C", 4, "toral_sp", 2)
    assert verify_representative(c4, lab, representative(c4, lab))["p_power_fixed"]
    b4 = build_lie_algebra("B", 4)
    lab = ClassLabel("B", 4, "toral_B", 2)
    info = verify_representative(b4, lab, representative(b4, lab))
    assert info["kind_ok"] and info["centralizer_bound_ok"]
    with pytest.raises(BoundsError):
        representative(b4, ClassLabel("B", 4, "toral_B", 3))


def test_mother_inequality_examples():
    g = build_lie_algebra("B", 3)
    v = spin_module(g)
    res = mother_inequality(v, np.zeros(g.dim, dtype=np.int64), 0)
    assert not res["holds"] and res["dim_Vx"] == v.dim
    c3 = build_lie_algebra("C", 3)
    x = representative(c3, ClassLabel("C", 3, "sqzero", 3))
    assert not mother_inequality(spin_pullback(c3), x, 12)["holds"]


def test_mother_inequality_spin17_toral_classes():
    g = build_lie_algebra("B", 8)
    v = spin_module(g)
    for r in (2, 4, 6, 8):
        lab = ClassLabel("B", 8, "toral_B", r)
        res = mother_inequality(v, representative(g, lab), orbit_dim(lab))
        assert res["holds"] and res["orbit_dim"] <= 72


def test_heis_criteria():
    b5 = build_lie_algebra("B", 5)
    res = heis_criteria(spin_module(b5))
    assert res["crit1"] and res["dim_V_zh"] == 0
    b3 = build_lie_algebra("B", 3)
    res = heis_criteria(copies(spin_module(b3), 4))
    assert res["crit1"] and not res["crit2"] and res["dim_V"] == 32
    res = heis_criteria(trivial_module(b3))
    assert not res["crit1"] and not res["crit2"]
    c3 = build_lie_algebra("C", 3)
    with pytest.raises(BoundsError):
        heis_criteria(irreducible(c3, (0, 0, 1)))
    assert heis_criteria(spin_pullback(c3))["dim_V_h"] == 0


def test_generation_experiment():
    c4 = build_lie_algebra("C", 4)
    x = representative(c4, ClassLabel("C", 4, "sqzero", 4))
    assert generation_experiment(c4, x, 4, seed=1)["witnessed"]
    c3 = build_lie_algebra("C", 3)
    x = representative(c3, ClassLabel("C", 3, "long_root"))
    res = generation_experiment(c3, x, 6, seed=2)
    assert res["witnessed"] and 21 in res["dims"]
    res = generation_experiment(c3, x, 1, draws=10)
    assert not res["witnessed"] and max(res["dims"]) == 1


def test_bounds_table_rows():
    rows = bounds_table("C", 3)
    r3 = next(r for r in rows if r["class"] == "sqzero(3)")
    assert r3["orbit_dim"] == 12 and r3["centralizer_dim"] == 9
    assert all(r["orbit_dim"] + r["centralizer_dim"] == 21 for r in rows)
    assert bounds_table("B", 3)[0]["orbit_dim"] == 6


B_MODULES = [("B", 3, (1, 0, 0)), ("B", 4, (1, 0, 0, 0)), ("B", 3, (1, 0, 1)), ("B", 2, (1, 1))]


@pytest.mark.parametrize("fam,n,lam", B_MODULES)
def test_three_quarter_bound(fam, n, lam):
    g = build_lie_algebra(fam, n)
    v = irreducible(g, lam)
    assert fixed_space(v, subalg=distinguished_subalgebras(g)["z"]).dim == 0
    f = field_create(2, 8)
    labels = [ClassLabel(fam, n, "long_root"), ClassLabel(fam, n, "short_root"), ClassLabel(fam, n, "toral_B", 2)]
    reps = [f.lift(representative(g, lab)) for lab in labels]
    z = distinguished_subalgebras(g)["z"].space.extend(f)
    for i, rng in enumerate(spawn_rngs(n, 100)):
        x = random_conjugate(g, reps[i % 3], rng, f)
        px = g.p_power(x, f)
        assert not px.any() or np.array_equal(px, x)
        assert not z.contains(span(x[None], f, g.dim))
        assert 4 * fixed_space(v, x, field=f).dim <= 3 * v.dim


@pytest.mark.parametrize("n", range(1, 9))
def test_gsp_toral_orbit_matches_centralizer_count(n):
    # GSp_2n has dimension dim Sp_2n + 1; the centralizer GL_n x G_m has n^2 + 1
    assert gsp_toral_orbit_dim(n) == (dim_group("C", n) + 1) - (n * n + 1)
