"""Command-line front end: module/stabilizer/bounds queries and verification suites.

Exit codes: 0 pass, 1 claim failure, 2 unsupported input, 3 internal
invariant violation.  Suites print JSON lines, one claim per line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass

from .chevalley import (
    AlgebraError,
    build_lie_algebra,
    center_of,
    derived,
    distinguished_subalgebras,
    generated_subalgebra,
    very_special_differential,
)
from .exactla import Subspace, dump_matrix
from .orbitbounds import (
    BoundsError,
    bounds_table,
    second_min_dim_C,
    sp_sqzero_centralizer,
    sp_sqzero_orbit_dim,
    threshold_contexts,
    thresholds,
)
from .repmod import (
    ModuleError,
    UnsupportedWeight,
    adjoint_module,
    copies,
    direct_sum,
    fixed_space,
    kernel_of_action,
    module_for_weight,
    pullback,
    spin_module,
    spin_pullback,
    sub,
)
from .rootdata import RootDataError, parse_weight
from .stabmod import InvariantViolation, SampleConfig, generic_stabilizer

EXIT_PASS, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_INVARIANT = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    rank: int | None = None
    weight: tuple | None = None
    p: int | None = None
    samples: int = 5
    field_bits: int = 20
    seed: int = 0
    output: str = "json"

    @property
    def sample_config(self) -> SampleConfig:
        return SampleConfig(field_degree=self.field_bits, trials=self.samples, seed=self.seed)


def _claim(cid, anchor, ok, **values):
    return {"id": cid, "anchor": anchor, "pass": bool(ok), "values": values}


# structure -----------------------------------------------------------------------


def structure_claims(family: str, n: int, p: int | None = None) -> list[dict]:
    g = build_lie_algebra(family, n, p)
    d = distinguished_subalgebras(g)
    gl, gs, nn, z, m = (d[k].space for k in ("g_long", "g_short", "n", "z", "m"))
    tag = family if family in ("F4", "G2") else f"{family}{n}"
    zl = center_of(g, gl)
    out = [
        _claim(f"{tag}/glong-sum", "z(g_long) + n = m", (zl + nn) == m, dim_z_glong=zl.dim, dim_m=m.dim),
        _claim(f"{tag}/glong-meet", "g_long meet m = z(g_long)", gl.intersect(m) == zl),
        _claim(
            f"{tag}/gshort-gen",
            "[g_short, g_short] generates n",
            generated_subalgebra(g, derived(g, gs).basis).space == nn,
        ),
    ]
    iso = very_special_differential(g)
    out.append(_claim(f"{tag}/dpi-hom", "d(pi) is a Lie homomorphism", iso.is_homomorphism()))
    out.append(_claim(f"{tag}/dpi-ker", "ker d(pi) = n", iso.kernel() == nn, dim_n=nn.dim))
    expect_n = {"B": 2 * n + 1, "C": 2 * n * n - n - 1, "F4": 26, "G2": 7}[family]
    out.append(_claim(f"{tag}/dim-n", "dim n", nn.dim == expect_n, dim_n=nn.dim, expected=expect_n))
    if family == "B":
        hh = derived(g, nn)
        zh = center_of(g, nn)
        out.append(_claim(f"{tag}/heis", "[h,h] = z(h) of dim 1", hh == zh and zh.dim == 1, dim=zh.dim))
    if family == "C":
        inside = nn.contains(z)
        out.append(_claim(f"{tag}/z-in-n", "z in n iff n even", inside == (n % 2 == 0), z_in_n=inside))
    out[0]["values"].update(
        dim_g=g.dim, dim_n=nn.dim, dim_m=m.dim, dim_z=z.dim, dim_g_long=gl.dim, dim_g_short=gs.dim
    )
    return out


def structure_record(family: str, n: int, p: int | None = None) -> dict:
    g = build_lie_algebra(family, n, p)
    d = distinguished_subalgebras(g)
    claims = structure_claims(family, n, p)
    rec = {"family": family, "rank": n, "p": g.p, "dim_g": g.dim}
    rec.update({f"dim_{k}": v.dim for k, v in d.items()})
    rec["identities"] = {c["id"].split("/")[1]: c["pass"] for c in claims}
    return rec


# suites -----------------------------------------------------------------------


def _stab(mod, cfg):
    return generic_stabilizer(mod, cfg)


def suite_table_ivfree(cfg: SampleConfig) -> list[dict]:
    rows = {3: (8, 14), 4: (16, 27), 5: (32, 44), 6: (64, 65)}
    out = []
    for n, (dv, dk) in rows.items():
        r = _stab(spin_pullback(build_lie_algebra("C", n)), cfg)
        ok = (r.dim_module, r.ker_dim, r.verdict) == (dv, dk, "virtually_free")
        out.append(_claim(f"ivfree/C{n}", "Sp spin pullback row", ok, dim_V=r.dim_module, ker=r.ker_dim,
                          verdict=r.verdict, trial_dims=r.trial_dims))
    return out


def suite_structure(cfg: SampleConfig) -> list[dict]:
    out = []
    for fam, ranks in (("B", range(2, 7)), ("C", range(2, 7)), ("F4", [4]), ("G2", [2])):
        for n in ranks:
            out += structure_claims(fam, n)
    return out


def suite_typeB(cfg: SampleConfig) -> list[dict]:
    out = []
    r = _stab(spin_module(build_lie_algebra("B", 7)), cfg)
    out.append(_claim("B/spin7", "spin of B7 generically free", r.min_dim == 0, dim_gv=r.min_dim))
    r = _stab(spin_module(build_lie_algebra("B", 4)), cfg)
    ok = r.min_dim == 21 and r.intersections["n"] == 0 and r.intersections["m"] == 1
    out.append(_claim("B/spin4", "spin of B4: n_v = 0, m_v = z", ok, dim_gv=r.min_dim, **r.intersections))
    for n, c in zip(range(2, 7), (4, 4, 3, 2, 2)):
        r = _stab(copies(spin_module(build_lie_algebra("B", n)), c), cfg)
        out.append(_claim(f"B/spin-sum{n}", f"{c} spin copies free", r.min_dim == 0, dim_gv=r.min_dim))
    cases = [
        (3, (0, 1, 0), 14, lambda r: r.min_dim == 9),
        (4, (0, 1, 0, 0), 48, lambda r: r.min_dim == 9 and r.intersections["n"] == 9),
        (5, (0, 0, 1, 0, 0), 100, lambda r: r.min_dim == 11 and r.intersections["n"] == 11),
        (3, (0, 1, 1), 64, lambda r: r.verdict == "virtually_free"),
    ]
    for n, lam, dv, pred in cases:
        r = _stab(module_for_weight(build_lie_algebra("B", n), lam), cfg)
        ok = r.dim_module == dv and pred(r)
        out.append(_claim("B/L" + "".join(map(str, lam)), "type B catalog", ok, dim_V=r.dim_module,
                          dim_gv=r.min_dim, ker=r.ker_dim, verdict=r.verdict))
    return out


def suite_typeC(cfg: SampleConfig) -> list[dict]:
    out = []
    for n in (3, 4):
        g = build_lie_algebra("C", n)
        lam = (0,) * (n - 1) + (1,)
        r = _stab(module_for_weight(g, lam), cfg)
        want = 2 * n * n - n
        out.append(_claim(f"C/natural{n}", "natural of Sp", r.min_dim == want, dim_gv=r.min_dim, expected=want))
    g = build_lie_algebra("C", 3)
    r = _stab(module_for_weight(g, (0, 1, 0)), cfg)
    out.append(_claim("C/wedge2", "L(w_{n-1}) of C3", (r.dim_module, r.min_dim) == (14, 9),
                      dim_V=r.dim_module, dim_gv=r.min_dim))
    r = _stab(module_for_weight(g, (1, 0, 1)), cfg)
    ok = r.dim_module == 48 and r.min_dim == 1 and r.intersections["z"] == 1
    out.append(_claim("C/L101", "C3 L(w1+w3) virtually free", ok and r.verdict == "virtually_free",
                      dim_V=r.dim_module, dim_gv=r.min_dim, ker=r.ker_dim, verdict=r.verdict))
    return out


def suite_FG(cfg: SampleConfig) -> list[dict]:
    out = []
    for fam, n, lam, want in (("F4", 4, (0, 0, 0, 1), 28), ("G2", 2, (0, 1), 8)):
        g = build_lie_algebra(fam, n)
        nat = module_for_weight(g, lam)
        r = _stab(nat, cfg)
        out.append(_claim(f"FG/{fam}-natural", "natural stabilizer dim", r.min_dim == want,
                          dim_V=r.dim_module, dim_gv=r.min_dim))
        pb = pullback(very_special_differential(g), nat)
        r = _stab(pb, cfg)
        out.append(_claim(f"FG/{fam}-pullback", "pullback stabilizer contains n",
                          r.intersections["n"] == distinguished_subalgebras(g)["n"].dim, dim_gv=r.min_dim))
    g = build_lie_algebra("G2", 2)
    mod = module_for_weight(g, (0, 2))
    r = _stab(mod, cfg)
    out.append(_claim("FG/G2-L02", "G2 L(2w2) generically free",
                      (r.dim_module, r.ker_dim, r.min_dim) == (27, 0, 0),
                      dim_V=r.dim_module, ker=r.ker_dim, dim_gv=r.min_dim))
    return out


def counterexample_module(copies_of_w: int = 5):
    g = build_lie_algebra("B", 2)
    nn = distinguished_subalgebras(g)["n"].space
    u = module_for_weight(g, (0, 1))
    return g, direct_sum(sub(adjoint_module(g), nn, "n"), copies(u, copies_of_w))


def suite_counterexample(cfg: SampleConfig) -> list[dict]:
    out = []
    dims_x = []
    for c in (5, 6, 7):
        g, v = counterexample_module(c)
        full = Subspace.full(g.field, g.dim)
        dims_x.append(v.dim - fixed_space(v, subalg=derived(g, full)).dim)
        if c == 5:
            r = _stab(v, cfg)
            ok = r.verdict == "neither" and r.min_dim == 4 and r.intersections["n"] == 4
            out.append(_claim("eg/B2", "n + 5W not virtually free", ok, dim_V=v.dim, dim_gv=r.min_dim,
                              ker=r.ker_dim, verdict=r.verdict))
    grows = all(b > a for a, b in zip(dims_x, dims_x[1:]))
    out.append(_claim("eg/B2-X", "dim X grows with copies", grows, dims_X=dims_x))
    return out


def suite_bounds(cfg: SampleConfig) -> list[dict]:
    out = []
    ok = all(
        sp_sqzero_orbit_dim(n, r) + sp_sqzero_centralizer(n, r) == 2 * n * n + n
        for n in range(1, 13)
        for r in range(1, n + 1)
    )
    out.append(_claim("bounds/sp-consistency", "orbit + centralizer = dim Sp", ok))
    s = {n: second_min_dim_C(n) for n in (3, 4)}
    out.append(_claim("bounds/s", "s(3), s(4) and 2n s(n)", s == {3: 14, 4: 26}
                      and (6 * s[3], 8 * s[4]) == (84, 208), s=s))
    missing = []
    for ctx in threshold_contexts():
        try:
            thresholds(*ctx)
        except BoundsError:
            missing.append(ctx)
    out.append(_claim("bounds/thresholds", "threshold lookup total", not missing, missing=missing))
    return out


SUITES = {
    "table-ivfree": suite_table_ivfree,
    "structure": suite_structure,
    "typeB": suite_typeB,
    "typeC": suite_typeC,
    "FG": suite_FG,
    "counterexample": suite_counterexample,
    "bounds": suite_bounds,
}


# argument handling ---------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charplie", description=__doc__.splitlines()[0])
    sub_ = ap.add_subparsers(dest="command", required=True)

    def common(sp, weight=False):
        sp.add_argument("--family", choices=["B", "C", "F4", "G2"], required=True)
        sp.add_argument("--rank", type=int, required=True)
        sp.add_argument("--p", type=int, choices=[2, 3])
        if weight:
            sp.add_argument("--weight", required=True, help="comma-separated, e.g. 1,0,0")
        sp.add_argument("--dump", metavar="PATH")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="output", action="store_const", const="json")
        fmt.add_argument("--tsv", dest="output", action="store_const", const="tsv")

    def sampling(sp):
        sp.add_argument("--samples", type=int, default=5)
        sp.add_argument("--field-bits", type=int, default=20)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub_.add_parser("structure", help="dimensions of distinguished subalgebras")
    common(sp)
    sp = sub_.add_parser("module", help="build an irreducible module")
    common(sp, weight=True)
    sp.add_argument("--emit", choices=["dims", "weights", "kernel"], default="dims")
    sp = sub_.add_parser("stabilizer", help="generic stabilizer of an irreducible module")
    common(sp, weight=True)
    sampling(sp)
    sp = sub_.add_parser("bounds", help="orbit-dimension table (TSV)")
    common(sp)
    sp.add_argument("--emit", choices=["table"], default="table")
    sp = sub_.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    sampling(sp)
    return ap


def _config(args) -> RunConfig:
    seed = getattr(args, "seed", 0)
    if os.environ.get("CHARPLIE_SEED"):
        seed = int(os.environ["CHARPLIE_SEED"])
    return RunConfig(
        command=args.command,
        family=getattr(args, "family", None),
        rank=getattr(args, "rank", None),
        weight=parse_weight(args.weight) if getattr(args, "weight", None) else None,
        p=getattr(args, "p", None),
        samples=getattr(args, "samples", 5),
        field_bits=getattr(args, "field_bits", 20),
        seed=seed,
        output=getattr(args, "output", None) or ("tsv" if args.command == "bounds" else "json"),
    )


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True, default=str) + "\n")


def _dump(path, mat, field):
    with open(path, "w") as fh:
        fh.write(dump_matrix(mat, field))


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    cfg = _config(args)
    echo = {k: v for k, v in asdict(cfg).items()}
    t0 = time.perf_counter()
    try:
        if cfg.command == "verify":
            claims = SUITES[args.suite](cfg.sample_config)
            for c in sorted(claims, key=lambda c: c["id"]):
                c["config"] = echo
                _emit(c, out)
            bad = [c for c in claims if not c["pass"]]
            if bad:
                print(f"first failing claim: {bad[0]['id']}", file=sys.stderr)
                return EXIT_FAIL
            return EXIT_PASS
        if cfg.command == "structure":
            rec = structure_record(cfg.family, cfg.rank, cfg.p)
            rec["config"] = echo
            _emit(rec, out)
            return EXIT_PASS if all(rec["identities"].values()) else EXIT_FAIL
        if cfg.command == "bounds":
            rows = bounds_table(cfg.family, cfg.rank)
            if cfg.output == "json":
                for r in rows:
                    _emit(r, out)
            else:
                out.write("class\torbit_dim\tcentralizer_dim\tgeneration_count\n")
                for r in rows:
                    gc = "" if r["generation_count"] is None else r["generation_count"]
                    out.write(f"{r['class']}\t{r['orbit_dim']}\t{r['centralizer_dim']}\t{gc}\n")
            return EXIT_PASS
        g = build_lie_algebra(cfg.family, cfg.rank, cfg.p)
        mod = module_for_weight(g, cfg.weight)
        if cfg.command == "module":
            rec = {"dim": mod.dim, "ker_drho_dim": kernel_of_action(mod).dim, "provenance": mod.provenance}
            if args.emit == "weights":
                rec["weights"] = {str(k): v for k, v in sorted(mod.weight_decomposition().items(), reverse=True)}
            if args.emit == "kernel":
                rec["kernel_basis"] = kernel_of_action(mod).space.basis.tolist()
            if args.dump:
                _dump(args.dump, mod.action.reshape(g.dim * mod.dim, mod.dim) % g.p, g.field)
        else:
            rep = generic_stabilizer(mod, cfg.sample_config)
            rec = rep.to_dict()
            if args.dump and rep.witness_basis is not None:
                _dump(args.dump, rep.witness_basis.basis, rep.witness_basis.field)
        rec["config"] = echo
        rec["seconds"] = round(time.perf_counter() - t0, 3)
        if cfg.output == "tsv":
            flat = {k: v for k, v in rec.items() if not isinstance(v, (dict, list))}
            out.write("\t".join(flat) + "\n" + "\t".join(str(v) for v in flat.values()) + "\n")
        else:
            _emit(rec, out)
        return EXIT_PASS
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UnsupportedWeight, ModuleError, RootDataError, BoundsError, AlgebraError, ValueError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
