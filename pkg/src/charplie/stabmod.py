"""Stabilizers g_v = {x in g : x.v = 0} and generic-stabilizer sampling.

A "generic" vector is a seeded uniform sample from GF(p^k)^dim V.  The
minimum over trials is exact for the witness vector, so it bounds the
generic stabilizer dimension from above; agreement across trials is the
evidence that the bound is attained.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np

from .chevalley import LieAlgebra, Subalg, distinguished_subalgebras
from .exactfield import Field, field_create, spawn_rngs
from .exactla import Subspace, kernel
from .repmod import GModule, kernel_of_action


class InvariantViolation(RuntimeError):
    """Internal consistency check failed; the result must not be trusted."""


class Verdict(str, Enum):
    GENERICALLY_FREE = "generically_free"
    VIRTUALLY_FREE = "virtually_free"
    NEITHER = "neither"


@dataclass(frozen=True)
class SampleConfig:
    field_degree: int = 20
    trials: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.field_degree < 1:
            raise ValueError("field degree must be positive")

    @property
    def verdict_grade(self) -> bool:
        return self.field_degree >= 8


@dataclass
class StabilizerReport:
    module: str
    dim_module: int
    dim_g: int
    trial_dims: list
    min_dim: int
    ker_dim: int
    intersections: dict
    verdict: str
    config: dict
    zero_module: bool = False
    witness_vector: np.ndarray | None = field(default=None, repr=False)
    witness_basis: Subspace | None = field(default=None, repr=False)

    @property
    def constant_across_trials(self) -> bool:
        return len(set(self.trial_dims)) <= 1

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if k not in ("witness_vector", "witness_basis")}
        out["constant_across_trials"] = self.constant_across_trials
        return out


def _space_of(h) -> Subspace:
    return h.space if isinstance(h, Subalg) else h


def stabilizer(mod: GModule, v, field: Field | None = None, check: bool = True) -> Subalg:
    """Kernel of x -> drho(x) v."""
    f = field or mod.field
    g = mod.algebra
    cols = f.lin_apply(mod.action, v)  # row i is drho(b_i) v
    mat = np.ascontiguousarray(np.swapaxes(cols, 0, 1))
    gv = kernel(mat, f)
    if check and gv.dim and not g.is_closed(gv):
        raise InvariantViolation("stabilizer is not a subalgebra")
    return Subalg("g_v", gv)


def _lift(space: Subspace, f: Field) -> Subspace:
    return space if space.field == f else space.extend(f)


def verdict(min_dim: int, ker_dim: int) -> Verdict:
    if min_dim < ker_dim:
        raise InvariantViolation(f"stabilizer dim {min_dim} below kernel dim {ker_dim}")
    if min_dim == 0:
        return Verdict.GENERICALLY_FREE
    if min_dim == ker_dim:
        return Verdict.VIRTUALLY_FREE
    return Verdict.NEITHER


def default_subalgebras(g: LieAlgebra) -> dict:
    if not g.special:
        return {}
    d = distinguished_subalgebras(g)
    return {"n": d["n"], "m": d["m"], "z": d["z"], "g_long": d["g_long"], "g_short": d["g_short"]}


def substabilizer_profile(report: StabilizerReport, subalgebras: dict) -> dict:
    gv = report.witness_basis
    if gv is None:
        raise ValueError("report has no witness")
    out = {}
    for name, h in subalgebras.items():
        out[name] = gv.intersect(_lift(_space_of(h), gv.field)).dim
    return out


def generic_stabilizer(
    mod: GModule,
    cfg: SampleConfig = SampleConfig(),
    subalgebras: dict | None = None,
) -> StabilizerReport:
    g = mod.algebra
    f = field_create(g.p, cfg.field_degree)
    ker = kernel_of_action(mod).space
    ker_f = _lift(ker, f)
    if subalgebras is None:
        subalgebras = default_subalgebras(g)
    cfg_echo = {"field_degree": cfg.field_degree, "trials": cfg.trials, "seed": cfg.seed, "p": g.p}
    if mod.dim == 0:
        return StabilizerReport(
            mod.provenance, 0, g.dim, [], 0, ker.dim, {}, Verdict.GENERICALLY_FREE.value,
            cfg_echo, zero_module=True,
        )
    dims, best = [], None
    for rng in spawn_rngs(cfg.seed, cfg.trials):
        v = f.random(rng, (mod.dim,))
        gv = stabilizer(mod, v, f).space
        if not gv.contains(ker_f):
            raise InvariantViolation("stabilizer does not contain ker drho")
        dims.append(gv.dim)
        if best is None or gv.dim < best[1].dim:
            best = (v, gv)
    min_dim = min(dims)
    report = StabilizerReport(
        module=mod.provenance,
        dim_module=mod.dim,
        dim_g=g.dim,
        trial_dims=dims,
        min_dim=min_dim,
        ker_dim=ker.dim,
        intersections={},
        verdict=verdict(min_dim, ker.dim).value,
        config=cfg_echo,
        witness_vector=best[0],
        witness_basis=best[1],
    )
    report.intersections = substabilizer_profile(report, subalgebras)
    return report
