"""Root systems of types B, C, F4 and G2 in Luebeck's node numbering.

Numbering used throughout (node: short/long):

    B_n : 1 short, 2..n long      spin = w_1, natural = w_n
    C_n : 1 long, 2..n short      "spin" = w_1, natural = w_n
    F_4 : 1, 2 long, 3, 4 short   (same as Bourbaki)
    G_2 : 1 long, 2 short         natural = w_2

``BOURBAKI_NODE`` maps each Luebeck node to its Bourbaki label; it is a
reversal for B, C and G2 and the identity for F4.

Roots are integer coefficient vectors over the simple roots.  Squared
lengths are normalized so that short roots have length 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

FAMILIES = ("B", "C", "F4", "G2")


class RootDataError(ValueError):
    pass


def _luebeck_lengths(family: str, n: int) -> list[int]:
    if family == "B":
        return [2] + [4] * (n - 1)
    if family == "C":
        return [4] + [2] * (n - 1)
    if family == "F4":
        return [4, 4, 2, 2]
    if family == "G2":
        return [6, 2]
    raise RootDataError(f"unknown family {family!r}")


def bourbaki_node(family: str, n: int, node: int) -> int:
    """Bourbaki label (1-based) of a Luebeck node (1-based)."""
    return node if family == "F4" else n + 1 - node


def special_characteristic(family: str) -> int:
    return 3 if family == "G2" else 2


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    lengths: tuple = field(repr=False)  # squared lengths of the simple roots
    gram: np.ndarray = field(repr=False, compare=False)  # (alpha_i, alpha_j)

    @cached_property
    def cartan(self) -> np.ndarray:
        """cartan[i, j] = <alpha_j, alpha_i^vee>."""
        g = self.gram
        return (2 * g) // np.array(self.lengths)[:, None]

    @cached_property
    def roots(self) -> list[tuple[int, ...]]:
        """Positive roots ordered by (height, coefficients), then their negatives."""
        pos = sorted(self._positive(), key=lambda r: (sum(r), tuple(-c for c in r)))
        return pos + [tuple(-c for c in r) for r in pos]

    def _positive(self):
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(n):
                    s = self.reflect(r, i)
                    if all(c >= 0 for c in s) and s not in found:
                        found.add(s)
                        nxt.append(s)
            frontier = nxt
        return found

    @cached_property
    def positive_roots(self) -> list[tuple[int, ...]]:
        return self.roots[: len(self.roots) // 2]

    @cached_property
    def root_index(self) -> dict:
        return {r: i for i, r in enumerate(self.roots)}

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_index

    def inner(self, a, b) -> int:
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def length2(self, a) -> int:
        return self.inner(a, a)

    def is_short(self, a) -> bool:
        return self.length2(a) == 2

    def is_long(self, a) -> bool:
        return self.length2(a) > 2

    def height(self, a) -> int:
        return sum(a)

    def reflect(self, r, i: int) -> tuple[int, ...]:
        """Simple reflection s_i applied to a root given in simple-root coordinates."""
        pairing = int(self.cartan[i] @ np.asarray(r))
        out = list(r)
        out[i] -= pairing
        return tuple(out)

    def coroot_coords(self, a) -> tuple[int, ...]:
        """alpha^vee in terms of the simple coroots."""
        la = self.length2(a)
        out = []
        for c, li in zip(a, self.lengths):
            q = Fraction(c * li, la)
            if q.denominator != 1:
                raise RootDataError("non-integral coroot")
            out.append(int(q))
        return tuple(out)

    def pairing(self, weight, a) -> int:
        """<lambda, alpha^vee> for a weight in fundamental-weight coordinates."""
        return int(np.dot(self.coroot_coords(a), weight))

    def root_to_weight(self, a) -> tuple[int, ...]:
        return tuple(int(x) for x in self.cartan @ np.asarray(a))

    @cached_property
    def short_nodes(self) -> list[int]:
        return [i for i, l in enumerate(self.lengths) if l == 2]

    @cached_property
    def long_nodes(self) -> list[int]:
        return [i for i, l in enumerate(self.lengths) if l > 2]

    @property
    def n_roots(self) -> int:
        return len(self.roots)

    def highest_root(self) -> tuple[int, ...]:
        return self.positive_roots[-1]

    def weight_from_root_lattice(self, weight) -> tuple[int, ...] | None:
        """Simple-root coordinates of a weight, or None if it is not in the root lattice."""
        c = np.linalg.solve(self.cartan.astype(float), np.asarray(weight, dtype=float))
        ci = np.rint(c).astype(int)
        if not np.array_equal(self.cartan @ ci, np.asarray(weight)):
            return None
        return tuple(int(x) for x in ci)


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    if family not in FAMILIES:
        raise RootDataError(f"unknown family {family!r}")
    if family in ("B", "C") and rank < 2:
        raise RootDataError("types B and C need rank >= 2")
    if family == "F4" and rank != 4 or family == "G2" and rank != 2:
        raise RootDataError(f"{family} has rank {4 if family == 'F4' else 2}")
    lengths = _luebeck_lengths(family, rank)
    gram = np.zeros((rank, rank), dtype=np.int64)
    for i in range(rank):
        gram[i, i] = lengths[i]
        if i + 1 < rank:
            gram[i, i + 1] = gram[i + 1, i] = -max(lengths[i], lengths[i + 1]) // 2
    gram.setflags(write=False)
    return RootSystem(family, rank, tuple(lengths), gram)


def parse_weight(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(","))


def is_dominant(weight) -> bool:
    return all(c >= 0 for c in weight)


def split_weight(rs: RootSystem, weight):
    """(lambda_s, lambda_l): the parts supported on short and on long simple nodes."""
    if len(weight) != rs.rank:
        raise RootDataError("weight has wrong length")
    if not is_dominant(weight):
        raise RootDataError("weight is not dominant")
    short = tuple(c if i in rs.short_nodes else 0 for i, c in enumerate(weight))
    long_ = tuple(c if i in rs.long_nodes else 0 for i, c in enumerate(weight))
    return short, long_


def restricted_split(weight, p: int):
    """lambda = lambda_0 + p^r lambda_1 with lambda_0 restricted and r = 1."""
    if not is_dominant(weight):
        raise RootDataError("weight is not dominant")
    lam0 = tuple(c % p for c in weight)
    lam1 = tuple(c // p for c in weight)
    return lam0, lam1, 1


def is_restricted(weight, p: int) -> bool:
    return all(0 <= c < p for c in weight)


def pairing_parity_check(rs: RootSystem, weight, alpha) -> int:
    """<alpha^vee, lambda> for lambda in the root lattice of B_n; asserted even."""
    if rs.family != "B":
        raise RootDataError("parity statement is for type B")
    if not rs.is_short(alpha):
        raise RootDataError("alpha must be a short root")
    if rs.weight_from_root_lattice(weight) is None:
        raise RootDataError("weight is not in the root lattice")
    value = rs.pairing(weight, alpha)
    assert value % 2 == 0, (weight, alpha, value)
    return value


def weyl_orbit(rs: RootSystem, weight) -> list[tuple[int, ...]]:
    """Orbit of a weight (fundamental-weight coordinates) under the Weyl group."""
    start = tuple(weight)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(rs.rank):
                c = mu[i]
                if c:
                    nu = tuple(m - c * int(rs.cartan[j, i]) for j, m in enumerate(mu))
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
        frontier = nxt
    return sorted(seen, reverse=True)


def simple_root_weights(rs: RootSystem) -> list[tuple[int, ...]]:
    """alpha_i in fundamental-weight coordinates."""
    return [tuple(int(x) for x in rs.cartan[:, i]) for i in range(rs.rank)]


def all_weights_box(rs: RootSystem, bound: int):
    return itertools.product(range(-bound, bound + 1), repeat=rs.rank)
