"""Dense exact linear algebra over a ``Field``.

Matrices are numpy arrays in the field's element encoding (see
``exactfield``).  Over GF(2) the elimination runs on bit-packed rows with
word-level XOR; every other field goes through the vectorized scalar path.
Pivoting always takes the first nonzero entry, so results are reproducible.
"""

from __future__ import annotations

import numpy as np

from .exactfield import Field, field_create


class DimensionError(ValueError):
    pass


def _is_gf2(field: Field) -> bool:
    return field.p == 2 and field.is_prime


def _pack_gf2(m: np.ndarray) -> np.ndarray:
    rows, cols = m.shape
    words = max(1, -(-cols // 64))
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :cols] = m & 1
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64)


def _unpack_gf2(w: np.ndarray, cols: int) -> np.ndarray:
    bits = np.unpackbits(w.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :cols].astype(np.int64)


def _rref_gf2(m: np.ndarray):
    rows, cols = m.shape
    w = _pack_gf2(m)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        word, bit = divmod(c, 64)
        col = (w[r:, word] >> np.uint64(bit)) & np.uint64(1)
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            w[[r, i]] = w[[i, r]]
        hit = ((w[:, word] >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        hit[r] = False
        if hit.any():
            w[hit] ^= w[r]
        pivots.append(c)
        r += 1
    return _unpack_gf2(w[:r], cols), pivots


def _rref_generic(m: np.ndarray, field: Field):
    m = m.copy()
    rows = m.shape[0]
    cols = m.shape[1]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(~field.is_zero(m[r:, c]))
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = field.inv_array(m[r, c])
        m[r, c:] = field.mul(m[r, c:], inv)
        factors = m[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(~field.is_zero(factors))
        if hit.size:
            m[hit, c:] = field.sub(m[hit, c:], field.outer(factors[hit], m[r, c:]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(m: np.ndarray, field: Field):
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    m = np.asarray(m, dtype=np.int64)
    if m.ndim == 1 + len(field.element_shape):
        m = m[None]
    if m.shape[0] == 0 or m.shape[1] == 0:
        return field.zeros((0, m.shape[1])), []
    if _is_gf2(field):
        return _rref_gf2(m % 2)
    return _rref_generic(m % field.p, field)


def rank(m: np.ndarray, field: Field) -> int:
    return len(rref(m, field)[1])


class Subspace:
    """A subspace of field^ambient_dim held as a basis in unique RREF."""

    def __init__(self, field: Field, ambient_dim: int, basis=None, _reduced=False):
        self.field = field
        self.ambient_dim = ambient_dim
        if basis is None:
            basis = field.zeros((0, ambient_dim))
        basis = np.asarray(basis, dtype=np.int64)
        if basis.ndim == len(field.element_shape) + 1:
            basis = basis[None]
        if basis.shape[1] != ambient_dim:
            raise DimensionError("basis vectors have wrong length")
        if _reduced:
            self.basis = basis
            self.pivots = [int(np.flatnonzero(~field.is_zero(row))[0]) for row in basis]
        else:
            self.basis, self.pivots = rref(basis, field)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        eye = field.lift(np.eye(n, dtype=np.int64))
        return cls(field, n, eye, _reduced=True)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and np.array_equal(self.basis, other.basis)
        )

    def _check(self, other: "Subspace"):
        if self.field != other.field:
            raise DimensionError("subspaces over different fields")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient dimension mismatch")

    def reduce(self, vecs: np.ndarray) -> np.ndarray:
        """Residues of vectors (rows) modulo the subspace."""
        f = self.field
        vecs = np.asarray(vecs, dtype=np.int64)
        single = vecs.ndim == len(f.element_shape) + 1
        if single:
            vecs = vecs[None]
        if self.dim:
            coeffs = vecs[:, self.pivots]
            vecs = f.sub(vecs, f.matmul(coeffs, self.basis))
        return vecs[0] if single else vecs

    def contains(self, other) -> bool:
        if isinstance(other, Subspace):
            self._check(other)
            if other.dim == 0:
                return True
            other = other.basis
        return bool(self.field.is_zero(self.reduce(other)).all())

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient_dim, np.concatenate([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection."""
        self._check(other)
        f = self.field
        n = self.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(f, n)
        top = np.concatenate([self.basis, self.basis], axis=1)
        bottom = np.concatenate([other.basis, f.zeros(other.basis.shape[:1] + (n,))], axis=1)
        red, pivots = rref(np.concatenate([top, bottom]), f)
        rows = [i for i, c in enumerate(pivots) if c >= n]
        return Subspace(f, n, red[rows, n:])

    def quotient_map(self) -> np.ndarray:
        """Matrix of a surjection ambient -> ambient / self (coordinates on non-pivot columns)."""
        f = self.field
        n = self.ambient_dim
        free = [c for c in range(n) if c not in set(self.pivots)]
        q = f.zeros((len(free), n))
        eye = f.lift(np.eye(len(free), dtype=np.int64))
        q[:, free] = eye
        if self.dim:
            q[:, self.pivots] = f.neg(np.swapaxes(self.basis[:, free], 0, 1))
        return q

    def complement_coordinates(self) -> list[int]:
        pivots = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in pivots]

    def extend(self, field: Field) -> "Subspace":
        """Same subspace viewed over an extension field of the same characteristic."""
        if field.p != self.field.p or not self.field.is_prime:
            raise DimensionError("can only extend prime-field subspaces")
        return Subspace(field, self.ambient_dim, field.lift(self.basis), _reduced=True)


def span(vecs, field: Field, ambient_dim: int | None = None) -> Subspace:
    vecs = np.asarray(vecs, dtype=np.int64)
    if ambient_dim is None:
        ambient_dim = vecs.shape[-1 - len(field.element_shape)]
    if vecs.size == 0:
        return Subspace.zero(field, ambient_dim)
    return Subspace(field, ambient_dim, vecs)


def kernel(m: np.ndarray, field: Field) -> Subspace:
    """Right null space {v : m v = 0}."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    red, pivots = rref(m, field)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = field.zeros((len(free), cols))
    one = field.lift(np.int64(1))
    for i, c in enumerate(free):
        basis[i, c] = one
        if pivots:
            basis[i, pivots] = field.neg(red[:, c])
    return Subspace(field, cols, basis)


def solve(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray | None:
    """One solution x of a x = b, or None when the system is inconsistent."""
    f = field
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    cols = a.shape[1]
    aug = np.concatenate([a, b[:, None]], axis=1)
    red, pivots = rref(aug, f)
    if pivots and pivots[-1] == cols:
        return None
    x = f.zeros(cols)
    for row, c in enumerate(pivots):
        x[c] = red[row, cols]
    return x


def intersect_all(spaces) -> Subspace:
    spaces = list(spaces)
    out = spaces[0]
    for s in spaces[1:]:
        out = out.intersect(s)
    return out


def dump_matrix(m: np.ndarray, field: Field) -> str:
    """Text dump: header "p k rows cols" then one line of hex entries per row."""
    rows, cols = field.shape(m)
    lines = [f"{field.p} {field.k} {rows} {cols}"]
    for i in range(rows):
        lines.append(" ".join(field.element(m, (i, j)).to_hex() for j in range(cols)))
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> tuple[np.ndarray, Field]:
    lines = text.strip().splitlines()
    p, k, rows, cols = (int(t) for t in lines[0].split())
    field = field_create(p, k)
    m = field.zeros((rows, cols))
    for i in range(rows):
        entries = lines[1 + i].split()
        for j, tok in enumerate(entries):
            m[i, j] = field.encode(field.deserialize(tok))
    return m, field
