"""Exact arithmetic in GF(p^k) for p in {2, 3}.

Two layers live here.  ``FieldElement`` is an immutable scalar, convenient
for tests and serialization.  The ``Field`` object also carries vectorized
kernels over numpy arrays, which is what the linear algebra uses:

* prime fields (k = 1) store elements as plain integer arrays with values
  in ``[0, p)``;
* extension fields store an element as its coefficient vector in the
  polynomial basis, so an array of shape ``S`` of elements is an integer
  array of shape ``S + (k,)``.

Coefficients are little-endian: index ``i`` holds the coefficient of x^i.
"""

from __future__ import annotations

import functools
import json
from importlib import resources

import numpy as np

SUPPORTED_PRIMES = (2, 3)
MAX_DEGREE = 64


class FieldError(ValueError):
    pass


@functools.lru_cache(maxsize=None)
def _modulus_table():
    text = resources.files("charplie").joinpath("data/moduli.json").read_text()
    data = json.loads(text)
    return data["version"], {key: tuple(v) for key, v in data["moduli"].items()}


def table_version() -> str:
    return _modulus_table()[0]


def _int_to_digits(value: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        value, r = divmod(value, p)
        out.append(r)
    if value:
        raise FieldError("value out of range for field")
    return out


def _digits_to_int(digits, p: int) -> int:
    value = 0
    for d in reversed(list(digits)):
        value = value * p + int(d)
    return value


class Field:
    """GF(p^k) with a fixed modulus taken from the shipped table."""

    def __init__(self, p: int, k: int):
        if p not in SUPPORTED_PRIMES:
            raise FieldError(f"unsupported characteristic {p}")
        if not 1 <= k <= MAX_DEGREE:
            raise FieldError(f"degree {k} outside 1..{MAX_DEGREE}")
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = _modulus_table()[1][f"{p},{k}"]
        self.is_prime = k == 1
        self.element_shape = () if self.is_prime else (k,)
        # reduce[s, t] = coefficients of x^(s+t) mod the modulus
        if not self.is_prime:
            powers = np.zeros((2 * k - 1, k), dtype=np.int64)
            cur = np.zeros(k, dtype=np.int64)
            cur[0] = 1
            tail = -np.array(self.modulus[:k], dtype=np.int64) % p
            for e in range(2 * k - 1):
                powers[e] = cur
                top = cur[-1]
                cur = np.concatenate(([0], cur[:-1]))
                cur = (cur + top * tail) % p
            s = np.arange(k)
            self._reduce = powers[s[:, None] + s[None, :]]
            self._reduce_f = self._reduce.astype(np.float64)
            # _mul_t[t, s*k + u] = reduce[s, t, u], for BLAS-backed mulmat
            self._mul_t = np.ascontiguousarray(
                self._reduce_f.transpose(1, 0, 2).reshape(k, k * k)
            )

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def descriptor(self) -> dict:
        return {"p": self.p, "k": self.k, "table": table_version()}

    # ---- scalars -----------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("field mismatch")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.k:
                raise FieldError("coefficient vector has wrong length")
            value = _digits_to_int([int(c) % self.p for c in value], self.p)
        value = int(value)
        if self.is_prime:
            value %= self.p
        elif not 0 <= value < self.order:
            raise FieldError("value out of range for field")
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def sample_uniform(self, rng: np.random.Generator) -> "FieldElement":
        return FieldElement(self, int(rng.integers(0, self.order))) if self.order < 2**62 else self(
            [int(c) for c in rng.integers(0, self.p, size=self.k)]
        )

    def deserialize(self, text: str) -> "FieldElement":
        digits = [int(ch, 16) for ch in text]
        return self(digits)

    # ---- arrays ------------------------------------------------------

    def zeros(self, shape) -> np.ndarray:
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        return np.zeros(shape + self.element_shape, dtype=np.int64)

    def asarray(self, values) -> np.ndarray:
        """Array of elements from nested python ints (integer encodings)."""
        arr = np.asarray(values, dtype=object)
        if self.is_prime:
            return np.asarray(arr, dtype=np.int64) % self.p
        flat = [_int_to_digits(int(v), self.p, self.k) for v in arr.ravel()]
        return np.asarray(flat, dtype=np.int64).reshape(arr.shape + (self.k,))

    def lift(self, prime_array) -> np.ndarray:
        """Embed an integer array over GF(p) into this field's encoding."""
        a = np.asarray(prime_array, dtype=np.int64) % self.p
        if self.is_prime:
            return a
        out = np.zeros(a.shape + (self.k,), dtype=np.int64)
        out[..., 0] = a
        return out

    def shape(self, arr) -> tuple:
        return arr.shape if self.is_prime else arr.shape[:-1]

    def element(self, arr, index) -> "FieldElement":
        x = arr[index]
        if self.is_prime:
            return FieldElement(self, int(x))
        return FieldElement(self, _digits_to_int(x, self.p))

    def to_ints(self, arr) -> np.ndarray:
        """Integer encodings of an element array (object dtype for big k)."""
        if self.is_prime:
            return np.asarray(arr, dtype=np.int64)
        weights = [self.p**i for i in range(self.k)]
        out = np.zeros(arr.shape[:-1], dtype=object)
        for i, w in enumerate(weights):
            out = out + arr[..., i].astype(object) * w
        return out

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        return rng.integers(0, self.p, size=shape + self.element_shape, dtype=np.int64)

    def is_zero(self, arr) -> np.ndarray:
        return arr == 0 if self.is_prime else ~arr.any(axis=-1)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sum(self, a, axis):
        if not self.is_prime and axis < 0:
            axis -= 1
        return a.sum(axis=axis) % self.p

    def mulmat(self, b) -> np.ndarray:
        """Matrices of multiplication by b: row s holds x^s * b."""
        b = np.asarray(b)
        k = self.k
        out = b.reshape(-1, k).astype(np.float64) @ self._mul_t
        return out.astype(np.int64).reshape(b.shape[:-1] + (k, k)) % self.p

    def mul(self, a, b):
        if self.is_prime:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(a, b)
        return np.einsum("...s,...su->...u", a, self.mulmat(b)) % self.p

    def outer(self, a, b):
        """out[i, j] = a[i] * b[j] for element vectors a, b."""
        if self.is_prime:
            return np.multiply.outer(a, b) % self.p
        w = self.mulmat(b).astype(np.float64)  # (n, k, k)
        n = b.shape[0]
        prod = a.astype(np.float64) @ w.transpose(1, 0, 2).reshape(self.k, n * self.k)
        return (prod.reshape(a.shape[0], n, self.k).astype(np.int64)) % self.p

    def matmul(self, a, b):
        """Matrix product of element matrices a (n, m) and b (m, l)."""
        if self.is_prime:
            if a.shape[1] * (self.p - 1) ** 2 < 2**52:
                return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % self.p
            return (a @ b) % self.p
        n, m = a.shape[:2]
        l = b.shape[1]
        k = self.k
        if n < m:
            # raw coefficient products first, then one reduction of the result
            a2 = a.transpose(0, 2, 1).reshape(n * k, m).astype(np.float64)
            b2 = b.reshape(m, l * k).astype(np.float64)
            raw = (a2 @ b2) % self.p  # (n, s, l, t)
            raw = raw.reshape(n, k, l, k).transpose(0, 2, 1, 3).reshape(n * l, k * k)
            out = raw @ self._reduce_f.reshape(k * k, k)
            return out.astype(np.int64).reshape(n, l, k) % self.p
        w = self.mulmat(b).astype(np.float64)  # (m, l, k, k)
        w = w.transpose(0, 2, 1, 3).reshape(m * k, l * k)
        prod = a.reshape(n, m * k).astype(np.float64) @ w
        return prod.reshape(n, l, k).astype(np.int64) % self.p

    def lin_apply(self, int_tensor, vec):
        """Contract an integer tensor (..., n) over GF(p) with an element vector (n,)."""
        t = np.asarray(int_tensor, dtype=np.float64)
        if self.is_prime:
            return (t @ vec.astype(np.float64)).astype(np.int64) % self.p
        out = np.tensordot(t, vec.astype(np.float64), axes=([-1], [0]))
        return out.astype(np.int64) % self.p

    def scale(self, c: "FieldElement", arr):
        return self.mul(arr, self.encode(c))

    def encode(self, x: "FieldElement") -> np.ndarray:
        x = self(x)
        if self.is_prime:
            return np.int64(x.value)
        return np.asarray(x.coeffs, dtype=np.int64)

    def inv_array(self, a) -> np.ndarray:
        """Inverse of a single encoded nonzero element."""
        return self.encode(self.element(a[None], 0).inverse())


class FieldElement:
    """Immutable element of GF(p^k); ``value`` is sum(c_i * p**i)."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_int_to_digits(self.value, self.field.p, self.field.k))

    def __repr__(self):
        return f"{self.field!r}({self.to_hex()})"

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return isinstance(other, FieldElement) and other.field == self.field and other.value == self.value

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __bool__(self):
        return self.value != 0

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands from different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def _binop(self, other, fn):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        a, b = self.coeffs, other.coeffs
        return f([fn(x, y) % f.p for x, y in zip(a, b)])

    def __add__(self, other):
        if self.field.p == 2 and isinstance(other, FieldElement) and other.field == self.field:
            return FieldElement(self.field, self.value ^ other.value)
        return self._binop(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        if self.field.p == 2 and isinstance(other, FieldElement) and other.field == self.field:
            return FieldElement(self.field, self.value ^ other.value)
        return self._binop(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        f = self.field
        return f([(-c) % f.p for c in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if f.p == 2:
            return FieldElement(f, _gf2_mulmod(self.value, other.value, f))
        return f(_polymulmod(self.coeffs, other.coeffs, f))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("inversion of zero")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def to_hex(self) -> str:
        """Little-endian coefficient vector, one hex digit per coefficient."""
        return "".join(format(c, "x") for c in self.coeffs)


def _gf2_mulmod(a: int, b: int, f: Field) -> int:
    prod = 0
    while b:
        if b & 1:
            prod ^= a
        a <<= 1
        b >>= 1
    mod = _digits_to_int(f.modulus, 2)
    k = f.k
    while prod.bit_length() > k:
        prod ^= mod << (prod.bit_length() - 1 - k)
    return prod


def _polymulmod(a, b, f: Field) -> list[int]:
    p, k = f.p, f.k
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    mod = f.modulus
    for e in range(2 * k - 2, k - 1, -1):
        c = prod[e]
        if c:
            for i in range(k + 1):
                prod[e - k + i] = (prod[e - k + i] - c * mod[i]) % p
    return prod[:k]


@functools.lru_cache(maxsize=None)
def field_create(p: int, k: int = 1) -> Field:
    """The cached field GF(p^k); the same (p, k) always gives the same modulus."""
    return Field(p, k)


def arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


def make_rng(seed: int) -> np.random.Generator:
    """Splittable generator keyed by a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed) & (2**64 - 1))))


def spawn_rngs(seed: int, n: int) -> list[np.random.Generator]:
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1))
    return [np.random.Generator(np.random.PCG64(s)) for s in ss.spawn(n)]
