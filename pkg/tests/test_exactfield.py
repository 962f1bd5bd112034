import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from charplie.exactfield import FieldError, field_create, make_rng, spawn_rngs

FIELDS = [(2, 1), (2, 8), (2, 20), (3, 1), (3, 5), (3, 12)]


def elements(p, k):
    return st.lists(st.integers(0, p - 1), min_size=k, max_size=k)


@st.composite
def field_and_elems(draw, n=3):
    p, k = draw(st.sampled_from(FIELDS))
    f = field_create(p, k)
    return f, [f(draw(elements(p, k))) for _ in range(n)]


@given(field_and_elems())
def test_field_axioms(data):
    f, (a, b, c) = data
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + f.zero == a and a * f.one == a
    assert a + (-a) == f.zero
    if a:
        assert a * a.inverse() == f.one


@given(field_and_elems(2))
def test_frobenius_is_additive_and_multiplicative(data):
    f, (a, b) = data
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    x = a
    for _ in range(f.k):
        x = x.frobenius()
    assert x == a


@given(field_and_elems(1))
def test_serialization_round_trip(data):
    f, (a,) = data
    assert f.deserialize(a.to_hex()) == a


@settings(max_examples=60)
@given(field_and_elems(2))
def test_multiplication_matches_polynomial_oracle(data):
    f, (a, b) = data
    x = sympy.symbols("x")
    mod = sympy.Poly(list(reversed(f.modulus)), x, modulus=f.p)
    pa = sympy.Poly(list(reversed(a.coeffs)), x, modulus=f.p)
    pb = sympy.Poly(list(reversed(b.coeffs)), x, modulus=f.p)
    want = (pa * pb).rem(mod)
    coeffs = [int(c) % f.p for c in reversed(want.all_coeffs())]
    coeffs += [0] * (f.k - len(coeffs))
    assert (a * b).coeffs == tuple(coeffs)


@pytest.mark.parametrize("p,k", FIELDS)
def test_vectorized_mul_and_matmul_agree_with_scalars(p, k):
    f = field_create(p, k)
    rng = make_rng(7)
    a, b = f.random(rng, (3, 4)), f.random(rng, (4, 5))
    prod = f.matmul(a, b)
    for i in range(3):
        for j in range(5):
            acc = f.zero
            for t in range(4):
                acc = acc + f.element(a, (i, t)) * f.element(b, (t, j))
            assert f.element(prod, (i, j)) == acc
    ew = f.mul(a, a)
    assert f.element(ew, (1, 2)) == f.element(a, (1, 2)) ** 2


def test_wide_matmul_path():
    f = field_create(2, 20)
    rng = make_rng(1)
    a, b = f.random(rng, (2, 30)), f.random(rng, (30, 40))
    prod = f.matmul(a, b)
    acc = f.zero
    for t in range(30):
        acc = acc + f.element(a, (1, t)) * f.element(b, (t, 7))
    assert f.element(prod, (1, 7)) == acc


def test_modulus_is_deterministic_and_irreducible():
    for p, k in [(2, 20), (3, 12)]:
        f = field_create(p, k)
        assert field_create(p, k) is f
        x = sympy.symbols("x")
        assert sympy.Poly(list(reversed(f.modulus)), x, modulus=p).is_irreducible


def test_bad_inputs():
    with pytest.raises(FieldError):
        field_create(5, 1)
    f = field_create(2, 4)
    with pytest.raises(FieldError):
        f([1, 0])
    with pytest.raises(ZeroDivisionError):
        f.zero.inverse()


def test_spawned_streams_are_reproducible():
    a = [g.integers(0, 1 << 30) for g in spawn_rngs(5, 3)]
    b = [g.integers(0, 1 << 30) for g in spawn_rngs(5, 3)]
    assert a == b and len(set(a)) == 3
