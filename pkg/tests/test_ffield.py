import random

import pytest

from unirack.ffield import (
    FieldError, arith, embedding, frobenius, is_prime, make_field,
)


def brute_irreducibles_deg2_f2():
    # oracle: enumerate monic degree-2 polynomials over F_2, test for roots
    irr = []
    for c0 in range(2):
        for c1 in range(2):
            if all((x * x + c1 * x + c0) % 2 != 0 for x in range(2)):
                irr.append((c0, c1, 1))
    return irr


def test_prime_field_f2():
    F = make_field(2, 1)
    assert F.q == 2 and F.generator == 1
    assert F.add(1, 1) == 0 and F.mul(1, 1) == 1


def test_f4_modulus_and_generator():
    # the only irreducible monic quadratic over F_2 is x^2 + x + 1
    assert brute_irreducibles_deg2_f2() == [(1, 1, 1)]
    F = make_field(2, 2)
    assert F.modulus == (1, 1, 1)
    w = F.generator
    assert w == F.from_coeffs([0, 1])
    # w^2 = w + 1 under that modulus
    assert F.mul(w, w) == F.add(w, 1)


def test_f9_generator_order():
    F = make_field(3, 2)
    g = F.generator
    acc, order = g, 1
    while acc != 1:
        acc = F.mul(acc, g)
        order += 1
    assert order == 8


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (2, 3), (7, 1)])
def test_field_axioms_random(p, m):
    F = make_field(p, m)
    rng = random.Random(1234)
    for _ in range(300):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.q - 1) == 1
            assert F.pow(a, -1) == F.inv(a)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3), (5, 2)])
def test_frobenius_is_automorphism(p, m):
    F = make_field(p, m)
    rng = random.Random(77)
    for _ in range(200):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    # fixes exactly the prime subfield
    fixed = [a for a in F.elements() if F.frobenius(a) == a]
    assert len(fixed) == p
    # frobenius composed m times is the identity
    for a in range(F.q):
        assert F.frobenius(F.frobenius(a, 1), m - 1) == a
        assert F.frobenius(a, 0) == a


def test_f4_frobenius_example():
    F = make_field(2, 2)
    w = F.generator
    assert F.frobenius(w, 1) == F.add(w, 1)


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (7, 1), (3, 2), (2, 2), (2, 3)])
def test_square_counts(p, m):
    F = make_field(p, m)
    squares = {a for a in F.elements() if F.is_square(a)}
    brute = {F.mul(a, a) for a in F.elements()}
    assert squares == brute
    if p == 2:
        assert len(squares) == F.q
    else:
        assert len(squares) == (F.q - 1) // 2 + 1


def test_f5_two_is_not_a_square():
    F = make_field(5, 1)
    assert {F.mul(a, a) for a in F.elements()} == {0, 1, 4}
    assert not F.is_square(2)


def test_norm_minus_one_f9():
    F9 = make_field(3, 2)
    xi = F9.norm_minus_one()
    assert F9.pow(xi, 2) == F9.neg(1)  # xi^(q0-1) = -1 with q0 = 3
    down = embedding(3, 1, 2)
    zeta = F9.mul(xi, xi)
    z3 = down.descend(zeta)  # xi^2 lies in F_3 ...
    assert not make_field(3, 1).is_square(z3)  # ... and is a non-square there
    with pytest.raises(FieldError):
        make_field(2, 2).norm_minus_one()
    with pytest.raises(FieldError):
        make_field(3, 1).norm_minus_one()


@pytest.mark.parametrize("p,a,b", [(2, 2, 6), (2, 2, 4), (3, 1, 2), (2, 1, 3)])
def test_embedding_commutes_with_arithmetic(p, a, b):
    emb = embedding(p, a, b)
    F, G = emb.src, emb.dst
    rng = random.Random(9)
    for _ in range(200):
        x, y = rng.randrange(F.q), rng.randrange(F.q)
        assert emb.apply(F.add(x, y)) == G.add(emb.apply(x), emb.apply(y))
        assert emb.apply(F.mul(x, y)) == G.mul(emb.apply(x), emb.apply(y))
        assert emb.descend(emb.apply(x)) == x
    assert emb.apply(0) == 0 and emb.apply(1) == 1


def test_cross_field_arithmetic_is_an_error():
    a = make_field(2, 2).element(1)
    b = make_field(2, 6).element(1)
    with pytest.raises(FieldError):
        _ = a + b
    emb = embedding(2, 2, 6)
    assert (emb(a) + b).code == 0


def test_element_wrapper_and_arith_dispatch():
    F = make_field(3, 1)
    x = F.element(2)
    assert (x + (-x)).code == 0
    assert arith("add", x, arith("neg", x)).code == 0
    assert arith("pow", F.element(F.generator), F.q - 1).code == 1
    w = make_field(2, 2).element(make_field(2, 2).generator)
    assert arith("mul", w, w) == w + 1
    with pytest.raises(ZeroDivisionError):
        arith("div", x, F.element(0))


def test_make_field_validation():
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        make_field(2, 21)
    with pytest.raises(FieldError):
        make_field(2, 0)
    assert is_prime(2) and not is_prime(1)


def test_format_and_header():
    F = make_field(2, 2)
    assert F.format_element(0) == "0" and F.format_element(1) == "1"
    assert F.format_element(F.generator) == "g^1"
    assert F.format_element(3, style="coeffs") == "[1,1]"
    assert F.header() == {"p": 2, "m": 2, "modulus": [1, 1, 1]}
    assert make_field(5, 1).format_element(3) == "3"
