import random

import pytest

from q8cy.errors import DegreeOverflow, MixedFields
from q8cy.fields import FieldSpec, field_for
from q8cy.poly import (
    COORDS,
    NVARS,
    Poly,
    X1,
    XA,
    XB,
    XG,
    Y,
    YP,
    Z,
    ZP,
    grevlex_key,
    mono_mul,
    poly_arith,
)

F13 = field_for(FieldSpec("prime", p=13))


def m(**kw):
    mono = [0] * NVARS
    for name, e in kw.items():
        mono[COORDS.index(name)] = e
    return tuple(mono)


def P(field, *terms):
    return Poly.from_terms(field, list(terms))


def sym_form(field):
    """Y*Zp - Yp*Z."""
    return P(field, (m(Y=1, Zp=1), 1), (m(Yp=1, Z=1), -1 % 13))


def random_poly(field, rng, nterms=6, degree=3):
    terms = []
    for _ in range(nterms):
        mono = [0] * NVARS
        for _ in range(degree):
            mono[rng.randrange(NVARS)] += 1
        terms.append((tuple(mono), rng.randrange(1, 13)))
    return Poly.from_terms(field, terms)


def test_arith_examples():
    s = sym_form(F13)
    assert (s + (-s)).is_zero()
    f = P(F13, (m(Y=2), 1), (m(Z=2), 12))   # Y^2 - Z^2
    g = P(F13, (m(Y=2), 1), (m(Z=2), 1))    # Y^2 + Z^2
    assert poly_arith(f, g, "mul") == P(F13, (m(Y=4), 1), (m(Z=4), 12))
    prod = P(F13, (m(X1=1, Xa=1), 1)) * P(F13, (m(Xb=1, Xg=1), 1))
    assert prod == P(F13, (m(X1=1, Xa=1, Xb=1, Xg=1), 1))


def test_differentiate_examples():
    # the (1,1) entry of the displayed Jacobian block: d(t*X1^2)/dX1 = 2t*X1
    t = 7
    q = P(F13, (m(X1=2), t))
    assert q.differentiate(X1) == P(F13, (m(X1=1), (2 * t) % 13))
    assert sym_form(F13).differentiate(Y) == P(F13, (m(Zp=1), 1))
    assert P(F13, (m(Xb=1, Xg=1), 1)).differentiate(X1).is_zero()


def test_evaluate_examples():
    s = sym_form(F13)
    point = [0, 0, 0, 0, 1, 0, 0, 1]
    assert s.evaluate(point).value == 1
    # Q_1 with all t = 1 at (1,0,...,0) evaluates to 1
    q1 = P(F13, (m(X1=2), 1), (m(Xa=2), 1), (m(Xb=2), 1), (m(Xg=2), 1),
           (m(Y=1, Zp=1), 1), (m(Yp=1, Z=1), 12))
    assert q1.evaluate([1, 0, 0, 0, 0, 0, 0, 0]).value == 1
    rng = random.Random(1)
    f = random_poly(F13, rng)
    assert f.evaluate([0] * 8).value == 0


def test_substitute_zero_examples():
    q1 = P(F13, (m(X1=2), 1), (m(Xa=2), 1), (m(Xb=2), 1), (m(Xg=2), 1),
           (m(Y=1, Zp=1), 1), (m(Yp=1, Z=1), 12))
    restricted = q1.substitute_zero((Y, Z, YP, ZP))
    assert restricted == P(F13, (m(X1=2), 1), (m(Xa=2), 1), (m(Xb=2), 1),
                           (m(Xg=2), 1))
    qa = P(F13, (m(X1=1, Xa=1), 1), (m(Xb=1, Xg=1), 1), (m(Y=1, Z=1), 1),
           (m(Yp=1, Zp=1), 1), (m(Y=1, Zp=1), 1), (m(Z=1, Yp=1), 1))
    rest = qa.substitute_zero((X1, XA, XB, XG))
    assert rest == P(F13, (m(Y=1, Z=1), 1), (m(Yp=1, Zp=1), 1),
                     (m(Y=1, Zp=1), 1), (m(Z=1, Yp=1), 1))
    f = random_poly(F13, random.Random(3))
    assert f.substitute_zero(()) == f


def test_leibniz_rule():
    rng = random.Random(11)
    for _ in range(25):
        f = random_poly(F13, rng)
        g = random_poly(F13, rng)
        for v in (X1, Y, ZP):
            lhs = (f * g).differentiate(v)
            rhs = f.differentiate(v) * g + f * g.differentiate(v)
            assert lhs == rhs


def test_euler_identity_on_quadrics():
    from q8cy.calabi_yau import build_quadrics, random_instance
    inst = random_instance(9, FieldSpec("prime", p=13))
    for q in build_quadrics(inst):
        acc = Poly.zero(F13)
        for v in range(NVARS):
            acc = acc + Poly.variable(F13, v) * q.differentiate(v)
        assert acc == q * 2


def test_evaluate_commutes_with_arith():
    rng = random.Random(5)
    for _ in range(25):
        f = random_poly(F13, rng)
        g = random_poly(F13, rng)
        pt = [rng.randrange(13) for _ in range(NVARS)]
        assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)


def test_grevlex_order_properties():
    rng = random.Random(17)
    monos = []
    for _ in range(60):
        mono = [0] * NVARS
        for _ in range(rng.randrange(6)):
            mono[rng.randrange(NVARS)] += 1
        monos.append(tuple(mono))
    for a in monos[:20]:
        for b in monos[:20]:
            ka, kb = grevlex_key(a), grevlex_key(b)
            assert (ka < kb) == (not kb <= ka)
            for c in monos[:10]:
                if ka < kb and kb < grevlex_key(c):
                    assert ka < grevlex_key(c)
                # multiplicativity
                if ka < kb:
                    assert grevlex_key(mono_mul(c, a)) < grevlex_key(mono_mul(c, b))


def test_grevlex_graded_first():
    assert grevlex_key(m(X1=1)) < grevlex_key(m(Zp=2))
    # same degree: the monomial with the smaller last exponent is larger
    assert grevlex_key(m(Y=1, Z=1)) > grevlex_key(m(Y=1, Zp=1))


def test_mixed_fields_and_overflow():
    f5 = field_for(FieldSpec("prime", p=5))
    with pytest.raises(MixedFields):
        _ = sym_form(F13) + P(f5, (m(Y=1), 1))
    tall = P(F13, (m(Y=33), 1))
    with pytest.raises(DegreeOverflow):
        _ = tall * tall


def test_homogeneity_preserved():
    rng = random.Random(23)
    f = random_poly(F13, rng, degree=2)
    g = random_poly(F13, rng, degree=2)
    assert (f * g).is_homogeneous()
    assert (f + g).is_homogeneous()


def test_to_string_format():
    f = P(F13, (m(X1=2), 2), (m(Y=1, Zp=1), 12))
    assert f.to_string() == "2*X1^2 + 12*Y*Zp"
    assert Poly.zero(F13).to_string() == "0"
