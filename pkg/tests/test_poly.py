"""Polynomial core: canonical form, arithmetic, calculus, curve expansion."""

import random
from fractions import Fraction

import pytest

from takiff.errors import StructuralError
from takiff.poly import (
    PARAMETER,
    STATE,
    Monomial,
    Polynomial,
    PolyMap,
    Ring,
    VariableBlock,
    fresh_name,
    matrix_apply,
    substitute_curve,
)

X = Ring.of(VariableBlock("x", 3, STATE))
XW = Ring.of(VariableBlock("x", 2, STATE), VariableBlock("w", 1, PARAMETER))


def var(ring, name, i):
    return Polynomial.variable(ring, (name, i))


def rand_poly(rng, ring, max_degree=3, terms=5, bound=4):
    vars_ = list(ring.variables())
    out = {}
    for _ in range(terms):
        exps = {}
        for _ in range(rng.randint(0, max_degree)):
            v = rng.choice(vars_)
            exps[v] = exps.get(v, 0) + 1
        m = Monomial.from_map(exps)
        out[m] = out.get(m, Fraction(0)) + Fraction(rng.randint(-bound, bound))
    return Polynomial(ring, out)


def rand_point(rng, ring):
    return {v: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for v in ring.variables()}


def test_canonical_form_drops_zeros():
    p = Polynomial(X, {Monomial.of(("x", 0)): Fraction(0), Monomial.unit(): Fraction(2)})
    assert p.terms == {Monomial.unit(): Fraction(2)}
    assert Polynomial.zero(X).is_zero()
    assert (var(X, "x", 0) - var(X, "x", 0)).is_zero()


def test_structural_equality():
    p = var(X, "x", 0) * var(X, "x", 1)
    q = var(X, "x", 1) * var(X, "x", 0)
    assert p == q
    assert p != p + 1
    other = Ring.of(VariableBlock("x", 3, PARAMETER))
    assert p != p.cast(other)  # same terms, different ring


def test_unknown_variable_rejected():
    with pytest.raises(StructuralError):
        Polynomial(X, {Monomial.of(("y", 0)): Fraction(1)})
    with pytest.raises(StructuralError):
        Polynomial.variable(X, ("x", 3))


def test_ring_mismatch_rejected():
    with pytest.raises(StructuralError):
        var(X, "x", 0) + var(XW, "x", 0)


def test_arithmetic_identities():
    x0, x1 = var(X, "x", 0), var(X, "x", 1)
    square = (x0 + x1) ** 2
    assert square == x0 * x0 + 2 * x0 * x1 + x1 * x1
    assert (square - square).is_zero()
    assert (x0 * 2) / 2 == x0
    assert x0 ** 0 == Polynomial.constant(X, 1)
    assert (3 - x0) + (x0 - 3) == Polynomial.zero(X)


def test_power_rejects_negative():
    with pytest.raises(StructuralError):
        var(X, "x", 0) ** -1


def test_degrees():
    x0, x1 = var(X, "x", 0), var(X, "x", 1)
    p = x0 * x0 * x1 + x1
    assert p.degree() == 3
    assert p.block_degree("x") == 3
    assert Polynomial.zero(X).degree() == 0
    q = var(XW, "x", 0) * var(XW, "w", 0)
    assert q.block_degree("w") == 1
    assert q.block_degree("x") == 1


def test_derivative_product_rule():
    rng = random.Random(11)
    for _ in range(20):
        p = rand_poly(rng, X)
        q = rand_poly(rng, X)
        v = ("x", rng.randrange(3))
        lhs = (p * q).derivative(v)
        rhs = p.derivative(v) * q + p * q.derivative(v)
        assert lhs == rhs


def test_derivative_unknown_variable():
    with pytest.raises(StructuralError):
        var(X, "x", 0).derivative(("y", 0))


def test_substitute_matches_pointwise_evaluation():
    rng = random.Random(23)
    target = Ring.of(VariableBlock("y", 2, STATE))
    for _ in range(15):
        p = rand_poly(rng, X)
        images = {("x", i): rand_poly(rng, target, 2, 3) for i in range(3)}
        composed = p.substitute(images, target)
        point = rand_point(rng, target)
        direct = p.evaluate({v: images[v].evaluate(point) for v in images})
        assert composed.evaluate(point) == direct


def test_substitute_requires_target_ring_images():
    p = var(X, "x", 0)
    with pytest.raises(StructuralError):
        p.substitute({("x", 0): var(X, "x", 1)}, Ring.of(VariableBlock("y", 1, STATE)))


def test_evaluate_requires_all_variables():
    p = var(X, "x", 0) * var(X, "x", 1)
    with pytest.raises(StructuralError):
        p.evaluate({("x", 0): Fraction(1)})


def test_homogeneous_components_reassemble():
    rng = random.Random(5)
    for _ in range(10):
        p = rand_poly(rng, XW)
        parts = p.homogeneous_components("x")
        total = Polynomial.zero(XW)
        for d, comp in parts.items():
            for mono in comp.terms:
                assert mono.block_degree("x") == d
            total = total + comp
        assert total == p


def test_substitute_curve_square():
    source = Ring.of(VariableBlock("x", 1, STATE))
    p = var(source, "x", 0) ** 2
    blocks = (VariableBlock("f0", 1, STATE), VariableBlock("f1", 1, STATE),
              VariableBlock("f2", 1, STATE))
    target = Ring(blocks)
    f = [var(target, f"f{k}", 0) for k in range(3)]
    out = substitute_curve(p, blocks)
    assert out[0] == f[0] * f[0]
    assert out[1] == 2 * f[0] * f[1]
    assert out[2] == f[1] * f[1] + 2 * f[0] * f[2]


def test_substitute_curve_truncates():
    source = Ring.of(VariableBlock("x", 1, STATE))
    p = var(source, "x", 0) ** 3
    blocks = (VariableBlock("f0", 1, STATE), VariableBlock("f1", 1, STATE))
    out = substitute_curve(p, blocks)
    # the t^2 and t^3 parts (3 f0 f1^2, f1^3) are dropped
    assert len(out) == 2
    f0 = Polynomial.variable(Ring(blocks), ("f0", 0))
    f1 = Polynomial.variable(Ring(blocks), ("f1", 0))
    assert out[1] == 3 * f0 * f0 * f1


def test_substitute_curve_validates_blocks():
    source = Ring.of(VariableBlock("x", 2, STATE))
    p = var(source, "x", 0)
    with pytest.raises(StructuralError):
        substitute_curve(p, (VariableBlock("f0", 3, STATE),))
    two_blocks = Ring.of(VariableBlock("a", 1, STATE), VariableBlock("b", 1, STATE))
    with pytest.raises(StructuralError):
        substitute_curve(Polynomial.variable(two_blocks, ("a", 0)),
                         (VariableBlock("f0", 1, STATE),))


def test_ring_role_operations():
    retagged = XW.with_role("x", PARAMETER)
    assert retagged.block("x").role == PARAMETER
    assert XW.block("x").role == STATE  # original untouched
    assert XW.state_variables() == [("x", 0), ("x", 1)]
    assert retagged.state_variables() == []
    grown = XW.extended(VariableBlock("z", 2, STATE))
    assert grown.names() == ("x", "w", "z")
    assert grown.without("w").names() == ("x", "z")
    with pytest.raises(StructuralError):
        XW.without("missing")
    with pytest.raises(StructuralError):
        Ring.of(VariableBlock("x", 1, STATE), VariableBlock("x", 2, STATE))


def test_cast_between_compatible_rings():
    p = var(XW, "x", 0) * var(XW, "x", 1)
    retagged = XW.with_role("x", PARAMETER)
    q = p.cast(retagged)
    assert q.terms == p.terms
    assert q.ring == retagged
    with pytest.raises(StructuralError):
        var(XW, "w", 0).cast(Ring.of(VariableBlock("x", 2, STATE)))


def test_fresh_name_avoids_collisions():
    assert fresh_name("t", ["x", "y"]) == "t"
    assert fresh_name("t", ["t"]) == "t0"
    assert fresh_name("t", ["t", "t0", "t1"]) == "t2"


def test_matrix_apply():
    x0, x1 = var(X, "x", 0), var(X, "x", 1)
    rows = ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))
    out = matrix_apply(rows, (x0, x1))
    assert out == (-x1, x0)
    with pytest.raises(StructuralError):
        matrix_apply(((Fraction(1),),), (x0, x1))


def test_polymap_validation():
    x0, x1 = var(X, "x", 0), var(X, "x", 1)
    pm = PolyMap(X, (x0, x1), (("x", 2),))
    assert pm.evaluate({("x", 0): Fraction(1), ("x", 1): Fraction(2),
                        ("x", 2): Fraction(0)}) == (Fraction(1), Fraction(2))
    with pytest.raises(StructuralError):
        PolyMap(X, (x0,), (("x", 2),))


def test_string_rendering():
    x0, x1 = var(X, "x", 0), var(X, "x", 1)
    assert str(Polynomial.zero(X)) == "0"
    assert str(x0 * x0 - x1 / 2) == "x.0^2 - 1/2*x.1"
    assert str(Monomial.of(("x", 0), 2)) == "x.0^2"
