"""Killing fields as first-order operators, invariance tests, and invariant lifting.

A basis element x of a represented algebra acts on functions of the state
coordinates v through its Killing field v |-> rho(x) v:

    (L_x phi)(v) = sum_i (rho(x) v)_i  d phi / d v_i.

A polynomial is invariant when every basis Killing field annihilates it; by
the Leibniz rule it then annihilates the whole subalgebra its generators
produce, so invariance is always decided on generators.

Invariants lift from V to V_m along the curve f_0 + t f_1 + ... + t^m f_m:
the coefficient of t^k is a polynomial on V_m, invariant for the lifted
action, depending only on f_0..f_k, and of degree at most one in f_k. Two
independent computation paths are provided: direct expansion in t, and a
higher-derivative composition formula that sums over exponent tuples
(q_1, ..., q_k) with q_1 + 2 q_2 + ... + k q_k = k, evaluating iterated
directional derivatives of phi at f_0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import matrices as mx
from .errors import InternalConsistencyError, StructuralError, ValidationError
from .lie import Representation
from .poly import (
    STATE,
    Monomial,
    Polynomial,
    PolyMap,
    Ring,
    Var,
    VariableBlock,
    fresh_name,
    substitute_curve,
)
from .takiff_algebra import LiftedRepresentation, build_lift


def _state_coordinates(ring: Ring, space_dim: int) -> list[Var]:
    coords = ring.state_variables()
    if len(coords) != space_dim:
        raise StructuralError(
            f"state blocks of {ring.names()} have total size {len(coords)}, "
            f"expected {space_dim}")
    return coords


def killing_velocity(rep: Representation, x_index: int, ring: Ring) -> tuple[Polynomial, ...]:
    """Components of the Killing field of basis element x_index over ``ring``.

    The ring's state blocks, flattened in order, are the coordinates of the
    representation space; entry i is the linear polynomial (rho(x) v)_i.
    """
    coords = _state_coordinates(ring, rep.space_dim)
    matrix = rep.matrices[x_index]
    out = []
    for row in matrix:
        out.append(Polynomial.linear(
            ring, {coords[b]: row[b] for b in range(len(coords)) if row[b]}))
    return tuple(out)


def apply_killing(rep: Representation, x_index: int, phi: Polynomial) -> Polynomial:
    """Exact action of the Killing field of basis element x_index on phi."""
    if not 0 <= x_index < rep.algebra.dim:
        raise StructuralError(f"basis index {x_index} out of range")
    coords = _state_coordinates(phi.ring, rep.space_dim)
    matrix = rep.matrices[x_index]
    total = Polynomial.zero(phi.ring)
    for a, var in enumerate(coords):
        dphi = phi.derivative(var)
        if dphi.is_zero():
            continue
        row = matrix[a]
        velocity = Polynomial.linear(
            phi.ring, {coords[b]: row[b] for b in range(len(coords)) if row[b]})
        total = total + velocity * dphi
    return total


def is_invariant(rep: Representation, phi: Polynomial) -> bool:
    return all(apply_killing(rep, i, phi).is_zero() for i in range(rep.algebra.dim))


def killing_combination(rep: Representation, coeffs: Sequence[Polynomial],
                        ring: Ring) -> tuple[Polynomial, ...]:
    """Components of sum_i coeffs[i] * (rho(x_i) v) over the ring's state coordinates."""
    if len(coeffs) != rep.algebra.dim:
        raise StructuralError("one coefficient per basis element required")
    n = rep.space_dim
    out = [Polynomial.zero(ring)] * n
    for i, coeff in enumerate(coeffs):
        if coeff.is_zero():
            continue
        velocity = killing_velocity(rep, i, ring)
        out = [acc + coeff * vel for acc, vel in zip(out, velocity)]
    return tuple(out)


@dataclass(frozen=True)
class KillingField:
    """The vector field attached to a fixed algebra element."""

    rep: Representation
    element: tuple[Fraction, ...]

    def components(self, ring: Ring) -> tuple[Polynomial, ...]:
        coeffs = [Polynomial.constant(ring, c) for c in self.element]
        return killing_combination(self.rep, coeffs, ring)


@dataclass(frozen=True)
class InvariantFamily:
    """Generators of an invariant subalgebra, verified at construction."""

    rep: Representation
    generators: tuple[Polynomial, ...]
    label: str = ""

    def __post_init__(self):
        for k, phi in enumerate(self.generators):
            if not is_invariant(self.rep, phi):
                raise ValidationError(
                    f"generator {k} of family {self.label!r} is not invariant")


def quadratic_invariant(gram: Sequence[Sequence[Fraction]], ring: Ring) -> Polynomial:
    """The quadratic (1/2) B(v, v) over the ring's single state block."""
    coords = ring.state_variables()
    n = len(coords)
    if len(gram) != n:
        raise StructuralError("Gram size does not match state dimension")
    total = Polynomial.zero(ring)
    for i in range(n):
        for j in range(n):
            g = gram[i][j]
            if g:
                total = total + (
                    Polynomial.variable(ring, coords[i])
                    * Polynomial.variable(ring, coords[j]) * (Fraction(g) / 2))
    return total


# ---------------------------------------------------------------------------
# Lifting invariants to V_m
# ---------------------------------------------------------------------------

def default_lift_blocks(level: int, block_size: int) -> tuple[VariableBlock, ...]:
    return tuple(VariableBlock(f"f{k}", block_size, STATE) for k in range(level + 1))


def lift_invariant(lifted: LiftedRepresentation, phi: Polynomial,
                   blocks: Sequence[VariableBlock] | None = None,
                   allow_non_invariant: bool = False) -> list[Polynomial]:
    """All m+1 curve coefficients of an invariant phi, over blocks f_0..f_m.

    phi must be invariant for the base representation; the lift of a
    non-invariant function is still well defined as a t-expansion but loses
    the invariance guarantee, so it is refused unless explicitly allowed.
    """
    if len(phi.ring.blocks) != 1 or phi.ring.blocks[0].size != lifted.block_size:
        raise StructuralError(
            f"phi must live over a single block of size {lifted.block_size}")
    if not allow_non_invariant and not is_invariant(lifted.base_rep, phi):
        raise ValidationError(
            "phi is not invariant for the base representation "
            "(pass allow_non_invariant=True to lift anyway)")
    if blocks is None:
        blocks = default_lift_blocks(lifted.level, lifted.block_size)
    if len(blocks) != lifted.level + 1:
        raise StructuralError(f"need {lifted.level + 1} blocks, got {len(blocks)}")
    return substitute_curve(phi, blocks)


def lift_family(lifted: LiftedRepresentation, family: InvariantFamily,
                blocks: Sequence[VariableBlock] | None = None) -> list[Polynomial]:
    """Every curve coefficient of every generator, in generator-major order."""
    out: list[Polynomial] = []
    for phi in family.generators:
        out.extend(lift_invariant(lifted, phi, blocks))
    return out


def _weighted_partitions(k: int) -> Iterator[tuple[int, ...]]:
    """All (q_1, ..., q_k) with q_1 + 2 q_2 + ... + k q_k = k, by direct recursion."""

    def rec(j: int, remaining: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if j == k:
            if remaining % k == 0:
                yield tuple(prefix + [remaining // k])
            return
        for q in range(remaining // j + 1):
            yield from rec(j + 1, remaining - j * q, prefix + [q])

    if k == 0:
        yield ()
        return
    yield from rec(1, k, [])


def faa_di_bruno_lift(phi: Polynomial, m: int,
                      blocks: Sequence[VariableBlock] | None = None) -> list[Polynomial]:
    """Curve coefficients of phi computed from higher directional derivatives.

    Independent of the t-expansion path: coefficient k is assembled as

        sum over (q_1..q_k), sum j*q_j = k, of
            (1 / prod q_j!) * D_{f_1}^{q_1} ... D_{f_k}^{q_k} phi  at  f_0,

    where D_{f_j} phi = sum_i f_{j,i} d phi / d x_i is the directional
    derivative along block f_j. All arithmetic is exact.
    """
    if len(phi.ring.blocks) != 1:
        raise StructuralError("phi must live over a single block")
    source = phi.ring.blocks[0]
    n = source.size
    if blocks is None:
        blocks = default_lift_blocks(m, n)
    if len(blocks) != m + 1:
        raise StructuralError(f"need {m + 1} blocks, got {len(blocks)}")
    for b in blocks:
        if b.size != n:
            raise StructuralError(f"block {b.name!r} has size {b.size}, expected {n}")

    x_name = fresh_name("x", [b.name for b in blocks])
    x_block = VariableBlock(x_name, n, STATE)
    target = Ring(tuple(blocks))
    work = Ring((x_block,) + tuple(blocks[1:]))
    phi_work = Polynomial(work, {_rename_block(mono, x_name): c
                                 for mono, c in phi.terms.items()})
    into_f0 = {(x_name, i): Polynomial.variable(target, (blocks[0].name, i))
               for i in range(n)}

    out = [phi_work.substitute(into_f0, target)]
    for k in range(1, m + 1):
        total = Polynomial.zero(target)
        for q in _weighted_partitions(k):
            term = phi_work
            for j, qj in enumerate(q, start=1):
                for _ in range(qj):
                    term = _directional_derivative(term, x_name, blocks[j].name, n)
                if term.is_zero():
                    break
            if term.is_zero():
                continue
            denom = math.prod(math.factorial(qj) for qj in q)
            total = total + term.substitute(into_f0, target) / denom
        out.append(total)
    return out


def _rename_block(mono: Monomial, new: str) -> Monomial:
    """Rename every variable of a single-block monomial into block ``new``."""
    return Monomial.from_map({(new, idx): e for (_, idx), e in mono.exps})


def _directional_derivative(p: Polynomial, x_name: str, dir_name: str, n: int) -> Polynomial:
    total = Polynomial.zero(p.ring)
    for i in range(n):
        dp = p.derivative((x_name, i))
        if dp.is_zero():
            continue
        total = total + Polynomial.variable(p.ring, (dir_name, i)) * dp
    return total


def extract_linear_part(phi_k: Polynomial, k: int,
                        block_name: str | None = None) -> tuple[Polynomial, Polynomial]:
    """Split a curve coefficient into its top-block-linear part and remainder.

    For k >= 1 coefficient k is affine in the block f_k: the linear part is
    the pairing of dphi(f_0) with f_k and the remainder is free of f_k. The
    split returns (linear part, remainder); any term of degree two or more in
    f_k contradicts that structure and raises an internal-consistency error.
    (Coefficient 0 is phi(f_0) itself and admits no such split.)
    """
    name = block_name if block_name is not None else f"f{k}"
    parts = phi_k.homogeneous_components(name)
    bad = [d for d in parts if d >= 2]
    if bad:
        raise InternalConsistencyError(
            f"terms of degree {bad} in block {name!r}; expected degree <= 1")
    zero = Polynomial.zero(phi_k.ring)
    return parts.get(1, zero), parts.get(0, zero)


def cylindrical_invariance_check(lifted: LiftedRepresentation,
                                 theta: Polynomial) -> tuple[bool, bool]:
    """Invariance of a top-block-free function, tested at both levels.

    theta is a function on V_{m-1}: either its ring has m blocks, or it has
    the full m+1 blocks with the top block unused. The first boolean views
    theta as a function on V_m constant in the top block and tests invariance
    for the level-m action; the second tests invariance for the
    level-(m-1) action directly. The two answers agree identically.
    """
    m = lifted.level
    if m < 1:
        raise StructuralError("cylindrical check needs level >= 1")
    n = lifted.block_size
    blocks = theta.ring.blocks
    if len(blocks) == m + 1 and theta.block_degree(blocks[-1].name) == 0:
        inner = theta.cast(Ring(blocks[:-1]))
    elif len(blocks) == m:
        inner = theta
    else:
        raise StructuralError(
            f"theta must be free of the top block and live over {m} "
            f"(or {m + 1}) blocks of size {n}, got {theta.ring.names()}")
    if any(b.size != n for b in inner.ring.blocks):
        raise StructuralError(
            f"theta blocks must all have size {n}, got {theta.ring.names()}")

    top_name = fresh_name(f"f{m}", [b.name for b in inner.ring.blocks])
    extended = inner.ring.extended(VariableBlock(top_name, n, STATE))
    as_level_m = is_invariant(lifted.rep, inner.cast(extended))

    sub_lift = build_lift(lifted.base_rep, m - 1)
    as_level_m_minus_1 = is_invariant(sub_lift.rep, inner)
    return (as_level_m, as_level_m_minus_1)


# ---------------------------------------------------------------------------
# Pointwise orbit tangency
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TangencyResult:
    point: tuple[Fraction, ...]
    member: bool
    witness: tuple[Fraction, ...] | None


def tangency_check(rep: Representation, fld: PolyMap,
                   points: Sequence[Sequence[Fraction]],
                   parameter_values: Sequence[Sequence[Fraction]] | None = None,
                   ) -> list[TangencyResult]:
    """Pointwise membership of field values in the span of Killing directions.

    At each sample point v the field value a(w, v) is compared, by an exact
    rank test, with the span of {rho(x_i) v}; when the value lies in the span
    the witness coefficients of one exact combination are reported.
    Non-membership is a result, not an error.
    """
    coords = _state_coordinates(fld.ring, rep.space_dim)
    param_vars: list[Var] = []
    for b in fld.ring.parameter_blocks():
        param_vars.extend(b.variables())
    results = []
    for idx, point in enumerate(points):
        if len(point) != len(coords):
            raise StructuralError(
                f"point {idx} has {len(point)} coordinates, expected {len(coords)}")
        assignment = {var: Fraction(val) for var, val in zip(coords, point)}
        if param_vars:
            if parameter_values is None or len(parameter_values) <= idx:
                raise StructuralError(f"no parameter values for point {idx}")
            values = parameter_values[idx]
            if len(values) != len(param_vars):
                raise StructuralError(
                    f"point {idx}: {len(values)} parameter values for "
                    f"{len(param_vars)} parameter variables")
            assignment.update({var: Fraction(val)
                               for var, val in zip(param_vars, values)})
        value = tuple(p.evaluate(assignment) for p in fld.components)
        vec = tuple(Fraction(x) for x in point)
        columns = tuple(mx.mat_vec(m, vec) for m in rep.matrices)
        system = mx.transpose(columns)
        witness = mx.solve(system, value)
        results.append(TangencyResult(vec, witness is not None, witness))
    return results
