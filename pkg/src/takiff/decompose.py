"""Decomposition of invariant-annihilating vector fields into Killing combinations.

A polynomial vector field a on V_m = V^(m+1), with an optional parameter
block w, annihilates the lifted invariants when

    sum_{j,i} a_{j,i} dPhi/df_{j,i} = 0   for every lifted generator Phi.

The Dixmier property asserts that such a field is a Killing combination:
a_j = sum_{r <= j} rho(b_r) f_{j-r} for polynomial coefficients b. This
module makes that constructive. The base case (m = 0, quadratic invariant
(1/2) B(v, v)) is solved in closed form by a per-degree homotopy: with
c = G a, so that sum c_i x_i = 0, each x-homogeneous degree d gives the
antisymmetric matrix

    b_ij = (dc_i/dx_j - dc_j/dx_i) / (d + 1),

and b x = c follows from the Euler identity together with the derivative of
the syzygy (sum_j x_j dc_j/dx_i = -c_i). Higher levels reduce to lower ones:
re-tag the top block f_m as a parameter, decompose the truncated field,
subtract the correction c_m = sum_{r<m} rho(b_r) f_{m-r}, and base-solve the
residual against f_0 with every other block as a parameter.

Decompositions are not unique; only the reconstruction identity is promised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Protocol, Sequence

from . import matrices as mx
from .errors import (
    DecompositionRefused,
    InternalConsistencyError,
    RegistryError,
    StructuralError,
    ValidationError,
)
from .invariants import InvariantFamily, lift_family, quadratic_invariant
from .lie import BilinearForm, Representation
from .poly import PARAMETER, STATE, Polynomial, Ring, Var, VariableBlock, matrix_apply
from .takiff_algebra import LiftedRepresentation, build_lift


@dataclass(frozen=True)
class VectorField:
    """A polynomial self-map of the state space, with parameter blocks.

    The ring's state blocks, in order, are the level blocks f_0..f_m of V_m
    (a single block for a field on V itself); components are listed in that
    flattened order and may involve every block of the ring.
    """

    ring: Ring
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        blocks = self.ring.state_blocks()
        if not blocks:
            raise StructuralError("a vector field needs at least one state block")
        n = blocks[0].size
        for b in blocks:
            if b.size != n:
                raise StructuralError(
                    f"state blocks must share one size, got {b.size} and {n}")
        if len(self.components) != n * len(blocks):
            raise StructuralError(
                f"{len(self.components)} components for state dimension {n * len(blocks)}")
        for p in self.components:
            if p.ring != self.ring:
                raise StructuralError("all components must share the field's ring")

    @property
    def state_blocks(self) -> tuple[VariableBlock, ...]:
        return self.ring.state_blocks()

    @property
    def level(self) -> int:
        return len(self.state_blocks) - 1

    @property
    def block_size(self) -> int:
        return self.state_blocks[0].size

    def block_components(self, j: int) -> tuple[Polynomial, ...]:
        n = self.block_size
        return self.components[j * n:(j + 1) * n]

    @staticmethod
    def zero(ring: Ring) -> "VectorField":
        total = sum(b.size for b in ring.state_blocks())
        return VectorField(ring, (Polynomial.zero(ring),) * total)


@dataclass(frozen=True)
class Decomposition:
    """Killing-combination coefficients b_0..b_m, one tuple per level.

    Level r holds dim(g) polynomials over the field's ring; the promised
    identity is a_j = sum_{r <= j} rho(b_r) f_{j-r}, checked by
    verify_decomposition.
    """

    ring: Ring
    coefficients: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        if not self.coefficients:
            raise StructuralError("a decomposition needs at least level 0")
        width = len(self.coefficients[0])
        for level in self.coefficients:
            if len(level) != width:
                raise StructuralError("all levels must have the same number of coefficients")
            for p in level:
                if p.ring != self.ring:
                    raise StructuralError("all coefficients must share the decomposition's ring")

    @property
    def level(self) -> int:
        return len(self.coefficients) - 1


def annihilates_invariants(field: VectorField,
                           lifted_generators: Sequence[Polynomial],
                           ) -> tuple[bool, Polynomial | None]:
    """Whether the field kills every lifted generator, with a witness.

    Returns (True, None) when sum_{j,i} a_{j,i} dPhi/df_{j,i} vanishes
    identically for every generator Phi, else (False, first nonzero residual).
    """
    blocks = field.state_blocks
    ring = field.ring
    for phi in lifted_generators:
        for b in phi.ring.blocks:
            if not ring.has_block(b.name) or ring.block(b.name).size != b.size:
                raise StructuralError(
                    f"generator block {b.name!r} missing from field ring {ring.names()}")
        residual = Polynomial.zero(ring)
        k = 0
        for blk in blocks:
            for i in range(blk.size):
                a = field.components[k]
                k += 1
                if a.is_zero() or not phi.ring.has_var((blk.name, i)):
                    continue
                d = phi.derivative((blk.name, i))
                if d.is_zero():
                    continue
                residual = residual + a * d.cast(ring)
        if not residual.is_zero():
            return False, residual
    return True, None


# ---------------------------------------------------------------------------
# Base case on V: quadratic invariant, homotopy formula
# ---------------------------------------------------------------------------

def quadratic_base_solve(form: BilinearForm, field: VectorField,
                         ) -> tuple[tuple[Polynomial, ...], ...]:
    """Closed-form matrix M with a = M x and G M antisymmetric.

    The field must satisfy B(a(w, x), x) = 0 as a polynomial; that syzygy is
    checked first and its failure is a refusal carrying the residual. The
    matrix is assembled per x-homogeneous degree by the homotopy formula and
    the reconstruction a = M x is re-verified before returning.
    """
    blocks = field.state_blocks
    if len(blocks) != 1:
        raise StructuralError("the base solve expects a single state block")
    x = blocks[0]
    n = x.size
    if form.size != n:
        raise StructuralError(f"form size {form.size} does not match state size {n}")
    ring = field.ring
    a = field.components
    gram = form.gram
    xs = [Polynomial.variable(ring, (x.name, j)) for j in range(n)]

    c = []
    for i in range(n):
        acc = Polynomial.zero(ring)
        for j in range(n):
            if gram[i][j]:
                acc = acc + a[j] * gram[i][j]
        c.append(acc)
    syzygy = Polynomial.zero(ring)
    for i in range(n):
        syzygy = syzygy + c[i] * xs[i]
    if not syzygy.is_zero():
        raise DecompositionRefused(
            "field does not annihilate the quadratic invariant", witness=syzygy)

    by_degree = [p.homogeneous_components(x.name) for p in c]
    for i, parts in enumerate(by_degree):
        if 0 in parts:
            # impossible: the degree-1 part of the syzygy is sum_i c_i^(0) x_i
            raise InternalConsistencyError(
                f"x-free component {parts[0]} in c_{i} despite a zero syzygy")
    degrees = sorted({d for parts in by_degree for d in parts})
    zero = Polynomial.zero(ring)
    b = [[zero] * n for _ in range(n)]
    for d in degrees:
        for i in range(n):
            ci = by_degree[i].get(d, zero)
            for j in range(i + 1, n):
                cj = by_degree[j].get(d, zero)
                entry = (ci.derivative((x.name, j))
                         - cj.derivative((x.name, i))) / (d + 1)
                if entry.is_zero():
                    continue
                b[i][j] = b[i][j] + entry
                b[j][i] = b[j][i] - entry
    ginv = mx.inverse(gram)
    matrix = tuple(
        tuple(sum((b[k][j] * ginv[i][k] for k in range(n) if ginv[i][k]),
                  start=zero) for j in range(n))
        for i in range(n))
    for i in range(n):
        recon = sum((matrix[i][j] * xs[j] for j in range(n)), start=zero)
        if recon != a[i]:
            raise InternalConsistencyError(
                f"homotopy reconstruction failed at component {i}")
    return matrix


class BaseSolver(Protocol):
    """What the recursion needs from a level-0 solver.

    ``rep`` and ``family`` identify the base case; ``solve`` takes a field on
    V (one state block, any parameter blocks) and returns one polynomial
    coefficient per basis element, or raises DecompositionRefused.
    """

    rep: Representation
    family: InvariantFamily

    def solve(self, field: VectorField) -> tuple[Polynomial, ...]: ...


class QuadraticBaseSolver:
    """Base solver for a representation whose image is all of so(B).

    Validated at construction: B symmetric nondegenerate, the quadratic
    (1/2) B(v, v) invariant, dim(g) equal to dim so(B) = n(n-1)/2, and
    rho injective on the basis. Under those checks rho(g) = so(B), so the
    homotopy matrix M can always be rewritten over the basis images; the
    rewrite is still re-verified entry by entry.
    """

    def __init__(self, rep: Representation, form: BilinearForm, label: str = ""):
        n = rep.space_dim
        if form.size != n:
            raise StructuralError(
                f"form size {form.size} does not match representation space {n}")
        if not form.is_nondegenerate():
            raise ValidationError("the bilinear form must be nondegenerate")
        d = rep.algebra.dim
        if d != n * (n - 1) // 2:
            raise ValidationError(
                f"dim(g) = {d} but dim so(B) = {n * (n - 1) // 2}; "
                "the quadratic solver needs equality")
        self.rep = rep
        self.form = form
        ring = Ring.of(VariableBlock("x", n, STATE))
        self.family = InvariantFamily(
            rep, (quadratic_invariant(form.gram, ring),),
            label or "quadratic")
        # pivot rows of the flattened basis images; d independent rows exist
        # iff rho is injective, which the dimension count then upgrades to
        # rho(g) = so(B)
        flat = tuple(
            tuple(rep.matrices[i][r][s] for i in range(d))
            for r in range(n) for s in range(n))
        rows: list[int] = []
        work: list[tuple[Fraction, ...]] = []
        for idx, row in enumerate(flat):
            if mx.rank(tuple(work) + (row,)) > len(work):
                rows.append(idx)
                work.append(row)
            if len(rows) == d:
                break
        if len(rows) < d:
            raise ValidationError(
                "basis images are linearly dependent; cannot span so(B)")
        self._flat = flat
        self._pivot_rows = tuple(rows)
        self._pivot_inverse = mx.inverse(tuple(flat[r] for r in rows))

    def solve(self, field: VectorField) -> tuple[Polynomial, ...]:
        matrix = quadratic_base_solve(self.form, field)
        n = self.rep.space_dim
        d = self.rep.algebra.dim
        ring = field.ring
        zero = Polynomial.zero(ring)
        flat_m = [matrix[r][s] for r in range(n) for s in range(n)]
        coeffs = tuple(
            sum((flat_m[row] * self._pivot_inverse[i][j]
                 for j, row in enumerate(self._pivot_rows)
                 if self._pivot_inverse[i][j]), start=zero)
            for i in range(d))
        for idx in range(n * n):
            recon = sum((coeffs[i] * self._flat[idx][i]
                         for i in range(d) if self._flat[idx][i]), start=zero)
            if recon != flat_m[idx]:
                raise InternalConsistencyError(
                    "homotopy matrix fell outside the span of the basis images")
        return coeffs


class TrivialBaseSolver:
    """Base solver for the zero action: only the zero field decomposes.

    The invariant family is every coordinate function, so a field annihilates
    it exactly when every component vanishes; the decomposition is then zero.
    """

    def __init__(self, rep: Representation, label: str = ""):
        for i, m in enumerate(rep.matrices):
            if not mx.is_zero(m):
                raise ValidationError(
                    f"basis element {i} acts nontrivially; the trivial solver "
                    "needs the zero action")
        self.rep = rep
        n = rep.space_dim
        ring = Ring.of(VariableBlock("x", n, STATE))
        self.family = InvariantFamily(
            rep, tuple(Polynomial.variable(ring, ("x", i)) for i in range(n)),
            label or "coordinates")

    def solve(self, field: VectorField) -> tuple[Polynomial, ...]:
        if len(field.state_blocks) != 1:
            raise StructuralError("the base solve expects a single state block")
        for p in field.components:
            if not p.is_zero():
                raise DecompositionRefused(
                    "nonzero field under the zero action", witness=p)
        zero = Polynomial.zero(field.ring)
        return (zero,) * self.rep.algebra.dim


class SolverRegistry:
    """Write-once association of base representations with their solvers."""

    def __init__(self):
        self._solvers: dict[Representation, BaseSolver] = {}

    def register(self, solver: BaseSolver) -> BaseSolver:
        if solver.rep in self._solvers:
            raise RegistryError(
                f"a solver is already registered for this representation "
                f"of {solver.rep.algebra.names}")
        self._solvers[solver.rep] = solver
        return solver

    def lookup(self, rep: Representation) -> BaseSolver:
        solver = self._solvers.get(rep)
        if solver is None:
            raise RegistryError(
                f"no base solver registered for this representation "
                f"of {rep.algebra.names}")
        return solver


def builtin_solver(rep: Representation,
                   gram: Sequence[Sequence[Fraction]] | None = None) -> BaseSolver:
    """The built-in solver for a representation: trivial or quadratic.

    The zero action gets the trivial solver. Anything else gets the quadratic
    solver for the given Gram matrix (identity when omitted); its constructor
    rejects representations it cannot handle.
    """
    if all(mx.is_zero(m) for m in rep.matrices):
        return TrivialBaseSolver(rep)
    n = rep.space_dim
    if gram is None:
        gram = mx.identity(n)
    return QuadraticBaseSolver(rep, BilinearForm(tuple(
        tuple(Fraction(v) for v in row) for row in gram)))


# ---------------------------------------------------------------------------
# The level recursion
# ---------------------------------------------------------------------------

def _apply_at_block(rep: Representation, coeffs: Sequence[Polynomial],
                    ring: Ring, block: VariableBlock) -> list[Polynomial]:
    """Components of sum_i coeffs[i] * rho(x_i) applied to one block's variables."""
    n = rep.space_dim
    if block.size != n:
        raise StructuralError(
            f"block {block.name!r} has size {block.size}, expected {n}")
    out = [Polynomial.zero(ring)] * n
    for i, coeff in enumerate(coeffs):
        if coeff.is_zero():
            continue
        matrix = rep.matrices[i]
        for t in range(n):
            row = matrix[t]
            velocity = Polynomial.linear(
                ring, {(block.name, s): row[s] for s in range(n) if row[s]})
            if velocity.is_zero():
                continue
            out[t] = out[t] + coeff * velocity
    return out


def reconstruct_components(lifted: LiftedRepresentation, ring: Ring,
                           coefficients: Sequence[Sequence[Polynomial]],
                           ) -> tuple[Polynomial, ...]:
    """The field rho_m(b) F for given coefficients, block by block.

    Block j is sum_{r <= j} rho(b_r) f_{j-r} over the ring's state blocks.
    """
    blocks = ring.state_blocks()
    m = lifted.level
    if len(blocks) != m + 1:
        raise StructuralError(
            f"ring has {len(blocks)} state blocks, expected {m + 1}")
    if len(coefficients) != m + 1:
        raise StructuralError(
            f"{len(coefficients)} coefficient levels, expected {m + 1}")
    out: list[Polynomial] = []
    for j in range(m + 1):
        acc = [Polynomial.zero(ring)] * lifted.block_size
        for r in range(j + 1):
            part = _apply_at_block(lifted.base_rep, coefficients[r], ring, blocks[j - r])
            acc = [u + v for u, v in zip(acc, part)]
        out.extend(acc)
    return tuple(out)


def field_from_coefficients(lifted: LiftedRepresentation, ring: Ring,
                            coefficients: Sequence[Sequence[Polynomial]],
                            ) -> VectorField:
    """Manufacture the Killing combination rho_m(b) F as a vector field."""
    return VectorField(ring, reconstruct_components(lifted, ring, coefficients))


def verify_decomposition(lifted: LiftedRepresentation, field: VectorField,
                         dec: Decomposition) -> tuple[bool, tuple[Polynomial, ...]]:
    """Exact check of the reconstruction identity, with per-component residuals."""
    if dec.ring != field.ring:
        raise StructuralError("decomposition and field live over different rings")
    recon = reconstruct_components(lifted, field.ring, dec.coefficients)
    residuals = tuple(a - r for a, r in zip(field.components, recon))
    return all(p.is_zero() for p in residuals), residuals


def lifted_generators_for(lifted: LiftedRepresentation, family: InvariantFamily,
                          ring: Ring) -> list[Polynomial]:
    """The family's generators lifted over the ring's state blocks."""
    return lift_family(lifted, family, ring.state_blocks())


def takiff_decompose(lifted: LiftedRepresentation, solver: BaseSolver,
                     field: VectorField) -> Decomposition:
    """Decompose an annihilating field on V_m into Killing coefficients.

    The annihilation precondition is checked against the solver's family
    lifted to level m; failure is a refusal with the residual as witness.
    On success the returned coefficients satisfy the reconstruction identity
    exactly (an inner assertion, never expected to fire, guards each step of
    the level recursion).
    """
    if solver.rep != lifted.base_rep:
        raise StructuralError(
            "the solver is registered for a different base representation")
    if field.level != lifted.level or field.block_size != lifted.block_size:
        raise StructuralError(
            f"field shape (level {field.level}, block {field.block_size}) does "
            f"not match the lift (level {lifted.level}, block {lifted.block_size})")
    generators = lifted_generators_for(lifted, solver.family, field.ring)
    ok, witness = annihilates_invariants(field, generators)
    if not ok:
        raise DecompositionRefused(
            "field does not annihilate the lifted invariants", witness=witness)
    return _decompose_annihilating(lifted, solver, field)


def _decompose_annihilating(lifted: LiftedRepresentation, solver: BaseSolver,
                            field: VectorField) -> Decomposition:
    m = lifted.level
    ring = field.ring
    if m == 0:
        return Decomposition(ring, (tuple(solver.solve(field)),))

    n = field.block_size
    blocks = field.state_blocks
    top = blocks[-1]

    # recurse with f_m as a parameter; the truncation still annihilates
    # because no lifted generator of level m-1 involves f_m
    sub_ring = ring.with_role(top.name, PARAMETER)
    sub_field = VectorField(
        sub_ring, tuple(p.cast(sub_ring) for p in field.components[:m * n]))
    sub_lift = build_lift(lifted.base_rep, m - 1)
    sub_generators = lifted_generators_for(sub_lift, solver.family, sub_ring)
    ok, witness = annihilates_invariants(sub_field, sub_generators)
    if not ok:
        raise InternalConsistencyError(
            f"truncated field stopped annihilating at level {m - 1}: {witness}")
    sub_dec = _decompose_annihilating(sub_lift, solver, sub_field)
    lower = tuple(tuple(p.cast(ring) for p in level)
                  for level in sub_dec.coefficients)

    correction = [Polynomial.zero(ring)] * n
    for r in range(m):
        part = _apply_at_block(lifted.base_rep, lower[r], ring, blocks[m - r])
        correction = [u + v for u, v in zip(correction, part)]
    residual = [a - c for a, c in
                zip(field.components[m * n:], correction)]

    for phi in solver.family.generators:
        src = phi.ring.blocks[0]
        into_f0 = {(src.name, i): Polynomial.variable(ring, (blocks[0].name, i))
                   for i in range(n)}
        pairing = Polynomial.zero(ring)
        for t in range(n):
            d = phi.derivative((src.name, t))
            if d.is_zero() or residual[t].is_zero():
                continue
            pairing = pairing + residual[t] * d.substitute(into_f0, ring)
        if not pairing.is_zero():
            raise InternalConsistencyError(
                f"level-{m} residual is not tangent to the base invariant: {pairing}")

    base_ring = ring
    for b in blocks[1:]:
        base_ring = base_ring.with_role(b.name, PARAMETER)
    base_field = VectorField(
        base_ring, tuple(p.cast(base_ring) for p in residual))
    try:
        top_coeffs = solver.solve(base_field)
    except DecompositionRefused as exc:
        raise DecompositionRefused(
            f"base solver refused the level-{m} residual: {exc}",
            witness=exc.witness) from exc
    upper = tuple(p.cast(ring) for p in top_coeffs)
    return Decomposition(ring, lower + (upper,))


# ---------------------------------------------------------------------------
# Change of variables and parameter specialization
# ---------------------------------------------------------------------------

def _blockwise_substitution(ring: Ring, matrix: Sequence[Sequence[Fraction]],
                            ) -> dict[Var, Polynomial]:
    """v -> matrix v on every state block, parameters untouched."""
    mapping: dict[Var, Polynomial] = {}
    for blk in ring.state_blocks():
        if len(matrix) != blk.size:
            raise StructuralError(
                f"matrix size {len(matrix)} does not fit block {blk.name!r}")
        for i in range(blk.size):
            mapping[(blk.name, i)] = Polynomial.linear(
                ring, {(blk.name, k): matrix[i][k]
                       for k in range(blk.size) if matrix[i][k]})
    return mapping


def transport_field(field: VectorField,
                    theta: Sequence[Sequence[Fraction]]) -> VectorField:
    """The conjugated field v -> theta a(theta^(-1) v), blockwise on V_m."""
    theta_inv = mx.inverse(theta)
    mapping = _blockwise_substitution(field.ring, theta_inv)
    pulled = [p.substitute(mapping, field.ring) for p in field.components]
    n = field.block_size
    out: list[Polynomial] = []
    for j in range(field.level + 1):
        out.extend(matrix_apply(theta, pulled[j * n:(j + 1) * n]))
    return VectorField(field.ring, tuple(out))


def transport_decomposition(dec: Decomposition,
                            theta: Sequence[Sequence[Fraction]]) -> Decomposition:
    """Precompose every coefficient with theta^(-1), blockwise on V_m."""
    theta_inv = mx.inverse(theta)
    mapping = _blockwise_substitution(dec.ring, theta_inv)
    return Decomposition(dec.ring, tuple(
        tuple(p.substitute(mapping, dec.ring) for p in level)
        for level in dec.coefficients))


def specialize_parameters(field: VectorField,
                          values: Mapping[Var, Fraction]) -> VectorField:
    """Substitute rational values for every parameter variable of the field."""
    reduced = field.ring
    for blk in field.ring.parameter_blocks():
        for var in blk.variables():
            if var not in values:
                raise StructuralError(f"no value for parameter {var[0]}.{var[1]}")
        reduced = reduced.without(blk.name)
    mapping = {var: Polynomial.constant(reduced, values[var])
               for blk in field.ring.parameter_blocks()
               for var in blk.variables()}
    return VectorField(
        reduced, tuple(p.substitute(mapping, reduced) for p in field.components))
