"""Generalized Takiff (truncated current) algebras and lifted representations.

For a base algebra g and a level m, the truncated current algebra g_m is
g tensor K[T]/(T^{m+1}) with bracket

    [x T^r, y T^s] = [x, y] T^{r+s}   if r+s <= m, else 0.

The basis is level-major: (level 0 copy of g, then level 1, ...), which makes
every lifted representation block-lower-triangular with a Toeplitz block
pattern. A representation rho of g on V lifts to rho_m on V_m = V^{m+1} by

    rho_m(x T^r) : f_s |-> rho(x) f_s   placed in block r+s (dropped past m),

so block component j of rho_m(X) F is sum_{r <= j} rho(x_r) f_{j-r}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import matrices as mx
from .errors import InternalConsistencyError, StructuralError, ValidationError
from .lie import BilinearForm, LieAlgebra, Representation, coadjoint_rep
from .matrices import Matrix


@dataclass(frozen=True)
class TakiffContext:
    """A base algebra, a truncation level, and the derived algebra g_m.

    Basis element (r, i) of g_m stands for x_i T^r and sits at flat index
    r * dim(base) + i.
    """

    base: LieAlgebra
    level: int
    algebra: LieAlgebra

    def flat(self, r: int, i: int) -> int:
        return r * self.base.dim + i

    def unflat(self, k: int) -> tuple[int, int]:
        return divmod(k, self.base.dim)


def _level_name(base_name: str, r: int) -> str:
    return base_name if r == 0 else f"{base_name}.T{r}"


def build_takiff(base: LieAlgebra, m: int) -> TakiffContext:
    """Construct g_m; the truncated bracket is re-validated exactly.

    At m = 0 the result equals the base algebra.
    """
    if m < 0:
        raise StructuralError(f"level must be >= 0, got {m}")
    d = base.dim
    dm = (m + 1) * d
    zero = Fraction(0)
    names = tuple(_level_name(base.names[i], r) for r in range(m + 1) for i in range(d))
    constants = [[[zero] * dm for _ in range(dm)] for _ in range(dm)]
    for r in range(m + 1):
        for s in range(m + 1):
            if r + s > m:
                continue
            shift = (r + s) * d
            for i in range(d):
                row = constants[r * d + i]
                for j in range(d):
                    cij = base.c[i][j]
                    target = row[s * d + j]
                    for k in range(d):
                        if cij[k]:
                            target[shift + k] = cij[k]
    algebra = LieAlgebra(names, tuple(
        tuple(tuple(row) for row in plane) for plane in constants))
    return TakiffContext(base, m, algebra)


@dataclass(frozen=True)
class LiftedRepresentation:
    """rho_m acting on V_m = V^{m+1}, with blocks indexed by level."""

    context: TakiffContext
    base_rep: Representation
    rep: Representation

    @property
    def level(self) -> int:
        return self.context.level

    @property
    def block_size(self) -> int:
        return self.base_rep.space_dim

    @property
    def space_dim(self) -> int:
        return self.rep.space_dim


def lift_representation(ctx: TakiffContext, rho: Representation) -> LiftedRepresentation:
    """Lift a base representation to g_m; the homomorphism law is re-verified."""
    if rho.algebra != ctx.base:
        raise StructuralError("representation is not over the context's base algebra")
    d = ctx.base.dim
    n = rho.space_dim
    m = ctx.level
    nm = (m + 1) * n
    mats = []
    for r in range(m + 1):
        for i in range(d):
            rows = [[Fraction(0)] * nm for _ in range(nm)]
            block = rho.matrices[i]
            for s in range(m + 1 - r):
                out = (r + s) * n
                src = s * n
                for a in range(n):
                    row = rows[out + a]
                    brow = block[a]
                    for b in range(n):
                        if brow[b]:
                            row[src + b] = brow[b]
            mats.append(tuple(tuple(row) for row in rows))
    rep = Representation(ctx.algebra, tuple(mats))
    return LiftedRepresentation(ctx, rho, rep)


@lru_cache(maxsize=None)
def build_lift(rho: Representation, level: int) -> LiftedRepresentation:
    """Takiff context plus lifted representation, cached per (rho, level).

    The decomposition recursion descends one level at a time and would rebuild
    the same sub-level lifts over and over; all inputs are immutable, so the
    chain is memoized.
    """
    ctx = build_takiff(rho.algebra, level)
    return lift_representation(ctx, rho)


def flip_involution(level: int, block_size: int) -> Matrix:
    """Block reversal (f_0, ..., f_m) -> (f_m, ..., f_0) as a permutation matrix."""
    n = block_size
    nm = (level + 1) * n
    rows = [[Fraction(0)] * nm for _ in range(nm)]
    for s in range(level + 1):
        for a in range(n):
            rows[(level - s) * n + a][s * n + a] = Fraction(1)
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class FlipReport:
    """Outcome of the flip-conjugation identity between the two dual lifts."""

    level: int
    dim: int
    passed: bool
    failing_basis: str | None


def verify_flip_identity(g: LieAlgebra, m: int) -> FlipReport:
    """Check theta . rho(X) . theta = tau(X) for every basis element X of g_m.

    Here rho is the lift of the coadjoint action of g, tau is the coadjoint
    action of g_m itself, and theta is the block reversal. Both sides are
    exact matrices; a failure reports the first offending basis element.
    """
    ctx = build_takiff(g, m)
    rho = lift_representation(ctx, coadjoint_rep(g))
    tau = coadjoint_rep(ctx.algebra)
    theta = flip_involution(m, g.dim)
    for k, name in enumerate(ctx.algebra.names):
        lhs = mx.mul(mx.mul(theta, rho.rep.matrices[k]), theta)
        if lhs != tau.matrices[k]:
            return FlipReport(m, ctx.algebra.dim, False, name)
    return FlipReport(m, ctx.algebra.dim, True, None)


def lift_bilinear_form(ctx: TakiffContext, form: BilinearForm) -> BilinearForm:
    """Pair levels r and s only when r + s = m: B_m(x T^r, y T^s) = B(x, y).

    The input must be symmetric, nondegenerate and invariant for the base
    algebra. The output is checked, exactly, to be nondegenerate and invariant
    for g_m; with a valid input those checks cannot fail.
    """
    g = ctx.base
    if form.size != g.dim:
        raise StructuralError("form size does not match the base algebra")
    if not form.is_nondegenerate():
        raise ValidationError("input form is degenerate")
    if not form.is_invariant_for(g):
        raise ValidationError("input form is not invariant for the base algebra")
    d = g.dim
    m = ctx.level
    dm = (m + 1) * d
    rows = [[Fraction(0)] * dm for _ in range(dm)]
    for r in range(m + 1):
        s = m - r
        for i in range(d):
            for j in range(d):
                if form.gram[i][j]:
                    rows[r * d + i][s * d + j] = form.gram[i][j]
    lifted = BilinearForm(tuple(tuple(row) for row in rows))
    if not lifted.is_nondegenerate():
        raise InternalConsistencyError("lifted form should be nondegenerate")
    if not lifted.is_invariant_for(ctx.algebra):
        raise InternalConsistencyError("lifted form should be invariant for g_m")
    return lifted
