"""Finite-dimensional Lie algebras over the rationals, given by structure constants.

An algebra is validated eagerly at construction: antisymmetry of the constants
and the Jacobi identity are checked exactly, so every downstream computation
may assume both. Representations are matrices per basis element, with the
homomorphism identity rho([x,y]) = rho(x)rho(y) - rho(y)rho(x) verified
exactly for all basis pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import matrices as mx
from .errors import StructuralError, ValidationError
from .matrices import Matrix, Vector


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants c[i][j][k] with [x_i, x_j] = sum_k c[i][j][k] x_k."""

    names: tuple[str, ...]
    c: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        d = len(self.names)
        if d < 1:
            raise ValidationError("algebra dimension must be positive")
        if len(set(self.names)) != d:
            raise ValidationError(f"duplicate basis names: {self.names}")
        if len(self.c) != d or any(len(ci) != d for ci in self.c) or any(
                len(cij) != d for ci in self.c for cij in ci):
            raise StructuralError(f"structure constants must form a {d}x{d}x{d} array")
        self._check_antisymmetry()
        self._check_jacobi()

    @property
    def dim(self) -> int:
        return len(self.names)

    def _check_antisymmetry(self):
        d = self.dim
        for i in range(d):
            for j in range(i, d):
                for k in range(d):
                    if self.c[i][j][k] != -self.c[j][i][k]:
                        raise ValidationError(
                            f"antisymmetry fails at (i,j,k)=({i},{j},{k}): "
                            f"c[{i}][{j}][{k}]={self.c[i][j][k]} vs "
                            f"-c[{j}][{i}][{k}]={-self.c[j][i][k]}")

    def _check_jacobi(self):
        # Given antisymmetry, triples with a repeated index hold identically,
        # so i < j < k suffices.
        d = self.dim
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    acc = [Fraction(0)] * d
                    for (a, b, e) in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.c[b][e]
                        for l in range(d):
                            coeff = inner[l]
                            if coeff == 0:
                                continue
                            row = self.c[a][l]
                            for p in range(d):
                                if row[p]:
                                    acc[p] += coeff * row[p]
                    if any(acc):
                        raise ValidationError(
                            f"Jacobi identity fails at basis triple (i,j,k)=({i},{j},{k}) "
                            f"({self.names[i]},{self.names[j]},{self.names[k]}): "
                            f"residual {tuple(acc)}")

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        """Bracket of two coefficient vectors."""
        d = self.dim
        acc = [Fraction(0)] * d
        for i in range(d):
            if u[i] == 0:
                continue
            for j in range(d):
                if v[j] == 0:
                    continue
                row = self.c[i][j]
                coeff = u[i] * v[j]
                for k in range(d):
                    if row[k]:
                        acc[k] += coeff * row[k]
        return tuple(acc)


def make_lie_algebra(names: Sequence[str], constants: Sequence) -> LieAlgebra:
    """Build and validate a LieAlgebra from any nested numeric array."""
    c = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in constants)
    return LieAlgebra(tuple(names), c)


@dataclass(frozen=True)
class Representation:
    """A Lie algebra plus one square rational matrix per basis element."""

    algebra: LieAlgebra
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        d = self.algebra.dim
        if len(self.matrices) != d:
            raise StructuralError(f"{len(self.matrices)} matrices for dimension {d}")
        n = len(self.matrices[0])
        for m in self.matrices:
            if mx.shape(m) != (n, n):
                raise StructuralError("representation matrices must be square, equal sizes")
        for i in range(d):
            for j in range(i + 1, d):
                lhs = mx.commutator(self.matrices[i], self.matrices[j])
                rhs = mx.zeros(n, n)
                for k in range(d):
                    coeff = self.algebra.c[i][j][k]
                    if coeff:
                        rhs = mx.add(rhs, mx.scale(self.matrices[k], coeff))
                if lhs != rhs:
                    raise ValidationError(
                        f"homomorphism property fails on basis pair "
                        f"({self.algebra.names[i]}, {self.algebra.names[j]})")

    @property
    def space_dim(self) -> int:
        return len(self.matrices[0])

    def matrix_of(self, element: Sequence[Fraction]) -> Matrix:
        """Matrix of an arbitrary element given by basis coefficients."""
        n = self.space_dim
        acc = mx.zeros(n, n)
        for coeff, m in zip(element, self.matrices):
            if coeff:
                acc = mx.add(acc, mx.scale(m, Fraction(coeff)))
        return acc


@dataclass(frozen=True)
class BilinearForm:
    """A symmetric rational bilinear form given by its Gram matrix."""

    gram: Matrix

    def __post_init__(self):
        if not mx.is_symmetric(self.gram):
            raise ValidationError("Gram matrix must be symmetric")

    @property
    def size(self) -> int:
        return len(self.gram)

    def is_nondegenerate(self) -> bool:
        return mx.det(self.gram) != 0

    def value(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum(
            (Fraction(u[i]) * self.gram[i][j] * Fraction(v[j])
             for i in range(self.size) for j in range(self.size)
             if self.gram[i][j]),
            Fraction(0))

    def is_invariant_for(self, g: LieAlgebra) -> bool:
        """Exact check of B([z,x],y) + B(x,[z,y]) = 0 on all basis triples."""
        if self.size != g.dim:
            raise StructuralError("form size does not match algebra dimension")
        d = g.dim
        for z in range(d):
            for x in range(d):
                zx = g.c[z][x]
                for y in range(d):
                    zy = g.c[z][y]
                    lhs = sum((zx[k] * self.gram[k][y] for k in range(d) if zx[k]),
                              Fraction(0))
                    rhs = sum((self.gram[x][k] * zy[k] for k in range(d) if zy[k]),
                              Fraction(0))
                    if lhs + rhs != 0:
                        return False
        return True


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def algebra_from_matrices(names: Sequence[str], mats: Sequence[Matrix],
                          check_closure: bool = True) -> tuple[LieAlgebra, Representation]:
    """Structure constants of a matrix Lie algebra with the given basis.

    Pairwise commutators are expressed over the basis by exact linear solving;
    a commutator outside the span is a validation error. Returns the algebra
    together with its defining representation.
    """
    d = len(names)
    if len(mats) != d:
        raise StructuralError("one matrix per basis name required")
    n = len(mats[0])
    flat_basis = mx.transpose(tuple(
        tuple(m[r][s] for r in range(n) for s in range(n)) for m in mats))
    constants = []
    for i in range(d):
        plane = []
        for j in range(d):
            comm = mx.commutator(mats[i], mats[j])
            target = tuple(comm[r][s] for r in range(n) for s in range(n))
            coeffs = mx.solve(flat_basis, target)
            if coeffs is None:
                raise ValidationError(
                    f"[{names[i]}, {names[j]}] is outside the span of the basis")
            if check_closure and mx.mat_vec(flat_basis, coeffs) != target:
                raise ValidationError("inconsistent solve for structure constants")
            plane.append(tuple(coeffs))
        constants.append(tuple(plane))
    algebra = LieAlgebra(tuple(names), tuple(constants))
    return algebra, Representation(algebra, tuple(mats))


def _rotation_generator(n: int, i: int, j: int) -> Matrix:
    # sends e_i to e_j and e_j to -e_i; for (0,1) and n=2 this is [[0,-1],[1,0]]
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[j][i] = Fraction(1)
    rows[i][j] = Fraction(-1)
    return tuple(tuple(r) for r in rows)


def so_n(n: int) -> tuple[LieAlgebra, Representation]:
    """so(n) with basis the rotation generators r_ij (i < j, lexicographic)."""
    if n < 2:
        raise ValidationError(f"so(n) needs n >= 2, got {n}")
    names = []
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            names.append(f"r{i}{j}")
            mats.append(_rotation_generator(n, i, j))
    return algebra_from_matrices(names, mats)


def so_pq(p: int, q: int) -> tuple[LieAlgebra, Representation]:
    """so(p, q) for the diagonal form diag(1,...,1,-1,...,-1)."""
    n = p + q
    if n < 2 or p < 0 or q < 0:
        raise ValidationError(f"so(p,q) needs p+q >= 2, got p={p}, q={q}")
    sign = [Fraction(1)] * p + [Fraction(-1)] * q
    names = []
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            names.append(f"r{i}{j}")
            base = _rotation_generator(n, i, j)
            mats.append(tuple(tuple(sign[r] * base[r][s] for s in range(n))
                              for r in range(n)))
    return algebra_from_matrices(names, mats)


def sl2() -> tuple[LieAlgebra, Representation]:
    """sl(2) with basis (e, h, f) and its natural two-dimensional representation."""
    e = mx.mat([[0, 1], [0, 0]])
    h = mx.mat([[1, 0], [0, -1]])
    f = mx.mat([[0, 0], [1, 0]])
    return algebra_from_matrices(("e", "h", "f"), (e, h, f))


def gl_n(n: int) -> tuple[LieAlgebra, Representation]:
    """gl(n) with the elementary-matrix basis E_ij, acting on the natural space."""
    if n < 1:
        raise ValidationError(f"gl(n) needs n >= 1, got {n}")
    names = []
    mats = []
    for i in range(n):
        for j in range(n):
            names.append(f"E{i}{j}")
            rows = [[Fraction(0)] * n for _ in range(n)]
            rows[i][j] = Fraction(1)
            mats.append(tuple(tuple(r) for r in rows))
    return algebra_from_matrices(names, mats)


def abelian(dim: int, mats: Sequence[Matrix] | None = None) -> tuple[LieAlgebra, Representation]:
    """Abelian algebra of the given dimension.

    When matrices are supplied they must commute pairwise (the representation
    validator enforces this); otherwise the zero action on a space of the same
    dimension is used.
    """
    if dim < 1:
        raise ValidationError("abelian algebra needs positive dimension")
    names = tuple(f"a{i}" for i in range(dim))
    zero = Fraction(0)
    constants = tuple(tuple((zero,) * dim for _ in range(dim)) for _ in range(dim))
    algebra = LieAlgebra(names, constants)
    if mats is None:
        mats = tuple(mx.zeros(dim, dim) for _ in range(dim))
    return algebra, Representation(algebra, tuple(mx.mat(m) for m in mats))


def make_standard(kind: str, **params) -> tuple[LieAlgebra, Representation]:
    """Dispatch for the named constructors used by the CLI and the generators.

    Kinds: so_n(n), so_pq(p, q), sl2, sl2_adjoint, gl_n(n),
    abelian(dim[, matrices]).
    """
    if kind == "so_n":
        return so_n(int(params["n"]))
    if kind == "so_pq":
        return so_pq(int(params["p"]), int(params["q"]))
    if kind == "sl2":
        return sl2()
    if kind == "sl2_adjoint":
        g, _ = sl2()
        return g, adjoint_rep(g)
    if kind == "gl_n":
        return gl_n(int(params["n"]))
    if kind == "abelian":
        return abelian(int(params["dim"]), params.get("matrices"))
    raise StructuralError(f"unknown constructor kind {kind!r}")


# ---------------------------------------------------------------------------
# Derived representations
# ---------------------------------------------------------------------------

def adjoint_rep(g: LieAlgebra) -> Representation:
    """ad(x_i) with column j equal to [x_i, x_j]; a representation by Jacobi."""
    d = g.dim
    mats = tuple(
        tuple(tuple(g.c[i][j][k] for j in range(d)) for k in range(d))
        for i in range(d))
    return Representation(g, mats)


def coadjoint_rep(g: LieAlgebra) -> Representation:
    """Dual action on coefficient vectors: ad*(x) = -transpose(ad(x))."""
    ad = adjoint_rep(g)
    mats = tuple(mx.scale(mx.transpose(m), Fraction(-1)) for m in ad.matrices)
    return Representation(g, mats)


def conjugate_representation(rho: Representation, theta: Matrix) -> Representation:
    """Equivalent representation theta . rho(x) . theta^(-1)."""
    n = rho.space_dim
    if mx.shape(theta) != (n, n):
        raise StructuralError(f"theta must be {n}x{n}")
    theta_inv = mx.inverse(theta)  # raises ValidationError when singular
    mats = tuple(mx.mul(mx.mul(theta, m), theta_inv) for m in rho.matrices)
    return Representation(rho.algebra, mats)


def killing_form(g: LieAlgebra) -> BilinearForm:
    """K(x, y) = trace(ad x . ad y), exactly over the rationals."""
    ad = adjoint_rep(g)
    d = g.dim
    gram = tuple(
        tuple(mx.trace(mx.mul(ad.matrices[i], ad.matrices[j])) for j in range(d))
        for i in range(d))
    return BilinearForm(gram)
