"""JSON interchange for every domain type, exact and deterministic.

Scalars are serialized as strings ("-3", "1/2") so nothing is ever rounded.
A polynomial is emitted as its ring plus a term list

    {"ring": [{"name": "f0", "size": 2, "role": "state"}],
     "terms": [{"coeff": "1/2", "exps": {"f0.0": 2}}]}

with exponent keys "block.index" (the index is everything after the last
dot, so block names must not end in ".<digits>"). Terms are sorted by
monomial and all objects are dumped with sorted keys, so equal values always
serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .decompose import Decomposition, VectorField
from .errors import StructuralError
from .lie import BilinearForm, LieAlgebra, Representation
from .matrices import Matrix
from .poly import Monomial, Polynomial, Ring, Var, VariableBlock


def scalar_to_str(value: Fraction) -> str:
    return str(Fraction(value))


def scalar_from_str(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise StructuralError(f"not a rational scalar: {text!r}") from exc


def matrix_to_json(matrix: Matrix) -> list[list[str]]:
    return [[scalar_to_str(v) for v in row] for row in matrix]


def matrix_from_json(data: Sequence[Sequence[str]]) -> Matrix:
    return tuple(tuple(scalar_from_str(v) for v in row) for row in data)


# -- rings and polynomials --------------------------------------------------

def ring_to_json(ring: Ring) -> list[dict]:
    return [{"name": b.name, "size": b.size, "role": b.role} for b in ring.blocks]


def ring_from_json(data: Sequence[Mapping]) -> Ring:
    return Ring(tuple(
        VariableBlock(str(b["name"]), int(b["size"]), str(b["role"])) for b in data))


def _var_key(var: Var) -> str:
    return f"{var[0]}.{var[1]}"


def _var_from_key(key: str) -> Var:
    name, dot, idx = key.rpartition(".")
    if not dot or not idx.isdigit():
        raise StructuralError(f"malformed variable key {key!r} (want 'block.index')")
    return (name, int(idx))


def _terms_to_json(p: Polynomial) -> list[dict]:
    out = []
    for mono, coeff in p.sorted_terms():
        out.append({"coeff": scalar_to_str(coeff),
                    "exps": {_var_key(v): e for v, e in mono.exps}})
    return out


def _terms_from_json(data: Sequence[Mapping], ring: Ring) -> Polynomial:
    terms: dict[Monomial, Fraction] = {}
    for item in data:
        mono = Monomial.from_map(
            {_var_from_key(k): int(e) for k, e in item["exps"].items()})
        coeff = scalar_from_str(item["coeff"])
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return Polynomial(ring, terms)


def polynomial_to_json(p: Polynomial) -> dict:
    return {"ring": ring_to_json(p.ring), "terms": _terms_to_json(p)}


def polynomial_from_json(data: Mapping, ring: Ring | None = None) -> Polynomial:
    if ring is None:
        ring = ring_from_json(data["ring"])
    return _terms_from_json(data["terms"], ring)


# -- algebras and representations -------------------------------------------

def algebra_to_json(g: LieAlgebra) -> dict:
    return {
        "dim": g.dim,
        "names": list(g.names),
        "c": [[[scalar_to_str(v) for v in g.c[i][j]] for j in range(g.dim)]
              for i in range(g.dim)],
    }


def algebra_from_json(data: Mapping) -> LieAlgebra:
    names = tuple(str(n) for n in data["names"])
    c = tuple(
        tuple(tuple(scalar_from_str(v) for v in row) for row in plane)
        for plane in data["c"])
    g = LieAlgebra(names, c)
    if g.dim != int(data["dim"]):
        raise StructuralError(
            f"declared dim {data['dim']} but {g.dim} basis names")
    return g


def representation_to_json(rep: Representation) -> dict:
    n = rep.space_dim
    return {
        "algebra": algebra_to_json(rep.algebra),
        "space_dim": n,
        "matrices": [[scalar_to_str(m[r][s]) for r in range(n) for s in range(n)]
                     for m in rep.matrices],
    }


def representation_from_json(data: Mapping) -> Representation:
    g = algebra_from_json(data["algebra"])
    n = int(data["space_dim"])
    mats = []
    for flat in data["matrices"]:
        if len(flat) != n * n:
            raise StructuralError(
                f"matrix has {len(flat)} entries, expected {n * n}")
        values = [scalar_from_str(v) for v in flat]
        mats.append(tuple(tuple(values[r * n:(r + 1) * n]) for r in range(n)))
    return Representation(g, tuple(mats))


def bilinear_to_json(form: BilinearForm) -> dict:
    return {"size": form.size, "gram": matrix_to_json(form.gram)}


def bilinear_from_json(data: Mapping) -> BilinearForm:
    form = BilinearForm(matrix_from_json(data["gram"]))
    if form.size != int(data["size"]):
        raise StructuralError(
            f"declared size {data['size']} but Gram is {form.size}x{form.size}")
    return form


# -- fields and decompositions ----------------------------------------------

def field_to_json(field: VectorField) -> dict:
    return {
        "ring": ring_to_json(field.ring),
        "components": [_terms_to_json(p) for p in field.components],
    }


def field_from_json(data: Mapping) -> VectorField:
    ring = ring_from_json(data["ring"])
    return VectorField(
        ring, tuple(_terms_from_json(t, ring) for t in data["components"]))


def decomposition_to_json(dec: Decomposition) -> dict:
    return {
        "ring": ring_to_json(dec.ring),
        "coefficients": [[_terms_to_json(p) for p in level]
                         for level in dec.coefficients],
    }


def decomposition_from_json(data: Mapping) -> Decomposition:
    ring = ring_from_json(data["ring"])
    return Decomposition(ring, tuple(
        tuple(_terms_from_json(t, ring) for t in level)
        for level in data["coefficients"]))


def dumps(obj: Any) -> str:
    """The one serializer: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)
