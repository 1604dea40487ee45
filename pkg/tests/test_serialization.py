"""JSON interchange, deterministic generation, and the command line."""

import json
from fractions import Fraction

import pytest

from takiff import jsonio
from takiff import matrices as mx
from takiff.cli import main
from takiff.decompose import (
    VectorField,
    annihilates_invariants,
    builtin_solver,
    lifted_generators_for,
    takiff_decompose,
)
from takiff.errors import StructuralError, ValidationError
from takiff.invariants import quadratic_invariant
from takiff.lie import killing_form, sl2, so_n
from takiff.poly import PARAMETER, STATE, Polynomial, Ring, VariableBlock
from takiff.randgen import (
    SplitMix64,
    generate_instance,
    random_antisymmetric,
    random_invertible,
    random_polynomial,
)


def test_scalar_strings():
    for text in ("0", "-3", "1/2", "-7/5"):
        assert jsonio.scalar_to_str(jsonio.scalar_from_str(text)) == text
    assert jsonio.scalar_to_str(Fraction(2, 4)) == "1/2"
    with pytest.raises(StructuralError):
        jsonio.scalar_from_str("abc")
    with pytest.raises(StructuralError):
        jsonio.scalar_from_str("1/0")


def test_polynomial_roundtrip():
    ring = Ring.of(VariableBlock("w", 1, PARAMETER), VariableBlock("f0", 2, STATE))
    w = Polynomial.variable(ring, ("w", 0))
    f0 = Polynomial.variable(ring, ("f0", 0))
    f1 = Polynomial.variable(ring, ("f0", 1))
    p = w * f0 * f0 / 2 - 3 * f1 + 7
    data = jsonio.polynomial_to_json(p)
    assert jsonio.polynomial_from_json(data) == p
    assert jsonio.polynomial_from_json({"terms": data["terms"]}, ring) == p


def test_variable_keys_allow_dotted_block_names():
    ring = Ring.of(VariableBlock("a.b", 2, STATE))
    p = Polynomial.variable(ring, ("a.b", 1)) ** 2
    assert jsonio.polynomial_from_json(jsonio.polynomial_to_json(p)) == p


def test_malformed_variable_keys():
    ring = Ring.of(VariableBlock("x", 1, STATE))
    # ".5" parses as the empty block name, which the ring then rejects
    for key in ("x", "x.", "x.one", ".5"):
        data = {"terms": [{"coeff": "1", "exps": {key: 1}}]}
        with pytest.raises(StructuralError):
            jsonio.polynomial_from_json(data, ring)


def test_algebra_and_representation_roundtrip():
    g, rho = so_n(3)
    assert jsonio.algebra_from_json(jsonio.algebra_to_json(g)) == g
    back = jsonio.representation_from_json(jsonio.representation_to_json(rho))
    assert back == rho
    bad = jsonio.algebra_to_json(g)
    bad["dim"] = 5
    with pytest.raises(StructuralError):
        jsonio.algebra_from_json(bad)
    flat = jsonio.representation_to_json(rho)
    flat["matrices"][0] = flat["matrices"][0][:-1]
    with pytest.raises(StructuralError):
        jsonio.representation_from_json(flat)


def test_bilinear_roundtrip():
    form = killing_form(sl2()[0])
    data = jsonio.bilinear_to_json(form)
    assert jsonio.bilinear_from_json(data).gram == form.gram
    data["size"] = 2
    with pytest.raises(StructuralError):
        jsonio.bilinear_from_json(data)


def test_field_and_decomposition_roundtrip():
    inst = generate_instance("so_n", 1, seed=9, n=3)
    data = jsonio.field_to_json(inst.field)
    assert jsonio.field_from_json(data) == inst.field
    solver = builtin_solver(inst.rep, inst.gram)
    dec = takiff_decompose(inst.lifted, solver, inst.field)
    back = jsonio.decomposition_from_json(jsonio.decomposition_to_json(dec))
    assert back == dec


def test_dumps_is_byte_deterministic():
    a = generate_instance("sl2", 2, seed=41)
    b = generate_instance("sl2", 2, seed=41)
    assert a.field == b.field
    text_a = jsonio.dumps(jsonio.field_to_json(a.field))
    text_b = jsonio.dumps(jsonio.field_to_json(b.field))
    assert text_a == text_b
    assert text_a.endswith("\n")
    parsed = json.loads(text_a)
    assert list(parsed) == sorted(parsed)


def test_splitmix64_reference_stream():
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4
    assert rng.next_u64() == 0x06C45D188009454F


def test_splitmix64_draws():
    rng = SplitMix64(123)
    for _ in range(50):
        assert 0 <= rng.below(7) < 7
        assert -2 <= rng.integer(-2, 5) <= 5
        assert rng.nonzero(3) != 0
    with pytest.raises(StructuralError):
        rng.below(0)
    with pytest.raises(StructuralError):
        rng.integer(3, 2)
    assert SplitMix64(5).next_u64() == SplitMix64(5).next_u64()


def test_random_builders():
    rng = SplitMix64(7)
    ring = Ring.of(VariableBlock("x", 3, STATE))
    p = random_polynomial(rng, ring, 3, 5)
    assert p.degree() <= 3
    m = random_antisymmetric(rng, ring, 3, 2, 3)
    for i in range(3):
        assert m[i][i].is_zero()
        for j in range(3):
            assert m[i][j] == -m[j][i]
    theta = random_invertible(rng, 3)
    assert mx.det(theta) != 0


def test_generated_instance_annihilates_its_invariants():
    for kind, params in (("so_n", {"n": 2}), ("so_n", {"n": 3}), ("sl2_adjoint", {})):
        inst = generate_instance(kind, 2, seed=17, **params)
        solver = builtin_solver(inst.rep, inst.gram)
        gens = lifted_generators_for(inst.lifted, solver.family, inst.field.ring)
        assert annihilates_invariants(inst.field, gens) == (True, None)
    with pytest.raises(ValidationError):
        generate_instance("so_n", -1, seed=1, n=2)


# -- the command line --------------------------------------------------------


def write_json(path, payload):
    path.write_text(jsonio.dumps(payload), encoding="utf-8")
    return str(path)


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def radial_field_json(n, m):
    blocks = tuple(VariableBlock(f"f{k}", n, STATE) for k in range(m + 1))
    ring = Ring(blocks)
    comps = tuple(Polynomial.variable(ring, (b.name, i))
                  for b in blocks for i in range(n))
    return jsonio.field_to_json(VectorField(ring, comps))


def test_cli_generate_decompose_verify(tmp_path):
    gen = tmp_path / "inst.json"
    assert main(["generate", "--kind", "so_n", "--n", "3", "--level", "1",
                 "--seed", "5", "--out", str(gen)]) == 0
    payload = read_json(gen)
    rep = write_json(tmp_path / "rep.json", payload["representation"])
    field = write_json(tmp_path / "field.json", payload["field"])
    dec_path = tmp_path / "dec.json"
    assert main(["decompose", "--rep", rep, "--level", "1", "--field", field,
                 "--out", str(dec_path)]) == 0
    result = read_json(dec_path)
    assert result["verification"]["passed"] is True
    dec_only = write_json(tmp_path / "only_dec.json", result["decomposition"])
    assert main(["verify", "--rep", rep, "--level", "1", "--field", field,
                 "--dec", dec_only]) == 0


def test_cli_decompose_refusal_exit_code(tmp_path):
    _, rho = so_n(2)
    rep = write_json(tmp_path / "rep.json", jsonio.representation_to_json(rho))
    field = write_json(tmp_path / "field.json", radial_field_json(2, 1))
    out = tmp_path / "refused.json"
    assert main(["decompose", "--rep", rep, "--level", "1", "--field", field,
                 "--out", str(out)]) == 2
    payload = read_json(out)
    assert "refused" in payload and payload["witness"] is not None
    assert payload["witness"]["terms"]


def test_cli_decompose_param_count_check(tmp_path, capsys):
    _, rho = so_n(2)
    rep = write_json(tmp_path / "rep.json", jsonio.representation_to_json(rho))
    field = write_json(tmp_path / "field.json", radial_field_json(2, 0))
    assert main(["decompose", "--rep", rep, "--level", "0", "--field", field,
                 "--params", "2"]) == 1
    assert "parameter variables" in capsys.readouterr().err


def test_cli_check_invariant(tmp_path):
    _, rho = so_n(2)
    rep = write_json(tmp_path / "rep.json", jsonio.representation_to_json(rho))
    ring = Ring.of(VariableBlock("x", 2, STATE))
    q = quadratic_invariant(mx.identity(2), ring)
    good = write_json(tmp_path / "q.json", jsonio.polynomial_to_json(q))
    bad = write_json(tmp_path / "x0.json", jsonio.polynomial_to_json(
        Polynomial.variable(ring, ("x", 0))))
    assert main(["check-invariant", "--rep", rep, "--phi", good,
                 "--out", str(tmp_path / "a.json")]) == 0
    assert main(["check-invariant", "--rep", rep, "--phi", bad,
                 "--out", str(tmp_path / "b.json")]) == 1
    report = read_json(tmp_path / "b.json")
    assert report["invariant"] is False and report["failures"]


def test_cli_lift_invariant_refuses_then_allows(tmp_path):
    _, rho = so_n(2)
    rep = write_json(tmp_path / "rep.json", jsonio.representation_to_json(rho))
    ring = Ring.of(VariableBlock("x", 2, STATE))
    phi = write_json(tmp_path / "x0.json", jsonio.polynomial_to_json(
        Polynomial.variable(ring, ("x", 0))))
    assert main(["lift-invariant", "--rep", rep, "--phi", phi,
                 "--level", "1", "--out", str(tmp_path / "o.json")]) == 1
    assert main(["lift-invariant", "--rep", rep, "--phi", phi, "--level", "1",
                 "--any", "--out", str(tmp_path / "o.json")]) == 0
    lifted = read_json(tmp_path / "o.json")
    assert len(lifted) == 2


def test_cli_build_and_flip(tmp_path):
    g, _ = sl2()
    algebra = write_json(tmp_path / "g.json", jsonio.algebra_to_json(g))
    out = tmp_path / "g1.json"
    assert main(["build", "--algebra", algebra, "--level", "1",
                 "--out", str(out)]) == 0
    assert read_json(out)["dim"] == 6
    assert main(["verify-flip", "--algebra", algebra, "--level", "2",
                 "--out", str(tmp_path / "flip.json")]) == 0
    assert read_json(tmp_path / "flip.json")["passed"] is True


def test_cli_tangency_human(tmp_path):
    _, rho = so_n(2)
    rep = write_json(tmp_path / "rep.json", jsonio.representation_to_json(rho))
    field = write_json(tmp_path / "field.json", radial_field_json(2, 0))
    pts = write_json(tmp_path / "pts.json", {"points": [["1", "0"], ["0", "0"]]})
    out = tmp_path / "tan.txt"
    assert main(["tangency", "--rep", rep, "--field", field, "--points", pts,
                 "--human", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("outside") and lines[1].startswith("tangent")


def test_cli_suite_runs_and_respects_env_seed(tmp_path, monkeypatch):
    out = tmp_path / "suite.json"
    assert main(["suite", "flip", "quadratic-lift", "--out", str(out)]) == 0
    reports = read_json(out)
    assert [r["name"] for r in reports] == ["flip", "quadratic-lift"]
    assert all(r["passed"] for r in reports)
    assert all("elapsed" not in r for r in reports)
    monkeypatch.setenv("TAKIFF_SEED", "7")
    human = tmp_path / "suite.txt"
    assert main(["suite", "cylindrical", "--human", "--out", str(human)]) == 0
    assert "all 1 suites passed" in human.read_text(encoding="utf-8")


def test_cli_unknown_suite_and_missing_file(tmp_path, capsys):
    assert main(["suite", "no-such-suite"]) == 1
    assert "unknown suite" in capsys.readouterr().err
    assert main(["build", "--algebra", str(tmp_path / "missing.json"),
                 "--level", "1"]) == 1
    assert "error:" in capsys.readouterr().err
