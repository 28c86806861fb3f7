"""Command surface: parsing, JSON contract, exit codes, determinism."""

import io
import json
import math
from fractions import Fraction

import pytest

from algentropy.cli import build_parser, parse_group, parse_matrix, parse_poly, run
from algentropy.errors import ParseError


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, err = invoke(*argv)
    assert code == 0, err
    return json.loads(out)


def test_halg_spec_example():
    payload = invoke_json("entropy", "halg", "--matrix", "[[3,0],[0,2]]/2")
    assert payload["log_of"] == "3"
    assert payload["path"] == "yuzvinski"
    assert math.isclose(float(payload["value"]), math.log(3))


def test_kronecker_spec_example():
    payload = invoke_json("mahler", "kronecker", "--poly", "1,1,1")
    assert payload["kronecker"] is True


def test_inertial_witness_spec_example():
    payload = invoke_json("inert", "endo", "--group", "Z^2", "--matrix", "[[1,1],[0,1]]")
    assert payload["inertial"] is False
    assert payload["kind"] == "non_inertial_witness"
    assert payload["witness"]["basis"] == [["0", "1"]]


def test_group_canon():
    payload = invoke_json("group", "canon", "--group", '{"invariant_factors": ["4", "6"]}')
    assert payload["invariant_factors"] == ["2", "12"]
    assert payload["free_rank"] == "0"
    assert payload["order"] == "24"
    payload = invoke_json("group", "canon", "--group", "Z/6 x Z x Z/4")
    assert payload["invariant_factors"] == ["2", "12"]
    assert payload["free_rank"] == "1"
    assert payload["order"] == "Infinite"


def test_sub_commands():
    args = ("--group", "Z^2", "--sub", "[[2,0],[0,2]]", "--other", "[[4,0],[0,4]]")
    assert invoke_json("sub", "index", *args)["index"] == "4"
    assert invoke_json("sub", "sum", *args)["basis"] == [["2", "0"], ["0", "2"]]
    assert invoke_json("sub", "meet", *args)["basis"] == [["4", "0"], ["0", "4"]]


def test_sub_lattice_route():
    payload = invoke_json(
        "sub", "sum", "--space", "2", "--sub", "[[1/2,0]]", "--other", "[[0,1]]"
    )
    assert payload["basis"] == [["1/2", "0"], ["0", "1"]]


def test_sub_index_infinite():
    payload = invoke_json(
        "sub", "index", "--group", "Z^2", "--sub", "[[1,0],[0,1]]", "--other", "[[1,0]]"
    )
    assert payload["index"] == "Infinite"


def test_inert_check_routes():
    payload = invoke_json(
        "inert", "check", "--group", "Z^2", "--matrix", "[[1,1],[0,1]]", "--sub", "[[1,0]]"
    )
    assert payload["inert"] is True and payload["index"] == "1"
    payload = invoke_json(
        "inert", "check", "--space", "1", "--matrix", "[[1/2]]", "--sub", "[[1]]"
    )
    assert payload["inert"] is True and payload["index"] == "2"
    payload = invoke_json("inert", "check", "--cell", "Z/3", "--k", "2")
    assert payload["inert"] is True and payload["index"] == "3"
    payload = invoke_json("inert", "check", "--cell", "Z/3", "--k", "2", "--two-sided")
    assert payload["inert"] is True and payload["index"] == "3"


def test_inert_witness_subcommand():
    payload = invoke_json("inert", "witness", "--group", "Z^2", "--matrix", "[[1,1],[0,1]]")
    assert payload["witness"]["basis"] == [["0", "1"]]
    payload = invoke_json("inert", "witness", "--group", "Z^2", "--matrix", "[[5,0],[0,5]]")
    assert payload["witness"] is None


def test_inert_endo_multiplication():
    payload = invoke_json("inert", "endo", "--group", "Z^2", "--matrix", "[[5,0],[0,5]]")
    assert payload["inertial"] is True
    assert payload["kind"] == "multiplication_integer"
    assert payload["multiplication_by"] == "5"


def test_fullyinert_check_and_classify():
    payload = invoke_json("fullyinert", "check", "--group", "Z^2", "--sub", "[[2,0],[0,3]]")
    assert payload["fully_inert"] is True
    payload = invoke_json("fullyinert", "check", "--group", "Z^2", "--sub", "[[1,0]]")
    assert payload["fully_inert"] is False

    descriptor = json.dumps(
        {
            "torsion_free": {"kind": "homogeneous_cd", "rank": 3},
            "primes": [[2, {"divisible_rank": 0, "uk_invariants": [[1, "Infinite"]]}]],
            "cofinite_default": "divisible",
        }
    )
    payload = invoke_json("fullyinert", "classify", "--descriptor", descriptor)
    assert payload["verdict"] is True
    assert payload["reason"] == "all-clauses-hold"
    payload = invoke_json(
        "fullyinert", "classify", "--descriptor", '{"torsion_free": {"kind": "other"}}'
    )
    assert payload["verdict"] is None
    assert payload["reason"] == "torsion-free-part-unclassified"


def test_entropy_subcommands():
    payload = invoke_json("entropy", "ent", "--cell", "Z/2xZ/2")
    assert payload["log_of"] == "4"
    payload = invoke_json("entropy", "stabilized", "--matrix", "[[3/2]]", "--sub", "[[1]]")
    assert payload["log_of"] == "2" and payload["heuristic"] is True
    payload = invoke_json("entropy", "intrinsic", "--matrix", "[[3/2]]", "--cross-check")
    assert payload["log_of"] == "2"
    assert payload["cross_check"]["agreement"] is True
    payload = invoke_json("entropy", "adjoint", "--matrix", "[[1/5]]", "--sub", "[[1]]")
    assert payload["log_of"] == "5" and payload["path"] == "cotrajectory"
    payload = invoke_json("entropy", "limitfree", "--group", "Z", "--matrix", "[[2]]", "--sub", "[[1]]")
    assert payload["log_of"] == "2" and payload["path"] == "limit_free"
    payload = invoke_json("entropy", "limitfree", "--cell", "Z/3")
    assert payload["log_of"] == "3" and payload["path"] == "symbolic_shift"
    payload = invoke_json("entropy", "htop", "--cell", "Z/4")
    assert payload["log_of"] == "4"
    payload = invoke_json("entropy", "scale", "--cell", "Z/5")
    assert payload["scale"] == "5"
    assert payload["family_relative"] is True


def test_entropy_adjoint_steps():
    payload = invoke_json("entropy", "adjoint", "--matrix", "[[1/2]]", "--sub", "[[1]]", "--steps", "3")
    assert payload["cotrajectory_basis"] == [["4"]]


def test_growth_subcommands():
    payload = invoke_json("growth", "classify", "--matrix", "[[0,1],[1,1]]")
    assert payload["growth"] == "exponential"
    payload = invoke_json("growth", "classify", "--matrix", "[[0,-1],[1,0]]")
    assert payload["growth"] == "polynomial"
    payload = invoke_json(
        "growth", "sumset", "--group", "Z", "--matrix", "[[2]]", "--points", "[[0],[1]]", "--n", "4"
    )
    assert payload["sizes"] == ["2", "4", "8", "16"]


def test_mahler_subcommands():
    payload = invoke_json("mahler", "measure", "--poly=-1,-1,1")
    golden = math.log((1 + math.sqrt(5)) / 2)
    assert abs(float(payload["value"]) - golden) < 1e-6
    assert payload["roots_outside"] == "1"
    payload = invoke_json("mahler", "measure", "--poly=-2,1")
    assert payload["log_of"] == "2" and payload["exact"] is True
    payload = invoke_json("mahler", "scan", "--degree-max", "2", "--height-max", "1", "--threshold", "0.5")
    assert payload["count"] == "2"
    coeffs = [hit["coeffs"] for hit in payload["polynomials"]]
    assert ["-1", "-1", "1"] in coeffs and ["-1", "1", "1"] in coeffs
    golden = math.log((1 + math.sqrt(5)) / 2)
    for hit in payload["polynomials"]:
        assert abs(float(hit["measure"]["value"]) - golden) < 1e-6


def test_nonabelian_traj_catalog():
    # symmetric group on 3 letters, phi = conjugation by a 3-cycle,
    # trajectory of a 2-element subgroup sweeps out the whole group
    payload = invoke_json(
        "nonabelian", "traj", "--order", "6", "--index", "0",
        "--phi", "[0,1,2,5,3,4]", "--subset", "[0,3]", "--subgroup", "[0,3]", "--n", "3",
    )
    assert payload["order"] == "6"
    assert payload["sizes"] == ["2", "4", "6", "6"]
    assert payload["transversal_counts"] == ["1", "2", "3", "3"]
    assert payload["bound_base"] == "2"
    assert payload["bound_holds"] is True


def test_nonabelian_traj_table():
    table = json.dumps([[(i + j) % 3 for j in range(3)] for i in range(3)])
    payload = invoke_json(
        "nonabelian", "traj", "--table", table, "--phi", "[0,1,2]", "--subset", "[0,1]", "--n", "3"
    )
    assert payload["sizes"] == ["2", "3", "3", "3"]
    assert "transversal_counts" not in payload


def test_exit_code_parse_error():
    code, out, err = invoke("entropy", "halg", "--matrix", "[[3,0],[0,2]/2")
    assert code == 1
    assert "parse error" in err
    code, _, err = invoke("group", "canon", "--group", "Z^x")
    assert code == 1
    assert "position" in err


def test_exit_code_domain_error():
    code, _, err = invoke("entropy", "htop", "--cell", "Z")
    assert code == 2
    assert "domain error" in err
    code, _, err = invoke(
        "nonabelian", "traj", "--order", "6", "--index", "9", "--phi", "[0]", "--subset", "[0]", "--n", "1"
    )
    assert code == 2


def test_exit_code_budget_error():
    code, _, err = invoke(
        "growth", "sumset", "--group", "Z", "--matrix", "[[2]]",
        "--points", "[[0],[1]]", "--n", "40", "--element-cap", "100",
    )
    assert code == 3


def test_determinism_byte_identical():
    argv = ("entropy", "halg", "--matrix", "[[0,1],[1,1]]")
    _, first, _ = invoke(*argv)
    _, second, _ = invoke(*argv)
    assert first == second


def test_json_round_trip():
    for argv in (
        ("group", "canon", "--group", "Z/6 x Z"),
        ("mahler", "measure", "--poly", "1,1,1"),
        ("entropy", "ent", "--cell", "Z/3"),
    ):
        _, out, _ = invoke(*argv)
        payload = json.loads(out)
        assert json.loads(json.dumps(payload)) == payload


def test_text_output_mode():
    code, out, _ = invoke("--output", "text", "group", "canon", "--group", "Z/4")
    assert code == 0
    assert 'invariant_factors = ["4"]' in out
    assert 'order = "4"' in out
    assert "{" not in out


def test_env_and_flag_precedence(monkeypatch):
    monkeypatch.setenv("ALGENTROPY_MAX_STEPS", "2")
    code, _, err = invoke("entropy", "stabilized", "--matrix", "[[3/2]]", "--sub", "[[1]]")
    assert code == 3  # env shrinks the budget below the window
    assert "budget error" in err
    code, out, _ = invoke(
        "entropy", "stabilized", "--matrix", "[[3/2]]", "--sub", "[[1]]", "--max-steps", "16"
    )
    assert code == 0  # the flag wins over the environment
    assert json.loads(out)["log_of"] == "2"


def test_config_flags_accepted_after_subcommand():
    payload = invoke_json("entropy", "ent", "--cell", "Z/2", "--window", "4")
    assert payload["log_of"] == "2"
    assert int(payload["steps_used"]) >= 4
    code, _, _ = invoke("--window", "4", "entropy", "ent", "--cell", "Z/2")
    assert code == 0


def test_parse_group_forms():
    assert parse_group("Z^2").free_rank == 2
    assert parse_group("Z/2 * Z/4").invariant_factors == (2, 4)
    assert parse_group("0").dim == 0
    assert parse_group("1").dim == 0
    assert parse_group("Z/0 x Z/2").free_rank == 1
    g = parse_group('{"invariant_factors": ["2", "6"], "free_rank": "1"}')
    assert g.invariant_factors == (2, 6) and g.free_rank == 1
    with pytest.raises(ParseError):
        parse_group("Z^")
    with pytest.raises(ParseError):
        parse_group("Z/2 + + Z/4")


def test_parse_matrix_forms():
    assert parse_matrix("[[1,2],[3,4]]") == [[1, 2], [3, 4]]
    assert parse_matrix("[[3,0],[0,2]]/2") == [
        [Fraction(3, 2), Fraction(0)],
        [Fraction(0), Fraction(1)],
    ]
    assert parse_matrix("[[1/2]]") == [[Fraction(1, 2)]]
    with pytest.raises(ParseError):
        parse_matrix("[[1,2],[3]]")
    with pytest.raises(ParseError):
        parse_matrix("[[1,2]")


def test_parse_poly_forms():
    assert parse_poly("1,1,1").coeffs == (1, 1, 1)
    assert parse_poly("[-1,-1,1]").coeffs == (-1, -1, 1)
    with pytest.raises(ParseError):
        parse_poly("1,,2")


def test_unknown_subcommand_is_parse_error():
    code, _, err = invoke("entropy", "banana")
    assert code == 1


def test_parser_builds_clean():
    parser = build_parser()
    assert parser.prog == "algentropy"
