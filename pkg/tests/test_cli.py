import json

import pytest

from laxenv import twocat as tc
from laxenv.cli import suites
from laxenv.cli.dump import dump
from laxenv.cli.main import _options, example_path, main, run_command
from laxenv.cli.parse import parse_spec, parse_text
from laxenv.errors import ParseError, UnknownSuite, UnresolvedReference, ValidationError

from oracles import endpoint_preserving, monad_law_holds, monotone_maps


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# Parsing

def test_point_file_is_the_point():
    spec = parse_spec(example_path("point.2cat"))
    P = spec["point"]
    assert list(P.objects) == ["*"]
    tc.validate_two_category(P)
    assert [c for _, c in spec.checks] == [["segal"], ["globular-complete"]]


def test_monad_file_is_a_lawful_monad():
    spec = parse_spec(example_path("monad_in_B.lax"))
    L = spec["monad"]
    assert isinstance(L, tc.LaxFunctor)
    B = spec["B"]
    one = L.source.id1("*")
    T = L.cells1[one]
    assert monad_law_holds(B, T, L.delta["*"], L.gamma[(one, one)])


def test_dangling_reference(tmp_path):
    p = write(tmp_path, "bad.2cat", "twocat X\n  objects: a\n  hom a a = nothere\nend\n")
    with pytest.raises(UnresolvedReference):
        parse_spec(p)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as e:
        parse_text("category C\n  object a\n  mor f a b\nend\n")
    assert "line 3" in str(e.value)


def test_invalid_block_names_the_block():
    text = ("category C\n  object a\n  mor id_a : a -> a\n  mor e : a -> a\n"
            "  id a = id_a\n  comp id_a . id_a = id_a\n  comp e . id_a = e\n"
            "  comp id_a . e = e\n  comp e . e = id_a\nend\n")
    parse_text(text)
    broken = text.replace("comp id_a . e = e", "comp id_a . e = id_a")
    with pytest.raises(ValidationError) as e:
        parse_text(broken)
    assert "C" in str(e.value)


@pytest.mark.parametrize("name", ["point", "two_cell", "b_z2", "b_end1"])
def test_dump_round_trip(name):
    A = {"point": tc.point, "two_cell": tc.walking_two_cell, "b_z2": tc.b_z2,
         "b_end1": tc.b_end1}[name]()
    spec = parse_text(dump(A, names=["X"]))
    B = spec["X"]
    assert B.objects == A.objects
    for a in A.objects:
        for b in A.objects:
            assert set(B.hom(a, b).morphisms) == set(A.hom(a, b).morphisms)


# Verbs

def test_envelope_point_counts():
    rep = run_command("envelope", ["point.2cat"], _options(cap=3))
    assert rep.passed
    assert rep.counts["one_cells"] == 4
    assert rep.details["homs"]["*->*"]["by_length"] == {"0": 1, "1": 1, "2": 1, "3": 1}
    # hom(m, m') in Env of the point counts endpoint-preserving [m'] -> [m]
    expected = sum(len(endpoint_preserving(k, m)) for m in range(4) for k in range(4))
    assert rep.counts["two_cells"] == expected == 35


def test_classify_monad_round_trips():
    rep = run_command("classify", ["monad_in_B.lax"])
    assert rep.passed
    assert rep.details["round_trip"] is True
    assert rep.details["strict_functor"]["one_cells"]["<1,1>"] == "c1"


def test_check_local_sections_lambda():
    assert run_command("check", ["local-sections", "lambda", "A.2cat"]).passed


def test_check_local_sections_iota_fails():
    assert not run_command("check", ["local-sections", "iota", "A.2cat"]).passed


def test_check_file_runs_directives():
    rep = run_command("check", ["file", "A.2cat"])
    assert rep.passed
    assert rep.counts == {"checks": 2, "passed": 2}


def test_enum_simplex_matches_oracle():
    rep = run_command("enum", ["simplex", "2", "3"])
    assert rep.counts["maps"] == len(monotone_maps(2, 3))
    assert rep.details["maps"][0] == "[2]->[3]:0,0,0"


def test_enum_monads():
    rep = run_command("enum", ["monads", "monad_in_B.lax"])
    assert rep.details["monads"] == [["c1", "id~c1", "id_c1"], ["id", "id_id", "id_id"]]


# Exit codes

def test_exit_pass(capsys):
    assert main(["validate", "point.2cat"]) == 0
    assert "flag: pass" in capsys.readouterr().out


def test_exit_check_failure(capsys):
    assert main(["check", "local-sections", "iota", "A.2cat"]) == 1


def test_exit_input_errors(tmp_path, capsys):
    bad = write(tmp_path, "p.cat", "category C\n  object a\n  mor f a b\nend\n")
    assert main(["validate", bad]) == 2
    assert main(["validate", str(tmp_path / "missing.2cat")]) == 2
    assert main(["suite", "nope", "--seed", "1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_exit_size_cap(monkeypatch, capsys):
    monkeypatch.setenv("LAXENV_SEARCH_CAP", "5")
    assert main(["check", "initiality", "A.2cat"]) == 3


def test_caps_echoed(monkeypatch):
    monkeypatch.setenv("LAXENV_OBJECT_CAP", "77")
    rep = run_command("validate", ["point.2cat"])
    assert rep.caps["objects"] == 77


def test_json_mode_uses_same_fields(capsys):
    main(["envelope", "point.2cat", "--cap", "2", "--json"])
    d = json.loads(capsys.readouterr().out)
    main(["envelope", "point.2cat", "--cap", "2"])
    text = capsys.readouterr().out
    # Empty collections are omitted from the text rendering.
    for key in (k for k, v in d.items() if v not in ([], {})):
        assert "%s:" % key in text
    assert d["counts"]["one_cells"] == 3


def test_out_file(tmp_path, capsys):
    out = tmp_path / "rep.txt"
    main(["validate", "point.2cat", "--out", str(out)])
    assert out.read_text() == capsys.readouterr().out


# Determinism

@pytest.mark.parametrize("argv", [
    ["envelope", "point.2cat", "--cap", "3"],
    ["classify", "monad_in_B.lax", "--json"],
    ["suite", "left-cancellation", "--seed", "3", "-n", "6"],
])
def test_reports_are_byte_identical(argv, capsys):
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_digest_tracks_input(tmp_path):
    p = write(tmp_path, "point.2cat", open(example_path("point.2cat")).read())
    a = run_command("validate", [p]).digest
    with open(p, "a") as fh:
        fh.write("# trailing comment\n")
    assert run_command("validate", [p]).digest != a


# Suites

def test_suite_requires_seed():
    with pytest.raises(UnknownSuite):
        suites.run_suite("factorization", None)


def test_suite_factorization():
    rep = run_command("suite", ["factorization"], _options(seed="7"))
    assert rep.passed
    assert rep.counts["failures"] == 0
    # [n] -> [m] monotone maps for n, m <= 5
    assert rep.counts["maps"] == sum(len(monotone_maps(n, m))
                                     for n in range(6) for m in range(6))


def test_suite_initiality_five():
    rep = run_command("suite", ["initiality"], _options(seed="7", n=5))
    assert rep.passed
    assert rep.counts["entries"] == 5
    assert all(r["iso_classes"] == 1 for r in rep.details["entries"])


def test_suite_all():
    rep = run_command("suite", ["all"], _options(seed="7"))
    assert rep.passed
    assert rep.counts["suites"] == len(suites.ALL)
    assert rep.seed == "7"


def test_suite_jobs_do_not_change_report():
    one = run_command("suite", ["mate-functoriality"], _options(seed="5", n=8))
    two = run_command("suite", ["mate-functoriality"], _options(seed="5", n=8, jobs=2))
    assert one.to_json() == two.to_json()


@pytest.mark.parametrize("name", suites.LEMMA_SUITES)
def test_crafted_reproducer_reproduces(name, tmp_path):
    inst = suites.SUITES[name].crafted()
    p = write(tmp_path, "repro.lax", suites.reproducer(name, inst, False))
    try:
        rep = run_command("check", ["file", p])
    except ValidationError:
        # The crafted instance breaks a law the parser already checks.
        assert name == "middle-four"
        return
    assert not rep.passed
    assert main(["check", "file", p]) == 1


@pytest.mark.parametrize("name", ["hom-equivalence", "left-cancellation", "base-change"])
def test_seeded_reproducer_passes(name, tmp_path):
    inst = suites.SUITES[name].build(suites._instance_rng(name, "9", 0))
    p = write(tmp_path, "repro.lax", suites.reproducer(name, inst, True, "9", 0))
    assert run_command("check", ["file", p]).passed
