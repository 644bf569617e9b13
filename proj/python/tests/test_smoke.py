import pathlib

import pytest

import rootsheaf

GOLDEN = pathlib.Path(__file__).resolve().parents[2] / "tests" / "golden"
SQUARE_ROOT = (GOLDEN / "square_root.rsd").read_text()


def test_run_command_matches_golden():
    code, report = rootsheaf.run_command("phi", SQUARE_ROOT, ["O"])
    assert code == 0
    assert report == (GOLDEN / "phi_unit.out").read_text()
    assert "selftest" in rootsheaf.command_names()


def test_run_command_exit_codes():
    assert rootsheaf.run_command("check-parabolic", SQUARE_ROOT, ["Broken"])[0] == 1
    assert rootsheaf.run_command("phi", SQUARE_ROOT, ["Nope"])[0] == 2


def test_monoid_word_problem():
    m = rootsheaf.Monoid(["a", "b"], [([1, 1], [0, 2])])
    assert m.normal_form([1, 1]) == [0, 2]
    assert m.congruent([2, 1], [0, 3])
    assert m.format([2, 1]) == "2a+b"
    info = m.classify()
    assert not info["integral"]
    assert info["sharp"]
    with pytest.raises(rootsheaf.InputError):
        m.normal_form([1])


def test_addition_map():
    n1, n2 = rootsheaf.Monoid(["c"]), rootsheaf.Monoid(["a", "b"])
    add = rootsheaf.MonoidHom(n2, n1, [[1], [1]])
    assert add.kernel() == []
    assert add.is_kummer()["injective"] == "false"
    assert add.is_cokernel() == "false"
    assert rootsheaf.kernel_closure(n1, [[2], [3]]) == [[1]]


def test_kummer_and_stack():
    j = rootsheaf.MonoidHom(rootsheaf.Monoid(["a"]), rootsheaf.Monoid(["x"]), [[3]])
    cert = j.is_kummer()
    assert cert["is_kummer"] == "true"
    assert cert["multipliers"] == [3]
    assert rootsheaf.classify_stack(3, 3)["deligne_mumford"] is False
    assert rootsheaf.classify_stack(4, 3) == {
        "finite": True,
        "tame": True,
        "deligne_mumford": True,
        "index": 4,
        "characteristic": 3,
    }


def test_document_operations():
    doc = rootsheaf.Document(SQUARE_ROOT)
    assert doc.kind("B") == "algebra"
    assert doc.kind("missing") is None
    assert "relation x^2 = s*t" in doc.algebra_dump("B")
    assert doc.slot_dimensions("U") == [1, 1]
    assert doc.roundtrip("U") and doc.roundtrip("D")
    assert "map x at 1/2 = [[s]];" in doc.phi("O")
    assert doc.psi("U").startswith("gradedmodule psi_U over B {")
    with pytest.raises(rootsheaf.ValidationError) as err:
        doc.check_parabolic("Broken")
    assert err.value.locus == "period a at 0"
    with pytest.raises(rootsheaf.UnsupportedError):
        doc.hom_dimensions("U", "U")


def test_parse_errors_carry_positions():
    with pytest.raises(rootsheaf.InputError, match="line 1, column 1"):
        rootsheaf.Document("widget W { }")
