"""The command line interface, driven through ``main(argv)``.

Exit codes are part of the contract: 0 entailed/true, 1 refuted/false,
2 unknown, 3 load or validation failure, and argparse's own 2 for bad usage.
"""

import io

import pytest

from kbcomplete import parse_ontology, subsumes
from kbcomplete.cli import main

FRUIT_CXT = """B

2
3

apple
pear
red
ripe
soft
X.X
.XX
"""

ORDER_ARG = "AsianCountry,EUmember,EuropeanCountry,G8member,MediterraneanCountry"

EXPECTED_TRANSCRIPT_LINES = [
    "{G8member, MediterraneanCountry} -> {EUmember, EuropeanCountry}? yes",
    "{EuropeanCountry, G8member} -> {EUmember}? no: Russia",
    "{EUmember} -> {EuropeanCountry, G8member}? no: Cyprus",
    "{EUmember, G8member} -> {EuropeanCountry}? yes",
    "{EUmember, EuropeanCountry} -> {G8member}? no: Spain",
    "{AsianCountry, G8member} -> {EuropeanCountry}? no: Japan",
    "{AsianCountry, EUmember} -> {MediterraneanCountry}? yes",
    "{AsianCountry, EUmember, EuropeanCountry, MediterraneanCountry}"
    " -> {G8member}? yes",
]


class TestCompleteWithOracle:
    def test_transcript_and_output_files(self, tmp_path, capsys):
        out_kb = tmp_path / "completed.onto"
        out_ctx = tmp_path / "final.pcxt"
        code = main([
            "complete", "tests/fixtures/countries.onto",
            "--names", ORDER_ARG,
            "--oracle", "tests/fixtures/countries_oracle.cxt",
            "--out-kb", str(out_kb),
            "--out-context", str(out_ctx),
        ])
        assert code == 0
        assert capsys.readouterr().out.splitlines() == EXPECTED_TRANSCRIPT_LINES
        assert out_ctx.read_text() == open("tests/fixtures/countries_final.pcxt").read()
        completed = parse_ontology(out_kb.read_text())
        assert len(completed.tbox.gcis) == 4

    def test_sections_printed_without_output_files(self, capsys):
        code = main([
            "complete", "tests/fixtures/countries.onto",
            "--names", ORDER_ARG,
            "--oracle", "tests/fixtures/countries_oracle.cxt",
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "== completed ontology ==" in out
        assert "== final context ==" in out
        assert out.endswith("+--+-\n")

    def test_names_accept_spaces_and_commas(self, capsys):
        code = main([
            "complete", "tests/fixtures/countries.onto",
            "--names", "AsianCountry", "EUmember,EuropeanCountry",
            "G8member", "MediterraneanCountry",
            "--oracle", "tests/fixtures/countries_oracle.cxt",
            "--out-kb", "/dev/null", "--out-context", "/dev/null",
        ])
        assert code == 0
        assert capsys.readouterr().out.splitlines() == EXPECTED_TRANSCRIPT_LINES

    def test_names_are_required(self):
        with pytest.raises(SystemExit) as info:
            main(["complete", "tests/fixtures/countries.onto"])
        assert info.value.code == 2


class TestCompleteInteractive:
    def run_session(self, monkeypatch, tmp_path, replies):
        monkeypatch.setattr("sys.stdin", io.StringIO("\n".join(replies) + "\n"))
        out_ctx = tmp_path / "final.pcxt"
        code = main([
            "complete", "tests/fixtures/countries.onto",
            "--names", ORDER_ARG,
            "--interactive",
            "--out-kb", str(tmp_path / "kb.onto"),
            "--out-context", str(out_ctx),
        ])
        return code, out_ctx

    def test_full_session_over_stdin(self, monkeypatch, tmp_path, capsys):
        replies = [
            "y",
            "n", "Russia", "+-++-",
            "n", "Cyprus", "++--+",
            "y",
            "n", "Spain", "-++-+",
            "n", "Japan", "+--+-",
            "y",
            "y",
        ]
        code, out_ctx = self.run_session(monkeypatch, tmp_path, replies)
        assert code == 0
        out = capsys.readouterr().out
        for line in EXPECTED_TRANSCRIPT_LINES:
            assert line in out
        assert out_ctx.read_text() == open("tests/fixtures/countries_final.pcxt").read()

    def test_bad_replies_are_reprompted_and_bad_rows_rejected(
        self, monkeypatch, tmp_path, capsys
    ):
        monkeypatch.setattr("sys.stdin", io.StringIO("\n".join([
            "maybe",              # not y/n: ask again
            "n", "x", "+",        # wrong row width: rejected, ask again
            "n", "x", "++",       # refutes nothing: rejected, ask again
            "n", "x", "+-",       # a real counterexample
            "y",                  # accept the narrowed question
        ]) + "\n"))
        kb_file = tmp_path / "tiny.onto"
        kb_file.write_text("assert top (seed)\n")
        code = main([
            "complete", str(kb_file),
            "--names", "A,B",
            "--out-kb", "/dev/null", "--out-context", "/dev/null",
        ])
        assert code == 0
        captured = capsys.readouterr()
        assert "please answer y or n" in captured.out
        assert captured.err.count("rejected:") == 2
        assert "{} -> {A, B}? no: x" in captured.out
        assert "{} -> {A}? yes" in captured.out


class TestContextCommands:
    def test_stembase_of_the_final_countries_context(self, capsys):
        code = main(["stembase", "tests/fixtures/countries_oracle.cxt"])
        assert code == 0
        assert capsys.readouterr().out.splitlines() == [
            "{G8member, MediterraneanCountry} -> {EUmember, EuropeanCountry}",
            "{EUmember, G8member} -> {EuropeanCountry}",
            "{AsianCountry, EUmember} -> {MediterraneanCountry}",
            "{AsianCountry, EUmember, EuropeanCountry, MediterraneanCountry}"
            " -> {G8member}",
        ]

    def test_closedsets_in_lectic_order(self, tmp_path, capsys):
        path = tmp_path / "fruit.cxt"
        path.write_text(FRUIT_CXT)
        code = main(["closedsets", str(path)])
        assert code == 0
        assert capsys.readouterr().out.splitlines() == [
            "{soft}",
            "{ripe, soft}",
            "{red, soft}",
            "{red, ripe, soft}",
        ]


class TestReasonerCommands:
    def test_subsumes_yes(self, capsys):
        code = main([
            "subsumes", "tests/fixtures/geography.onto",
            "Country", "LandlockedCountry",
        ])
        assert code == 0
        assert capsys.readouterr().out.strip() == (
            "yes: LandlockedCountry is subsumed by Country"
        )

    def test_subsumes_no(self, capsys):
        code = main([
            "subsumes", "tests/fixtures/geography.onto",
            "LandlockedCountry", "OceanCountry",
        ])
        assert code == 1
        assert capsys.readouterr().out.startswith("no:")

    def test_instance_verdicts_map_to_exit_codes(self, tmp_path, capsys):
        assert main([
            "instance", "tests/fixtures/geography.onto", "Portugal", "OceanCountry",
        ]) == 0
        assert capsys.readouterr().out.strip() == "entailed"

        assert main([
            "instance", "tests/fixtures/geography.onto",
            "Portugal", "LandlockedCountry",
        ]) == 2
        assert capsys.readouterr().out.strip() == "unknown"

        refuting = tmp_path / "r.onto"
        refuting.write_text("assert not A (x)\n")
        assert main(["instance", str(refuting), "x", "A"]) == 1
        assert capsys.readouterr().out.strip() == "refuted"

    def test_tiny_node_budget_fails_cleanly(self, capsys):
        # the existential on the right forces a successor node past the budget
        code = main([
            "--node-budget", "1",
            "subsumes", "tests/fixtures/geography.onto",
            "some hasBorderTo.top", "OceanCountry",
        ])
        assert code == 3
        assert "node budget" in capsys.readouterr().err


class TestLatticeCommands:
    def test_gcs_with_lcs(self, capsys):
        code = main([
            "gcs", "tests/fixtures/family.onto",
            "some has-child.(NoSon and DaughterHappyDoctor)",
            "some has-child.(NoDaughter and SonRichDoctor)",
            "--show-lcs",
        ])
        assert code == 0
        assert capsys.readouterr().out.splitlines() == [
            "lcs: some has-child.top",
            "gcs: some has-child.(DaughterHappyDoctor and SonRichDoctor)",
        ]

    def test_gcs_without_defined_names_needs_names(self, tmp_path, capsys):
        kb_file = tmp_path / "plain.onto"
        kb_file.write_text("assert A (x)\n")
        code = main(["gcs", str(kb_file), "A", "A"])
        assert code == 3
        assert "--names" in capsys.readouterr().err

    def test_hierarchy_lines_reparse_and_hold(self, capsys):
        code = main(["hierarchy", "tests/fixtures/family.onto"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines and all(line.startswith("gci ") for line in lines)
        family = parse_ontology(open("tests/fixtures/family.onto").read())
        reparsed = parse_ontology("\n".join(lines) + "\n")
        for lhs, rhs in reparsed.tbox.gcis:
            assert subsumes(family.tbox, rhs, lhs)


class TestFailures:
    def test_missing_file(self, capsys):
        assert main(["stembase", "/no/such/file.cxt"]) == 3
        assert capsys.readouterr().err.startswith("error:")

    def test_malformed_ontology(self, tmp_path, capsys):
        bad = tmp_path / "bad.onto"
        bad.write_text("define :=\n")
        assert main(["instance", str(bad), "x", "A"]) == 3
        assert "error:" in capsys.readouterr().err

    def test_malformed_context(self, tmp_path, capsys):
        bad = tmp_path / "bad.cxt"
        bad.write_text("BP\n\n0\n0\n\n")
        assert main(["stembase", str(bad)]) == 3
        assert "error:" in capsys.readouterr().err

    def test_unknown_individual(self, capsys):
        assert main([
            "instance", "tests/fixtures/geography.onto", "Atlantis", "Country",
        ]) == 3
        assert "error:" in capsys.readouterr().err
