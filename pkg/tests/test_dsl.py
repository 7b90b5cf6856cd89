"""Script parsing, report generation, the built-in corpus, and the
command-line entry point with its exit codes."""

import json

import pytest
from hypothesis import given, settings, strategies as st

import quasiform.cli as cli
from quasiform.corpus import CASES, run_corpus
from quasiform.dsl import parse, scripts_equivalent, tokenize
from quasiform.errors import (
    DslSyntaxError,
    UndeclaredVariable,
    ZeroCoefficient,
)


class TestTokenizer:
    def test_positions(self):
        toks = tokenize("field F2(a);\nform p = <a>;")
        assert toks[0].value == "field" and toks[0].line == 1
        forms = [t for t in toks if t.value == "form"]
        assert forms[0].line == 2 and forms[0].column == 1

    def test_bad_character(self):
        with pytest.raises(DslSyntaxError) as exc:
            tokenize("field F2(a)$")
        assert exc.value.line == 1 and exc.value.column == 12

    def test_comments_skipped(self):
        toks = tokenize("# a comment\nfield # mid\nF2")
        assert [t.value for t in toks] == ["field", "F2", ""]


class TestParser:
    def test_example_script(self):
        s = parse("field F2(a,b); form p = <1,a,b,a*b>; invariants p;")
        assert s.field_vars == ("a", "b")
        assert [fd.name for fd in s.forms] == ["p"]
        assert s.forms[0].form.dim == 4
        assert [(c.name, c.args) for c in s.commands] == \
            [("invariants", ("p",))]

    def test_zero_coefficient(self):
        with pytest.raises(ZeroCoefficient):
            parse("form p = <1, 0>;")
        with pytest.raises(ZeroCoefficient):
            parse("field F2(a); form p = <a + a>;")

    def test_undeclared_variable(self):
        with pytest.raises(UndeclaredVariable):
            parse("form p = <x>;")
        with pytest.raises(UndeclaredVariable):
            parse("field F2(a); form p = <a*z>;")

    def test_syntax_error_positions(self):
        with pytest.raises(DslSyntaxError) as exc:
            parse("field F2(a);\nform p = <a*>;")
        assert exc.value.line == 2 and exc.value.column == 13

    def test_constants_only_field(self):
        s = parse("form p = <1, 1+1+1>; invariants p;")
        assert s.field_vars == ()
        assert s.forms[0].form.dim == 2

    def test_command_checks_form_names(self):
        with pytest.raises(DslSyntaxError):
            parse("compare p q;")
        with pytest.raises(DslSyntaxError):
            parse("field F2(a); form p = <a>; compare p q;")

    def test_duplicate_and_ordering_rules(self):
        with pytest.raises(DslSyntaxError):
            parse("field F2(a); field F2(b);")
        with pytest.raises(DslSyntaxError):
            parse("form p = <1>; field F2(a);")
        with pytest.raises(DslSyntaxError):
            parse("field F2(a); form p = <a>; form p = <1>;")
        with pytest.raises(DslSyntaxError):
            parse("field F2(a, a);")

    def test_expression_grammar(self):
        s = parse("field F2(a,b); form p = <(a+b)^2/b, 1/(a*b)^3, a^0>;")
        coeffs = s.forms[0].form.coeffs
        a, b = s.field.var("a"), s.field.var("b")
        assert coeffs[0] == (a.square() + b.square()) * b.invert()
        assert coeffs[1] == (a * b).invert() ** 3
        assert coeffs[2] == s.field.one()

    def test_integer_literals_only_as_exponents(self):
        with pytest.raises(DslSyntaxError):
            parse("field F2(a); form p = <3*a>;")
        with pytest.raises(DslSyntaxError):
            parse("field F2(a); form p = <a^b>;")

    def test_division_by_zero_expression(self):
        with pytest.raises(DslSyntaxError):
            parse("field F2(a); form p = <1/(a+a)>;")

    def test_render_round_trip(self):
        text = ("field F2(a, b, c);\n"
                "form q1 = <1, a, b, a*b, c>;\n"
                "form q2 = <(a+b)^3/c, 1>;\n"
                "invariants q1;\ncompare q1 q2;\nsplitting q2;\ncorpus;\n")
        s = parse(text)
        assert scripts_equivalent(s, parse(s.render()))

    @given(st.lists(st.sampled_from(
        ["1", "a", "b", "a*b", "a+1", "(a+b)^2", "1/a", "a^3/b"]),
        min_size=1, max_size=5))
    @settings(max_examples=30, deadline=None)
    def test_round_trip_property(self, exprs):
        text = "field F2(a, b);\nform p = <" + ", ".join(exprs) + ">;\n"
        s = parse(text)
        assert scripts_equivalent(s, parse(s.render()))


class TestRun:
    def test_invariants_report(self):
        s = parse("field F2(a,b); form p = <1,a,b,a*b>; invariants p;")
        report = cli.run(s)
        assert set(report) == {"version", "field", "forms", "results"}
        entry = report["results"][0]
        assert entry["total_index"] == 0
        assert entry["first_witt_index"] == 2
        assert entry["splitting_pattern"] == [4, 2, 1]
        assert entry["essential_dimension"] == 1
        assert entry["norm_degree"] == 4

    def test_compare_report(self):
        s = parse("field F2(a,b,c);"
                  "form q1 = <1,a,b,a*b,c>; form q2 = <1,a,c,a*c,b>;"
                  "compare q1 q2;")
        entry = cli.run(s)["results"][0]
        assert entry["similar"] is False
        assert entry["birational"] is True
        assert entry["stably_equivalent"] is True

    def test_ruling_report_with_verification(self):
        s = parse("field F2(a,b); form p = <1,a,b,a*b>; ruling p;")
        entry = cli.run(s, verify_certificates=True)["results"][0]
        assert entry["ruled"] is True
        assert entry["witt_index"] == 2
        assert entry["subquadric"] == ["1", "a", "b"]
        assert entry["certificate_verified"] is True
        assert len(entry["fibers"]) == 2
        # without the flag the verification key is absent
        entry = cli.run(s)["results"][0]
        assert "certificate_verified" not in entry

    def test_ruling_report_not_ruled(self):
        s = parse("field F2(a,b,c); form q = <1,a,b,a*b,c>; ruling q;")
        entry = cli.run(s)["results"][0]
        assert entry["ruled"] is False and "reason" in entry

    def test_regular_and_splitting_reports(self):
        s = parse("field F2(a,b,c); form q = <1,a,b,a*b,c>;"
                  "regular q; splitting q;")
        regular, splitting = cli.run(s)["results"]
        assert regular["regular"] is False
        assert splitting["splitting_pattern"][0] == 5
        assert splitting["witt_increments"][0] == 1

    def test_isotropic_form_reports_null_witt_data(self):
        s = parse("field F2(a); form q = <a, a^3>; invariants q;")
        entry = cli.run(s)["results"][0]
        assert entry["total_index"] == 1
        assert entry["first_witt_index"] is None
        assert entry["norm_degree"] is None

    def test_report_bytes_deterministic(self):
        text = ("field F2(a,b); form p = <1,a,b,a*b>;"
                "invariants p; ruling p; corpus;")
        r1 = json.dumps(cli.run(parse(text)), indent=2)
        r2 = json.dumps(cli.run(parse(text)), indent=2)
        assert r1 == r2


class TestCorpus:
    def test_all_cases_pass(self):
        results = run_corpus()
        assert len(results) == len(CASES)
        failed = [r for r in results if not r["ok"]]
        assert failed == []

    def test_mismatch_reporting(self, monkeypatch):
        name, compute, expected = CASES[0]
        wrong = dict(expected)
        wrong["total_index"] = 99
        monkeypatch.setattr("quasiform.corpus.CASES",
                            [(name, compute, wrong)])
        results = run_corpus()
        assert not results[0]["ok"]
        keys = [m["key"] for m in results[0]["mismatches"]]
        assert keys == ["total_index"]


class TestMain:
    def write(self, tmp_path, text):
        path = tmp_path / "script.qf"
        path.write_text(text)
        return str(path)

    def test_success_and_json_output(self, tmp_path, capsys):
        script = self.write(tmp_path,
                            "field F2(a,b); form p = <1,a,b,a*b>;"
                            "invariants p;")
        out = tmp_path / "report.json"
        assert cli.main(["run", script, "--json", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["results"][0]["first_witt_index"] == 2
        human = capsys.readouterr().out
        assert "invariants p" in human

    def test_json_to_stdout(self, tmp_path, capsys):
        script = self.write(tmp_path, "form p = <1>; invariants p;")
        assert cli.main(["run", script, "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["forms"] == {"p": ["1"]}

    def test_input_error_exit(self, tmp_path, capsys):
        script = self.write(tmp_path, "form p = <1, 0>;")
        assert cli.main(["run", script]) == 2
        assert cli.main(["run", str(tmp_path / "missing.qf")]) == 2

    def test_depth_limit_exit(self, tmp_path, capsys):
        script = self.write(tmp_path,
                            "field F2(t1,t2,t3,t4,t5);"
                            "form g = <t1,t2,t3,t4,t5>; invariants g;")
        assert cli.main(["run", script, "--max-tower-depth", "2"]) == 3
        assert "resource limit" in capsys.readouterr().err

    def test_timeout_exit(self, tmp_path, capsys):
        script = self.write(tmp_path,
                            "field F2(t1,t2,t3,t4,t5);"
                            "form g = <t1,t2,t3,t4,t5>; invariants g;")
        code = cli.main(["run", script, "--timeout-seconds", "0.000001"])
        assert code == 3
        assert "resource limit" in capsys.readouterr().err

    def test_bad_flag_values(self, tmp_path):
        script = self.write(tmp_path, "form p = <1>;")
        assert cli.main(["run", script, "--timeout-seconds", "0"]) == 2
        assert cli.main(["run", script, "--max-tower-depth", "0"]) == 2

    def test_corpus_failure_exit(self, tmp_path, monkeypatch, capsys):
        script = self.write(tmp_path, "corpus;")
        assert cli.main(["run", script]) == 0
        monkeypatch.setattr(
            "quasiform.cli.run_corpus",
            lambda: [{"name": "stub", "ok": False, "mismatches": []}])
        assert cli.main(["run", script]) == 1

    def test_failed_certificate_exit(self, tmp_path, monkeypatch):
        script = self.write(tmp_path,
                            "field F2(a,b); form p = <1,a,b,a*b>;"
                            "ruling p;")
        assert cli.main(["run", script, "--verify-certificates"]) == 0

        real = cli.construct_ruling

        class Lying:
            def __init__(self, dec):
                self._dec = dec

            def __getattr__(self, name):
                return getattr(self._dec, name)

            def verify(self):
                return False

        monkeypatch.setattr(cli, "construct_ruling",
                            lambda form: Lying(real(form)))
        assert cli.main(["run", script, "--verify-certificates"]) == 1
        # without the flag nothing is asserted
        assert cli.main(["run", script]) == 0
