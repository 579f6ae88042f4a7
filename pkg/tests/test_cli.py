import io
import json
import sys

import pytest

from bstruct.core.errors import DifferentialError
from bstruct.core.logger import get_logger, setup_logging
from bstruct.core.settings import settings
from bstruct.main import run
from bstruct.services.cochain import cohomology
from bstruct.services.magma import MagmaTable, enumerate_b_magmas
from bstruct.services.tensorops import FieldSpec, LegOperator, check_hexagon
from bstruct.services.zlinalg import AbelianGroup

Z2_TABLE = [[0, 1], [1, 0]]


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def flip_file(tmp_path):
    entries = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    return write_json(tmp_path / "flip.json", {"field": {"prime": 2}, "leg_dims": [2, 2], "entries": entries})


@pytest.fixture
def z2_file(tmp_path):
    return write_json(tmp_path / "z2.json", {"n": 2, "table": Z2_TABLE})


class TestEquations:
    def test_hexagon_on_flip(self, capsys, flip_file):
        code, out = invoke(capsys, "eq", "hexagon", "--op", flip_file)
        assert code == 0
        assert out["holds"] is True
        assert out["details"] == {"field": "F_2", "leg_dims": [2, 2]}
        assert out["conventions"]["reversed_placement"].startswith("flip-conjugation")

    def test_failing_equation_still_exits_zero(self, capsys, tmp_path):
        f5 = FieldSpec(5)
        entries = [[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 3, 1]]
        expected = check_hexagon(LegOperator(f5, (2, 2), entries))
        path = write_json(tmp_path / "b.json", {"field": {"prime": 5}, "leg_dims": [2, 2], "entries": entries})
        code, out = invoke(capsys, "eq", "hexagon", "--op", path)
        assert code == 0
        assert out["holds"] is expected

    def test_rational_entries(self, capsys, tmp_path):
        entries = [["1/2", 0, 0, 0], [0, 0, "1/2", 0], [0, "1/2", 0, 0], [0, 0, 0, "1/2"]]
        path = write_json(tmp_path / "half.json", {"field": {"prime": None}, "leg_dims": [2, 2], "entries": entries})
        code, out = invoke(capsys, "eq", "hexagon", "--op", path, "--field", "Q")
        assert code == 0 and out["holds"] is True
        code, out = invoke(capsys, "eq", "symmetric", "--op", path)
        assert code == 0 and out["holds"] is False

    def test_field_mismatch(self, capsys, flip_file):
        code, out = invoke(capsys, "eq", "hexagon", "--op", flip_file, "--field", "5")
        assert code == 2
        assert out["error"] == "InputError"
        assert out["field"] == "field"

    def test_cbc(self, capsys, flip_file):
        code, out = invoke(capsys, "eq", "cbc", "--op", flip_file, "--dims", "2,1,2,1")
        assert code == 0
        assert out["holds"] is True
        assert out["details"]["dims"] == [2, 1, 2, 1]


class TestBraidsAndConversions:
    def test_inverse_word_evaluates_to_identity(self, capsys, flip_file):
        code, out = invoke(capsys, "braid", "eval", "--op", flip_file, "--strands", "3", "--word=-2,2")
        assert code == 0
        assert out["result"]["entries"] == [["1" if i == j else "0" for j in range(8)] for i in range(8)]

    def test_coxeter(self, capsys, flip_file):
        code, out = invoke(capsys, "braid", "coxeter", "--op", flip_file, "--n", "4")
        assert code == 0 and out["holds"] is True

    def test_z_s_round_trip(self, capsys, tmp_path):
        entries = [[1 if (i + 1) % 8 == j else 0 for j in range(8)] for i in range(8)]
        z = write_json(tmp_path / "z.json", {"field": {"prime": 2}, "leg_dims": [2, 2, 2], "entries": entries})
        code, out = invoke(capsys, "convert", "z-to-s", "--op", z)
        assert code == 0
        s = write_json(tmp_path / "s.json", out["result"])
        code, out = invoke(capsys, "convert", "s-to-z", "--op", s)
        assert code == 0
        assert out["result"]["entries"] == [[str(v) for v in row] for row in entries]


class TestRoundTrips:
    def test_lze_solution_through_converters(self, capsys, tmp_path):
        lines_path = tmp_path / "lze.jsonl"
        code, out = invoke(capsys, "search", "lze", "--c", "1", "--b", "2", "--field", "3", "--jsonl", str(lines_path))
        assert code == 0
        lines = [json.loads(line) for line in lines_path.read_text(encoding="utf-8").splitlines()]
        assert len(lines) == out["result"]["summary"]["count"] > 0
        for k, line in enumerate(lines[:4]):
            L = write_json(tmp_path / f"L{k}.json", line["operators"]["L"])
            Z = write_json(tmp_path / f"Z{k}.json", line["operators"]["Z"])

            code, out = invoke(capsys, "eq", "lze", "--L", L, "--Z", Z)
            assert code == 0 and out["holds"] is True

            code, out = invoke(capsys, "convert", "l-to-m", "--op", L)
            assert code == 0
            assert out["result"]["leg_dims"] == [2, 1, 1]
            assert out["result"]["codomain_leg_dims"] == [1, 1, 2]
            M = write_json(tmp_path / f"M{k}.json", out["result"])
            code, out = invoke(capsys, "convert", "z-to-s", "--op", Z)
            S = write_json(tmp_path / f"S{k}.json", out["result"])

            code, out = invoke(capsys, "eq", "m-relation", "--M", M, "--S", S)
            assert code == 0 and out["holds"] is True

            code, out = invoke(capsys, "convert", "m-to-l", "--op", M)
            assert code == 0
            assert out["result"]["entries"] == line["operators"]["L"]["entries"]

    def test_enumerated_tables_check_as_b_magmas(self, capsys, tmp_path):
        code, out = invoke(capsys, "magma", "enumerate", "--n", "2", "--up-to-iso")
        assert code == 0
        tables = out["result"]["tables"]
        assert tables
        for k, table in enumerate(tables):
            path = write_json(tmp_path / f"t{k}.json", table)
            code, verdict = invoke(capsys, "magma", "check", "--magma", path)
            assert code == 0 and verdict["holds"] is True


class TestPointed:
    def test_gauge_by_zero_is_identity(self, capsys, tmp_path):
        magma = {"n": 2, "table": Z2_TABLE}
        r_values = [[(i * 5) % 2] for i in range(8)]
        r = write_json(tmp_path / "r.json", {"magma": magma, "degree": 3, "coeff": {"moduli": [2]}, "values": r_values})
        q = write_json(tmp_path / "q.json", {"magma": magma, "degree": 2, "coeff": {"moduli": [2]}, "values": [[0]] * 4})
        code, out = invoke(capsys, "pointed", "gauge", "--r", r, "--q", q)
        assert code == 0
        assert out["result"]["values"] == r_values

    def test_twisted_algebra_needs_prime(self, capsys, tmp_path):
        magma = {"n": 2, "table": Z2_TABLE}
        q = write_json(tmp_path / "q.json", {"magma": magma, "degree": 2, "coeff": {"moduli": [2]}, "values": [[0]] * 4})
        code, out = invoke(capsys, "pointed", "twisted-algebra", "--q", q, "--prime", "4")
        assert code == 2
        assert out["field"] == "prime"
        code, out = invoke(capsys, "pointed", "twisted-algebra", "--q", q, "--prime", "3")
        assert code == 0 and out["holds"] is True


class TestMagmaAndCohomology:
    def test_magma_check(self, capsys, z2_file):
        code, out = invoke(capsys, "magma", "check", "--magma", z2_file)
        assert code == 0
        assert out["holds"] is True
        assert out["details"]["abelian_group"] is True
        assert out["details"]["right_units"] == [0]

    def test_enumerate(self, capsys):
        code, out = invoke(capsys, "magma", "enumerate", "--n", "2")
        assert code == 0
        assert out["result"]["count"] == len(enumerate_b_magmas(2))

    def test_compute(self, capsys, z2_file):
        expected = cohomology(MagmaTable(Z2_TABLE), AbelianGroup((2,)), 2)
        code, out = invoke(capsys, "cohomology", "compute", "--magma", z2_file, "--coeff", "2", "--degree", "2")
        assert code == 0
        assert out["result"]["order"] == expected.order
        assert out["result"]["invariant_factors"] == list(expected.invariant_factors)

    def test_differential_and_coboundary(self, capsys, tmp_path):
        magma = {"n": 2, "table": Z2_TABLE}
        p = write_json(tmp_path / "p.json", {"magma": magma, "degree": 1, "coeff": {"moduli": [2]}, "values": [[1], [0]]})
        code, out = invoke(capsys, "cohomology", "d", "--cochain", p)
        assert code == 0
        assert out["result"]["values"] == [[1], [1], [1], [1]]
        dp = write_json(tmp_path / "dp.json", out["result"])
        code, out = invoke(capsys, "cohomology", "is-coboundary", "--cochain", dp)
        assert code == 0
        assert out["holds"] is True
        assert out["details"]["witness"]["degree"] == 1

    def test_cochain_shape_error(self, capsys, tmp_path):
        magma = {"n": 2, "table": Z2_TABLE}
        path = write_json(tmp_path / "bad.json", {"magma": magma, "degree": 2, "coeff": {"moduli": [2]}, "values": [[1]]})
        code, out = invoke(capsys, "cohomology", "is-cocycle", "--cochain", path)
        assert code == 2
        assert out["field"] == "values"


class TestSearch:
    def test_jsonl(self, capsys, tmp_path):
        target = tmp_path / "out" / "ybe.jsonl"
        code, out = invoke(capsys, "search", "ybe-set", "--n", "2", "--jsonl", str(target))
        assert code == 0
        assert "solutions" not in out["result"]
        lines = [json.loads(line) for line in target.read_text(encoding="utf-8").splitlines()]
        assert len(lines) == out["result"]["summary"]["count"]
        assert [line["index"] for line in lines] == list(range(len(lines)))
        assert all(line["kind"] == "set_theoretic_ybe" for line in lines)

    def test_thread_count_is_byte_identical(self, capsys):
        outputs = []
        for threads in ("1", "8"):
            assert run(["magma", "enumerate", "--n", "3", "--up-to-iso", "--threads", threads]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_resource_limit(self, capsys):
        code, out = invoke(capsys, "search", "ybe-set", "--n", "4")
        assert code == 2
        assert out["error"] == "ResourceLimitError"


class TestErrorsAndConfig:
    def test_unknown_command(self, capsys):
        code, out = invoke(capsys, "magma", "frobnicate")
        assert code == 2
        assert out["success"] is False
        assert out["error"] == "InputError"
        assert out["field"] == "action"
        assert "frobnicate" in out["message"]

    def test_bad_flag_value_reports_field(self, capsys):
        code, out = invoke(capsys, "magma", "enumerate", "--n", "three")
        assert code == 2
        assert out["field"] == "n"

    def test_missing_required_flag(self, capsys):
        code, out = invoke(capsys, "magma", "enumerate")
        assert code == 2
        assert out["field"] == "n"

    def test_repeated_runs_in_one_process(self, capsys):
        for _ in range(3):
            code, out = invoke(capsys, "magma", "enumerate", "--n", "1")
            assert code == 0
            assert out["result"]["count"] == 1

    def test_logging_follows_current_stderr(self, monkeypatch):
        first, second = io.StringIO(), io.StringIO()
        monkeypatch.setattr(sys, "stderr", first)
        setup_logging("INFO")
        first.close()
        monkeypatch.setattr(sys, "stderr", second)
        setup_logging("INFO")
        get_logger("cli").info("第二次运行")
        assert "第二次运行" in second.getvalue()
        setup_logging(settings.LOG_LEVEL)

    def test_version(self, capsys):
        assert run(["--version"]) == 0

    def test_missing_file(self, capsys, tmp_path):
        missing = str(tmp_path / "nope.json")
        code, out = invoke(capsys, "magma", "check", "--magma", missing)
        assert code == 2
        assert out["path"] == missing

    def test_schema_error_reports_field(self, capsys, tmp_path):
        path = write_json(tmp_path / "bad.json", {"n": 2, "table": [[0, "x"], [1, 0]]})
        code, out = invoke(capsys, "magma", "check", "--magma", path)
        assert code == 2
        assert out["success"] is False
        assert out["path"] == path
        assert out["field"] == "table.0.1"

    def test_config_file(self, capsys, tmp_path):
        config = write_json(tmp_path / "config.json", {"DEFAULT_PRIME": 5})
        code, out = invoke(capsys, "search", "preunital", "--config", config)
        assert code == 0
        assert out["result"]["summary"]["task"]["parameters"]["field"] == "F_5"
        assert settings.DEFAULT_PRIME == 2

    def test_bad_config(self, capsys, tmp_path):
        config = write_json(tmp_path / "config.json", {"NO_SUCH_KEY": 1})
        code, out = invoke(capsys, "magma", "enumerate", "--n", "1", "--config", config)
        assert code == 2
        assert out["field"] == "NO_SUCH_KEY"

    def test_out_file(self, capsys, tmp_path, z2_file):
        target = tmp_path / "result.json"
        code, out = invoke(capsys, "magma", "idempotents", "--magma", z2_file, "--out", str(target))
        assert code == 0 and out is None
        assert json.loads(target.read_text(encoding="utf-8"))["result"]["idempotents"] == [0]

    def test_internal_error(self, capsys, monkeypatch, z2_file):
        def broken(_):
            raise DifferentialError("d∘d ≠ 0")

        monkeypatch.setattr("bstruct.commands.magma.check_b_axiom", broken)
        code, out = invoke(capsys, "magma", "check", "--magma", z2_file)
        assert code == 1
        assert out["error"] == "DifferentialError"

    def test_unexpected_error(self, capsys, monkeypatch, z2_file):
        def broken(_):
            raise RuntimeError("boom")

        monkeypatch.setattr("bstruct.commands.magma.idempotents", broken)
        code, out = invoke(capsys, "magma", "idempotents", "--magma", z2_file)
        assert code == 1
        assert out["error"] == "InternalError"
