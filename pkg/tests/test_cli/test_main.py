"""Test the twisted-wick command line."""

import json

import pytest

from twisted_wick import __version__
from twisted_wick.cli import dump_spec, main, preset_spec
from twisted_wick.cli.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE


@pytest.fixture
def spec_file(tmp_path):
    """프리셋을 spec 파일로 기록하는 팩토리."""

    def write(name: str, d: int = 2, max_degree: int | None = None) -> str:
        path = tmp_path / f"{name}-{d}.json"
        path.write_text(dump_spec(preset_spec(name, d, max_degree)), encoding="utf-8")
        return str(path)

    return write


class TestPresetCommand:
    """preset 하위 명령."""

    def test_stdout(self, capsys):
        assert main(["preset", "qdeform"]) == EXIT_OK
        out = capsys.readouterr().out
        assert '"q^1"' in out
        assert '"q^-1"' in out
        assert out == dump_spec(preset_spec("qdeform", 2))

    def test_output_file(self, tmp_path):
        target = tmp_path / "fermion.json"
        assert main(["preset", "fermion", "-d", "3", "-o", str(target)]) == EXIT_OK
        expected = dump_spec(preset_spec("fermion", 3))
        assert target.read_text(encoding="utf-8") == expected

    def test_unknown_preset_is_usage_error(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["preset", "anyon"])
        assert exc_info.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            main(["--version"])
        assert __version__ in capsys.readouterr().out


class TestCheckCommand:
    """check 하위 명령과 종료 코드."""

    def _machine(self, capsys, argv: list[str]) -> tuple[int, str]:
        code = main(argv)
        return code, capsys.readouterr().out

    def test_boson_passes(self, capsys, spec_file):
        code, out = self._machine(
            capsys,
            ["check", spec_file("boson"), "--max-degree", "3", "--format", "machine"],
        )
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["version"] == "twisted-wick-report/1"
        assert document["verdict"] == "pass"
        assert document["config"]["n_max"] == 3
        assert document["config"]["q"] == "symbolic"
        assert [row["quotient"] for row in document["dimensions"]] == [1, 2, 3, 4]
        assert len(document["checks"]) == 9
        assert "timing" in document

    def test_machine_output_is_deterministic(self, capsys, spec_file):
        path = spec_file("fermion")
        argv = ["check", path, "--max-degree", "3", "--format", "machine"]
        argv.append("--no-timing")
        first = self._machine(capsys, argv)
        second = self._machine(capsys, argv)
        assert first == second
        assert "timing" not in first[1]

    def test_max_degree_from_spec(self, capsys, spec_file):
        _, out = self._machine(
            capsys,
            ["check", spec_file("boson", 1, max_degree=2), "--format", "machine"],
        )
        assert json.loads(out)["config"]["n_max"] == 2

    def test_failure_exit_code(self, capsys, spec_file):
        code, out = self._machine(
            capsys,
            [
                "check",
                spec_file("qdeform-alt"),
                "--max-degree",
                "2",
                "--format",
                "machine",
            ],
        )
        assert code == EXIT_FAILED
        document = json.loads(out)
        assert document["verdict"] == "fail"
        wz = next(c for c in document["checks"] if c["name"] == "check_wz")
        assert wz["witness"]["indices"] == [1, 2]

    def test_specialised_q(self, capsys, spec_file):
        code, out = self._machine(
            capsys,
            [
                "check",
                spec_file("qdeform"),
                "--q=-1",
                "--max-degree",
                "3",
                "--format",
                "machine",
            ],
        )
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["config"]["q"] == "-1"
        assert all(c["parameters"]["q"] == "-1" for c in document["checks"])

    def test_resource_skip_and_strict(self, capsys, spec_file):
        path = spec_file("boson")
        argv = ["check", path, "--max-degree", "2", "--cap", "4", "--format", "machine"]
        code, out = self._machine(capsys, argv)
        assert code == EXIT_OK
        assert json.loads(out)["verdict"] == "skipped-resource"
        assert json.loads(out)["config"]["dimension_cap"] == 4
        code, _ = self._machine(capsys, [*argv, "--strict"])
        assert code == EXIT_RESOURCE

    def test_text_output(self, capsys, spec_file):
        assert main(["check", spec_file("boson"), "--max-degree", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "check_wz" in out
        assert "overall: pass" in out

    def test_save(self, capsys, spec_file, tmp_path):
        target = tmp_path / "run"
        argv = ["check", spec_file("boson"), "--max-degree", "2", "--save", str(target)]
        assert main(argv) == EXIT_OK
        saved = json.loads((target / "report.json").read_text(encoding="utf-8"))
        assert saved["verdict"] == "pass"
        assert "timing" in saved
        markdown = (target / "REPORT.md").read_text(encoding="utf-8")
        assert "## Verdict\npass" in markdown
        assert saved["input_digest"] in markdown

    def test_save_without_timing_is_stable(self, capsys, spec_file, tmp_path):
        path = spec_file("fermion")
        for run in ("a", "b"):
            argv = ["check", path, "--max-degree", "2", "--no-timing"]
            assert main([*argv, "--save", str(tmp_path / run)]) == EXIT_OK
        for name in ("report.json", "REPORT.md"):
            first = (tmp_path / "a" / name).read_text(encoding="utf-8")
            assert first == (tmp_path / "b" / name).read_text(encoding="utf-8")
        markdown = (tmp_path / "a" / "REPORT.md").read_text(encoding="utf-8")
        assert "## Timestamp" not in markdown
        assert "timing" not in (tmp_path / "a" / "report.json").read_text(
            encoding="utf-8"
        )


class TestInputErrors:
    """종료 코드 2."""

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{\n  "format": "twisted-wick-spec/1",\n  "dim" 2\n}')
        assert main(["check", str(path)]) == EXIT_INPUT
        err = capsys.readouterr().err
        assert "line 3" in err
        assert "column 9" in err

    def test_bad_entry(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        document = {
            "format": "twisted-wick-spec/1",
            "dim": 2,
            "parameter": "q",
            "B": [[1, 1, 1, 1, "q^"]],
        }
        path.write_text(json.dumps(document))
        assert main(["dims", str(path)]) == EXIT_INPUT
        assert "B[0]" in capsys.readouterr().err

    def test_missing_file(self, capsys, tmp_path):
        assert main(["dims", str(tmp_path / "missing.json")]) == EXIT_INPUT

    def test_bad_word(self, capsys, spec_file):
        assert main(["normal-order", spec_file("boson"), "a1 b2"]) == EXIT_INPUT

    def test_bad_q_is_usage_error(self, spec_file):
        with pytest.raises(SystemExit) as exc_info:
            main(["dims", spec_file("boson"), "--q", "x"])
        assert exc_info.value.code == 2


class TestDimsCommand:
    """dims 하위 명령."""

    def test_machine(self, capsys, spec_file):
        path = spec_file("fermion", 3)
        argv = ["dims", path, "--max-degree", "4", "--format", "machine"]
        assert main(argv) == EXIT_OK
        document = json.loads(capsys.readouterr().out)
        assert [row["quotient"] for row in document["dimensions"]] == [1, 3, 3, 1, 0]
        assert "dimensions_skipped" not in document

    def test_capped(self, capsys, spec_file):
        argv = [
            "dims",
            spec_file("boson"),
            "--max-degree",
            "3",
            "--cap",
            "4",
            "--format",
            "machine",
        ]
        assert main(argv) == EXIT_OK
        document = json.loads(capsys.readouterr().out)
        assert len(document["dimensions"]) == 3
        assert document["dimensions_skipped"]["degree"] == 3


class TestNormalOrderCommand:
    """normal-order 하위 명령."""

    def test_text(self, capsys, spec_file):
        assert main(["normal-order", spec_file("boson"), "a1 A1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["ε + A1 a1", "vacuum expectation: 1"]

    def test_machine(self, capsys, spec_file):
        argv = ["normal-order", spec_file("qdeform"), "a1 A2", "--format", "machine"]
        assert main(argv) == EXIT_OK
        document = json.loads(capsys.readouterr().out)
        assert document == {
            "input": "a1 A2",
            "normal_order": "q^-1 A2 a1",
            "vacuum_expectation": "0",
        }
