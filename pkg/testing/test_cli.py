import configparser
import logging

import pytest
import simplejson as json
from click.testing import CliRunner

from app import setup_logging
from handlers import cli
from witt import clear_memory_cache


@pytest.fixture
def run():
    runner = CliRunner(mix_stderr=False)

    def invoke(*args):
        return runner.invoke(cli, list(args))

    return invoke


def output(result):
    return json.loads(result.stdout)


def test_tilting_the_ideal_of_x(run):
    result = run("tilt", "ideal", "--op", "flat", "--ideal", '{"kind":"principal","bound":"1"}')
    assert result.exit_code == 0
    assert output(result) == {"kind": "zero"}


def test_sharp_of_augmentation(run):
    result = run("tilt", "ideal", "--op", "sharp", "--ideal", '{"kind":"augmentation"}')
    assert output(result) == {"kind": "augmentation"}


def test_spectral_radical_command(run):
    result = run("tilt", "ideal", "--op", "spectral-radical", "--ideal", '{"kind":"principal","bound":"1/2"}')
    assert output(result) == {"kind": "augmentation"}


def test_witt_polynomials(run):
    result = run("witt", "polys", "--p", "2", "--n", "2")
    assert result.exit_code == 0
    payload = output(result)
    assert payload["S"] == ["X0 + Y0", "X1 + Y1 - X0*Y0"]
    assert payload["P"][0] == "X0*Y0"


@pytest.mark.parametrize("flag", ["--witt-cache-dir", "--witt-cache"])
def test_witt_cache_dir_flag(run, tmp_path, flag):
    clear_memory_cache()
    result = run(flag, str(tmp_path), "witt", "polys", "--p", "2", "--n", "2")
    clear_memory_cache()
    assert result.exit_code == 0
    assert (tmp_path / "witt_p2_n2.json").exists()


def test_spectral_bound_of_eps(run):
    result = run("gauss", "spectral", "eps", "--ring", "dual-numbers", "--max-n", "8")
    assert result.exit_code == 0
    payload = output(result)
    assert payload["bound"] == "0"
    assert payload["attained_at"] == 2


def test_power_bounded_needs_heuristic_on_dual_numbers(run):
    result = run("gauss", "power-bounded", "eps", "--ring", "dual-numbers")
    assert result.exit_code == 1
    assert output(result)["error"]["code"] == "not-power-multiplicative"
    result = run("gauss", "power-bounded", "eps", "--ring", "dual-numbers", "--heuristic")
    assert output(result)["power_bounded"] is True


def test_values_commands(run):
    assert output(run("values", "norm", "3/2"))["norm"] == "2^(-3/2)"
    root = output(run("values", "root", "1", "--k", "3"))
    assert root["in_value_group"] is False
    assert root["norm"] == "2^(-1/3) (inexact)"


def test_charp_product(run):
    payload = output(run("charp", "mul", "1 + t", "1 + t"))
    assert payload["result"] == "1 + t^(2) + O(t^(8))"
    assert payload["norm"] == "2^(0)"


def test_sharp_of_t(run):
    payload = output(run("untilt", "sharp", "t"))
    assert payload["norm"] == "2^(-1)"


def test_gauss_eval_on_radius(run):
    payload = output(run("gauss", "eval", "p + p^2*X", "--radius", "1"))
    assert payload["value"] == "2^(-1)"


def test_approximation_commands(run):
    payload = output(run("tilt", "approx", "p + p^2*X", "--eps", "3"))
    assert payload["disjunction"]["holds"] is True
    assert output(run("tilt", "verify", "[t]", "t", "--eps", "0"))["passes"] is True


def test_zariski_commands(run):
    inverse = output(run("zariski", "invert", "t"))
    assert inverse["status"] == "converged"
    assert inverse["terms"] == 3
    check = output(run("zariski", "check", "--ring", "poly-gauss-c", "--samples", "T", "--term-max", "5"))
    assert check["samples"][0]["status"] == "diverged-support"
    assert output(run("zariski", "norm", "T", "1 + T"))["norm"] == "2^(-1)"


def test_topspec_command(run):
    payload = output(run("spectra", "topspec", "--candidates", "0;p;1"))
    assert [row["verdict"] for row in payload["rows"]] == ["in", "in", "out"]


def test_malformed_json_exits_one(run):
    result = run("tilt", "ideal", "--op", "flat", "--ideal", "{bad")
    assert result.exit_code == 1
    assert output(result)["error"]["code"] == "input-format"


def test_unsupported_prime_exits_one(run):
    result = run("--p", "7", "values", "norm", "1")
    assert result.exit_code == 1
    assert output(result)["error"]["code"] == "unsupported-configuration"


@pytest.mark.parametrize("args", [
    ("charp", "frobnicate", "t"),
    ("values", "root", "1"),
    ("--format", "xml", "values", "norm", "1"),
])
def test_usage_errors_exit_two(run, args):
    assert run(*args).exit_code == 2


def test_repeated_runs_are_byte_identical(run):
    first = run("spectra", "shilov")
    second = run("spectra", "shilov")
    assert first.exit_code == 0
    assert first.stdout == second.stdout


def test_tsv_output(run):
    result = run("--format", "tsv", "spectra", "topspec", "--candidates", "0;p;1")
    lines = result.stdout.splitlines()
    assert lines[0] == "bounded\tcandidate\tdescriptor\treason\tverdict"
    assert len(lines) == 4
    assert lines[3].endswith("\tout")


def test_json_config_file(run, tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"p": 3, "t_precision": "9"}), encoding="utf-8")
    assert output(run("--config", str(path), "values", "norm", "1"))["norm"] == "3^(-1)"


def test_setup_logging_writes_to_rotating_file(tmp_path):
    parser = configparser.ConfigParser()
    parser.read_dict({"Logging": {"log_file": str(tmp_path / "logs" / "perfectoid.log"), "log_max_size_mb": "1",
                                  "log_backup_count": "1", "level": "WARNING"}})
    logger = setup_logging(parser["Logging"])
    try:
        logging.getLogger('perfectoid.testing').info("workbench started")
        for handler in logger.handlers:
            handler.flush()
        assert "workbench started" in (tmp_path / "logs" / "perfectoid.log").read_text(encoding="utf-8")
    finally:
        for handler in logger.handlers[-2:]:
            logger.removeHandler(handler)
            handler.close()
