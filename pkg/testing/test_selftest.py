import pytest
import simplejson as json
from click.testing import CliRunner

from handlers import cli, to_tsv
from helpers import Checks, Criteria
from utils import config
from utils.errors import InputFormatError
from utils.settings import load_config, set_settings
from witt import build_witt_polys, clear_memory_cache


def write_criteria(tmp_path, text):
    path = tmp_path / "criteria.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_refresh_criteria(tmp_path):
    path = write_criteria(tmp_path, "criteria:\n  - id: ideals\n  - id: spectral-radical\n    params:\n      count: 5\n")
    criteria = Criteria(criteria_file=path)
    entries = criteria.refresh_criteria()
    assert [entry["id"] for entry in entries] == ["ideals", "spectral-radical"]
    assert entries[1]["params"] == {"count": 5}


def test_unknown_criterion_is_rejected(tmp_path):
    path = write_criteria(tmp_path, "criteria:\n  - id: hodge-tate\n")
    with pytest.raises(InputFormatError):
        Criteria(criteria_file=path).refresh_criteria()


def test_malformed_criteria_file(tmp_path):
    path = write_criteria(tmp_path, "criteria: [\n")
    with pytest.raises(InputFormatError):
        Criteria(criteria_file=path).refresh_criteria()


def test_default_criteria_file_lists_every_check():
    entries = Criteria().refresh_criteria()
    assert [entry["id"] for entry in entries] == list(Checks.CRITERIA)


@pytest.mark.parametrize("criterion, params", [
    ("ideals", None),
    ("tilt-addition", {"count": 6}),
    ("approximation", {"count": 5}),
    ("spectral-radical", {"count": 10}),
    ("spectral-engine", {"count": 10, "max_n": 4}),
    ("zariski", None),
    ("spectra", {"count": 4}),
])
def test_checks_pass(criterion, params):
    result = Checks().run(criterion, params)
    assert result.passed, result.details
    assert result.to_json()["criterion"] == criterion


def test_summary(tmp_path):
    path = write_criteria(tmp_path, "criteria:\n  - id: ideals\n  - id: determinism\n    params:\n      runs: 2\n")
    summary = Criteria(criteria_file=path).summary()
    assert summary["passed"]
    assert [row["criterion"] for row in summary["criteria"]] == ["ideals", "determinism"]
    assert to_tsv(summary).splitlines()[0] == "criterion\tdetails\tname\tpassed"


def test_tampered_cache_fails_the_witt_criterion(tmp_path, monkeypatch):
    clear_memory_cache()
    payload = build_witt_polys(2, 2).to_json()
    payload["polys"]["prod"][1][0][1] += 2
    (tmp_path / "witt_p2_n2.json").write_text(json.dumps(payload), encoding="utf-8")
    clear_memory_cache()
    monkeypatch.setenv("PERFECTOID_WITT_CACHE", str(tmp_path))
    set_settings(load_config(config))
    result = Checks().run("witt", {"primes": [2], "pairs": 2})
    clear_memory_cache()
    assert not result.passed
    assert result.details["error"]["code"] == "witt-cache-corrupt"


def test_selftest_command(tmp_path):
    path = write_criteria(tmp_path, "criteria:\n  - id: ideals\n")
    result = CliRunner(mix_stderr=False).invoke(cli, ["selftest", "--criteria", str(path)])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["passed"] is True
