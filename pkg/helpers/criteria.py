import logging
from pathlib import Path

import yaml

from utils.errors import InputFormatError

from .checks import Checks

logger = logging.getLogger('perfectoid.helpers.criteria')
logger.setLevel(logging.DEBUG)


class Criteria:
    def __init__(self, checks=None, criteria_file=None):
        from . import config

        self.criteria_file = Path(criteria_file or config.get('Selftest', 'criteria_file', fallback='selftest.yaml'))
        if not self.criteria_file.is_absolute() and not self.criteria_file.exists():
            self.criteria_file = Path(__file__).parent.parent / self.criteria_file
        self.criteria = []

        self.checks = checks or Checks()

    def refresh_criteria(self):
        logger.debug(f"Loading criteria from {self.criteria_file}.")
        try:
            with open(self.criteria_file, 'r') as yaml_file:
                loaded = yaml.safe_load(yaml_file) or {}
        except OSError as e:
            raise InputFormatError(f"Cannot read criteria file {self.criteria_file}: {e}") from e
        except yaml.YAMLError as exc:
            logger.error(exc)
            raise InputFormatError(f"Malformed criteria file {self.criteria_file}") from exc
        entries = loaded.get('criteria', [])
        unknown = [entry.get('id') for entry in entries if entry.get('id') not in Checks.CRITERIA]
        if unknown:
            raise InputFormatError(f"Unknown criteria in {self.criteria_file}: {unknown}")
        self.criteria = entries
        return self.criteria

    def run_all(self):
        self.refresh_criteria()
        results = []
        for entry in self.criteria:
            result = self.checks.run(entry['id'], entry.get('params'))
            level = logging.INFO if result.passed else logging.WARNING
            logger.log(level, f"{result.criterion}: {'pass' if result.passed else 'FAIL'}")
            results.append(result)
        return results

    def summary(self):
        results = self.run_all()
        return {
            "passed": all(result.passed for result in results),
            "criteria": [result.to_json() for result in results],
        }
