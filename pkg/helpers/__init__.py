import configparser
import logging
from pathlib import Path

from helpers.checks import CheckResult, Checks
from helpers.criteria import Criteria
from helpers.parsing import (parse_coefficient, parse_exponent, parse_gauss, parse_list, parse_norm, parse_series,
                             split_top)
from helpers.samples import Samples

logger = logging.getLogger('perfectoid.helpers')
logger.setLevel(logging.DEBUG)

config_path = Path(__file__).parent.parent / 'config.ini'

config = configparser.ConfigParser()
config.read(config_path)
