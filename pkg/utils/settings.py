import configparser
import logging
import os
from pathlib import Path
from typing import Literal, Optional

import simplejson as json
from pydantic import BaseModel, ValidationError, field_validator, model_validator

from .errors import InputFormatError, UnsupportedConfigurationError

logger = logging.getLogger('perfectoid.utils.settings')
logger.setLevel(logging.DEBUG)

SUPPORTED_PRIMES = (2, 3, 5)
CACHE_ENV_VAR = 'PERFECTOID_WITT_CACHE'

_INI_SECTIONS = ("Workbench", "Caps")


class GlobalConfig(BaseModel, frozen=True):
    p: int = 2
    witt_length: int = 3
    t_precision: str = "8"
    max_spectral_n: int = 64
    term_cap: int = 4096
    witt_cache_dir: str = ".witt_cache"
    output_format: Literal["json", "tsv"] = "json"
    seed: int = 20240601

    max_numerator_bits: int = 4096
    witt_max_degree: int = 125
    witt_max_poly_terms: int = 200000
    zar_search_depth: int = 4
    zar_term_max: int = 32
    tilt_m_max: int = 4

    @field_validator("p")
    @classmethod
    def _supported_prime(cls, value):
        if value not in SUPPORTED_PRIMES:
            raise ValueError(f"p={value} is not supported (supported: {', '.join(map(str, SUPPORTED_PRIMES))})")
        return value

    @field_validator("witt_length")
    @classmethod
    def _supported_length(cls, value):
        if not 1 <= value <= 4:
            raise ValueError(f"witt_length={value} is outside 1..4")
        return value

    @field_validator("max_spectral_n", "term_cap", "max_numerator_bits", "witt_max_degree",
                     "witt_max_poly_terms", "zar_search_depth", "zar_term_max", "tilt_m_max")
    @classmethod
    def _positive(cls, value):
        if value <= 0:
            raise ValueError("caps must be positive")
        return value

    @model_validator(mode="after")
    def _precision_parses(self):
        num, _, den = self.t_precision.partition("/")
        try:
            numerator = int(num)
            denominator = int(den) if den else 1
        except ValueError:
            raise ValueError(f"t_precision={self.t_precision!r} is not a rational number")
        if numerator <= 0 or denominator <= 0:
            raise ValueError("t_precision must be positive")
        while denominator % self.p == 0:
            denominator //= self.p
        if denominator != 1:
            raise ValueError(f"t_precision={self.t_precision!r} is not in Z[1/{self.p}]")
        return self

    def t_prec(self):
        """The t-adic precision N as an exponent of the configured prime."""
        from values import PExponent

        return PExponent.parse(self.t_precision, self.p)

    @classmethod
    def build(cls, **fields):
        try:
            return cls(**fields)
        except ValidationError as e:
            problems = "; ".join(err["msg"].removeprefix("Value error, ") for err in e.errors())
            raise UnsupportedConfigurationError(f"Unsupported configuration: {problems}") from e


def _ini_fields(parser):
    fields = {}
    for section in _INI_SECTIONS:
        if parser.has_section(section):
            fields.update(parser[section].items())
    return fields


def read_config_file(path):
    path = Path(path)
    if path.suffix == ".json":
        try:
            return dict(json.loads(path.read_text(encoding="utf-8")))
        except json.JSONDecodeError as e:
            raise InputFormatError(f"Malformed JSON config {path}: {e.msg}") from e
    parser = configparser.ConfigParser()
    parser.read(path, encoding="utf-8")
    return _ini_fields(parser)


def load_config(base_parser=None, config_file=None, **overrides):
    fields = {}
    if base_parser is not None:
        fields.update(_ini_fields(base_parser))
    if config_file is not None:
        logger.debug(f"Reading configuration override file: {config_file}")
        fields.update(read_config_file(config_file))
    if os.getenv(CACHE_ENV_VAR):
        fields["witt_cache_dir"] = os.getenv(CACHE_ENV_VAR)
    fields.update({key: value for key, value in overrides.items() if value is not None})
    if "t_precision" in fields:
        fields["t_precision"] = str(fields["t_precision"])
    return GlobalConfig.build(**fields)


_active = None


def get_settings():
    global _active
    if _active is None:
        from . import config

        _active = load_config(config)
    return _active


def set_settings(settings):
    global _active
    logger.debug(f"Active settings: {settings}")
    _active = settings
    return settings
