import configparser
import logging
from logging.handlers import RotatingFileHandler
import sys
from pathlib import Path

from handlers import cli

config = configparser.ConfigParser()
config.read(Path(__file__).parent / "config.ini")


def setup_logging(section):
    """Console on stderr at the configured level, everything to the rotating file."""
    log_path = Path(section.get("log_file"))
    log_path.parent.mkdir(parents=True, exist_ok=True)

    logger = logging.getLogger('perfectoid')
    logger.setLevel(logging.DEBUG)

    formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(section.get("level", fallback="INFO"))
    console.setFormatter(formatter)

    rotating = RotatingFileHandler(
        log_path,
        maxBytes=section.getint("log_max_size_mb") * 1024 * 1024,
        backupCount=section.getint("log_backup_count"),
        encoding='utf-8'
    )
    rotating.setFormatter(formatter)

    logger.addHandler(console)
    logger.addHandler(rotating)
    return logger


if __name__ == '__main__':
    sys.stdout.reconfigure(encoding='utf-8')
    setup_logging(config["Logging"])
    cli(prog_name="perfectoid")
