import logging

from utils import dumps

logger = logging.getLogger('perfectoid.handlers.reporthandler')
logger.setLevel(logging.DEBUG)

FORMATS = ("json", "tsv")


def _cell(value):
    if isinstance(value, str):
        return value
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return dumps(value, indent=None)


def _table_rows(payload):
    """The list of row dicts a payload should be tabulated from, if it has one."""
    if isinstance(payload, list) and all(isinstance(row, dict) for row in payload):
        return payload
    if isinstance(payload, dict):
        for key in ("rows", "criteria", "samples"):
            rows = payload.get(key)
            if isinstance(rows, list) and rows and all(isinstance(row, dict) for row in rows):
                return rows
    return None


def to_tsv(payload):
    if hasattr(payload, "to_json"):
        payload = payload.to_json()
    rows = _table_rows(payload)
    if rows is None:
        if not isinstance(payload, dict):
            return _cell(payload) + "\n"
        lines = ["key\tvalue"] + [f"{key}\t{_cell(payload[key])}" for key in sorted(payload)]
        return "\n".join(lines) + "\n"
    header = sorted({key for row in rows for key in row})
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(_cell(row.get(key)) for key in header))
    return "\n".join(lines) + "\n"


def emit_report(payload, fmt="json"):
    """Render a report with a stable field order; norms arrive already formatted as exact strings."""
    if fmt not in FORMATS:
        raise ValueError(f"Unknown output format {fmt!r}")
    if fmt == "tsv":
        return to_tsv(payload)
    return dumps(payload) + "\n"
