from fractions import Fraction

import simplejson as json

from .errors import InputFormatError


class WorkbenchJSONEncoder(json.JSONEncoder):
    def default(self, obj):
        if hasattr(obj, "to_json"):
            return obj.to_json()
        if isinstance(obj, Fraction):
            return {"num": obj.numerator, "den": obj.denominator}
        if isinstance(obj, (set, frozenset)):
            return sorted(self.default(item) if hasattr(item, "to_json") else item for item in obj)
        return super().default(obj)


def dumps(payload, indent=2):
    """Canonical JSON text: sorted keys, fixed indent, no floats introduced."""
    return json.dumps(payload, cls=WorkbenchJSONEncoder, sort_keys=True, indent=indent)


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"Malformed JSON input: {e.msg}", position=e.pos) from e
