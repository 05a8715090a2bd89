"""
Rendering of command results as text, JSON or CSV.
"""
import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from zimin_lab.error_utils import success_payload

FORMATS = ('text', 'json', 'csv')


@dataclass
class Outcome:
    """
    What a subcommand produced: JSON-ready data, the text lines printed in
    text mode and, when the result is tabular, CSV header and rows.
    """
    data: object
    lines: list = field(default_factory=list)
    header: list = None
    rows: list = None
    action: str = None
    summary: dict = field(default_factory=dict)
    exit_code: int = 0


def _json_default(value):
    if isinstance(value, Fraction):
        return {'num': value.numerator, 'den': value.denominator, 'float': float(value)}
    if hasattr(value, 'item'):
        return value.item()
    return str(value)


def render(outcome, fmt):
    if fmt == 'json':
        return json.dumps(success_payload(outcome.data), indent=2, default=_json_default)
    if fmt == 'csv':
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator='\n')
        if outcome.rows is not None:
            if outcome.header:
                writer.writerow(outcome.header)
            writer.writerows(outcome.rows)
        elif isinstance(outcome.data, dict):
            writer.writerow(['key', 'value'])
            for key, value in outcome.data.items():
                writer.writerow([key, json.dumps(value, default=_json_default) if isinstance(value, (dict, list)) else value])
        return stream.getvalue().rstrip('\n')
    return '\n'.join(str(line) for line in outcome.lines)


def render_error(payload, fmt):
    if fmt == 'json':
        return json.dumps(payload, indent=2, default=_json_default)
    error = payload['error']
    text = f"error [{error['code']}]: {error['message']}"
    if error.get('field'):
        text += f" (field: {error['field']})"
    return text


def write_out(text, path):
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text)
        if text and not text.endswith('\n'):
            handle.write('\n')
