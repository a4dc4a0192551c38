# python imports
import csv
import enum
import io
import json
import math
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field


# ---------------------------------------------------------------------------- #
#                                   RunReport                                  #
# ---------------------------------------------------------------------------- #


@dataclass
class RunReport:
    """
    Record of one command invocation.

    Attributes:
        command (str): Command echo, e.g. ``figure fig1``.
        params (dict): Validated parameters the run used.
        results (list): One dict per emitted point; each carries its
            ``provenance`` (closed-form, oracle or smeared).
        duration (float): Wall-clock seconds.
        summary (dict): Pass/fail counts for ``verify``, point counts otherwise.
    """
    command: str
    params: dict
    results: list = field(default_factory=list)
    duration: float = 0.0
    summary: dict = field(default_factory=dict)

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.duration = time.perf_counter() - start

    def as_dict(self):
        return {
            'params': jsonable(self.params),
            'results': jsonable(self.results),
            'report': {
                'command': self.command,
                'duration': self.duration,
                'summary': jsonable(self.summary),
            },
        }


def jsonable(value):
    # non-finite floats have no JSON spelling; they only appear as sentinels
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if hasattr(value, '__dataclass_fields__'):
        return jsonable(asdict(value))
    if isinstance(value, enum.Enum):
        return value.value
    return value


# ---------------------------------------------------------------------------- #
#                                    writers                                   #
# ---------------------------------------------------------------------------- #


def format_cell(value):
    """CSV spelling of one value: empty for None, ``repr`` for floats."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        if not math.isfinite(value):
            return ''
        return repr(value)
    return str(value)


def render_csv(columns, records):
    """
    Header plus one line per record, ``\\n`` line endings.

    ``repr`` of a float is locale independent and round-trips, so repeated
    runs give byte-identical files.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for record in records:
        writer.writerow([format_cell(record.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(report):
    return json.dumps(report.as_dict(), indent=2) + '\n'


def write_output(text, path=None, stream=None):
    """Write ``text`` to ``path`` (UTF-8) or to ``stream``."""
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    else:
        stream.write(text)
