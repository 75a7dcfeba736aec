"""CSV readers and writers for matrices, activities, event logs and anomaly windows.

Readers take a path or an open text stream; writers return the CSV text
(``\\n`` line endings, one trailing newline) and optionally write it to a path.
"""

from __future__ import annotations

import calendar
import csv
import io
import math
import os
import re
import time
from decimal import Decimal
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .durations import DurationStats
from .engine import AnomalyKind, AnomalySpec
from .errors import ConfigError, ParseError
from .events import Event, Polarity
from .generator import ActivityRecord, Generator
from .markov import RENORMALIZE_TOL, ROW_SUM_TOL, TransitionMatrix

MATRIX_FIRST_HEADER = "state"
ACTIVITIES_HEADER = ["activity", "type", "sensor", "mean_seconds", "sd_seconds"]
EVENTS_HEADER = ["timestamp", "sensor", "value"]
ANOMALIES_HEADER = ["start", "end", "kind"]
DURATIONS_HEADER = ["state", "period", "mean_seconds", "sd_seconds", "samples"]

_TS_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})Z\Z")
_DATE_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})\Z")
_CLOCK_RE = re.compile(r"T([01]\d|2[0-3]):([0-5]\d):([0-5]\d)Z\Z")

_ROW_SLACK = Decimal("5e-10")

Source = str | os.PathLike | TextIO


def parse_timestamp(text: str) -> int:
    """``YYYY-MM-DDTHH:MM:SSZ`` to integer seconds since the epoch."""
    m = _TS_RE.match(text)
    if m is None:
        raise ValueError(f"malformed timestamp {text!r} (expected YYYY-MM-DDTHH:MM:SSZ)")
    y, mo, d, h, mi, s = (int(g) for g in m.groups())
    if not (1 <= mo <= 12 and 1 <= d <= calendar.monthrange(y, mo)[1] and h < 24 and mi < 60 and s < 60):
        raise ValueError(f"timestamp {text!r} is not a valid date/time")
    ts = calendar.timegm((y, mo, d, h, mi, s, 0, 0, 0))
    if ts < 0:
        raise ValueError(f"timestamp {text!r} precedes 1970-01-01T00:00:00Z")
    return ts


def _timestamp_cached(text: str, days: dict[str, int]) -> int:
    """:func:`parse_timestamp` with the date part looked up in ``days``."""
    day = days.get(text[:10])
    m = _CLOCK_RE.match(text, 10)
    if day is None or m is None:
        ts = parse_timestamp(text)
        days[text[:10]] = ts - ts % 86400
        return ts
    return day + int(m[1]) * 3600 + int(m[2]) * 60 + int(m[3])


def parse_start(text: str) -> int:
    """Like :func:`parse_timestamp` but also accepts a bare date (midnight UTC)."""
    if _DATE_RE.match(text):
        return parse_timestamp(text + "T00:00:00Z")
    return parse_timestamp(text)


def format_timestamp(ts: int) -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(ts))


def _format_number(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def _format_row(row: Sequence[float]) -> list[str]:
    """Probabilities at 9 significant digits, nudged so the decimal row sum
    stays within 5e-10 of 1 (re-parsing then needs no renormalization)."""
    texts = [format(p, ".9g") for p in row]
    values = [Decimal(t) for t in texts]
    deficit = Decimal(1) - sum(values)
    if abs(deficit) <= _ROW_SLACK or any(p < 0 or p > 1 for p in row):
        return texts
    # entries rounded furthest against the deficit go first; exact zeros stay zero
    residual = [Decimal(repr(float(p))) - v for p, v in zip(row, values)]
    order = sorted((j for j, v in enumerate(values) if v > 0), key=lambda j: residual[j], reverse=deficit > 0)
    for j in order:
        if abs(deficit) <= _ROW_SLACK:
            break
        step = Decimal(1).scaleb(values[j].adjusted() - 8)
        step = step if deficit > 0 else -step
        if not 0 < values[j] + step <= 1:
            continue
        values[j] += step
        deficit -= step
        texts[j] = format(float(values[j]), ".9g")
    return texts


def _rows(src: Source):
    """Yield (line_number, row) from a CSV source; closes files it opened."""
    if isinstance(src, (str, os.PathLike)):
        fh = open(src, newline="", encoding="utf-8")
        path_hint = str(src)
    else:
        fh = src
        path_hint = getattr(src, "name", None)
    reader = csv.reader(fh)
    try:
        for row in reader:
            yield reader.line_num, row
    except csv.Error as exc:
        raise ParseError(str(exc), reader.line_num, path=path_hint) from None
    finally:
        if fh is not src:
            fh.close()


def _source_name(src: Source) -> str | None:
    return str(src) if isinstance(src, (str, os.PathLike)) else getattr(src, "name", None)


def _emit(rows: Iterable[Sequence[str]], path: str | os.PathLike | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="")
    return text


def _check_header(line: int, row: list[str], expected: list[str], name: str | None) -> None:
    if [c.strip() for c in row] != expected:
        raise ParseError(f"header mismatch: expected {','.join(expected)}, got {','.join(row)}", line, path=name)


def _float_field(text: str, line: int, column: str, name: str | None) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", line, column, name) from None
    if not math.isfinite(value):
        raise ParseError(f"not a finite number: {text!r}", line, column, name)
    return value


# --- transition matrices -------------------------------------------------


def parse_matrix(src: Source) -> TransitionMatrix:
    """Parse a matrix file; rows off by more than 1e-9 but at most 1e-6 are renormalized.

    Value problems (negative entries, bad sums) are left for ``validate_matrix``.
    """
    name = _source_name(src)
    it = _rows(src)
    try:
        line, header = next(it)
    except StopIteration:
        raise ParseError("empty matrix file", path=name) from None
    if not header or header[0].strip() != MATRIX_FIRST_HEADER:
        raise ParseError(f"header must start with {MATRIX_FIRST_HEADER!r}", line, path=name)
    states = [c.strip() for c in header[1:]]
    rows = []
    for line, row in it:
        if not row:
            continue
        label = row[0].strip()
        k = len(rows)
        if k >= len(states):
            raise ParseError(f"unexpected extra row {label!r}", line, path=name)
        if label != states[k]:
            raise ParseError(f"row label {label!r} does not match header state {states[k]!r}", line, "state", name)
        if len(row) - 1 != len(states):
            raise ParseError(f"{len(row) - 1} values for {len(states)} states", line, path=name)
        rows.append([_float_field(v, line, states[j], name) for j, v in enumerate(row[1:])])
    if len(rows) != len(states):
        raise ParseError(f"{len(rows)} rows for {len(states)} states", path=name)
    fixed = []
    for row in rows:
        total = math.fsum(row)
        fixed.append([p / total for p in row] if ROW_SUM_TOL < abs(total - 1) <= RENORMALIZE_TOL else row)
    return TransitionMatrix(tuple(states), tuple(tuple(r) for r in fixed))


def write_matrix(m: TransitionMatrix, path: str | os.PathLike | None = None) -> str:
    out = [[MATRIX_FIRST_HEADER, *m.states]]
    out += [[s, *_format_row(row)] for s, row in zip(m.states, m.rows)]
    return _emit(out, path)


# --- activities ----------------------------------------------------------


def parse_activities(src: Source) -> list[ActivityRecord]:
    name = _source_name(src)
    it = _rows(src)
    try:
        line, header = next(it)
    except StopIteration:
        raise ParseError("empty activities file", path=name) from None
    _check_header(line, header, ACTIVITIES_HEADER, name)
    records = []
    seen = set()
    for line, row in it:
        if not row:
            continue
        if len(row) != len(ACTIVITIES_HEADER):
            raise ParseError(f"expected {len(ACTIVITIES_HEADER)} fields, got {len(row)}", line, path=name)
        activity, kind, sensor, mean, sd = (c.strip() for c in row)
        if not activity:
            raise ParseError("empty activity label", line, "activity", name)
        if activity in seen:
            raise ParseError(f"duplicate activity {activity!r}", line, "activity", name)
        seen.add(activity)
        try:
            polarity = Polarity.parse(kind)
        except ValueError as exc:
            raise ParseError(str(exc), line, "type", name) from None
        if not sensor:
            raise ParseError("empty sensor name", line, "sensor", name)
        mean_s = _float_field(mean, line, "mean_seconds", name)
        sd_s = _float_field(sd, line, "sd_seconds", name)
        if mean_s < 0 or sd_s < 0:
            raise ParseError("durations must be non-negative", line, "mean_seconds" if mean_s < 0 else "sd_seconds", name)
        records.append(ActivityRecord(activity, polarity, sensor, DurationStats(mean_s, sd_s)))
    return records


def write_activities(records: Sequence[ActivityRecord], path: str | os.PathLike | None = None) -> str:
    out = [ACTIVITIES_HEADER]
    for r in records:
        out.append([r.activity, r.polarity.value, r.sensor, _format_number(r.duration.mean_s), _format_number(r.duration.sd_s)])
    return _emit(out, path)


# --- event logs ----------------------------------------------------------

_VALUES = {"1": Polarity.ON, "0": Polarity.OFF, "ON": Polarity.ON, "OFF": Polarity.OFF}


def parse_events(src: Source) -> list[Event]:
    """Read an event log. Rows must already be in timestamp order."""
    name = _source_name(src)
    it = _rows(src)
    try:
        line, header = next(it)
    except StopIteration:
        raise ParseError("empty event log", path=name) from None
    _check_header(line, header, EVENTS_HEADER, name)
    events: list[Event] = []
    days: dict[str, int] = {}
    last = -1
    for line, row in it:
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line, path=name)
        ts_text, sensor, value = row
        try:
            ts = _timestamp_cached(ts_text.strip(), days)
        except ValueError as exc:
            raise ParseError(str(exc), line, "timestamp", name) from None
        sensor = sensor.strip()
        if not sensor:
            raise ParseError("empty sensor name", line, "sensor", name)
        polarity = _VALUES.get(value.strip().upper())
        if polarity is None:
            raise ParseError(f"value must be 0 or 1, got {value!r}", line, "value", name)
        if ts < last:
            raise ParseError("event log is not sorted by timestamp", line, "timestamp", name)
        last = ts
        events.append(Event(ts, sensor, polarity))
    return events


def write_events(events: Iterable[Event], path: str | os.PathLike | None = None) -> str:
    out = [EVENTS_HEADER]
    day_cache: dict[int, str] = {}
    for e in events:
        # strftime per event dominates long runs; format the date once per day
        day, sec = divmod(e.timestamp, 86400)
        prefix = day_cache.get(day)
        if prefix is None:
            prefix = day_cache[day] = time.strftime("%Y-%m-%dT", time.gmtime(day * 86400))
        h, rem = divmod(sec, 3600)
        out.append([f"{prefix}{h:02d}:{rem // 60:02d}:{rem % 60:02d}Z", e.sensor, "1" if e.polarity is Polarity.ON else "0"])
    return _emit(out, path)


# --- anomaly windows -----------------------------------------------------


def parse_anomalies(src: Source) -> list[AnomalySpec]:
    name = _source_name(src)
    it = _rows(src)
    try:
        line, header = next(it)
    except StopIteration:
        raise ParseError("empty anomalies file", path=name) from None
    _check_header(line, header, ANOMALIES_HEADER, name)
    specs = []
    for line, row in it:
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line, path=name)
        fields = {}
        for column, text in zip(("start", "end"), row[:2]):
            try:
                fields[column] = parse_timestamp(text.strip())
            except ValueError as exc:
                raise ParseError(str(exc), line, column, name) from None
        try:
            kind = AnomalyKind(row[2].strip().lower())
        except ValueError:
            raise ParseError(f"unknown anomaly kind {row[2]!r}", line, "kind", name) from None
        try:
            specs.append(AnomalySpec(fields["start"], fields["end"], kind))
        except ConfigError as exc:
            raise ParseError(str(exc), line, "end", name) from None
    return specs


def write_anomalies(specs: Sequence[AnomalySpec], path: str | os.PathLike | None = None) -> str:
    out = [ANOMALIES_HEADER]
    out += [[format_timestamp(a.window_start), format_timestamp(a.window_end), a.kind.value] for a in specs]
    return _emit(out, path)


# --- learned duration table ----------------------------------------------


def write_durations(gen: Generator, path: str | os.PathLike | None = None) -> str:
    out = [DURATIONS_HEADER]
    for s in gen.states:
        for p, d in enumerate(gen.specs[s].durations):
            out.append([s, str(p), _format_number(d.mean_s), _format_number(d.sd_s), str(d.sample_count)])
    return _emit(out, path)


def parse_durations(src: Source) -> dict[tuple[str, int], DurationStats]:
    name = _source_name(src)
    it = _rows(src)
    try:
        line, header = next(it)
    except StopIteration:
        raise ParseError("empty durations file", path=name) from None
    _check_header(line, header, DURATIONS_HEADER, name)
    table = {}
    for line, row in it:
        if not row:
            continue
        if len(row) != 5:
            raise ParseError(f"expected 5 fields, got {len(row)}", line, path=name)
        try:
            period = int(row[1])
            samples = int(row[4])
        except ValueError:
            raise ParseError("period and samples must be integers", line, path=name) from None
        mean = _float_field(row[2], line, "mean_seconds", name)
        sd = _float_field(row[3], line, "sd_seconds", name)
        table[(row[0], period)] = DurationStats(mean, sd, samples)
    return table
