"""Ensemble generation and the CSV record format."""
from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .measures import MEASURE_FIELDS, MEASURE_FUNCTIONS, MeasureSet, measure_all
from .xstates import FamilyKind, XState, XStateError, make_family, sample_random

STATE_COLUMNS = (
    "rho11", "rho22", "rho33", "rho44",
    "re_rho14", "im_rho14", "re_rho23", "im_rho23",
)
HEADER = STATE_COLUMNS + MEASURE_FIELDS

DESK_SCALE_N = 10_000
FULL_SCALE_N = 100_000
SPOT_CHECK_EVERY = 100
SPOT_CHECK_TOL = 1e-12


class RecordParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class RecordValidationError(ValueError):
    def __init__(self, message: str, row: int):
        super().__init__(f"row {row}: {message}")
        self.row = row


@dataclass(frozen=True)
class EnsembleRecord:
    state: XState
    measures: MeasureSet

    @classmethod
    def from_state(cls, state: XState) -> "EnsembleRecord":
        return cls(state, measure_all(state))

    def values(self) -> tuple[float, ...]:
        s = self.state
        return (
            s.r11, s.r22, s.r33, s.r44,
            s.r14.real, s.r14.imag, s.r23.real, s.r23.imag,
        ) + self.measures.as_tuple()

    def __getitem__(self, column: str) -> float:
        if column in MEASURE_FIELDS:
            return getattr(self.measures, column)
        return self.values()[HEADER.index(column)]


def _measure_chunk(args: tuple[int, int, int, bool]) -> list[EnsembleRecord]:
    seed, start, stop, phases = args
    return [EnsembleRecord.from_state(sample_random(seed, i, phases)) for i in range(start, stop)]


def run_ensemble(seed: int, n: int = DESK_SCALE_N, phases: bool = False,
                 workers: int = 1) -> list[EnsembleRecord]:
    """Sample and measure ``n`` random X states.

    Record ``i`` is built from ``sample_random(seed, i)``, so the result is
    identical for every worker count.
    """
    if n < 1:
        raise ValueError("ensemble size must be at least 1")
    if workers <= 1:
        return _measure_chunk((seed, 0, n, phases))
    step = math.ceil(n / (4 * workers))
    chunks = [(seed, a, min(a + step, n), phases) for a in range(0, n, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [rec for part in pool.map(_measure_chunk, chunks) for rec in part]


def family_records(kind: FamilyKind | str, steps: int) -> list[EnsembleRecord]:
    """Records for ``steps`` evenly spaced epsilon values on ``[0, 1]``."""
    if steps < 2:
        raise ValueError("need at least two grid points")
    return [EnsembleRecord.from_state(make_family(kind, k / (steps - 1))) for k in range(steps)]


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(records: Iterable[EnsembleRecord], path) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        fh.write(dumps_csv(records))


def dumps_csv(records: Iterable[EnsembleRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for rec in records:
        w.writerow([_fmt(v) for v in rec.values()])
    return buf.getvalue()


def read_csv(path, spot_check: bool = True) -> list[EnsembleRecord]:
    with open(path, newline="", encoding="ascii") as fh:
        return loads_csv(fh.read(), spot_check=spot_check)


def loads_csv(text: str, spot_check: bool = True) -> list[EnsembleRecord]:
    """Parse records, validating every state.

    For the first row of every block of 100 one measure, chosen by a fixed
    RNG, is recomputed from the state and compared with the stored value.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise RecordParseError("empty file", 1) from None
    if tuple(header) != HEADER:
        for k, expected in enumerate(HEADER):
            got = header[k] if k < len(header) else None
            if got != expected:
                raise RecordParseError(
                    f"header column {k + 1} is {got!r}, expected {expected!r}", 1)
        raise RecordParseError(f"unexpected extra header column {header[len(HEADER)]!r}", 1)

    rng = random.Random(0)
    records = []
    for row_idx, row in enumerate(reader):
        line = row_idx + 2
        if len(row) != len(HEADER):
            raise RecordParseError(f"expected {len(HEADER)} fields, got {len(row)}", line)
        try:
            v = [float(x) for x in row]
        except ValueError as exc:
            raise RecordParseError(str(exc), line) from None
        try:
            state = XState(v[0], v[1], v[2], v[3], complex(v[4], v[5]), complex(v[6], v[7]))
        except XStateError as exc:
            raise RecordValidationError(str(exc), row_idx) from None
        rec = EnsembleRecord(state, MeasureSet(*v[8:]))
        if spot_check and row_idx % SPOT_CHECK_EVERY == 0:
            name = rng.choice(MEASURE_FIELDS)
            fresh = MEASURE_FUNCTIONS[name](state)
            stored = getattr(rec.measures, name)
            if not abs(fresh - stored) <= SPOT_CHECK_TOL:
                raise RecordValidationError(
                    f"stored {name}={stored!r} but recomputed {fresh!r}", row_idx)
        records.append(rec)
    return records


def column(records: Sequence[EnsembleRecord], name: str) -> list[float]:
    if name not in HEADER:
        raise KeyError(f"unknown column {name!r}; expected one of {', '.join(HEADER)}")
    return [rec[name] for rec in records]
