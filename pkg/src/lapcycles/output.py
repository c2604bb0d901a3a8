"""CSV/JSON writers for sweep summaries, raw trial records and Stirling tables."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence, TextIO

from .analytic import StirlingTable
from .experiment import SweepSummary, TrialRecord

SUMMARY_FIELDS = (
    "n",
    "lambda",
    "trials",
    "mean_cycles",
    "sem_cycles",
    "p2_presence",
    "sem_p2",
    "mean_two_cycles",
    "p_n_cycle",
    "sem_p_n_cycle",
    "mean_length",
    "sem_length",
    "ratio_p2_over_nc",
)
RECORD_FIELDS = (
    "n",
    "lambda",
    "trial_index",
    "n_cycles",
    "two_cycle_count",
    "is_n_cycle",
    "max_even_cycle_length",
    "tour_length",
)


def fmt_lambda(lam: float) -> str:
    s = f"{lam:.6f}"
    return "0.000000" if s == "-0.000000" else s


def fmt_stat(x: float) -> str:
    return f"{x:.9g}"


def summary_row(s: SweepSummary) -> dict[str, str]:
    row = {"n": str(s.n), "lambda": fmt_lambda(s.lam), "trials": str(s.trials)}
    for name in SUMMARY_FIELDS[3:]:
        row[name] = fmt_stat(getattr(s, name))
    return row


def _lf_writer(fh: TextIO) -> csv.DictWriter:
    return csv.writer(fh, lineterminator="\n")


def summaries_to_csv(summaries: Sequence[SweepSummary]) -> str:
    buf = io.StringIO()
    w = _lf_writer(buf)
    w.writerow(SUMMARY_FIELDS)
    for s in summaries:
        row = summary_row(s)
        w.writerow([row[k] for k in SUMMARY_FIELDS])
    return buf.getvalue()


def summaries_to_json(summaries: Sequence[SweepSummary]) -> str:
    out = []
    for s in summaries:
        row = summary_row(s)
        obj = {"n": s.n, "lambda": float(row["lambda"]), "trials": s.trials}
        obj.update({k: float(row[k]) for k in SUMMARY_FIELDS[3:]})
        out.append(obj)
    return json.dumps(out, indent=2) + "\n"


def format_summaries(summaries: Sequence[SweepSummary], fmt: str = "csv") -> str:
    if fmt == "csv":
        return summaries_to_csv(summaries)
    if fmt == "json":
        return summaries_to_json(summaries)
    raise ValueError(f"unknown format {fmt!r}")


class RecordCsvSink:
    """Callable sink that streams trial records as CSV rows."""

    def __init__(self, fh: TextIO):
        self._w = _lf_writer(fh)
        self._w.writerow(RECORD_FIELDS)

    def __call__(self, r: TrialRecord) -> None:
        self._w.writerow(
            [
                r.n,
                fmt_lambda(r.lam),
                r.trial_index,
                r.n_cycles,
                r.two_cycle_count,
                int(r.is_n_cycle),
                r.max_even_cycle_length,
                repr(r.tour_length),
            ]
        )


def stirling_rows(tables: Iterable[StirlingTable]) -> Iterable[tuple[int, int, int, int]]:
    for t in tables:
        for n, k, v in t.iter_entries():
            yield t.r, n, k, v


def write_stirling_csv(tables: Iterable[StirlingTable], fh: TextIO) -> None:
    """Columns r, n, k, d_r(n,k); counts as exact decimal integers."""
    w = _lf_writer(fh)
    w.writerow(("r", "n", "k", "d_r(n,k)"))
    for row in stirling_rows(tables):
        w.writerow(row)
