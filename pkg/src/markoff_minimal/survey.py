"""Range surveys over m: per-m records, table/series extraction and emission.

A scan splits [lo, hi] into chunks. Each chunk is sieved independently by
the batch enumerators, and the chunks are merged in ascending m. Chunks
share no state, so with ``workers > 1`` they run in a process pool and the
output is byte-identical to a serial run.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Literal

from .counting import count_1bc
from .enumeration import minimal_triples_in_range
from .errors import DomainError, InvariantViolation
from .forms import minimal_triples_in_range_via_forms
from .kernel import is_probable_prime
from .triples import order_class, residual

Method = Literal["auto", "brute", "forms", "both"]

AUTO_BOTH_LIMIT = 10**4
DEFAULT_CHUNK = 5000
WORKERS_ENV = "MARKOFF_WORKERS"

TABLES = ("table1", "table2", "table3", "table4")
SERIES = (
    "order_counts",
    "cumulative_unique",
    "cumulative_unique_prime1mod4",
    "mod3_with_9m4_prime",
    "mod3_distribution",
    "cumulative_all_1bc",
)
SURVEY_COLUMNS = (
    "m", "total", "n1", "n2", "n3", "n_improper",
    "is_sum2sq", "is_9m4_prime", "all_first_is_1", "count_1bc",
)


class CrossCheckError(InvariantViolation):
    """The two enumerators disagree for some m."""

    def __init__(self, m: int, brute: list, forms: list):
        self.m = m
        self.only_brute = sorted(set(brute) - set(forms))
        self.only_forms = sorted(set(forms) - set(brute))
        super().__init__(
            f"m={m}: enumerators disagree; brute-only {self.only_brute}, forms-only {self.only_forms}"
        )


@dataclass(frozen=True)
class SurveyRecord:
    m: int
    total: int
    n1: int
    n2: int
    n3: int
    n_improper: int
    is_sum2sq: bool
    is_9m4_prime: bool
    all_first_is_1: bool
    unique_minimal: bool
    count_1bc_formula: int
    count_1bc_enum: int
    count_identity_ok: bool
    triples: tuple[tuple[int, int, int], ...] = field(default=(), compare=False)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def resolve_method(method: str, hi: int) -> str:
    if method == "auto":
        return "both" if hi <= AUTO_BOTH_LIMIT else "forms"
    if method not in ("brute", "forms", "both"):
        raise DomainError(f"unknown method {method!r}")
    return method


def _chunks(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    return [(s, min(s + size - 1, hi)) for s in range(lo, hi + 1, size)]


def _sum2sq_in_range(lo: int, hi: int) -> set[int]:
    out = set()
    a = 1
    while 2 * a * a <= hi:
        b = a
        while a * a + b * b <= hi:
            n = a * a + b * b
            if n >= lo:
                out.add(n)
            b += 1
        a += 1
    return out


def _chunk_triples(lo: int, hi: int, method: str):
    forms = minimal_triples_in_range_via_forms(lo, hi)
    if method == "forms":
        return forms.triples, forms.s_counts
    brute = minimal_triples_in_range(lo, hi)
    if method == "both":
        for m in range(lo, hi + 1):
            b, f = brute.get(m, []), forms.triples.get(m, [])
            if b != f:
                raise CrossCheckError(m, b, f)
    return brute, forms.s_counts


def _scan_chunk(args: tuple[int, int, str, bool]) -> list[SurveyRecord]:
    lo, hi, method, keep = args
    triples_by_m, s_counts = _chunk_triples(lo, hi, method)
    sum2sq = _sum2sq_in_range(lo, hi)
    records = []
    for m in range(lo, hi + 1):
        trip = triples_by_m.get(m, [])
        orders = Counter()
        t_counts = Counter()
        improper = ones = 0
        for a, b, c in trip:
            if residual(m, a, b, c):
                raise InvariantViolation(f"({a}, {b}, {c}) is not a solution for m={m}")
            orders[order_class(a, b, c - 3 * a * b)] += 1
            improper += a == b
            ones += a == 1
            t_counts[a] += 1
            if b != a:
                t_counts[b] += 1
        total = len(trip)
        s = s_counts.get(m, Counter())
        identity_ok = sum(s.values()) == 2 * total - improper and +s == +t_counts
        records.append(
            SurveyRecord(
                m=m,
                total=total,
                n1=orders[1],
                n2=orders[2],
                n3=orders[3],
                n_improper=improper,
                is_sum2sq=m in sum2sq,
                is_9m4_prime=is_probable_prime(9 * m - 4),
                all_first_is_1=total > 0 and ones == total,
                unique_minimal=total == 1,
                count_1bc_formula=count_1bc(m).count,
                count_1bc_enum=ones,
                count_identity_ok=identity_ok,
                triples=tuple(trip) if keep else (),
            )
        )
    return records


def scan(
    lo: int,
    hi: int,
    method: Method = "auto",
    workers: int | None = None,
    chunk: int = DEFAULT_CHUNK,
    keep_triples: bool = False,
) -> list[SurveyRecord]:
    """One :class:`SurveyRecord` per m in [lo, hi], ascending.

    With method "both" every m is cross-checked between the brute-force
    and quadratic-form enumerators, and a mismatch raises
    :class:`CrossCheckError`.
    """
    if lo < 2 or hi < lo:
        raise DomainError(f"invalid range [{lo}, {hi}]; need 2 <= lo <= hi")
    method = resolve_method(method, hi)
    workers = default_workers() if workers is None else workers
    jobs = [(s, e, method, keep_triples) for s, e in _chunks(lo, hi, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(job) for job in jobs]
    return [r for part in parts for r in part]


def record_violations(r: SurveyRecord) -> list[str]:
    """Which per-record invariants fail (empty when all hold)."""
    bad = []
    if r.total != r.n1 + r.n2 + r.n3:
        bad.append("order classes do not partition the minimal set")
    if r.n2 % 2:
        bad.append("number of order-2 triples is odd")
    if r.n3 % 3:
        bad.append("number of order-3 triples is not a multiple of 3")
    if r.count_1bc_formula != r.count_1bc_enum:
        bad.append(
            f"closed-form (1,b,c) count {r.count_1bc_formula} != enumerated {r.count_1bc_enum}"
        )
    if not r.count_identity_ok:
        bad.append("sum_a |S_a| != 2 #minimal - #improper, or |S_a| != |T_a| for some a")
    return bad


def special_unique_phi_nonzero(
    bound: int, lo: int = 2, method: Method = "forms", chunk: int = 20000
) -> list[tuple[int, tuple[int, int, int]]]:
    """All m <= bound whose only minimal triple has phi != 0.

    Any such triple must have the shape (a, a, 3a^2 + a); a hit of any
    other shape raises :class:`InvariantViolation`.
    """
    if bound < 2:
        raise DomainError(f"bound must be at least 2, got {bound}")
    method = resolve_method(method, bound)
    hits = []
    for s, e in _chunks(lo, bound, chunk):
        triples_by_m, _ = _chunk_triples(s, e, method)
        for m in sorted(triples_by_m):
            trip = triples_by_m[m]
            if len(trip) != 1:
                continue
            a, b, c = trip[0]
            if c == 3 * a * b:
                continue
            if not (a == b and c == 3 * a * a + a):
                raise InvariantViolation(f"m={m}: unique minimal triple {trip[0]} is not (a, a, 3a^2+a)")
            hits.append((m, trip[0]))
    return hits


def verify_prop_9m4(records: Iterable[SurveyRecord]) -> list[int]:
    """m with 9m-4 prime and m not a sum of two non-zero squares where 3 does not divide #O(m)."""
    return [r.m for r in records if r.is_9m4_prime and not r.is_sum2sq and r.total % 3]


# emission ---------------------------------------------------------------


def _check_coverage(records: list[SurveyRecord], lo: int | None, hi: int | None):
    if not records:
        raise DomainError("no records to emit")
    ms = [r.m for r in records]
    lo = ms[0] if lo is None else lo
    hi = ms[-1] if hi is None else hi
    if ms != list(range(ms[0], ms[-1] + 1)) or ms[0] > lo or ms[-1] < hi:
        raise DomainError(f"records do not cover the range [{lo}, {hi}] contiguously")
    return [r for r in records if lo <= r.m <= hi]


def _need_triples(records: list[SurveyRecord]):
    if any(r.total and not r.triples for r in records):
        raise DomainError("table output needs records scanned with keep_triples=True")


def _table_rows(records: list[SurveyRecord], what: str):
    _need_triples(records)
    if what == "table1":
        header = ("m", "order", "a", "b", "c")
        rows = []
        for r in records:
            by_order = sorted(
                (order_class(a, b, c - 3 * a * b), a, b, c) for a, b, c in r.triples
            )
            rows.extend((r.m, k, a, b, c) for k, a, b, c in by_order)
        return header, rows
    if what == "table2":
        header = ("m", "a", "b", "c", "phi")
        sel = [r for r in records if r.unique_minimal]
    elif what == "table3":
        header = ("m", "a", "b", "c", "phi")
        sel = [
            r for r in records
            if r.unique_minimal and r.triples[0][2] != 3 * r.triples[0][0] * r.triples[0][1]
        ]
    else:
        header = ("m", "a", "b", "c", "phi")
        sel = [r for r in records if r.all_first_is_1]
    rows = [(r.m, a, b, c, c - 3 * a * b) for r in sel for a, b, c in r.triples]
    return header, rows


def _series_rows(records: list[SurveyRecord], what: str):
    if what == "order_counts":
        return ("m", "count"), [(r.m, r.total) for r in records]
    if what == "mod3_distribution":
        return ("m", "count_mod3"), [(r.m, r.total % 3) for r in records if r.total]
    if what == "mod3_with_9m4_prime":
        return ("m", "count", "count_mod3"), [
            (r.m, r.total, r.total % 3) for r in records if r.is_9m4_prime and not r.is_sum2sq
        ]
    rows = []
    if what == "cumulative_all_1bc":
        one = many = 0
        for r in records:
            if r.all_first_is_1:
                one += r.total == 1
                many += r.total > 1
            rows.append((r.m, one, many))
        return ("m", "unique", "multiple"), rows
    acc = 0
    for r in records:
        if what == "cumulative_unique":
            acc += r.unique_minimal
        else:
            acc += r.unique_minimal and r.m % 4 == 1 and is_probable_prime(r.m)
        rows.append((r.m, acc))
    return ("m", "F"), rows


def _survey_rows(records: list[SurveyRecord]):
    rows = [
        (r.m, r.total, r.n1, r.n2, r.n3, r.n_improper, int(r.is_sum2sq),
         int(r.is_9m4_prime), int(r.all_first_is_1), r.count_1bc_formula)
        for r in records
    ]
    return SURVEY_COLUMNS, rows


def _record_json(r: SurveyRecord) -> dict:
    doc = asdict(r)
    doc["triples"] = [[str(x) for x in t] for t in r.triples]
    return doc


def emit(
    records: list[SurveyRecord],
    what: str = "survey",
    fmt: Literal["csv", "json"] = "csv",
    lo: int | None = None,
    hi: int | None = None,
) -> bytes:
    """Serialize records as the survey table, one of the tables, or a series."""
    records = _check_coverage(records, lo, hi)
    if what == "survey" and fmt == "json":
        body = json.dumps([_record_json(r) for r in records], separators=(",", ":"))
        return (body + "\n").encode()
    if what == "survey":
        header, rows = _survey_rows(records)
    elif what in TABLES:
        header, rows = _table_rows(records, what)
    elif what in SERIES:
        header, rows = _series_rows(records, what)
    else:
        raise DomainError(f"unknown output {what!r}")
    if fmt == "json":
        docs = [dict(zip(header, row)) for row in rows]
        for doc in docs:
            for key in ("a", "b", "c"):
                if key in doc:
                    doc[key] = str(doc[key])
        body = json.dumps(docs, separators=(",", ":"))
        return (body + "\n").encode()
    if fmt != "csv":
        raise DomainError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().encode()
