"""Search harness: bucket a knot table by the classical invariant, then look
for pairs the quotient-ring invariant separates anyway.

Only entries with identical classical f-invariants are candidates, so the
table is first partitioned by the canonical f text.  Inside each bucket all
pairs are compared on their writhe-normalized quotient invariant; a pair
that differs is a *witness candidate* and is recomputed with the second
evaluation engine before being reported, so an engine bug cannot masquerade
as a mathematical finding.  The report states findings only; it never claims
anything about pairs outside the table.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .bracket3 import CONVENTION, CURL_MINUS, CURL_PLUS, ambient3, raw_bracket
from .classical import f_invariant, format_laurent
from .diagram import BraidWord, Diagram, DiagramError, closure, parse_braid, parse_pd, writhe
from .multipoly import format_poly
from .quotient import normal_form


@dataclass(frozen=True)
class TableEntry:
    name: str
    presentation: str
    crossings: int
    word: BraidWord | None  # None for PD-only entries
    diagram: Diagram


@dataclass(frozen=True)
class InvariantRecord:
    name: str
    presentation: str
    writhe: int
    f_text: str
    ambient3_text: str
    engine: str
    fingerprint: str

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "presentation": self.presentation,
            "writhe": self.writhe,
            "f": self.f_text,
            "ambient3": self.ambient3_text,
            "engine": self.engine,
            "fingerprint": self.fingerprint,
        }


@dataclass
class LoadResult:
    entries: list[TableEntry]
    errors: list[tuple[int, str]] = field(default_factory=list)


def parse_presentation(text: str) -> tuple[BraidWord | None, Diagram]:
    """A braid word or a PD code; braids also get their closure diagram."""
    s = text.strip()
    if s.startswith("braid:"):
        word = parse_braid(s)
        return word, closure(word)
    if s.startswith("PD["):
        return None, parse_pd(s)
    raise DiagramError(f"presentation must start with 'braid:' or 'PD[', got {s[:24]!r}")


def load_table(path: str | Path) -> LoadResult:
    """Read ``name<TAB>presentation`` lines; blank lines and # comments skip.

    Every malformed line lands in the error list with its line number, and
    duplicate names are rejected; parsing continues either way.
    """
    result = LoadResult(entries=[])
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            if "\t" not in s:
                result.errors.append((lineno, "expected 'name<TAB>presentation'"))
                continue
            name, presentation = s.split("\t", 1)
            name = name.strip()
            if name in seen:
                result.errors.append((lineno, f"duplicate name {name!r}"))
                continue
            try:
                word, diagram = parse_presentation(presentation)
            except (DiagramError, ValueError) as exc:
                result.errors.append((lineno, str(exc)))
                continue
            seen.add(name)
            result.entries.append(
                TableEntry(name, presentation.strip(), diagram.n, word, diagram)
            )
    return result


def bundled_table_path() -> Path:
    return Path(__file__).parent / "data" / "knots.tsv"


# -- invariant computation with caching ----------------------------------------

def fingerprint() -> str:
    return hashlib.sha256(CONVENTION.encode()).hexdigest()[:16]


def compute_record(entry: TableEntry, engine: str = "naive") -> InvariantRecord:
    """Both invariants of one entry, via the named engine for the raw sum."""
    d = entry.diagram
    w = writhe(d)
    f_text = format_laurent(f_invariant(d))
    if engine == "naive" or entry.word is None:
        amb = ambient3(d)
        used = "naive"
    else:
        raw = raw_bracket(entry.word, engine)
        factor = CURL_MINUS if w > 0 else CURL_PLUS
        amb = normal_form(factor ** abs(w) * raw)
        used = engine
    return InvariantRecord(
        entry.name, entry.presentation, w, f_text, format_poly(amb), used, fingerprint()
    )


class RecordCache:
    """Line-oriented JSON cache keyed by (name, presentation, fingerprint).

    Corrupt lines are skipped with a warning and never fatal; lookups hit
    only on exact key matches, so convention changes invalidate everything.
    """

    def __init__(self, path: str | Path | None):
        self.path = Path(path) if path else None
        self.records: dict[tuple[str, str, str], InvariantRecord] = {}
        self.warnings: list[str] = []
        if self.path and self.path.exists():
            self._load()

    def _load(self) -> None:
        assert self.path is not None
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    rec = InvariantRecord(
                        obj["name"], obj["presentation"], int(obj["writhe"]),
                        obj["f"], obj["ambient3"], obj["engine"], obj["fingerprint"],
                    )
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    self.warnings.append(f"cache line {lineno} skipped: {exc}")
                    continue
                self.records[(rec.name, rec.presentation, rec.fingerprint)] = rec

    def lookup(self, entry: TableEntry) -> InvariantRecord | None:
        return self.records.get((entry.name, entry.presentation, fingerprint()))

    def store(self, rec: InvariantRecord) -> None:
        key = (rec.name, rec.presentation, rec.fingerprint)
        if key in self.records:
            return
        self.records[key] = rec
        if self.path:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")


def _thread_count() -> int:
    raw = os.environ.get("QBRACKET_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def compute_records(
    entries: list[TableEntry],
    engine: str = "naive",
    cache: RecordCache | None = None,
) -> list[InvariantRecord]:
    """Records for all entries, cache-first, sorted by name.

    Parallel fan-out honors QBRACKET_THREADS; results are keyed per entry so
    the output is schedule-independent, and cache writes stay in one thread.
    """
    entries = sorted(entries, key=lambda e: e.name)
    records: dict[str, InvariantRecord] = {}
    missing: list[TableEntry] = []
    for entry in entries:
        hit = cache.lookup(entry) if cache else None
        if hit:
            records[entry.name] = hit
        else:
            missing.append(entry)
    threads = _thread_count()
    if threads > 1 and len(missing) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            fresh = list(pool.map(lambda e: compute_record(e, engine), missing))
    else:
        fresh = [compute_record(e, engine) for e in missing]
    for rec in fresh:
        records[rec.name] = rec
        if cache:
            cache.store(rec)
    return [records[e.name] for e in entries]


# -- bucketing and the scan ------------------------------------------------------

def bucket_by_classical(records: list[InvariantRecord]) -> dict[str, list[InvariantRecord]]:
    """Partition by exact canonical f text (the keys are auditable, not hashed)."""
    buckets: dict[str, list[InvariantRecord]] = {}
    for rec in sorted(records, key=lambda r: r.name):
        buckets.setdefault(rec.f_text, []).append(rec)
    return dict(sorted(buckets.items()))


def bucket_digest(f_text: str) -> str:
    return hashlib.sha256(f_text.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class PairVerdict:
    name1: str
    name2: str
    digest: str
    verdict: str            # SAME | DIFFERENT | ENGINE_MISMATCH
    engines: str            # engines that contributed, comma separated


@dataclass
class ScanReport:
    fingerprint: str
    entry_count: int
    bucket_sizes: dict[str, int]
    pairs: list[PairVerdict]
    witnesses: list[PairVerdict]
    cache_warnings: list[str] = field(default_factory=list)
    load_errors: list[tuple[int, str]] = field(default_factory=list)


def conjecture_scan(
    entries: list[TableEntry],
    engine: str = "naive",
    cache: RecordCache | None = None,
) -> ScanReport:
    """Compare the quotient invariant inside every classical-equal bucket.

    SAME pairs are ordinary; a DIFFERENT pair is recomputed for both members
    with the other engine (where a braid word is available) and only kept as
    a witness candidate when the difference reproduces.  The scan is fully
    deterministic for a fixed table.
    """
    records = compute_records(entries, engine, cache)
    by_name = {e.name: e for e in entries}
    buckets = bucket_by_classical(records)
    pairs: list[PairVerdict] = []
    witnesses: list[PairVerdict] = []
    for f_text, group in buckets.items():
        if len(group) < 2:
            continue
        digest = bucket_digest(f_text)
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                r1, r2 = group[i], group[j]
                if r1.ambient3_text == r2.ambient3_text:
                    pairs.append(PairVerdict(r1.name, r2.name, digest, "SAME", f"{r1.engine},{r2.engine}"))
                    continue
                # witness candidate: double-check with the alternate engine
                alternate = "tl" if engine == "naive" else "naive"
                redo1 = compute_record(by_name[r1.name], alternate)
                redo2 = compute_record(by_name[r2.name], alternate)
                engines = ",".join(sorted({r1.engine, r2.engine, redo1.engine, redo2.engine}))
                if redo1.ambient3_text != r1.ambient3_text or redo2.ambient3_text != r2.ambient3_text:
                    verdict = PairVerdict(r1.name, r2.name, digest, "ENGINE_MISMATCH", engines)
                elif redo1.ambient3_text != redo2.ambient3_text:
                    verdict = PairVerdict(r1.name, r2.name, digest, "DIFFERENT", engines)
                    witnesses.append(verdict)
                else:
                    verdict = PairVerdict(r1.name, r2.name, digest, "ENGINE_MISMATCH", engines)
                pairs.append(verdict)
    pairs.sort(key=lambda p: (p.name1, p.name2))
    return ScanReport(
        fingerprint=fingerprint(),
        entry_count=len(entries),
        bucket_sizes={bucket_digest(k): len(v) for k, v in buckets.items() if len(v) > 1},
        pairs=pairs,
        witnesses=sorted(witnesses, key=lambda p: (p.name1, p.name2)),
        cache_warnings=list(cache.warnings) if cache else [],
    )
