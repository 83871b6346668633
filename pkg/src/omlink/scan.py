"""Database scan: every acyclic reorientation of every orientation class is
checked for a three-component link certificate.

The scan is deterministic: classes are cut into fixed-size blocks, blocks may
run in worker processes, and results are merged strictly in index order.
"""
from __future__ import annotations

import hashlib
import json
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .core import (Chirotope, FormatError, circuits_from_chirotope, parse_chirotope,
                   validate_circuit_axioms)
from .linkage import TripleLinkCertificate, find_triple_link
from .reorient import ReorientationSet, cyclic_reorientation_sets, enumerate_reorientation_sets

REPORT_FORMAT = "omlink-report/1"
CHECKPOINT_FORMAT = "omlink-checkpoint/1"
ANALYSIS_FORMAT = "omlink-analysis/1"

# Totals for the complete OM(9,4) database.
OM94_CLASSES = 9_276_595
OM94_MATROIDS = 2_374_808_320


class DataError(ValueError):
    """Malformed or invalid database record."""


class ResumeError(RuntimeError):
    """Checkpoint does not belong to this database or range."""


def reorientations_per_class(n: int) -> int:
    return len(enumerate_reorientation_sets(n))


def expected_total_matroids(classes: int, n: int = 9) -> int:
    return classes * reorientations_per_class(n)


@dataclass
class ClassResult:
    index: int
    tested: int
    skipped: int
    acyclic: int
    failures: list[ReorientationSet] = field(default_factory=list)
    certificates: dict[ReorientationSet, TripleLinkCertificate] = field(default_factory=dict)


def analyze_orientation_class(chi: Chirotope, index: int = 0, validate: bool = True,
                              keep_certificates: bool = False) -> ClassResult:
    """Run every non-cyclic reorientation of one class through the link search."""
    circuits = circuits_from_chirotope(chi)
    if validate:
        rep = validate_circuit_axioms(circuits)
        if not rep:
            raise DataError(f"class {index}: {rep.axiom} axiom violated ({rep.detail})")
    candidates = enumerate_reorientation_sets(chi.n)
    cyclic = cyclic_reorientation_sets(circuits, candidates)
    res = ClassResult(index, tested=0, skipped=0, acyclic=0)
    values = list(circuits.table.values())
    for a in candidates:
        if a in cyclic:
            res.skipped += 1
            continue
        res.tested += 1
        m = a.mask
        # independent of the filter: confirm the reorientation really is acyclic
        if all((p & ~m) | (q & m) and (q & ~m) | (p & m) for p, q in values):
            res.acyclic += 1
        else:
            continue
        cert = find_triple_link(circuits, m)
        if cert is None:
            res.failures.append(a)
        elif keep_certificates:
            res.certificates[a] = cert
    return res


@dataclass
class ScanReport:
    n: int = 9
    start: int = 0
    stop: int = 0
    classes_processed: int = 0
    matroids_processed: int = 0
    acyclic_count: int = 0
    cyclic_skipped: int = 0
    failures: list[tuple[int, ReorientationSet]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def total_matroids(self) -> int:
        return self.matroids_processed + self.cyclic_skipped

    @property
    def accounting_ok(self) -> bool:
        return self.total_matroids == expected_total_matroids(self.classes_processed, self.n)

    def add(self, res: ClassResult) -> None:
        self.classes_processed += 1
        self.matroids_processed += res.tested
        self.acyclic_count += res.acyclic
        self.cyclic_skipped += res.skipped
        self.failures.extend((res.index, a) for a in res.failures)

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {
            "format": REPORT_FORMAT,
            "n": self.n,
            "range": [self.start, self.stop],
            "classes_processed": self.classes_processed,
            "matroids_processed": self.matroids_processed,
            "acyclic_count": self.acyclic_count,
            "cyclic_skipped": self.cyclic_skipped,
            "total_matroids": self.total_matroids,
            "failures": [{"class": i, "reorientation": sorted(a.elements)} for i, a in self.failures],
        }
        if include_timing:
            d["elapsed_seconds"] = round(self.elapsed, 3)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ScanReport:
        if d.get("format") != REPORT_FORMAT:
            raise FormatError(f"not a scan report: format={d.get('format')!r}")
        rep = cls(n=d["n"], start=d["range"][0], stop=d["range"][1],
                  classes_processed=d["classes_processed"],
                  matroids_processed=d["matroids_processed"],
                  acyclic_count=d["acyclic_count"], cyclic_skipped=d["cyclic_skipped"],
                  failures=[(f["class"], ReorientationSet.of(f["reorientation"]))
                            for f in d["failures"]],
                  elapsed=d.get("elapsed_seconds", 0.0))
        if d["total_matroids"] != rep.total_matroids:
            raise FormatError("total_matroids does not match its parts")
        return rep


# -- serialization -----------------------------------------------------------

def _dump(d: dict) -> str:
    return json.dumps(d, indent=2, sort_keys=True) + "\n"


def emit_report(obj, include_timing: bool = True) -> str:
    """Serialize a ScanReport, a ClassResult, a certificate or a list of certificates."""
    if isinstance(obj, ScanReport):
        return _dump(obj.to_dict(include_timing))
    if isinstance(obj, TripleLinkCertificate):
        return _dump({"format": "omlink-certificate/1", **obj.to_dict()})
    if isinstance(obj, ClassResult):
        return _dump(class_result_to_dict(obj))
    if isinstance(obj, (list, tuple)):
        return _dump({"format": "omlink-certificates/1",
                      "certificates": [c.to_dict() for c in obj]})
    raise TypeError(f"cannot emit {type(obj).__name__}")


def class_result_to_dict(res: ClassResult, chi: Chirotope | None = None) -> dict:
    d = {
        "format": ANALYSIS_FORMAT,
        "class": res.index,
        "tested": res.tested,
        "cyclic_skipped": res.skipped,
        "acyclic_count": res.acyclic,
        "failures": [sorted(a.elements) for a in res.failures],
        "certificates": [{"reorientation": sorted(a.elements), "certificate": c.to_dict()}
                         for a, c in sorted(res.certificates.items())],
    }
    if chi is not None:
        d["chirotope"] = str(chi)
        d["n"], d["r"] = chi.n, chi.r
    return d


def parse_document(text: str):
    """Inverse of :func:`emit_report`."""
    d = json.loads(text)
    fmt = d.get("format")
    if fmt == REPORT_FORMAT:
        return ScanReport.from_dict(d)
    if fmt == "omlink-certificate/1":
        return TripleLinkCertificate.from_dict(d)
    if fmt == "omlink-certificates/1":
        return [TripleLinkCertificate.from_dict(c) for c in d["certificates"]]
    if fmt == ANALYSIS_FORMAT:
        return ClassResult(
            index=d["class"], tested=d["tested"], skipped=d["cyclic_skipped"],
            acyclic=d["acyclic_count"],
            failures=[ReorientationSet.of(a) for a in d["failures"]],
            certificates={ReorientationSet.of(c["reorientation"]):
                          TripleLinkCertificate.from_dict(c["certificate"])
                          for c in d["certificates"]})
    raise FormatError(f"unknown document format {fmt!r}")


# -- database access ---------------------------------------------------------

def database_digest(source) -> str:
    h = hashlib.sha256()
    if isinstance(source, (str, Path)):
        with open(source, "rb") as f:
            for chunk in iter(lambda: f.read(1 << 20), b""):
                h.update(chunk)
    else:
        for rec in source:
            h.update(rec.strip().encode() + b"\n")
    return h.hexdigest()


def iter_records(source, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, str]]:
    """Yield (class index, record) for indices in [start, stop).

    ``source`` is a path to a one-record-per-line file or a sequence of strings.
    Class index k is line k + 1.
    """
    if isinstance(source, (str, Path)):
        with open(source) as f:
            for i, line in enumerate(f):
                if stop is not None and i >= stop:
                    return
                if i >= start:
                    yield i, line.rstrip("\n").rstrip("\r")
    else:
        for i, rec in enumerate(source):
            if stop is not None and i >= stop:
                return
            if i >= start:
                yield i, rec.strip()


def count_records(source) -> int:
    if isinstance(source, (str, Path)):
        with open(source, "rb") as f:
            return sum(1 for _ in f)
    return len(source)


def _parse_record(i: int, rec: str, n: int, r: int) -> Chirotope:
    try:
        return parse_chirotope(rec, n, r)
    except FormatError as exc:
        raise DataError(f"line {i + 1}: {exc}") from None


def _blocks(records: Iterable[tuple[int, str]], size: int, n: int, r: int):
    block: list[tuple[int, str]] = []
    for i, rec in records:
        _parse_record(i, rec, n, r)
        block.append((i, rec))
        if len(block) == size:
            yield block
            block = []
    if block:
        yield block


def _run_block(block, n: int, r: int, validate: bool) -> list[ClassResult]:
    return [analyze_orientation_class(parse_chirotope(rec, n, r), i, validate) for i, rec in block]


# -- checkpoints -------------------------------------------------------------

def _write_checkpoint(path: Path, digest: str, next_class: int, report: ScanReport) -> None:
    doc = {"format": CHECKPOINT_FORMAT, "database_digest": digest,
           "next_class": next_class, "report": report.to_dict()}
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(_dump(doc))
    os.replace(tmp, path)


def load_checkpoint(path: str | Path) -> tuple[str, int, ScanReport]:
    d = json.loads(Path(path).read_text())
    if d.get("format") != CHECKPOINT_FORMAT:
        raise ResumeError(f"{path} is not a checkpoint")
    return d["database_digest"], d["next_class"], ScanReport.from_dict(d["report"])


def scan_database(source, start: int = 0, stop: int | None = None, workers: int = 1,
                  checkpoint: str | Path | None = None, resume: bool = False,
                  block_size: int = 1024, validate: bool = True, n: int = 9, r: int = 4,
                  max_blocks: int | None = None) -> ScanReport:
    """Scan classes ``start <= k < stop`` of a chirotope database.

    With ``checkpoint`` set, progress is saved after every merged block; with
    ``resume`` an existing checkpoint is continued.  ``max_blocks`` stops early
    after that many blocks (the checkpoint then reflects the partial run).
    """
    t0 = time.perf_counter()
    total = count_records(source)
    if stop is None or stop > total:
        if stop is not None and stop > total:
            raise DataError(f"range end {stop} beyond the {total} records in the database")
        stop = total
    if not 0 <= start <= stop:
        raise DataError(f"bad class range [{start}, {stop})")

    report = ScanReport(n=n, start=start, stop=stop)
    next_class = start
    digest = None
    ckpt = Path(checkpoint) if checkpoint is not None else None
    if ckpt is not None:
        digest = database_digest(source)
        if resume and ckpt.exists():
            old_digest, next_class, report = load_checkpoint(ckpt)
            if old_digest != digest:
                raise ResumeError("checkpoint was written for a different database")
            if (report.start, report.stop, report.n) != (start, stop, n):
                raise ResumeError(f"checkpoint covers [{report.start}, {report.stop}), "
                                  f"not [{start}, {stop})")
    elapsed_before = report.elapsed

    blocks = _blocks(iter_records(source, next_class, stop), block_size, n, r)
    done = 0

    def merge(results: list[ClassResult]):
        nonlocal next_class, done
        for res in results:
            report.add(res)
        next_class = results[-1].index + 1
        done += 1
        if ckpt is not None:
            report.elapsed = elapsed_before + time.perf_counter() - t0
            _write_checkpoint(ckpt, digest, next_class, report)

    if workers <= 1:
        for block in blocks:
            if max_blocks is not None and done >= max_blocks:
                break
            merge(_run_block(block, n, r, validate))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending: deque = deque()
            submitted = 0
            for block in blocks:
                if max_blocks is not None and submitted >= max_blocks:
                    break
                pending.append(pool.submit(_run_block, block, n, r, validate))
                submitted += 1
                while len(pending) >= 2 * workers:
                    merge(pending.popleft().result())
            while pending:
                merge(pending.popleft().result())

    report.elapsed = elapsed_before + time.perf_counter() - t0
    if ckpt is not None and done:
        _write_checkpoint(ckpt, digest, next_class, report)
    return report


def validate_database(source, n: int = 9, r: int = 4) -> tuple[int, list[tuple[int, str, str]]]:
    """Axiom-check every record; returns (records checked, [(line, axiom, detail)])."""
    bad = []
    count = 0
    for i, rec in iter_records(source):
        chi = _parse_record(i, rec, n, r)
        rep = validate_circuit_axioms(circuits_from_chirotope(chi))
        count += 1
        if not rep:
            bad.append((i + 1, rep.axiom, rep.detail))
    return count, bad
