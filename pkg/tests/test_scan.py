import json

import pytest

from omlink import scan as scan_mod
from omlink.core import parse_chirotope
from omlink.geometry import chirotope_from_points, random_general_position
from omlink.linkage import verify_certificate, find_triple_link
from omlink.core import circuits_from_chirotope
from omlink.reorient import ReorientationSet, reorient_circuit_set
from omlink.scan import (OM94_CLASSES, OM94_MATROIDS, ClassResult, DataError, ResumeError,
                         ScanReport, analyze_orientation_class, emit_report,
                         expected_total_matroids, load_checkpoint, parse_document,
                         scan_database, validate_database)


# Seeded random signs (random.Random(0)); not a chirotope.
CORRUPT = ("--+------++-++-+-++--+---+---+++-+--+-+++++-++--+--+-+--+--+-++++--++++++--++---"
           "--+-+--+++-++-+--++++++++++-+-++++++-+++-+-+++")


def records(path, k):
    return path.read_text().splitlines()[:k]


def test_accounting_identity():
    assert expected_total_matroids(OM94_CLASSES) == OM94_MATROIDS == 9_276_595 * 256


def test_analyze_point_derived():
    chi = chirotope_from_points(random_general_position(9, 77))
    res = analyze_orientation_class(chi, keep_certificates=True)
    assert res.tested + res.skipped == 256
    assert res.acyclic == res.tested
    assert res.failures == []
    assert ReorientationSet(0) in res.certificates
    cs = circuits_from_chirotope(chi)
    for a, cert in res.certificates.items():
        assert verify_certificate(reorient_circuit_set(cs, a), cert)


def test_analyze_rejects_corrupt_record():
    chi = parse_chirotope(CORRUPT, 9, 4)
    with pytest.raises(DataError, match="class 17"):
        analyze_orientation_class(chi, index=17)


def test_scan_small_slice(slice_path):
    rep = scan_database(slice_path, 0, 20, block_size=7)
    assert rep.classes_processed == 20
    assert rep.total_matroids == 20 * 256 and rep.accounting_ok
    assert rep.matroids_processed == rep.acyclic_count
    assert rep.failures == []


def test_scan_workers_match(slice_path):
    a = scan_database(slice_path, 100, 140, workers=1, block_size=8)
    b = scan_database(slice_path, 100, 140, workers=3, block_size=8)
    assert emit_report(a, include_timing=False) == emit_report(b, include_timing=False)


def test_scan_in_memory_records(slice_path):
    recs = records(slice_path, 10)
    a = scan_database(recs, block_size=4)
    b = scan_database(slice_path, 0, 10)
    assert emit_report(a, False) == emit_report(b, False)


def test_empty_range(slice_path):
    rep = scan_database(slice_path, 5, 5)
    d = json.loads(emit_report(rep))
    assert d["classes_processed"] == d["matroids_processed"] == d["total_matroids"] == 0
    assert d["failures"] == []


def test_malformed_record(tmp_path, slice_path):
    recs = records(slice_path, 3)
    recs[1] = recs[1][:-1]
    db = tmp_path / "bad.txt"
    db.write_text("\n".join(recs) + "\n")
    with pytest.raises(DataError, match="line 2"):
        scan_database(db)


def test_range_beyond_file(slice_path):
    with pytest.raises(DataError):
        scan_database(slice_path, 0, 5000)


def test_checkpoint_resume(tmp_path, slice_path):
    db = tmp_path / "db.txt"
    db.write_text("\n".join(records(slice_path, 30)) + "\n")
    ck = tmp_path / "ck.json"
    full = scan_database(db, block_size=4)
    partial = scan_database(db, block_size=4, checkpoint=ck, max_blocks=3)
    assert partial.classes_processed == 12
    _, next_class, saved = load_checkpoint(ck)
    assert next_class == 12 and saved.classes_processed == 12
    resumed = scan_database(db, block_size=4, checkpoint=ck, resume=True)
    assert emit_report(resumed, False) == emit_report(full, False)
    # resuming a finished checkpoint changes nothing
    again = scan_database(db, block_size=4, checkpoint=ck, resume=True)
    assert emit_report(again, False) == emit_report(full, False)


def test_checkpoint_digest_mismatch(tmp_path, slice_path):
    db = tmp_path / "db.txt"
    db.write_text("\n".join(records(slice_path, 8)) + "\n")
    ck = tmp_path / "ck.json"
    scan_database(db, block_size=4, checkpoint=ck, max_blocks=1)
    db.write_text("\n".join(records(slice_path, 9)[1:]) + "\n")
    with pytest.raises(ResumeError, match="different database"):
        scan_database(db, block_size=4, checkpoint=ck, resume=True)


def test_checkpoint_range_mismatch(tmp_path, slice_path):
    db = tmp_path / "db.txt"
    db.write_text("\n".join(records(slice_path, 8)) + "\n")
    ck = tmp_path / "ck.json"
    scan_database(db, 0, 8, block_size=4, checkpoint=ck, max_blocks=1)
    with pytest.raises(ResumeError):
        scan_database(db, 0, 6, block_size=4, checkpoint=ck, resume=True)


def test_failures_are_recorded(monkeypatch, slice_path):
    monkeypatch.setattr(scan_mod, "find_triple_link", lambda cs, a=0: None if a == 0 else True)
    res = scan_mod.analyze_orientation_class(parse_chirotope(records(slice_path, 1)[0]))
    assert isinstance(res, ClassResult)
    rep = scan_database(records(slice_path, 3))
    # the empty reorientation is acyclic for some classes but not others
    assert all(a == ReorientationSet(0) for _, a in rep.failures)
    assert [i for i, _ in rep.failures] == sorted(i for i, _ in rep.failures)


def test_report_roundtrip():
    rep = ScanReport(n=9, start=3, stop=10, classes_processed=7, matroids_processed=651,
                     acyclic_count=651, cyclic_skipped=1141,
                     failures=[(4, ReorientationSet.of({1, 5}))], elapsed=1.5)
    back = parse_document(emit_report(rep))
    assert back == rep


def test_certificate_roundtrip():
    cs = circuits_from_chirotope(chirotope_from_points(random_general_position(9, 1)))
    cert = find_triple_link(cs)
    assert parse_document(emit_report(cert)) == cert
    assert parse_document(emit_report([cert, cert])) == [cert, cert]


def test_class_result_roundtrip():
    chi = chirotope_from_points(random_general_position(9, 2))
    res = analyze_orientation_class(chi, index=4, keep_certificates=True)
    assert len(res.certificates) <= 256
    assert parse_document(emit_report(res)) == res


def test_validate_database(tmp_path, slice_path):
    recs = records(slice_path, 5) + [CORRUPT]
    db = tmp_path / "db.txt"
    db.write_text("\n".join(recs) + "\n")
    count, bad = validate_database(db)
    assert count == 6 and [b[0] for b in bad] == [6]
