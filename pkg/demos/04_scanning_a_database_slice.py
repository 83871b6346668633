"""
Scanning a slice of a chirotope database
========================================

The repository ships 1000 records in the database format (one 126-character
sign string per line).  A scan checks every acyclic reorientation of every
record for a three-component link.
"""

from pathlib import Path

from omlink.scan import emit_report, expected_total_matroids, scan_database

db = Path(__file__).resolve().parent.parent / "tests" / "data" / "om94_slice_1000.txt"

report = scan_database(db, start=0, stop=100, workers=1)
print(emit_report(report))

# 256 reorientation sets per orientation class, cyclic or not.
print("accounting ok:", report.total_matroids == expected_total_matroids(report.classes_processed))
print("full database would hold", expected_total_matroids(9_276_595), "oriented matroids")

# The same slice from the command line, restartable:
#   omlink scan tests/data/om94_slice_1000.txt --to 100 --workers 4 --checkpoint scan.ckpt
#   omlink scan tests/data/om94_slice_1000.txt --to 100 --workers 4 --checkpoint scan.ckpt --resume
