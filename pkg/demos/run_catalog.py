"""Run every built-in scenario and Morita pair and print the text
reports -- the same thing `blockfusion catalog --run-all --format text`
does from the command line."""

import sys

from blockfusion import workbench as wb

reports = wb.run_catalog(seed=int(sys.argv[1]) if len(sys.argv) > 1 else 0)
print(wb.emit_many(reports, "text").decode())
ok = all(r.passed() for r in reports)
print("all scenarios pass" if ok else "FAILURES above")
sys.exit(0 if ok else 1)
