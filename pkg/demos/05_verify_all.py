"""Run every machine-checkable claim and print the certificate."""

import sys

from hyperturan.verify import verify_paper

report = verify_paper()
print(report.to_text())
sys.exit(report.exit_code)
