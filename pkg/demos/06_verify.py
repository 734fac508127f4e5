"""The full check suite, as run by ``ballquot verify-paper``."""
# %%
from ballquot.report import verify_paper

report = verify_paper()
print(report.to_text())
print("all pass:", report.passed)
