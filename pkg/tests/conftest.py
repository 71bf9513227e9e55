import os

from hypothesis import HealthCheck, settings

import helpers

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    if not helpers.ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(helpers.ACCEPTANCE):
        parts = helpers.ACCEPTANCE[crit]
        failed = [p for p in parts if not p[1]]
        if not failed:
            tr.write_line(f"criterion {crit}: PASS")
        else:
            why = "; ".join(f"{name}: {note}" if note else name for name, _, note in failed)
            tr.write_line(f"criterion {crit}: FAIL ({why})")
