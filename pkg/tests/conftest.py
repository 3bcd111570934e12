import os
import sys

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, bypassing capture."""

    def emit(label, ok, detail=""):
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            sys.stdout.write(f"\n[{status}] {label}" + (f" ({detail})" if detail else "") + "\n")
        return ok

    return emit
