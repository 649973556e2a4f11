"""Shared fixtures: the reference log and scenario are built once per session."""

import pytest

from argus import (
    gen_class_log,
    gen_steering_scenario,
    reference_class_spec,
    reference_steering_spec,
)


@pytest.fixture(scope="session")
def reference_log():
    """The 50000-item benchmark log, no probability vectors."""
    return gen_class_log(reference_class_spec())


@pytest.fixture(scope="session")
def reference_scenario():
    """(trace, events) for the 100000-frame benchmark steering run."""
    return gen_steering_scenario(reference_steering_spec())
