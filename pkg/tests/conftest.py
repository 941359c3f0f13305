"""Shared solved tables and classifications, built once per session."""

from __future__ import annotations

import pytest

from xnim.classify import classify
from xnim.rules import exact, moore
from xnim.solver import solve_outcomes


@pytest.fixture(scope="session")
def tables20():
    """exact(5,2) and moore(4,2) with remoteness at bound 20."""
    et = solve_outcomes(exact(5, 2), 20, remoteness=True)
    mt = solve_outcomes(moore(4, 2), 20, remoteness=True)
    return et, mt


@pytest.fixture(scope="session")
def cls20(tables20):
    et, mt = tables20
    return classify(et, mt)


@pytest.fixture(scope="session")
def tables40():
    """exact(5,2) and moore(4,2) with remoteness at bound 40."""
    et = solve_outcomes(exact(5, 2), 40, remoteness=True)
    mt = solve_outcomes(moore(4, 2), 40, remoteness=True)
    return et, mt


@pytest.fixture(scope="session")
def cls40(tables40):
    et, mt = tables40
    return classify(et, mt)
