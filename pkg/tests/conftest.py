"""Acceptance reporting and a suite-wide watch on fuel exhaustion."""

import importlib

import pytest

from lambdamatch.normalize import DEFAULT_FUEL

_normalize_mod = importlib.import_module("lambdamatch.normalize")

ACCEPTANCE = {}
EXHAUSTED_AT_DEFAULT = []

_original_init = _normalize_mod.FuelExhausted.__init__


def _watching_init(self, fuel, steps):
    if fuel >= DEFAULT_FUEL:
        EXHAUSTED_AT_DEFAULT.append((fuel, steps))
    _original_init(self, fuel, steps)


_normalize_mod.FuelExhausted.__init__ = _watching_init


@pytest.fixture
def acceptance_record():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE and not EXHAUSTED_AT_DEFAULT:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, name, detail = ACCEPTANCE[number]
        tr.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {name}  ({detail})")
    fuel_ok = not EXHAUSTED_AT_DEFAULT
    tr.write_line(f"suite-wide: {'PASS' if fuel_ok else 'FAIL'}  fuel of {DEFAULT_FUEL} "
                  f"never exhausted ({len(EXHAUSTED_AT_DEFAULT)} exhaustions)")


def pytest_sessionfinish(session, exitstatus):
    if EXHAUSTED_AT_DEFAULT and exitstatus == 0:
        session.exitstatus = 1
