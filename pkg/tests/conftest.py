"""Shared fixtures: warm the jit cache once so timed tests are steady."""

from __future__ import annotations

import pytest

from cayleymaps import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    _kernels.warmup()
    return _kernels.default_backend()
