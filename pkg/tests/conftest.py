# -*- coding: utf-8 -*-
from __future__ import annotations

import logging

import pytest

from src.model import ProcessParams
from src.specfun import DEFAULT_PRECISION


@pytest.fixture
def precision():
    return DEFAULT_PRECISION


@pytest.fixture
def cauchy():
    """α = d = 1."""
    return ProcessParams(1.0, 1)


@pytest.fixture
def transient():
    """α = 1, d = 3: основной набор параметров для законов выхода."""
    return ProcessParams(1.0, 3)


@pytest.fixture
def hits_points():
    """α = 1.5, d = 3: процесс попадает в точки."""
    return ProcessParams(1.5, 3)


@pytest.fixture(autouse=True)
def _restore_root_logging():
    """CLI перенастраивает корневой логгер; возвращаем обработчики после теста."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture(autouse=True)
def _no_precision_override(monkeypatch):
    monkeypatch.delenv("HYPSTABLE_PRECISION", raising=False)
