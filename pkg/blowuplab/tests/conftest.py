"""
@file tests/conftest.py
@brief Shared fixtures: the H1/H2 example problem, configurations on disk and admin users.
"""

import json

import numpy as np
import pytest

from tests.factories import (
    IntervalFactory,
    PhysParamsFactory,
    RunDocumentFactory,
    SpatialGridFactory,
    SuperUserFactory,
)


@pytest.fixture
def domain():
    """
    @brief The interval [0, pi].
    """
    return IntervalFactory()


@pytest.fixture
def params():
    return PhysParamsFactory()


@pytest.fixture
def grid():
    return SpatialGridFactory()


@pytest.fixture
def example_data():
    """
    @brief (u0, v0) = (4 sin x, sin x).
    """
    return (lambda x: 4.0 * np.sin(x)), (lambda x: np.sin(x))


@pytest.fixture
def run_document():
    return RunDocumentFactory()


@pytest.fixture
def config_file(tmp_path):
    """
    @brief Writes a run document to tmp_path and returns a maker for more.

    @details
    Called with keyword overrides; the output directory defaults to
    tmp_path / "out".
    """

    def make(name="config.json", **overrides):
        document = RunDocumentFactory(output_dir=str(tmp_path / "out"), **overrides)
        path = tmp_path / name
        path.write_text(json.dumps(document, indent=2), encoding="utf-8")
        return path

    return make


@pytest.fixture
def superuser(db):
    return SuperUserFactory.create()


@pytest.fixture
def admin_user(superuser):
    """
    @brief Alias for superuser to use in admin tests.
    """
    return superuser
