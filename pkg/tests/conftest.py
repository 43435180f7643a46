"""Shared fixtures for the pysilting tests."""

from __future__ import annotations

import logging

import pytest

from pysilting import linalg
from pysilting.const import DOMAIN
from pysilting.fixtures import A3, K2, KRONECKER, N3, SN22, builtin_algebra


@pytest.fixture(autouse=True)
def _reset_package_logger():
    yield
    logger = logging.getLogger(DOMAIN)
    logger.handlers.clear()
    logger.propagate = True
    logger.setLevel(logging.NOTSET)


@pytest.fixture(scope="session")
def qq() -> linalg.Field:
    return linalg.Field()


@pytest.fixture(scope="session")
def a3(qq):
    return builtin_algebra(A3, qq)


@pytest.fixture(scope="session")
def n3(qq):
    return builtin_algebra(N3, qq)


@pytest.fixture(scope="session")
def k2(qq):
    return builtin_algebra(K2, qq)


@pytest.fixture(scope="session")
def sn22(qq):
    return builtin_algebra(SN22, qq)


@pytest.fixture(scope="session")
def kronecker(qq):
    return builtin_algebra(KRONECKER, qq)
