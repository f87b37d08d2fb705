"""We introduce an acceptance marker to skip the long seeded runs on demand.

Pass ``--quick`` to skip all tests marked with ``acceptance``.
"""
import pytest


def pytest_addoption(parser):
    parser.addoption('--quick', action='store_true', default=False,
                     help='Skip the acceptance runs.')


def pytest_configure(config):
    # register an additional marker
    config.addinivalue_line(
        'markers', 'acceptance: a full seeded run of a suite or an axiom')


def pytest_runtest_setup(item):
    if item.get_closest_marker('acceptance') is not None \
            and item.config.getoption('--quick'):
        pytest.skip('acceptance run skipped by --quick')
