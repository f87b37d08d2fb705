# Copyright 2024 Oliver Berger
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Provide pytest fixtures for checking exact structures.

Load it as a plugin::

    pytest_plugins = ['exactcat.testing']

Random fixtures draw from one seeded :py:class:`random.Random` per test,
so a failing test is reproduced by rerunning it with the same
``--exactcat-seed``.
"""
import random

import pytest

from exactcat import complexes, exactstruct, fgab, homlemmas

SMALL_BOUNDS = fgab.Bounds(2, 2, 12)


def pytest_addoption(parser):
    parser.addoption('--exactcat-seed', action='store', type=int,
                     default=exactstruct.DEFAULT_SEED, metavar='SEED',
                     help='Seed of the random exactcat fixtures.')


@pytest.fixture
def exactcat_seed(request):
    return request.config.getoption('--exactcat-seed')


@pytest.fixture
def rng(exactcat_seed, request):
    """A generator seeded by the test seed and the test name."""
    return random.Random('{}:{}'.format(exactcat_seed, request.node.nodeid))


@pytest.fixture
def bounds():
    return SMALL_BOUNDS


@pytest.fixture(params=['split', 'max'])
def right_structure(request):
    """Each certified right exact structure on groups."""
    return exactstruct.structure_from_name(request.param)


@pytest.fixture(params=[2, 3])
def isbell(request):
    return exactstruct.isbell_structure(request.param)


@pytest.fixture
def random_conflation(rng, bounds):
    """Draw a conflation of a structure.

    You use it like:

    .. code-block:: python

        def test_conflation(right_structure, random_conflation):
            c = random_conflation(right_structure)
            assert exactstruct.is_conflation(
                right_structure, c.inflation, c.deflation)

    """
    def draw(s, attempts=20):
        for _ in range(attempts):
            conflation = exactstruct.sample_conflation(s, rng, bounds)
            if conflation is not None:
                return conflation
        pytest.skip('no conflation drawn in {}'.format(s.name))
    return draw


@pytest.fixture
def random_conflation_morphism(rng, bounds):
    """Draw a morphism of conflations, with isomorphic ends on request."""
    def draw(s, isomorphic_ends=False, attempts=20):
        for _ in range(attempts):
            m = homlemmas.random_conflation_morphism(
                s, rng, bounds, isomorphic_ends=isomorphic_ends)
            if m is not None:
                return m
        pytest.skip('no conflation morphism drawn in {}'.format(s.name))
    return draw


@pytest.fixture
def random_nine_diagram(rng, bounds):
    def draw():
        return homlemmas.random_nine_diagram(rng, bounds)
    return draw


@pytest.fixture
def random_hom(rng, bounds):
    """Draw a morphism between two random groups."""
    def draw():
        source = fgab.random_object(bounds, rng)
        target = fgab.random_object(bounds, rng)
        return fgab.random_hom(source, target, rng)
    return draw


@pytest.fixture
def random_acyclic(rng, bounds):
    """Draw an acyclic complex together with its witness."""
    def draw(s, length=4, lo=0):
        return complexes.random_acyclic_complex(s, rng, bounds, length, lo)
    return draw


@pytest.fixture
def random_chain_map(rng):
    """Draw a chain map between two complexes."""
    def draw(source, target):
        return complexes.random_chain_map(source, target, rng)
    return draw
