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
"""Shared plumbing: the error hierarchy and named registries."""
import logging

log = logging.getLogger(__name__)


class ExactcatError(Exception):

    """Base of all errors raised by exactcat."""


class HypothesisFailure(ExactcatError):

    """An input violates a stated hypothesis of a construction.

    Carries the name of the hypothesis and the offending diagram as a
    mapping of role names to morphisms.
    """

    def __init__(self, hypothesis, diagram=None):
        super().__init__(hypothesis)
        self.hypothesis = hypothesis
        self.diagram = dict(diagram or {})

    def __str__(self):
        if not self.diagram:
            return self.hypothesis
        return '{} (roles: {})'.format(self.hypothesis,
                                       ', '.join(sorted(self.diagram)))


class LemmaFalsified(ExactcatError):

    """A verified conclusion failed although all hypotheses held."""


class RegistryMeta(type):

    """Register concrete subclasses by their ``name`` attribute.

    The first class created with this metaclass in a hierarchy becomes the
    registry base and holds ``__registry__``; every subclass defining a
    ``name`` is registered there.
    """

    def __new__(mcs, name, bases, dct):
        cls = type.__new__(mcs, name, bases, dct)
        if not any(isinstance(base, RegistryMeta) for base in bases):
            cls.__registry__ = {}
        elif dct.get('name'):
            registry = cls.__registry__
            if dct['name'] in registry:
                raise TypeError('{} already registered as {}'
                                .format(dct['name'], registry[dct['name']]))
            registry[dct['name']] = cls
        return cls

    def lookup(cls, name):
        """Return the class registered under ``name``."""
        try:
            return cls.__registry__[name]
        except KeyError:
            raise cls.__unknown_error__(
                'unknown {}: {!r}, known are {}'.format(
                    cls.__name__.lower(), name,
                    ', '.join(sorted(cls.__registry__))))

    def names(cls):
        return sorted(cls.__registry__)
