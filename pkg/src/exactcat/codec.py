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
"""JSON encoding for exactcat values.

Types register themselves with :py:func:`register` and implement the two
classmethods ``__json_encode__`` and ``__json_decode__``.  Encoded values
are wrapped as ``{"type": <name>, "data": <payload>}`` so that they can
be decoded without further context.
"""
import json
import logging

from exactcat import core

log = logging.getLogger(__name__)

INDENT = 2


class MalformedWitness(core.ExactcatError):

    """A serialized document cannot be decoded."""


class Codec:

    """Manage encoder registration."""

    encoders = {}
    names = {}

    @classmethod
    def register(cls, name):
        def decorator(handler):
            if not (hasattr(handler, '__json_encode__')
                    and hasattr(handler, '__json_decode__')):
                raise TypeError(
                    "JSON handler must define __json_encode__ and"
                    " __json_decode__: {}".format(handler))
            cls.encoders[handler] = name
            cls.names[name] = handler
            return handler
        return decorator

    @classmethod
    def get_custom_encoder(cls, data_type):
        for subclass in data_type.__mro__:
            if subclass in cls.encoders:
                return subclass
        return None

    @classmethod
    def encode(cls, data):
        """Turn ``data`` into plain JSON-compatible values."""
        if isinstance(data, (str, int, float, bool)) or data is None:
            return data
        if isinstance(data, dict):
            return {str(key): cls.encode(value) for key, value in data.items()}
        if isinstance(data, (list, tuple)):
            return [cls.encode(value) for value in data]
        encoder = cls.get_custom_encoder(type(data))
        if encoder is None:
            raise TypeError(
                "There is no custom encoder for this type registered: {}"
                .format(type(data)))
        return {
            'type': cls.encoders[encoder],
            'data': cls.encode(encoder.__json_encode__(data)),
        }

    @classmethod
    def decode(cls, payload):
        """Reverse :py:meth:`encode`."""
        if isinstance(payload, list):
            return [cls.decode(value) for value in payload]
        if isinstance(payload, dict):
            if set(payload) == {'type', 'data'} \
                    and payload['type'] in cls.names:
                handler = cls.names[payload['type']]
                try:
                    return handler.__json_decode__(cls.decode(payload['data']))
                except (KeyError, TypeError, ValueError, IndexError) as ex:
                    raise MalformedWitness(
                        'cannot decode {}: {}'.format(payload['type'], ex))
            return {key: cls.decode(value) for key, value in payload.items()}
        return payload


register = Codec.register
encode = Codec.encode
decode = Codec.decode


def dumps(data):
    """Deterministic JSON text: sorted keys, fixed indent, final newline."""
    return json.dumps(encode(data), sort_keys=True, indent=INDENT,
                      ensure_ascii=False) + '\n'


def loads(text):
    try:
        payload = json.loads(text)
    except ValueError as ex:
        raise MalformedWitness('invalid JSON: {}'.format(ex))
    return decode(payload)
