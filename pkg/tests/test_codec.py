import pytest


@pytest.fixture
def codec():
    from exactcat import codec
    return codec


def test_encode_hom(codec):
    from exactcat import fgab

    f = fgab.Hom(fgab.FgAb.free(1), fgab.FgAb.cyclic(2), [[1]])
    encoded = codec.encode(f)

    assert encoded['type'] == 'hom'
    assert encoded['data']['action'] == {
        'type': 'mat', 'data': {'rows': 1, 'cols': 1, 'entries': [1]}}
    assert codec.decode(encoded) == f


def test_dumps_is_deterministic(codec):
    from exactcat import intlin

    data = {'b': intlin.Mat([[1, 2]]), 'a': [1, None, 'x']}

    assert codec.dumps(data) == codec.dumps(dict(reversed(list(data.items()))))
    assert codec.dumps(data).endswith('}\n')
    assert codec.loads(codec.dumps(data)) == data


def test_no_encoder(codec):
    with pytest.raises(TypeError):
        codec.encode(object())


def test_register_needs_handlers(codec):
    with pytest.raises(TypeError):
        @codec.register('broken')
        class Broken:
            pass


def test_decode_plain_dict_with_type_key(codec):
    payload = {'type': 'unregistered', 'data': 1}

    assert codec.decode(payload) == payload


@pytest.mark.parametrize('text', [
    '{"type": "mat", "data": {"rows": 2, "cols": 2, "entries": [1]}}',
    '{"type": "hom", "data": {"source": 1}}',
    '[1, 2',
])
def test_malformed(codec, text):
    with pytest.raises(codec.MalformedWitness):
        codec.loads(text)
