import json
import pathlib

import pytest

FIXTURES = pathlib.Path(__file__).parent.parent / 'src' / 'exactcat' \
    / 'fixtures'


@pytest.fixture
def invoke():
    from click.testing import CliRunner
    from exactcat import scripts

    def invoke(*args, **kwargs):
        runner = CliRunner()
        return runner.invoke(scripts.cli,
                             ['--log-level', 'ERROR'] + list(args),
                             obj={}, **kwargs)
    return invoke


def test_check_axioms_expected_failures(invoke):
    result = invoke('check-axioms', '--structure', 'isbell:2',
                    '--axioms', 'R1,R2,R3', '--samples', '5',
                    '--expect-paper')

    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0].startswith('isbell:2 R1: fail')


def test_check_axioms_failure_writes_witness(invoke, tmp_path):
    from exactcat import exactstruct

    witness_file = tmp_path / 'witness.json'

    result = invoke('check-axioms', '--structure', 'isbell:2',
                    '--axioms', 'R1', '--samples', '5',
                    '--witness-out', str(witness_file))

    assert result.exit_code == 1
    witness = exactstruct.Witness.loads(witness_file.read_text())
    assert witness.axiom == 'R1'
    assert witness.structure == 'isbell:2'

    replayed = invoke('replay', str(witness_file))
    assert replayed.exit_code == 1
    assert 'reproduced' in replayed.output


def test_check_axioms_max(invoke):
    result = invoke('check-axioms', '--structure', 'max',
                    '--axioms', 'R0,R1,R2,R3', '--samples', '5')

    assert result.exit_code == 0, result.output
    assert len(result.output.splitlines()) == 4


@pytest.mark.parametrize('args', [
    ('--structure', 'isbell:4'),
    ('--structure', 'abelian'),
    ('--axioms', 'R9'),
    ('--bounds', '1,2'),
])
def test_check_axioms_bad_parameters(invoke, args):
    result = invoke('check-axioms', *args)

    assert result.exit_code == 2


def test_json_report_is_deterministic(invoke):
    args = ('check-axioms', '--structure', 'split', '--axioms', 'R1,L1',
            '--samples', '5', '--format', 'json', '--jobs', '2')

    first, second = invoke(*args), invoke(*args)

    assert first.exit_code == 0
    assert first.stdout == second.stdout
    document = json.loads(first.stdout)
    assert document['type'] == 'run-report'
    assert document['data']['wall_time'] is None
    assert [r['data']['axiom'] for r in document['data']['results']] \
        == ['L1', 'R1']


def test_timing(invoke):
    result = invoke('check-axioms', '--axioms', 'R0', '--samples', '1',
                    '--timing')

    assert result.output.splitlines()[-1].startswith('wall time: ')


def test_seed_from_environment(invoke):
    result = invoke('check-axioms', '--axioms', 'R0', '--samples', '1',
                    '--format', 'json', env={'EXACTCAT_SEED': '7'})

    assert json.loads(result.stdout)['data']['config']['seed'] == 7


def test_verify_lemma(invoke):
    result = invoke('verify-lemma', 'nine', '--samples', '3')

    assert result.exit_code == 0, result.output
    assert result.output.startswith('nine: pass in max')


def test_verify_lemma_unknown(invoke):
    result = invoke('verify-lemma', 'snake')

    assert result.exit_code == 2
    assert 'three-by-three' in result.output


def test_verify_lemma_fixture(invoke, tmp_path):
    from exactcat import codec, fgab

    z = fgab.FgAb.free(1)
    zero = fgab.Hom(z, z, [[0]])
    fixture = tmp_path / 'bracket.json'
    fixture.write_text(codec.dumps({'f': zero, 'f_prime': zero}))

    result = invoke('verify-lemma', 'bracket', '--fixture', str(fixture),
                    '--format', 'json')

    assert result.exit_code == 1
    report = codec.loads(result.stdout)
    assert report.config['fixture'] is True
    assert report.results[0].verdict == 'fail'

    # the report of a failing run serves as a fixture again
    fixture.write_text(result.stdout)
    again = invoke('verify-lemma', 'bracket', '--fixture', str(fixture),
                   '--format', 'json')
    assert again.exit_code == 1
    assert codec.loads(again.stdout).results == report.results


@pytest.mark.parametrize('lemma, content', [
    ('bracket', '[]'),
    ('bracket', 'no json'),
    ('injective', '{"injective": 1}'),
])
def test_verify_lemma_bad_fixture(invoke, tmp_path, lemma, content):
    fixture = tmp_path / 'fixture.json'
    fixture.write_text(content)

    result = invoke('verify-lemma', lemma, '--fixture', str(fixture))

    assert result.exit_code == 2


@pytest.mark.parametrize('name, exit_code', [
    ('isbell-2-R1.json', 1),
    ('max-R1.json', 0),
])
def test_replay_packaged_witness(invoke, name, exit_code):
    result = invoke('replay', str(FIXTURES / name))

    assert result.exit_code == exit_code
    assert result.output.startswith('R1 in ')


def test_replay_json(invoke):
    result = invoke('replay', str(FIXTURES / 'max-R1.json'), '--format',
                    'json')

    document = json.loads(result.stdout)
    assert document['holds'] is True
    assert document['witness']['type'] == 'witness'


@pytest.mark.parametrize('content', [
    '{"type": "witness", "data": {}}',
    '{"type": "hom", "data": {}}',
    '[1, 2',
])
def test_replay_malformed(invoke, tmp_path, content):
    witness_file = tmp_path / 'witness.json'
    witness_file.write_text(content)

    result = invoke('replay', str(witness_file))

    assert result.exit_code == 2
