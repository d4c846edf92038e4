import json

import pytest
from click.testing import CliRunner

from regring import main
from regring.utils.serialization import CERTIFICATE_SCHEMA, LAW_VERDICT_SCHEMA, VERDICT_SCHEMA, validate_document

E12 = '0,1,0,0'
E21 = '0,0,1,0'


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, cli, *args):
    return runner.invoke(cli, ['--env', 'testing', *args])


def test_reduce_matrix_unit_pair(runner, cli):
    result = invoke(runner, cli, 'reduce', '--ring', 'M2(F2)', '--a', E12, '--b', E21)
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    validate_document(document, CERTIFICATE_SCHEMA)
    assert document['status'] == {'stabilized_at': 0}
    assert document['axis'] == '1,0,1,0'
    assert document['unit'] == '0,1,1,0'


def test_reduce_output_is_deterministic(runner, cli):
    args = ('reduce', '--ring', 'M2(F3)xM1(F2)', '--a', '1,2,0,0;1', '--decompose')
    first = invoke(runner, cli, *args)
    second = invoke(runner, cli, *args)
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    assert all(json.loads(first.stdout)['decomposition']['checks'].values())


def test_reduce_text_output(runner, cli):
    result = invoke(runner, cli, 'reduce', '--ring', 'M2(F2)', '--a', E12, '--output', 'text')
    assert result.exit_code == 0, result.output
    assert 'stabilized_at: 0' in result.stdout


def test_reduce_step_limit_fails(runner, cli):
    """The depth-1 slow pair needs more than one step."""
    a = ','.join(str(v) for v in (0, 0, 0, 0, 1,
                                  0, 0, 0, 0, 0,
                                  0, 1, 0, 0, 0,
                                  0, 0, 1, 0, 0,
                                  0, 0, 0, 1, 0))
    b = ','.join(str(v) for v in (0, 0, 0, 0, 0,
                                  0, 0, 1, 0, 0,
                                  0, 0, 0, 1, 0,
                                  0, 0, 0, 0, 1,
                                  1, 0, 0, 0, 0))
    result = invoke(runner, cli, 'reduce', '--ring', 'M5(F2)', '--a', a, '--b', b, '--max-steps', '1')
    assert result.exit_code == 1
    assert json.loads(result.stdout)['status'] == {'exhausted': 1}


@pytest.mark.parametrize('args', [
    ('reduce', '--ring', 'M2(F4)', '--a', E12),
    ('reduce', '--ring', 'M2(F2)', '--a', '0,1,0'),
    ('reduce', '--ring', 'M2(F2)', '--a', E12, '--b', E12),
    ('identities', '--ring', 'M2(F2)', '--lhs', 'x*', '--rhs', 'x'),
    ('identities', '--ring', 'M2(F2)', '--lhs', 'x', '--rhs', 'y'),
    ('identities', '--ring', 'M2(F2)', '--scheme', 'thm23-7'),
    ('props', '--ring', 'M2(F2)', '--check', 'unit-regular'),
    ('props', '--ring', 'M3(F2)', '--check', 'theorem23', '--d', '2'),
])
def test_bad_input_exits_2(runner, cli, args):
    result = invoke(runner, cli, *args)
    assert result.exit_code == 2, result.output


def test_identities_scheme(runner, cli):
    result = invoke(runner, cli, 'identities', '--ring', 'M2(F2)', '--scheme', 'thm23-7', '--d', '2')
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    validate_document(document, VERDICT_SCHEMA)
    assert document['cases_checked'] == 16
    assert document['ring'] == 'M2(F2)'


def test_identities_counterexample(runner, cli):
    result = invoke(runner, cli, 'identities', '--ring', 'M2(F2)', '--lhs', 'x*y', '--rhs', 'y*x')
    assert result.exit_code == 1
    document = json.loads(result.stdout)
    assert document['counterexample'] == {'x': '0,0,0,1', 'y': E21}
    assert document['cases_checked'] == 19


def test_identities_sampled(runner, cli):
    result = invoke(runner, cli, 'identities', '--ring', 'M3(F2)', '--scheme', 'defining',
                    '--mode', 'sampled', '--samples', '20', '--seed', '4')
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)['mode'] == 'sampled'


def test_certify_round_trip(runner, cli, tmp_path):
    path = tmp_path / 'cert.json'
    written = invoke(runner, cli, 'reduce', '--ring', 'M2(F2)', '--a', E12, '--out', str(path))
    assert written.exit_code == 0, written.output
    assert path.read_text(encoding='utf-8') == written.stdout

    checked = invoke(runner, cli, 'certify', '--verify', str(path))
    assert checked.exit_code == 0, checked.output
    assert json.loads(checked.stdout)['verified'] == {'axis': True, 'unit': True}


def test_certify_rejects_tampered_unit(runner, cli, tmp_path):
    path = tmp_path / 'cert.json'
    invoke(runner, cli, 'reduce', '--ring', 'M2(F2)', '--a', E12, '--out', str(path))
    document = json.loads(path.read_text(encoding='utf-8'))
    document['unit'] = '1,0,0,0'
    path.write_text(json.dumps(document), encoding='utf-8')

    result = invoke(runner, cli, 'certify', '--verify', str(path))
    assert result.exit_code == 1
    assert json.loads(result.stdout)['verified']['unit'] is False


def test_certify_rejects_malformed_file(runner, cli, tmp_path):
    path = tmp_path / 'cert.json'
    path.write_text(json.dumps({'ring': 'M2(F2)'}), encoding='utf-8')
    result = invoke(runner, cli, 'certify', '--verify', str(path))
    assert result.exit_code == 2


def test_certify_batch(runner, cli):
    result = invoke(runner, cli, 'certify', '--ring', 'M2(F3)', '--count', '10', '--seed', '7')
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document['failures'] == 0
    assert document['max_stabilized_at'] <= 2


def test_ci_mode_requires_seed(runner, cli):
    result = runner.invoke(cli, ['--env', 'ci', 'laws', '--suite', 'fact1', '--trials', '2'])
    assert result.exit_code == 2
    seeded = runner.invoke(cli, ['--env', 'ci', 'laws', '--suite', 'fact1', '--trials', '2', '--seed', '0'])
    assert seeded.exit_code == 0, seeded.output


def test_laws_command(runner, cli):
    result = invoke(runner, cli, 'laws', '--suite', 'lemma5', '--suite', 'fact1',
                    '--dim', '3', '--trials', '5', '--seed', '1')
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert [v['law'] for v in document['verdicts']] == ['lemma5', 'fact1']
    assert document['config'] == {'ring': 'M3(F2)', 'trials': 5, 'seed': 1, 'mode': 'constructive'}
    for verdict in document['verdicts']:
        validate_document(verdict, LAW_VERDICT_SCHEMA)


def test_laws_command_with_workers(runner, cli):
    args = ('laws', '--suite', 'lemma4', '--suite', 'fact2', '--dim', '4', '--trials', '12', '--seed', '3')
    single = invoke(runner, cli, *args)
    pooled = invoke(runner, cli, *args, '--workers', '3')
    assert single.exit_code == 0, single.output
    assert pooled.exit_code == 0, pooled.output
    assert single.stdout == pooled.stdout


def test_reduce_accepts_matrix_text(runner, cli):
    result = invoke(runner, cli, 'reduce', '--ring', 'M2(F2)', '--a', '2:2x2:[0,1,0,0]', '--b', E21)
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)['a'] == E12
    wrong = invoke(runner, cli, 'reduce', '--ring', 'M2(F2)', '--a', '3:2x2:[0,1,0,0]')
    assert wrong.exit_code == 2


@pytest.mark.parametrize('args', [
    ('--check', 'directly-finite'),
    ('--check', 'handelman'),
    ('--check', 'ehrlich'),
    ('--check', 'mainr-length'),
    ('--check', 'unit-regular', '--a', E12),
])
def test_props_command(runner, cli, args):
    result = invoke(runner, cli, 'props', '--ring', 'M2(F2)', *args)
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)['holds'] is True


def test_props_theorem23_over_several_rings(runner, cli):
    result = invoke(runner, cli, 'props', '--ring', 'M2(F2)', '--ring', 'M1(F2)xM1(F3)', '--check', 'theorem23')
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)['cases'] == 66


def test_props_strong_pi_index(runner, cli):
    result = invoke(runner, cli, 'props', '--ring', 'M2(F2)', '--check', 'strong-pi-index', '--a', E12)
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)['strong_pi_index'] == 2


def test_props_exploratory_always_succeeds(runner, cli):
    result = invoke(runner, cli, 'props', '--ring', 'M2(F2)', '--check', 'exploratory', '--n', '0')
    assert result.exit_code == 0, result.output


@pytest.mark.parametrize('args', [('--n', '0'), ('--n', '2', '--p', '3'), ('--base',)])
def test_example1_command(runner, cli, args):
    result = invoke(runner, cli, 'example1', *args)
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document['holds'] is True
    assert document['property'] == 'example1'
    extension = document['witness_or_counterexample']['extension']
    assert extension['dim'] == 2 * document['witness_or_counterexample']['instance']['dim']
    assert document['witness_or_counterexample']['checks']['W: t_0(a, c) = 0'] is True


def test_example1_rejects_non_prime(runner, cli):
    result = invoke(runner, cli, 'example1', '--p', '6')
    assert result.exit_code == 2


def test_main_exit_codes(capsys):
    assert main(['--env', 'testing', 'example1', '--n', '0']) == 0
    assert main(['--env', 'testing', 'identities', '--ring', 'M2(F2)', '--lhs', 'x*y', '--rhs', 'y*x']) == 1
    assert main(['--env', 'testing', 'reduce', '--ring', 'M2(F4)', '--a', E12]) == 2
    capsys.readouterr()
