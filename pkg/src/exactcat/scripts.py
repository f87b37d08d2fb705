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
"""CLI scripts."""
import collections
import concurrent.futures
import functools
import logging
import logging.config
import pkgutil
import time

import click
from ruamel.yaml import YAML

from exactcat import codec, exactstruct, fgab, suites

log = logging.getLogger(__name__)

LOGGING_LEVEL_NAMES = [logging.getLevelName(level) for level in sorted((
    logging.NOTSET, logging.DEBUG, logging.INFO,
    logging.WARN, logging.ERROR, logging.CRITICAL,
))]
DEFAULT_LOGGING_LEVEL = logging.getLevelName(logging.WARNING)

REPORT_SCHEMA = 1

# axioms the registered counterexample structures are known to violate
KNOWN_FAILURES = {
    'isbell': frozenset(('R1', 'R2', 'R3')),
    'all-isos': frozenset(('R0*', 'R3')),
}

EXIT_OK = 0
EXIT_UNEXPECTED = 1


def load_log_config(stream=None):
    """Read a logging configuration, the packaged default if no stream."""
    text = stream.read() if stream else \
        pkgutil.get_data('exactcat', 'logging.yaml').decode('utf-8')
    return YAML(typ='safe').load(text)


def setup_logging(debug, log_config, log_level=DEFAULT_LOGGING_LEVEL):
    config = load_log_config(log_config)
    config.setdefault('root', {})['level'] = log_level
    logging.config.dictConfig(config)
    if debug:
        logging.getLogger('exactcat').setLevel(logging.DEBUG)
    return config


@codec.register('run-report')
class RunReport(collections.namedtuple(
        'RunReport', 'schema command config results wall_time')):

    """Everything one CLI run produced, with its configuration."""

    __slots__ = ()

    @classmethod
    def __json_encode__(cls, data):
        return dict(data._asdict())

    @classmethod
    def __json_decode__(cls, payload):
        return cls(**payload)


class BoundsType(click.ParamType):

    name = 'r,t,e'

    def convert(self, value, param, ctx):
        if isinstance(value, fgab.Bounds):
            return value
        try:
            return fgab.Bounds.parse(value)
        except ValueError as ex:
            self.fail(str(ex), param, ctx)


def _structure(ctx, param, value):
    if value is None:
        return None
    try:
        exactstruct.structure_from_name(value)
    except (exactstruct.UnknownStructure, exactstruct.InvalidPrime,
            exactstruct.UnknownAxiom, ValueError) as ex:
        raise click.BadParameter(str(ex))
    return value


def _axioms(ctx, param, value):
    if not value:
        return list(exactstruct.AXIOMS)
    names = [name.strip() for name in value.split(',') if name.strip()]
    for name in names:
        try:
            exactstruct.Axiom.lookup(name)
        except exactstruct.UnknownAxiom as ex:
            raise click.BadParameter(str(ex))
    return names


def _lemma(ctx, param, value):
    try:
        suites.Suite.lookup(value)
    except suites.UnknownSuite as ex:
        raise click.BadParameter(str(ex))
    return value


def run_options(func):
    """The sampling and output options shared by the checking commands."""
    options = [
        click.option('--samples', default=exactstruct.DEFAULT_SAMPLES,
                     type=click.IntRange(min=1), show_default=True,
                     help='Random instances per check.'),
        click.option('--seed', default=exactstruct.DEFAULT_SEED,
                     type=click.INT, envvar='EXACTCAT_SEED',
                     show_default=True, help='Seed of the random instances.'),
        click.option('--bounds', default=str(fgab.DEFAULT_BOUNDS),
                     type=BoundsType(), show_default=True,
                     help='Max free rank, max torsion factors, max order.'),
        click.option('output_format', '--format', default='text',
                     type=click.Choice(['text', 'json']),
                     help='Report format.'),
        click.option('--jobs', default=1, type=click.IntRange(min=1),
                     help='Run independent checks in parallel.'),
        click.option('--timing/--no-timing', default=False,
                     help='Report the wall time.'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def run_checks(checks, jobs):
    """Run ``checks``; the results keep the order of ``checks``."""
    if jobs == 1:
        return [check() for check in checks]
    with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(lambda check: check(), checks))


def emit(report, output_format):
    if output_format == 'json':
        click.echo(codec.dumps(report), nl=False)
        return
    for result in report.results:
        click.echo(result.describe())
    if report.wall_time is not None:
        click.echo('wall time: {:.3f}s'.format(report.wall_time))


def run():
    """Main entry point."""
    return cli(obj={}, auto_envvar_prefix='EXACTCAT')     # noqa


@click.group()
@click.option('--debug/--no-debug', default=False,
              help='Enable or disable debug.')
@click.option('--log-config',
              type=click.File('r'),
              default=None,
              help='Logging configuration in yaml format.')
@click.option('--log-level', default=DEFAULT_LOGGING_LEVEL,
              type=click.Choice(LOGGING_LEVEL_NAMES),
              help='The logging level, defaults to `{}`'.format(
                  DEFAULT_LOGGING_LEVEL))
@click.pass_context
def cli(ctx, debug, log_config, log_level):
    """Check exact structures on finitely generated abelian groups."""
    ctx.ensure_object(dict)
    ctx.obj['log_config'] = setup_logging(debug=debug, log_config=log_config,
                                          log_level=log_level)
    ctx.obj['debug'] = debug


def expected_failures(structure, expect_paper):
    if not expect_paper:
        return frozenset()
    kind = structure.rpartition('/')[2].partition(':')[0]
    return KNOWN_FAILURES.get(kind, frozenset())


@cli.command('check-axioms')
@click.option('--structure', default='max', callback=_structure,
              help='split, max, all-isos, isbell:<p>, ext-closed:<pred> or'
              ' induced:<pred>.')
@click.option('--axioms', default=None, callback=_axioms,
              help='Comma separated axiom names, all ten by default.')
@click.option('--expect-paper', is_flag=True, default=False,
              help='Expect the known failures of counterexample structures.')
@click.option('--witness-out', type=click.Path(dir_okay=False),
              default=None, help='Write the first failure witness here.')
@run_options
@click.pass_context
def cli_check_axioms(ctx, structure, axioms, expect_paper, witness_out,
                     samples, seed, bounds, output_format, jobs, timing):
    """Check axioms of a structure on seeded random instances."""
    s = exactstruct.structure_from_name(structure)
    axioms = sorted(set(axioms))
    started = time.perf_counter()
    results = run_checks(
        [functools.partial(exactstruct.check_axiom, s, axiom, samples, seed,
                           bounds) for axiom in axioms], jobs)
    failures = expected_failures(structure, expect_paper)
    unexpected = [report for report in results
                  if report.passed == (report.axiom in failures)]
    config = {'structure': s.name, 'axioms': axioms, 'samples': samples,
              'seed': seed, 'bounds': str(bounds),
              'expect_paper': expect_paper}
    report = RunReport(REPORT_SCHEMA, 'check-axioms', config, results,
                       time.perf_counter() - started if timing else None)
    emit(report, output_format)

    witnesses = [r.witness for r in unexpected + results
                 if r.witness is not None]
    if witness_out and witnesses:
        with open(witness_out, 'w') as stream:
            stream.write(witnesses[0].dumps())
        log.info('witness written to %s', witness_out)
    for r in unexpected:
        log.warning('unexpected verdict %s for %s', r.verdict, r.axiom)
    ctx.exit(EXIT_UNEXPECTED if unexpected else EXIT_OK)


def fixture_roles(document):
    """The roles of a fixture document.

    Accepts a plain role mapping or a report of a failing run, whose first
    witness is used.
    """
    if isinstance(document, RunReport):
        if not document.results:
            raise suites.FixtureUnsupported('the report holds no results')
        document = document.results[0]
    if isinstance(document, suites.SuiteReport):
        document = document.witness
    if not isinstance(document, dict) or not document:
        raise suites.FixtureUnsupported('no roles in the fixture')
    return document


@cli.command('verify-lemma')
@click.argument('lemma', callback=_lemma)
@click.option('--structure', default=None, callback=_structure,
              help='Structure to run in, the suite default if omitted.')
@click.option('--fixture', type=click.File('r'), default=None,
              help='Run a single instance, as reported by a failing run.')
@run_options
@click.pass_context
def cli_verify_lemma(ctx, lemma, structure, fixture, samples, seed, bounds,
                     output_format, jobs, timing):
    """Run the seeded suite of a constructive lemma."""
    roles = None
    if fixture is not None:
        try:
            roles = fixture_roles(codec.loads(fixture.read()))
        except (codec.MalformedWitness, suites.FixtureUnsupported) as ex:
            raise click.BadParameter(str(ex), param_hint='--fixture')
    started = time.perf_counter()
    try:
        result = suites.run_suite(lemma, structure, samples, seed, bounds,
                                  fixture=roles)
    except (suites.FixtureUnsupported, codec.MalformedWitness) as ex:
        raise click.BadParameter(str(ex), param_hint='--fixture')
    config = {'lemma': lemma, 'structure': result.structure,
              'samples': samples, 'seed': seed, 'bounds': str(bounds),
              'fixture': fixture is not None}
    report = RunReport(REPORT_SCHEMA, 'verify-lemma', config, [result],
                       time.perf_counter() - started if timing else None)
    emit(report, output_format)
    ctx.exit(EXIT_OK if result.passed else EXIT_UNEXPECTED)


def describe_witness(witness):
    lines = ['{} in {} (seed {})'.format(witness.axiom, witness.structure,
                                         witness.seed)]
    for role, hom in zip(witness.roles, witness.morphisms):
        lines.append('  {}: {} -> {} {}'.format(
            role, hom.source.describe(), hom.target.describe(),
            hom.canonical().tolist()))
    return '\n'.join(lines)


@cli.command('replay')
@click.argument('witness_file', type=click.File('r'))
@click.option('output_format', '--format', default='text',
              type=click.Choice(['text', 'json']), help='Report format.')
@click.pass_context
def cli_replay(ctx, witness_file, output_format):
    """Re-execute the instance recorded in a witness file.

    Exits 0 when the instance satisfies its axiom and 1 when the recorded
    failure is reproduced.
    """
    try:
        witness = exactstruct.Witness.loads(witness_file.read())
        verdict = exactstruct.replay(witness)
    except (codec.MalformedWitness, exactstruct.UnknownStructure,
            exactstruct.UnknownAxiom, exactstruct.InvalidPrime,
            fgab.IllDefinedMorphism) as ex:
        raise click.BadParameter(str(ex), param_hint='WITNESS_FILE')
    if output_format == 'json':
        click.echo(codec.dumps({'schema': REPORT_SCHEMA, 'command': 'replay',
                                'witness': witness, 'holds': verdict.holds,
                                'note': verdict.note}), nl=False)
    else:
        click.echo(describe_witness(witness))
        click.echo('holds: {}'.format(verdict.note) if verdict.holds
                   else 'reproduced: {}'.format(verdict.note))
    ctx.exit(EXIT_OK if verdict.holds else EXIT_UNEXPECTED)
