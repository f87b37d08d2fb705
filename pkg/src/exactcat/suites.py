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
"""Seeded lemma suites.

A suite draws random instances of one lemma, runs the constructive lemma
on each and reports the first instance whose conclusion fails to verify.
Registered fixtures of a suite run before the sampled instances.
"""
import collections
import logging

from exactcat import codec, complexes, core, exactstruct, fgab, homlemmas

log = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
UNAVAILABLE = 'unavailable'


class UnknownSuite(core.ExactcatError, ValueError):

    """No lemma suite is registered under this name."""


class FixtureUnsupported(core.ExactcatError, ValueError):

    """The suite cannot rebuild an instance from a fixture."""


@codec.register('suite-report')
class SuiteReport(collections.namedtuple(
        'SuiteReport',
        'lemma structure verdict seed samples verified witness note')):

    __slots__ = ()

    @property
    def passed(self):
        return self.verdict == PASS

    def describe(self):
        if self.passed:
            return '{}: {} in {} ({} instances verified)'.format(
                self.lemma, self.verdict, self.structure, self.verified)
        return '{}: {} in {}: {}'.format(self.lemma, self.verdict,
                                        self.structure, self.note)

    @classmethod
    def __json_encode__(cls, data):
        return data._asdict()

    @classmethod
    def __json_decode__(cls, payload):
        return cls(**payload)


class Suite(metaclass=core.RegistryMeta):

    """Base of all lemma suites."""

    __unknown_error__ = UnknownSuite

    name = None
    default_structure = 'max'

    log = logging.getLogger(__module__ + '.' + __qualname__)  # noqa

    def fixtures(self, s):
        return []

    def sample(self, s, rng, bounds):
        raise NotImplementedError()

    def verify(self, s, instance):
        """Run the lemma on ``instance``; raise on a failed conclusion."""
        raise NotImplementedError()

    def roles(self, instance):
        """The morphisms of ``instance`` by role, for the report."""
        if hasattr(instance, '_asdict'):
            return dict(instance._asdict())
        return {'m{}'.format(k): m for k, m in enumerate(instance)}

    diagram = None

    def from_roles(self, s, roles):
        """Rebuild an instance from the output of :py:meth:`roles`."""
        if self.diagram is None:
            raise FixtureUnsupported('{} takes no fixtures'.format(self.name))
        return self.diagram(**roles)


def _acyclic(s, c, role):
    witness = complexes.is_acyclic(c, s)
    if witness is None:
        raise core.HypothesisFailure(
            'complex {} is not acyclic in {}'.format(role, s.name))
    return witness


def _morphism_roles(m):
    return {'i': m.source.inflation, 'd': m.source.deflation,
            'i_prime': m.target.inflation, 'd_prime': m.target.deflation,
            'f': m.f, 'g': m.g, 'h': m.h}


def _morphism_from_roles(s, roles):
    try:
        source = exactstruct.make_conflation(s, roles['i'], roles['d'])
        target = exactstruct.make_conflation(s, roles['i_prime'],
                                             roles['d_prime'])
    except exactstruct.NotAConflation as ex:
        raise homlemmas.MembershipFailure(str(ex), roles)
    return homlemmas.ConflationMorphism(source, target, roles['f'],
                                        roles['g'], roles['h'])


class FiveSuite(Suite):

    """The proof-built inverse of a morphism of conflations with
    invertible ends."""

    name = 'five'

    def sample(self, s, rng, bounds):
        return homlemmas.random_conflation_morphism(s, rng, bounds,
                                                    isomorphic_ends=True)

    def verify(self, s, m):
        inverse, _ = homlemmas.short_five_inverse(m)
        self.log.debug('inverse %s', inverse)

    def roles(self, m):
        return _morphism_roles(m)

    def from_roles(self, s, roles):
        return _morphism_from_roles(s, roles)


class NineSuite(Suite):

    name = 'nine'

    def sample(self, s, rng, bounds):
        return homlemmas.random_conflation_morphism(s, rng, bounds)

    def verify(self, s, m):
        homlemmas.nine_factorization(m)

    def roles(self, m):
        return _morphism_roles(m)

    def from_roles(self, s, roles):
        return _morphism_from_roles(s, roles)


class DoubleSuite(Suite):

    name = 'double'
    diagram = homlemmas.DoubleDiagram

    def sample(self, s, rng, bounds):
        return homlemmas.random_double_diagram(s, rng, bounds)

    def verify(self, s, diagram):
        homlemmas.double_conflation(s, diagram)


class ThreeByThreeSuite(Suite):

    name = 'three-by-three'
    diagram = homlemmas.NineDiagram
    default_structure = 'split'

    def fixtures(self, s):
        diagram = homlemmas.torsion_nine_diagram()
        if all(exactstruct.is_conflation(s, i, d) for i, d in (
                (diagram.f, diagram.f_prime), (diagram.g, diagram.g_prime),
                (diagram.h, diagram.h_prime))):
            return [diagram]
        return []

    def sample(self, s, rng, bounds):
        return homlemmas.random_nine_diagram(rng, bounds)

    def verify(self, s, diagram):
        homlemmas.three_by_three(s, diagram)


class PushoutEquivalenceSuite(Suite):

    """Half genuine pushout squares, half padded ones."""

    name = 'pushout-equiv'

    def sample(self, s, rng, bounds):
        perturb = rng.random() < 0.5
        square = homlemmas.random_pushout_square(s, rng, bounds, perturb)
        return None if square is None else (square, perturb)

    def verify(self, s, instance):
        square, perturbed = instance
        found = homlemmas.pushout_characterizations(square, s)
        if perturbed is not None and found.po == perturbed:
            raise core.LemmaFalsified(
                '{} square judged pushout={}'.format(
                    'padded' if perturbed else 'genuine', found.po))

    def roles(self, instance):
        return dict(instance[0]._asdict())

    def from_roles(self, s, roles):
        return homlemmas.PushoutSquare(**roles), None


class DeflationSumSuite(Suite):

    name = 'defl-sum'

    def sample(self, s, rng, bounds):
        context = s.context
        source = context.random_object(bounds, rng)
        middle = context.random_object(bounds, rng)
        g = exactstruct.sample_deflation(s, middle, rng, bounds) \
            if rng.random() < 0.6 else None
        if g is None:
            g = fgab.random_hom(middle, context.random_object(bounds, rng),
                                rng)
        return fgab.random_hom(source, middle, rng), g

    def verify(self, s, instance):
        homlemmas.defl_sum_reduction(instance[0], instance[1], s)

    def roles(self, instance):
        return {'f': instance[0], 'g': instance[1]}

    def from_roles(self, s, roles):
        return roles['f'], roles['g']


class ObscureSuite(Suite):

    """Cancellation of inflations in both of its forms."""

    name = 'obscure'

    def sample(self, s, rng, bounds):
        axiom = exactstruct.Axiom.lookup(rng.choice(('R3', 'obscure')))()
        morphisms = axiom.sample(s, rng, bounds)
        return None if morphisms is None else (axiom, morphisms)

    def verify(self, s, instance):
        homlemmas.require_axioms(s, 'R0', 'R1', 'R2', 'R3')
        axiom, morphisms = instance
        verdict = axiom.check(s, *morphisms)
        if not verdict.holds:
            raise core.LemmaFalsified('{}: {}'.format(axiom.name,
                                                      verdict.note))

    def roles(self, instance):
        axiom, morphisms = instance
        roles = dict(zip(axiom.roles, morphisms))
        roles['axiom'] = axiom.name
        return roles

    def from_roles(self, s, roles):
        roles = dict(roles)
        axiom = exactstruct.Axiom.lookup(roles.pop('axiom'))()
        return axiom, tuple(roles[role] for role in axiom.roles)


class ConeAcyclicSuite(Suite):

    """Cones of chain maps between acyclic complexes, cross-checked by the
    acyclicity oracle."""

    name = 'cone-acyclic'
    max_length = 5

    def sample(self, s, rng, bounds):
        source = complexes.random_acyclic_complex(
            s, rng, bounds, rng.randint(1, self.max_length))
        if rng.random() < 0.3:
            target = source
        else:
            target = complexes.random_acyclic_complex(
                s, rng, bounds, rng.randint(1, self.max_length),
                lo=rng.randint(-1, 1))
        f = complexes.random_chain_map(source.complex, target.complex, rng)
        return f, source.witness, target.witness

    def verify(self, s, instance):
        f, source_witness, target_witness = instance
        witness = complexes.cone_acyclicity(f, source_witness,
                                            target_witness, s)
        cone = complexes.mapping_cone(f)
        if complexes.is_acyclic(cone, s) is None:
            raise core.LemmaFalsified('oracle rejects the cone of {!r}'
                                      .format(f))
        return witness

    def roles(self, instance):
        return complexes.format_chain_map(instance[0])

    def from_roles(self, s, roles):
        f = complexes.parse_chain_map(roles)
        return (f, _acyclic(s, f.source, 'source'),
                _acyclic(s, f.target, 'target'))


class SectionDecompositionSuite(Suite):

    name = 'section-decomp'

    def sample(self, s, rng, bounds):
        context = s.context
        source = context.random_object(bounds, rng)
        section = fgab.hom_column(
            fgab.identity(source),
            fgab.random_hom(source, context.random_object(bounds, rng), rng))
        phi = fgab.random_automorphism(section.target, rng)[0]
        return (fgab.compose(phi, section),)

    def verify(self, s, instance):
        section, = instance
        split = exactstruct.section_decomposition(section)
        if s.membership(section) != s.membership(
                fgab.compose(split.iso, section)):
            raise core.LemmaFalsified('membership changed along [r; p]')

    def roles(self, instance):
        return {'section': instance[0]}

    def from_roles(self, s, roles):
        return (roles['section'],)


class InjectiveSuite(Suite):

    """Injectivity probes against the characterization of inflations by
    extension of maps into injective objects."""

    name = 'injective'
    probes = 12

    def sample(self, s, rng, bounds):
        context = s.context
        candidate = context.random_object(bounds, rng)
        source = context.random_object(bounds, rng)
        f = exactstruct.sample_inflation(s, source, rng, bounds) \
            if rng.random() < 0.5 else None
        if f is None:
            f = fgab.random_hom(source, context.random_object(bounds, rng),
                                rng)
        return candidate, f, rng.getrandbits(32)

    def verify(self, s, instance):
        candidate, f, seed = instance
        if homlemmas.injective_test(s, candidate, self.probes, seed) \
                and s.is_inflation(f) \
                and not homlemmas.is_injective_against(f, candidate):
            raise core.LemmaFalsified('map into an injective object does not'
                                      ' extend along an inflation')
        if homlemmas.injective_test(s, f.source, self.probes, seed):
            extends = homlemmas.hom_epi_characterization(s, f, [f.source])
            if extends != s.is_inflation(f):
                raise core.LemmaFalsified(
                    'Hom(f, A) onto: {}, f inflation: {}'.format(
                        extends, s.is_inflation(f)))

    def roles(self, instance):
        return {'injective': instance[0], 'f': instance[1]}


class KerInflationSuite(Suite):

    name = 'ker-inflation'
    diagram = homlemmas.KerInflationDiagram

    def sample(self, s, rng, bounds):
        return homlemmas.random_ker_inflation_diagram(s, rng, bounds)

    def verify(self, s, diagram):
        homlemmas.ker_inflation_lemma(s, diagram)


class SummandSuite(Suite):

    name = 'summands'

    def sample(self, s, rng, bounds):
        first = exactstruct.sample_conflation(s, rng, bounds)
        second = exactstruct.sample_conflation(s, rng, bounds)
        if first is None or second is None:
            return None
        return first, second

    def verify(self, s, instance):
        first, second = instance
        total = exactstruct.direct_sum_conflations(s, first, second)
        found = homlemmas.summand_conflations(
            total, (first.source, second.source),
            (first.middle, second.middle), (first.target, second.target))
        for expected, got in zip(instance, found):
            if (expected.inflation, expected.deflation) \
                    != (got.inflation, got.deflation):
                raise core.LemmaFalsified('summand differs from the original')

    def roles(self, instance):
        return {'i1': instance[0].inflation, 'd1': instance[0].deflation,
                'i2': instance[1].inflation, 'd2': instance[1].deflation}


class BracketSuite(Suite):

    name = 'bracket'

    def sample(self, s, rng, bounds):
        context = s.context
        source = context.random_object(bounds, rng)
        f = exactstruct.sample_inflation(s, source, rng, bounds)
        if f is None:
            return None
        return f, fgab.random_hom(source, context.random_object(bounds, rng),
                                  rng)

    def verify(self, s, instance):
        homlemmas.bracket_inflation(instance[0], instance[1], s)

    def roles(self, instance):
        return {'f': instance[0], 'f_prime': instance[1]}

    def from_roles(self, s, roles):
        return roles['f'], roles['f_prime']


class DirectSumSuite(SummandSuite):

    name = 'direct-sum'

    def verify(self, s, instance):
        first, second = instance
        exactstruct.direct_sum_conflations(s, first, second)
        homlemmas.biproduct_conflation(s, first.source, second.target)


class AcyclicSumSuite(Suite):

    """Acyclic complexes are closed under sums and shifts."""

    name = 'acyclic-sums'

    def sample(self, s, rng, bounds):
        return tuple(complexes.random_acyclic_complex(
            s, rng, bounds, rng.randint(1, 4), lo=rng.randint(-1, 1))
            for _ in range(2))

    def verify(self, s, instance):
        (c1, w1), (c2, w2) = instance
        total = complexes.direct_sum(c1, c2)
        if not complexes.sum_witness(c1, w1, c2, w2).verify(total, s):
            raise core.LemmaFalsified('sum witness fails')
        for k in (1, 2):
            if not complexes.shift_witness(w1, k).verify(
                    complexes.shift(c1, k), s):
                raise core.LemmaFalsified('shift witness fails for k={}'
                                          .format(k))
        if complexes.is_acyclic(total, s) is None:
            raise core.LemmaFalsified('oracle rejects the sum')

    def roles(self, instance):
        return {'first': complexes.format_complex(instance[0].complex),
                'second': complexes.format_complex(instance[1].complex)}

    def from_roles(self, s, roles):
        instance = []
        for key in ('first', 'second'):
            c = complexes.parse_complex(roles[key])
            instance.append(complexes.AcyclicComplex(c, _acyclic(s, c, key)))
        return tuple(instance)


def names():
    return Suite.names()


def run_suite(name, structure=None, samples=exactstruct.DEFAULT_SAMPLES,
              seed=exactstruct.DEFAULT_SEED, bounds=fgab.DEFAULT_BOUNDS,
              fixture=None):
    """Run the suite ``name`` and report the first failing instance.

    With ``fixture``, a mapping of roles as found in the witness of a
    report, only the instance rebuilt from it is verified.
    """
    suite = Suite.lookup(name)()
    if structure is None:
        structure = suite.default_structure
    s = exactstruct.structure_from_name(structure) \
        if isinstance(structure, str) else structure
    rng = fgab.as_rng(seed)

    def report(verdict, verified, witness=None, note=''):
        return SuiteReport(name, s.name, verdict, seed, samples, verified,
                           witness, note)

    def instances():
        if fixture is not None:
            try:
                yield suite.from_roles(s, fixture)
            except (KeyError, TypeError, AttributeError, ValueError) as ex:
                raise FixtureUnsupported(
                    "fixture does not fit {}: {!r}".format(name, ex))
            return
        yield from suite.fixtures(s)
        for _ in range(samples):
            instance = suite.sample(s, rng, bounds)
            if instance is not None:
                yield instance

    verified = 0
    try:
        for instance in instances():
            try:
                suite.verify(s, instance)
            except exactstruct.AxiomUnavailable:
                raise
            except (core.LemmaFalsified, core.HypothesisFailure) as ex:
                log.warning('%s failed in %s (seed %s): %s', name, s.name,
                            seed, ex)
                return report(FAIL, verified, suite.roles(instance), str(ex))
            verified += 1
    except exactstruct.AxiomUnavailable as ex:
        log.warning('%s unavailable in %s: %s', name, s.name, ex)
        return report(UNAVAILABLE, verified, note=str(ex))
    except core.HypothesisFailure as ex:
        log.warning('%s: hypothesis failed in %s: %s', name, s.name, ex)
        return report(FAIL, verified, dict(ex.diagram), str(ex))
    log.info('%s holds in %s: %s instances verified', name, s.name, verified)
    return report(PASS, verified, note='no counterexample found in {}'
                  ' instances'.format(verified))
