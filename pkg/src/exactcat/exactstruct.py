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
"""One-sided exact structures on finitely generated abelian groups.

A structure is a side (``right``: distinguished inflations, ``left``:
distinguished deflations), a :py:class:`CategoryContext` deciding which
objects belong and how cokernels are formed, and decidable membership
predicates.  The axioms are checked by :py:func:`check_axiom` against the
registered fixtures and a seeded stream of random instances; a failure
comes with a :py:class:`Witness` that :py:func:`replay` re-executes.
"""
import collections
import itertools
import logging
import random

import sympy

from exactcat import codec, core, fgab
from exactcat.fgab import FgAb, Hom, compose, identity, zero_hom
from exactcat.intlin import Mat

log = logging.getLogger(__name__)

RIGHT = 'right'
LEFT = 'left'

RIGHT_AXIOMS = ('R0', 'R0*', 'R1', 'R2', 'R3')
LEFT_AXIOMS = ('L0', 'L0*', 'L1', 'L2', 'L3')
AXIOMS = RIGHT_AXIOMS + LEFT_AXIOMS

# "EXACTCAT" in ASCII
DEFAULT_SEED = 0x4558414354434154
DEFAULT_SAMPLES = 200


class ObjectNotInCategory(core.ExactcatError, ValueError):

    """An object does not belong to the category of the context."""


class NotAMember(core.ExactcatError, ValueError):

    """A morphism is not in the distinguished class."""


class NotAConflation(core.ExactcatError, ValueError):

    """A pair of morphisms is not a conflation of the structure."""


class InvalidPrime(core.ExactcatError, ValueError):

    """The Isbell construction needs a prime."""


class UnknownStructure(core.ExactcatError, ValueError):

    """No structure is known under this name."""


class UnknownAxiom(core.ExactcatError, ValueError):

    """No axiom is registered under this name."""


class AxiomUnavailable(core.HypothesisFailure):

    """A construction needs an axiom the structure does not satisfy."""


class NotASection(core.HypothesisFailure):

    """The morphism has no left inverse."""


class ObjectClass(collections.namedtuple('ObjectClass',
                                         'name accepts adjust')):

    """A full subcategory.

    ``accepts`` decides membership of an object, ``adjust`` turns a list
    of random invariant factors into the factors of an accepted object.
    """

    __slots__ = ()

    def __call__(self, obj):
        return self.accepts(obj)

    def __and__(self, other):
        if other.name == 'all':
            return self
        if self.name == 'all':
            return other
        mine, theirs = set(self.name.split('&')), set(other.name.split('&'))
        if theirs <= mine:
            return self
        if mine <= theirs:
            return other
        return ObjectClass(
            '{}&{}'.format(self.name, other.name),
            lambda obj: self.accepts(obj) and other.accepts(obj),
            lambda factors: other.adjust(self.adjust(factors)))


ALL_OBJECTS = ObjectClass('all', lambda obj: True, list)
FREE_OBJECTS = ObjectClass(
    'free', FgAb.is_free,
    lambda factors: [factor for factor in factors if not factor])
FINITE_OBJECTS = ObjectClass(
    'finite', FgAb.is_finite,
    lambda factors: [factor for factor in factors if factor])

PREDICATES = {cls.name: cls
              for cls in (ALL_OBJECTS, FREE_OBJECTS, FINITE_OBJECTS)}


def object_predicate(name_or_class):
    if isinstance(name_or_class, ObjectClass):
        return name_or_class
    try:
        return PREDICATES[name_or_class]
    except KeyError:
        raise UnknownStructure('unknown object predicate: {!r}, known are {}'
                               .format(name_or_class,
                                       ', '.join(sorted(PREDICATES))))


def check_prime(p):
    if isinstance(p, bool) or not isinstance(p, int) or not sympy.isprime(p):
        raise InvalidPrime('not a prime: {!r}'.format(p))
    return p


def isbell_factor(factor, p):
    """Replace a factor with p-valuation v ≥ 2 by factor / p^(v-1)."""
    if not factor:
        return factor
    valuation = sympy.multiplicity(p, factor)
    if valuation < 2:
        return factor
    return factor // p ** (valuation - 1)


def isbell_objects(p):
    """Groups without elements of order p²."""
    check_prime(p)
    square = p * p
    return ObjectClass(
        'isbell:{}'.format(p),
        lambda obj: all(not factor or factor % square
                        for factor in obj.invariant_factors),
        lambda factors: [isbell_factor(factor, p) for factor in factors])


def isbell_cokernel(f, p):
    """The cokernel of ``f`` in the Isbell category for ``p``.

    The ambient cokernel G is divided by p times its p-primary part.
    """
    objects = isbell_objects(p)
    for obj in (f.source, f.target):
        if not objects.accepts(obj):
            raise ObjectNotInCategory('{} has an element of order {}'
                                      .format(obj.describe(), p * p))
    ambient = fgab.cokernel(f)
    old = ambient.obj.invariant_factors
    factors = [isbell_factor(factor, p) for factor in old]
    if tuple(factors) == old:
        return ambient
    obj = FgAb.from_invariants(factors)
    quotient = Hom(ambient.obj, obj, Mat.identity(len(factors)))
    return fgab.Cokernel(obj, compose(quotient, ambient.proj))


class CategoryContext:

    """The full subcategory a structure lives on.

    Limits are always formed as in abelian groups; cokernels either as in
    abelian groups or with the Isbell rule for ``prime``.
    """

    __slots__ = ('objects', 'prime')

    limit_rule = 'ambient'

    def __init__(self, objects=ALL_OBJECTS, prime=None):
        if prime is not None:
            objects = isbell_objects(prime) & objects
        self.objects = objects
        self.prime = prime

    @property
    def name(self):
        return self.objects.name

    @property
    def cokernel_rule(self):
        if self.prime is None:
            return 'ambient'
        return 'isbell({})'.format(self.prime)

    def contains(self, *objs):
        return all(self.objects.accepts(obj) for obj in objs)

    def require(self, *objs):
        for obj in objs:
            if not self.objects.accepts(obj):
                raise ObjectNotInCategory('{} is not in {}'.format(
                    obj.describe(), self.name))

    def kernel(self, f):
        return fgab.kernel(f)

    def cokernel(self, f):
        if self.prime is None:
            return fgab.cokernel(f)
        return isbell_cokernel(f, self.prime)

    def pushout(self, i, f):
        return fgab.pushout(i, f, cokernel=self.cokernel)

    def pullback(self, d, h):
        return fgab.pullback(d, h)

    def is_pushout_square(self, square):
        return fgab.is_pushout_square(square.i, square.f, square.i_prime,
                                      square.g, cokernel=self.cokernel)

    def is_kernel(self, i, d):
        """Decide whether ``i`` is a kernel of ``d``."""
        if i.target != d.source:
            raise fgab.ObjectMismatch('i and d are not composable')
        if not compose(d, i).is_zero():
            return False
        delta = fgab.factor_through(self.kernel(d).incl, i)
        return delta is not None and fgab.is_iso(delta)

    def is_cokernel(self, d, i):
        """Decide whether ``d`` is a cokernel of ``i`` in this context."""
        if i.target != d.source:
            raise fgab.ObjectMismatch('i and d are not composable')
        if not compose(d, i).is_zero():
            return False
        if not self.contains(i.source, i.target, d.target):
            return False
        w = fgab.extend_along(self.cokernel(i).proj, d)
        return w is not None and fgab.is_iso(w)

    def random_object(self, bounds=fgab.DEFAULT_BOUNDS, rng=None):
        factors = fgab.random_invariants(bounds, fgab.as_rng(rng))
        return FgAb.from_invariants(self.objects.adjust(factors))

    def __repr__(self):
        return '<CategoryContext {} cokernels={}>'.format(
            self.name, self.cokernel_rule)


AMBIENT = CategoryContext()


class ExactStructure:

    """A one-sided exact structure.

    The class on ``side`` is given by its predicate; the other class is
    derived unless given as well: for a right structure a deflation is a
    cokernel of an inflation, for a left structure an inflation is a
    kernel of a deflation.  Both predicates only see morphisms between
    objects of the context.
    """

    def __init__(self, name, side, context=AMBIENT, inflation=None,
                 deflation=None, certified=(), fixtures=None, base=None,
                 restriction=None):
        if side not in (RIGHT, LEFT):
            raise ValueError('side must be {!r} or {!r}'.format(RIGHT, LEFT))
        if (inflation if side == RIGHT else deflation) is None:
            raise ValueError('a {} structure needs its {} predicate'.format(
                side, 'inflation' if side == RIGHT else 'deflation'))
        self.name = name
        self.side = side
        self.context = context
        self._inflation = inflation
        self._deflation = deflation
        self.certified = frozenset(certified)
        self.fixtures = dict(fixtures or {})
        self.base = base
        self.restriction = restriction

    def is_inflation(self, i):
        if not self.context.contains(i.source, i.target):
            return False
        if self._inflation is not None:
            return bool(self._inflation(i))
        proj = self.context.cokernel(i).proj
        return self.is_deflation(proj) and self.context.is_kernel(i, proj)

    def is_deflation(self, d):
        if not self.context.contains(d.source, d.target):
            return False
        if self._deflation is not None:
            return bool(self._deflation(d))
        incl = self.context.kernel(d).incl
        return self.is_inflation(incl) and self.context.is_cokernel(d, incl)

    def membership(self, m):
        """The distinguished class."""
        if self.side == RIGHT:
            return self.is_inflation(m)
        return self.is_deflation(m)

    def fixtures_for(self, axiom):
        """Registered instances of ``axiom`` whose objects are in context."""
        return [instance for instance in self.fixtures.get(axiom, ())
                if all(self.context.contains(m.source, m.target)
                       for m in instance)]

    def __repr__(self):
        return '<ExactStructure {} ({}) on {}>'.format(
            self.name, self.side, self.context.name)


def is_section(s):
    left = fgab.extend_along(s, identity(s.source))
    return left is not None and compose(left, s) == identity(s.source)


def is_retraction(r):
    right = fgab.factor_through(r, identity(r.target))
    return right is not None and compose(r, right) == identity(r.target)


def standard_diagrams(p=2):
    """The small diagrams every structure is checked against first.

    They are built from ``·p: Z → Z`` and the projection ``Z → Z/p``.
    """
    z, zp, zero = FgAb.free(1), FgAb.cyclic(p), FgAb.zero()
    times_p = Hom(z, z, [[p]])
    pi = Hom(z, zp, [[1]])
    bracket = fgab.hom_column(times_p, pi)
    first = Hom(bracket.target, bracket.target, [[1, 0], [0, 0]])
    sum_legs = fgab.biproduct(z, zp)
    return {
        'R0*': [(zero_hom(zero, z),)],
        'R1': [(times_p, times_p)],
        'R2': [(times_p, pi)],
        'R3': [(bracket, first)],
        'L0*': [(zero_hom(z, zero),)],
        'L1': [(-identity(z), pi)],
        'L2': [(pi, zero_hom(zero, zp))],
        'L3': [(sum_legs.inj1,
                fgab.hom_row(pi, identity(zp)))],
    }


def split_structure():
    """Conflations are the split exact sequences."""
    return ExactStructure('split', RIGHT, AMBIENT,
                          inflation=is_section, deflation=is_retraction,
                          certified=AXIOMS, fixtures=standard_diagrams())


def max_structure():
    """Conflations are all kernel-cokernel pairs."""
    return ExactStructure('max', RIGHT, AMBIENT,
                          inflation=fgab.is_mono, deflation=fgab.is_epi,
                          certified=AXIOMS, fixtures=standard_diagrams())


def all_isos_structure():
    """Inflations are the isomorphisms, which violates R0*."""
    fixtures = standard_diagrams()
    return ExactStructure('all-isos', RIGHT, AMBIENT, inflation=fgab.is_iso,
                          certified=('R0', 'R1', 'R2'), fixtures=fixtures)


def isbell_structure(p):
    """The left exact structure on groups without elements of order p²."""
    check_prime(p)
    context = CategoryContext(prime=p)

    def inflation(i):
        return fgab.is_mono(i) \
            and context.contains(fgab.cokernel(i).obj)

    return ExactStructure('isbell:{}'.format(p), LEFT, context,
                          inflation=inflation, deflation=fgab.is_epi,
                          certified=LEFT_AXIOMS, fixtures=standard_diagrams(p))


def extension_closed_substructure(s, pred, name=None):
    """Restrict ``s`` to an extension-closed full subcategory.

    Members keep source, middle and cokernel (kernel) inside ``pred``.
    """
    pred = object_predicate(pred)
    context = CategoryContext(s.context.objects & pred,
                              prime=s.context.prime)

    def inflation(i):
        return s.is_inflation(i) and pred(s.context.cokernel(i).obj)

    def deflation(d):
        return s.is_deflation(d) and pred(s.context.kernel(d).obj)

    return ExactStructure(
        name or _substructure_name(s, 'ext-closed', pred), s.side, context,
        inflation=inflation, deflation=deflation, certified=s.certified,
        fixtures=s.fixtures, base=s, restriction=pred)


def induced_substructure(s, pred, name=None):
    """The members of ``s`` between objects of a cokernel-closed ``pred``."""
    pred = object_predicate(pred)
    context = CategoryContext(s.context.objects & pred,
                              prime=s.context.prime)
    return ExactStructure(
        name or _substructure_name(s, 'induced', pred), s.side, context,
        inflation=s.is_inflation, deflation=s.is_deflation,
        certified=s.certified, fixtures=s.fixtures, base=s, restriction=pred)


def _substructure_name(s, kind, pred):
    prefix = '' if s.name == 'max' else s.name + '/'
    return '{}{}:{}'.format(prefix, kind, pred.name)


_RESTRICTIONS = {
    'ext-closed': extension_closed_substructure,
    'induced': induced_substructure,
}


def structure_from_name(name):
    """Build a structure from ``split``, ``max``, ``all-isos``, ``isbell:p``,
    ``ext-closed:pred`` or ``induced:pred``.

    ``base/ext-closed:pred`` restricts another named structure.
    """
    base, slash, last = name.rpartition('/')
    kind, colon, arg = last.partition(':')
    if kind in _RESTRICTIONS and colon:
        parent = structure_from_name(base) if slash else max_structure()
        return _RESTRICTIONS[kind](parent, arg)
    if slash:
        raise UnknownStructure('only restrictions may follow "/": {!r}'
                               .format(name))
    if kind == 'isbell' and colon:
        try:
            p = int(arg)
        except ValueError:
            raise InvalidPrime('not a prime: {!r}'.format(arg))
        return isbell_structure(p)
    builders = {
        'split': split_structure,
        'max': max_structure,
        'all-isos': all_isos_structure,
    }
    if colon or kind not in builders:
        raise UnknownStructure(
            'unknown structure: {!r}, known are split, max, all-isos,'
            ' isbell:<p>, ext-closed:<pred>, induced:<pred>'.format(name))
    return builders[kind]()


class Conflation(collections.namedtuple('Conflation',
                                        'inflation deflation structure')):

    """A kernel-cokernel pair ``A ↣ B ↠ C`` certified in a structure."""

    __slots__ = ()

    @property
    def source(self):
        return self.inflation.source

    @property
    def middle(self):
        return self.inflation.target

    @property
    def target(self):
        return self.deflation.target

    def __repr__(self):
        return '<Conflation {} >-> {} ->> {} in {}>'.format(
            self.source.describe(), self.middle.describe(),
            self.target.describe(), self.structure.name)


def is_conflation(s, i, d):
    if i.target != d.source:
        raise fgab.ObjectMismatch('inflation and deflation are not composable')
    context = s.context
    if not context.contains(i.source, i.target, d.target):
        return False
    if not (context.is_kernel(i, d) and context.is_cokernel(d, i)):
        return False
    return s.membership(i if s.side == RIGHT else d)


def make_conflation(s, i, d):
    if not is_conflation(s, i, d):
        raise NotAConflation('({}, {}) is not a conflation in {}'
                             .format(i, d, s.name))
    return Conflation(i, d, s)


def conflation_of(s, m, role=None):
    """Complete an inflation by its cokernel or a deflation by its kernel.

    Without ``role`` the distinguished side is tried first.
    """
    roles = (role,) if role else \
        (('inflation', 'deflation') if s.side == RIGHT
         else ('deflation', 'inflation'))
    for kind in roles:
        if kind == 'inflation' and s.is_inflation(m):
            return Conflation(m, s.context.cokernel(m).proj, s)
        if kind == 'deflation' and s.is_deflation(m):
            return Conflation(s.context.kernel(m).incl, m, s)
    raise NotAMember('{} is not a{} in {}'.format(
        m, ' ' + role if role else 'n inflation or deflation', s.name))


def direct_sum_conflations(s, c1, c2):
    i = fgab.hom_sum(c1.inflation, c2.inflation)
    d = fgab.hom_sum(c1.deflation, c2.deflation)
    if not is_conflation(s, i, d):
        raise core.LemmaFalsified('direct sum of conflations is not a'
                                  ' conflation in {}'.format(s.name))
    return Conflation(i, d, s)


def _automorphism_pair(obj, rng):
    return fgab.random_automorphism(obj, rng)


def _inflation_candidate(s, source, rng, bounds):
    context = s.context
    kind = rng.choice(('section', 'section', 'embedding', 'embedding',
                       'automorphism'))
    if kind == 'automorphism':
        return _automorphism_pair(source, rng)[0]
    if kind == 'section':
        other = context.random_object(bounds, rng)
        section = fgab.hom_column(identity(source),
                                  fgab.random_hom(source, other, rng))
        return compose(_automorphism_pair(section.target, rng)[0], section)
    normal = source.normal_form()
    scales = [rng.choice((1, 2, 3, context.prime or 2))
              for _ in source.invariant_factors]
    target = FgAb.from_invariants([factor * scale for factor, scale
                                   in zip(source.invariant_factors, scales)])
    embedding = compose(Hom(normal.obj, target, Mat.diagonal(scales)),
                        normal.to)
    if rng.random() < 0.5:
        other = context.random_object(bounds, rng)
        embedding = fgab.hom_column(embedding,
                                    fgab.random_hom(source, other, rng))
    return embedding


def _quotient_factor(factor, rng):
    if factor:
        return rng.choice(sympy.divisors(factor))
    return rng.choice((0, 0, 2, 3, 4))


def _deflation_candidate(s, source, rng, bounds):
    context = s.context
    kind = rng.choice(('cokernel', 'cokernel', 'retraction', 'quotient',
                       'automorphism'))
    if kind == 'automorphism':
        return _automorphism_pair(source, rng)[0]
    if kind == 'cokernel':
        other = context.random_object(bounds, rng)
        return context.cokernel(fgab.random_hom(other, source, rng)).proj
    normal = source.normal_form()
    factors = source.invariant_factors
    if kind == 'retraction':
        keep = [k for k in range(len(factors)) if rng.random() < 0.6]
        target = FgAb.from_invariants([factors[k] for k in keep])
        action = Mat.identity(len(factors)).rows_at(keep)
    else:
        target = FgAb.from_invariants([_quotient_factor(factor, rng)
                                       for factor in factors])
        action = Mat.identity(len(factors))
    return compose(Hom(normal.obj, target, action), normal.to)


def sample_inflation(s, source, rng, bounds=fgab.DEFAULT_BOUNDS,
                     attempts=8):
    """A random inflation of ``s`` out of ``source`` or ``None``."""
    for _ in range(attempts):
        candidate = _inflation_candidate(s, source, rng, bounds)
        if s.is_inflation(candidate):
            return candidate
    return None


def sample_deflation(s, source, rng, bounds=fgab.DEFAULT_BOUNDS,
                     attempts=8):
    """A random deflation of ``s`` out of ``source`` or ``None``."""
    for _ in range(attempts):
        candidate = _deflation_candidate(s, source, rng, bounds)
        if s.is_deflation(candidate):
            return candidate
    return None


def sample_conflation(s, rng, bounds=fgab.DEFAULT_BOUNDS):
    """A random conflation of ``s`` or ``None``."""
    source = s.context.random_object(bounds, rng)
    if s.side == RIGHT:
        m = sample_inflation(s, source, rng, bounds)
        return None if m is None else conflation_of(s, m, 'inflation')
    m = sample_deflation(s, source, rng, bounds)
    return None if m is None else conflation_of(s, m, 'deflation')


class Verdict(collections.namedtuple('Verdict', 'holds vacuous note')):

    """Outcome of checking one instance."""

    __slots__ = ()


HOLDS = Verdict(True, False, 'holds')
VACUOUS = Verdict(True, True, 'premise not met')


def fails(note):
    return Verdict(False, False, note)


class Axiom(metaclass=core.RegistryMeta):

    """A property checked one instance at a time.

    ``sample`` draws an instance (a tuple of morphisms named by ``roles``)
    or returns ``None``; ``check`` decides it.
    """

    __unknown_error__ = UnknownAxiom

    name = None
    roles = ()

    def sample(self, s, rng, bounds):
        return ()

    def check(self, s, *morphisms):
        raise NotImplementedError()


class ZeroIdentityInflation(Axiom):
    name = 'R0'

    def check(self, s):
        if s.is_inflation(identity(FgAb.zero())):
            return HOLDS
        return fails('identity of the zero object is not an inflation')


class ZeroInflation(Axiom):
    name = 'R0*'
    roles = ('zero',)

    def sample(self, s, rng, bounds):
        return (zero_hom(FgAb.zero(), s.context.random_object(bounds, rng)),)

    def check(self, s, zero):
        if not zero.source.is_trivial():
            return VACUOUS
        if s.is_inflation(zero):
            return HOLDS
        return fails('0 -> {} is not an inflation'.format(
            zero.target.describe()))


class InflationComposition(Axiom):
    name = 'R1'
    roles = ('i', 'j')

    def sample(self, s, rng, bounds):
        i = sample_inflation(s, s.context.random_object(bounds, rng), rng,
                             bounds)
        if i is None:
            return None
        j = sample_inflation(s, i.target, rng, bounds)
        return None if j is None else (i, j)

    def check(self, s, i, j):
        if i.target != j.source:
            raise fgab.ObjectMismatch('i and j are not composable')
        if not (s.is_inflation(i) and s.is_inflation(j)):
            return VACUOUS
        if s.is_inflation(compose(j, i)):
            return HOLDS
        return fails('composite of two inflations is not an inflation')


class InflationPushout(Axiom):
    name = 'R2'
    roles = ('i', 'f')

    def sample(self, s, rng, bounds):
        i = sample_inflation(s, s.context.random_object(bounds, rng), rng,
                             bounds)
        if i is None:
            return None
        other = s.context.random_object(bounds, rng)
        return i, fgab.random_hom(i.source, other, rng)

    def check(self, s, i, f):
        if i.source != f.source:
            raise fgab.ObjectMismatch('i and f need a common source')
        if not (s.is_inflation(i) and s.context.contains(f.target)):
            return VACUOUS
        po = s.context.pushout(i, f)
        if not s.context.contains(po.obj):
            return fails('pushout {} does not exist in {}'.format(
                po.obj.describe(), s.context.name))
        if s.is_inflation(po.i_prime):
            return HOLDS
        return fails('pushout of an inflation is not an inflation')


class InflationCancellation(Axiom):
    name = 'R3'
    roles = ('i', 'p')

    def sample(self, s, rng, bounds):
        context = s.context
        source = context.random_object(bounds, rng)
        if rng.random() < 0.3:
            middle = context.random_object(bounds, rng)
            i = fgab.random_hom(source, middle, rng)
            return i, fgab.random_hom(middle, context.random_object(
                bounds, rng), rng)
        m = sample_inflation(s, source, rng, bounds)
        if m is None:
            return None
        other = context.random_object(bounds, rng)
        i = fgab.hom_column(m, fgab.random_hom(source, other, rng))
        p = fgab.biproduct(m.target, other).proj1
        phi, phi_inv = _automorphism_pair(i.target, rng)
        return compose(phi, i), compose(p, phi_inv)

    def check(self, s, i, p):
        if i.target != p.source:
            raise fgab.ObjectMismatch('i and p are not composable')
        if not (s.context.contains(i.target)
                and s.is_inflation(compose(p, i))):
            return VACUOUS
        if s.is_inflation(i):
            return HOLDS
        return fails('p∘i is an inflation but i is not')


class ZeroIdentityDeflation(Axiom):
    name = 'L0'

    def check(self, s):
        if s.is_deflation(identity(FgAb.zero())):
            return HOLDS
        return fails('identity of the zero object is not a deflation')


class ZeroDeflation(Axiom):
    name = 'L0*'
    roles = ('zero',)

    def sample(self, s, rng, bounds):
        return (zero_hom(s.context.random_object(bounds, rng), FgAb.zero()),)

    def check(self, s, zero):
        if not zero.target.is_trivial():
            return VACUOUS
        if s.is_deflation(zero):
            return HOLDS
        return fails('{} -> 0 is not a deflation'.format(
            zero.source.describe()))


class DeflationComposition(Axiom):
    name = 'L1'
    roles = ('d1', 'd2')

    def sample(self, s, rng, bounds):
        d1 = sample_deflation(s, s.context.random_object(bounds, rng), rng,
                              bounds)
        if d1 is None:
            return None
        d2 = sample_deflation(s, d1.target, rng, bounds)
        return None if d2 is None else (d1, d2)

    def check(self, s, d1, d2):
        if d1.target != d2.source:
            raise fgab.ObjectMismatch('d1 and d2 are not composable')
        if not (s.is_deflation(d1) and s.is_deflation(d2)):
            return VACUOUS
        if s.is_deflation(compose(d2, d1)):
            return HOLDS
        return fails('composite of two deflations is not a deflation')


class DeflationPullback(Axiom):
    name = 'L2'
    roles = ('d', 'h')

    def sample(self, s, rng, bounds):
        d = sample_deflation(s, s.context.random_object(bounds, rng), rng,
                             bounds)
        if d is None:
            return None
        other = s.context.random_object(bounds, rng)
        return d, fgab.random_hom(other, d.target, rng)

    def check(self, s, d, h):
        if d.target != h.target:
            raise fgab.ObjectMismatch('d and h need a common target')
        if not (s.is_deflation(d) and s.context.contains(h.source)):
            return VACUOUS
        pb = s.context.pullback(d, h)
        if not s.context.contains(pb.obj):
            return fails('pullback {} does not exist in {}'.format(
                pb.obj.describe(), s.context.name))
        if s.is_deflation(pb.p2):
            return HOLDS
        return fails('pullback of a deflation is not a deflation')


class DeflationCancellation(Axiom):
    name = 'L3'
    roles = ('i', 'p')

    def sample(self, s, rng, bounds):
        context = s.context
        source = context.random_object(bounds, rng)
        if rng.random() < 0.3:
            middle = context.random_object(bounds, rng)
            i = fgab.random_hom(source, middle, rng)
            return i, fgab.random_hom(middle, context.random_object(
                bounds, rng), rng)
        d = sample_deflation(s, source, rng, bounds)
        if d is None:
            return None
        other = context.random_object(bounds, rng)
        p = fgab.hom_row(d, fgab.random_hom(other, d.target, rng))
        i = fgab.biproduct(source, other).inj1
        phi, phi_inv = _automorphism_pair(p.source, rng)
        return compose(phi, i), compose(p, phi_inv)

    def check(self, s, i, p):
        if i.target != p.source:
            raise fgab.ObjectMismatch('i and p are not composable')
        if not (s.context.contains(i.source)
                and s.is_deflation(compose(p, i))):
            return VACUOUS
        if s.is_deflation(p):
            return HOLDS
        return fails('p∘i is a deflation but p is not')


class IsomorphismInflation(Axiom):
    name = 'iso-inflation'
    roles = ('phi',)

    def sample(self, s, rng, bounds):
        obj = s.context.random_object(bounds, rng)
        return (_automorphism_pair(obj, rng)[0],)

    def check(self, s, phi):
        if not fgab.is_iso(phi):
            return VACUOUS
        if s.is_inflation(phi):
            return HOLDS
        return fails('isomorphism is not an inflation')


class IsomorphismDeflation(IsomorphismInflation):
    name = 'iso-deflation'

    def check(self, s, phi):
        if not fgab.is_iso(phi):
            return VACUOUS
        if s.is_deflation(phi):
            return HOLDS
        return fails('isomorphism is not a deflation')


class SectionInflation(Axiom):

    """Sections have cokernels, retractions kernels, and both are members."""

    name = 'wic'
    roles = ('s',)

    def sample(self, s, rng, bounds):
        source = s.context.random_object(bounds, rng)
        if rng.random() < 0.2:
            return (identity(source),)
        other = s.context.random_object(bounds, rng)
        section = fgab.hom_column(identity(source),
                                  fgab.random_hom(source, other, rng))
        return (compose(_automorphism_pair(section.target, rng)[0], section),)

    def check(self, s, section):
        if not is_section(section):
            return VACUOUS
        try:
            decomposition = section_decomposition(section)
        except core.LemmaFalsified as ex:
            return fails(str(ex))
        r = decomposition.r
        complement = fgab.kernel(r)
        if not complement.obj.is_isomorphic(decomposition.cokernel):
            return fails('kernel of the retraction differs from the cokernel'
                         ' of the section')
        if not s.is_inflation(section):
            return fails('section is not an inflation')
        if not s.is_deflation(r):
            return fails('retraction is not a deflation')
        return HOLDS


class ExtensionClosure(Axiom):

    """Extensions of objects of the restriction stay inside it."""

    name = 'ext-closed'
    roles = ('i',)

    def _base(self, s):
        if s.base is None or s.restriction is None:
            raise AxiomUnavailable('substructure of a named structure')
        return s.base, s.restriction

    def sample(self, s, rng, bounds):
        base, _ = self._base(s)
        i = sample_inflation(base, s.context.random_object(bounds, rng), rng,
                             bounds)
        return None if i is None else (i,)

    def check(self, s, i):
        base, pred = self._base(s)
        if not (base.is_inflation(i) and pred(i.source)
                and pred(base.context.cokernel(i).obj)):
            return VACUOUS
        if pred(i.target):
            return HOLDS
        return fails('extension {} leaves {}'.format(i.target.describe(),
                                                     pred.name))


class CokernelClosure(ExtensionClosure):

    """Cokernels of morphisms inside the restriction stay inside it."""

    name = 'cokernel-closed'
    roles = ('f',)

    def sample(self, s, rng, bounds):
        self._base(s)
        source = s.context.random_object(bounds, rng)
        target = s.context.random_object(bounds, rng)
        return (fgab.random_hom(source, target, rng),)

    def check(self, s, f):
        _, pred = self._base(s)
        if not (pred(f.source) and pred(f.target)):
            return VACUOUS
        cokernel = fgab.cokernel(f).obj
        if pred(cokernel):
            return HOLDS
        return fails('cokernel {} leaves {}'.format(cokernel.describe(),
                                                    pred.name))


@codec.register('witness')
class Witness(collections.namedtuple(
        'Witness', 'axiom structure seed roles morphisms note')):

    """A serializable counterexample to one axiom instance.

    Objects are stored by their invariant factors and morphisms by their
    matrices in invariant coordinates, so a witness survives without the
    presentations it was found on.
    """

    __slots__ = ()

    @classmethod
    def __json_encode__(cls, data):
        objects = []

        def index(obj):
            for k, known in enumerate(objects):
                if known == obj:
                    return k
            objects.append(obj)
            return len(objects) - 1

        morphisms = []
        for role, hom in zip(data.roles, data.morphisms):
            morphisms.append({
                'role': role,
                'source': index(hom.source),
                'target': index(hom.target),
                'matrix': hom.canonical().tolist(),
            })
        return {
            'axiom': data.axiom,
            'structure': data.structure,
            'seed': data.seed,
            'objects': [list(obj.invariant_factors) for obj in objects],
            'morphisms': morphisms,
            'note': data.note,
        }

    @classmethod
    def __json_decode__(cls, payload):
        objects = [FgAb.from_invariants(factors)
                   for factors in payload['objects']]
        roles, morphisms = [], []
        for entry in payload['morphisms']:
            source, target = objects[entry['source']], objects[entry['target']]
            flat = [x for row in entry['matrix'] for x in row]
            roles.append(entry['role'])
            morphisms.append(Hom(source, target, Mat.from_flat(
                target.generators, source.generators, flat)))
        return cls(payload['axiom'], payload['structure'], payload['seed'],
                   tuple(roles), tuple(morphisms), payload.get('note', ''))

    def dumps(self):
        return codec.dumps(self)

    @classmethod
    def loads(cls, text):
        witness = codec.loads(text)
        if not isinstance(witness, cls):
            raise codec.MalformedWitness('document is not a witness')
        return witness


@codec.register('axiom-report')
class AxiomReport(collections.namedtuple(
        'AxiomReport',
        'axiom structure verdict samples premises seed bounds witness note')):

    """Outcome of :py:func:`check_axiom`; a failure carries a witness."""

    __slots__ = ()

    @property
    def passed(self):
        return self.verdict == 'pass'

    def describe(self):
        return '{} {}: {} ({})'.format(self.structure, self.axiom,
                                       self.verdict, self.note)

    @classmethod
    def __json_encode__(cls, data):
        return dict(data._asdict())

    @classmethod
    def __json_decode__(cls, payload):
        return cls(**payload)


def check_axiom(s, axiom, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                bounds=fgab.DEFAULT_BOUNDS):
    """Check ``axiom`` on the fixtures of ``s`` and ``samples`` random
    instances drawn from ``seed``.

    A pass means no counterexample was found, nothing more.
    """
    checker = Axiom.lookup(axiom)()
    rng = random.Random(seed)

    def drawn():
        for _ in range(samples):
            instance = checker.sample(s, rng, bounds)
            if instance is not None:
                yield instance

    tried = premises = 0
    for instance in itertools.chain(s.fixtures_for(axiom), drawn()):
        tried += 1
        verdict = checker.check(s, *instance)
        log.debug('%s %s instance %s: %s', s.name, axiom, tried,
                  verdict.note)
        if verdict.vacuous:
            continue
        premises += 1
        if not verdict.holds:
            witness = Witness(axiom, s.name, seed, checker.roles,
                              tuple(instance), verdict.note)
            log.warning('%s violates %s (seed %s): %s', s.name, axiom, seed,
                        verdict.note)
            return AxiomReport(axiom, s.name, 'fail', tried, premises, seed,
                               str(bounds), witness, verdict.note)
    note = 'no counterexample found in {} instances, {} with premises met'\
        .format(tried, premises)
    log.info('%s %s: pass (%s)', s.name, axiom, note)
    return AxiomReport(axiom, s.name, 'pass', tried, premises, seed,
                       str(bounds), None, note)


def replay(witness):
    """Re-execute the instance recorded in ``witness``."""
    s = structure_from_name(witness.structure)
    checker = Axiom.lookup(witness.axiom)()
    if len(witness.morphisms) != len(checker.roles):
        raise codec.MalformedWitness('{} takes {} morphisms, found {}'.format(
            witness.axiom, len(checker.roles), len(witness.morphisms)))
    return checker.check(s, *witness.morphisms)


def check_consequences(s, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                       bounds=fgab.DEFAULT_BOUNDS):
    """Identities and isomorphisms are members, and 0 → A for R0*."""
    axioms = ['iso-inflation', 'iso-deflation']
    if 'R0*' in s.certified:
        axioms.append('R0*')
    if 'L0*' in s.certified:
        axioms.append('L0*')
    return [check_axiom(s, axiom, samples, seed, bounds) for axiom in axioms]


def quasi_abelian_exactness_check(s, samples=DEFAULT_SAMPLES,
                                  seed=DEFAULT_SEED,
                                  bounds=fgab.DEFAULT_BOUNDS):
    """A strongly right exact structure has deflations stable under
    pullback; groups form a left quasi-abelian category."""
    if s.side != RIGHT:
        raise AxiomUnavailable('strongly right exact structure')
    for axiom in ('R0*', 'R3', 'L2'):
        report = check_axiom(s, axiom, samples, seed, bounds)
        if not report.passed:
            return report
    return report


def check_extension_closed(s, pred, samples=DEFAULT_SAMPLES,
                           seed=DEFAULT_SEED, bounds=fgab.DEFAULT_BOUNDS):
    return check_axiom(extension_closed_substructure(s, pred), 'ext-closed',
                       samples, seed, bounds)


def check_cokernel_closed(s, pred, samples=DEFAULT_SAMPLES,
                          seed=DEFAULT_SEED, bounds=fgab.DEFAULT_BOUNDS):
    return check_axiom(induced_substructure(s, pred), 'cokernel-closed',
                       samples, seed, bounds)


IsbellCounterexamples = collections.namedtuple('IsbellCounterexamples',
                                               'r1 r2 r3')


def isbell_counterexamples(p):
    """The diagrams showing that the inflations of the Isbell structure
    violate R1, R2 and R3, each verified before it is returned."""
    s = isbell_structure(p)
    diagrams = standard_diagrams(p)

    j, _ = diagrams['R1'][0]
    if not s.is_inflation(j) or s.is_inflation(compose(j, j)):
        raise core.LemmaFalsified('(·{0}, ·{0}) does not violate R1'
                                  .format(p))

    i, f = diagrams['R2'][0]
    po = s.context.pushout(i, f)
    square = fgab.PushoutSquare(i, f, po.i_prime, po.g)
    if not (square.commutes() and po.i_prime.is_zero()) \
            or s.is_inflation(po.i_prime):
        raise core.LemmaFalsified('pushout of ·{} does not violate R2'
                                  .format(p))

    bracket, first = diagrams['R3'][0]
    if not s.is_inflation(compose(first, bracket)) \
            or s.is_inflation(bracket):
        raise core.LemmaFalsified('[{}; π] does not violate R3'.format(p))
    return IsbellCounterexamples((j, j), square, (bracket, first))


SectionDecomposition = collections.namedtuple(
    'SectionDecomposition', 'r cokernel p v iso inverse')


def section_decomposition(s):
    """Decompose a section ``s: A → B`` as B ≅ A⊕C.

    Returns ``r`` with r∘s = 1, the cokernel ``p: B → C``, ``v`` with
    v∘p = 1 − s∘r and the isomorphism ``[r; p]`` with inverse ``[s, v]``.
    """
    source, middle = s.source, s.target
    r = fgab.extend_along(s, identity(source))
    if r is None or compose(r, s) != identity(source):
        raise NotASection('left inverse', {'s': s})
    cokernel = fgab.cokernel(s)
    p = cokernel.proj
    v = fgab.lift_through_cokernel(p, identity(middle) - compose(s, r))
    iso = fgab.hom_column(r, p)
    inverse = fgab.hom_row(s, v)
    if compose(iso, inverse) != identity(iso.target) \
            or compose(inverse, iso) != identity(middle):
        raise core.LemmaFalsified('[r; p] is not inverse to [s, v]')
    log.debug('section %s splits off %s', s, cokernel.obj.describe())
    return SectionDecomposition(r, cokernel.obj, p, v, iso, inverse)


def wic_equivalence_check(samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                          bounds=fgab.DEFAULT_BOUNDS, structure=None):
    return check_axiom(structure or max_structure(), 'wic', samples, seed,
                       bounds)
