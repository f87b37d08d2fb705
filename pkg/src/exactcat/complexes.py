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
"""Bounded chain complexes over a one-sided exact structure.

A complex is acyclic when every differential ``dⁿ⁻¹`` factors as a
deflation ``A^{n-1} ↠ Zⁿ`` followed by an inflation ``Zⁿ ↣ Aⁿ`` that is a
kernel of ``dⁿ``.  :py:class:`AcyclicityWitness` records these
factorizations; :py:func:`cone_acyclicity` builds one for a mapping cone
out of witnesses for its ends, using only the lemmas of
:py:mod:`exactcat.homlemmas`.

Shifts use the sign convention ``(A[k])ⁿ = A^{n+k}`` with differential
``(−1)ᵏ d^{n+k}``.
"""
import collections
import logging

from exactcat import codec, core, exactstruct, fgab, homlemmas, intlin
from exactcat.fgab import (FgAb, Hom, biproduct, compose, hom_sum, identity,
                           zero_hom)
from exactcat.intlin import Mat

log = logging.getLogger(__name__)

ZERO = FgAb.zero()


class NotAComplex(core.ExactcatError, ValueError):

    """Differentials do not fit or do not compose to zero."""


class NotAChainMap(core.ExactcatError, ValueError):

    """Components do not fit or do not commute with the differentials."""


class ChainComplex:

    """A bounded complex ``A^lo → … → A^hi``.

    ``differentials[k]`` is ``d^{lo+k}: A^{lo+k} → A^{lo+k+1}``; objects
    outside the support are zero, and so are the differentials touching
    them.
    """

    __slots__ = ('lo', 'objects', 'differentials')

    def __init__(self, lo, objects, differentials=()):
        objects = tuple(objects)
        differentials = tuple(differentials)
        if len(differentials) != max(len(objects) - 1, 0):
            raise NotAComplex('{} objects need {} differentials, got {}'
                              .format(len(objects), max(len(objects) - 1, 0),
                                      len(differentials)))
        for k, d in enumerate(differentials):
            if d.source != objects[k] or d.target != objects[k + 1]:
                raise NotAComplex('d^{} does not fit the objects'
                                  .format(lo + k))
        for k in range(len(differentials) - 1):
            if not compose(differentials[k + 1], differentials[k]).is_zero():
                raise NotAComplex('d^{0}∘d^{1} is not zero'
                                  .format(lo + k + 1, lo + k))
        self.lo = lo
        self.objects = objects
        self.differentials = differentials

    @classmethod
    def concentrated(cls, obj, degree=0):
        return cls(degree, [obj])

    @classmethod
    def from_differentials(cls, lo, differentials):
        differentials = list(differentials)
        if not differentials:
            raise NotAComplex('no differentials given')
        objects = [d.source for d in differentials] \
            + [differentials[-1].target]
        return cls(lo, objects, differentials)

    @property
    def hi(self):
        return self.lo + len(self.objects) - 1

    @property
    def support(self):
        return self.lo, self.hi

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def obj(self, n):
        if self.lo <= n <= self.hi:
            return self.objects[n - self.lo]
        return ZERO

    def d(self, n):
        """``dⁿ: Aⁿ → A^{n+1}``."""
        if self.lo <= n < self.hi:
            return self.differentials[n - self.lo]
        return zero_hom(self.obj(n), self.obj(n + 1))

    def is_zero(self):
        return all(obj.is_trivial() for obj in self.objects)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self.lo, self.objects, self.differentials) \
            == (other.lo, other.objects, other.differentials)

    def __hash__(self):
        return hash((self.lo, self.objects))

    def __repr__(self):
        return '<ChainComplex [{}, {}]: {}>'.format(
            self.lo, self.hi,
            ' → '.join(obj.describe() for obj in self.objects))


class ChainMap:

    """Components ``fⁿ: Aⁿ → Bⁿ``; missing degrees are zero."""

    __slots__ = ('source', 'target', 'components')

    def __init__(self, source, target, components=None):
        components = dict(components or {})
        for n, f in components.items():
            if f.source != source.obj(n) or f.target != target.obj(n):
                raise NotAChainMap('f^{} does not fit the complexes'.format(n))
        self.source = source
        self.target = target
        self.components = components
        for n in range(min(source.lo, target.lo) - 1,
                       max(source.hi, target.hi) + 1):
            if compose(target.d(n), self[n]) \
                    != compose(self[n + 1], source.d(n)):
                raise NotAChainMap('f does not commute with d^{}'.format(n))

    @classmethod
    def identity(cls, c):
        return cls(c, c, {n: identity(c.obj(n)) for n in c.degrees()})

    @classmethod
    def zero(cls, source, target):
        return cls(source, target)

    def __getitem__(self, n):
        if n in self.components:
            return self.components[n]
        return zero_hom(self.source.obj(n), self.target.obj(n))

    def degrees(self):
        return range(max(self.source.lo, self.target.lo),
                     min(self.source.hi, self.target.hi) + 1)

    def __repr__(self):
        return '<ChainMap {!r} -> {!r}>'.format(self.source, self.target)


Cycle = collections.namedtuple('Cycle', 'obj incl proj')
Cycle.__doc__ = """``Zⁿ`` with ``incl: Zⁿ ↣ Aⁿ`` and
``proj: A^{n-1} ↠ Zⁿ``."""


class AcyclicityWitness(collections.namedtuple('AcyclicityWitness',
                                               'lo cycles')):

    """The factorizations ``d^{n-1} = inclⁿ∘projⁿ`` for ``n`` from ``lo``
    up to one past the top of the complex."""

    __slots__ = ()

    @property
    def hi(self):
        return self.lo + len(self.cycles) - 1

    def cycle(self, c, n):
        if self.lo <= n <= self.hi:
            return self.cycles[n - self.lo]
        return Cycle(ZERO, zero_hom(ZERO, c.obj(n)),
                     zero_hom(c.obj(n - 1), ZERO))

    def defect(self, c, s):
        """The first degree whose factorization does not hold."""
        for n in range(c.lo, c.hi + 2):
            if not _cycle_holds(c, s, n, self.cycle(c, n)):
                return n
        return None

    def verify(self, c, s):
        return self.defect(c, s) is None

    def conflation(self, c, s, n):
        """``Zⁿ ↣ Aⁿ ↠ Z^{n+1}``."""
        return exactstruct.make_conflation(s, self.cycle(c, n).incl,
                                           self.cycle(c, n + 1).proj)


def _cycle_holds(c, s, n, cycle):
    context = s.context
    incl, proj = cycle.incl, cycle.proj
    if incl.target != c.obj(n) or proj.source != c.obj(n - 1) \
            or incl.source != proj.target:
        return False
    if compose(incl, proj) != c.d(n - 1):
        return False
    return s.is_inflation(incl) and context.is_kernel(incl, c.d(n)) \
        and s.is_deflation(proj) and context.is_cokernel(proj, c.d(n - 2))


def _factor(c, s, n):
    proj = s.context.cokernel(c.d(n - 2)).proj
    incl = fgab.extend_along(proj, c.d(n - 1))
    if incl is None:
        return None
    cycle = Cycle(proj.target, incl, proj)
    return cycle if _cycle_holds(c, s, n, cycle) else None


def acyclicity_defect(c, s):
    """The first degree ``n`` where ``d^{n-1}`` has no admissible
    factorization, or ``None``."""
    for n in range(c.lo, c.hi + 2):
        if _factor(c, s, n) is None:
            return n
    return None


def is_acyclic(c, s):
    """An :py:class:`AcyclicityWitness` for ``c`` in ``s`` or ``None``."""
    cycles = []
    for n in range(c.lo, c.hi + 2):
        cycle = _factor(c, s, n)
        if cycle is None:
            log.info('%r is not acyclic in %s at degree %s', c, s.name, n)
            return None
        cycles.append(cycle)
    return AcyclicityWitness(c.lo, tuple(cycles))


def mapping_cone(f):
    """``Cⁿ = A^{n+1}⊕Bⁿ`` with ``dⁿ = [[−d_A^{n+1}, 0], [f^{n+1}, d_Bⁿ]]``."""
    a, b = f.source, f.target
    lo, hi = min(a.lo - 1, b.lo), max(a.hi - 1, b.hi)
    objects = [biproduct(a.obj(n + 1), b.obj(n)).obj
               for n in range(lo, hi + 1)]
    differentials = []
    for n in range(lo, hi):
        action = Mat.block([
            [-a.d(n + 1).action,
             Mat.zeros(a.obj(n + 2).generators, b.obj(n).generators)],
            [f[n + 1].action, b.d(n).action]])
        differentials.append(Hom(objects[n - lo], objects[n + 1 - lo],
                                 action, check=False))
    return ChainComplex(lo, objects, differentials)


def _cone_order(b, a):
    """``σ(b, a) = (−a, b)`` from ``B⊕A`` to ``A⊕B``."""
    source, target = biproduct(b, a), biproduct(a, b)
    return compose(target.inj1, -source.proj2) \
        + compose(target.inj2, source.proj1)


def cone_acyclicity(f, source_witness, target_witness, s):
    """An acyclicity witness for the cone of ``f`` between acyclic
    complexes.

    For every degree the map of conflations
    ``(gⁿ, fⁿ, g^{n+1}): (Z_Aⁿ ↣ Aⁿ ↠ Z_A^{n+1}) → (Z_Bⁿ ↣ Bⁿ ↠ Z_B^{n+1})``
    is factored through ``Z_Bⁿ ↣ Dⁿ ↠ Z_A^{n+1}``; the objects ``Dⁿ`` are
    the cycles of the cone and the double conflation lemma yields
    ``Dⁿ ↣ Cⁿ ↠ D^{n+1}``.
    """
    a, b = f.source, f.target
    for name, c, witness in (('source', a, source_witness),
                             ('target', b, target_witness)):
        defect = witness.defect(c, s)
        if defect is not None:
            raise homlemmas.MembershipFailure(
                '{} witness holds at degree {}'.format(name, defect))
    cone = mapping_cone(f)
    degrees = range(cone.lo, cone.hi + 2)

    def conflation(c, witness, n):
        try:
            return witness.conflation(c, s, n)
        except exactstruct.NotAConflation:
            raise homlemmas.MembershipFailure(
                'cycles of {!r} form a conflation at degree {}'.format(c, n))

    factors = {}
    for n in degrees:
        za, zb = source_witness.cycle(a, n), target_witness.cycle(b, n)
        g = fgab.restrict_through_kernel(zb.incl, compose(f[n], za.incl))
        g_next = fgab.restrict_through_kernel(
            target_witness.cycle(b, n + 1).incl,
            compose(f[n + 1], source_witness.cycle(a, n + 1).incl))
        m = homlemmas.ConflationMorphism(conflation(a, source_witness, n),
                                         conflation(b, target_witness, n),
                                         g, f[n], g_next)
        factors[n] = homlemmas.nine_factorization(m)
        log.debug('cone cycles at degree %s: %s', n,
                  factors[n].middle.middle.describe())

    incls, projs = {}, {}
    for n in degrees:
        if n > cone.hi:
            continue
        here, there = factors[n], factors[n + 1]
        diagram = homlemmas.DoubleDiagram(
            i=here.middle.inflation, d=here.middle.deflation,
            j=source_witness.cycle(a, n + 1).incl,
            i_prime=target_witness.cycle(b, n).incl,
            d_prime=target_witness.cycle(b, n + 1).proj,
            j_prime=there.middle.inflation,
            g=here.lower.g, h=there.upper.f, f=there.upper.g)
        double = homlemmas.double_conflation(s, diagram)
        sigma = _cone_order(b.obj(n), a.obj(n + 1))
        moved = homlemmas.transport_conflation(double, sigma)
        incls[n], projs[n + 1] = moved.inflation, moved.deflation

    cycles = []
    for n in degrees:
        obj = factors[n].middle.middle
        incl = incls.get(n, zero_hom(obj, cone.obj(n)))
        proj = projs.get(n, zero_hom(cone.obj(n - 1), obj))
        cycles.append(Cycle(obj, incl, proj))
    witness = AcyclicityWitness(cone.lo, tuple(cycles))
    defect = witness.defect(cone, s)
    if defect is not None:
        raise core.LemmaFalsified(
            'cone witness fails at degree {}'.format(defect))
    return witness


def nullhomotopy(f):
    """Components ``hⁿ: Aⁿ → B^{n-1}`` with
    ``fⁿ = d_B^{n-1}∘hⁿ + h^{n+1}∘d_Aⁿ``, or ``None``.

    All degrees are solved together as one integer system: the unknowns
    are the coefficients of ``hⁿ`` on generators of the Hom groups, each
    equation row lives in invariant coordinates of ``Bⁿ`` with a slack
    variable for its torsion.
    """
    a, b = f.source, f.target
    generators = {
        n: fgab.hom_generators(a.obj(n), b.obj(n - 1))
        for n in range(max(a.lo, b.lo + 1), min(a.hi, b.hi + 1) + 1)}
    variables = [(n, k) for n in sorted(generators)
                 for k in range(len(generators[n]))]
    rows, targets, slack = [], [], []
    for n in range(max(a.lo, b.lo), min(a.hi, b.hi) + 1):
        to_normal = b.obj(n).to_normal
        contributions = []
        for m, k in variables:
            if m == n:
                term = compose(b.d(n - 1), generators[m][k])
            elif m == n + 1:
                term = compose(generators[m][k], a.d(n))
            else:
                term = None
            contributions.append(None if term is None
                                 else to_normal @ term.action)
        wanted = to_normal @ f[n].action
        for j, factor in enumerate(b.obj(n).invariant_factors):
            for col in range(a.obj(n).generators):
                rows.append([0 if term is None else term[j, col]
                             for term in contributions])
                targets.append(wanted[j, col])
                slack.append(factor)
    if not rows:
        return {}
    width = len(variables) + len(rows)
    flat = []
    for r, (row, factor) in enumerate(zip(rows, slack)):
        extra = [0] * len(rows)
        extra[r] = factor
        flat.extend(row + extra)
    system = Mat.from_flat(len(rows), width, flat)
    solution = intlin.solve_integer(system,
                                    Mat.from_flat(len(rows), 1, targets))
    if not solution.solvable:
        return None
    values = solution.particular
    homotopy = {}
    for index, (n, k) in enumerate(variables):
        term = generators[n][k] * values[index, 0]
        homotopy[n] = homotopy[n] + term if n in homotopy else term
    for n in range(min(a.lo, b.lo) - 1, max(a.hi, b.hi) + 2):
        if not (a.obj(n).is_trivial() or b.obj(n).is_trivial()):
            h_here = homotopy.get(n, zero_hom(a.obj(n), b.obj(n - 1)))
            h_next = homotopy.get(n + 1, zero_hom(a.obj(n + 1), b.obj(n)))
            if compose(b.d(n - 1), h_here) + compose(h_next, a.d(n)) != f[n]:
                raise core.LemmaFalsified(
                    'homotopy identity fails at degree {}'.format(n))
    return homotopy


def shift(c, k):
    """``c[k]`` with ``(c[k])ⁿ = c^{n+k}``."""
    sign = -1 if k % 2 else 1
    return ChainComplex(c.lo - k, c.objects,
                        [d * sign for d in c.differentials])


def shift_witness(witness, k):
    sign = -1 if k % 2 else 1
    return AcyclicityWitness(
        witness.lo - k,
        tuple(Cycle(cycle.obj, cycle.incl, cycle.proj * sign)
              for cycle in witness.cycles))


def direct_sum(c1, c2):
    """The degreewise biproduct."""
    if not c1.objects:
        return c2
    if not c2.objects:
        return c1
    lo, hi = min(c1.lo, c2.lo), max(c1.hi, c2.hi)
    objects = [biproduct(c1.obj(n), c2.obj(n)).obj for n in range(lo, hi + 1)]
    return ChainComplex(lo, objects, [hom_sum(c1.d(n), c2.d(n))
                                      for n in range(lo, hi)])


def sum_witness(c1, w1, c2, w2):
    """The witness of ``direct_sum(c1, c2)`` assembled degreewise."""
    total = direct_sum(c1, c2)
    cycles = []
    for n in range(total.lo, total.hi + 2):
        first, second = w1.cycle(c1, n), w2.cycle(c2, n)
        cycles.append(Cycle(biproduct(first.obj, second.obj).obj,
                            hom_sum(first.incl, second.incl),
                            hom_sum(first.proj, second.proj)))
    return AcyclicityWitness(total.lo, tuple(cycles))


AcyclicComplex = collections.namedtuple('AcyclicComplex', 'complex witness')


def random_acyclic_complex(s, rng, bounds=fgab.DEFAULT_BOUNDS, length=4,
                           lo=0):
    """Splice random conflations ``Zⁿ ↣ Aⁿ ↠ Z^{n+1}`` starting and ending
    at zero.

    Returns the complex together with the witness it was built from.
    """
    rng = fgab.as_rng(rng)
    zero = ZERO
    incls, projs = [], [zero_hom(zero, zero)]
    current = zero
    for _ in range(max(length - 1, 0)):
        inflation = exactstruct.sample_inflation(s, current, rng, bounds) \
            or identity(current)
        conflation = exactstruct.conflation_of(s, inflation, 'inflation')
        phi, phi_inv = fgab.random_automorphism(conflation.middle, rng)
        incls.append(compose(phi, conflation.inflation))
        projs.append(compose(conflation.deflation, phi_inv))
        current = conflation.target
    if length:
        incls.append(identity(current))
        projs.append(zero_hom(current, zero))
    incls.append(zero_hom(zero, zero))
    objects = [incl.target for incl in incls[:-1]]
    differentials = [compose(incls[k + 1], projs[k + 1])
                     for k in range(len(objects) - 1)]
    c = ChainComplex(lo, objects, differentials)
    cycles = tuple(Cycle(incl.source, incl, proj)
                   for incl, proj in zip(incls, projs))
    return AcyclicComplex(c, AcyclicityWitness(lo, cycles))


def _reduced(hom):
    action = hom.target.from_normal @ hom.canonical() @ hom.source.to_normal
    return Hom(hom.source, hom.target, action)


def chain_map_lattice(source, target):
    """Generators of the group of chain maps ``source → target``.

    Every component is an integer combination of the generators of
    Hom(Aⁿ, Bⁿ); the commutation ``d_Bⁿ∘fⁿ = f^{n+1}∘d_Aⁿ`` is read off
    in invariant coordinates, with one slack per torsion row, and solved
    with :py:func:`exactcat.intlin.kernel_basis`.  Returns the list of
    ``(degree, generator)`` pairs and the kernel columns restricted to
    them.
    """
    lo, hi = min(source.lo, target.lo), max(source.hi, target.hi)
    variables = [(n, g) for n in range(lo, hi + 1)
                 for g in fgab.hom_generators(source.obj(n), target.obj(n))]
    if not variables:
        return variables, []
    equations = []
    slacks = []
    for n in range(lo - 1, hi + 1):
        bound = target.obj(n + 1)
        blocks = []
        for m, g in variables:
            if m == n:
                blocks.append(compose(target.d(n), g).canonical())
            elif m == n + 1:
                blocks.append((-compose(g, source.d(n))).canonical())
            else:
                blocks.append(None)
        cols = len(source.obj(n).invariant_factors)
        for j, factor in enumerate(bound.invariant_factors):
            for i in range(cols):
                row = [block[j, i] if block is not None else 0
                       for block in blocks]
                if not any(row):
                    continue
                equations.append(row)
                slacks.append(factor)
    if not equations:
        columns = [[int(k == v) for k in range(len(variables))]
                   for v in range(len(variables))]
        return variables, columns
    rows = []
    for k, (row, factor) in enumerate(zip(equations, slacks)):
        extra = [0] * len(slacks)
        extra[k] = -factor
        rows.append([int(value) for value in row] + extra)
    basis = intlin.kernel_basis(Mat(rows))
    columns = [[basis[v, k] for v in range(len(variables))]
               for k in range(basis.cols)]
    return variables, columns


def random_chain_map(source, target, rng, spread=2):
    """A random integer combination of the generators of all chain maps
    ``source → target``."""
    rng = fgab.as_rng(rng)
    variables, columns = chain_map_lattice(source, target)
    coefficients = [0] * len(variables)
    for column in columns:
        scale = rng.randint(-spread, spread)
        coefficients = [c + scale * x for c, x in zip(coefficients, column)]
    components = {}
    for (n, g), c in zip(variables, coefficients):
        if n not in components:
            components[n] = zero_hom(source.obj(n), target.obj(n))
        components[n] = components[n] + g * int(c)
    return ChainMap(source, target,
                    {n: _reduced(f) for n, f in components.items()})


def format_complex(c):
    """The fixture form ``{support, objects, differentials}`` in
    invariant coordinates."""
    forms = {n: c.obj(n).normal_form() for n in c.degrees()}
    return {
        'support': [c.lo, c.hi],
        'objects': [list(forms[n].obj.invariant_factors)
                    for n in c.degrees()],
        'differentials': [
            compose(forms[n + 1].to, c.d(n), forms[n].from_).action.tolist()
            for n in range(c.lo, c.hi)],
    }


def parse_complex(payload):
    """Build a complex from its fixture form, given as text or mapping."""
    if isinstance(payload, str):
        payload = codec.loads(payload)
    try:
        lo, hi = (int(x) for x in payload['support'])
        objects = [fgab.parse_object(obj) if isinstance(obj, str)
                   else FgAb.from_invariants(obj)
                   for obj in payload['objects']]
        if len(objects) != hi - lo + 1:
            raise ValueError('support [{}, {}] does not match {} objects'
                             .format(lo, hi, len(objects)))
        differentials = [
            Hom(objects[k], objects[k + 1], Mat(rows)
                if rows else Mat.zeros(objects[k + 1].generators,
                                       objects[k].generators))
            for k, rows in enumerate(payload['differentials'])]
        return ChainComplex(lo, objects, differentials)
    except (KeyError, TypeError, ValueError, fgab.IllDefinedMorphism,
            intlin.DimensionError) as ex:
        raise codec.MalformedWitness('malformed complex: {}'.format(ex))


def format_chain_map(f):
    """The fixture form of ``f``: both complexes and the components in the
    invariant coordinates used by :py:func:`format_complex`."""
    components = {}
    for n in sorted(f.components):
        source = f.source.obj(n).normal_form()
        target = f.target.obj(n).normal_form()
        components[str(n)] = compose(target.to, f[n],
                                     source.from_).action.tolist()
    return {'source': format_complex(f.source),
            'target': format_complex(f.target),
            'components': components}


def parse_chain_map(payload):
    if isinstance(payload, str):
        payload = codec.loads(payload)
    source = parse_complex(payload['source'])
    target = parse_complex(payload['target'])
    try:
        components = {}
        for key, rows in payload.get('components', {}).items():
            n = int(key)
            a, b = source.obj(n), target.obj(n)
            components[n] = Hom(a, b, Mat(rows) if rows
                                else Mat.zeros(b.generators, a.generators))
        return ChainMap(source, target, components)
    except (AttributeError, TypeError, ValueError, fgab.IllDefinedMorphism,
            intlin.DimensionError) as ex:
        raise codec.MalformedWitness('malformed chain map: {}'.format(ex))
