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
"""The category of finitely generated abelian groups.

Objects are presentations ``Z^m / relations``; a morphism acts on
generators and is well defined modulo relations.  Every object caches the
isomorphism to its invariant-factor form ``Z/d1 + ... + Z/dk + Z^r``, which
is where equality of morphisms and the hom solvers do their work.
"""
import collections
import functools
import json
import logging
import math
import random

from exactcat import codec, core, intlin
from exactcat.intlin import Mat

log = logging.getLogger(__name__)


class ObjectMismatch(core.ExactcatError, ValueError):

    """Morphisms do not fit together."""


class IllDefinedMorphism(core.ExactcatError, ValueError):

    """A matrix does not respect the relations of source and target."""


class NotLiftable(core.ExactcatError):

    """No morphism factors the given map through the cokernel."""


class NotRestrictable(core.ExactcatError):

    """No morphism factors the given map through the kernel."""


@codec.register('fgab')
class FgAb:

    """A finitely generated abelian group given by a presentation.

    ``relations`` has one row per generator and one column per relator.
    """

    __slots__ = ('relations', 'invariant_factors', 'to_normal',
                 'from_normal')

    def __init__(self, relations):
        if not isinstance(relations, Mat):
            relations = Mat(relations)
        self.relations = relations
        snf = intlin.smith_normal_form(relations)
        diagonal = snf.diagonal
        factors = [diagonal[i] if i < len(diagonal) else 0
                   for i in range(relations.rows)]
        keep = [i for i, factor in enumerate(factors) if factor != 1]
        self.invariant_factors = tuple(factors[i] for i in keep)
        # coordinates of an element in the invariant-factor form and back
        self.to_normal = snf.u.rows_at(keep)
        self.from_normal = snf.u_inv.cols_at(keep)

    @classmethod
    def from_invariants(cls, factors):
        """Diagonal presentation, one generator per factor, 0 meaning Z."""
        factors = [int(factor) for factor in factors]
        if any(factor < 0 for factor in factors):
            raise ValueError('negative invariant factor: {}'.format(factors))
        torsion = [i for i, factor in enumerate(factors) if factor]
        flat = [0] * (len(factors) * len(torsion))
        for col, i in enumerate(torsion):
            flat[i * len(torsion) + col] = factors[i]
        return cls(Mat.from_flat(len(factors), len(torsion), flat))

    @classmethod
    def zero(cls):
        return cls(Mat.zeros(0, 0))

    @classmethod
    def free(cls, rank):
        return cls(Mat.zeros(rank, 0))

    @classmethod
    def cyclic(cls, order):
        return cls.from_invariants([order])

    @property
    def generators(self):
        return self.relations.rows

    @property
    def torsion_factors(self):
        return tuple(factor for factor in self.invariant_factors if factor)

    @property
    def rank(self):
        return sum(1 for factor in self.invariant_factors if not factor)

    def is_trivial(self):
        return not self.invariant_factors

    def is_free(self):
        return not self.torsion_factors

    def is_finite(self):
        return not self.rank

    def order(self):
        """Number of elements, ``None`` when infinite."""
        if self.rank:
            return None
        return functools.reduce(lambda a, b: a * b, self.torsion_factors, 1)

    def is_isomorphic(self, other):
        return self.invariant_factors == other.invariant_factors

    def reduce(self, vectors):
        """Canonical invariant-factor coordinates of the column ``vectors``.

        Two columns represent the same element iff their reductions agree.
        """
        coords = self.to_normal @ vectors
        rows = coords.tolist()
        return Mat.from_flat(coords.rows, coords.cols, [
            value % factor if factor else value
            for row, factor in zip(rows, self.invariant_factors)
            for value in row])

    def normal_form(self):
        """The invariant-factor presentation with isomorphisms both ways."""
        return _normal_form(self)

    def __eq__(self, other):
        if not isinstance(other, FgAb):
            return NotImplemented
        return self.relations == other.relations

    def __hash__(self):
        return hash(self.relations)

    def describe(self):
        if self.is_trivial():
            return '0'
        parts = ['Z/{}'.format(factor) for factor in self.torsion_factors]
        if self.rank:
            parts.append('Z' if self.rank == 1 else 'Z^{}'.format(self.rank))
        return ' + '.join(parts)

    def __repr__(self):
        return '<FgAb {} on {} generators>'.format(self.describe(),
                                                    self.generators)

    @classmethod
    def __json_encode__(cls, data):
        return {'relations': data.relations}

    @classmethod
    def __json_decode__(cls, payload):
        return cls(payload['relations'])


NormalForm = collections.namedtuple('NormalForm', 'obj to from_')


@functools.lru_cache(maxsize=4096)
def _normal_form(obj):
    normal = FgAb.from_invariants(obj.invariant_factors)
    return NormalForm(normal,
                      Hom(obj, normal, obj.to_normal),
                      Hom(normal, obj, obj.from_normal))


@codec.register('hom')
class Hom:

    """A morphism given by its action on generators.

    ``action`` has ``target.generators`` rows and ``source.generators``
    columns.
    """

    __slots__ = ('source', 'target', 'action')

    def __init__(self, source, target, action, check=True):
        if not isinstance(action, Mat):
            action = Mat(action) if len(action) else \
                Mat.zeros(target.generators, source.generators)
        if action.shape != (target.generators, source.generators):
            raise intlin.DimensionError(
                'action {}x{} does not fit {} -> {}'.format(
                    action.rows, action.cols, source, target))
        if check and not target.reduce(action @ source.relations).is_zero():
            raise IllDefinedMorphism(
                'relations of {} are not mapped to zero in {}'
                .format(source.describe(), target.describe()))
        self.source = source
        self.target = target
        self.action = action

    def _check_parallel(self, other):
        if self.source != other.source or self.target != other.target:
            raise ObjectMismatch('morphisms are not parallel')

    def __add__(self, other):
        self._check_parallel(other)
        return Hom(self.source, self.target, self.action + other.action,
                   check=False)

    def __sub__(self, other):
        self._check_parallel(other)
        return Hom(self.source, self.target, self.action - other.action,
                   check=False)

    def __neg__(self):
        return Hom(self.source, self.target, -self.action, check=False)

    def __mul__(self, scalar):
        return Hom(self.source, self.target, self.action * scalar,
                   check=False)

    __rmul__ = __mul__

    def is_zero(self):
        return self.target.reduce(self.action).is_zero()

    def canonical(self):
        """Reduced action in invariant coordinates of both ends."""
        return self.target.reduce(self.action @ self.source.from_normal)

    def __eq__(self, other):
        if not isinstance(other, Hom):
            return NotImplemented
        return self.source == other.source and self.target == other.target \
            and hom_equal(self, other)

    def __hash__(self):
        return hash((self.source, self.target, self.canonical()))

    def __repr__(self):
        return '<Hom {} -> {}: {}>'.format(
            self.source.describe(), self.target.describe(),
            self.action.tolist())

    @classmethod
    def __json_encode__(cls, data):
        return {'source': data.source, 'target': data.target,
                'action': data.action}

    @classmethod
    def __json_decode__(cls, payload):
        return cls(payload['source'], payload['target'], payload['action'])


def identity(obj):
    return Hom(obj, obj, Mat.identity(obj.generators), check=False)


def zero_hom(source, target):
    return Hom(source, target, Mat.zeros(target.generators, source.generators),
               check=False)


def compose(*homs):
    """Compose right to left: ``compose(h, g, f)`` is h∘g∘f."""
    if not homs:
        raise ValueError('nothing to compose')
    result = homs[-1]
    for hom in reversed(homs[:-1]):
        if result.target != hom.source:
            raise ObjectMismatch('cannot compose {} after {}'
                                 .format(hom, result))
        result = Hom(result.source, hom.target, hom.action @ result.action,
                     check=False)
    return result


def hom_equal(f, g):
    """Decide f = g by reducing the difference modulo the target relations.

    The reduction is membership in the column span of
    ``target.relations``, read off the cached Smith decomposition.
    """
    f._check_parallel(g)
    return f.target.reduce(f.action - g.action).is_zero()


Biproduct = collections.namedtuple('Biproduct', 'obj inj1 inj2 proj1 proj2')


@functools.lru_cache(maxsize=4096)
def biproduct(a, b):
    """Block-diagonal presentation of A⊕B with its structure maps."""
    obj = FgAb(Mat.block_diag(a.relations, b.relations))
    ma, mb = a.generators, b.generators
    return Biproduct(
        obj,
        Hom(a, obj, Mat.vcat(Mat.identity(ma), Mat.zeros(mb, ma)), check=False),
        Hom(b, obj, Mat.vcat(Mat.zeros(ma, mb), Mat.identity(mb)), check=False),
        Hom(obj, a, Mat.hcat(Mat.identity(ma), Mat.zeros(ma, mb)), check=False),
        Hom(obj, b, Mat.hcat(Mat.zeros(mb, ma), Mat.identity(mb)), check=False),
    )


def hom_column(f, g):
    """``[f; g]``: A → B⊕C."""
    if f.source != g.source:
        raise ObjectMismatch('[f; g] needs a common source')
    target = biproduct(f.target, g.target).obj
    return Hom(f.source, target, Mat.vcat(f.action, g.action), check=False)


def hom_row(f, g):
    """``[f, g]``: A⊕B → C."""
    if f.target != g.target:
        raise ObjectMismatch('[f, g] needs a common target')
    source = biproduct(f.source, g.source).obj
    return Hom(source, f.target, Mat.hcat(f.action, g.action), check=False)


def hom_sum(f, g):
    """``f⊕g``: A⊕B → C⊕D."""
    return Hom(biproduct(f.source, g.source).obj,
               biproduct(f.target, g.target).obj,
               Mat.block_diag(f.action, g.action), check=False)


Kernel = collections.namedtuple('Kernel', 'obj incl')
Cokernel = collections.namedtuple('Cokernel', 'obj proj')


def kernel(f):
    a, b = f.source, f.target
    basis = intlin.kernel_basis(Mat.hcat(f.action, b.relations))
    gens = basis.rows_at(range(a.generators))
    relations = intlin.kernel_basis(Mat.hcat(gens, a.relations))\
        .rows_at(range(gens.cols))
    presented = FgAb(relations)
    normal = presented.normal_form()
    return Kernel(normal.obj,
                  compose(Hom(presented, a, gens, check=False), normal.from_))


def cokernel(f):
    b = f.target
    presented = FgAb(Mat.hcat(b.relations, f.action))
    normal = presented.normal_form()
    return Cokernel(normal.obj,
                    Hom(b, normal.obj, presented.to_normal, check=False))


Pushout = collections.namedtuple('Pushout', 'obj g i_prime')
Pullback = collections.namedtuple('Pullback', 'obj p1 p2')


def pushout(i, f, cokernel=cokernel):
    """Pushout of ``i: A → B`` along ``f: A → A′``.

    ``g: B → P`` and ``i_prime: A′ → P`` are the legs, computed as the
    cokernel of ``[i; −f]``.  A different ``cokernel`` rule yields the
    pushout of a subcategory with modified colimits.
    """
    if i.source != f.source:
        raise ObjectMismatch('pushout needs a common source')
    legs = biproduct(i.target, f.target)
    q = cokernel(hom_column(i, -f)).proj
    return Pushout(q.target, compose(q, legs.inj1), compose(q, legs.inj2))


def pullback(d, h):
    """Pullback of ``d: B → C`` along ``h: C′ → C`` as kernel of [d, −h]."""
    if d.target != h.target:
        raise ObjectMismatch('pullback needs a common target')
    legs = biproduct(d.source, h.source)
    k = kernel(hom_row(d, -h)).incl
    return Pullback(k.source, compose(legs.proj1, k), compose(legs.proj2, k))


def _hom_step(a, b):
    """Entries allowed for Z/a → Z/b are the multiples of this (0 = Z)."""
    if not b:
        return 0 if a else 1
    if not a:
        return 1
    return b // math.gcd(a, b)


def extend_along(s, t):
    """Find ``w`` with ``w∘s = t`` or return ``None``.

    ``s: X → B`` and ``t: X → A``; the unknown ``w: B → A`` is solved row
    by row in invariant coordinates, where Hom(B, A) is a lattice of
    matrices with prescribed column steps.
    """
    if s.source != t.source:
        raise ObjectMismatch('extension needs a common source')
    b, a = s.target, t.target
    s_n = b.to_normal @ s.action @ s.source.from_normal
    t_n = a.to_normal @ t.action @ t.source.from_normal
    n_x = s_n.cols
    rows = []
    for j, a_j in enumerate(a.invariant_factors):
        steps = [_hom_step(b_i, a_j) for b_i in b.invariant_factors]
        lhs = [[steps[i] * s_n[i, l] for i in range(len(steps))]
               + ([a_j if k == l else 0 for k in range(n_x)] if a_j else [])
               for l in range(n_x)]
        width = len(steps) + (n_x if a_j else 0)
        solution = intlin.solve_integer(
            Mat.from_flat(n_x, width, [x for row in lhs for x in row]),
            t_n[j:j + 1, :].T)
        if not solution.solvable:
            return None
        rows.append([step * solution.particular[i, 0]
                     for i, step in enumerate(steps)])
    w_n = Mat.from_flat(len(rows), b.to_normal.rows,
                        [x for row in rows for x in row])
    return Hom(b, a, a.from_normal @ w_n @ b.to_normal)


def factor_through(m, u):
    """Find ``δ`` with ``m∘δ = u`` or return ``None``.

    ``m: K → B`` and ``u: D → B``; solved column by column in invariant
    coordinates.
    """
    if m.target != u.target:
        raise ObjectMismatch('factorization needs a common target')
    k, b, d = m.source, m.target, u.source
    m_n = b.to_normal @ m.action @ k.from_normal
    u_n = b.to_normal @ u.action @ d.from_normal
    slack = [l for l, b_l in enumerate(b.invariant_factors) if b_l]
    n_b, n_k = m_n.rows, m_n.cols
    cols = []
    for i, d_i in enumerate(d.invariant_factors):
        steps = [_hom_step(d_i, k_j) for k_j in k.invariant_factors]
        lhs = [[m_n[l, j] * steps[j] for j in range(n_k)]
               + [b.invariant_factors[l] if l == s else 0 for s in slack]
               for l in range(n_b)]
        solution = intlin.solve_integer(
            Mat.from_flat(n_b, n_k + len(slack),
                          [x for row in lhs for x in row]),
            u_n[:, i])
        if not solution.solvable:
            return None
        cols.append([step * solution.particular[j, 0]
                     for j, step in enumerate(steps)])
    delta_n = Mat.from_flat(len(cols), n_k, [x for col in cols for x in col]).T
    return Hom(d, k, k.from_normal @ delta_n @ d.to_normal)


def lift_through_cokernel(d, v):
    """The unique ``w`` with ``w∘d = v`` for a cokernel ``d``."""
    if d.source != v.source:
        raise ObjectMismatch('lift needs a common source')
    w = extend_along(d, v)
    if w is None:
        raise NotLiftable('{} does not vanish on the kernel of {}'
                          .format(v, d))
    return w


def restrict_through_kernel(incl, u):
    """The unique ``δ`` with ``incl∘δ = u`` for a kernel ``incl``."""
    if incl.target != u.target:
        raise ObjectMismatch('restriction needs a common target')
    delta = factor_through(incl, u)
    if delta is None:
        raise NotRestrictable('{} does not land in the image of {}'
                              .format(u, incl))
    return delta


def pushout_mediator(g, i_prime, u, v):
    """The map out of a pushout with legs ``g``, ``i_prime`` matching u, v."""
    return lift_through_cokernel(hom_row(g, i_prime), hom_row(u, v))


def pullback_mediator(p1, p2, x, y):
    """The map into a pullback with legs ``p1``, ``p2`` matching x, y."""
    return restrict_through_kernel(hom_column(p1, p2), hom_column(x, y))


Classification = collections.namedtuple(
    'Classification', 'is_mono is_epi is_iso inverse')


def is_mono(f):
    return kernel(f).obj.is_trivial()


def is_epi(f):
    return cokernel(f).obj.is_trivial()


def classify(f):
    mono, epi = is_mono(f), is_epi(f)
    inverse = None
    if mono and epi:
        inverse = lift_through_cokernel(f, identity(f.source))
        if compose(f, inverse) != identity(f.target) \
                or compose(inverse, f) != identity(f.source):
            raise core.LemmaFalsified('inverse of {} failed to verify'
                                      .format(f))
    return Classification(mono, epi, mono and epi, inverse)


def is_iso(f):
    return is_mono(f) and is_epi(f)


def is_pushout_square(i, f, i_prime, g, cokernel=cokernel):
    """Decide the universal property of the square g∘i = i′∘f."""
    if compose(g, i) != compose(i_prime, f):
        return False
    po = pushout(i, f, cokernel=cokernel)
    try:
        mediator = pushout_mediator(po.g, po.i_prime, g, i_prime)
    except NotLiftable:
        return False
    return is_iso(mediator)


def is_pullback_square(i, f, i_prime, g):
    """Decide whether A with legs ``i``, ``f`` is a pullback of g and i′."""
    if compose(g, i) != compose(i_prime, f):
        return False
    pb = pullback(g, i_prime)
    try:
        mediator = pullback_mediator(pb.p1, pb.p2, i, f)
    except NotRestrictable:
        return False
    return is_iso(mediator)


def hom_generators(source, target):
    """Finitely many morphisms generating the group Hom(source, target)."""
    result = []
    for j, b_j in enumerate(target.invariant_factors):
        for i, a_i in enumerate(source.invariant_factors):
            step = _hom_step(a_i, b_j)
            if not step or (b_j and step == b_j):
                continue
            flat = [0] * (len(target.invariant_factors)
                          * len(source.invariant_factors))
            flat[j * len(source.invariant_factors) + i] = step
            entry = Mat.from_flat(len(target.invariant_factors),
                                  len(source.invariant_factors), flat)
            result.append(Hom(source, target, target.from_normal @ entry
                              @ source.to_normal))
    return result


class Bounds(collections.namedtuple(
        'Bounds', 'max_rank max_torsion max_exponent')):

    """Limits for random objects.

    ``max_exponent`` bounds the order of each cyclic torsion summand.
    """

    __slots__ = ()

    @classmethod
    def parse(cls, text):
        """Parse ``"r,t,e"``."""
        parts = [part.strip() for part in text.split(',')]
        if len(parts) != 3:
            raise ValueError('bounds need three values r,t,e: {!r}'
                             .format(text))
        values = [int(part) for part in parts]
        if any(value < 0 for value in values):
            raise ValueError('bounds must not be negative: {!r}'.format(text))
        return cls(*values)

    def __str__(self):
        return ','.join(str(value) for value in self)


DEFAULT_BOUNDS = Bounds(2, 2, 16)


def as_rng(seed_or_rng):
    """A :py:class:`random.Random` for a seed, or the given instance."""
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def random_invariants(bounds, rng):
    rng = as_rng(rng)
    rank = rng.randint(0, bounds.max_rank)
    torsion = [rng.randint(2, bounds.max_exponent)
               for _ in range(rng.randint(0, bounds.max_torsion))] \
        if bounds.max_exponent >= 2 else []
    return torsion + [0] * rank


def random_object(bounds=DEFAULT_BOUNDS, rng=None):
    return FgAb.from_invariants(random_invariants(bounds, rng))


def random_hom(source, target, rng=None, spread=3):
    """A random morphism, well defined by construction."""
    rng = as_rng(rng)
    entries = []
    for b_j in target.invariant_factors:
        for a_i in source.invariant_factors:
            step = _hom_step(a_i, b_j)
            if not step:
                entries.append(0)
            elif b_j:
                entries.append(step * rng.randrange(b_j // step))
            else:
                entries.append(rng.randint(-spread, spread))
    normal = Mat.from_flat(len(target.invariant_factors),
                           len(source.invariant_factors), entries)
    return Hom(source, target,
               target.from_normal @ normal @ source.to_normal)


def random_automorphism(obj, rng=None, steps=3):
    """An automorphism of ``obj`` together with its inverse.

    Built from unit scalings and elementary shears in invariant
    coordinates.
    """
    rng = as_rng(rng)
    factors = obj.invariant_factors
    size = len(factors)
    forward, backward = Mat.identity(size), Mat.identity(size)
    for _ in range(steps if size else 0):
        i, j = rng.randrange(size), rng.randrange(size)
        if i == j:
            factor = factors[i]
            if factor > 2:
                unit = rng.choice([u for u in range(1, factor)
                                   if math.gcd(u, factor) == 1])
                inverse = pow(unit, -1, factor)
            else:
                unit = inverse = rng.choice([1, -1])
            scale = [1] * size
            scale[i] = unit
            forward = Mat.diagonal(scale) @ forward
            scale[i] = inverse
            backward = backward @ Mat.diagonal(scale)
        else:
            step = _hom_step(factors[j], factors[i])
            if not step:
                continue
            amount = step * rng.choice([-2, -1, 1, 2])
            flat = Mat.identity(size).tolist()
            flat[i][j] = amount
            forward = Mat(flat) @ forward
            flat[i][j] = -amount
            backward = backward @ Mat(flat)
    return (Hom(obj, obj, obj.from_normal @ forward @ obj.to_normal),
            Hom(obj, obj, obj.from_normal @ backward @ obj.to_normal))


def parse_object(text):
    """Parse the fixture form ``fgab: [d1, d2, ..., 0]``."""
    prefix, _, rest = text.partition(':')
    if prefix.strip() != 'fgab' or not rest.strip():
        raise ValueError('expected "fgab: [...]", got {!r}'.format(text))
    factors = json.loads(rest)
    if not isinstance(factors, list):
        raise ValueError('invariant factors must be a list: {!r}'
                         .format(text))
    return FgAb.from_invariants(factors)


def format_object(obj):
    return 'fgab: {}'.format(json.dumps(list(obj.invariant_factors)))


def parse_hom(spec):
    """A morphism from ``{"source": ..., "target": ..., "action": text}``."""
    source, target = parse_object(spec['source']), parse_object(spec['target'])
    return Hom(source, target, Mat.parse(spec['action']))


class PushoutSquare(collections.namedtuple('PushoutSquare', 'i f i_prime g')):

    """A square with top ``i: A → B``, left ``f: A → A′``, bottom
    ``i_prime: A′ → B′`` and right ``g: B → B′``."""

    __slots__ = ()

    def commutes(self):
        return compose(self.g, self.i) == compose(self.i_prime, self.f)
