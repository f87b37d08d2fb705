import pytest


@pytest.fixture
def groups():
    from exactcat.fgab import FgAb

    return {
        'zero': FgAb.zero(),
        'z': FgAb.free(1),
        'z2': FgAb.cyclic(2),
        'z4': FgAb.cyclic(4),
        'z6': FgAb.cyclic(6),
    }


@pytest.mark.parametrize('relations, factors', [
    ([[2, 0], [0, 3]], (6,)),
    ([[2, 0], [0, 4]], (2, 4)),
    ([[1]], ()),
    ([[0], [0]], (0,)),
    ([[2], [2]], (2, 0)),
])
def test_invariant_factors(relations, factors):
    from exactcat.fgab import FgAb

    assert FgAb(relations).invariant_factors == factors


def test_describe(groups):
    from exactcat.fgab import FgAb

    assert groups['zero'].describe() == '0'
    assert FgAb.from_invariants([2, 4, 0, 0]).describe() == 'Z/2 + Z/4 + Z^2'
    assert groups['z6'].order() == 6
    assert groups['z'].order() is None


def test_negative_invariant():
    from exactcat.fgab import FgAb

    with pytest.raises(ValueError):
        FgAb.from_invariants([-2])


def test_ill_defined_morphism(groups):
    from exactcat import fgab

    with pytest.raises(fgab.IllDefinedMorphism):
        fgab.Hom(groups['z2'], groups['z'], [[1]])
    # Z/4 -> Z/2 by 1 and Z/2 -> Z/4 by 2 are fine
    fgab.Hom(groups['z4'], groups['z2'], [[1]])
    fgab.Hom(groups['z2'], groups['z4'], [[2]])


def test_hom_equality_modulo_relations(groups):
    from exactcat import fgab

    z, z2 = groups['z'], groups['z2']

    assert fgab.Hom(z, z2, [[1]]) == fgab.Hom(z, z2, [[3]])
    assert fgab.Hom(z, z2, [[2]]).is_zero()
    assert fgab.Hom(z, z, [[2]]) != fgab.Hom(z, z, [[4]])


def test_compose_mismatch(groups):
    from exactcat import fgab

    f = fgab.identity(groups['z'])
    g = fgab.identity(groups['z2'])
    with pytest.raises(fgab.ObjectMismatch):
        fgab.compose(g, f)


def test_kernel_cokernel_of_multiplication(groups):
    from exactcat import fgab

    z = groups['z']
    times_2 = fgab.Hom(z, z, [[2]])

    assert fgab.kernel(times_2).obj.is_trivial()
    coker = fgab.cokernel(times_2)
    assert coker.obj.invariant_factors == (2,)
    assert fgab.compose(coker.proj, times_2).is_zero()


def test_kernel_of_projection(groups):
    from exactcat import fgab

    proj = fgab.Hom(groups['z4'], groups['z2'], [[1]])
    k = fgab.kernel(proj)

    assert k.obj.invariant_factors == (2,)
    assert fgab.compose(proj, k.incl).is_zero()
    assert fgab.is_mono(k.incl)


def test_biproduct(groups):
    from exactcat import fgab

    b = fgab.biproduct(groups['z2'], groups['z'])

    assert fgab.hom_sum(fgab.identity(groups['z2']),
                        fgab.identity(groups['z'])) == fgab.identity(b.obj)
    assert fgab.compose(b.proj1, b.inj1) == fgab.identity(groups['z2'])
    assert fgab.compose(b.proj2, b.inj1).is_zero()


def test_pushout_square(groups):
    from exactcat import fgab

    z = groups['z']
    times_2 = fgab.Hom(z, z, [[2]])
    pi = fgab.Hom(z, groups['z2'], [[1]])
    po = fgab.pushout(times_2, pi)

    assert fgab.PushoutSquare(times_2, pi, po.i_prime, po.g).commutes()
    # Z/2 embeds into the pushout Z/4
    assert po.obj.invariant_factors == (4,)
    assert fgab.is_mono(po.i_prime)
    assert fgab.is_pushout_square(times_2, pi, po.i_prime, po.g)


def test_pullback_square(groups):
    from exactcat import fgab

    d = fgab.Hom(groups['z4'], groups['z2'], [[1]])
    h = fgab.Hom(groups['z'], groups['z2'], [[1]])
    pb = fgab.pullback(d, h)

    assert fgab.compose(d, pb.p1) == fgab.compose(h, pb.p2)
    assert fgab.is_pullback_square(pb.p1, pb.p2, h, d)
    assert pb.obj.invariant_factors == (2, 0)


def test_lift_through_cokernel(groups):
    from exactcat import fgab

    z = groups['z']
    d = fgab.Hom(z, groups['z2'], [[1]])
    v = fgab.Hom(z, groups['z4'], [[2]])
    w = fgab.lift_through_cokernel(d, v)

    assert fgab.compose(w, d) == v
    with pytest.raises(fgab.NotLiftable):
        fgab.lift_through_cokernel(d, fgab.Hom(z, groups['z4'], [[1]]))


def test_restrict_through_kernel(groups):
    from exactcat import fgab

    z = groups['z']
    incl = fgab.Hom(z, z, [[2]])
    u = fgab.Hom(z, z, [[6]])
    delta = fgab.restrict_through_kernel(incl, u)

    assert fgab.compose(incl, delta) == u
    with pytest.raises(fgab.NotRestrictable):
        fgab.restrict_through_kernel(incl, fgab.Hom(z, z, [[3]]))


def test_classify(groups):
    from exactcat import fgab

    z = groups['z']
    c = fgab.classify(fgab.Hom(z, z, [[-1]]))
    assert c.is_iso
    assert c.inverse == fgab.Hom(z, z, [[-1]])

    c = fgab.classify(fgab.Hom(z, z, [[2]]))
    assert c.is_mono and not c.is_epi and c.inverse is None

    c = fgab.classify(fgab.Hom(groups['z6'], groups['z6'], [[5]]))
    assert c.is_iso


def test_random_morphisms_are_well_defined(rng, bounds):
    from exactcat import fgab

    for _ in range(20):
        a = fgab.random_object(bounds, rng)
        b = fgab.random_object(bounds, rng)
        f = fgab.random_hom(a, b, rng)
        assert (f.source, f.target) == (a, b)
        phi, phi_inv = fgab.random_automorphism(a, rng)
        assert fgab.compose(phi, phi_inv) == fgab.identity(a)
        assert fgab.compose(phi_inv, phi) == fgab.identity(a)


def test_hom_generators(groups):
    from exactcat import fgab

    gens = fgab.hom_generators(groups['z4'], groups['z6'])

    assert len(gens) == 1
    assert gens[0].canonical().tolist() == [[3]]


def test_bounds_parse():
    from exactcat import fgab

    assert fgab.Bounds.parse('1, 2,3') == fgab.Bounds(1, 2, 3)
    assert str(fgab.DEFAULT_BOUNDS) == '2,2,16'
    for text in ('1,2', '1,-2,3', 'a,b,c'):
        with pytest.raises(ValueError):
            fgab.Bounds.parse(text)


def test_parse_object():
    from exactcat import fgab

    obj = fgab.parse_object('fgab: [2, 0]')

    assert obj.invariant_factors == (2, 0)
    assert fgab.format_object(obj) == 'fgab: [2, 0]'
    with pytest.raises(ValueError):
        fgab.parse_object('group: [2]')


def test_extend_along(groups):
    from exactcat import fgab

    z = groups['z']
    times_2 = fgab.Hom(z, z, [[2]])
    to_z3 = fgab.Hom(z, fgab.FgAb.cyclic(3), [[1]])

    w = fgab.extend_along(times_2, to_z3)

    assert fgab.compose(w, times_2) == to_z3
    assert fgab.extend_along(times_2,
                             fgab.Hom(z, groups['z2'], [[1]])) is None


def test_factor_through(groups):
    from exactcat import fgab

    z = groups['z']
    times_2 = fgab.Hom(z, z, [[2]])
    times_4 = fgab.Hom(z, z, [[4]])

    delta = fgab.factor_through(times_2, times_4)

    assert fgab.compose(times_2, delta) == times_4
    assert fgab.factor_through(times_2, fgab.Hom(z, z, [[3]])) is None
    with pytest.raises(fgab.ObjectMismatch):
        fgab.factor_through(times_2, fgab.Hom(z, groups['z2'], [[1]]))


def test_mediators(groups):
    from exactcat import fgab

    z = groups['z']
    times_2 = fgab.Hom(z, z, [[2]])
    pi = fgab.Hom(z, groups['z2'], [[1]])
    po = fgab.pushout(times_2, pi)
    pb = fgab.pullback(fgab.Hom(groups['z4'], groups['z2'], [[1]]), pi)

    assert fgab.pushout_mediator(po.g, po.i_prime, po.g, po.i_prime) \
        == fgab.identity(po.obj)
    assert fgab.pullback_mediator(pb.p1, pb.p2, pb.p1, pb.p2) \
        == fgab.identity(pb.obj)


def test_parse_hom():
    from exactcat import fgab

    hom = fgab.parse_hom({'source': 'fgab: [0]', 'target': 'fgab: [4]',
                          'action': '1 1 2'})

    assert hom.source == fgab.FgAb.free(1)
    assert hom.target == fgab.FgAb.cyclic(4)
    assert fgab.cokernel(hom).obj.invariant_factors == (2,)


@pytest.mark.acceptance
def test_acceptance_universal_properties():
    from exactcat import fgab

    rng = fgab.as_rng(200)
    bounds = fgab.Bounds(2, 2, 12)
    for _ in range(200):
        a, b, c = (fgab.random_object(bounds, rng) for _ in range(3))
        i, f = fgab.random_hom(a, b, rng), fgab.random_hom(a, c, rng)
        po = fgab.pushout(i, f)
        assert fgab.is_pushout_square(i, f, po.i_prime, po.g)
        assert fgab.pushout_mediator(po.g, po.i_prime, po.g, po.i_prime) \
            == fgab.identity(po.obj)

        d, h = fgab.random_hom(b, a, rng), fgab.random_hom(c, a, rng)
        pb = fgab.pullback(d, h)
        assert fgab.is_pullback_square(pb.p1, pb.p2, h, d)
        assert fgab.pullback_mediator(pb.p1, pb.p2, pb.p1, pb.p2) \
            == fgab.identity(pb.obj)
