import pytest


@pytest.fixture
def z():
    from exactcat.fgab import FgAb
    return FgAb.free(1)


@pytest.fixture
def times_two_complex(z):
    """``Z --2--> Z --π--> Z/2`` in degrees 0..2, acyclic in ``max``."""
    from exactcat import complexes, fgab

    return complexes.ChainComplex.from_differentials(0, [
        fgab.Hom(z, z, [[2]]), fgab.Hom(z, fgab.FgAb.cyclic(2), [[1]])])


def test_chain_complex_checks(z):
    from exactcat import complexes, fgab

    with pytest.raises(complexes.NotAComplex):
        complexes.ChainComplex(0, [z, z], [])
    with pytest.raises(complexes.NotAComplex):
        complexes.ChainComplex.from_differentials(0, [
            fgab.identity(z), fgab.identity(z)])
    with pytest.raises(complexes.NotAComplex):
        complexes.ChainComplex.from_differentials(0, [])


def test_chain_complex_outside_support(times_two_complex):
    assert times_two_complex.support == (0, 2)
    assert times_two_complex.obj(5).is_trivial()
    assert times_two_complex.d(2).is_zero()
    assert times_two_complex.d(-1).target == times_two_complex.obj(0)


def test_is_acyclic(times_two_complex):
    from exactcat import complexes, exactstruct

    maximal = exactstruct.max_structure()
    witness = complexes.is_acyclic(times_two_complex, maximal)

    assert witness is not None
    assert witness.verify(times_two_complex, maximal)
    assert complexes.acyclicity_defect(times_two_complex, maximal) is None
    # the conflation is not split
    split = exactstruct.split_structure()
    assert complexes.is_acyclic(times_two_complex, split) is None
    assert complexes.acyclicity_defect(times_two_complex, split) == 1


def test_is_acyclic_detects_homology(z):
    from exactcat import complexes, exactstruct

    c = complexes.ChainComplex.concentrated(z)

    assert complexes.is_acyclic(c, exactstruct.max_structure()) is None


def test_random_acyclic_complex(right_structure, random_acyclic):
    from exactcat import complexes

    for length in range(1, 5):
        c, witness = random_acyclic(right_structure, length, lo=-1)
        assert c.lo == -1
        assert witness.verify(c, right_structure)
        assert complexes.is_acyclic(c, right_structure) is not None


def test_chain_map_checks(times_two_complex):
    from exactcat import complexes, fgab

    c = times_two_complex
    with pytest.raises(complexes.NotAChainMap):
        complexes.ChainMap(c, c, {0: fgab.identity(c.obj(0))})
    one = complexes.ChainMap.identity(c)
    assert one[1] == fgab.identity(c.obj(1))
    assert complexes.ChainMap.zero(c, c)[2].is_zero()


def test_mapping_cone_of_identity_is_acyclic(right_structure,
                                             random_acyclic):
    from exactcat import complexes

    c, witness = random_acyclic(right_structure, 3)
    cone = complexes.mapping_cone(complexes.ChainMap.identity(c))

    assert cone.support == (c.lo - 1, c.hi)
    assert complexes.is_acyclic(cone, right_structure) is not None


def test_cone_acyclicity(right_structure, random_acyclic, rng):
    from exactcat import complexes

    for _ in range(3):
        source = random_acyclic(right_structure, rng.randint(1, 4))
        target = random_acyclic(right_structure, rng.randint(1, 4),
                                lo=rng.randint(-1, 1))
        f = complexes.random_chain_map(source.complex, target.complex, rng)
        witness = complexes.cone_acyclicity(f, source.witness, target.witness,
                                            right_structure)

        assert witness.verify(complexes.mapping_cone(f), right_structure)


def test_cone_acyclicity_rejects_bad_witness(times_two_complex):
    from exactcat import complexes, exactstruct, homlemmas

    s = exactstruct.max_structure()
    c = times_two_complex
    witness = complexes.is_acyclic(c, s)
    broken = complexes.AcyclicityWitness(witness.lo, witness.cycles[1:])

    with pytest.raises(homlemmas.MembershipFailure):
        complexes.cone_acyclicity(complexes.ChainMap.identity(c), broken,
                                  witness, s)


def test_nullhomotopy(right_structure, random_acyclic, rng):
    from exactcat import complexes, fgab

    source = random_acyclic(right_structure, 3).complex
    target = random_acyclic(right_structure, 3).complex
    lo, hi = min(source.lo, target.lo), max(source.hi, target.hi) + 1
    h = {n: fgab.random_hom(source.obj(n), target.obj(n - 1), rng)
         for n in range(lo, hi + 1)}
    f = complexes.ChainMap(source, target, {
        n: fgab.compose(target.d(n - 1), h[n])
        + fgab.compose(h[n + 1], source.d(n))
        for n in range(lo, hi)})
    homotopy = complexes.nullhomotopy(f)

    assert homotopy is not None
    for n in range(source.lo, source.hi + 1):
        h_here = homotopy.get(n, fgab.zero_hom(source.obj(n),
                                               target.obj(n - 1)))
        h_next = homotopy.get(n + 1, fgab.zero_hom(source.obj(n + 1),
                                                   target.obj(n)))
        assert fgab.compose(target.d(n - 1), h_here) \
            + fgab.compose(h_next, source.d(n)) == f[n]


def test_random_chain_map_reaches_other_homotopy_classes(z):
    from exactcat import complexes, fgab

    source = complexes.ChainComplex.concentrated(z)
    target = complexes.ChainComplex.concentrated(fgab.FgAb.cyclic(2))
    variables, columns = complexes.chain_map_lattice(source, target)
    maps = [complexes.random_chain_map(source, target, seed)
            for seed in range(20)]

    assert len(variables) == 1
    assert any(not f[0].is_zero() for f in maps)
    assert all(complexes.nullhomotopy(f) is None
               for f in maps if not f[0].is_zero())


def test_random_chain_map_on_a_nonsplit_complex(times_two_complex):
    from exactcat import complexes

    c = times_two_complex
    maps = [complexes.random_chain_map(c, c, seed) for seed in range(20)]

    # chain endomorphisms are multiplication by a; null-homotopic iff a even
    for f in maps:
        assert f[1] == f[0]
    assert any(complexes.nullhomotopy(f) is None for f in maps)
    assert complexes.nullhomotopy(complexes.ChainMap.identity(c)) is None


def test_identity_of_nonacyclic_complex_is_not_nullhomotopic(z):
    from exactcat import complexes

    c = complexes.ChainComplex.concentrated(z)

    assert complexes.nullhomotopy(complexes.ChainMap.identity(c)) is None


def test_shift_and_sum(right_structure, random_acyclic):
    from exactcat import complexes

    c1, w1 = random_acyclic(right_structure, 3)
    c2, w2 = random_acyclic(right_structure, 2, lo=1)
    total = complexes.direct_sum(c1, c2)

    assert total.support == (0, 2)
    assert complexes.sum_witness(c1, w1, c2, w2).verify(total,
                                                        right_structure)
    shifted = complexes.shift(c1, 1)
    assert shifted.lo == c1.lo - 1
    assert shifted.d(shifted.lo) == -c1.d(c1.lo)
    assert complexes.shift_witness(w1, 1).verify(shifted, right_structure)
    assert complexes.shift(complexes.shift(c1, 1), 1) != c1
    assert complexes.shift(c1, 2).differentials == c1.differentials


def test_format_parse_complex(times_two_complex):
    from exactcat import complexes

    payload = complexes.format_complex(times_two_complex)

    assert payload == {'support': [0, 2], 'objects': [[0], [0], [2]],
                       'differentials': [[[2]], [[1]]]}
    assert complexes.parse_complex(payload) == times_two_complex


def test_chain_map_fixture_form(times_two_complex):
    from exactcat import complexes

    f = complexes.ChainMap.identity(times_two_complex)
    parsed = complexes.parse_chain_map(complexes.format_chain_map(f))

    assert parsed.source == times_two_complex
    assert all(parsed[n] == f[n] for n in f.degrees())


@pytest.mark.parametrize('payload', [
    {'support': [0, 1], 'objects': [[0]], 'differentials': []},
    {'support': [0, 1], 'objects': [[0], [0]], 'differentials': [[[1, 2]]]},
    {'objects': []},
    'not json',
])
def test_parse_complex_malformed(payload):
    from exactcat import codec, complexes

    with pytest.raises(codec.MalformedWitness):
        complexes.parse_complex(payload)
