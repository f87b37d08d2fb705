import pytest

ALL_SUITES = ['acyclic-sums', 'bracket', 'cone-acyclic', 'defl-sum',
              'direct-sum', 'double', 'five', 'injective', 'ker-inflation',
              'nine', 'obscure', 'pushout-equiv', 'section-decomp',
              'summands', 'three-by-three']

ACCEPTANCE_SAMPLES = {'cone-acyclic': 100, 'defl-sum': 200, 'five': 100,
                      'obscure': 200, 'pushout-equiv': 200,
                      'section-decomp': 100}


def test_names():
    from exactcat import suites

    assert suites.names() == ALL_SUITES


def test_unknown_suite():
    from exactcat import suites

    with pytest.raises(suites.UnknownSuite) as info:
        suites.run_suite('snake')
    assert 'three-by-three' in str(info.value)


@pytest.mark.parametrize('name', ALL_SUITES)
def test_suites_pass_in_max(name):
    from exactcat import suites

    report = suites.run_suite(name, 'max', samples=4, seed=3)

    assert report.verdict == suites.PASS, report.note
    assert report.witness is None
    assert report.note.startswith('no counterexample found in')


@pytest.mark.parametrize('name', ['five', 'three-by-three', 'summands'])
def test_suites_unavailable_in_isbell(name):
    from exactcat import suites

    report = suites.run_suite(name, 'isbell:2', samples=10)

    assert report.verdict == suites.UNAVAILABLE
    assert 'isbell:2' in report.note


def test_torsion_fixture_runs_in_max():
    from exactcat import suites

    report = suites.run_suite('three-by-three', 'max', samples=0)

    assert report.passed
    assert report.verified == 1


def test_default_structure():
    from exactcat import suites

    assert suites.run_suite('three-by-three', samples=1).structure == 'split'
    assert suites.run_suite('nine', samples=1).structure == 'max'


def test_report_is_deterministic():
    from exactcat import codec, suites

    first = suites.run_suite('nine', 'split', samples=5, seed=9)
    second = suites.run_suite('nine', 'split', samples=5, seed=9)

    assert codec.dumps(first) == codec.dumps(second)
    assert codec.loads(codec.dumps(first)) == first


def test_failed_hypothesis_reports_witness():
    from exactcat import fgab, suites

    z = fgab.FgAb.free(1)
    zero = fgab.Hom(z, z, [[0]])

    report = suites.run_suite('bracket', 'max',
                              fixture={'f': zero, 'f_prime': zero})

    assert report.verdict == suites.FAIL
    assert report.witness == {'f': zero, 'f_prime': zero}
    assert report.note == 'f is an inflation (roles: f)'


def test_missing_zero_inflations_are_unavailable():
    from exactcat import fgab, suites

    z = fgab.FgAb.free(1)
    identity = fgab.Hom(z, z, [[1]])

    report = suites.run_suite('bracket', 'all-isos',
                              fixture={'f': identity, 'f_prime': identity})

    assert report.verdict == suites.UNAVAILABLE
    assert report.note.startswith('R0*')
    assert report.witness is None


def test_fixture_reruns_single_instance():
    from exactcat import exactstruct, fgab, homlemmas, suites

    rng = fgab.as_rng(5)
    s = exactstruct.max_structure()
    m = None
    while m is None:
        m = homlemmas.random_conflation_morphism(s, rng)
    roles = suites.Suite.lookup('nine')().roles(m)

    report = suites.run_suite('nine', 'max', fixture=roles)

    assert report.passed
    assert report.verified == 1


def test_fixture_roundtrip_of_complexes():
    from exactcat import codec, complexes, exactstruct, fgab, suites

    s = exactstruct.max_structure()
    c = complexes.ChainComplex.from_differentials(0, [
        fgab.Hom(fgab.FgAb.free(1), fgab.FgAb.free(1), [[2]]),
        fgab.Hom(fgab.FgAb.free(1), fgab.FgAb.cyclic(2), [[1]])])
    f = complexes.ChainMap.identity(c)
    roles = codec.loads(codec.dumps(complexes.format_chain_map(f)))

    report = suites.run_suite('cone-acyclic', s, fixture=roles)

    assert report.passed
    assert report.verified == 1


def test_fixture_with_non_acyclic_complex():
    from exactcat import complexes, fgab, suites

    c = complexes.ChainComplex.concentrated(fgab.FgAb.free(1))
    roles = complexes.format_chain_map(complexes.ChainMap.identity(c))

    report = suites.run_suite('cone-acyclic', 'max', fixture=roles)

    assert report.verdict == suites.FAIL
    assert 'not acyclic' in report.note


@pytest.mark.parametrize('name, roles', [
    ('injective', {'injective': None}),
    ('five', {'i': None}),
    ('double', {'unknown': None}),
])
def test_unsupported_fixtures(name, roles):
    from exactcat import suites

    with pytest.raises(suites.FixtureUnsupported):
        suites.run_suite(name, 'max', fixture=roles)


@pytest.mark.acceptance
@pytest.mark.parametrize('name, samples', [
    (name, ACCEPTANCE_SAMPLES.get(name, 50)) for name in ALL_SUITES])
def test_acceptance_suites(name, samples):
    from exactcat import suites

    report = suites.run_suite(name, samples=samples)

    assert report.samples == samples
    assert report.passed, report.note
