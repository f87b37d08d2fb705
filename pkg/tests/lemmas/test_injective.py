import pytest


@pytest.mark.parametrize('structure, factors, injective', [
    ('split', [0], True),
    ('split', [4, 0], True),
    ('max', [], True),
    ('max', [0], False),
    ('max', [5], False),
    ('max', [3, 0], False),
])
def test_injective_test(structure, factors, injective):
    from exactcat import exactstruct, fgab, homlemmas

    s = exactstruct.structure_from_name(structure)
    obj = fgab.FgAb.from_invariants(factors)

    assert homlemmas.injective_test(s, obj, probe_samples=10) == injective


def test_is_injective_against():
    from exactcat import fgab, homlemmas

    z = fgab.FgAb.free(1)
    times_2 = fgab.Hom(z, z, [[2]])

    assert not homlemmas.is_injective_against(times_2, z)
    assert homlemmas.is_injective_against(times_2, fgab.FgAb.zero())
    assert homlemmas.is_injective_against(fgab.biproduct(z, z).inj1, z)


def test_hom_epi_characterization(rng, bounds):
    from exactcat import exactstruct, fgab, homlemmas

    s = exactstruct.split_structure()
    for _ in range(10):
        a = fgab.random_object(bounds, rng)
        f = fgab.random_hom(a, fgab.random_object(bounds, rng), rng)
        # in the split structure every object is injective
        assert homlemmas.hom_epi_characterization(s, f, [a]) \
            == s.is_inflation(f)


def test_hom_epi_characterization_rejects_outside_objects():
    from exactcat import exactstruct, fgab, homlemmas

    s = exactstruct.isbell_structure(2)
    z2 = fgab.FgAb.cyclic(2)
    f = fgab.identity(z2)

    assert homlemmas.hom_epi_characterization(s, f, [z2])
    with pytest.raises(exactstruct.ObjectNotInCategory) as info:
        homlemmas.hom_epi_characterization(s, f, [fgab.FgAb.cyclic(4)])
    assert 'Z/4' in str(info.value)
