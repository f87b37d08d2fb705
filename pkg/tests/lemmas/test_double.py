import pytest


def _draw(s, rng, bounds, attempts=30):
    from exactcat import homlemmas

    for _ in range(attempts):
        diagram = homlemmas.random_double_diagram(s, rng, bounds)
        if diagram is not None:
            return diagram
    pytest.skip('no double diagram drawn in {}'.format(s.name))


def test_double_conflation(right_structure, rng, bounds):
    from exactcat import exactstruct, fgab, homlemmas

    for _ in range(3):
        dd = _draw(right_structure, rng, bounds)
        c = homlemmas.double_conflation(right_structure, dd)

        assert exactstruct.is_conflation(right_structure, c.inflation,
                                         c.deflation)
        assert c.inflation == fgab.hom_column(dd.g, fgab.compose(dd.j, dd.d))
        assert c.target == dd.f.target


def test_double_conflation_rejects_non_members(right_structure, rng, bounds):
    from exactcat import homlemmas

    for _ in range(10):
        dd = _draw(right_structure, rng, bounds)
        if not dd.d.target.is_trivial():
            break
    else:
        pytest.skip('only trivial cokernels drawn')
    broken = dd._replace(d=dd.d * 0)

    with pytest.raises(homlemmas.MembershipFailure) as info:
        homlemmas.double_conflation(right_structure, broken)
    assert info.value.hypothesis == 'd is a deflation'
