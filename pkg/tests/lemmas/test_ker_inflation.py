import pytest


def _draw(s, rng, bounds, attempts=30):
    from exactcat import homlemmas

    for _ in range(attempts):
        diagram = homlemmas.random_ker_inflation_diagram(s, rng, bounds)
        if diagram is not None:
            return diagram
    pytest.skip('no diagram drawn in {}'.format(s.name))


def test_ker_inflation_lemma(right_structure, rng, bounds):
    from exactcat import exactstruct, homlemmas

    for _ in range(5):
        diagram = _draw(right_structure, rng, bounds)
        result = homlemmas.ker_inflation_lemma(right_structure, diagram)

        assert result.g_is_member
        assert exactstruct.is_conflation(right_structure, diagram.g,
                                         result.coker_g)


def test_ker_inflation_needs_commuting_squares(right_structure, rng, bounds):
    from exactcat import fgab, homlemmas

    for _ in range(10):
        diagram = _draw(right_structure, rng, bounds)
        if not diagram.i.source.is_trivial():
            break
    else:
        pytest.skip('only trivial kernels drawn')
    broken = diagram._replace(g=diagram.g * 2)
    if fgab.compose(broken.g, broken.i) == broken.i_prime:
        pytest.skip('doubling kept the left square')

    with pytest.raises(homlemmas.MalformedDiagram) as info:
        homlemmas.ker_inflation_lemma(right_structure, broken)
    assert info.value.hypothesis == 'left square commutes'
