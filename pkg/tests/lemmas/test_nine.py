import pytest


def test_pushout_completion(times_two):
    from exactcat import fgab, homlemmas

    pi = fgab.Hom(times_two.source, fgab.FgAb.cyclic(2), [[1]])
    c, square = homlemmas.pushout_completion(times_two, pi)

    assert square.commutes()
    assert c.middle.invariant_factors == (4,)
    assert c.target.invariant_factors == (2,)
    assert fgab.compose(c.deflation, c.inflation).is_zero()


def test_pushout_completion_fails_r2_in_isbell():
    from exactcat import exactstruct, fgab, homlemmas

    s = exactstruct.isbell_structure(2)
    z = fgab.FgAb.free(1)
    c = exactstruct.make_conflation(s, fgab.Hom(z, z, [[2]]),
                                    fgab.Hom(z, fgab.FgAb.cyclic(2), [[1]]))

    with pytest.raises(homlemmas.MembershipFailure) as info:
        homlemmas.pushout_completion(c, fgab.Hom(z, fgab.FgAb.cyclic(2),
                                                 [[1]]))
    assert info.value.hypothesis.startswith('R2')
    assert 'i_prime' in info.value.diagram


def test_pushout_completion_source_mismatch(times_two):
    from exactcat import fgab, homlemmas

    with pytest.raises(homlemmas.MalformedDiagram):
        homlemmas.pushout_completion(
            times_two, fgab.identity(fgab.FgAb.cyclic(2)))


def test_recognize_pushout(times_two):
    from exactcat import fgab, homlemmas

    pi = fgab.Hom(times_two.source, fgab.FgAb.cyclic(2), [[1]])
    _, square = homlemmas.pushout_completion(times_two, pi)

    assert homlemmas.recognize_pushout(square, times_two.deflation)

    padded = fgab.biproduct(square.g.target, fgab.FgAb.free(1))
    broken = homlemmas.PushoutSquare(
        square.i, square.f, fgab.compose(padded.inj1, square.i_prime),
        fgab.compose(padded.inj1, square.g))
    assert not homlemmas.recognize_pushout(broken, times_two.deflation)


def test_recognize_pushout_needs_a_cokernel(times_two):
    from exactcat import fgab, homlemmas

    pi = fgab.Hom(times_two.source, fgab.FgAb.cyclic(2), [[1]])
    _, square = homlemmas.pushout_completion(times_two, pi)

    with pytest.raises(homlemmas.MalformedDiagram):
        homlemmas.recognize_pushout(square, fgab.identity(times_two.middle))


def test_recognize_pushout_needs_a_kernel_below():
    from exactcat import fgab, homlemmas

    zero, z = fgab.FgAb.zero(), fgab.FgAb.free(1)
    square = homlemmas.PushoutSquare(
        fgab.identity(zero), fgab.zero_hom(zero, z), fgab.zero_hom(z, zero),
        fgab.identity(zero))

    # Z → 0 is no kernel and the square is no pushout
    assert not fgab.is_pushout_square(*square)
    with pytest.raises(homlemmas.MalformedDiagram) as info:
        homlemmas.recognize_pushout(square, fgab.identity(zero))
    assert set(info.value.diagram) == {'i_prime'}


def test_recognize_pushout_agrees_with_universal_property(
        right_structure, random_conflation):
    from exactcat import fgab, homlemmas

    rng = fgab.as_rng(23)
    for _ in range(5):
        c = random_conflation(right_structure)
        f = fgab.random_hom(c.source, fgab.random_object(rng=rng), rng)
        try:
            _, square = homlemmas.pushout_completion(c, f)
        except homlemmas.MembershipFailure:
            continue
        zero_g = fgab.zero_hom(square.g.source, square.g.target)
        for candidate in (square, square._replace(g=zero_g)):
            assert homlemmas.recognize_pushout(candidate, c.deflation) \
                == fgab.is_pushout_square(*candidate)


def test_nine_factorization(right_structure, random_conflation_morphism):
    from exactcat import homlemmas

    for _ in range(5):
        m = random_conflation_morphism(right_structure)
        result = homlemmas.nine_factorization(m)
        composite = result.upper.then(result.lower)

        assert (composite.f, composite.g, composite.h) == (m.f, m.g, m.h)
        assert result.middle.source == m.target.source
        assert result.middle.target == m.source.target
