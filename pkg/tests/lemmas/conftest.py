import pytest


@pytest.fixture
def maximal():
    from exactcat import exactstruct
    return exactstruct.max_structure()


@pytest.fixture
def times_two(maximal):
    """``Z ↣ Z ↠ Z/2`` in the maximal structure."""
    from exactcat import exactstruct, fgab

    z = fgab.FgAb.free(1)
    return exactstruct.conflation_of(maximal, fgab.Hom(z, z, [[2]]))

