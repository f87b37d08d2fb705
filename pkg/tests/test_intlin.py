import pytest


@pytest.mark.parametrize('rows, diagonal', [
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
    ([[0, 0], [0, 0]], (0, 0)),
    ([[6, 4]], (2,)),
    ([[4], [6]], (2,)),
    ([[1, 0], [0, 0], [0, 3]], (1, 3)),
])
def test_smith_normal_form(rows, diagonal):
    from exactcat import intlin

    a = intlin.Mat(rows)
    snf = intlin.smith_normal_form(a)

    assert snf.diagonal == diagonal
    assert snf.verify(a)


def test_smith_normal_form_empty():
    from exactcat import intlin

    a = intlin.Mat.zeros(0, 3)
    snf = intlin.smith_normal_form(a)

    assert snf.diagonal == ()
    assert snf.rank == 0
    assert snf.v == intlin.Mat.identity(3)


def test_smith_normal_form_random(rng):
    from exactcat import intlin

    for _ in range(30):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = intlin.Mat([[rng.randint(-9, 9) for _ in range(n)]
                        for _ in range(m)])
        assert intlin.smith_normal_form(a).verify(a)


def test_solve_integer():
    from exactcat import intlin

    a = intlin.Mat([[2, 0], [0, 3]])
    b = intlin.Mat([[4], [9]])

    solution = intlin.solve_integer(a, b)

    assert solution.solvable
    assert a @ solution.particular == b
    assert solution.kernel.cols == 0


def test_solve_integer_unsolvable():
    from exactcat import intlin

    solution = intlin.solve_integer(intlin.Mat([[2]]), intlin.Mat([[3]]))

    assert not solution.solvable
    assert solution.particular is None


def test_solve_integer_kernel():
    from exactcat import intlin

    a = intlin.Mat([[1, 1, 0]])
    solution = intlin.solve_integer(a, intlin.Mat([[5]]))

    assert a @ solution.particular == intlin.Mat([[5]])
    assert solution.kernel.cols == 2
    assert (a @ solution.kernel).is_zero()


def test_solve_integer_dimension_error():
    from exactcat import intlin

    with pytest.raises(intlin.DimensionError):
        intlin.solve_integer(intlin.Mat([[1, 2]]), intlin.Mat([[1], [2]]))


def test_kernel_basis():
    from exactcat import intlin

    a = intlin.Mat([[2, 4], [1, 2]])
    basis = intlin.kernel_basis(a)

    assert basis.cols == 1
    assert (a @ basis).is_zero()
    assert abs(basis[0, 0]) == 2 and abs(basis[1, 0]) == 1


def test_block_diag():
    from exactcat import intlin

    m = intlin.Mat.block_diag(intlin.Mat([[1, 2]]), intlin.Mat([[3], [4]]))

    assert m.tolist() == [[1, 2, 0], [0, 0, 3], [0, 0, 4]]


def test_determinant():
    from exactcat import intlin

    assert intlin.Mat([[2, 1], [7, 4]]).determinant() == 1
    assert intlin.Mat.zeros(0, 0).determinant() == 1
    with pytest.raises(intlin.DimensionError):
        intlin.Mat([[1, 2]]).determinant()


def test_unequal_rows():
    from exactcat import intlin

    with pytest.raises(intlin.DimensionError):
        intlin.Mat([[1, 2], [3]])


def test_parse_dumps():
    from exactcat import intlin

    m = intlin.Mat([[1, -2], [0, 3]])

    assert m.dumps() == '2 2\n1 -2\n0 3\n'
    assert intlin.Mat.parse(m.dumps()) == m


@pytest.mark.parametrize('text', ['', '2 2\n1 2 3', 'a b', '-1 0'])
def test_parse_malformed(text):
    from exactcat import intlin

    with pytest.raises(intlin.MatrixFormatError):
        intlin.Mat.parse(text)


def test_immutable():
    from exactcat import intlin

    m = intlin.Mat([[1]])
    with pytest.raises(ValueError):
        m._array[0, 0] = 2


def test_smith_normal_form_benchmark(benchmark):
    import random

    from exactcat import intlin

    rng = random.Random(17)
    a = intlin.Mat([[rng.randint(-50, 50) for _ in range(6)]
                    for _ in range(6)])

    snf = benchmark(intlin.smith_normal_form, a)

    assert snf.verify(a)


@pytest.mark.acceptance
def test_acceptance_smith_normal_form():
    import random

    from exactcat import intlin

    rng = random.Random(500)
    for _ in range(500):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        a = intlin.Mat([[rng.randint(-9, 9) for _ in range(cols)]
                        for _ in range(rows)])
        assert intlin.smith_normal_form(a).verify(a), a
