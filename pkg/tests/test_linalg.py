import linalg


def matrix(field, rows):
    return [[field.from_rational(v) for v in row] for row in rows]


def test_rank_and_kernel(Q):
    rows = matrix(Q, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert linalg.rank(rows, 3, Q) == 2
    kernel = linalg.kernel(rows, 3, Q)
    assert len(kernel) == 1
    assert linalg.is_zero_vector(linalg.mat_vec(rows, kernel[0], Q))


def test_kernel_of_empty_matrix_is_everything(Q):
    assert linalg.kernel([], 2, Q) == matrix(Q, [[1, 0], [0, 1]])


def test_solve_consistent_and_inconsistent(Q):
    rows = matrix(Q, [[1, 1], [1, -1]])
    assert linalg.solve(rows, [Q.from_rational(3), Q.from_rational(1)], 2, Q) == [2, 1]
    singular = matrix(Q, [[1, 1], [2, 2]])
    assert linalg.solve(singular, [Q.from_rational(1), Q.from_rational(3)], 2, Q) is None


def test_products_over_f3(F3):
    rows = matrix(F3, [[1, 1], [0, 2]])
    assert linalg.is_identity(linalg.mat_mul(rows, rows, 2, 2, F3), 2)
    assert linalg.solve(matrix(F3, [[1, 2], [2, 1]]), matrix(F3, [[1, 0]])[0], 2, F3) is None


def test_same_span(Q):
    a = matrix(Q, [[1, 0, 1], [0, 1, 1]])
    b = matrix(Q, [[1, 1, 2], [1, -1, 0]])
    assert linalg.same_span(a, b, 3, Q)
    assert not linalg.same_span(a, matrix(Q, [[0, 0, 1]]), 3, Q)


def test_format_matrix(Q):
    assert linalg.format_matrix(matrix(Q, [[1, 0], [0, 1]])) == "[1, 0; 0, 1]"
    assert linalg.format_matrix([]) == "[]"
