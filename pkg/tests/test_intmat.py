import random

from hdx import intmat


def mul(A, B):
    return intmat.mat_mul(A, B)


def test_snf_identity():
    U, S, V = intmat.smith_normal_form(intmat.identity(3))
    assert intmat.snf_diagonal(S) == [1, 1, 1]


def test_snf_simple_diagonal():
    M = [[2, 0], [0, 0]]
    U, S, V = intmat.smith_normal_form(M)
    assert intmat.snf_diagonal(S) == [2]


def test_snf_random_transform_verification():
    rng = random.Random(0)
    for _ in range(25):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        U, S, V = intmat.smith_normal_form(M)
        assert mul(mul(U, M), V) == S
        diag = intmat.snf_diagonal(S)
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0
        # off-diagonal entries vanish
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert S[i][j] == 0
        # unimodularity
        Ui = intmat.invert_unimodular(U)
        assert mul(U, Ui) == intmat.identity(m)


def test_solve_int():
    M = [[2, 0], [0, 3]]
    assert intmat.solve_int(M, [4, 9]) == [2, 3]
    assert intmat.solve_int(M, [1, 0]) is None
    rng = random.Random(1)
    for _ in range(20):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        x = [rng.randint(-3, 3) for _ in range(n)]
        b = intmat.mat_vec(M, x)
        y = intmat.solve_int(M, b)
        assert y is not None
        assert intmat.mat_vec(M, y) == b


def test_kernel_int():
    M = [[1, 1, 0], [0, 0, 0]]
    K = intmat.kernel_int(M)
    assert len(K) == 2
    for v in K:
        assert intmat.mat_vec(M, v) == [0, 0]


def test_solve_mod():
    M = [[2, 0], [0, 2]]
    x = intmat.solve_mod(M, [2, 0], 4)
    assert x is not None
    assert [v % 4 for v in intmat.mat_vec(M, x)] == [2, 0]
    assert intmat.solve_mod(M, [1, 0], 4) is None


def test_rref_and_kernel_mod_p():
    M = [[1, 2, 0], [2, 4, 1]]
    basis, pivots = intmat.rref_mod_p(M, 5)
    assert pivots == [0, 2]
    K = intmat.kernel_mod_p(M, 5)
    assert len(K) == 1
    for v in K:
        assert all(x % 5 == 0 for x in intmat.mat_vec(M, v))


def test_image_basis_int():
    M = [[2, 4], [0, 0], [1, 2]]
    basis = intmat.image_basis_int(M)
    assert len(basis) == 1
    # the image is generated by (2, 0, 1) up to sign
    g = basis[0]
    assert g in ([2, 0, 1], [-2, 0, -1])
