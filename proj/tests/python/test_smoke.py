import math

import pytest

import elkiesprimes as ep


def legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def naive_points(p, a, b):
    return 1 + sum(1 + legendre(x**3 + a * x + b, p) for x in range(p))


def test_arith():
    assert ep.primes(1, 30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert ep.jacobi(2, 7) == legendre(2, 7)
    assert ep.mobius(30) == -1
    assert ep.squarefree_products(3, 5) == [1, 3, 5, 15]
    big = ep.squarefree_products(3, 67)[-1]
    assert big == math.prod(ep.primes(3, 67))
    with pytest.raises(ValueError):
        ep.jacobi(1, 4)


def test_curves():
    c = ep.Curve(5, 1, 0)
    assert ep.count_points(c) == naive_points(5, 1, 0)
    assert ep.trace(c) == 6 - naive_points(5, 1, 0)
    with pytest.raises(ep.DomainError):
        ep.Curve(5, 0, 0)
    spec = ep.trace_spectrum(7)
    assert sorted(spec) == list(range(-5, 6))
    for t, (a, b) in spec.items():
        assert 8 - naive_points(7, a, b) == t


def test_classify_and_lp():
    prof = ep.classify(5, 0, 11)
    assert (prof.n_e, prof.n_a, prof.L_p) == (2, 1, 7)
    assert prof.elkies_product == 21
    assert [v for _, _, v in prof.classes] == ["Elkies", "Excluded", "Elkies", "Atkin"]
    assert ep.compute_Lp(5, 0) == (7, 21)
    with pytest.raises(ValueError):
        ep.classify(5, 9, 11)


def test_charsums():
    assert ep.long_sum(1, 3, 2) == -1
    assert ep.complete_sum(2, 105) == -1
    lhs, bound = ep.short_sum(0, 0, 3, 3**9, 1)
    assert lhs == 3**9 - 3**8
    assert lhs <= bound
    assert ep.gcd_identity_check(7, 2, 15)
    direct, expanded, table = ep.w_sum(10, 3, 3, 2)
    assert direct == expanded == 2
    assert table == [(1, 4), (3, -2)]
    assert ep.theorem_parameters(10**7) == {"L": 4, "M": 15, "T": 3162}


def test_search():
    recs = ep.scan(5, 5, 37)
    assert len(recs) == 9
    assert [r.L_p for r in recs if r.t == 0] == [7]
    assert [repr(r) for r in ep.scan(1000, 1100, 50, workers=1)] == [repr(r) for r in ep.scan(1000, 1100, 50, workers=3)]
    assert ep.check_cond1(7, 1, 3, 3)
    assert not ep.check_cond1(5, 0, 3, 3)
    assert ep.represent(19) == (5, 1)
    assert ep.represent(13) is None
    w = ep.worst_trace(5, 3)
    assert w.saturated
