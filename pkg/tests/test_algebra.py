import numpy as np
import pytest

from blockfusion import algebra as alg
from blockfusion import gfp


def cyclic_group_algebra(n, p):
    sc = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            sc[i, j, (i + j) % n] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[0] = 1
    return alg.Algebra(p, sc, unit)


def matrix_algebra(n, p):
    d = n * n
    basis = [np.zeros((n, n), dtype=np.int64) for _ in range(d)]
    for k in range(d):
        basis[k][k // n, k % n] = 1
    sc = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            sc[i, j] = ((basis[i] @ basis[j]) % p).reshape(-1)
    return alg.Algebra(p, sc, np.eye(n, dtype=np.int64).reshape(-1))


def test_axiom_check_rejects_nonassociative():
    sc = np.zeros((2, 2, 2), dtype=np.int64)
    sc[0, 0, 0] = 1
    sc[0, 1, 1] = 1
    sc[1, 0, 0] = 1  # e1*e0 = e0 while e0 is a left unit
    sc[1, 1, 0] = 1  # (e1 e1) e1 = e1 but e1 (e1 e1) = e0
    with pytest.raises(ValueError):
        alg.Algebra(2, sc, np.array([1, 0]))


def test_arithmetic_basics():
    a = cyclic_group_algebra(3, 5)
    x = np.array([1, 2, 0])
    y = np.array([0, 1, 1])
    assert (a.mul(a.unit, x) == x).all()
    assert (a.mul(x, y) == a.left_mult(x) @ y % 5).all()
    assert (a.mul(x, y) == a.right_mult(y) @ x % 5).all()
    assert (a.power(x, 3) == a.mul(x, a.mul(x, x))).all()
    assert a.is_unit_element(x) == gfp.is_invertible(a.left_mult(x), 5)


def test_inverse_element():
    a = cyclic_group_algebra(3, 2)
    g = np.array([0, 1, 0])
    inv = a.inverse_element(g)
    assert (a.mul(g, inv) == a.unit).all()
    # 1 + g + g^2 kills (1 - g), so it cannot be invertible
    with pytest.raises(ValueError):
        a.inverse_element(np.array([1, 1, 1]))


def test_center_of_matrix_algebra_is_scalars():
    m = matrix_algebra(2, 3)
    rows = m.center_rows()
    assert rows.shape[0] == 1
    assert gfp.in_rowspace(rows, m.unit, 3)


def test_radical_of_modular_cyclic_group_algebra():
    # kC3 over GF(3) is local; the augmentation ideal is the radical
    a = cyclic_group_algebra(3, 3)
    rad = a.radical_rows()
    assert rad.shape[0] == 2
    for r in rad:
        assert int(r.sum()) % 3 == 0  # augmentation zero
    assert not gfp.in_rowspace(rad, a.unit, 3)


def test_radical_semisimple_cases():
    assert cyclic_group_algebra(3, 2).radical_rows().shape[0] == 0
    assert matrix_algebra(2, 2).radical_rows().shape[0] == 0


def test_radical_exhaustive_oracle_small():
    # over GF(2), dim 3: compare with brute-force largest nilpotent ideal
    a = cyclic_group_algebra(3, 2)
    b = cyclic_group_algebra(4, 2)
    for alg_ in (a, b):
        rad = alg_.radical_rows()
        nilpotents = []
        for idx in np.ndindex(*([2] * alg_.dim)):
            x = np.array(idx, dtype=np.int64)
            if not alg_.power(x, alg_.dim + 1).any():
                nilpotents.append(x)
        # radical elements are nilpotent here (commutative case)
        for r in rad:
            assert not alg_.power(r, alg_.dim + 1).any()
        nil_span = gfp.row_basis(np.array(nilpotents).reshape(-1, alg_.dim), 2)
        assert rad.shape[0] <= nil_span.shape[0]


def test_composition_factors_of_regular_module():
    a = cyclic_group_algebra(3, 3)
    factors = alg.composition_factors(alg.regular_module(a))
    assert sorted(f.dim for f in factors) == [1, 1, 1]
    m = matrix_algebra(2, 2)
    factors = alg.composition_factors(alg.regular_module(m))
    assert sorted(f.dim for f in factors) == [2, 2]
    for f in factors:
        f.check()


def test_submodule_and_quotient_respect_action():
    a = cyclic_group_algebra(4, 2)
    reg = alg.regular_module(a)
    rows = alg.spin(np.array([1, 1, 1, 1]), reg.mats, 2)
    sub = alg.submodule_restrict(reg, rows)
    quo = alg.quotient_module(reg, rows)
    sub.check()
    quo.check()
    assert sub.dim + quo.dim == reg.dim


def test_nilradical_commutative():
    a = cyclic_group_algebra(3, 3)
    nil = alg.nilradical_commutative(a)
    assert nil.shape[0] == 2
    sem = cyclic_group_algebra(3, 2)
    assert alg.nilradical_commutative(sem).shape[0] == 0


def test_split_commutative_semisimple_splits_x3_minus_1():
    # GF(2)[x]/(x^3 - 1): one rational point and one quadratic factor
    a = cyclic_group_algebra(3, 2)
    idems = alg.split_commutative_semisimple(a)
    assert len(idems) == 2
    total = (idems[0] + idems[1]) % 2
    assert (total == a.unit).all()


def test_split_commutative_semisimple_fully_split():
    # GF(3)[x]/(x^2 - 1) = GF(3) x GF(3)
    a = cyclic_group_algebra(2, 3)
    idems = alg.split_commutative_semisimple(a)
    assert len(idems) == 2


def test_lift_idempotent_through_radical():
    # GF(2)[C6] = GF(2)[C2] (x) GF(2)[C3]: radical is nonzero, idempotents lift
    a = cyclic_group_algebra(6, 2)
    ssq = a.semisimple_quotient()
    comps = a.simple_components()
    assert len(comps) == 2
    for comp in comps:
        e = alg.primitive_idempotent_in(a, comp)
        assert a.is_idempotent(e)
        assert (ssq.project(e) == comp.primitive_bar).all()


def test_simple_components_group_algebra_gf2_c3():
    a = cyclic_group_algebra(3, 2)
    comps = a.simple_components()
    profile = sorted((c.matrix_size, c.end_field_degree) for c in comps)
    assert profile == [(1, 1), (1, 2)]


def test_simple_components_matrix_algebra():
    m = matrix_algebra(2, 2)
    comps = m.simple_components()
    assert len(comps) == 1
    c = comps[0]
    assert (c.matrix_size, c.end_field_degree, c.component_dim) == (2, 1, 4)


def test_primitive_idempotents_and_same_point_in_m2():
    m = matrix_algebra(2, 2)
    comp = m.simple_components()[0]
    e = alg.primitive_idempotent_in(m, comp)
    f = (m.unit - e) % 2
    assert alg.is_primitive(m, e)
    assert alg.is_primitive(m, f)
    assert not alg.is_primitive(m, m.unit)
    assert alg.same_point(m, e, f)
    # direct conjugacy witness: some unit u with u e u^-1 = f
    found = False
    for u in alg.iter_units(m):
        if (m.mul(m.mul(u, e), m.inverse_element(u)) == f).all():
            found = True
            break
    assert found


def test_same_point_distinguishes_components():
    a = cyclic_group_algebra(3, 2)
    comps = a.simple_components()
    e0 = alg.primitive_idempotent_in(a, comps[0])
    e1 = alg.primitive_idempotent_in(a, comps[1])
    assert not alg.same_point(a, e0, e1)
    with pytest.raises(ValueError):
        alg.same_point(a, a.unit, e0)  # unit is not primitive here


def test_primitive_summands_partition_the_unit():
    m = matrix_algebra(2, 2)
    parts = alg.primitive_summands(m, m.unit)
    assert len(parts) == 2
    for e in parts:
        assert m.is_idempotent(e)
        assert alg.is_primitive(m, e)
    a = cyclic_group_algebra(3, 3)  # local: unit already primitive
    assert len(alg.primitive_summands(a, a.unit)) == 1


def test_corner_and_subalgebra():
    m = matrix_algebra(2, 3)
    e = np.zeros(4, dtype=np.int64)
    e[0] = 1  # E11
    corner = m.corner(e)
    assert corner.alg.dim == 1
    assert (corner.lift(corner.alg.unit) == e).all()
    sub = m.subalgebra(np.vstack([m.unit]))
    assert sub.alg.dim == 1


def test_quotient_algebra_projection_is_homomorphism():
    a = cyclic_group_algebra(3, 3)
    q = a.quotient_by_ideal(a.radical_rows())
    assert q.alg.dim == 1
    for i in range(3):
        for j in range(3):
            x = np.eye(3, dtype=np.int64)[i]
            y = np.eye(3, dtype=np.int64)[j]
            lhs = q.project(a.mul(x, y))
            rhs = q.alg.mul(q.project(x), q.project(y))
            assert (lhs == rhs).all()


def test_hom_space_of_regular_module():
    # End of the regular module is the opposite algebra: dim matches
    a = cyclic_group_algebra(2, 2)
    reg = alg.regular_module(a)
    assert len(alg.hom_space(reg, reg)) == 2
    for h in alg.hom_space(reg, reg):
        for i in range(2):
            assert ((h @ reg.mats[i]) % 2 == (reg.mats[i] @ h) % 2).all()


def test_module_iso_positive_and_negative():
    m = matrix_algebra(2, 2)
    factors = alg.composition_factors(alg.regular_module(m))
    h = alg.module_iso(factors[0], factors[1])
    assert h is not None and gfp.is_invertible(h, 2)
    a = cyclic_group_algebra(3, 2)
    fs = alg.composition_factors(alg.regular_module(a))
    one = [f for f in fs if f.dim == 1][0]
    two = [f for f in fs if f.dim == 2][0]
    assert alg.module_iso(one, two) is None


def test_iter_units_counts():
    a = cyclic_group_algebra(2, 2)  # GF(2)[C2] local: units = 1 + rad
    units = list(alg.iter_units(a))
    assert len(units) == 2
    m = matrix_algebra(2, 2)  # GL(2,2) has order 6
    assert len(list(alg.iter_units(m))) == 6


def test_find_unit_in_space():
    m = matrix_algebra(2, 2)
    u = alg.find_unit_in_space(m, np.eye(4, dtype=np.int64))
    assert u is not None and m.is_unit_element(u)
    # strictly upper triangular span has no units
    rows = np.zeros((1, 4), dtype=np.int64)
    rows[0, 1] = 1
    assert alg.find_unit_in_space(m, rows) is None


def test_frobenius_matrix_requires_commutative():
    with pytest.raises(ValueError):
        alg.frobenius_matrix(matrix_algebra(2, 2))
