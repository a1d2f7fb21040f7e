import random

import pytest

from unirack.ffield import make_field
from unirack.matgroup import (
    Endo, GroupError, Mat, apply_endo, class_orbit, classical_order,
    enumerate_group, format_partition, group_spec, is_unipotent, j_mat,
    jordan_partition, mat_from_ints, membership, random_element,
    split_classes, subgroup_closure, symplectic_form,
)


def transvection(spec):
    "id + e_{1,n} lands in the highest-root subgroup for both forms."
    F, n = spec.field, spec.n
    flat = list(Mat.identity(F, n).flat)
    flat[n - 1] = 1
    return Mat(F, n, flat)


def test_identity_membership_everywhere():
    for fam, n, q in [("Sp", 4, 2), ("Sp", 4, 3), ("SL", 2, 3), ("GL", 2, 4),
                      ("SU", 3, 2), ("GU", 3, 2)]:
        spec = group_spec(fam, n, q)
        assert membership(spec.identity(), spec)
        for g in spec.generators:
            assert membership(g, spec)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_transvection_membership(q):
    spec = group_spec("Sp", 4, q)
    assert membership(transvection(spec), spec)


def test_determinant_constraint():
    spec = group_spec("SL", 3, 4)
    F = spec.field
    bad = Mat(F, 3, (F.generator, 0, 0, 0, 1, 0, 0, 0, 1))
    assert not membership(bad, spec)
    assert membership(bad, group_spec("GL", 3, 4))


def test_group_orders_by_formula():
    assert classical_order("Sp", 4, 2) == 720
    assert classical_order("Sp", 4, 3) == 51840
    assert classical_order("SL", 2, 3) == 24
    assert classical_order("GU", 3, 2) == 648
    assert classical_order("SU", 3, 2) == 216
    assert classical_order("Sp", 6, 2) == 1451520


def test_sp42_order_by_enumeration():
    spec = group_spec("Sp", 4, 2)
    closure = enumerate_group(spec)
    assert closure.complete and closure.size == 720 == spec.order


def test_sl23_order_by_enumeration():
    spec = group_spec("SL", 2, 3)
    assert enumerate_group(spec).size == 24


def test_su3_gu3_orders_by_enumeration():
    su = group_spec("SU", 3, 2)
    gu = group_spec("GU", 3, 2)
    assert enumerate_group(su).size == 216
    assert enumerate_group(gu).size == 648


def test_gu32_matches_twist_fixed_points():
    "Brute scan of GL_3(F_4): the twist-fixed invertibles are exactly GU_3(2)."
    gu = group_spec("GU", 3, 2)
    F = gu.field
    tw = Endo.unitary_twist(2)
    closure = enumerate_group(gu)
    for X in list(closure.mats())[:100]:
        assert apply_endo(X, tw) == X
    rng = random.Random(5)
    outside = 0
    while outside < 50:
        flat = tuple(rng.randrange(F.q) for _ in range(9))
        try:
            X = Mat(F, 3, flat)
            X.inverse()
        except GroupError:
            continue
        fixed = apply_endo(X, tw) == X
        assert fixed == closure.contains(X)
        outside += 1


def test_sp43_order_by_enumeration():
    spec = group_spec("Sp", 4, 3)
    assert enumerate_group(spec).size == 51840


@pytest.mark.slow
@pytest.mark.parametrize("fam,n,q,order", [("Sp", 4, 4, 979200),
                                           ("Sp", 6, 2, 1451520)])
def test_large_orders_by_enumeration_slow(fam, n, q, order):
    spec = group_spec(fam, n, q)
    assert spec.order == order
    assert enumerate_group(spec, cap=2 * 10**6).size == order


def test_jordan_partition_basics():
    F = make_field(3, 1)
    assert jordan_partition(Mat.identity(F, 4)) == (1, 1, 1, 1)
    full = mat_from_ints(F, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    assert jordan_partition(full) == (4,)
    spec = group_spec("Sp", 4, 3)
    assert jordan_partition(transvection(spec)) == (2, 1, 1)
    with pytest.raises(GroupError):
        jordan_partition(mat_from_ints(F, [[2, 0], [0, 1]]))
    assert format_partition((2, 1, 1)) == "(1^2,2)"


def test_jordan_partition_conjugation_invariant():
    spec = group_spec("Sp", 4, 3)
    u = transvection(spec)
    rng = random.Random(11)
    for _ in range(20):
        g = random_element(spec, rng)
        assert jordan_partition(u.conj(g)) == (2, 1, 1)


def test_block_jordan_oracle():
    "Assemble block-diagonal unipotents per partition; recover the partition."
    F = make_field(5, 1)
    rng = random.Random(3)
    for parts in [(3, 2, 1), (2, 2), (4,), (3, 3), (2, 1, 1)]:
        n = sum(parts)
        flat = [0] * (n * n)
        pos = 0
        for s in parts:
            for k in range(s):
                flat[(pos + k) * n + pos + k] = 1
                if k + 1 < s:
                    flat[(pos + k) * n + pos + k + 1] = 1
            pos += s
        X = Mat(F, n, flat)
        assert jordan_partition(X) == tuple(sorted(parts, reverse=True))
        g = None
        while g is None:
            cand = Mat(F, n, tuple(rng.randrange(5) for _ in range(n * n)))
            try:
                cand.inverse()
                g = cand
            except GroupError:
                pass
        assert jordan_partition(X.conj(g)) == tuple(sorted(parts, reverse=True))


def test_orbit_central_and_transvections():
    spec = group_spec("Sp", 4, 3)
    orb_id = class_orbit(spec.identity(), spec)
    assert orb_id.size == 1
    orb = class_orbit(transvection(spec), spec)
    assert orb.size == 40 == (3**4 - 1) // 2
    spec2 = group_spec("Sp", 4, 2)
    orb2 = class_orbit(transvection(spec2), spec2)
    assert orb2.size == 15 == 2**4 - 1
    # 15 is also the transposition count of the symmetric group on 6 points
    assert orb2.size == 6 * 5 // 2


def test_orbit_transversal():
    spec = group_spec("Sp", 4, 2)
    orb = class_orbit(transvection(spec), spec, want_transversal=True)
    rep = orb.rep()
    for X in list(orb.mats())[:8]:
        g = orb.conjugator_to(X)
        assert rep.conj(g) == X


def test_orbit_times_stabilizer_is_group_order():
    spec = group_spec("Sp", 4, 2)
    u = transvection(spec)
    orb = class_orbit(u, spec)
    stab = sum(1 for g in enumerate_group(spec).mats() if u.conj(g) == u)
    assert orb.size * stab == spec.order


def test_membership_conjugation_stable():
    spec = group_spec("Sp", 4, 3)
    rng = random.Random(23)
    for _ in range(25):
        g = random_element(spec, rng)
        x = random_element(spec, rng)
        assert membership(x.conj(g), spec)


def test_subgroup_closure_basics():
    spec = group_spec("Sp", 4, 3)
    F = spec.field
    assert subgroup_closure([spec.identity()]).size == 1
    # two commuting transvections generate an elementary abelian p^2 group
    a = transvection(spec)
    flat = list(spec.identity().flat)
    flat[1 * 4 + 2] = 1   # the other long-root subgroup commutes with it
    b = Mat(F, 4, flat)
    assert membership(b, spec)
    assert a * b == b * a
    assert subgroup_closure([a, b]).size == 9


def test_split_classes_partitions_input():
    spec = group_spec("Sp", 4, 2)
    orb = class_orbit(transvection(spec), spec)
    mats = list(orb.mats())
    parts = split_classes(mats, spec)
    assert len(parts) == 1 and parts[0].size == 15
    assert sorted(b for p in parts for b in p.members) == sorted(m.pack() for m in mats)


def test_unitary_twist_square_is_field_frobenius():
    F4 = make_field(2, 2)
    tw = Endo.unitary_twist(2)
    rng = random.Random(17)
    count = 0
    while count < 100:
        flat = tuple(rng.randrange(4) for _ in range(9))
        X = Mat(F4, 3, flat)
        try:
            X.inverse()
        except GroupError:
            continue
        twice = apply_endo(apply_endo(X, tw), tw)
        assert twice == apply_endo(X, Endo.frobenius_power(2))
        count += 1


def test_endo_identity_and_composite():
    spec = group_spec("Sp", 4, 3)
    u = transvection(spec)
    assert apply_endo(u, Endo.frobenius_power(0)) == u
    g = sorted(spec.generators)[0]
    e = Endo.composite(Endo.conjugation_by(g), Endo.conjugation_by(g.inverse()))
    assert apply_endo(u, e) == u


def test_twisted_split_trivial_center_action():
    """The twisted orbits of the scalar mu_3 subgroup of SL_3(F_4) under the
    unitary twist are singletons: the twist fixes the center pointwise."""
    F4 = make_field(2, 2)
    spec = group_spec("SU", 3, 2)
    w = F4.generator
    scalars = [Mat(F4, 3, (c, 0, 0, 0, c, 0, 0, 0, c)) for c in (1, w, F4.mul(w, w))]
    tw = Endo.unitary_twist(2)
    for z in scalars:
        assert apply_endo(z, tw) == z
    parts = split_classes(scalars, spec, mode="twisted", endo=tw)
    assert len(parts) == 3


def test_symplectic_form_shapes():
    F3 = make_field(3, 1)
    B = symplectic_form(F3, 4)
    assert B.rows() == [[0, 0, 0, 1], [0, 0, 1, 0], [0, 2, 0, 0], [2, 0, 0, 0]]
    F2 = make_field(2, 1)
    assert symplectic_form(F2, 4) == j_mat(F2, 4)


def test_is_unipotent_matches_p_power_order():
    "Unipotent == p-element, checked by repeated squaring on even q."
    spec = group_spec("Sp", 4, 2)
    rng = random.Random(31)
    for _ in range(40):
        x = random_element(spec, rng)
        byorder = False
        acc = x
        for _ in range(6):
            acc = acc * acc
        byorder = acc.is_identity()
        assert is_unipotent(x) == byorder


def test_opposite_transvections_generate_inside_rank_one_copy():
    "id + e_{1,2n} and its opposite generate within the corner SL_2 block."
    spec = group_spec("Sp", 4, 3)
    F = spec.field
    u = transvection(spec)
    v_flat = list(Mat.identity(F, 4).flat)
    v_flat[3 * 4 + 0] = 2
    v = Mat(F, 4, v_flat)
    assert membership(v, spec)
    closure = subgroup_closure([u, v])
    for m in closure.mats():
        # corner embedding: rows 2 and 3 of the middle block stay identity
        assert m.entry(1, 1) == 1 and m.entry(2, 2) == 1
        assert m.entry(1, 2) == 0 and m.entry(2, 1) == 0
        assert m.entry(0, 1) == 0 and m.entry(0, 2) == 0
    assert closure.size <= 24 * 2    # inside the rank-one subgroup
