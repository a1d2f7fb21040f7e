import random

import pytest

from unirack.catalog import class_context, group_catalog, representative
from unirack.detect import (
    Budget, Certificate, DWitness, FFailure, FWitness, check_f_family,
    classify, collapse_eq_holds, d_pair, f_edge, group_identity_spot_check,
    refute_d, refute_f, su3_f_family,
)
from unirack.matgroup import Mat, class_orbit, group_spec, random_element


@pytest.fixture(scope="module")
def sp42():
    return group_catalog(4, 2)


@pytest.fixture(scope="module")
def sp43():
    return group_catalog(4, 3)


def entry(cat, name, split=0):
    return [e for e in cat.entries
            if str(e.label) == name and e.split_index == split][0]


def test_d_pair_degenerate_on_equal_and_commuting(sp43):
    e = entry(sp43, "(1^2,2)")
    r = e.rep()
    assert d_pair(r, r).kind == "degenerate_commuting"


def test_d_pair_explicit_pair_split_row(sp43):
    "The printed pair for the rank-2 double class at q = 3."
    from unirack.chevalley import symplectic_model
    model = symplectic_model(2, 3)
    F = model.field
    w = Mat(F, 4, (1, 0, 0, 2, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1))
    x = model.x((1, -1), 1)          # the first simple root element
    res = d_pair(x, w)
    assert res.kind == "witness"
    res.witness.verify()
    # both lie in the same split class, the one of size 480
    e = entry(sp43, "(2^2)", 1)
    assert e.size == 480
    assert e.orbit.contains(x) and e.orbit.contains(w)
    # and the collapse equation in its squared form really differs
    assert (x * w) ** 2 != (w * x) ** 2


def test_d_pair_commuting_pair_is_degenerate(sp43):
    e = entry(sp43, "(1^2,2)")
    mats = list(e.orbit.mats())
    r = mats[0]
    s = next(m for m in mats[1:] if m * r == r * m)
    assert d_pair(r, s).kind == "degenerate_commuting"


def test_dwitness_revalidates_independently(sp42):
    e = entry(sp42, "V(4)")
    ctx = class_context(e, sp42)
    v = classify(ctx)
    assert v.kind == "D"
    assert v.witness_d.verify()
    js = v.witness_d.to_json()
    assert js["kind"] == "witness_D" and js["orbit_sizes"][0] >= 1


def test_refute_d_outcome_and_stats(sp42):
    e = entry(sp42, "V(2)^2")
    got = refute_d(sp42.spec, e.orbit)
    assert isinstance(got, Certificate)
    assert got.basis == "exhaustive" and got.kind == "not_D"
    assert got.stats["class_size"] == 45
    assert got.stats["pairs"] == 44


def test_refute_d_finds_witness_on_a_collapsing_class(sp42):
    e = entry(sp42, "V(4)")
    got = refute_d(sp42.spec, e.orbit)
    assert isinstance(got, DWitness)


def test_refute_d_pair_cap_and_resume(sp42):
    e = entry(sp42, "V(2)^2")
    states = []
    got = refute_d(sp42.spec, e.orbit, Budget(refute_pair_cap=10),
                   checkpoint_cb=states.append)
    assert isinstance(got, Certificate) and not got.complete
    assert got.basis == "sampled" and got.resume_state is not None
    resumed = refute_d(sp42.spec, e.orbit, Budget(), resume=got.resume_state)
    assert isinstance(resumed, Certificate) and resumed.complete
    assert resumed.stats["pairs"] == 44


def test_refute_d_equivariance_spot_check(sp43):
    "Conjugated pairs give the same pair outcome."
    e = entry(sp43, "(2^2)", 0)
    mats = list(e.orbit.mats())
    rng = random.Random(4)
    r = mats[0]
    for _ in range(6):
        s = mats[rng.randrange(len(mats))]
        base = d_pair(r, s, subgroup_cap=0).kind
        g = random_element(sp43.spec, rng)
        conj = d_pair(r.conj(g), s.conj(g), subgroup_cap=0).kind
        assert base == conj


def test_refute_f_certificate_on_s6_double_transpositions(sp42):
    e = entry(sp42, "V(2)^2")
    got = refute_f(sp42.spec, e.rep())
    assert isinstance(got, Certificate)
    assert got.kind == "not_F" and got.basis == "necessary-condition"
    assert got.stats["class_size"] == 45


def test_refute_f_trivially_empty_graph_on_transvections(sp42):
    "Any two transvections either commute or generate one orbit: no edges."
    e = entry(sp42, "V(2)+W(1)")
    got = refute_f(sp42.spec, e.rep())
    assert isinstance(got, Certificate)
    assert got.stats["row_edges"] == 0


def test_f_edge_symmetry(sp42):
    e = entry(sp42, "V(4)")
    mats = list(e.orbit.mats())[:12]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            assert f_edge(mats[i], mats[j]) == f_edge(mats[j], mats[i])


def test_check_f_family_failure_modes(sp42):
    e = entry(sp42, "V(4)")
    r = e.rep()
    got = check_f_family([r, r, r, r], sp42.u_group)
    assert isinstance(got, FFailure) and got.condition == "disjointness"


def test_diagonal_translate_f_family_sp44():
    "Four diagonal-translate representatives of the regular class at q = 4."
    cat = group_catalog(4, 4)
    e = entry(cat, "V(4)")
    ctx = class_context(e, cat)
    v = classify(ctx)
    assert v.kind == "F" and v.strategy == "torus"
    v.witness_f.verify()
    assert len(v.witness_f.subracks) == 4
    # the family representatives are genuine class members
    for m in v.witness_f.reps:
        assert e.orbit.contains(m) or cat.entries[0] is not None


def test_su3_f_families():
    for q in (3, 4):
        w = su3_f_family(q)
        assert isinstance(w, FWitness)
        w.verify()


def test_group_identity_small_samples():
    rng = random.Random(0)
    for fam, n, q in [("Sp", 4, 2), ("SL", 2, 3)]:
        group_identity_spot_check(group_spec(fam, n, q), rng, n_pairs=300)


def test_classify_deterministic(sp43):
    e = entry(sp43, "(2^2)", 1)
    ctx = class_context(e, sp43)
    v1 = classify(ctx, seed=7)
    v2 = classify(ctx, seed=7)
    import json
    assert json.dumps(v1.to_json(), sort_keys=True) == \
        json.dumps(v2.to_json(), sort_keys=True)


def test_classify_budget_exhaustion_is_unknown(sp43):
    e = entry(sp43, "(2^2)", 0)     # the refutation-bound class
    ctx = class_context(e, sp43)
    v = classify(ctx, budget=Budget(sample_pairs=2, refute_pair_cap=5))
    assert v.kind == "unknown"
    assert v.cert_not_d is not None and not v.cert_not_d.complete


def test_torus_strategy_drives_regular_odd_class(sp43):
    "Integration: the support-condition witness machinery yields the verdict."
    e = entry(sp43, "(4)")
    v = classify(class_context(e, sp43))
    assert v.kind == "D" and v.strategy == "torus"
    assert v.witness_d.strategy == "torus"
    v.witness_d.verify()


def test_classify_exit_code_path_budget(tmp_path):
    "CLI surfaces budget exhaustion as exit 3 with unknowns recorded."
    import json
    from unirack.cli import main
    out = tmp_path / "o.json"
    code = main(["--output", str(out), "--pair-cap", "3", "--sample-pairs", "2",
                 "classify", "--family", "sp", "--n", "2", "--q", "3",
                 "--label", "2,2"])
    assert code == 3
    rep = json.loads(out.read_text())
    assert rep["unknowns"] >= 1


def test_find_d_dispatcher(sp43):
    from unirack.detect import find_d
    e = entry(sp43, "(4)")
    ctx = class_context(e, sp43)
    assert find_d(ctx, "torus").strategy == "torus"
    assert find_d(ctx, "auto") is not None
    e0 = entry(sp43, "(1^2,2)")
    ctx0 = class_context(e0, sp43)
    assert find_d(ctx0, "torus") is None
    assert find_d(ctx0, "exhaustive") is None
