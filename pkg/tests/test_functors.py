import random

import pytest

from _support import fixture_quivers, random_dims, random_quiver
from quiverkit.catalog import doubled_ends_a5, kronecker, linear_a
from quiverkit.dimvec import Verdict, coxeter_apply, coxeter_matrix, regularity_check, simple_reflection
from quiverkit.errors import (
    InjectiveSummandPresent,
    NotASink,
    NotASource,
    NotRegularInput,
    ProjectiveSummandPresent,
)
from quiverkit.functors import (
    ScanVerdict,
    ar_translate,
    ar_translate_inverse,
    coxeter_minus,
    coxeter_plus,
    reflect_sink,
    reflect_source,
    regular_hom_witness,
    sink_defect,
    source_defect,
    summand_defect_scan,
)
from quiverkit.linalg import mat_power
from quiverkit.quiver import Quiver
from quiverkit.representation import (
    build_injective,
    build_projective,
    build_simple,
    direct_sum,
    end_dim,
    general_position_sample,
    hom_dim,
    random_rep,
)

DOUBLED = doubled_ends_a5()


def _sinks(q):
    return [i for i in q.vertices if q.is_sink(i)]


def _sources(q):
    return [i for i in q.vertices if q.is_source(i)]


# -- single reflections ----------------------------------------------------------------------


def test_simple_at_other_vertex_is_unchanged():
    q = linear_a(4)
    S = build_simple(q, 3)
    Y = reflect_sink(S, 1)
    assert Y.dims == S.dims
    assert Y.quiver == q.reflect(1)


def test_simple_at_the_sink_is_killed():
    q = linear_a(3)
    S = build_simple(q, 1)
    assert sink_defect(S, 1) == 1
    assert reflect_sink(S, 1).is_zero()


def test_single_vertex_quiver():
    q = Quiver(1, [])
    X = random_rep(q, (3,), 5, 0)
    assert sink_defect(X, 1) == 3 and source_defect(X, 1) == 3
    assert reflect_sink(X, 1).is_zero()


def test_wrong_vertex_kind():
    X = random_rep(DOUBLED, (1, 1, 0, 1, 1), 5, 0)
    with pytest.raises(NotASink):
        reflect_sink(X, 5)
    with pytest.raises(NotASource):
        reflect_source(X, 1)


def test_sink_dimension_law():
    rng = random.Random(31)
    count = 0
    while count < 100:
        q = random_quiver(rng)
        X = random_rep(q, random_dims(rng, q), 5, rng.randrange(10_000))
        for i in _sinks(q):
            Y = reflect_sink(X, i)
            d = sink_defect(X, i)
            expected = list(simple_reflection(q, i, X.dims))
            expected[i - 1] += d
            assert list(Y.dims) == expected
            count += 1


def test_source_dimension_law():
    rng = random.Random(32)
    for _ in range(60):
        q = random_quiver(rng)
        X = random_rep(q, random_dims(rng, q), 5, rng.randrange(10_000))
        for i in _sources(q):
            Y = reflect_source(X, i)
            expected = list(simple_reflection(q, i, X.dims))
            expected[i - 1] += source_defect(X, i)
            assert list(Y.dims) == expected


def test_planted_simple_summand_is_counted():
    rng = random.Random(33)
    for _ in range(40):
        q = random_quiver(rng)
        i = rng.choice(_sinks(q))
        X = random_rep(q, random_dims(rng, q, 3), 5, rng.randrange(10_000))
        k = rng.randint(1, 2)
        Z = X
        for _ in range(k):
            Z = direct_sum(Z, build_simple(q, i))
        assert sink_defect(Z, i) == sink_defect(X, i) + k


def test_reflection_round_trip():
    rng = random.Random(34)
    checked = 0
    while checked < 40:
        q = random_quiver(rng)
        X = random_rep(q, random_dims(rng, q, 3), 5, rng.randrange(10_000))
        i = rng.choice(_sinks(q))
        if sink_defect(X, i):
            continue
        Y = reflect_sink(X, i)
        assert source_defect(Y, i) == 0
        Z = reflect_source(Y, i)
        assert Z.quiver == q and Z.dims == X.dims
        # X and Z are isomorphic: Hom(X, Z) has the size of End X
        assert end_dim(Z) == end_dim(X) == hom_dim(X, Z)
        checked += 1


# -- Coxeter functors -----------------------------------------------------------------------


def test_coxeter_plus_kills_projectives_at_their_vertex():
    for q in fixture_quivers().values():
        for i in q.vertices:
            Y, defects = coxeter_plus(build_projective(q, i))
            assert Y.is_zero() and defects == ((i, 1),)
            assert Y.quiver == q


def test_coxeter_minus_kills_injectives():
    for q in fixture_quivers().values():
        for i in q.vertices:
            Y, defects = coxeter_minus(build_injective(q, i))
            assert Y.is_zero() and defects == ((i, 1),)


def test_defect_free_sweeps_follow_coxeter_transformation():
    rng = random.Random(35)
    checked = 0
    for q in fixture_quivers().values():
        for _ in range(10):
            x = tuple(rng.randint(0, 3) for _ in q.vertices)
            X = random_rep(q, x, 5, rng.randrange(10_000))
            Y, defects = coxeter_plus(X)
            if not defects:
                assert Y.dims == coxeter_apply(q, x, 1)
                checked += 1
            Y, defects = coxeter_minus(X)
            if not defects:
                assert Y.dims == coxeter_apply(q, x, -1)
    assert checked > 10


def test_translate_errors():
    with pytest.raises(ProjectiveSummandPresent):
        ar_translate(build_projective(DOUBLED, 3))
    with pytest.raises(InjectiveSummandPresent):
        ar_translate_inverse(build_injective(DOUBLED, 3))


def test_translate_round_trip():
    for seed in range(5):
        X = general_position_sample(DOUBLED, (1, 1, 0, 1, 1), trials=50, seed=seed).rep
        Y = ar_translate(X)
        assert Y.dims == coxeter_apply(DOUBLED, X.dims, 1)
        Z = ar_translate_inverse(Y)
        assert Z.dims == X.dims
        assert hom_dim(X, Z) == end_dim(X) == end_dim(Z)


# -- summand scans ----------------------------------------------------------------------------


def test_planted_preprojective_found_at_right_sweep():
    rng = random.Random(36)
    q = DOUBLED
    regular = general_position_sample(q, (1, 1, 0, 1, 1), trials=50, seed=1).rep
    for _ in range(5):
        i = rng.choice(list(q.vertices))
        k = rng.randint(0, 1)
        P = build_projective(q, i)
        for _ in range(k):
            P = ar_translate_inverse(P)
        scan = summand_defect_scan(direct_sum(regular, P))
        assert scan.forward.verdict is ScanVerdict.SUMMAND_FOUND
        assert (k + 1, i, 1) in scan.forward.defects
        assert scan.backward.verdict is ScanVerdict.PREINJECTIVE_FREE


def test_planted_preinjective_found():
    q = kronecker(3)
    regular = general_position_sample(q, (1, 1), trials=50).rep
    I = ar_translate(build_injective(q, 2))
    scan = summand_defect_scan(direct_sum(regular, I))
    assert (2, 2, 1) in scan.backward.defects
    assert scan.forward.verdict is ScanVerdict.PREPROJECTIVE_FREE


def test_kronecker_simples():
    q = kronecker(2)
    scan = summand_defect_scan(build_simple(q, 2))
    assert scan.forward.defects == ((1, 2, 1),)
    scan = summand_defect_scan(build_simple(q, 1))
    assert scan.backward.defects == ((1, 1, 1),)


def test_scan_with_short_bound_is_inconclusive():
    X = general_position_sample(DOUBLED, (17, 11, 4, 3, 1), trials=20).rep
    scan = summand_defect_scan(X, bound=1)
    assert scan.exposure.forward > 1
    if not scan.forward.defects:
        assert scan.forward.verdict is ScanVerdict.INCONCLUSIVE
    with pytest.raises(ValueError):
        summand_defect_scan(X, bound=0)


def test_defects_agree_with_regularity_on_fixtures():
    rng = random.Random(37)
    for name, q in fixture_quivers().items():
        for _ in range(5):
            x = tuple(rng.randint(0, 3) for _ in q.vertices)
            if not any(x):
                continue
            cert = regularity_check(q, x)
            X = general_position_sample(q, x, trials=30, seed=rng.randrange(1000)).rep
            scan = summand_defect_scan(X)
            if cert.verdict is Verdict.NOT_REGULAR:
                assert not scan.clean, (name, x)
            elif cert.verdict is Verdict.REGULAR:
                assert scan.clean, (name, x)


# -- Hom witness --------------------------------------------------------------------------------


def test_doubled_hom_witness():
    w = regular_hom_witness(DOUBLED, (1, 1, 0, 1, 1), seed=0)
    assert w.t == 2
    assert w.r == (17, 11, 4, 3, 1)
    assert w.euler == 4
    assert w.hom_dim >= 4 and w.hom_dim - w.ext_dim == 4
    assert w.scan_r.clean


def test_kronecker_hom_witness():
    w = regular_hom_witness(kronecker(3), (1, 1), seed=3)
    assert w.t == 1 and w.r == (2, 5)
    assert w.hom_dim >= w.euler > 0


def test_hom_witness_rejects_projective():
    with pytest.raises(NotRegularInput):
        regular_hom_witness(DOUBLED, build_projective(DOUBLED, 1).dims)


def test_hom_witness_is_deterministic():
    a = regular_hom_witness(kronecker(3), (1, 1), seed=7)
    b = regular_hom_witness(kronecker(3), (1, 1), seed=7)
    assert a.sample_x.rep == b.sample_x.rep and a.sample_r.rep == b.sample_r.rep


def test_simple_at_sink_plus_regular():
    regular = general_position_sample(DOUBLED, (1, 1, 0, 1, 1), trials=50).rep
    scan = summand_defect_scan(direct_sum(build_simple(DOUBLED, 1), regular))
    assert scan.forward.defects == ((1, 1, 1),)


def test_planted_projective_and_simple():
    rng = random.Random(38)
    for name, q in fixture_quivers().items():
        i = rng.choice(list(q.vertices))
        j = rng.choice(_sinks(q))
        scan = summand_defect_scan(direct_sum(build_projective(q, i), build_simple(q, j)))
        # S(j) at a sink is P(j): both summands are removed by the first sweep
        found = sorted((s, v) for s, v, m in scan.forward.defects for _ in range(m))
        assert found == sorted([(1, i), (1, j)]), name


@pytest.mark.parametrize("name, x, sweeps", [("~D4", (1, 2, 1, 1, 1), 10), ("K2", (2, 2), 10), ("doubled5", (1, 1, 0, 1, 1), 3)])
def test_sweeps_track_coxeter_powers(name, x, sweeps):
    # dimensions grow like 3.73^t on the wild quiver, so it gets fewer sweeps
    q = fixture_quivers()[name]
    X = general_position_sample(q, x, trials=50).rep
    phi = coxeter_matrix(q)
    for t in range(1, sweeps + 1):
        X, defects = coxeter_plus(X)
        assert not defects
        assert list(X.dims) == mat_power(phi, t).apply(x)
