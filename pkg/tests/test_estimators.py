import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from fcakit import closure_intent, enumerate_concepts, threshold
from fcakit.estimators import (
    ConceptLatticeMiner,
    GradedLatticeMiner,
    MembershipBinarizer,
    check_boolean_matrix,
    check_membership_matrix,
)

SAMPLE_MV = np.array([
    [1.0, 0.1, 0.3, 0.0],
    [0.3, 0.8, 0.5, 0.0],
    [0.3, 1.0, 0.7, 0.5],
    [0.1, 0.1, 1.0, 1.0],
])


def test_check_membership_matrix():
    out = check_membership_matrix([[0.0, 1.0], [0.5, 0.25]])
    assert out.dtype == np.float64
    assert out.shape == (2, 2)
    with pytest.raises(ValueError):
        check_membership_matrix([0.5, 0.5])
    with pytest.raises(ValueError):
        check_membership_matrix([[1.5]])
    with pytest.raises(ValueError):
        check_membership_matrix([[float("nan")]])


def test_check_boolean_matrix():
    out = check_boolean_matrix([[1, 0], [0, 1]])
    assert out.dtype == bool
    assert out[0, 0] and not out[0, 1]
    assert check_boolean_matrix([[True, False]]).dtype == bool
    with pytest.raises(ValueError):
        check_boolean_matrix([[0.5]])
    with pytest.raises(ValueError):
        check_boolean_matrix([1, 0])


def test_binarizer_matches_threshold_function(sample_mv):
    binarized = MembershipBinarizer(theta=0.5).fit_transform(SAMPLE_MV)
    expected = threshold(sample_mv, 0.5).incidence
    assert binarized.tolist() == [list(row) for row in expected]


def test_binarizer_sklearn_conventions():
    est = MembershipBinarizer(theta=0.7)
    assert est.get_params() == {"theta": 0.7}
    est.set_params(theta=0.4)
    assert est.theta == 0.4
    cloned = clone(est)
    assert cloned.get_params() == {"theta": 0.4}
    with pytest.raises(NotFittedError):
        MembershipBinarizer().transform(SAMPLE_MV)
    with pytest.raises(ValueError):
        MembershipBinarizer(theta=1.5).fit(SAMPLE_MV)
    fitted = MembershipBinarizer().fit(SAMPLE_MV)
    assert fitted.n_features_in_ == 4
    with pytest.raises(ValueError):
        fitted.transform(SAMPLE_MV[:, :2])


def test_concept_miner_learns_the_example_lattice(sample_mv):
    miner = ConceptLatticeMiner().fit(SAMPLE_MV >= 0.5)
    assert len(miner.concepts_) == 7
    expected = enumerate_concepts(threshold(sample_mv, 0.5))
    assert [(c.extent, c.intent) for c in miner.concepts_] == [
        (c.extent, c.intent) for c in expected
    ]
    assert miner.lattice_.covers == (
        (1, 0), (2, 0), (3, 2), (4, 2), (5, 3), (5, 4), (6, 1), (6, 5),
    )


def test_concept_miner_transform_closes_each_row():
    X = np.array([[1, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 1], [0, 0, 1, 1]])
    miner = ConceptLatticeMiner().fit(X)
    probe = np.array([[0, 1, 0, 0], [0, 0, 0, 0]])
    out = miner.transform(probe)
    ctx = miner.context_
    assert set(np.flatnonzero(out[0])) == set(closure_intent(ctx, {1}))
    assert set(np.flatnonzero(out[1])) == set(closure_intent(ctx, set()))
    # closing twice changes nothing
    assert np.array_equal(miner.transform(out), out)


def test_concept_miner_guards():
    miner = ConceptLatticeMiner()
    with pytest.raises(NotFittedError):
        miner.transform(np.zeros((1, 2), dtype=bool))
    miner.fit(np.eye(3))
    with pytest.raises(ValueError):
        miner.transform(np.zeros((1, 2), dtype=bool))


def test_graded_miner_on_example_table():
    miner = GradedLatticeMiner(theta=0.5).fit(SAMPLE_MV)
    assert miner.n_features_in_ == 4
    assert len(miner.lattice_.entries) == 5
    assert len(miner.lattice_.skipped) == 2
    assert miner.chain_radii_ == (1.0, 4.0)


def test_graded_miner_sklearn_conventions():
    est = GradedLatticeMiner(theta=0.9)
    assert est.get_params() == {"theta": 0.9}
    assert clone(est).get_params() == {"theta": 0.9}
    with pytest.raises(ValueError):
        GradedLatticeMiner(theta=-1.0).fit(SAMPLE_MV)


def test_binarizer_feeds_miner_in_a_pipeline():
    pipe = Pipeline([
        ("binarize", MembershipBinarizer(theta=0.5)),
        ("mine", ConceptLatticeMiner()),
    ])
    pipe.fit(SAMPLE_MV)
    assert len(pipe.named_steps["mine"].concepts_) == 7
    closed = pipe.transform(SAMPLE_MV)
    assert closed.shape == (4, 4)
    assert closed.dtype == bool
