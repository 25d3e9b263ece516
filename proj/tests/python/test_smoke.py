"""Smoke tests for the python bindings."""

import math

import pytest

import streambench as sb


def test_generate_shapes_and_determinism():
    a = sb.generate("synth:hyperplane,seed=1,n=500")
    b = sb.generate("synth:hyperplane,seed=1,n=500")
    assert len(a) == len(b) == 500
    assert all(len(x.features) == 3 for x in a)
    assert all(x.label in (0, 1) for x in a)
    assert all(x.features == y.features and x.label == y.label for x, y in zip(a, b))

    spec = sb.dataset_spec("synth:randomtree,n=100")
    assert spec.dimensionality == 6
    assert spec.num_classes == 10


def test_classifier_roundtrip_and_prequential():
    stream = sb.generate("synth:hyperplane,seed=2,n=2000")
    spec = sb.dataset_spec("synth:hyperplane,seed=2,n=2000")
    clf = sb.make_classifier("nb", {}, spec, seed=1)
    assert clf.predict(sb.Instance([0.1, 0.2, 0.3])) == 0  # untrained default

    report = sb.prequential_run(clf, stream, report_every=50)
    assert report.elements == 2000
    assert len(report.timeline) == 40
    assert 0.0 <= report.final_macro_f1 <= 1.0
    assert report.timeline[-1].elements == 2000


def test_mondrian_memory_stays_at_the_configured_arena():
    spec = sb.dataset_spec("synth:hyperplane,n=1000")
    clf = sb.make_classifier("mf", {"trees": 5, "mem_kb": 100}, spec, seed=3)
    stream = sb.generate("synth:hyperplane,seed=5,n=1000")
    report = sb.prequential_run(clf, stream)
    assert clf.memory_bytes() == 100 * 1024
    assert all(p.memory_bytes == 100 * 1024 for p in report.timeline)


def test_macro_f1_and_hoeffding_bound():
    assert sb.macro_f1([0, 1, 1], [0, 1, 0], num_classes=2) == pytest.approx(
        (2 / 3 + 2 / 3) / 2
    )
    assert sb.hoeffding_bound(1.0, 0.01, 10) == pytest.approx(0.479853, abs=1e-6)
    with pytest.raises(ValueError):
        sb.hoeffding_bound(1.0, 2.0, 10)


def test_drift_and_shuffle():
    stream = [sb.Instance([float(i)], i % 4) for i in range(10)]
    shifted = sb.inject_drift(stream, position=5, shift=1, num_classes=4)
    assert [x.label for x in shifted[:5]] == [0, 1, 2, 3, 0]
    assert [x.label for x in shifted[5:]] == [(i % 4 + 1) % 4 for i in range(5, 10)]

    shuffled = sb.shuffle_stream(stream, seed=7)
    assert sorted(x.features[0] for x in shuffled) == [float(i) for i in range(10)]
    assert sb.shuffle_stream(stream, seed=7)[0].features == shuffled[0].features

    with pytest.raises(ValueError):
        sb.inject_drift(stream, position=5, shift=4, num_classes=4)


def test_meanstd_features():
    feats = sb.meanstd_features([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    assert feats[0] == pytest.approx(2.0)
    assert feats[1] == pytest.approx(math.sqrt(2.0 / 3.0))
    assert feats[2] == pytest.approx(5.0)
    assert feats[3] == pytest.approx(0.0)


def test_unknown_classifier_raises():
    spec = sb.StreamSpec(3, 2)
    with pytest.raises(ValueError):
        sb.make_classifier("nope", {}, spec)
