import json
import math

import numpy as np
import pytest

import geo


def test_sphere_distance_and_round_trip():
    s2 = geo.Space({"name": "hypersphere", "n": 2})
    assert s2.dim == 2
    assert s2.point_shape == (3, 1)
    assert s2.dist(np.array([1.0, 0, 0]), np.array([0, 1.0, 0])) == pytest.approx(math.pi / 2, abs=1e-15)

    p = s2.random_point(seed=3)
    v = s2.to_tangent(p, np.array([0.3, -0.2, 0.5]))
    q = s2.exp(p, v)
    assert q.shape == (3,)
    assert s2.belongs(q)
    np.testing.assert_allclose(s2.log(p, q), v, atol=1e-12)


def test_matrix_points_keep_their_shape():
    spd = geo.Space('{"name": "spd", "n": 2}')
    a = np.eye(2)
    b = np.diag([math.e, 1.0])
    assert spd.dist(a, b) == pytest.approx(1.0, abs=1e-12)
    assert spd.log(a, b).shape == (2, 2)

    se3 = geo.Space({"name": "se", "n": 3})
    g = se3.random_point(seed=1)
    assert g.shape == (4, 4)
    assert se3.dist(g, g) == 0.0


def test_errors_carry_codes():
    s2 = geo.Space({"name": "hypersphere", "n": 2})
    with pytest.raises(geo.CutLocusError) as info:
        s2.log(np.array([0, 0, 1.0]), np.array([0, 0, -1.0]))
    assert info.value.code == "cut_locus"
    assert isinstance(info.value, geo.DomainError)

    with pytest.raises(geo.ContractError) as info:
        s2.exp(np.array([0, 0, 1.0]), np.array([0, 0, 1.0]))
    assert info.value.code == "not_tangent"

    with pytest.raises(geo.ShapeError):
        s2.dist(np.array([1.0, 0]), np.array([0, 1.0]))

    with pytest.raises(geo.ContractError) as info:
        geo.Space({"name": "torus"})
    assert info.value.code == "invalid_spec"

    gl = geo.Space({"name": "gl", "n": 2})
    assert not gl.has_metric
    with pytest.raises(geo.ContractError):
        gl.dist(np.eye(2), 2 * np.eye(2))


def test_learning():
    s2 = geo.Space({"name": "hypersphere", "n": 2})
    mid = geo.frechet_mean(s2, [np.array([1.0, 0, 0]), np.array([0, 1.0, 0])])
    assert mid["converged"]
    np.testing.assert_allclose(mid["estimate"], [math.sqrt(0.5), math.sqrt(0.5), 0], atol=1e-8)

    north = [s2.exp(np.array([0, 0, 1.0]), np.array([x, y, 0])) for x, y in [(0.1, 0), (0, 0.1), (-0.1, 0.05)]]
    south = [-p for p in north]
    model = geo.kmeans(s2, north + south, n_clusters=2, seed=0)
    labels = model["labels"]
    assert len(set(labels[:3])) == 1 and len(set(labels[3:])) == 1 and labels[0] != labels[3]

    r2 = geo.Space({"name": "euclidean", "n": 2})
    pts = [np.array(p, dtype=float) for p in [[1, 0], [-1, 0], [0, 0.5], [0, -0.5]]]
    pca = geo.tangent_pca(r2, pts, n_components=2)
    np.testing.assert_allclose(pca["explained_variance"], [0.5, 0.125], atol=1e-12)


def test_cli_in_process():
    code, out, err = geo.run_cli(
        ["op", "dist", "--manifold-spec", '{"name":"hypersphere","n":2}', "--input", "-"],
        stdin='{"a": [1, 0, 0], "b": [0, 1, 0]}',
    )
    assert code == 0, err
    assert json.loads(out)["result"] == pytest.approx(math.pi / 2)

    code, _, err = geo.run_cli(["op", "dist", "--manifold-spec", "nope"])
    assert code == 2
    assert json.loads(err)["error"]
