#include <cmath>
#include <numbers>

#include "geo/learning/frechet_mean.hpp"
#include "geo/learning/gradient_descent.hpp"
#include "geo/learning/kmeans.hpp"
#include "geo/learning/tangent_pca.hpp"
#include "geo/linalg.hpp"
#include "geo/random.hpp"
#include "geo/spaces/euclidean.hpp"
#include "geo/spaces/hyperbolic.hpp"
#include "geo/spaces/hypersphere.hpp"
#include "geo/spaces/spd.hpp"
#include "geo/spaces/special_orthogonal.hpp"
#include "test_util.hpp"

namespace geo {
namespace {

using std::numbers::pi;
using testing::max_abs;
using testing::near;
using testing::vec;

// Points in the geodesic ball of the given radius around `center`.
Batch cap(const HypersphereMetric& s, const Vector& center, double radius, int count, Rng& rng) {
  Batch out;
  while (static_cast<int>(out.size()) < count) {
    Matrix v = s.random_tangent(center, rng);
    v *= radius * std::sqrt(uniform01(rng)) / v.norm();
    out.push_back(s.exp(center, v));
  }
  return out;
}

double sphere_variance(const Batch& data, const Vector& x) {
  double f = 0.0;
  for (const Matrix& p : data) {
    const Eigen::Vector3d a = x, b = p.col(0);
    const double t = std::atan2(a.cross(b).norm(), a.dot(b));
    f += t * t;
  }
  return f;
}

Vector from_angles(double theta, double phi) {
  return vec({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
}

// Zooming grid search on (theta, phi) around the north pole region.
Vector brute_force_minimizer(const Batch& data) {
  double theta = 0.5, phi = 0.0, half = 1.0;
  for (int level = 0; level < 24; ++level) {
    double best = std::numeric_limits<double>::infinity();
    double bt = theta, bp = phi;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double t = theta + half * i / 10.0;
        const double p = phi + half * j / 10.0;
        const double f = sphere_variance(data, from_angles(t, p));
        if (f < best) {
          best = f;
          bt = t;
          bp = p;
        }
      }
    }
    theta = bt;
    phi = bp;
    half *= 0.3;
  }
  return from_angles(theta, phi);
}

TEST(FrechetMean, TrivialCases) {
  const HypersphereMetric s2(2);
  const Vector p = vec({0, 0.6, 0.8});
  const FrechetMeanResult single = frechet_mean(s2, {p});
  EXPECT_TRUE(near(single.estimate, p, 0.0));
  EXPECT_LE(single.n_iter, 1);
  EXPECT_TRUE(single.converged);

  const EuclideanMetric r3(3);
  Rng rng(71);
  Batch data;
  Vector sum = Vector::Zero(3);
  for (int i = 0; i < 25; ++i) {
    data.push_back(standard_normal(3, 1, rng));
    sum += data.back();
  }
  EXPECT_TRUE(near(frechet_mean(r3, data).estimate, sum / 25.0, 1e-12));
}

TEST(FrechetMean, WeightedEuclidean) {
  const EuclideanMetric r2(2);
  const Batch data{vec({0, 0}), vec({4, 0}), vec({0, 8})};
  const FrechetMeanResult r = frechet_mean(r2, data, {1.0, 1.0, 2.0});
  EXPECT_TRUE(near(r.estimate, vec({1, 4}), 1e-12));
  EXPECT_THROW(frechet_mean(r2, data, {1.0, -1.0, 1.0}), ContractError);
  EXPECT_THROW(frechet_mean(r2, Batch{}), ContractError);
}

TEST(FrechetMean, TwoSpherePointsGiveMidpoint) {
  const HypersphereMetric s2(2);
  const FrechetMeanResult r = frechet_mean(s2, {vec({1, 0, 0}), vec({0, 1, 0})});
  const double c = std::cos(pi / 4);
  EXPECT_TRUE(near(r.estimate, vec({c, c, 0}), 1e-8));
}

TEST(FrechetMean, CapMatchesBruteForceMinimizer) {
  const HypersphereMetric s2(2);
  Rng rng(72);
  for (int trial = 0; trial < 3; ++trial) {
    const Vector center = from_angles(0.4 + 0.2 * trial, 0.3 * trial);
    const Batch data = cap(s2, center, 0.5, 10, rng);
    const FrechetMeanResult r = frechet_mean(s2, data);
    ASSERT_TRUE(r.converged);
    EXPECT_LT((r.estimate - brute_force_minimizer(data)).norm(), 1e-5);
  }
}

TEST(FrechetMean, StationarityAcrossManifolds) {
  Rng rng(73);
  const double tol = 1e-7;
  FrechetMeanOptions options;
  options.tol = tol;
  auto check = [&](const RiemannianMetric& m, const Batch& data) {
    const FrechetMeanResult r = frechet_mean(m, data, {}, options);
    ASSERT_TRUE(r.converged) << m.manifold().name();
    EXPECT_LT(r.final_step_norm, tol);
    Matrix sum = Matrix::Zero(m.tangent_shape().rows, m.tangent_shape().cols);
    for (const Matrix& x : data) sum += m.log(r.estimate, x);
    EXPECT_LT(m.norm(r.estimate, sum), 10 * tol) << m.manifold().name();
  };
  const HypersphereMetric s2(2);
  check(s2, cap(s2, vec({0, 0, 1}), 0.8, 30, rng));
  const HyperboloidMetric h2(2);
  Batch hyp;
  for (int i = 0; i < 30; ++i) {
    const Matrix o = vec({1, 0, 0});
    hyp.push_back(h2.exp(o, 0.7 * h2.random_tangent(o, rng)));
  }
  check(h2, hyp);
  const SPDAffineMetric spd(3);
  Batch mats;
  for (int i = 0; i < 30; ++i) mats.push_back(spd.manifold().random_point(rng));
  check(spd, mats);
  const SOBiInvariantMetric so3(3);
  Batch rots;
  for (int i = 0; i < 30; ++i) {
    const Matrix id = Matrix::Identity(3, 3);
    Matrix v = so3.random_tangent(id, rng);
    rots.push_back(so3.exp(id, 0.5 * v / so3.norm(id, v)));
  }
  check(so3, rots);
}

TEST(FrechetMean, RotationEquivariance) {
  const HypersphereMetric s2(2);
  Rng rng(74);
  for (int trial = 0; trial < 10; ++trial) {
    const Batch data = cap(s2, vec({0, 0, 1}), 0.7, 12, rng);
    const Matrix r = linalg::qr(standard_normal(3, 3, rng)).q;
    Batch rotated;
    for (const Matrix& x : data) rotated.push_back(r * x);
    EXPECT_LT((frechet_mean(s2, rotated).estimate - r * frechet_mean(s2, data).estimate).norm(), 1e-6);
  }
}

TEST(FrechetMean, UnconvergedIsFlagged) {
  const HypersphereMetric s2(2);
  Rng rng(75);
  FrechetMeanOptions options;
  options.max_iter = 1;
  options.tol = 1e-15;
  const FrechetMeanResult r = frechet_mean(s2, cap(s2, vec({0, 0, 1}), 1.0, 20, rng), {}, options);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.n_iter, 1);
}

TEST(FrechetMean, CutLocusIsDomainError) {
  const HypersphereMetric s2(2);
  FrechetMeanOptions options;
  options.init = vec({1, 0, 0});
  EXPECT_THROW(frechet_mean(s2, {vec({-1, 0, 0}), vec({0, 1, 0})}, {}, options), DomainError);
}

TEST(FrechetVariance, Identities) {
  const EuclideanMetric r3(3);
  Rng rng(76);
  Batch data;
  for (int i = 0; i < 40; ++i) data.push_back(standard_normal(3, 1, rng));
  const Matrix mean = frechet_mean(r3, data).estimate;
  Matrix cov = Matrix::Zero(3, 3);
  for (const Matrix& x : data) cov += (x - mean) * (x - mean).transpose();
  cov /= 40.0;
  EXPECT_NEAR(frechet_variance(r3, data, mean), cov.trace(), 1e-12);
  EXPECT_EQ(frechet_variance(r3, Batch(5, mean), mean), 0.0);

  const HypersphereMetric s2(2);
  const Batch sdata = cap(s2, vec({0, 0, 1}), 0.6, 15, rng);
  const Matrix smean = frechet_mean(s2, sdata).estimate;
  const Matrix r = linalg::qr(standard_normal(3, 3, rng)).q;
  Batch rotated;
  for (const Matrix& x : sdata) rotated.push_back(r * x);
  EXPECT_NEAR(frechet_variance(s2, rotated, r * smean), frechet_variance(s2, sdata, smean), 1e-12);
}

TEST(TangentPCA, EuclideanMatchesClassicalPCA) {
  const EuclideanMetric r4(4);
  Rng rng(77);
  Matrix mix = standard_normal(4, 4, rng);
  Batch data;
  Matrix x(50, 4);
  for (int i = 0; i < 50; ++i) {
    data.push_back(mix * standard_normal(4, 1, rng));
    x.row(i) = data.back().transpose();
  }
  const Vector mean = x.colwise().mean().transpose();
  const Matrix centered = x.rowwise() - mean.transpose();
  const Matrix cov = centered.transpose() * centered / 50.0;
  Eigen::SelfAdjointEigenSolver<Matrix> oracle(cov);

  TangentPCA pca(r4, 4);
  pca.fit(data, mean);
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(pca.explained_variance()(k), oracle.eigenvalues()(3 - k), 1e-10);
    EXPECT_NEAR(std::abs(pca.components()[k].col(0).dot(oracle.eigenvectors().col(3 - k))), 1.0, 1e-8);
  }
  EXPECT_NEAR(pca.explained_variance().sum(), pca.total_variance(), 1e-10);
  EXPECT_NEAR(pca.explained_variance_ratio().sum(), 1.0, 1e-12);
  EXPECT_THROW(TangentPCA(r4, 5), ContractError);
}

TEST(TangentPCA, SingleGeodesic) {
  const HypersphereMetric s2(2);
  const Vector base = vec({0, 0, 1});
  const Vector dir = vec({0.6, 0.8, 0});
  Batch data;
  for (int i = 0; i < 21; ++i) data.push_back(s2.exp(base, (-1.0 + 0.1 * i) * dir));
  TangentPCA pca(s2, 2);
  pca.fit(data, base);
  EXPECT_GT(pca.explained_variance_ratio()(0), 0.999);
  EXPECT_NEAR(std::abs(pca.components()[0].col(0).dot(dir)), 1.0, 1e-10);
}

TEST(TangentPCA, TransformReconstructionAndOrthonormality) {
  const SPDAffineMetric spd(2);
  Rng rng(78);
  Batch data;
  for (int i = 0; i < 30; ++i) data.push_back(spd.manifold().random_point(rng));
  const Matrix base = frechet_mean(spd, data).estimate;
  TangentPCA pca(spd, 3);
  pca.fit(data, base);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      EXPECT_NEAR(spd.inner_product(base, pca.components()[a], pca.components()[b]), a == b ? 1.0 : 0.0, 1e-8);
    }
    if (a > 0) EXPECT_GE(pca.explained_variance()(a - 1), pca.explained_variance()(a));
  }
  const Matrix coeffs = pca.transform(data);
  ASSERT_EQ(coeffs.rows(), 30);
  for (int k = 0; k < 3; ++k) {
    const double mean = coeffs.col(k).mean();
    EXPECT_NEAR(mean, 0.0, 1e-10);
    EXPECT_NEAR((coeffs.col(k).array() - mean).square().mean(), pca.explained_variance()(k), 1e-8);
  }
  const Batch back = pca.inverse_transform(coeffs);
  for (int i = 0; i < 30; ++i) EXPECT_LT(max_abs(back[i] - data[i]), 1e-8);
  // The base point sits at minus the tangent mean; zero at the Fréchet mean.
  EXPECT_LT(max_abs(pca.transform({base})), 1e-6);
}

TEST(TangentPCA, BaseTransformIsMinusMeanOffset) {
  const EuclideanMetric r2(2);
  const Batch data{vec({1, 0}), vec({3, 0}), vec({2, 1}), vec({2, -1})};
  TangentPCA pca(r2, 2);
  pca.fit(data, vec({0, 0}));
  const Matrix c = pca.transform({vec({0, 0})});
  // Mean offset is (2, 0): coefficients are its projections with a minus sign.
  Vector expected(2);
  for (int k = 0; k < 2; ++k) expected(k) = -pca.components()[k].col(0).dot(vec({2, 0}));
  EXPECT_TRUE(near(c.row(0).transpose(), expected, 1e-12));
}

TEST(KMeans, AntipodalCaps) {
  const HypersphereMetric s2(2);
  Rng rng(79);
  const Vector north = vec({0.3, -0.2, 0.93}).normalized();
  Batch data = cap(s2, north, 0.4, 20, rng);
  const Batch south = cap(s2, -north, 0.4, 20, rng);
  data.insert(data.end(), south.begin(), south.end());
  for (std::uint64_t seed : {0u, 1u, 2u, 3u}) {
    KMeansOptions options;
    options.seed = seed;
    const KMeansModel m = kmeans_fit(s2, data, options);
    EXPECT_TRUE(m.converged);
    for (int i = 1; i < 40; ++i) EXPECT_EQ(m.labels[i] == m.labels[0], i < 20) << i;
    for (std::size_t t = 1; t < m.inertia_history.size(); ++t) {
      EXPECT_LE(m.inertia_history[t], m.inertia_history[t - 1] + 1e-12);
    }
  }
}

TEST(KMeans, InertiaMonotoneAndLabelsNearest) {
  const SPDAffineMetric spd(2);
  Rng rng(80);
  Batch data;
  for (int i = 0; i < 60; ++i) data.push_back(spd.manifold().random_point(rng));
  KMeansOptions options;
  options.n_clusters = 4;
  options.seed = 9;
  const KMeansModel m = kmeans_fit(spd, data, options);
  ASSERT_GE(m.inertia_history.size(), 2u);
  for (std::size_t t = 1; t < m.inertia_history.size(); ++t) {
    EXPECT_LE(m.inertia_history[t], m.inertia_history[t - 1] + 1e-12);
  }
  double inertia = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    int best = 0;
    for (int j = 1; j < 4; ++j) {
      if (spd.dist(m.centroids[j], data[i]) < spd.dist(m.centroids[best], data[i])) best = j;
    }
    EXPECT_EQ(m.labels[i], best);
    EXPECT_EQ(m.predict(spd, data[i]), best);
    inertia += std::pow(spd.dist(m.centroids[best], data[i]), 2);
  }
  EXPECT_NEAR(m.inertia, inertia, 1e-9);
}

TEST(KMeans, Reductions) {
  const HypersphereMetric s2(2);
  Rng rng(81);
  const Batch data = cap(s2, vec({0, 0, 1}), 0.5, 8, rng);
  KMeansOptions one;
  one.n_clusters = 1;
  const KMeansModel m1 = kmeans_fit(s2, data, one);
  EXPECT_LT((m1.centroids[0] - frechet_mean(s2, data).estimate).norm(), 1e-6);
  KMeansOptions all;
  all.n_clusters = 8;
  const KMeansModel m8 = kmeans_fit(s2, data, all);
  EXPECT_LT(m8.inertia, 1e-20);
  std::vector<int> sorted = m8.labels;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 8; ++i) EXPECT_EQ(sorted[i], i);
  all.n_clusters = 9;
  EXPECT_THROW(kmeans_fit(s2, data, all), ContractError);
}

TEST(KMeans, Deterministic) {
  const HypersphereMetric s2(2);
  Rng rng(82);
  const Batch data = cap(s2, vec({0, 0, 1}), 1.2, 50, rng);
  KMeansOptions options;
  options.n_clusters = 3;
  options.seed = 5;
  const KMeansModel a = kmeans_fit(s2, data, options);
  const KMeansModel b = kmeans_fit(s2, data, options);
  EXPECT_EQ(a.labels, b.labels);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(a.centroids[j], b.centroids[j]);
}

TEST(KMeans, DuplicatePoints) {
  const EuclideanMetric r2(2);
  const Batch data{vec({0, 0}), vec({0, 0}), vec({0, 0}), vec({5, 5})};
  KMeansOptions options;
  options.n_clusters = 3;
  const KMeansModel m = kmeans_fit(r2, data, options);
  EXPECT_LT(m.inertia, 1e-20);
}

TEST(OnlineKMeans, EuclideanStreamIsRunningMean) {
  const EuclideanMetric r2(2);
  Rng rng(83);
  OnlineKMeans online(r2, 2);
  EXPECT_EQ(online.partial_fit(vec({-10, 0})), 0);
  EXPECT_TRUE(near(online.centroids()[0], vec({-10, 0}), 0.0));
  EXPECT_EQ(online.partial_fit(vec({10, 0})), 1);
  Vector sums[2] = {vec({-10, 0}), vec({10, 0})};
  int counts[2] = {1, 1};
  for (int i = 0; i < 200; ++i) {
    const Vector x = standard_normal(2, 1, rng) + (i % 2 ? vec({10, 0}) : vec({-10, 0}));
    const int j = online.partial_fit(x);
    ASSERT_EQ(j, i % 2);
    sums[j] += x;
    ++counts[j];
  }
  for (int j = 0; j < 2; ++j) {
    EXPECT_TRUE(near(online.centroids()[j], sums[j] / counts[j], 1e-12));
    EXPECT_EQ(online.counts()[j], counts[j]);
  }
}

TEST(OnlineKMeans, RepeatedSampleAndRejection) {
  const HypersphereMetric s2(2);
  OnlineKMeans online(s2, 1);
  online.partial_fit(vec({1, 0, 0}));
  const Vector target = vec({0, 0.6, 0.8});
  double last = s2.dist(online.centroids()[0], target);
  for (int i = 0; i < 30; ++i) {
    online.partial_fit(target);
    const double d = s2.dist(online.centroids()[0], target);
    EXPECT_LT(d, last);
    last = d;
  }
  OnlineKMeans fresh(s2, 1);
  fresh.partial_fit(vec({1, 0, 0}));
  EXPECT_EQ(fresh.partial_fit(vec({-1, 0, 0})), -1);
  EXPECT_EQ(fresh.n_rejected(), 1);
  EXPECT_EQ(fresh.counts()[0], 1);
}

TEST(GradientDescent, LinearFieldOnSphere) {
  const HypersphereMetric s2(2);
  const Vector a = vec({0, 0, 1});
  const ScalarField f{[&](const Matrix& x) { return a.dot(x.col(0)); }, [&](const Matrix&) { return Matrix(a); }};
  const GradientDescentResult r = riemannian_gradient_descent(s2, f, vec({1, 0, 0}));
  EXPECT_LE(r.n_iter, 200);
  EXPECT_LT(s2.dist(r.x, -a), 1e-6);
  for (std::size_t i = 1; i < r.values.size(); ++i) EXPECT_LE(r.values[i], r.values[i - 1]);
}

TEST(GradientDescent, ConstantField) {
  const HypersphereMetric s2(2);
  const ScalarField f{[](const Matrix&) { return 2.0; }, [](const Matrix&) { return Matrix(Matrix::Zero(3, 1)); }};
  const Vector x0 = vec({0, 1, 0});
  const GradientDescentResult r = riemannian_gradient_descent(s2, f, x0);
  EXPECT_EQ(r.n_iter, 0);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(near(r.x, x0, 0.0));
}

TEST(GradientDescent, SquaredDistanceMatchesLog) {
  const HypersphereMetric s2(2);
  const Vector p = vec({0.2, 0.3, 0.9}).normalized();
  // Ambient gradient of acos(<x, p>)^2 / 2.
  const ScalarField f{[&](const Matrix& x) {
                        const double t = std::acos(std::clamp(x.col(0).dot(p), -1.0, 1.0));
                        return 0.5 * t * t;
                      },
                      [&](const Matrix& x) {
                        const double c = std::clamp(x.col(0).dot(p), -1.0, 1.0);
                        const double t = std::acos(c);
                        const double s = std::sqrt(1.0 - c * c);
                        return Matrix(s < 1e-12 ? Vector::Zero(3) : Vector(-(t / s) * p));
                      }};
  GradientDescentOptions options;
  options.lr = 0.5;
  const GradientDescentResult r = riemannian_gradient_descent(s2, f, vec({1, 0, 0}), options);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(s2.dist(r.x, p), 1e-7);
  for (const Matrix& x : r.trace) {
    if (s2.dist(x, p) < 1e-9) continue;
    EXPECT_LT(max_abs(riemannian_gradient(s2, f, x) + s2.log(x, p)), 1e-6);
  }
}

TEST(GradientDescent, GradientMatchesFiniteDifferences) {
  const HypersphereMetric s2(2);
  const Vector a = vec({0.3, -0.5, 0.8});
  const ScalarField linear{[&](const Matrix& x) { return a.dot(x.col(0)); }, [&](const Matrix&) { return Matrix(a); }};
  const ScalarField quadratic{[&](const Matrix& x) { return 0.5 * (x.col(0) - a).squaredNorm(); },
                              [&](const Matrix& x) { return Matrix(x.col(0) - a); }};
  Rng rng(84);
  const double h = 1e-6;
  for (const ScalarField* f : {&linear, &quadratic}) {
    for (int i = 0; i < 50; ++i) {
      const Matrix x = s2.manifold().random_point(rng);
      const Matrix u = s2.random_tangent(x, rng);
      const double fd = (f->value(s2.exp(x, h * u)) - f->value(s2.exp(x, -h * u))) / (2 * h);
      EXPECT_NEAR(s2.inner_product(x, riemannian_gradient(s2, *f, x), u), fd, 1e-5);
    }
  }
  const GradientDescentResult r = riemannian_gradient_descent(s2, quadratic, vec({0, 1, 0}));
  for (std::size_t i = 1; i < r.values.size(); ++i) EXPECT_LE(r.values[i], r.values[i - 1] + 1e-12);
}

TEST(GradientDescent, UnconvergedIsFlagged) {
  const HypersphereMetric s2(2);
  const Vector a = vec({0, 0, 1});
  const ScalarField f{[&](const Matrix& x) { return a.dot(x.col(0)); }, [&](const Matrix&) { return Matrix(a); }};
  GradientDescentOptions options;
  options.max_iter = 3;
  const GradientDescentResult r = riemannian_gradient_descent(s2, f, vec({1, 0, 0}), options);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.n_iter, 3);
}

}  // namespace
}  // namespace geo
