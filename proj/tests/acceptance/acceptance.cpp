// Runs the nine acceptance checks and prints one PASS/FAIL line per check.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "geo/cli.hpp"
#include "geo/figures.hpp"
#include "geo/io/json.hpp"
#include "geo/io/spec.hpp"
#include "geo/learning/frechet_mean.hpp"
#include "geo/learning/gradient_descent.hpp"
#include "geo/learning/kmeans.hpp"
#include "geo/learning/tangent_pca.hpp"
#include "geo/linalg.hpp"
#include "geo/numerics.hpp"
#include "geo/random.hpp"
#include "geo/spaces/curves.hpp"
#include "geo/spaces/euclidean.hpp"
#include "geo/spaces/hyperbolic.hpp"
#include "geo/spaces/hypersphere.hpp"
#include "geo/spaces/special_euclidean.hpp"
#include "geo/spaces/special_orthogonal.hpp"
#include "geo/spaces/spd.hpp"

namespace {

using namespace geo;
using io::json;
using std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  // Records a named measurement against its bound.
  void check(const std::string& what, double value, double bound, bool strict = true) {
    const bool ok = strict ? value < bound : value <= bound;
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << "=" << std::setprecision(3) << value
           << (ok ? "" : " (FAILED)");
  }
  void require(const std::string& what, bool ok) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? " ok" : " (FAILED)");
  }
};

double frob(const Matrix& m) { return m.norm(); }

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

io::Space space_of(const std::string& text) { return io::Space(io::parse_manifold_spec(json::parse(text))); }

std::string label_of(const io::Space& s) {
  const io::ManifoldSpec& spec = s.spec();
  std::string label = spec.name + "/" + spec.metric;
  if (!spec.representation.empty() && spec.representation != "extrinsic") label += "/" + spec.representation;
  if (spec.inner_matrix) label += "/weighted";
  if (spec.base) label += "(" + spec.base->name + ")";
  return label;
}

// ---- 1 -----------------------------------------------------------------------

// Tangent at p, rescaled to a length drawn uniformly below the bound.
Matrix bounded_tangent(const io::Space& s, const Point& p, Rng& rng) {
  Matrix v = s.connection().random_tangent(p, rng);
  const double u = 0.05 + 0.9 * uniform01(rng);
  if (const RiemannianMetric* m = s.metric()) {
    const double inj = m->injectivity_radius();
    const double bound = std::isfinite(inj) ? 0.95 * inj : 3.0;
    return v * (u * bound / m->norm(p, v));
  }
  if (s.spec().name == "gl") return v * (u / frob(linalg::inverse(p) * v));
  return v * (u * 3.0 / frob(v));
}

Verdict criterion_1() {
  Verdict verdict;
  const char* specs[] = {
      R"({"name":"euclidean","n":3})",
      R"({"name":"minkowski","n":3})",
      R"({"name":"hypersphere","n":2})",
      R"({"name":"hypersphere","n":4})",
      R"({"name":"hyperbolic","n":2})",
      R"({"name":"hyperbolic","n":3,"representation":"ball"})",
      R"({"name":"spd","n":3,"metric":"affine-invariant"})",
      R"({"name":"spd","n":3,"metric":"log-euclidean"})",
      R"({"name":"so","n":3})",
      R"({"name":"so","n":4})",
      R"({"name":"se","n":3,"metric":"left-invariant"})",
      R"({"name":"se","n":3,"metric":"right-invariant"})",
      R"({"name":"se","n":2,"metric":{"family":"left-invariant","inner_matrix":[[2,0,0],[0,1,0.2],[0,0.2,0.5]]}})",
      R"({"name":"gl","n":3})",
      R"({"name":"stiefel","n":4,"p":2})",
      R"({"name":"grassmann","n":4,"p":2})",
      R"({"name":"curves","k":12,"d":2,"metric":"l2"})",
      R"({"name":"curves","k":12,"d":2,"metric":"srv"})",
      R"({"name":"landmarks","k":3,"base":{"name":"hypersphere","n":2}})",
  };
  for (const char* text : specs) {
    const io::Space s = space_of(text);
    Rng rng(1001);
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
      const Point p = s.manifold().random_point(rng);
      const Matrix v = bounded_tangent(s, p, rng);
      try {
        worst = std::max(worst, frob(s.connection().log(p, s.connection().exp(p, v)) - v));
      } catch (const Error& e) {
        ++failures;
        worst = std::numeric_limits<double>::infinity();
      }
    }
    verdict.check(label_of(s), worst, 1e-6);
    if (failures) verdict.detail << " [" << failures << " raised]";
  }
  return verdict;
}

// ---- 2 -----------------------------------------------------------------------

Verdict criterion_2() {
  Verdict verdict;
  struct Case {
    const char* spec;
    double local_radius;  // 0 samples globally; otherwise a ball around a random center
  };
  const Case cases[] = {
      {R"({"name":"euclidean","n":3})", 0},
      {R"({"name":"hypersphere","n":2})", 0},
      {R"({"name":"hyperbolic","n":2})", 0},
      {R"({"name":"hyperbolic","n":2,"representation":"ball"})", 0},
      {R"({"name":"spd","n":3})", 0},
      {R"({"name":"spd","n":3,"metric":"log-euclidean"})", 0},
      {R"({"name":"so","n":3})", 0},
      {R"({"name":"se","n":3})", 0},
      {R"({"name":"se","n":3,"metric":"right-invariant"})", 0},
      {R"({"name":"stiefel","n":4,"p":2})", 0.4},
      {R"({"name":"grassmann","n":4,"p":2})", 0},
      {R"({"name":"curves","k":10,"d":2,"metric":"l2"})", 0},
      {R"({"name":"curves","k":10,"d":2,"metric":"srv"})", 0},
      {R"({"name":"landmarks","k":3,"base":{"name":"hypersphere","n":2}})", 0},
  };
  for (const Case& c : cases) {
    const io::Space s = space_of(c.spec);
    const RiemannianMetric& m = s.require_metric("acceptance");
    Rng rng(2002);
    const Point center = s.manifold().random_point(rng);
    auto draw = [&]() -> Point {
      if (c.local_radius == 0) return s.manifold().random_point(rng);
      Matrix v = m.random_tangent(center, rng);
      return m.exp(center, v * (c.local_radius * uniform01(rng) / m.norm(center, v)));
    };
    double asym = 0.0, self = 0.0, excess = -std::numeric_limits<double>::infinity();
    int raised = 0;
    for (int i = 0; i < 1000; ++i) {
      const Point a = draw(), b = draw(), x = draw();
      try {
        const double ab = m.dist(a, b), ba = m.dist(b, a), bx = m.dist(b, x), ax = m.dist(a, x);
        asym = std::max(asym, std::abs(ab - ba));
        self = std::max(self, m.dist(a, a));
        excess = std::max(excess, ax - ab - bx);
      } catch (const Error&) {
        ++raised;
      }
    }
    const std::string name = label_of(s);
    const bool ok = asym < 1e-8 && self < 1e-10 && excess <= 1e-8 && raised == 0;
    if (!ok) verdict.pass = false;
    verdict.detail << (verdict.detail.tellp() > 0 ? "; " : "") << name << " sym=" << std::setprecision(2) << asym
                   << " id=" << self << " tri=" << excess << (raised ? " raised" : "") << (ok ? "" : " (FAILED)");
  }
  return verdict;
}

// ---- 3 -----------------------------------------------------------------------

Vector embed(const Vector& c) {
  return vec({std::sin(c(0)) * std::cos(c(1)), std::sin(c(0)) * std::sin(c(1)), std::cos(c(0))});
}

Matrix jacobian(const Vector& c) {
  Matrix j(3, 2);
  j << std::cos(c(0)) * std::cos(c(1)), -std::sin(c(0)) * std::sin(c(1)), std::cos(c(0)) * std::sin(c(1)),
      std::sin(c(0)) * std::cos(c(1)), -std::sin(c(0)), 0.0;
  return j;
}

Verdict criterion_3() {
  Verdict verdict;
  const ChristoffelField chart = ChristoffelField::from_metric(
      2,
      [](const Vector& c) {
        Matrix g = Matrix::Identity(2, 2);
        g(1, 1) = std::sin(c(0)) * std::sin(c(0));
        return g;
      },
      [](const Vector& c) { return c(0) > 1e-3 && c(0) < pi - 1e-3; });
  Rng rng(3003);
  double exp_err = 0.0, log_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vector c = vec({1.0 + 1.1 * uniform01(rng), 2 * pi * uniform01(rng)});
    const Vector cdot = vec({0.5 * (2 * uniform01(rng) - 1), 0.5 * (2 * uniform01(rng) - 1)});
    const Vector end = exp_by_integration(chart, c, cdot, 100);
    exp_err = std::max(exp_err, (embed(end) - sphere::exp(embed(c), jacobian(c) * cdot)).norm());
    const Vector target = c + vec({0.6 * (uniform01(rng) - 0.5), 0.6 * (uniform01(rng) - 0.5)});
    const Vector shot = log_by_shooting(chart, c, target);
    log_err = std::max(log_err, (jacobian(c) * shot - sphere::log(embed(c), embed(target))).norm());
  }
  const HypersphereMetric s2(2);
  double ladder_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Matrix p = s2.manifold().random_point(rng);
    const Matrix v = s2.random_tangent(p, rng);
    Matrix d = s2.random_tangent(p, rng);
    d *= (0.2 + 1.3 * uniform01(rng)) / d.norm();
    const Matrix ladder = transport_by_ladder(s2, v, p, s2.exp(p, d), 50);
    ladder_err = std::max(ladder_err, (ladder - s2.parallel_transport(v, p, d)).norm());
  }
  verdict.check("exp_by_integration", exp_err, 1e-6);
  verdict.check("log_by_shooting", log_err, 1e-6);
  verdict.check("transport_by_ladder(50)", ladder_err, 1e-5);
  return verdict;
}

// ---- 4 -----------------------------------------------------------------------

Verdict criterion_4() {
  Verdict verdict;
  const HypersphereMetric s2(2);
  verdict.check("|S2 dist(e1,e2)-pi/2|", std::abs(s2.dist(vec({1, 0, 0}), vec({0, 1, 0})) - pi / 2), 1e-15, false);
  const PoincareBallMetric ball(2);
  verdict.check("|ball dist(0,(0.5,0))-ln3|", std::abs(ball.dist(vec({0, 0}), vec({0.5, 0})) - std::log(3.0)), 1e-12);
  const SPDAffineMetric spd(2);
  Matrix p = Matrix::Identity(2, 2);
  p(0, 0) = std::exp(1.0);
  verdict.check("|SPD dist(I,diag(e,1))-1|", std::abs(spd.dist(Matrix::Identity(2, 2), p) - 1.0), 1e-12);
  const SOBiInvariantMetric so3(3);
  Matrix rz = Matrix::Identity(3, 3);
  rz(0, 0) = 0.0;
  rz(1, 1) = 0.0;
  rz(0, 1) = -1.0;
  rz(1, 0) = 1.0;
  verdict.check("|SO3 dist(I,Rz(pi/2))-sqrt2*pi/2|",
                std::abs(so3.dist(Matrix::Identity(3, 3), rz) - std::numbers::sqrt2 * pi / 2), 1e-10);
  return verdict;
}

// ---- 5 -----------------------------------------------------------------------

Verdict criterion_5() {
  Verdict verdict;
  Rng rng(5005);
  double sphere_err = 0.0, spd_err = 0.0, so_err = 0.0, srv_err = 0.0;
  const HypersphereMetric s3(3);
  const SPDAffineMetric spd(3);
  const SOBiInvariantMetric so3(3);
  const DiscretizedCurves curves(20, 3);
  for (int i = 0; i < 100; ++i) {
    const Matrix r = linalg::qr(standard_normal(4, 4, rng)).q;
    const Matrix p = s3.manifold().random_point(rng), q = s3.manifold().random_point(rng);
    sphere_err = std::max(sphere_err, std::abs(s3.dist(r * p, r * q) - s3.dist(p, q)));

    const Matrix a = standard_normal(3, 3, rng) + 2.0 * Matrix::Identity(3, 3);
    const Matrix x = spd.manifold().random_point(rng), y = spd.manifold().random_point(rng);
    spd_err = std::max(spd_err, std::abs(spd.dist(linalg::sym(a * x * a.transpose()), linalg::sym(a * y * a.transpose())) -
                                         spd.dist(x, y)));

    const Matrix g = so3.manifold().random_point(rng);
    const Matrix r1 = so3.manifold().random_point(rng), r2 = so3.manifold().random_point(rng);
    const double d = so3.dist(r1, r2);
    so_err = std::max({so_err, std::abs(so3.dist(g * r1, g * r2) - d), std::abs(so3.dist(r1 * g, r2 * g) - d)});

    const Matrix c1 = curves.random_point(rng), c2 = curves.random_point(rng);
    const Vector b = standard_normal(3, 1, rng);
    srv_err = std::max(srv_err, std::abs(curves::srv_dist(c1.rowwise() + b.transpose(), c2.rowwise() + b.transpose()) -
                                         curves::srv_dist(c1, c2)));
  }
  verdict.check("sphere rotation", sphere_err, 1e-8);
  verdict.check("SPD congruence", spd_err, 1e-8);
  verdict.check("SO(3) bi-invariance", so_err, 1e-8);
  verdict.check("SRV translation", srv_err, 1e-8);
  return verdict;
}

// ---- 6 -----------------------------------------------------------------------

Batch sphere_cap(const HypersphereMetric& s, const Vector& center, double radius, int count, Rng& rng) {
  Batch out;
  while (static_cast<int>(out.size()) < count) {
    Matrix v = s.random_tangent(center, rng);
    out.push_back(s.exp(center, v * (radius * std::sqrt(uniform01(rng)) / v.norm())));
  }
  return out;
}

double cap_variance(const Batch& data, double theta, double phi) {
  const Eigen::Vector3d x(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
  double f = 0.0;
  for (const Matrix& p : data) {
    const Eigen::Vector3d y = p.col(0);
    const double t = std::atan2(x.cross(y).norm(), x.dot(y));
    f += t * t;
  }
  return f;
}

Verdict criterion_6() {
  Verdict verdict;
  Rng rng(6006);
  const HypersphereMetric s2(2);

  const Matrix mid = frechet_mean(s2, {vec({1, 0, 0}), vec({0, 1, 0})}).estimate;
  verdict.check("two-point mean", (mid - vec({std::cos(pi / 4), std::sin(pi / 4), 0})).norm(), 1e-8);

  // Brute force: zooming grid over spherical angles, independent of log/exp.
  double cap_err = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Vector center = vec({std::sin(0.5) * std::cos(trial), std::sin(0.5) * std::sin(trial), std::cos(0.5)});
    const Batch data = sphere_cap(s2, center, 0.5, 10, rng);
    double theta = 0.5, phi = trial, half = 1.0;
    for (int level = 0; level < 24; ++level) {
      double best = std::numeric_limits<double>::infinity(), bt = theta, bp = phi;
      for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) {
          const double f = cap_variance(data, theta + half * i / 10, phi + half * j / 10);
          if (f < best) {
            best = f;
            bt = theta + half * i / 10;
            bp = phi + half * j / 10;
          }
        }
      }
      theta = bt;
      phi = bp;
      half *= 0.3;
    }
    const Vector oracle = vec({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
    cap_err = std::max(cap_err, (frechet_mean(s2, data).estimate - oracle).norm());
  }
  verdict.check("cap mean vs brute force", cap_err, 1e-5);

  const EuclideanMetric r5(5);
  const Matrix mix = standard_normal(5, 5, rng);
  Batch flat;
  Matrix rows(80, 5);
  for (int i = 0; i < 80; ++i) {
    flat.push_back(mix * standard_normal(5, 1, rng));
    rows.row(i) = flat.back().transpose();
  }
  const Matrix centered = rows.rowwise() - rows.colwise().mean();
  Eigen::SelfAdjointEigenSolver<Matrix> classical(centered.transpose() * centered / 80.0);
  TangentPCA pca(r5, 5);
  pca.fit(flat, rows.colwise().mean().transpose());
  double pca_err = 0.0;
  for (int k = 0; k < 5; ++k) {
    pca_err = std::max(pca_err, std::abs(pca.explained_variance()(k) - classical.eigenvalues()(4 - k)));
  }
  verdict.check("tangent PCA eigenvalues", pca_err, 1e-10);

  const Vector pole = vec({0.2, -0.3, 0.93}).normalized();
  Batch caps = sphere_cap(s2, pole, 0.4, 20, rng);
  const Batch other = sphere_cap(s2, -pole, 0.4, 20, rng);
  caps.insert(caps.end(), other.begin(), other.end());
  KMeansOptions options;
  options.n_clusters = 2;
  options.seed = 7;
  const KMeansModel km = kmeans_fit(s2, caps, options);
  int label_errors = 0;
  for (int i = 0; i < 40; ++i) label_errors += (km.labels[i] == km.labels[0]) != (i < 20);
  verdict.check("k-means label errors", label_errors, 0, false);
  double rise = 0.0;
  for (std::size_t t = 1; t < km.inertia_history.size(); ++t) {
    rise = std::max(rise, km.inertia_history[t] - km.inertia_history[t - 1]);
  }
  // Also on a harder, overlapping dataset.
  const Batch spread = sphere_cap(s2, pole, 1.5, 200, rng);
  options.n_clusters = 5;
  const KMeansModel km5 = kmeans_fit(s2, spread, options);
  for (std::size_t t = 1; t < km5.inertia_history.size(); ++t) {
    rise = std::max(rise, km5.inertia_history[t] - km5.inertia_history[t - 1]);
  }
  verdict.check("max Lloyd inertia increase", rise, 0.0, false);

  const Vector a = vec({0, 0, 1});
  const ScalarField f{[&](const Matrix& x) { return a.dot(x.col(0)); }, [&](const Matrix&) { return Matrix(a); }};
  const GradientDescentResult gd = riemannian_gradient_descent(s2, f, vec({1, 0, 0}));
  verdict.check("descent dist(x*,-a)", s2.dist(gd.x, -a), 1e-6);
  verdict.check("descent iterations", gd.n_iter, 200, false);
  return verdict;
}

// ---- 7 -----------------------------------------------------------------------

json run_cli(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  if (code != 0) throw std::runtime_error("geo " + args.at(0) + " failed: " + err.str());
  return json::parse(out.str());
}

Verdict criterion_7() {
  Verdict verdict;
  const json grid = run_cli({"figure", "poincare-grid"});
  double max_norm = 0.0, speed_spread = 0.0;
  std::size_t n_points = 0;
  for (const json& g : grid.at("geodesics")) {
    std::vector<double> speeds;
    const json& pts = g.at("points");
    const json& ts = g.at("t");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vector y = io::vector_from_json(pts[i]);
      max_norm = std::max(max_norm, y.norm());
      ++n_points;
      if (i > 0) {
        const double dt = ts[i].get<double>() - ts[i - 1].get<double>();
        speeds.push_back(hyperbolic::ball_dist(io::vector_from_json(pts[i - 1]), y) / dt);
      }
    }
    const auto [lo, hi] = std::minmax_element(speeds.begin(), speeds.end());
    speed_spread = std::max(speed_spread, (*hi - *lo) / *hi);
  }
  verdict.check("max disk norm", max_norm, 1.0);
  verdict.check("relative speed spread", speed_spread, 1e-4);
  verdict.detail << " over " << grid.at("geodesics").size() << " geodesics / " << n_points << " points";

  double pose_err = 0.0;
  const std::vector<std::pair<std::string, std::string>> requests = {
      {"", ""},
      {R"({"rotation_vector":[0.5,0.1,-0.2],"translation":[-1,0,3]})",
       R"({"rotation_vector":[-0.4,1.9,0.7],"translation":[4,-2,1]})"},
  };
  for (const auto& [start, end] : requests) {
    std::vector<std::string> args = {"figure", "se3-geodesic"};
    if (!start.empty()) args.insert(args.end(), {"--start", start, "--end", end});
    const json fig = run_cli(args);
    const Matrix want_start = io::matrix_from_json(fig.at("start"));
    const Matrix want_end = io::matrix_from_json(fig.at("end"));
    if (!start.empty()) {
      const json js = json::parse(start), je = json::parse(end);
      pose_err = std::max(pose_err, (se::homogeneous(linalg::rodrigues(io::vector_from_json(js.at("rotation_vector"))),
                                                     io::vector_from_json(js.at("translation"))) - want_start).norm());
      pose_err = std::max(pose_err, (se::homogeneous(linalg::rodrigues(io::vector_from_json(je.at("rotation_vector"))),
                                                     io::vector_from_json(je.at("translation"))) - want_end).norm());
    }
    const json& samples = fig.at("samples");
    for (const auto& [sample, want] : {std::pair{samples.front(), want_start}, std::pair{samples.back(), want_end}}) {
      const Matrix got = se::homogeneous(io::matrix_from_json(sample.at("rotation")),
                                         io::vector_from_json(sample.at("translation")));
      pose_err = std::max(pose_err, (got - want).cwiseAbs().maxCoeff());
    }
  }
  verdict.check("se3 endpoint error", pose_err, 1e-8);
  return verdict;
}

// ---- 8 -----------------------------------------------------------------------

Verdict criterion_8() {
  Verdict verdict;
  for (const char* text : {R"({"name":"hypersphere","n":3})", R"({"name":"spd","n":3})", R"({"name":"se","n":3})"}) {
    const io::Space s = space_of(text);
    const RiemannianMetric& m = s.require_metric("batch");
    Rng rng(8008);
    Batch ps, vs, qs;
    for (int i = 0; i < 100; ++i) {
      ps.push_back(s.manifold().random_point(rng));
      Matrix v = m.random_tangent(ps.back(), rng);
      vs.push_back(v * (0.1 + 2.0 * uniform01(rng)) / m.norm(ps.back(), v));
      qs.push_back(m.exp(ps.back(), m.random_tangent(ps.back(), rng) * 0.3));
    }
    const Batch e = m.exp(ps, vs);
    const Batch l = m.log(ps, qs);
    const std::vector<double> d = m.dist(ps, qs);
    double err = 0.0;
    for (int i = 0; i < 100; ++i) {
      err = std::max({err, (e[i] - m.exp(ps[i], vs[i])).cwiseAbs().maxCoeff(),
                      (l[i] - m.log(ps[i], qs[i])).cwiseAbs().maxCoeff(), std::abs(d[i] - m.dist(ps[i], qs[i]))});
    }
    verdict.check(s.spec().name, err, 1e-12, false);
  }
  return verdict;
}

// ---- 9 -----------------------------------------------------------------------

std::string capture(const std::string& command, int* status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + command);
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  *status = pclose(pipe);
  return out;
}

Verdict criterion_9() {
  Verdict verdict;
  const std::string exe = GEO_EXECUTABLE;
  const std::string data = GEO_DATA_DIR;
  const std::string sphere = R"('{"name":"hypersphere","n":2}')";
  // Mirrors the examples in the README.
  const std::vector<std::string> commands = {
      "op dist --manifold-spec " + sphere + " --input " + data + "/sphere_dist.json",
      "op exp --manifold-spec " + sphere + " --input " + data + "/sphere_exp_zero.json",
      R"(op dist --manifold-spec '{"name":"spd","n":2}' --input )" + data + "/spd_dist.json",
      "op geodesic --manifold-spec " + sphere + " --num-points 5 --input " + data + "/sphere_geodesic.json",
      R"(op random --manifold-spec '{"name":"stiefel","n":4,"p":2}' --count 3 --seed 7)",
      "learn mean --manifold-spec " + sphere + " --data " + data + "/sphere_cap.json",
      "learn kmeans --manifold-spec " + sphere + " --n-clusters 2 --seed 3 --data " + data + "/sphere_caps.json",
      "learn online-kmeans --manifold-spec " + sphere + " --n-clusters 2 --data " + data + "/sphere_caps.json",
      R"(learn tpca --manifold-spec '{"name":"euclidean","n":2}' --n-components 2 --data )" + data +
          "/euclidean_points.csv",
      "learn rgrad --manifold-spec " + sphere + " --a '[0,0,1]' --x0 '[1,0,0]'",
      "figure sphere-descent",
      "figure poincare-grid --format csv",
      "figure se3-geodesic --num-points 20",
      "validate --manifold-spec " + sphere + " --data " + data + "/sphere_cap.json",
      "validate --manifold-spec " + sphere + " --data " + data + "/sphere_check.json",
  };
  // The last dataset holds an off-manifold point on purpose.
  auto expected_exit = [&](std::size_t i) { return i + 1 == commands.size() ? 5 : 0; };
  int identical = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string& c = commands[i];
    int s1 = 0, s2 = 0;
    const std::string cmd = "'" + exe + "' " + c + " 2>/dev/null";
    const std::string a = capture(cmd, &s1);
    const std::string b = capture(cmd, &s2);
    const int want = expected_exit(i);
    const bool ok = WEXITSTATUS(s1) == want && WEXITSTATUS(s2) == want && !a.empty() && a == b;
    if (ok) {
      ++identical;
    } else {
      verdict.pass = false;
      verdict.detail << "mismatch or failure: geo " << c << "; ";
    }
  }
  verdict.detail << identical << "/" << commands.size() << " commands byte-identical";
  return verdict;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"exp/log round trip", criterion_1},
      {"metric axioms", criterion_2},
      {"numerical fallbacks on the sphere", criterion_3},
      {"closed-form spot values", criterion_4},
      {"invariances", criterion_5},
      {"learning", criterion_6},
      {"figure data", criterion_7},
      {"batch contract", criterion_8},
      {"CLI determinism", criterion_9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    if (!v.pass) ++failed;
    std::cout << "criterion " << i + 1 << " " << (v.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << " ("
              << v.detail.str() << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
