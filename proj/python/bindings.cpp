#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "geo/cli.hpp"
#include "geo/errors.hpp"
#include "geo/io/spec.hpp"
#include "geo/learning/frechet_mean.hpp"
#include "geo/learning/kmeans.hpp"
#include "geo/learning/tangent_pca.hpp"
#include "geo/random.hpp"

namespace py = pybind11;
using namespace geo;

namespace {

// Column-vector points come back as 1-D arrays.
py::object wrap(const Matrix& m) {
  if (m.cols() == 1) return py::cast(Vector(m.col(0)));
  return py::cast(m);
}

py::list wrap_all(const Batch& batch) {
  py::list out;
  for (const Matrix& m : batch) out.append(wrap(m));
  return out;
}

class PySpace {
 public:
  explicit PySpace(const std::string& spec) : space_(io::parse_manifold_spec(io::parse(spec))) {}

  const io::Space& space() const { return space_; }
  const RiemannianMetric& metric(const char* op) const { return space_.require_metric(op); }

  const PseudoRiemannianMetric& pseudo(const char* op) const {
    if (const PseudoRiemannianMetric* m = space_.pseudo_metric()) return *m;
    return space_.require_metric(op);
  }

 private:
  io::Space space_;
};

Batch to_batch(const std::vector<Matrix>& points) { return Batch(points.begin(), points.end()); }

}  // namespace

PYBIND11_MODULE(_geo, m) {
  m.doc() = "Riemannian geometry on manifolds: core bindings";

  // Leaked on purpose: these must outlive interpreter shutdown.
  static auto* base_error = new py::exception<Error>(m, "GeometryError");
  static auto* contract_error = new py::exception<ContractError>(m, "ContractError", base_error->ptr());
  static auto* shape_error = new py::exception<ShapeError>(m, "ShapeError", contract_error->ptr());
  static auto* domain_error = new py::exception<DomainError>(m, "DomainError", base_error->ptr());
  static auto* cut_locus_error = new py::exception<CutLocusError>(m, "CutLocusError", domain_error->ptr());
  static auto* convergence_error = new py::exception<ConvergenceError>(m, "ConvergenceError", base_error->ptr());

  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](PyObject* type, const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(type)(e.what());
      instance.attr("code") = e.code();
      if (const auto* c = dynamic_cast<const ConvergenceError*>(&e)) instance.attr("residual") = c->residual();
      PyErr_SetObject(type, instance.ptr());
    };
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ShapeError& e) {
      raise(shape_error->ptr(), e);
    } catch (const ContractError& e) {
      raise(contract_error->ptr(), e);
    } catch (const CutLocusError& e) {
      raise(cut_locus_error->ptr(), e);
    } catch (const DomainError& e) {
      raise(domain_error->ptr(), e);
    } catch (const ConvergenceError& e) {
      raise(convergence_error->ptr(), e);
    } catch (const Error& e) {
      raise(base_error->ptr(), e);
    }
  });

  py::class_<PySpace>(m, "Space")
      .def(py::init<const std::string&>(), py::arg("spec"))
      .def_property_readonly("spec", [](const PySpace& s) { return io::to_json(s.space().spec()).dump(); })
      .def_property_readonly("name", [](const PySpace& s) { return s.space().manifold().name(); })
      .def_property_readonly("dim", [](const PySpace& s) { return s.space().manifold().dim(); })
      .def_property_readonly("point_shape",
                             [](const PySpace& s) {
                               const Shape shape = s.space().manifold().point_shape();
                               return py::make_tuple(shape.rows, shape.cols);
                             })
      .def_property_readonly("has_metric", [](const PySpace& s) { return s.space().metric() != nullptr; })
      .def_property_readonly("injectivity_radius",
                             [](const PySpace& s) { return s.space().connection().injectivity_radius(); })
      .def("belongs", [](const PySpace& s, const Matrix& x, double tol) { return s.space().manifold().belongs(x, tol); },
           py::arg("x"), py::arg("tol") = tolerance::kMembership)
      .def("projection", [](const PySpace& s, const Matrix& x) { return wrap(s.space().manifold().projection(x)); })
      .def("to_tangent",
           [](const PySpace& s, const Matrix& base, const Matrix& v) {
             return wrap(s.space().connection().to_tangent(base, v));
           })
      .def("random_point",
           [](const PySpace& s, std::uint64_t seed) {
             Rng rng(seed);
             return wrap(s.space().manifold().random_point(rng));
           },
           py::arg("seed") = 0)
      .def("random_points",
           [](const PySpace& s, int count, std::uint64_t seed) {
             Rng rng(seed);
             Batch out;
             for (int i = 0; i < count; ++i) out.push_back(s.space().manifold().random_point(rng));
             return wrap_all(out);
           },
           py::arg("count"), py::arg("seed") = 0)
      .def("exp", [](const PySpace& s, const Matrix& base, const Matrix& v) { return wrap(s.space().connection().exp(base, v)); })
      .def("log",
           [](const PySpace& s, const Matrix& base, const Matrix& target) {
             return wrap(s.space().connection().log(base, target));
           })
      .def("parallel_transport",
           [](const PySpace& s, const Matrix& v, const Matrix& base, const Matrix& direction) {
             return wrap(s.space().connection().parallel_transport(v, base, direction));
           },
           py::arg("v"), py::arg("base"), py::arg("direction"))
      .def("geodesic",
           [](const PySpace& s, const Matrix& base, const Matrix& velocity, const std::vector<double>& ts) {
             return wrap_all(s.space().connection().geodesic(base, velocity).sample(ts));
           },
           py::arg("base"), py::arg("velocity"), py::arg("t"))
      .def("inner",
           [](const PySpace& s, const Matrix& base, const Matrix& u, const Matrix& v) {
             return s.pseudo("inner").inner_product(base, u, v);
           })
      .def("norm", [](const PySpace& s, const Matrix& base, const Matrix& v) { return s.metric("norm").norm(base, v); })
      .def("dist", [](const PySpace& s, const Matrix& a, const Matrix& b) { return s.metric("dist").dist(a, b); });

  m.def(
      "frechet_mean",
      [](const PySpace& s, const std::vector<Matrix>& points, const std::vector<double>& weights, int max_iter,
         double tol) {
        FrechetMeanOptions options;
        options.max_iter = max_iter;
        options.tol = tol;
        const FrechetMeanResult r = frechet_mean(s.metric("frechet_mean"), to_batch(points), weights, options);
        py::dict out;
        out["estimate"] = wrap(r.estimate);
        out["n_iter"] = r.n_iter;
        out["converged"] = r.converged;
        return out;
      },
      py::arg("space"), py::arg("points"), py::arg("weights") = std::vector<double>{}, py::arg("max_iter") = 64,
      py::arg("tol") = 1e-7);

  m.def(
      "kmeans",
      [](const PySpace& s, const std::vector<Matrix>& points, int n_clusters, std::uint64_t seed) {
        KMeansOptions options;
        options.n_clusters = n_clusters;
        options.seed = seed;
        const KMeansModel model = kmeans_fit(s.metric("kmeans"), to_batch(points), options);
        py::dict out;
        out["centroids"] = wrap_all(model.centroids);
        out["labels"] = model.labels;
        out["inertia"] = model.inertia;
        out["converged"] = model.converged;
        return out;
      },
      py::arg("space"), py::arg("points"), py::arg("n_clusters"), py::arg("seed") = 0);

  m.def(
      "tangent_pca",
      [](const PySpace& s, const std::vector<Matrix>& points, int n_components, std::optional<Matrix> base_point) {
        const RiemannianMetric& metric = s.metric("tangent_pca");
        const Batch data = to_batch(points);
        const Point base = base_point ? *base_point : frechet_mean(metric, data).estimate;
        TangentPCA pca(metric, n_components);
        pca.fit(data, base);
        py::dict out;
        out["base_point"] = wrap(pca.base_point());
        out["components"] = wrap_all(pca.components());
        out["explained_variance"] = Vector(pca.explained_variance());
        out["scores"] = pca.transform(data);
        return out;
      },
      py::arg("space"), py::arg("points"), py::arg("n_components"), py::arg("base_point") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::istringstream in(stdin_text);
        std::ostringstream out, err;
        const int code = cli::run(args, in, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin") = "",
      "Runs the command-line interface in process and returns (exit_code, stdout, stderr).");
}
