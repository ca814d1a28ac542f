#include "geo/learning/tangent_pca.hpp"

#include <algorithm>

#include "geo/linalg.hpp"
#include "geo/parallel.hpp"

namespace geo {

TangentPCA::TangentPCA(const RiemannianMetric& metric, int n_components)
    : metric_(&metric), n_components_(n_components) {
  if (n_components < 1) throw ContractError("TangentPCA: n_components must be >= 1");
  if (n_components > metric.tangent_dim()) {
    throw ContractError("TangentPCA: n_components " + std::to_string(n_components) +
                            " exceeds the dimension " + std::to_string(metric.tangent_dim()),
                        "too_many_components");
  }
}

TangentPCA& TangentPCA::fit(const Batch& data, const Point& base_point) {
  if (data.empty()) throw ContractError("TangentPCA::fit: empty data", "empty_data");
  const Batch basis = metric_->orthonormal_tangent_basis(base_point);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const auto n = static_cast<Eigen::Index>(data.size());

  Batch logs(data.size());
  Matrix coords(n, dim);
  parallel_for(data.size(), [&](std::size_t i) {
    logs[i] = metric_->log(base_point, data[i]);
    for (Eigen::Index j = 0; j < dim; ++j) {
      coords(static_cast<Eigen::Index>(i), j) = metric_->inner_product(base_point, logs[i], basis[j]);
    }
  });

  const Eigen::RowVectorXd mean = coords.colwise().mean();
  const Matrix centered = coords.rowwise() - mean;
  const Matrix cov = centered.transpose() * centered / static_cast<double>(n);
  const linalg::SymEig eig = linalg::sym_eig(cov);

  base_point_ = base_point;
  tangent_mean_ = Matrix::Zero(basis[0].rows(), basis[0].cols());
  for (Eigen::Index j = 0; j < dim; ++j) tangent_mean_ += mean(j) * basis[j];
  total_variance_ = cov.trace();
  explained_variance_ = eig.values.head(n_components_).cwiseMax(0.0);
  components_.assign(n_components_, Matrix());
  for (int k = 0; k < n_components_; ++k) {
    Matrix c = Matrix::Zero(basis[0].rows(), basis[0].cols());
    for (Eigen::Index j = 0; j < dim; ++j) c += eig.vectors(j, k) * basis[j];
    components_[k] = std::move(c);
  }
  return *this;
}

void TangentPCA::require_fitted(const char* op) const {
  if (!fitted()) throw ContractError(std::string("TangentPCA::") + op + ": model is not fitted", "not_fitted");
}

Matrix TangentPCA::transform(const Batch& data) const {
  require_fitted("transform");
  Matrix out(static_cast<Eigen::Index>(data.size()), n_components_);
  parallel_for(data.size(), [&](std::size_t i) {
    const Matrix v = metric_->log(base_point_, data[i]) - tangent_mean_;
    for (int k = 0; k < n_components_; ++k) {
      out(static_cast<Eigen::Index>(i), k) = metric_->inner_product(base_point_, v, components_[k]);
    }
  });
  return out;
}

Batch TangentPCA::inverse_transform(const Matrix& coefficients) const {
  require_fitted("inverse_transform");
  if (coefficients.cols() != n_components_) {
    throw ShapeError("TangentPCA::inverse_transform: expected " + std::to_string(n_components_) +
                     " columns");
  }
  Batch out(static_cast<std::size_t>(coefficients.rows()));
  parallel_for(out.size(), [&](std::size_t i) {
    Matrix v = tangent_mean_;
    for (int k = 0; k < n_components_; ++k) {
      v += coefficients(static_cast<Eigen::Index>(i), k) * components_[k];
    }
    out[i] = metric_->exp(base_point_, v);
  });
  return out;
}

Vector TangentPCA::explained_variance_ratio() const {
  require_fitted("explained_variance_ratio");
  if (total_variance_ <= 0.0) return Vector::Zero(explained_variance_.size());
  return explained_variance_ / total_variance_;
}

}  // namespace geo
