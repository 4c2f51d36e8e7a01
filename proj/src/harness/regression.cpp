#include <cmath>
#include <ostream>
#include <stdexcept>

#include "csv.hpp"
#include "lsrbd/harness.hpp"

namespace lsrbd {

namespace {

constexpr std::size_t kMaxBase = 16;

// k-subsets of {0..n-1} in lexicographic order.
void subsets_of_size(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

ExpandedFeatures expand_features(const std::vector<std::string>& base_names, const Eigen::MatrixXd& base) {
  const std::size_t b = base_names.size();
  if (b == 0) throw std::invalid_argument("expand_features: no base features");
  if (b > kMaxBase) throw std::invalid_argument("expand_features: more than 16 base features");
  if (static_cast<std::size_t>(base.cols()) != b) throw std::invalid_argument("expand_features: column count mismatch");

  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t k = 1; k <= b; ++k) subsets_of_size(b, k, subsets);

  ExpandedFeatures e;
  e.matrix.resize(base.rows(), static_cast<Eigen::Index>(subsets.size() + 1));
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    std::string name;
    Eigen::VectorXd col = Eigen::VectorXd::Ones(base.rows());
    for (std::size_t i : subsets[s]) {
      if (!name.empty()) name += '*';
      name += base_names[i];
      col = col.cwiseProduct(base.col(static_cast<Eigen::Index>(i)));
    }
    e.names.push_back(std::move(name));
    e.matrix.col(static_cast<Eigen::Index>(s)) = col;
  }
  e.names.push_back("intercept");
  e.matrix.col(static_cast<Eigen::Index>(subsets.size())).setOnes();
  return e;
}

Standardized standardize(const Eigen::MatrixXd& x) {
  Standardized s;
  const double n = static_cast<double>(x.rows());
  s.mean = x.colwise().mean().transpose();
  s.z = x.rowwise() - s.mean.transpose();
  s.sd = (s.z.colwise().squaredNorm() / n).cwiseSqrt().transpose();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (s.sd(j) > 0.0) s.z.col(j) /= s.sd(j);
  }
  return s;
}

RidgeModel ridge_fit(const std::vector<std::string>& base_names, const Eigen::MatrixXd& base,
                     const Eigen::VectorXd& y, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("ridge_fit: lambda must be >= 0");
  if (base.rows() != y.size()) throw std::invalid_argument("ridge_fit: row count mismatch");
  const ExpandedFeatures ex = expand_features(base_names, base);
  const std::size_t products = ex.names.size() - 1;
  const auto n = static_cast<std::size_t>(base.rows());
  if (n < products + 2) {
    throw std::invalid_argument("ridge_fit: " + std::to_string(n) + " complete rows, need at least " +
                                std::to_string(products + 2));
  }

  RidgeModel m;
  m.lambda = lambda;
  m.n_samples = n;
  const Standardized st = standardize(ex.matrix.leftCols(static_cast<Eigen::Index>(products)));
  std::vector<Eigen::Index> keep;
  for (std::size_t j = 0; j < products; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    if (st.sd(jj) <= 1e-12 * (1.0 + std::abs(st.mean(jj)))) {
      m.dropped.push_back(ex.names[j]);
      m.warnings.push_back("dropped zero-variance feature " + ex.names[j]);
    } else {
      keep.push_back(jj);
    }
  }
  const auto p = static_cast<Eigen::Index>(keep.size());

  m.design.resize(static_cast<Eigen::Index>(n), p);
  for (Eigen::Index j = 0; j < p; ++j) m.design.col(j) = st.z.col(keep[static_cast<std::size_t>(j)]);

  const double ybar = y.mean();
  const Eigen::VectorXd yc = y.array() - ybar;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  if (p > 0) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n) + p, p);
    a.topRows(static_cast<Eigen::Index>(n)) = m.design;
    a.bottomRows(p) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(p, p);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) + p);
    rhs.head(static_cast<Eigen::Index>(n)) = yc;
    beta = a.colPivHouseholderQr().solve(rhs);
  }

  m.residuals = yc - m.design * beta;
  const double ss_tot = yc.squaredNorm();
  const double ss_res = m.residuals.squaredNorm();
  m.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  const double dn = static_cast<double>(n), dp = static_cast<double>(p);
  m.adjusted_r2 = 1.0 - (1.0 - m.r2) * (dn - 1.0) / (dn - dp - 1.0);

  m.coefficients.resize(p + 1);
  m.raw_coefficients.resize(p + 1);
  double raw_intercept = ybar;
  for (Eigen::Index j = 0; j < p; ++j) {
    const Eigen::Index src = keep[static_cast<std::size_t>(j)];
    m.feature_names.push_back(ex.names[static_cast<std::size_t>(src)]);
    m.coefficients(j) = beta(j);
    m.raw_coefficients(j) = beta(j) / st.sd(src);
    raw_intercept -= m.raw_coefficients(j) * st.mean(src);
  }
  m.feature_names.push_back("intercept");
  m.coefficients(p) = ybar;
  m.raw_coefficients(p) = raw_intercept;
  return m;
}

RidgeModel ridge_fit(const std::vector<FeatureRow>& rows, const std::vector<std::string>& base, double lambda) {
  std::vector<const FeatureRow*> complete;
  for (const FeatureRow& r : rows) {
    bool ok = r.target.has_value();
    for (const std::string& b : base) ok = ok && r.features.count(b) > 0;
    if (ok) complete.push_back(&r);
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(complete.size()), static_cast<Eigen::Index>(base.size()));
  Eigen::VectorXd y(static_cast<Eigen::Index>(complete.size()));
  for (std::size_t i = 0; i < complete.size(); ++i) {
    for (std::size_t j = 0; j < base.size(); ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = complete[i]->features.at(base[j]);
    }
    y(static_cast<Eigen::Index>(i)) = *complete[i]->target;
  }
  RidgeModel m = ridge_fit(base, x, y, lambda);
  m.n_excluded = rows.size() - complete.size();
  return m;
}

void write_model(const RidgeModel& m, std::ostream& out) {
  out << "# lambda " << csv::num(m.lambda) << '\n';
  out << "# n_samples " << m.n_samples << '\n';
  out << "# n_excluded " << m.n_excluded << '\n';
  out << "# r2 " << csv::num(m.r2) << '\n';
  out << "# adjusted_r2 " << csv::num(m.adjusted_r2) << '\n';
  for (const std::string& w : m.warnings) out << "# warning " << w << '\n';
  out << "feature,coefficient,raw_coefficient\n";
  for (std::size_t j = 0; j < m.feature_names.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out << csv::quote(m.feature_names[j]) << ',' << csv::num(m.coefficients(jj)) << ','
        << csv::num(m.raw_coefficients(jj)) << '\n';
  }
}

}  // namespace lsrbd
