#include "aimh/proposals/surrogate.hpp"

#include <cmath>

#include "aimh/core/error.hpp"

namespace aimh {
namespace {

constexpr std::uint64_t kMaxConsecutiveRejections = 1000000;

}  // namespace

double SurrogateModel::predict(Point x) const {
  return SurrogateFitter::features(x).dot(coefficients);
}

SurrogateFitter::SurrogateFitter(std::size_t dim)
    : dim_(dim), xtx_(Eigen::MatrixXd::Zero(dim + 2, dim + 2)), xty_(Eigen::VectorXd::Zero(dim + 2)) {
  if (dim == 0) throw Error("surrogate needs dim >= 1");
}

Eigen::VectorXd SurrogateFitter::features(Point x) {
  Eigen::VectorXd phi(x.size() + 2);
  phi[0] = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) phi[static_cast<Eigen::Index>(i) + 1] = x[i];
  phi[static_cast<Eigen::Index>(x.size()) + 1] = x[0] * x[0];
  return phi;
}

void SurrogateFitter::add(Point x, double y) {
  if (x.size() != dim_) throw Error("surrogate: dimension mismatch");
  const Eigen::VectorXd phi = features(x);
  xtx_.noalias() += phi * phi.transpose();
  xty_ += y * phi;
  yty_ += y * y;
  ++count_;
}

SurrogateModel SurrogateFitter::solve(double ridge) const {
  Eigen::MatrixXd a = xtx_;
  a.diagonal().array() += ridge;
  SurrogateModel m;
  m.coefficients = a.colPivHouseholderQr().solve(xty_);
  m.fit_count = count_;
  m.ridge = ridge;
  return m;
}

double SurrogateFitter::residual_ss(const SurrogateModel& model) const {
  const Eigen::VectorXd& c = model.coefficients;
  return yty_ - 2.0 * c.dot(xty_) + c.dot(xtx_ * c);
}

SurrogateModel surrogate_fit(const History& history, double ridge, std::size_t min_points) {
  if (history.empty()) throw Error("insufficient data");
  SurrogateFitter fitter(history[0].state.size());
  for (const HistoryEntry& e : history)
    if (std::isfinite(e.response)) fitter.add(e.state, e.response);
  if (fitter.count() < min_points) throw Error("insufficient data");
  return fitter.solve(ridge);
}

SurrogateKernel::SurrogateKernel(std::size_t dim, SurrogateParams params)
    : params_(std::move(params)), fitter_(dim) {
  if (params_.lower.empty()) params_.lower.assign(dim, 0.0);
  if (params_.upper.empty()) params_.upper.assign(dim, 1.0);
  if (params_.lower.size() != dim || params_.upper.size() != dim) throw Error("surrogate: bad box");
  if (!(params_.sigma2 > 0.0) || !(params_.widening > 0.0)) throw Error("surrogate: sigma2 and widening must be positive");
}

double SurrogateKernel::log_weight(Point z) const {
  for (std::size_t d = 0; d < z.size(); ++d)
    if (z[d] < params_.lower[d] || z[d] > params_.upper[d]) return kNegInf;
  if (!model_) return 0.0;
  const double r = model_->predict(z) - params_.data;
  return -r * r / (params_.widening * params_.sigma2);
}

State SurrogateKernel::draw(const History&, Rng& rng) {
  State z(params_.lower.size());
  for (std::uint64_t k = 0; k < kMaxConsecutiveRejections; ++k) {
    for (std::size_t d = 0; d < z.size(); ++d)
      z[d] = params_.lower[d] + (params_.upper[d] - params_.lower[d]) * uniform01(rng);
    ++trials_;
    if (!model_ || std::log(uniform01(rng)) < log_weight(z)) {
      ++draws_;
      return z;
    }
  }
  throw SamplingError("surrogate degenerate");
}

double SurrogateKernel::log_density_at(Point z, const History&) const { return log_weight(z); }

void SurrogateKernel::adapt(const History& history) {
  bool grew = false;
  for (; consumed_ < history.size(); ++consumed_) {
    const HistoryEntry& e = history[consumed_];
    if (!std::isfinite(e.response)) continue;
    fitter_.add(e.state, e.response);
    grew = true;
  }
  if (grew && fitter_.count() >= params_.min_points) model_ = fitter_.solve(params_.ridge);
}

std::unique_ptr<ProposalKernel> SurrogateKernel::clone() const { return std::make_unique<SurrogateKernel>(*this); }

KernelStats SurrogateKernel::stats() const {
  KernelStats s{{"fit_count", model_ ? static_cast<double>(model_->fit_count) : 0.0},
                {"acceptance", trials_ ? static_cast<double>(draws_) / static_cast<double>(trials_) : 0.0}};
  if (model_)
    for (Eigen::Index i = 0; i < model_->coefficients.size(); ++i)
      s.emplace_back("coef_" + std::to_string(i), model_->coefficients[i]);
  return s;
}

}  // namespace aimh
