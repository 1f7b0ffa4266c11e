#include "ocgp/gp.hpp"

#include <cmath>

#include "ocgp/errors.hpp"

namespace ocgp {

namespace {
// Pivot floor for duplicate detection under exact interpolation. Well above
// the 1e-10*alpha jitter a duplicate leaves behind, far below the Schur
// complement of any genuinely distinct input.
constexpr double kPivotFloorScale = 1e-8;
}  // namespace

void KernelParams::validate() const {
    if (!(alpha > 0.0) || !(lengthscale > 0.0) || !(noise_var >= 0.0)) {
        throw ConfigError("kernel params require alpha > 0, lengthscale > 0, noise_var >= 0");
    }
}

double rbf(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
           const KernelParams& params) {
    if (x.size() != z.size()) {
        throw DimensionMismatch("rbf inputs differ in dimension");
    }
    const double sq = (x - z).squaredNorm();
    return params.alpha * std::exp(-0.5 * sq / (params.lengthscale * params.lengthscale));
}

double Posterior::stddev() const { return std::sqrt(std::max(variance, 0.0)); }

GpModel::GpModel(KernelParams params, int input_dim, double prior_mean)
    : params_(params),
      dim_(input_dim),
      prior_mean_(prior_mean),
      jitter_(params.noise_var == 0.0 ? 1e-10 * params.alpha : 0.0) {
    params_.validate();
    if (input_dim < 1) {
        throw DimensionMismatch("input_dim must be >= 1");
    }
}

Eigen::VectorXd GpModel::cross_kernel(const Eigen::VectorXd& x_star) const {
    Eigen::VectorXd k(n_);
    const double inv2l2 = 0.5 / (params_.lengthscale * params_.lengthscale);
    for (int i = 0; i < n_; ++i) {
        const double sq = (inputs_.row(i).transpose() - x_star).squaredNorm();
        k(i) = params_.alpha * std::exp(-sq * inv2l2);
    }
    return k;
}

void GpModel::add_observation(const Eigen::VectorXd& x, double y) {
    if (x.size() != dim_) {
        throw DimensionMismatch("observation input dimension mismatch");
    }
    const double diag = params_.alpha + params_.noise_var + jitter_;

    if (n_ == 0) {
        inputs_.resize(1, dim_);
        inputs_.row(0) = x.transpose();
        targets_.resize(1);
        targets_(0) = y;
        chol_.resize(1, 1);
        chol_(0, 0) = std::sqrt(diag);
        whitened_.resize(1);
        whitened_(0) = (y - prior_mean_) / chol_(0, 0);
        n_ = 1;
        return;
    }

    // Rank-extension of the factor: solve L c = k, pivot d = sqrt(diag - c.c).
    const Eigen::VectorXd k = cross_kernel(x);
    const Eigen::VectorXd c =
        chol_.topLeftCorner(n_, n_).triangularView<Eigen::Lower>().solve(k);
    const double schur = diag - c.squaredNorm();
    const double floor = params_.noise_var == 0.0 ? kPivotFloorScale * params_.alpha : 0.0;
    if (schur <= floor) {
        throw NotPositiveDefinite("kernel matrix extension is not positive definite "
                                  "(duplicate input with zero noise?)");
    }
    const double d = std::sqrt(schur);

    inputs_.conservativeResize(n_ + 1, Eigen::NoChange);
    inputs_.row(n_) = x.transpose();
    targets_.conservativeResize(n_ + 1);
    targets_(n_) = y;
    chol_.conservativeResize(n_ + 1, n_ + 1);
    chol_.row(n_).head(n_) = c.transpose();
    chol_.col(n_).setZero();
    chol_(n_, n_) = d;
    whitened_.conservativeResize(n_ + 1);
    whitened_(n_) = (y - prior_mean_ - c.dot(whitened_.head(n_))) / d;
    ++n_;
}

Posterior GpModel::posterior(const Eigen::VectorXd& x_star) const {
    if (x_star.size() != dim_) {
        throw DimensionMismatch("query input dimension mismatch");
    }
    if (n_ == 0) {
        return {prior_mean_, params_.alpha};
    }
    const Eigen::VectorXd k = cross_kernel(x_star);
    const Eigen::VectorXd v =
        chol_.topLeftCorner(n_, n_).triangularView<Eigen::Lower>().solve(k);
    const double mean = prior_mean_ + v.dot(whitened_.head(n_));
    double variance = params_.alpha - v.squaredNorm();
    if (variance < 0.0 && variance >= -1e-10) {
        variance = 0.0;
    }
    return {mean, variance};
}

std::vector<Posterior> GpModel::posterior_batch(const Eigen::MatrixXd& xs) const {
    std::vector<Posterior> out;
    out.reserve(static_cast<std::size_t>(xs.rows()));
    for (Eigen::Index i = 0; i < xs.rows(); ++i) {
        out.push_back(posterior(xs.row(i).transpose()));
    }
    return out;
}

Eigen::MatrixXd GpModel::chol() const {
    return chol_.topLeftCorner(n_, n_);
}

}  // namespace ocgp
