#pragma once

#include <Eigen/Core>
#include <vector>

namespace ocgp {

/// RBF kernel hyperparameters. `alpha` scales the output variance,
/// `lengthscale` is shared isotropically over the input vector, and
/// `noise_var` is the observation noise variance.
struct KernelParams {
    double alpha = 1.0;
    double lengthscale = 1.0;
    double noise_var = 0.0;

    void validate() const;
};

/// k(x, z) = alpha * exp(-0.5 * l^-2 * (x - z)^T (x - z))
double rbf(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
           const KernelParams& params);

struct Posterior {
    double mean = 0.0;
    double variance = 0.0;

    double stddev() const;
};

/// Exact GP regression with online insertion. The kernel matrix factor is
/// extended one row per observation, so inserts and posterior queries both
/// cost O(n^2).
///
/// Queries are read-only and may run concurrently; add_observation requires
/// exclusive access.
class GpModel {
  public:
    GpModel(KernelParams params, int input_dim, double prior_mean = 0.0);

    /// Inserts (x, y). Throws NotPositiveDefinite when the extended factor's
    /// new pivot falls below the jitter floor (a duplicate input with zero
    /// observation noise).
    void add_observation(const Eigen::VectorXd& x, double y);

    Posterior posterior(const Eigen::VectorXd& x_star) const;

    /// Rows of xs are query points; elementwise equal to posterior().
    std::vector<Posterior> posterior_batch(const Eigen::MatrixXd& xs) const;

    int size() const { return n_; }
    int input_dim() const { return dim_; }
    const KernelParams& params() const { return params_; }
    double prior_mean() const { return prior_mean_; }

    /// n x dim matrix of training inputs (row-per-observation).
    Eigen::MatrixXd inputs() const { return inputs_.topRows(n_); }
    Eigen::VectorXd targets() const { return targets_.head(n_); }
    /// Lower-triangular factor L with L L^T = K + (noise_var + jitter) I.
    Eigen::MatrixXd chol() const;
    /// Diagonal stabilizer: 1e-10 * alpha when noise_var == 0, else 0.
    double jitter() const { return jitter_; }

  private:
    Eigen::VectorXd cross_kernel(const Eigen::VectorXd& x_star) const;

    KernelParams params_;
    int dim_;
    double prior_mean_;
    double jitter_;
    int n_ = 0;
    Eigen::MatrixXd inputs_;
    Eigen::VectorXd targets_;
    Eigen::MatrixXd chol_;
    Eigen::VectorXd whitened_;  // L^-1 (Y - prior_mean)
};

}  // namespace ocgp
