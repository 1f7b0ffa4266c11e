#include <doctest.h>

#include <cmath>
#include <random>

#include "ocgp/errors.hpp"
#include "ocgp/gp.hpp"
#include "test_helpers.hpp"

using namespace ocgp;
using namespace ocgp::testing;

namespace {

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

Eigen::VectorXd random_input(std::mt19937_64& rng, int dim, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = u(rng);
    }
    return v;
}

}  // namespace

TEST_CASE("rbf kernel values") {
    KernelParams p{2.0, 0.3, 0.0};
    const Eigen::VectorXd x = vec1(0.7);
    CHECK(rbf(x, x, p) == doctest::Approx(2.0).epsilon(1e-15));

    KernelParams unit{1.0, 0.25, 0.0};
    CHECK(rbf(vec1(0.0), vec1(0.25), unit) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(rbf(vec1(0.0), vec1(5.0 * 0.25), unit) ==
          doctest::Approx(std::exp(-12.5)).epsilon(1e-12));

    // Symmetry over random pairs.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Eigen::VectorXd a = random_input(rng, 3, 2.0);
        const Eigen::VectorXd b = random_input(rng, 3, 2.0);
        CHECK(rbf(a, b, unit) == rbf(b, a, unit));
    }

    Eigen::VectorXd wrong(2);
    wrong << 0, 0;
    CHECK_THROWS_AS(rbf(x, wrong, p), DimensionMismatch);
}

TEST_CASE("add_observation grows the factor one row at a time") {
    KernelParams p{0.04, 0.1, 2.5e-5};
    GpModel model(p, 2);
    CHECK(model.size() == 0);

    Eigen::VectorXd x0(2);
    x0 << 0.1, -0.2;
    model.add_observation(x0, 0.3);
    CHECK(model.size() == 1);
    CHECK(model.chol()(0, 0) ==
          doctest::Approx(std::sqrt(p.alpha + p.noise_var)).epsilon(1e-14));
    CHECK(model.targets()(0) == 0.3);

    CHECK_THROWS_AS(model.add_observation(vec1(0.0), 0.1), DimensionMismatch);
}

TEST_CASE("sequential insertion matches the dense batch solve") {
    KernelParams p{0.04, 0.15, 1e-4};
    std::mt19937_64 rng(7);
    GpModel model(p, 2);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        model.add_observation(random_input(rng, 2, 0.5), 0.2 * n01(rng));
    }
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXd probe = random_input(rng, 2, 0.6);
        const Posterior incr = model.posterior(probe);
        const Posterior oracle =
            dense_posterior(model.inputs(), model.targets(), p, model.prior_mean(),
                            model.jitter(), probe);
        CHECK(std::abs(incr.mean - oracle.mean) <= 1e-8);
        CHECK(std::abs(incr.variance - oracle.variance) <= 1e-8);
    }
}

TEST_CASE("duplicate input with zero noise is rejected") {
    KernelParams p{1.0, 0.5, 0.0};
    GpModel model(p, 1);
    model.add_observation(vec1(0.3), 0.7);
    CHECK_THROWS_AS(model.add_observation(vec1(0.3), 0.7), NotPositiveDefinite);
    // Distinct inputs still insert fine.
    model.add_observation(vec1(0.4), 0.5);
    CHECK(model.size() == 2);
}

TEST_CASE("posterior on the empty model returns the prior") {
    KernelParams p{0.09, 0.2, 1e-4};
    const GpModel zero_mean(p, 3);
    const Posterior post = zero_mean.posterior(Eigen::VectorXd::Zero(3));
    CHECK(post.mean == 0.0);
    CHECK(post.variance == p.alpha);

    const GpModel lifted(p, 3, 0.5);
    const Posterior lifted_post = lifted.posterior(Eigen::VectorXd::Zero(3));
    CHECK(lifted_post.mean == 0.5);
    CHECK(lifted_post.variance == p.alpha);
}

TEST_CASE("noise-free model interpolates its training point") {
    KernelParams p{1.0, 0.5, 0.0};
    GpModel model(p, 1);
    model.add_observation(vec1(0.2), 0.7);
    const Posterior post = model.posterior(vec1(0.2));
    CHECK(post.mean == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(post.variance >= 0.0);
    CHECK(post.variance < 1e-9);
}

TEST_CASE("two-point posterior matches the explicit 2x2 solve") {
    // X = {0, 1}, Y = {0, 1}, alpha = 1, l = 1, noise = 0.1, query 0.5.
    KernelParams p{1.0, 1.0, 0.1};
    GpModel model(p, 1);
    model.add_observation(vec1(0.0), 0.0);
    model.add_observation(vec1(1.0), 1.0);

    const double k01 = std::exp(-0.5);
    const double d = 1.1;
    const double det = d * d - k01 * k01;
    const double ks = std::exp(-0.125);
    // K_y^-1 y and K_y^-1 k* via the explicit inverse [[d, -k01], [-k01, d]] / det.
    const double w0 = (d * 0.0 - k01 * 1.0) / det;
    const double w1 = (-k01 * 0.0 + d * 1.0) / det;
    const double expected_mean = ks * w0 + ks * w1;
    const double v0 = (d * ks - k01 * ks) / det;
    const double v1 = (-k01 * ks + d * ks) / det;
    const double expected_var = 1.0 - (ks * v0 + ks * v1);

    const Posterior post = model.posterior(vec1(0.5));
    CHECK(post.mean == doctest::Approx(expected_mean).epsilon(1e-12));
    CHECK(post.variance == doctest::Approx(expected_var).epsilon(1e-12));
}

TEST_CASE("posterior_batch equals pointwise posterior") {
    KernelParams p{0.04, 0.1, 2.5e-5};
    GpModel model(p, 2);
    std::mt19937_64 rng(13);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        model.add_observation(random_input(rng, 2, 0.5), 0.1 * n01(rng));
    }

    CHECK(model.posterior_batch(Eigen::MatrixXd(0, 2)).empty());

    Eigen::MatrixXd single(1, 2);
    single << 0.05, -0.3;
    const auto one = model.posterior_batch(single);
    REQUIRE(one.size() == 1);
    const Posterior direct = model.posterior(single.row(0).transpose());
    CHECK(one[0].mean == direct.mean);
    CHECK(one[0].variance == direct.variance);

    const int grid = 100;  // 10k points
    Eigen::MatrixXd xs(grid * grid, 2);
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            xs.row(i * grid + j) << -0.5 + i * (1.0 / (grid - 1)),
                -0.5 + j * (1.0 / (grid - 1));
        }
    }
    const auto batch = model.posterior_batch(xs);
    REQUIRE(batch.size() == static_cast<std::size_t>(xs.rows()));
    for (Eigen::Index i = 0; i < xs.rows(); i += 997) {
        const Posterior point = model.posterior(xs.row(i).transpose());
        CHECK(std::abs(batch[static_cast<std::size_t>(i)].mean - point.mean) <= 1e-12);
        CHECK(std::abs(batch[static_cast<std::size_t>(i)].variance - point.variance) <=
              1e-12);
    }
}

TEST_CASE("incremental posteriors track the dense oracle along random sequences") {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::uniform_int_distribution<int> dim_pick(2, 5);
    for (int seq = 0; seq < 10; ++seq) {
        const int dim = dim_pick(rng);
        KernelParams p{0.5, 0.4, 5e-4};
        GpModel model(p, dim);
        for (int i = 0; i < 100; ++i) {
            model.add_observation(random_input(rng, dim, 1.0), 0.3 * n01(rng));
            if (i % 20 == 19) {
                const Eigen::VectorXd probe = random_input(rng, dim, 1.2);
                const Posterior incr = model.posterior(probe);
                const Posterior oracle =
                    dense_posterior(model.inputs(), model.targets(), p,
                                    model.prior_mean(), model.jitter(), probe);
                CHECK(std::abs(incr.mean - oracle.mean) <= 1e-8);
                CHECK(std::abs(incr.variance - oracle.variance) <= 1e-8);
            }
        }
    }
}

TEST_CASE("variance stays within [0, alpha]") {
    KernelParams p{0.04, 0.1, 0.0};
    GpModel model(p, 2);
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        model.add_observation(random_input(rng, 2, 0.5), 0.1 * n01(rng));
        const Posterior post = model.posterior(random_input(rng, 2, 0.7));
        CHECK(post.variance >= 0.0);
        CHECK(post.variance <= p.alpha);
    }
}

TEST_CASE("adding an observation never raises variance at a fixed query") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> n01(0.0, 1.0);
    KernelParams p{0.2, 0.3, 1e-4};
    for (int trial = 0; trial < 500; ++trial) {
        GpModel model(p, 2);
        const int n0 = 1 + trial % 10;
        for (int i = 0; i < n0; ++i) {
            model.add_observation(random_input(rng, 2, 0.5), 0.2 * n01(rng));
        }
        const Eigen::VectorXd query = random_input(rng, 2, 0.7);
        const double var_before = model.posterior(query).variance;
        model.add_observation(random_input(rng, 2, 0.5), 0.2 * n01(rng));
        const double var_after = model.posterior(query).variance;
        CHECK(var_after <= var_before + 1e-9);
    }
}

TEST_CASE("far from all data the posterior reverts to the prior") {
    KernelParams p{0.04, 0.1, 2.5e-5};
    const double prior_mean = 0.1;
    GpModel model(p, 2, prior_mean);
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        model.add_observation(random_input(rng, 2, 0.4), 0.3 * n01(rng));
    }
    // Any query at least 8 lengthscales from every training point.
    Eigen::VectorXd far(2);
    far << 0.4 + 8.5 * p.lengthscale, 0.0;
    const Posterior post = model.posterior(far);
    CHECK(std::abs(post.mean - prior_mean) <= 1e-4 * p.alpha);
    CHECK(std::abs(post.variance - p.alpha) <= 1e-4 * p.alpha);
}

TEST_CASE("zero-noise models interpolate every training target") {
    KernelParams p{1.0, 0.4, 0.0};
    GpModel model(p, 2);
    std::mt19937_64 rng(37);
    // Smooth targets, as the physical tip field is; interpolating
    // independent noise through a smooth kernel is not a supported regime
    // for the zero-noise jitter.
    const auto field = [](const Eigen::VectorXd& x) {
        return 0.5 * std::sin(2.0 * x(0)) * std::cos(x(1));
    };
    for (int i = 0; i < 30; ++i) {
        const Eigen::VectorXd x = random_input(rng, 2, 1.0);
        model.add_observation(x, field(x));
    }
    const Eigen::MatrixXd inputs = model.inputs();
    const Eigen::VectorXd targets = model.targets();
    for (int i = 0; i < model.size(); ++i) {
        const Posterior post = model.posterior(inputs.row(i).transpose());
        CHECK(std::abs(post.mean - targets(i)) <= 1e-8);
    }
}
