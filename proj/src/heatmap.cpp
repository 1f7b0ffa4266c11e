#include "ocgp/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ocgp/errors.hpp"

namespace ocgp {

namespace {

// Coarse viridis anchors; linear interpolation between them.
constexpr int kAnchors = 9;
constexpr double kRamp[kAnchors][3] = {
    {0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
    {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
    {0.135, 0.659, 0.518}, {0.478, 0.821, 0.318}, {0.993, 0.906, 0.144},
};

}  // namespace

std::array<unsigned char, 3> colormap(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * (kAnchors - 1);
    const int lo = std::min(static_cast<int>(pos), kAnchors - 2);
    const double frac = pos - lo;
    std::array<unsigned char, 3> rgb{};
    for (int c = 0; c < 3; ++c) {
        const double v = kRamp[lo][c] + frac * (kRamp[lo + 1][c] - kRamp[lo][c]);
        rgb[static_cast<std::size_t>(c)] =
            static_cast<unsigned char>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
    }
    return rgb;
}

void write_heatmap_ppm(const std::filesystem::path& path,
                       const Eigen::MatrixXd& values, double vmin, double vmax) {
    if (!(vmax > vmin)) {
        throw ConfigError("heatmap scale requires vmax > vmin");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    const Eigen::Index ny = values.rows();
    const Eigen::Index nx = values.cols();
    out << "P6\n" << nx << ' ' << ny << "\n255\n";
    for (Eigen::Index iy = ny - 1; iy >= 0; --iy) {
        for (Eigen::Index ix = 0; ix < nx; ++ix) {
            const double t = (values(iy, ix) - vmin) / (vmax - vmin);
            const auto rgb = colormap(t);
            out.write(reinterpret_cast<const char*>(rgb.data()), 3);
        }
    }
}

}  // namespace ocgp
