#pragma once

#include <array>
#include <filesystem>

#include <Eigen/Core>

namespace ocgp {

/// Maps t in [0, 1] to an RGB triple (viridis-like ramp, clamped).
std::array<unsigned char, 3> colormap(double t);

/// Binary PPM (P6), one pixel per cell, row 0 at the top = max y. Values map
/// linearly from [vmin, vmax] into the colormap; a pure function of its
/// arguments.
void write_heatmap_ppm(const std::filesystem::path& path,
                       const Eigen::MatrixXd& values, double vmin, double vmax);

}  // namespace ocgp
