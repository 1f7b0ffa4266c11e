#include "ocgp/field.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include "ocgp/errors.hpp"
#include "ocgp/text_io.hpp"

namespace ocgp {

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) {
        throw ConfigError("grid resolution must be >= 2 per axis");
    }
    if (!(extent.max.x() > extent.min.x()) || !(extent.max.y() > extent.min.y())) {
        throw ConfigError("grid extent is degenerate");
    }
}

FieldGrid render_field(const GridSpec& spec, const FieldFn& fn) {
    spec.validate();
    FieldGrid grid;
    grid.xs = Eigen::VectorXd::LinSpaced(spec.nx, spec.extent.min.x(), spec.extent.max.x());
    grid.ys = Eigen::VectorXd::LinSpaced(spec.ny, spec.extent.min.y(), spec.extent.max.y());
    grid.mean.resize(spec.ny, spec.nx);
    grid.std.resize(spec.ny, spec.nx);

    const auto render_rows = [&](int row_begin, int row_end) {
        for (int iy = row_begin; iy < row_end; ++iy) {
            for (int ix = 0; ix < spec.nx; ++ix) {
                const auto [mean, std] = fn(Vec2(grid.xs(ix), grid.ys(iy)));
                grid.mean(iy, ix) = mean;
                grid.std(iy, ix) = std;
            }
        }
    };

    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int n_threads = std::clamp(hw, 1, spec.ny);
    if (n_threads <= 1) {
        render_rows(0, spec.ny);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(n_threads));
        const int chunk = (spec.ny + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(spec.ny, begin + chunk);
            if (begin < end) {
                workers.emplace_back(render_rows, begin, end);
            }
        }
        for (auto& w : workers) {
            w.join();
        }
    }
    return grid;
}

namespace {

Pose proto_at(const Pose& robot_proto, const Vec2& xy) {
    Pose p = robot_proto;
    p.position.head<2>() = xy;
    return p;
}

}  // namespace

FieldGrid render_object_centric(const ObjectCentricModel& model, ObjectId id,
                                const Pose& object_pose, const Pose& robot_proto,
                                const GridSpec& spec) {
    FieldGrid grid = render_field(spec, [&](const Vec2& xy) {
        const Posterior post = model.predict(id, proto_at(robot_proto, xy), object_pose);
        return std::make_pair(post.mean, post.stddev());
    });
    grid.model_kind = "object_centric";
    grid.object_poses.emplace(id, object_pose);
    return grid;
}

FieldGrid render_composite(const ObjectCentricModel& model,
                           const std::map<ObjectId, Pose>& poses,
                           const Pose& robot_proto, const GridSpec& spec) {
    FieldGrid grid = render_field(spec, [&](const Vec2& xy) {
        const CompositePrediction pred =
            model.composite_predict(proto_at(robot_proto, xy), poses);
        return std::make_pair(pred.mean, pred.std);
    });
    grid.model_kind = "composite";
    grid.object_poses = poses;
    return grid;
}

FieldGrid render_full_state(const FullStateModel& model,
                            const std::map<ObjectId, Pose>& poses,
                            const Pose& robot_proto, const GridSpec& spec) {
    FieldGrid grid = render_field(spec, [&](const Vec2& xy) {
        const Posterior post = model.predict(proto_at(robot_proto, xy), poses);
        return std::make_pair(post.mean, post.stddev());
    });
    grid.model_kind = "full_state";
    grid.object_poses = poses;
    return grid;
}

void write_fields_csv(const std::filesystem::path& path,
                      const std::vector<FieldGrid>& grids) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    out << "snapshot,x,y,mean,std,model_kind\n";
    for (const FieldGrid& g : grids) {
        for (Eigen::Index iy = 0; iy < g.ys.size(); ++iy) {
            for (Eigen::Index ix = 0; ix < g.xs.size(); ++ix) {
                out << g.snapshot << ',' << format_double(g.xs(ix)) << ','
                    << format_double(g.ys(iy)) << ',' << format_double(g.mean(iy, ix))
                    << ',' << format_double(g.std(iy, ix)) << ',' << g.model_kind
                    << '\n';
            }
        }
    }
}

std::vector<FieldGrid> read_fields_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != "snapshot,x,y,mean,std,model_kind") {
        throw ConfigError("bad field CSV header in " + path.string());
    }

    struct Row {
        int snapshot;
        double x, y, mean, std;
        std::string kind;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 6) {
            throw ConfigError("bad field CSV row: " + line);
        }
        rows.push_back({static_cast<int>(parse_long(cells[0])), parse_double(cells[1]),
                        parse_double(cells[2]), parse_double(cells[3]),
                        parse_double(cells[4]), cells[5]});
    }

    // Rows were emitted grid by grid in scan order; rebuild on key change.
    std::vector<FieldGrid> grids;
    std::size_t i = 0;
    while (i < rows.size()) {
        const int snapshot = rows[i].snapshot;
        const std::string kind = rows[i].kind;
        std::vector<double> xs;
        const double y0 = rows[i].y;
        std::size_t j = i;
        while (j < rows.size() && rows[j].snapshot == snapshot && rows[j].kind == kind &&
               rows[j].y == y0) {
            xs.push_back(rows[j].x);
            ++j;
        }
        const std::size_t nx = xs.size();
        std::vector<double> ys;
        j = i;
        while (j < rows.size() && rows[j].snapshot == snapshot && rows[j].kind == kind) {
            ys.push_back(rows[j].y);
            j += nx;
        }
        const std::size_t ny = ys.size();

        FieldGrid g;
        g.snapshot = snapshot;
        g.model_kind = kind;
        g.xs = Eigen::Map<Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(nx));
        g.ys = Eigen::Map<Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ny));
        g.mean.resize(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
        g.std.resize(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                const Row& r = rows[i + iy * nx + ix];
                g.mean(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix)) = r.mean;
                g.std(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix)) = r.std;
            }
        }
        grids.push_back(std::move(g));
        i += nx * ny;
    }
    return grids;
}

}  // namespace ocgp
