#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ocgp/object_model.hpp"
#include "ocgp/sim.hpp"

namespace ocgp {

struct GridSpec {
    int nx = 100;
    int ny = 100;
    Rect extent;

    void validate() const;
};

/// Rasterized mean/std predictions over robot x,y positions. Matrices are
/// ny x nx with row index following ys and column index following xs.
struct FieldGrid {
    Eigen::VectorXd xs;
    Eigen::VectorXd ys;
    Eigen::MatrixXd mean;
    Eigen::MatrixXd std;
    int snapshot = 0;
    std::string model_kind;
    std::map<ObjectId, Pose> object_poses;  // poses at render time
};

/// (mean, std) of some model evaluated at a planar robot position.
using FieldFn = std::function<std::pair<double, double>(const Vec2&)>;

/// Evaluates fn over the grid. Rows are rendered in parallel; the output is
/// deterministic because cells are written by index.
FieldGrid render_field(const GridSpec& spec, const FieldFn& fn);

/// One object's GP over robot grid positions (robot z and orientation taken
/// from robot_proto).
FieldGrid render_object_centric(const ObjectCentricModel& model, ObjectId id,
                                const Pose& object_pose, const Pose& robot_proto,
                                const GridSpec& spec);

/// Worst-case composite over all registered objects.
FieldGrid render_composite(const ObjectCentricModel& model,
                           const std::map<ObjectId, Pose>& poses,
                           const Pose& robot_proto, const GridSpec& spec);

FieldGrid render_full_state(const FullStateModel& model,
                            const std::map<ObjectId, Pose>& poses,
                            const Pose& robot_proto, const GridSpec& spec);

/// Long-form CSV: snapshot,x,y,mean,std,model_kind. Doubles are written in
/// shortest round-trip form, so write -> read -> write is byte-identical.
/// Object-pose metadata lives in the run summary, not the CSV.
void write_fields_csv(const std::filesystem::path& path,
                      const std::vector<FieldGrid>& grids);

std::vector<FieldGrid> read_fields_csv(const std::filesystem::path& path);

}  // namespace ocgp
