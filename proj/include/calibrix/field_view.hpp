#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "calibrix/general_field.hpp"
#include "calibrix/geometry.hpp"
#include "calibrix/model_field.hpp"

namespace calibrix {

/// Expected on-graph data for the graph condition.
struct GraphSample {
    double z = 0.0;                       // graph height at the base point
    double e1 = 0.0, e2 = 0.0, ez = 1.0;  // expected field components there
};

/// Field-agnostic adapter consumed by the verifier. Components are named
/// (1,2,z): (x,y,z) for the model constructions, (u,v,z) for the chart form.
/// Evaluators must be pure.
struct CalibrationFieldView {
    std::string coords = "xyz";
    Rect domain;
    double z_lo = 0.0, z_hi = 0.0;  // field is exactly (0,0,1) outside

    std::function<Vec3(double, double, double)> eval;
    std::function<Region(double, double, double)> region;
    std::function<std::vector<double>(double, double)> cuts;  // ascending
    std::function<Vec2(double, double, double, double)> slice;
    std::function<double(double, double)> bound_d;            // 1 or gamma
    std::function<std::array<double, 2>(double)> jump_span;   // at axis
    std::function<Vec2(double)> jump_target;                  // (0,1) or (0,gamma)
    std::function<GraphSample(double, double, int)> graph;    // side = sign(y)
};

CalibrationFieldView make_view(const ModelField& field);
CalibrationFieldView make_view(const GeneralField& field);

/// Test hook: replace the field value on one region (slices and region data
/// keep the original geometry). Used by the negative verification tests.
CalibrationFieldView with_region_override(CalibrationFieldView view, Region tag,
                                          Vec3 value);

}  // namespace calibrix
