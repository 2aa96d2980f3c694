#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "calibrix/field_view.hpp"
#include "calibrix/geometry.hpp"

namespace calibrix {

/// Per-condition verification outcome.
struct ConditionResult {
    bool pass = false;
    double worst_residual = 0.0;
    Vec3 worst_point{};
    long samples = 0;
    double tolerance = 0.0;
    double wall_time_s = 0.0;
    std::map<std::string, double> extras;
};

/// Default tolerances; every threshold is pinned here and overridable.
struct Tolerances {
    double div_flux = 1e-6;     // normalized net box flux, interior boxes
    double iface_flux = 1e-6;   // normalized net box flux, straddling boxes
    double iface_order = 1.9;   // Richardson convergence order floor
    double bound_b = 1e-12;     // slack allowed on phi1^2+phi2^2-4 phiz <= 0
    double graph_c = 1e-10;
    double slice_d = 1e-9;      // relative: (|I|^2 - B^2)/B^2
    double jump_e = 1e-8;
};

struct VerifyOptions {
    Tolerances tol;
    unsigned seed = 1;
    int identity_samples = 1000;  // jump condition sample count
    int bound_samples = 20000;
    int graph_samples = 1000;
    int plane_points_d = 384;     // off-axis base points for the slice scan
    int axis_points_d = 33;       // on-axis base points (equality locus)
    int tgrid = 129;
    int refine_rounds = 3;
    int refine_grid = 9;
    int top_maxima = 5;
    int box_plane_points = 6;
    std::array<int, 3> face_res{8, 16, 32};
};

/// Structured verification outcome; conditions are stored in report order.
struct VerificationReport {
    std::vector<std::pair<std::string, ConditionResult>> conditions;
    unsigned seed = 1;
    double total_wall_s = 0.0;

    bool verified() const;
    std::string verdict() const;  // CALIBRATION_VERIFIED or FAILED(name)
    const ConditionResult* find(const std::string& name) const;
};

/// Runs all six condition checks against a field view.
VerificationReport verify_field(const CalibrationFieldView& view,
                                const VerifyOptions& opt = {});

/// Individual checks (exposed for targeted tests).
ConditionResult check_divergence_interior(const CalibrationFieldView&, const VerifyOptions&);
ConditionResult check_interface_continuity(const CalibrationFieldView&, const VerifyOptions&);
ConditionResult check_bound_b(const CalibrationFieldView&, const VerifyOptions&);
ConditionResult check_graph_c(const CalibrationFieldView&, const VerifyOptions&);
ConditionResult check_slice_d(const CalibrationFieldView&, const VerifyOptions&);
ConditionResult check_jump_e(const CalibrationFieldView&, const VerifyOptions&);

}  // namespace calibrix
