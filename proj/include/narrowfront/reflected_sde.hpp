#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "narrowfront/geometry.hpp"

namespace narrowfront::reflected_sde {

struct SimConfig {
    double epsilon = 0.1;
    double dt = 1e-4;
    double horizon = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;
    std::uint64_t seed = 0;
    int n_paths = 1;
};

// dt must resolve single-step reflection: dt <= (epsilon * V_min)^2 / 4.
void validate_config(const SimConfig& config, const geometry::TubeProfile& profile);

struct ReflectionEvent {
    std::int64_t step = 0;
    geometry::Side side = geometry::Side::lower;
    double delta_l = 0.0;
    double x = 0.0;  // position after projection
};

struct ReflectedPath {
    std::vector<double> times, xs, ys, local_time;
    std::vector<ReflectionEvent> events;
};

struct StepOutcome {
    double x = 0.0;
    double y = 0.0;
    double delta_l = 0.0;
    std::optional<geometry::Side> side;
};

// Proposes (x+dw1, y+dw2); outside the closed strip the proposal is pulled
// back by nearest-point projection onto the violated boundary and delta_l is
// the projection distance. A step whose segment crosses both boundaries is a
// configuration error.
StepOutcome step_reflect(double x, double y, double dw1, double dw2,
                         const geometry::TubeProfile& profile, double epsilon);

ReflectedPath simulate_reflected(const SimConfig& config, const geometry::TubeProfile& profile);

// sum over events of eps * H(x, g_side(x)) * |gamma2_eps| * delta_l
double local_time_integral(const ReflectedPath& path, const geometry::BoundaryFn& H,
                           const geometry::TubeProfile& profile, double epsilon);

struct AveragingRow {
    double epsilon = 0.0;
    double mean_square_error = 0.0;
    double std_error = 0.0;
};

// Monte Carlo estimate of sup_t E|int 0.5 Q(X_s) ds - int eps H |gamma2| dL|^2
// for each config in the (decreasing epsilon) list.
std::vector<AveragingRow> averaging_error(std::span<const SimConfig> configs,
                                          const geometry::TubeProfile& profile,
                                          const geometry::BoundaryFn& H);

struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// E|eps L_T|^2
MomentEstimate local_time_moment(const SimConfig& config, const geometry::TubeProfile& profile);

struct SweepRow {
    double epsilon = 0.0;
    std::string statistic;
    double value = 0.0;
    double std_error = 0.0;
};

// One simulation pass per config computing mean_weighted_local_time (terminal
// int eps H |gamma2| dL), averaging_mse (sup_t) and local_time_square.
std::vector<SweepRow> sweep_statistics(std::span<const SimConfig> configs,
                                       const geometry::TubeProfile& profile,
                                       const geometry::BoundaryFn& H);

}  // namespace narrowfront::reflected_sde
