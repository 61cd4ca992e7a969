#pragma once

#include <functional>
#include <string>
#include <vector>

namespace narrowfront::geometry {

enum class Side { lower, upper };

enum class ProfileFamily {
    constant,
    affine,
    sigmoid,
    smoothed_step,
    sinusoidal,
    random_realization,
};

// A point on the strip boundary together with the inward unit normal at
// scale eps. gamma1/gamma2 are the x- and y-projections of the normal.
struct BoundaryPoint {
    double x = 0.0;
    Side side = Side::lower;
    double gamma1_eps = 0.0;
    double gamma2_eps = 0.0;
    double y = 0.0;  // physical ordinate eps * g_side(x)
};

using BoundaryFn = std::function<double(const BoundaryPoint&)>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Harmonic mode of a random realization, log V(x) = sum a_j cos(w_j x + theta_j).
struct HarmonicMode {
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
};

// Strip cross-section D_x = (g-(x), g+(x)) with analytic derivatives.
// All evaluations outside x_domain clamp x to the domain edge; the strict
// operations below reject such points instead.
class TubeProfile {
public:
    static TubeProfile constant(double g_minus, double g_plus, Interval x_domain);
    static TubeProfile affine(double gm0, double gm_slope, double gp0, double gp_slope,
                              Interval x_domain);
    // Symmetric strip, width v_lo -> v_hi through a logistic ramp at `center`.
    static TubeProfile sigmoid(double v_lo, double v_hi, double rate, double center,
                               Interval x_domain);
    // Symmetric strip, width v1 -> v2 through a tanh step at `center`.
    static TubeProfile smoothed_step(double v1, double v2, double rate, double center,
                                     Interval x_domain);
    // Symmetric strip with V(x) = exp(amp * sin(freq x + phase)).
    static TubeProfile sinusoidal(double amp, double freq, double phase, Interval x_domain);
    // Symmetric strip with log V given by a harmonic sum (random media realizations).
    static TubeProfile random_realization(std::vector<HarmonicMode> modes, Interval x_domain);

    ProfileFamily family() const { return family_; }
    const Interval& x_domain() const { return x_domain_; }
    double v_min() const { return v_min_; }
    double slope_max() const { return slope_max_; }

    bool in_domain(double x) const;
    double clamp_x(double x) const;

    // Boundary curves and derivatives; x is clamped to the domain.
    double g_minus(double x) const;
    double g_plus(double x) const;
    double dg_minus(double x) const;
    double dg_plus(double x) const;
    double d2g_minus(double x) const;
    double d2g_plus(double x) const;

    // Clamped evaluations used by the solvers.
    double volume_clamped(double x) const { return g_plus(x) - g_minus(x); }
    double dvolume_clamped(double x) const { return dg_plus(x) - dg_minus(x); }
    double grad_log_volume_clamped(double x) const {
        return dvolume_clamped(x) / volume_clamped(x);
    }

    std::string describe() const;

private:
    TubeProfile() = default;
    void validate(double v_floor, double slope_cap);
    // width and derivatives for the symmetric families (x already clamped)
    double volume_clamped_sym(double x) const;
    double dvolume_sym(double x) const;
    double d2volume_sym(double x) const;

    ProfileFamily family_ = ProfileFamily::constant;
    std::vector<double> params_;
    std::vector<HarmonicMode> modes_;
    Interval x_domain_{0.0, 1.0};
    double v_min_ = 0.0;
    double slope_max_ = 0.0;
};

// width of the cross-section D_x; rejects x outside the domain
double volume(const TubeProfile& profile, double x);

// counting measure of the two boundary points of an interval cross-section
double surface(const TubeProfile& profile, double x);

// V'(x)/V(x) from the analytic derivatives
double grad_log_volume(const TubeProfile& profile, double x);

// boundary average (1/V) * sum over the two boundary points of H,
// evaluated with the eps = 1 normals
double q_average(const TubeProfile& profile, const BoundaryFn& H, double x);

// unit inward normal to y = eps * g_side(x)
BoundaryPoint inward_normal_eps(const TubeProfile& profile, double epsilon, double x, Side side);

// gamma1^1 / |gamma2^1| at eps = 1; q_average of this equals grad log V
double drift_boundary_fn(const BoundaryPoint& p);

}  // namespace narrowfront::geometry
