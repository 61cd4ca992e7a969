#include "narrowfront/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace narrowfront::geometry {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

TubeProfile TubeProfile::constant(double g_minus, double g_plus, Interval x_domain) {
    TubeProfile p;
    p.family_ = ProfileFamily::constant;
    p.params_ = {g_minus, g_plus};
    p.x_domain_ = x_domain;
    p.validate(0.0, 0.0);
    return p;
}

TubeProfile TubeProfile::affine(double gm0, double gm_slope, double gp0, double gp_slope,
                                Interval x_domain) {
    TubeProfile p;
    p.family_ = ProfileFamily::affine;
    p.params_ = {gm0, gm_slope, gp0, gp_slope};
    p.x_domain_ = x_domain;
    p.validate(0.0, 0.0);
    return p;
}

TubeProfile TubeProfile::sigmoid(double v_lo, double v_hi, double rate, double center,
                                 Interval x_domain) {
    TubeProfile p;
    p.family_ = ProfileFamily::sigmoid;
    p.params_ = {v_lo, v_hi, rate, center};
    p.x_domain_ = x_domain;
    p.validate(0.0, 0.0);
    return p;
}

TubeProfile TubeProfile::smoothed_step(double v1, double v2, double rate, double center,
                                       Interval x_domain) {
    TubeProfile p;
    p.family_ = ProfileFamily::smoothed_step;
    p.params_ = {v1, v2, rate, center};
    p.x_domain_ = x_domain;
    p.validate(0.0, 0.0);
    return p;
}

TubeProfile TubeProfile::sinusoidal(double amp, double freq, double phase, Interval x_domain) {
    TubeProfile p;
    p.family_ = ProfileFamily::sinusoidal;
    p.params_ = {amp, freq, phase};
    p.x_domain_ = x_domain;
    p.validate(0.0, 0.0);
    return p;
}

TubeProfile TubeProfile::random_realization(std::vector<HarmonicMode> modes, Interval x_domain) {
    TubeProfile p;
    p.family_ = ProfileFamily::random_realization;
    p.modes_ = std::move(modes);
    p.x_domain_ = x_domain;
    p.validate(0.0, 0.0);
    return p;
}

void TubeProfile::validate(double v_floor, double slope_cap) {
    if (!(x_domain_.lo < x_domain_.hi))
        throw std::invalid_argument("TubeProfile: empty x_domain");
    constexpr int kSamples = 4096;
    double min_v = std::numeric_limits<double>::infinity();
    double max_slope = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        const double x = x_domain_.lo + (x_domain_.hi - x_domain_.lo) * i / kSamples;
        const double gm = g_minus(x), gp = g_plus(x);
        if (!(gm < 0.0 && 0.0 < gp))
            throw std::invalid_argument("TubeProfile: cross-section must contain 0");
        min_v = std::min(min_v, gp - gm);
        max_slope = std::max(max_slope, std::max(std::abs(dg_minus(x)), std::abs(dg_plus(x))));
    }
    if (v_floor > 0.0 && min_v < v_floor)
        throw std::invalid_argument("TubeProfile: width drops below the declared floor");
    if (slope_cap > 0.0 && max_slope > slope_cap)
        throw std::invalid_argument("TubeProfile: slope exceeds the declared cap");
    v_min_ = 0.99 * min_v;
    slope_max_ = max_slope;
    if (!(v_min_ > 0.0)) throw std::invalid_argument("TubeProfile: width must stay positive");
}

bool TubeProfile::in_domain(double x) const {
    return x >= x_domain_.lo && x <= x_domain_.hi;
}

double TubeProfile::clamp_x(double x) const {
    return std::clamp(x, x_domain_.lo, x_domain_.hi);
}

double TubeProfile::g_minus(double x) const {
    x = clamp_x(x);
    switch (family_) {
        case ProfileFamily::constant: return params_[0];
        case ProfileFamily::affine: return params_[0] + params_[1] * x;
        default: return -0.5 * volume_clamped_sym(x);
    }
}

double TubeProfile::g_plus(double x) const {
    x = clamp_x(x);
    switch (family_) {
        case ProfileFamily::constant: return params_[1];
        case ProfileFamily::affine: return params_[2] + params_[3] * x;
        default: return 0.5 * volume_clamped_sym(x);
    }
}

double TubeProfile::dg_minus(double x) const {
    if (!in_domain(x)) return 0.0;  // clamped-constant extension
    switch (family_) {
        case ProfileFamily::constant: return 0.0;
        case ProfileFamily::affine: return params_[1];
        default: return -0.5 * dvolume_sym(x);
    }
}

double TubeProfile::dg_plus(double x) const {
    if (!in_domain(x)) return 0.0;
    switch (family_) {
        case ProfileFamily::constant: return 0.0;
        case ProfileFamily::affine: return params_[3];
        default: return 0.5 * dvolume_sym(x);
    }
}

double TubeProfile::d2g_minus(double x) const {
    if (!in_domain(x)) return 0.0;
    switch (family_) {
        case ProfileFamily::constant:
        case ProfileFamily::affine: return 0.0;
        default: return -0.5 * d2volume_sym(x);
    }
}

double TubeProfile::d2g_plus(double x) const {
    if (!in_domain(x)) return 0.0;
    switch (family_) {
        case ProfileFamily::constant:
        case ProfileFamily::affine: return 0.0;
        default: return 0.5 * d2volume_sym(x);
    }
}

double TubeProfile::volume_clamped_sym(double x) const {
    switch (family_) {
        case ProfileFamily::sigmoid:
            return params_[0] + (params_[1] - params_[0]) * logistic(params_[2] * (x - params_[3]));
        case ProfileFamily::smoothed_step:
            return params_[0] +
                   (params_[1] - params_[0]) * 0.5 * (1.0 + std::tanh(params_[2] * (x - params_[3])));
        case ProfileFamily::sinusoidal:
            return std::exp(params_[0] * std::sin(params_[1] * x + params_[2]));
        case ProfileFamily::random_realization: {
            double lv = 0.0;
            for (const auto& m : modes_) lv += m.amplitude * std::cos(m.frequency * x + m.phase);
            return std::exp(lv);
        }
        default: return 0.0;  // handled by the callers
    }
}

double TubeProfile::dvolume_sym(double x) const {
    switch (family_) {
        case ProfileFamily::sigmoid: {
            const double s = logistic(params_[2] * (x - params_[3]));
            return (params_[1] - params_[0]) * params_[2] * s * (1.0 - s);
        }
        case ProfileFamily::smoothed_step: {
            const double th = std::tanh(params_[2] * (x - params_[3]));
            return (params_[1] - params_[0]) * 0.5 * params_[2] * (1.0 - th * th);
        }
        case ProfileFamily::sinusoidal: {
            const double v = volume_clamped_sym(x);
            return v * params_[0] * params_[1] * std::cos(params_[1] * x + params_[2]);
        }
        case ProfileFamily::random_realization: {
            double dlv = 0.0;
            for (const auto& m : modes_)
                dlv -= m.amplitude * m.frequency * std::sin(m.frequency * x + m.phase);
            return volume_clamped_sym(x) * dlv;
        }
        default: return 0.0;
    }
}

double TubeProfile::d2volume_sym(double x) const {
    switch (family_) {
        case ProfileFamily::sigmoid: {
            const double s = logistic(params_[2] * (x - params_[3]));
            const double r = params_[2];
            return (params_[1] - params_[0]) * r * r * s * (1.0 - s) * (1.0 - 2.0 * s);
        }
        case ProfileFamily::smoothed_step: {
            const double r = params_[2];
            const double th = std::tanh(r * (x - params_[3]));
            return -(params_[1] - params_[0]) * r * r * th * (1.0 - th * th);
        }
        case ProfileFamily::sinusoidal: {
            const double v = volume_clamped_sym(x);
            const double c = std::cos(params_[1] * x + params_[2]);
            const double s = std::sin(params_[1] * x + params_[2]);
            const double a = params_[0], w = params_[1];
            return v * (a * w * c * a * w * c - a * w * w * s);
        }
        case ProfileFamily::random_realization: {
            double dlv = 0.0, d2lv = 0.0;
            for (const auto& m : modes_) {
                dlv -= m.amplitude * m.frequency * std::sin(m.frequency * x + m.phase);
                d2lv -= m.amplitude * m.frequency * m.frequency * std::cos(m.frequency * x + m.phase);
            }
            const double v = volume_clamped_sym(x);
            return v * (dlv * dlv + d2lv);
        }
        default: return 0.0;
    }
}

std::string TubeProfile::describe() const {
    std::ostringstream os;
    switch (family_) {
        case ProfileFamily::constant: os << "constant"; break;
        case ProfileFamily::affine: os << "affine"; break;
        case ProfileFamily::sigmoid: os << "sigmoid"; break;
        case ProfileFamily::smoothed_step: os << "smoothed-step"; break;
        case ProfileFamily::sinusoidal: os << "sinusoidal"; break;
        case ProfileFamily::random_realization: os << "random-realization"; break;
    }
    os << "[" << x_domain_.lo << "," << x_domain_.hi << "]";
    return os.str();
}

double volume(const TubeProfile& profile, double x) {
    if (!profile.in_domain(x)) throw std::domain_error("volume: x outside x_domain");
    return profile.g_plus(x) - profile.g_minus(x);
}

double surface(const TubeProfile& profile, double x) {
    if (!profile.in_domain(x)) throw std::domain_error("surface: x outside x_domain");
    return 2.0;
}

double grad_log_volume(const TubeProfile& profile, double x) {
    if (!profile.in_domain(x)) throw std::domain_error("grad_log_volume: x outside x_domain");
    return (profile.dg_plus(x) - profile.dg_minus(x)) / (profile.g_plus(x) - profile.g_minus(x));
}

BoundaryPoint inward_normal_eps(const TubeProfile& profile, double epsilon, double x, Side side) {
    if (!profile.in_domain(x)) throw std::domain_error("inward_normal_eps: x outside x_domain");
    if (!(epsilon > 0.0)) throw std::invalid_argument("inward_normal_eps: epsilon must be > 0");
    BoundaryPoint p;
    p.x = x;
    p.side = side;
    if (side == Side::upper) {
        const double s = profile.dg_plus(x);
        const double norm = std::sqrt(1.0 + epsilon * epsilon * s * s);
        p.gamma1_eps = epsilon * s / norm;
        p.gamma2_eps = -1.0 / norm;
        p.y = epsilon * profile.g_plus(x);
    } else {
        const double s = profile.dg_minus(x);
        const double norm = std::sqrt(1.0 + epsilon * epsilon * s * s);
        p.gamma1_eps = -epsilon * s / norm;
        p.gamma2_eps = 1.0 / norm;
        p.y = epsilon * profile.g_minus(x);
    }
    return p;
}

double q_average(const TubeProfile& profile, const BoundaryFn& H, double x) {
    if (!profile.in_domain(x)) throw std::domain_error("q_average: x outside x_domain");
    const BoundaryPoint lo = inward_normal_eps(profile, 1.0, x, Side::lower);
    const BoundaryPoint hi = inward_normal_eps(profile, 1.0, x, Side::upper);
    return (H(lo) + H(hi)) / (profile.g_plus(x) - profile.g_minus(x));
}

double drift_boundary_fn(const BoundaryPoint& p) {
    return p.gamma1_eps / std::abs(p.gamma2_eps);
}

}  // namespace narrowfront::geometry
