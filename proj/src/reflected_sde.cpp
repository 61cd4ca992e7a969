#include "narrowfront/reflected_sde.hpp"

#include <cmath>
#include <stdexcept>

#include "narrowfront/exec.hpp"
#include "narrowfront/rng.hpp"

namespace narrowfront::reflected_sde {

using geometry::Side;
using geometry::TubeProfile;

namespace {

// Nearest point on the curve y = eps * g(x') from (px, py): Newton on the
// stationarity condition of the squared distance. Exact in one step for
// constant and affine boundaries.
double project_onto_curve(const TubeProfile& profile, double epsilon, Side side, double px,
                          double py) {
    double x = px;
    for (int it = 0; it < 64; ++it) {
        const double g = side == Side::upper ? profile.g_plus(x) : profile.g_minus(x);
        const double dg = side == Side::upper ? profile.dg_plus(x) : profile.dg_minus(x);
        const double d2g = side == Side::upper ? profile.d2g_plus(x) : profile.d2g_minus(x);
        const double r = epsilon * g - py;
        const double f = (x - px) + epsilon * dg * r;
        const double fp = 1.0 + epsilon * epsilon * dg * dg + epsilon * d2g * r;
        const double step = f / (fp != 0.0 ? fp : 1.0);
        x -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

struct BoundaryViolation {
    bool upper = false;
    bool lower = false;
};

BoundaryViolation violation(const TubeProfile& profile, double epsilon, double x, double y) {
    BoundaryViolation v;
    v.upper = y > epsilon * profile.g_plus(x);
    v.lower = y < epsilon * profile.g_minus(x);
    return v;
}

}  // namespace

void validate_config(const SimConfig& config, const TubeProfile& profile) {
    if (!(config.epsilon > 0.0 && config.epsilon <= 1.0))
        throw std::invalid_argument("SimConfig: epsilon must lie in (0, 1]");
    if (!(config.dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be positive");
    const double cap = std::pow(config.epsilon * profile.v_min(), 2) / 4.0;
    if (config.dt > cap)
        throw std::invalid_argument("SimConfig: dt exceeds (eps*V_min)^2/4 = " +
                                    std::to_string(cap));
    if (!(config.horizon >= 0.0)) throw std::invalid_argument("SimConfig: horizon must be >= 0");
    if (config.n_paths < 1) throw std::invalid_argument("SimConfig: n_paths must be >= 1");
    if (!profile.in_domain(config.x0))
        throw std::invalid_argument("SimConfig: start x0 outside x_domain");
    const double lo = config.epsilon * profile.g_minus(config.x0);
    const double hi = config.epsilon * profile.g_plus(config.x0);
    if (!(config.y0 > lo && config.y0 < hi))
        throw std::invalid_argument("SimConfig: start y0 not strictly interior");
}

StepOutcome step_reflect(double x, double y, double dw1, double dw2, const TubeProfile& profile,
                         double epsilon) {
    const double px = x + dw1;
    const double py = y + dw2;
    const auto v = violation(profile, epsilon, px, py);
    if (!v.upper && !v.lower) return {px, py, 0.0, std::nullopt};

    // A straight segment that leaves through one boundary after crossing the
    // other invalidates single-projection; detect via the midpoint.
    const auto vm = violation(profile, epsilon, 0.5 * (x + px), 0.5 * (y + py));
    if ((v.upper && vm.lower) || (v.lower && vm.upper))
        throw std::runtime_error("step_reflect: step crossed both boundaries; reduce dt");

    const Side side = v.upper ? Side::upper : Side::lower;
    const double xs = project_onto_curve(profile, epsilon, side, px, py);
    const double ys =
        epsilon * (side == Side::upper ? profile.g_plus(xs) : profile.g_minus(xs));
    const double delta_l = std::hypot(xs - px, ys - py);
    return {xs, ys, delta_l, side};
}

namespace detail {

// Drives one path, reporting every step to the sink:
//   sink(step_index, x, y, delta_l, side_or_npos)
template <class Sink>
void run_path(const SimConfig& config, const TubeProfile& profile, std::uint64_t path_index,
              Sink&& sink) {
    auto base = rng::Stream(config.seed).derived(rng::kReflectedSde).derived(path_index);
    auto wx = base.derived(0);
    auto wy = base.derived(1);
    const double sq = std::sqrt(config.dt);
    const std::int64_t n = static_cast<std::int64_t>(std::llround(config.horizon / config.dt));
    double x = config.x0, y = config.y0;
    for (std::int64_t k = 1; k <= n; ++k) {
        const StepOutcome out =
            step_reflect(x, y, sq * wx.normal(), sq * wy.normal(), profile, config.epsilon);
        x = out.x;
        y = out.y;
        sink(k, x, y, out.delta_l, out.side);
    }
}

}  // namespace detail

ReflectedPath simulate_reflected(const SimConfig& config, const TubeProfile& profile) {
    validate_config(config, profile);
    const std::int64_t n = static_cast<std::int64_t>(std::llround(config.horizon / config.dt));
    ReflectedPath path;
    path.times.resize(n + 1);
    path.xs.resize(n + 1);
    path.ys.resize(n + 1);
    path.local_time.resize(n + 1);
    path.times[0] = 0.0;
    path.xs[0] = config.x0;
    path.ys[0] = config.y0;
    path.local_time[0] = 0.0;
    double acc = 0.0;
    detail::run_path(config, profile, 0,
                     [&](std::int64_t k, double x, double y, double dl,
                         std::optional<Side> side) {
                         acc += dl;
                         path.times[k] = k * config.dt;
                         path.xs[k] = x;
                         path.ys[k] = y;
                         path.local_time[k] = acc;
                         if (side) path.events.push_back({k, *side, dl, x});
                     });
    return path;
}

double local_time_integral(const ReflectedPath& path, const geometry::BoundaryFn& H,
                           const TubeProfile& profile, double epsilon) {
    double acc = 0.0;
    for (const auto& ev : path.events) {
        const double xc = profile.clamp_x(ev.x);
        const auto bp1 = geometry::inward_normal_eps(profile, 1.0, xc, ev.side);
        const auto bpe = geometry::inward_normal_eps(profile, epsilon, xc, ev.side);
        acc += epsilon * H(bp1) * std::abs(bpe.gamma2_eps) * ev.delta_l;
    }
    return acc;
}

namespace {

// Tabulated x -> value over the profile domain, linear interpolation, used to
// keep smooth boundary functionals out of the per-step hot loop.
class Table {
public:
    template <class Fn>
    Table(const TubeProfile& profile, int n, Fn&& fn)
        : lo_(profile.x_domain().lo), hi_(profile.x_domain().hi), inv_dx_(0.0) {
        vals_.resize(n + 1);
        const double dx = (hi_ - lo_) / n;
        inv_dx_ = 1.0 / dx;
        for (int i = 0; i <= n; ++i) vals_[i] = fn(lo_ + i * dx);
    }

    double operator()(double x) const {
        if (x <= lo_) return vals_.front();
        if (x >= hi_) return vals_.back();
        const double f = (x - lo_) * inv_dx_;
        const std::size_t j = static_cast<std::size_t>(f);
        const double w = f - static_cast<double>(j);
        return vals_[j] * (1.0 - w) + vals_[j + 1] * w;
    }

private:
    double lo_, hi_, inv_dx_;
    std::vector<double> vals_;
};

struct PathStats {
    double weighted_local_time = 0.0;  // int eps H |gamma2_eps| dL at horizon
    double eps_l = 0.0;                // eps * L_T
    std::vector<double> diff;          // q-integral minus weighted local time at checkpoints
};

constexpr int kCheckpoints = 64;
constexpr int kTableSize = 2048;

// One ensemble pass; fills per-path stats in deterministic slots.
std::vector<PathStats> ensemble_pass(const SimConfig& config, const TubeProfile& profile,
                                     const geometry::BoundaryFn& H) {
    validate_config(config, profile);
    const Table q_table(profile, kTableSize,
                        [&](double x) { return geometry::q_average(profile, H, x); });
    const Table w_lower(profile, kTableSize, [&](double x) {
        const auto bp1 = geometry::inward_normal_eps(profile, 1.0, x, Side::lower);
        const auto bpe = geometry::inward_normal_eps(profile, config.epsilon, x, Side::lower);
        return H(bp1) * std::abs(bpe.gamma2_eps);
    });
    const Table w_upper(profile, kTableSize, [&](double x) {
        const auto bp1 = geometry::inward_normal_eps(profile, 1.0, x, Side::upper);
        const auto bpe = geometry::inward_normal_eps(profile, config.epsilon, x, Side::upper);
        return H(bp1) * std::abs(bpe.gamma2_eps);
    });

    const std::int64_t n = static_cast<std::int64_t>(std::llround(config.horizon / config.dt));
    const std::int64_t stride = std::max<std::int64_t>(1, n / kCheckpoints);

    std::vector<PathStats> stats(config.n_paths);
    exec::parallel_for(static_cast<std::size_t>(config.n_paths), [&](std::size_t p) {
        double q_int = 0.0, w_int = 0.0, l_acc = 0.0;
        auto& st = stats[p];
        st.diff.reserve(kCheckpoints + 2);
        detail::run_path(config, profile, p,
                         [&](std::int64_t k, double x, double, double dl,
                             std::optional<Side> side) {
                             q_int += 0.5 * q_table(x) * config.dt;
                             if (side) {
                                 l_acc += dl;
                                 w_int += config.epsilon * dl *
                                          (*side == Side::upper ? w_upper(x) : w_lower(x));
                             }
                             if (k % stride == 0 || k == n) st.diff.push_back(q_int - w_int);
                         });
        st.weighted_local_time = w_int;
        st.eps_l = config.epsilon * l_acc;
    });
    return stats;
}

}  // namespace

std::vector<AveragingRow> averaging_error(std::span<const SimConfig> configs,
                                          const TubeProfile& profile,
                                          const geometry::BoundaryFn& H) {
    std::vector<AveragingRow> rows;
    rows.reserve(configs.size());
    for (const auto& config : configs) {
        const auto stats = ensemble_pass(config, profile, H);
        const std::size_t n_checks = stats.front().diff.size();
        double worst = 0.0, worst_se = 0.0;
        for (std::size_t c = 0; c < n_checks; ++c) {
            double s = 0.0, s2 = 0.0;
            for (const auto& st : stats) {
                const double d2 = st.diff[c] * st.diff[c];
                s += d2;
                s2 += d2 * d2;
            }
            const double m = s / stats.size();
            const double var = std::max(0.0, s2 / stats.size() - m * m);
            if (m > worst) {
                worst = m;
                worst_se = std::sqrt(var / stats.size());
            }
        }
        rows.push_back({config.epsilon, worst, worst_se});
    }
    return rows;
}

MomentEstimate local_time_moment(const SimConfig& config, const TubeProfile& profile) {
    const auto stats = ensemble_pass(config, profile, [](const geometry::BoundaryPoint&) {
        return 1.0;
    });
    double s = 0.0, s2 = 0.0;
    for (const auto& st : stats) {
        const double v = st.eps_l * st.eps_l;
        s += v;
        s2 += v * v;
    }
    const double m = s / stats.size();
    const double var = std::max(0.0, s2 / stats.size() - m * m);
    return {m, std::sqrt(var / stats.size())};
}

std::vector<SweepRow> sweep_statistics(std::span<const SimConfig> configs,
                                       const TubeProfile& profile,
                                       const geometry::BoundaryFn& H) {
    std::vector<SweepRow> rows;
    for (const auto& config : configs) {
        const auto stats = ensemble_pass(config, profile, H);
        auto moments = [&](auto&& get) {
            double s = 0.0, s2 = 0.0;
            for (const auto& st : stats) {
                const double v = get(st);
                s += v;
                s2 += v * v;
            }
            const double m = s / stats.size();
            const double var = std::max(0.0, s2 / stats.size() - m * m);
            return std::pair<double, double>(m, std::sqrt(var / stats.size()));
        };
        const auto [wm, wse] = moments([](const PathStats& st) { return st.weighted_local_time; });
        rows.push_back({config.epsilon, "mean_weighted_local_time", wm, wse});
        const auto [qm, qse] =
            moments([](const PathStats& st) { return st.eps_l * st.eps_l; });
        rows.push_back({config.epsilon, "local_time_square", qm, qse});
        double worst = 0.0, worst_se = 0.0;
        for (std::size_t c = 0; c < stats.front().diff.size(); ++c) {
            const auto [m, se] = moments([&](const PathStats& st) {
                return st.diff[c] * st.diff[c];
            });
            if (m > worst) {
                worst = m;
                worst_se = se;
            }
        }
        rows.push_back({config.epsilon, "averaging_mse", worst, worst_se});
    }
    return rows;
}

}  // namespace narrowfront::reflected_sde
