#include "vton/schedule.hpp"

namespace vton {

std::string to_string(ScheduleKind k) {
    return k == ScheduleKind::linear ? "linear" : "cosine";
}

ScheduleKind schedule_kind_from_string(const std::string& s) {
    if (s == "linear") return ScheduleKind::linear;
    if (s == "cosine") return ScheduleKind::cosine;
    throw ConfigError("unknown schedule kind: " + s);
}

NoiseSchedule make_schedule(int T, double beta_start, double beta_end, ScheduleKind kind) {
    check_config(T >= 1, "make_schedule: T must be >= 1");
    check_config(beta_start > 0 && beta_start <= beta_end && beta_end < 1,
                 "make_schedule: need 0 < beta_start <= beta_end < 1");
    NoiseSchedule s;
    s.T = T;
    s.beta_start = beta_start;
    s.beta_end = beta_end;
    s.kind = kind;
    s.betas.resize(T);
    s.alpha_bars.resize(T);

    if (kind == ScheduleKind::linear) {
        for (int t = 1; t <= T; t++) {
            double frac = T == 1 ? 0.0 : static_cast<double>(t - 1) / (T - 1);
            s.betas[t - 1] = beta_start + (beta_end - beta_start) * frac;
        }
    } else {
        // cosine alpha-bar parameterization with the usual 0.008 offset;
        // betas derived from consecutive alpha-bar ratios and capped at 0.999.
        const double off = 0.008;
        auto f = [&](double t) {
            double v = std::cos((t / T + off) / (1 + off) * M_PI / 2.0);
            return v * v;
        };
        double f0 = f(0.0);
        double prev = 1.0;
        for (int t = 1; t <= T; t++) {
            double ab = f(static_cast<double>(t)) / f0;
            double beta = 1.0 - ab / prev;
            s.betas[t - 1] = std::min(beta, 0.999);
            prev *= 1.0 - s.betas[t - 1];
        }
    }

    double prod = 1.0;
    for (int t = 1; t <= T; t++) {
        prod *= 1.0 - s.betas[t - 1];
        s.alpha_bars[t - 1] = prod;
    }
    return s;
}

std::vector<int> uniform_timesteps(const NoiseSchedule& schedule, int steps, int t_max) {
    if (t_max < 0) t_max = schedule.T;
    check_config(steps >= 1, "uniform_timesteps: steps must be >= 1");
    check_config(t_max >= 1 && t_max <= schedule.T, "uniform_timesteps: t_max out of range");
    steps = std::min(steps, t_max);
    std::vector<int> ts(steps);
    for (int i = 0; i < steps; i++) {
        // evenly spaced in (0, t_max], descending, always including t_max
        double v = static_cast<double>(t_max) * (steps - i) / steps;
        ts[i] = std::max(1, static_cast<int>(std::llround(v)));
    }
    // strictly decreasing; collapse duplicates that rounding may create
    std::vector<int> out;
    for (int t : ts)
        if (out.empty() || t < out.back()) out.push_back(t);
    return out;
}

}  // namespace vton
