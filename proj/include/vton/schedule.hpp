#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vton/common.hpp"

namespace vton {

enum class ScheduleKind { linear, cosine };

std::string to_string(ScheduleKind k);
ScheduleKind schedule_kind_from_string(const std::string& s);

// beta/alpha-bar tables, 1-indexed by timestep t in [1, T].
// alpha_bar(0) == 1 by convention so terminal sampler steps are well defined.
struct NoiseSchedule {
    int T = 0;
    double beta_start = 0, beta_end = 0;
    ScheduleKind kind = ScheduleKind::linear;
    std::vector<double> betas;       // betas[t-1] = beta_t
    std::vector<double> alpha_bars;  // alpha_bars[t-1] = cumprod(1 - beta)

    double beta(int t) const {
        check(t >= 1 && t <= T, "schedule: t out of range");
        return betas[static_cast<size_t>(t) - 1];
    }
    double alpha_bar(int t) const {
        check(t >= 0 && t <= T, "schedule: t out of range");
        return t == 0 ? 1.0 : alpha_bars[static_cast<size_t>(t) - 1];
    }
};

NoiseSchedule make_schedule(int T, double beta_start, double beta_end, ScheduleKind kind);

// Uniform-stride descending timestep sequence for sampling: `steps` values from
// t_max down, ending at the lowest chosen timestep (the sampler then finishes
// with t_prev = 0). t_max defaults to schedule.T.
std::vector<int> uniform_timesteps(const NoiseSchedule& schedule, int steps, int t_max = -1);

}  // namespace vton
