#pragma once

#include "vton/rng.hpp"
#include "vton/schedule.hpp"
#include "vton/tensor.hpp"

namespace vton {

// Forward process: x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps.
template <typename S>
TensorT<S> q_sample(const TensorT<S>& x0, int t, const TensorT<S>& eps,
                    const NoiseSchedule& schedule) {
    check(t >= 1 && t <= schedule.T, "q_sample: t out of range");
    check(x0.same_shape(eps), "q_sample: eps shape mismatch");
    double ab = schedule.alpha_bar(t);
    S a = static_cast<S>(std::sqrt(ab));
    S b = static_cast<S>(std::sqrt(1.0 - ab));
    TensorT<S> out(x0.shape);
    for (size_t i = 0; i < out.numel(); i++) out[i] = a * x0[i] + b * eps[i];
    return out;
}

// x0_hat = (x_t - sqrt(1 - abar_t) eps_hat) / sqrt(abar_t). No clamp unless
// a finite [lo, hi] range is supplied.
template <typename S>
TensorT<S> predict_x0(const TensorT<S>& x_t, const TensorT<S>& eps_hat, int t,
                      const NoiseSchedule& schedule, double clamp_lo = 1.0, double clamp_hi = 0.0) {
    check(t >= 1 && t <= schedule.T, "predict_x0: t out of range");
    check(x_t.same_shape(eps_hat), "predict_x0: shape mismatch");
    double ab = schedule.alpha_bar(t);
    S inv_a = static_cast<S>(1.0 / std::sqrt(ab));
    S b = static_cast<S>(std::sqrt(1.0 - ab));
    TensorT<S> out(x_t.shape);
    bool do_clamp = clamp_lo <= clamp_hi;
    for (size_t i = 0; i < out.numel(); i++) {
        S v = (x_t[i] - b * eps_hat[i]) * inv_a;
        if (do_clamp) v = std::clamp(v, static_cast<S>(clamp_lo), static_cast<S>(clamp_hi));
        out[i] = v;
    }
    return out;
}

// One DDIM update from t to t_prev (t_prev < t, t_prev = 0 means final).
// eta = 0 is deterministic; eta = 1 gives the ancestral DDPM variance.
template <typename S>
TensorT<S> ddim_step(const TensorT<S>& x_t, const TensorT<S>& eps_hat, int t, int t_prev,
                     double eta, const NoiseSchedule& schedule, Rng& rng) {
    check(t >= 1 && t <= schedule.T, "ddim_step: t out of range");
    check(t_prev >= 0 && t_prev < t, "ddim_step: need 0 <= t_prev < t");
    check(eta >= 0.0 && eta <= 1.0, "ddim_step: eta must be in [0, 1]");
    check(x_t.same_shape(eps_hat), "ddim_step: shape mismatch");

    double ab_t = schedule.alpha_bar(t);
    double ab_p = schedule.alpha_bar(t_prev);
    double sigma = 0.0;
    if (eta > 0.0)
        sigma = eta * std::sqrt((1.0 - ab_p) / (1.0 - ab_t)) * std::sqrt(1.0 - ab_t / ab_p);
    double dir_coeff_sq = 1.0 - ab_p - sigma * sigma;
    S dir_coeff = static_cast<S>(std::sqrt(std::max(0.0, dir_coeff_sq)));
    S sqrt_ab_p = static_cast<S>(std::sqrt(ab_p));
    S inv_sqrt_ab_t = static_cast<S>(1.0 / std::sqrt(ab_t));
    S b_t = static_cast<S>(std::sqrt(1.0 - ab_t));
    S sig = static_cast<S>(sigma);

    TensorT<S> out(x_t.shape);
    for (size_t i = 0; i < out.numel(); i++) {
        S x0 = (x_t[i] - b_t * eps_hat[i]) * inv_sqrt_ab_t;
        S v = sqrt_ab_p * x0 + dir_coeff * eps_hat[i];
        if (sigma > 0.0) v += sig * static_cast<S>(rng.normal());
        out[i] = v;
    }
    return out;
}

}  // namespace vton
