// Copyright 2026 The softras Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "softras/adam.hpp"

#include <cmath>
#include <string>

#include "softras/error.hpp"

namespace softras {

void validate(const AdamParams& p) {
  if (!(p.alpha > 0.0) || !(p.beta1 > 0.0 && p.beta1 < 1.0) ||
      !(p.beta2 > 0.0 && p.beta2 < 1.0) || !(p.eps > 0.0)) {
    throw ValidationError("Adam requires alpha > 0, 0 < beta1, beta2 < 1 and eps > 0");
  }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamParams& config) {
  if (grads.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw ValidationError("adam_step: parameter, gradient and state sizes differ");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) {
      throw NumericError("non-finite gradient at optimizer step " + std::to_string(state.t + 1));
    }
  }
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double bias1 = 1.0 - std::pow(config.beta1, t);
  const double bias2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * g;
    state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * g * g;
    const double m_hat = state.m[i] / bias1;
    const double v_hat = state.v[i] / bias2;
    params[i] -= config.alpha * m_hat / (std::sqrt(v_hat) + config.eps);
  }
}

}  // namespace softras
