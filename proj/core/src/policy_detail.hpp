#pragma once

#include "ikg/posterior.hpp"

// Internals shared between the best-arm policies and the epsilon/feasibility
// variants; not installed.
namespace ikg::detail {

void require_all_pulled(const PosteriorState& state);

int posterior_best(const PosteriorState& state, int measure);

double exp_diff(double a, double b);

double ikg_value_shifted(const PosteriorState& state, int arm, int best,
                         double epsilon, int measure);

}  // namespace ikg::detail
