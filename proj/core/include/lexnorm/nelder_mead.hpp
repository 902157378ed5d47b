#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lexnorm/common.hpp"

namespace lexnorm {

struct NelderMeadConfig {
    double initial_step = 0.25;  // simplex spread around the start point
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double diameter_tol = 1e-9;  // stop when the simplex collapses
    int max_evals = 2000;
    std::vector<double> lower;   // optional box; points are clamped before
    std::vector<double> upper;   // evaluation
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0;
    int evaluations = 0;
    std::vector<double> best_trajectory;  // best value after each accepted step
};

using Objective = std::function<double(std::span<const double>)>;

/// Maximises f by downhill simplex (reflection, expansion, contraction,
/// shrink). Throws Error::Kind::optimization when f returns a non-finite
/// value, naming the offending point.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadConfig& config = {});

}  // namespace lexnorm
