#include "lexnorm/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lexnorm {

namespace {

std::string format_point(std::span<const double> x) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0) out << ", ";
        out << x[i];
    }
    out << ')';
    return out.str();
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadConfig& config) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw Error(Error::Kind::config, "optimizer needs at least one dimension");
    if (!config.lower.empty() && config.lower.size() != dim)
        throw Error(Error::Kind::config, "lower bound dimension mismatch");
    if (!config.upper.empty() && config.upper.size() != dim)
        throw Error(Error::Kind::config, "upper bound dimension mismatch");

    auto clamp = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i < dim; ++i) {
            if (!config.lower.empty()) x[i] = std::max(x[i], config.lower[i]);
            if (!config.upper.empty()) x[i] = std::min(x[i], config.upper[i]);
        }
    };

    NelderMeadResult result;
    auto evaluate = [&](std::vector<double>& x) {
        clamp(x);
        const double value = f(x);
        ++result.evaluations;
        if (!std::isfinite(value))
            throw Error(Error::Kind::optimization,
                        "objective returned a non-finite value at " + format_point(x));
        return value;
    };

    struct Vertex {
        std::vector<double> x;
        double value;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(dim + 1);

    clamp(x0);
    simplex.push_back({x0, evaluate(x0)});
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> x = x0;
        x[i] += config.initial_step;
        if (!config.upper.empty() && x[i] > config.upper[i]) x[i] = x0[i] - config.initial_step;
        simplex.push_back({x, evaluate(x)});
    }

    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
    };
    order();
    result.best_trajectory.push_back(simplex.front().value);

    while (result.evaluations < config.max_evals) {
        double diameter = 0;
        for (std::size_t v = 1; v <= dim; ++v) {
            for (std::size_t i = 0; i < dim; ++i)
                diameter = std::max(diameter, std::abs(simplex[v].x[i] - simplex[0].x[i]));
        }
        if (diameter < config.diameter_tol) break;

        std::vector<double> centroid(dim, 0.0);  // of all but the worst vertex
        for (std::size_t v = 0; v < dim; ++v) {
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);
        const Vertex& worst = simplex[dim];

        auto along = [&](double coef) {
            std::vector<double> x(dim);
            for (std::size_t i = 0; i < dim; ++i)
                x[i] = centroid[i] + coef * (centroid[i] - worst.x[i]);
            return x;
        };

        std::vector<double> reflected = along(config.reflection);
        const double fr = evaluate(reflected);

        if (fr > simplex[0].value) {
            std::vector<double> expanded = along(config.expansion);
            const double fe = evaluate(expanded);
            simplex[dim] = fe > fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
        } else if (fr > simplex[dim - 1].value) {
            simplex[dim] = {reflected, fr};
        } else {
            const bool outside = fr > worst.value;
            std::vector<double> contracted =
                outside ? along(config.contraction) : along(-config.contraction);
            const double fc = evaluate(contracted);
            if (fc > (outside ? fr : worst.value)) {
                simplex[dim] = {contracted, fc};
            } else {
                for (std::size_t v = 1; v <= dim; ++v) {
                    for (std::size_t i = 0; i < dim; ++i) {
                        simplex[v].x[i] =
                            simplex[0].x[i] + config.shrink * (simplex[v].x[i] - simplex[0].x[i]);
                    }
                    simplex[v].value = evaluate(simplex[v].x);
                    if (result.evaluations >= config.max_evals) break;
                }
            }
        }
        order();
        result.best_trajectory.push_back(simplex.front().value);
    }

    result.x = simplex.front().x;
    result.value = simplex.front().value;
    return result;
}

}  // namespace lexnorm
