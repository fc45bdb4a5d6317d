#pragma once

#include <optional>
#include <vector>

#include "ampfsi/complexcore.hpp"

namespace ampfsi::testing {

// subdivide_roots with the inner margin widened when a root sits on |A| = 1
// (A = 1 is a root of several characteristic functions). nullopt if every
// margin fails.
inline std::optional<std::vector<cplx>> roots_outside_unit(const AnalyticFn& f, double outer_radius) {
    for (double margin : {1e-8, 1e-6, 1e-4}) {
        RootSearchOptions opt;
        opt.outer_radius = outer_radius;
        opt.inner_margin = margin;
        try {
            return subdivide_roots(f, opt);
        } catch (const ContourTooClose&) {
        }
    }
    return std::nullopt;
}

}  // namespace ampfsi::testing
