#pragma once

#include <functional>
#include <vector>

#include "bsq/common.hpp"

namespace bsq {

// Adaptive Gauss-Kronrod over [a, b], with geometric refinement toward each
// point of `focus` (integrable endpoint or near-endpoint singularities).
cd integrate(const std::function<cd(double)>& fn, double a, double b,
             const std::vector<double>& focus = {}, double tol = 1e-14);

}  // namespace bsq
