// numerics.hpp — Small shared numeric utilities.

#pragma once

#include <cstddef>
#include <vector>

namespace cqed::num {

// Ordinary least-squares slope of log(y) against log(x) over [first, last]
// indices (inclusive); entries with y <= 0 are skipped.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t first, std::size_t last);

} // namespace cqed::num
