#include "cqed/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

namespace {

void require(bool ok, const std::string& msg)
{
    if (!ok) throw std::invalid_argument("CircuitParams: " + msg);
}

} // namespace

void CircuitParams::validate() const
{
    require(std::isfinite(chi_R) && chi_R >= 0.0, "chi_R must be >= 0");
    require(std::isfinite(chi_L) && chi_L >= 0.0, "chi_L must be >= 0");
    require(std::isfinite(chi_j) && chi_j > 0.0, "chi_j must be > 0");
    require(std::isfinite(chi_g) && chi_g >= 0.0, "chi_g must be >= 0");
    require(std::isfinite(x0) && x0 >= 0.0 && x0 < 1.0, "x0 must lie in [0, 1)");
    require(std::isfinite(omega_j) && omega_j > 0.0, "omega_j must be > 0");
    require(std::isfinite(epsilon) && epsilon >= 0.0, "epsilon must be >= 0");
    if (chi_s_override) {
        require(std::isfinite(*chi_s_override) && *chi_s_override >= 0.0,
                "chi_s override must be >= 0");
    }
}

DerivedParams derive(const CircuitParams& p)
{
    p.validate();
    return {p.gamma(), p.chi_s()};
}

} // namespace cqed
