#pragma once

#include <optional>

#include "palanatomy/factor.hpp"

namespace palanatomy::detail {

// Degree profile without heap traffic; nullopt when f is too large for the
// fixed-capacity path.
std::optional<DegreeProfile> small_profile(const MonicPoly& f);

}  // namespace palanatomy::detail
