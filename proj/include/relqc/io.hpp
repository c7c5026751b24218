#pragma once

#include <string>

#include "relqc/pair_geometry.hpp"

namespace relqc {

/// Load and validate a pair description document.
PairDescription load_pair(const std::string& path);
void store_pair(const PairDescription& pair, const std::string& path);

}  // namespace relqc
