#pragma once

#include <string>

#include "entmed/witness.hpp"

namespace entmed::cli {

// static line chart of every non-time series against the time column
void write_svg_plot(const CorrelationTrace& tr, const std::string& title, const std::string& path);

}  // namespace entmed::cli
