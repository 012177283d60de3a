#pragma once

#include <string>
#include <string_view>

#include "qconn/scalar.hpp"

namespace qconn {

// Parses "[-]d[/d]" rationals and the Gaussian forms "<r>i", "<r>+<r>i", "<r>-<r>i".
GaussScalar parse_scalar(std::string_view text);

std::string format_scalar(const GaussScalar& value);

}  // namespace qconn
