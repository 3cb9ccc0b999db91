#pragma once

#include <string>

namespace oat {

/// Fixed-point rendering with round-half-to-even ties, e.g.
/// format_fixed(0.0625, 3) == "0.062".
std::string format_fixed(double value, int digits);

/// Percentage with one decimal, e.g. "88.9%".
std::string format_percent(double fraction);

} // namespace oat
