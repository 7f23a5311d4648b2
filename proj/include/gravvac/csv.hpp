#pragma once

#include <string>
#include <vector>

namespace gravvac {

/// 17 significant digits, '.' decimal point, locale independent.
std::string format_double(double v);

std::string join_csv(const std::vector<std::string>& cells);

} // namespace gravvac
