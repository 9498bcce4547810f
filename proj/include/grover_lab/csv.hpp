#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace grover_lab::csv {

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string number(double value);

std::string number(std::size_t value);

/// Writes the fields joined by ',' and terminated by '\n'.
void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace grover_lab::csv
