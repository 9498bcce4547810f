#include "grover_lab/csv.hpp"

#include <cstdio>

namespace grover_lab::csv {

std::string number(double value) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string s(buf, static_cast<std::size_t>(len));
  // snprintf follows LC_NUMERIC.
  for (char& c : s) {
    if (c == ',') c = '.';
  }
  return s;
}

std::string number(std::size_t value) { return std::to_string(value); }

void write_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (std::string_view f : fields) {
    if (!first) out << ',';
    out << f;
    first = false;
  }
  out << '\n';
}

}  // namespace grover_lab::csv
