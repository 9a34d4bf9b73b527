#include "proxpoint/format.hpp"

#include <cstdio>

namespace proxpoint {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value + 0.0);
  return buf;
}

}  // namespace proxpoint
