#pragma once

#include <string>

namespace proxpoint {

/// 12 significant digits, shortest form ("%.12g"). Every number printed in a
/// report or trace goes through here.
std::string format_number(double value);

}  // namespace proxpoint
