#include "esw/errors.hpp"

namespace esw {

DryCell::DryCell(std::size_t cell, double depth)
    : Error("dry cell " + std::to_string(cell) + " (h = " + std::to_string(depth) + ")"),
      cell_(cell),
      depth_(depth) {}

ConfigError::ConfigError(std::string key, const std::string& what)
    : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

}  // namespace esw
