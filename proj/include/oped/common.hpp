#pragma once

#include <stdexcept>
#include <string>

namespace oped {

/// Tolerance for arguments that land just outside [-1, 1] from rounding.
inline constexpr double kUnitIntervalSlack = 1e-12;

/// A numerical precondition (not a usage error) was violated, e.g. the
/// completion cut-off bound tau < 1 - r/n.
class precondition_error : public std::runtime_error {
  public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oped
