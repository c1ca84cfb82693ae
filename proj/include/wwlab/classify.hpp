#pragma once

// Nonseparability taxonomy: separable, representational (RE), hybrid (HE)
// and genuine (GE) entanglement.

#include <optional>
#include <string>
#include <string_view>

namespace wwlab {

struct Diagnostics {
  bool rs_pass = false;
  bool ppt_pass = false;
  std::optional<bool> operator_positive;
  std::optional<bool> wigner_nonnegative;
};

enum class Region { Separable, RE, HE, GE, Undetermined };

/// SEPARABLE, RE, HE, GE or UNDETERMINED.
std::string to_string(Region r);

/// Inverse of to_string; throws std::invalid_argument on unknown labels.
Region parse_region(std::string_view label);

/// A PPT pass is reported as SEPARABLE, which is only a tested-level verdict
/// since PPT is necessary but not sufficient in general. rs_pass is carried as
/// metadata and never changes the branch.
Region classify(const Diagnostics& d);

/// Caveat attached to outputs labeled SEPARABLE.
inline constexpr std::string_view kSeparableCaveat =
    "PPT passed at the tested level; PPT is necessary but not sufficient for "
    "separability in general";

}  // namespace wwlab
