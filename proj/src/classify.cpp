#include "wwlab/classify.hpp"

#include <stdexcept>

namespace wwlab {

std::string to_string(Region r) {
  switch (r) {
    case Region::Separable: return "SEPARABLE";
    case Region::RE: return "RE";
    case Region::HE: return "HE";
    case Region::GE: return "GE";
    case Region::Undetermined: return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

Region parse_region(std::string_view label) {
  if (label == "SEPARABLE") return Region::Separable;
  if (label == "RE") return Region::RE;
  if (label == "HE") return Region::HE;
  if (label == "GE") return Region::GE;
  if (label == "UNDETERMINED") return Region::Undetermined;
  throw std::invalid_argument("unknown region label: " + std::string(label));
}

Region classify(const Diagnostics& d) {
  if (d.ppt_pass) return Region::Separable;
  if (!d.operator_positive) return Region::Undetermined;
  if (!*d.operator_positive) return Region::RE;
  if (!d.wigner_nonnegative) return Region::Undetermined;
  return *d.wigner_nonnegative ? Region::HE : Region::GE;
}

}  // namespace wwlab
