#ifndef ND_MEASURE_HPP
#define ND_MEASURE_HPP

#include <optional>

#include "nd/derivation.hpp"

namespace nd {

// Distances and sizes of raa instances. The distance of a rule instance is
// the length of the thread from its conclusion to the conclusion of the
// derivation; size_raa sums distances over all raa instances, size_raa_plus
// over the discharging ones only.
struct RaaInstance {
  Path position;
  long distance = 0;
  bool discharging = false;
};

struct RaaReport {
  std::vector<RaaInstance> instances;
  long sizeRaa = 0;
  long sizeRaaPlus = 0;
};

RaaReport raaReport(const DerivPtr& d);

struct StandardForm {
  bool jStandard = false;
  bool mStandard = false;
};

// j-standard: at most one discharging raa, only as the last rule, rest in NJ.
// m-standard: at most one raa of any kind, only as the last rule, rest in NM.
StandardForm standardForm(const DerivPtr& d);

enum class MaximalMode { All, Discharging };

// Position of a RAA-maximal (mode All) or RAA+-maximal (mode Discharging)
// instance; ties broken leftmost in premise order. Empty when there is no
// relevant instance.
std::optional<Path> maximalRaa(const DerivPtr& d, MaximalMode mode);

}  // namespace nd

#endif
