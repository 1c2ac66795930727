#ifndef ND_STRATEGY_HPP
#define ND_STRATEGY_HPP

#include <cstdint>
#include <iosfwd>

#include "nd/measure.hpp"
#include "nd/rewrite.hpp"

namespace nd {

struct TraceStep {
  CaseTag tag;
  Path anchor;
  long sizeRaaBefore = 0, sizeRaaAfter = 0;
  long sizeRaaPlusBefore = 0, sizeRaaPlusAfter = 0;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  DerivPtr result;
};

enum class StrategyCode { PreconditionForallIntro, PreconditionImpIntro };

class StrategyError : public std::runtime_error {
public:
  StrategyError(StrategyCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  StrategyCode code() const { return code_; }

private:
  StrategyCode code_;
};

// Drives reduction at RAA+-maximal discharging instances until the derivation
// is j-standard. Requires a checked derivation without forall_i.
ReductionTrace postponeJ(const DerivPtr& d);

// Drives reduction at RAA-maximal instances until m-standard. Requires a
// checked derivation without forall_i and imp_i.
ReductionTrace postponeM(const DerivPtr& d);

// One line per step: "step k: case <tag> at <path>; size_raa a->b; size_raa+ c->d".
void writeTraceLog(std::ostream& os, const ReductionTrace& trace);

enum class ExploreStrategy { Maximal, Random, Innermost };

struct ExploreResult {
  bool terminated = false;
  long steps = 0;
  long finalSizeRaa = 0;
  long finalSizeRaaPlus = 0;
};

// Conjecture probe: fires legal redexes under the given strategy until the
// derivation is j-standard or the fuel runs out. Reports, never asserts.
ExploreResult explore(const DerivPtr& d, ExploreStrategy strategy, std::uint64_t seed,
                      long fuel);

}  // namespace nd

#endif
