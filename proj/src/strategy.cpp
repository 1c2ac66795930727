#include "nd/strategy.hpp"

#include <ostream>
#include <random>
#include <set>

namespace nd {

namespace {

void requireCheckedNoForallI(const DerivPtr& d) {
  check(d);
  if (usesRule(d, Rule::ForallI))
    throw StrategyError(StrategyCode::PreconditionForallIntro,
                        "precondition: forall_i present");
}

ReductionTrace postponeLoop(const DerivPtr& d, MaximalMode mode) {
  ReductionTrace trace;
  DerivPtr cur = d;
  for (;;) {
    RaaReport rep = raaReport(cur);
    long tracked = mode == MaximalMode::All ? rep.sizeRaa : rep.sizeRaaPlus;
    if (tracked == 0) break;
    auto pos = maximalRaa(cur, mode);
    if (!pos)
      throw std::logic_error("positive size but no maximal instance");
    Redex redex = findRedex(cur, *pos);
    FreshLabels labels = FreshLabels::above(cur);
    DerivPtr next = reduceAt(cur, redex, labels);
    RaaReport after = raaReport(next);
    trace.steps.push_back(TraceStep{redex.tag, redex.anchor, rep.sizeRaa, after.sizeRaa,
                                    rep.sizeRaaPlus, after.sizeRaaPlus});
    long trackedAfter = mode == MaximalMode::All ? after.sizeRaa : after.sizeRaaPlus;
    if (trackedAfter >= tracked)
      throw std::logic_error("tracked size failed to decrease");
    cur = next;
  }
  trace.result = cur;
  return trace;
}

}  // namespace

ReductionTrace postponeJ(const DerivPtr& d) {
  requireCheckedNoForallI(d);
  return postponeLoop(d, MaximalMode::Discharging);
}

ReductionTrace postponeM(const DerivPtr& d) {
  requireCheckedNoForallI(d);
  if (usesRule(d, Rule::ImpI))
    throw StrategyError(StrategyCode::PreconditionImpIntro,
                        "precondition: imp_i present");
  return postponeLoop(d, MaximalMode::All);
}

void writeTraceLog(std::ostream& os, const ReductionTrace& trace) {
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    os << "step " << (i + 1) << ": case " << caseTagName(s.tag) << " at "
       << pathToString(s.anchor) << "; size_raa " << s.sizeRaaBefore << "->"
       << s.sizeRaaAfter << "; size_raa+ " << s.sizeRaaPlusBefore << "->"
       << s.sizeRaaPlusAfter << "\n";
  }
}

ExploreResult explore(const DerivPtr& d, ExploreStrategy strategy, std::uint64_t seed,
                      long fuel) {
  requireCheckedNoForallI(d);
  std::mt19937_64 rng(seed);
  DerivPtr cur = d;
  ExploreResult res;
  for (long step = 0; step < fuel; ++step) {
    RaaReport rep = raaReport(cur);
    if (rep.sizeRaaPlus == 0) {
      res.terminated = true;
      res.steps = step;
      res.finalSizeRaa = rep.sizeRaa;
      res.finalSizeRaaPlus = 0;
      return res;
    }
    // every non-root raa yields a redex; distinct redexes keyed by anchor
    std::vector<Redex> redexes;
    std::set<Path> seen;
    for (const auto& inst : rep.instances) {
      if (inst.distance == 0) continue;
      Redex r = findRedex(cur, inst.position);
      if (seen.insert(r.anchor).second) redexes.push_back(std::move(r));
    }
    if (redexes.empty())
      throw std::logic_error("positive size but no redex");
    const Redex* chosen = nullptr;
    switch (strategy) {
      case ExploreStrategy::Maximal: {
        auto pos = maximalRaa(cur, MaximalMode::Discharging);
        Redex r = findRedex(cur, *pos);
        for (const auto& c : redexes)
          if (c.anchor == r.anchor) chosen = &c;
        break;
      }
      case ExploreStrategy::Random: {
        std::uniform_int_distribution<size_t> pick(0, redexes.size() - 1);
        chosen = &redexes[pick(rng)];
        break;
      }
      case ExploreStrategy::Innermost: {
        for (const auto& c : redexes)
          if (!chosen || c.anchor.size() > chosen->anchor.size()) chosen = &c;
        break;
      }
    }
    FreshLabels labels = FreshLabels::above(cur);
    cur = reduceAt(cur, *chosen, labels);
  }
  RaaReport rep = raaReport(cur);
  res.terminated = rep.sizeRaaPlus == 0;
  res.steps = fuel;
  res.finalSizeRaa = rep.sizeRaa;
  res.finalSizeRaaPlus = rep.sizeRaaPlus;
  return res;
}

}  // namespace nd
