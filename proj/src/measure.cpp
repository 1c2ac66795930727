#include "nd/measure.hpp"

#include "nd/check.hpp"

namespace nd {

namespace {

void reportRec(const DerivPtr& d, Path& p, long depth, RaaReport& out) {
  if (d->isAssume()) return;
  if (d->isRaa()) {
    bool discharging = d->label() != 0 && countLabeled(d->premise(0), d->label()) > 0;
    out.instances.push_back(RaaInstance{p, depth, discharging});
    out.sizeRaa += depth;
    if (discharging) out.sizeRaaPlus += depth;
  }
  for (size_t i = 0; i < d->premises().size(); ++i) {
    p.push_back(static_cast<int>(i));
    reportRec(d->premises()[i], p, depth + 1, out);
    p.pop_back();
  }
}

}  // namespace

RaaReport raaReport(const DerivPtr& d) {
  RaaReport out;
  Path p;
  reportRec(d, p, 0, out);
  return out;
}

StandardForm standardForm(const DerivPtr& d) {
  RaaReport r = raaReport(d);
  StandardForm s;
  s.jStandard = r.sizeRaaPlus == 0;
  s.mStandard = r.sizeRaa == 0;
  // size zero means every relevant instance sits at the root; double-check
  // structurally that the remainder lies in NJ resp. NM.
  if (s.mStandard) {
    DerivPtr rest = d->isRaa() ? d->premise(0) : d;
    s.mStandard = inSystem(rest, SystemId::NM());
  }
  if (s.jStandard) {
    bool rootDischarging =
        d->isRaa() && d->label() != 0 && countLabeled(d->premise(0), d->label()) > 0;
    DerivPtr rest = rootDischarging ? d->premise(0) : d;
    s.jStandard = inSystem(rest, SystemId::NJ());
  }
  return s;
}

std::optional<Path> maximalRaa(const DerivPtr& d, MaximalMode mode) {
  RaaReport r = raaReport(d);
  // instances were collected in preorder with premises left to right, so the
  // first hit at the maximal distance is the leftmost one
  const RaaInstance* best = nullptr;
  for (const auto& inst : r.instances) {
    if (mode == MaximalMode::Discharging && !inst.discharging) continue;
    if (!best || inst.distance > best->distance) best = &inst;
  }
  if (!best) return std::nullopt;
  return best->position;
}

}  // namespace nd
