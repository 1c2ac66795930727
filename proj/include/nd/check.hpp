#ifndef ND_CHECK_HPP
#define ND_CHECK_HPP

#include <stdexcept>
#include <string>

#include "nd/derivation.hpp"

namespace nd {

// Conclusion plus the exact set of undischarged assumption formulas, up to
// alpha-equivalence. Claims of the shape "Gamma is preserved" are tested with
// set inclusion, never equality.
struct Judgment {
  FormulaSet assumptions;
  FormulaPtr conclusion;
};

enum class CheckCode {
  SchemaMismatch,
  BadDischarge,
  EigenvariableViolation,
  UnboundLabel,
  AnnotationMismatch,
};

const char* checkCodeName(CheckCode c);

class CheckError : public std::runtime_error {
public:
  CheckError(CheckCode code, Path position, const std::string& what)
      : std::runtime_error(what), code_(code), position_(std::move(position)) {}
  CheckCode code() const { return code_; }
  const Path& position() const { return position_; }

private:
  CheckCode code_;
  Path position_;
};

// Validates every node against its rule schema, discharge shapes, annotations
// and eigenvariable conditions; returns the judgment on success.
Judgment check(const DerivPtr& d);

bool checks(const DerivPtr& d);  // check() without the exception

// Derivation systems: NM (no raa at all), NJ (raa only with an empty
// discharge set, i.e. efq), NK (raa unrestricted), optionally minus a set of
// rules.
struct SystemId {
  enum class Base { NM, NJ, NK };
  Base base = Base::NK;
  std::vector<Rule> removed;

  static SystemId NM() { return {Base::NM, {}}; }
  static SystemId NJ() { return {Base::NJ, {}}; }
  static SystemId NK() { return {Base::NK, {}}; }
  SystemId minus(std::initializer_list<Rule> rules) const {
    SystemId s = *this;
    s.removed.insert(s.removed.end(), rules);
    return s;
  }
};

// Membership of a (checked) derivation in a system.
bool inSystem(const DerivPtr& d, const SystemId& sys);

}  // namespace nd

#endif
