// Command-line workbench: checking, raa postponement, Glivenko translations,
// propositional oracles, rendering, and property stress runs.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nd/glivenko.hpp"
#include "nd/oracle.hpp"
#include "nd/syntax.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailure = 1;
constexpr int kParseFailure = 2;
constexpr int kInternalError = 3;

std::string readInput(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeOutput(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string showJudgment(const nd::Judgment& j) {
  std::ostringstream os;
  const auto& items = j.assumptions.items();
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) os << ", ";
    os << nd::renderFormula(items[i]);
  }
  if (!items.empty()) os << " ";
  os << "|- " << nd::renderFormula(j.conclusion);
  return os.str();
}

nd::TranslationMode modeFromString(const std::string& m) {
  if (m == "m") return nd::TranslationMode::Minimal;
  if (m == "j") return nd::TranslationMode::Intuitionistic;
  if (m == "mstar") return nd::TranslationMode::MinimalStar;
  throw CLI::ValidationError("--mode", "expected m, j or mstar");
}

struct StressSpec {
  int depth = 4;
  std::vector<std::string> atoms = {"P", "Q"};
  double density = 0.5;
  bool minimalMode = false;
};

StressSpec parseStressSpec(const std::string& spec) {
  StressSpec s;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--profile", item);
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "depth")
      s.depth = std::stoi(val);
    else if (key == "density")
      s.density = std::stod(val);
    else if (key == "atoms") {
      s.atoms.clear();
      for (char c : val) s.atoms.push_back(std::string(1, c));
    } else if (key == "mode")
      s.minimalMode = val == "m";
    else
      throw CLI::ValidationError("--profile", "unknown key " + key);
  }
  return s;
}

int runStress(std::uint64_t seed, int count, const StressSpec& spec) {
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    nd::GeneratorProfile prof =
        nd::GeneratorProfile::nkNoForallI(seed + static_cast<std::uint64_t>(i),
                                          spec.depth, spec.density);
    prof.atoms = spec.atoms;
    if (spec.minimalMode)
      prof.allowed.erase(
          std::remove(prof.allowed.begin(), prof.allowed.end(), nd::Rule::ImpI),
          prof.allowed.end());
    try {
      nd::DerivPtr d = nd::genDerivation(prof);
      nd::Judgment before = nd::check(d);
      nd::ReductionTrace trace =
          spec.minimalMode ? nd::postponeM(d) : nd::postponeJ(d);
      nd::Judgment after = nd::check(trace.result);
      nd::StandardForm sf = nd::standardForm(trace.result);
      bool ok = (spec.minimalMode ? sf.mStandard : sf.jStandard) &&
                nd::alphaEq(before.conclusion, after.conclusion) &&
                after.assumptions.subsetOf(before.assumptions);
      long prev = -1;
      for (const auto& st : trace.steps) {
        long now = spec.minimalMode ? st.sizeRaaAfter : st.sizeRaaPlusAfter;
        long was = spec.minimalMode ? st.sizeRaaBefore : st.sizeRaaPlusBefore;
        if (now >= was || (prev >= 0 && was != prev)) ok = false;
        prev = now;
      }
      if (!ok) {
        failures++;
        std::cerr << "stress case " << i << " failed invariants\n";
      }
    } catch (const std::exception& e) {
      failures++;
      std::cerr << "stress case " << i << ": " << e.what() << "\n";
    }
  }
  std::cout << (failures == 0 ? "PASS" : "FAIL") << ": " << (count - failures) << "/"
            << count << " cases\n";
  return failures == 0 ? kOk : kInternalError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order natural deduction workbench"};
  app.require_subcommand(1);

  std::string file, outPath, tracePath, modeStr = "m", formatStr = "text";
  std::string logicStr = "c", strategyStr = "maximal", profileStr, originalStr;
  std::vector<std::string> gammaStrs;
  std::uint64_t seed = 0;
  long fuel = 1000;
  int count = 100;

  auto* cmdCheck = app.add_subcommand("check", "check a derivation and print its judgment");
  cmdCheck->add_option("file", file)->required();

  auto* cmdSize = app.add_subcommand("size", "print raa distances and sizes");
  cmdSize->add_option("file", file)->required();

  auto* cmdPostpone = app.add_subcommand("postpone", "drive raa to the last rule");
  cmdPostpone->add_option("--mode", modeStr)->check(CLI::IsMember({"j", "m"}));
  cmdPostpone->add_option("--trace", tracePath);
  cmdPostpone->add_option("file", file)->required();
  cmdPostpone->add_option("-o,--output", outPath);

  auto* cmdTranslate = app.add_subcommand("translate", "translate a formula");
  cmdTranslate->add_option("--mode", modeStr)->check(CLI::IsMember({"m", "j", "mstar"}));
  cmdTranslate->add_option("file", file)->required();

  auto* cmdGlivenko = app.add_subcommand("glivenko", "double-negation embedding");
  cmdGlivenko->add_option("--mode", modeStr)->check(CLI::IsMember({"m", "j"}));
  cmdGlivenko->add_option("file", file)->required();
  cmdGlivenko->add_option("-o,--output", outPath);

  auto* cmdInverse = app.add_subcommand("inverse", "back from the embedding to NK");
  cmdInverse->add_option("--mode", modeStr)->check(CLI::IsMember({"m", "j"}));
  cmdInverse->add_option("--original", originalStr)->required();
  cmdInverse->add_option("--gamma", gammaStrs);
  cmdInverse->add_option("file", file)->required();
  cmdInverse->add_option("-o,--output", outPath);

  auto* cmdProve = app.add_subcommand("prove", "propositional oracle verdict");
  cmdProve->add_option("--logic", logicStr)->check(CLI::IsMember({"c", "i", "m"}));
  cmdProve->add_option("file", file)->required();

  auto* cmdRender = app.add_subcommand("render", "print a derivation");
  cmdRender->add_option("--format", formatStr)
      ->check(CLI::IsMember({"text", "ascii", "latex"}));
  cmdRender->add_option("file", file)->required();

  auto* cmdStress = app.add_subcommand("stress", "generate-and-postpone property run");
  cmdStress->add_option("--seed", seed);
  cmdStress->add_option("--count", count);
  cmdStress->add_option("--profile", profileStr);

  auto* cmdExplore = app.add_subcommand("explore", "fire redexes under a strategy");
  cmdExplore->add_option("--strategy", strategyStr)
      ->check(CLI::IsMember({"maximal", "random", "innermost"}));
  cmdExplore->add_option("--fuel", fuel);
  cmdExplore->add_option("--seed", seed);
  cmdExplore->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmdCheck->parsed()) {
      nd::Judgment j = nd::check(nd::parseDerivation(readInput(file)));
      std::cout << showJudgment(j) << "\n";
      return kOk;
    }
    if (cmdSize->parsed()) {
      nd::DerivPtr d = nd::parseDerivation(readInput(file));
      nd::check(d);
      nd::RaaReport r = nd::raaReport(d);
      for (const auto& inst : r.instances)
        std::cout << (inst.discharging ? "raa" : "efq") << " at "
                  << nd::pathToString(inst.position) << ": distance " << inst.distance
                  << "\n";
      std::cout << "size_raa = " << r.sizeRaa << "\n";
      std::cout << "size_raa+ = " << r.sizeRaaPlus << "\n";
      return kOk;
    }
    if (cmdPostpone->parsed()) {
      nd::DerivPtr d = nd::parseDerivation(readInput(file));
      nd::ReductionTrace trace = modeStr == "m" ? nd::postponeM(d) : nd::postponeJ(d);
      if (!tracePath.empty()) {
        std::ostringstream os;
        nd::writeTraceLog(os, trace);
        writeOutput(tracePath, os.str());
      }
      std::string text = nd::render(trace.result, nd::RenderFormat::Text);
      if (!outPath.empty())
        writeOutput(outPath, text + "\n");
      else
        std::cout << text << "\n";
      std::cerr << trace.steps.size() << " steps\n";
      return kOk;
    }
    if (cmdTranslate->parsed()) {
      nd::FormulaPtr f = nd::parseFormula(readInput(file));
      std::cout << nd::renderFormula(nd::translate(f, modeFromString(modeStr))) << "\n";
      return kOk;
    }
    if (cmdGlivenko->parsed()) {
      nd::DerivPtr d = nd::parseDerivation(readInput(file));
      nd::FreshLabels labels = nd::FreshLabels::above(d);
      nd::GlivenkoResult res = nd::glivenko(d, modeFromString(modeStr), labels);
      std::string dneg = nd::render(res.doubleNegation, nd::RenderFormat::Text);
      std::string refut = nd::render(res.refutation, nd::RenderFormat::Text);
      if (!outPath.empty()) {
        writeOutput(outPath + ".dneg.nd", dneg + "\n");
        writeOutput(outPath + ".refut.nd", refut + "\n");
      } else {
        std::cout << "; double negation\n" << dneg << "\n; refutation\n" << refut << "\n";
      }
      return kOk;
    }
    if (cmdInverse->parsed()) {
      nd::DerivPtr d = nd::parseDerivation(readInput(file));
      nd::FormulaPtr original = nd::parseFormula(originalStr);
      std::vector<nd::FormulaPtr> gamma;
      for (const auto& g : gammaStrs) gamma.push_back(nd::parseFormula(g));
      if (gamma.empty())
        for (const auto& a : nd::check(d).assumptions.items()) gamma.push_back(a);
      nd::FreshLabels labels = nd::FreshLabels::above(d);
      nd::DerivPtr out =
          nd::inverseGlivenko(d, original, gamma, modeFromString(modeStr), labels);
      std::string text = nd::render(out, nd::RenderFormat::Text);
      if (!outPath.empty())
        writeOutput(outPath, text + "\n");
      else
        std::cout << text << "\n";
      return kOk;
    }
    if (cmdProve->parsed()) {
      nd::FormulaPtr f = nd::parseFormula(readInput(file));
      bool verdict = logicStr == "c"   ? nd::classicalValid(f)
                     : logicStr == "i" ? nd::intuitionisticProvable(f)
                                       : nd::minimalProvable(f);
      std::cout << (verdict ? "provable" : "not provable") << "\n";
      return kOk;
    }
    if (cmdRender->parsed()) {
      nd::DerivPtr d = nd::parseDerivation(readInput(file));
      nd::RenderFormat fmt = formatStr == "text"  ? nd::RenderFormat::Text
                             : formatStr == "ascii" ? nd::RenderFormat::AsciiTree
                                                    : nd::RenderFormat::Latex;
      if (fmt != nd::RenderFormat::Text) nd::check(d);
      std::cout << nd::render(d, fmt);
      if (fmt == nd::RenderFormat::Text) std::cout << "\n";
      return kOk;
    }
    if (cmdStress->parsed()) {
      return runStress(seed, count, parseStressSpec(profileStr));
    }
    if (cmdExplore->parsed()) {
      nd::DerivPtr d = nd::parseDerivation(readInput(file));
      nd::ExploreStrategy st = strategyStr == "maximal" ? nd::ExploreStrategy::Maximal
                               : strategyStr == "random"
                                   ? nd::ExploreStrategy::Random
                                   : nd::ExploreStrategy::Innermost;
      nd::ExploreResult res = nd::explore(d, st, seed, fuel);
      if (res.terminated)
        std::cout << "terminated after " << res.steps << " steps\n";
      else
        std::cout << "fuel exhausted; size_raa = " << res.finalSizeRaa
                  << ", size_raa+ = " << res.finalSizeRaaPlus << "\n";
      return kOk;
    }
  } catch (const nd::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const nd::CheckError& e) {
    std::cerr << "check error: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const nd::StrategyError& e) {
    std::cerr << "precondition: "
              << (e.code() == nd::StrategyCode::PreconditionImpIntro ? "imp_i present"
                                                                     : "forall_i present")
              << "\n";
    return kCheckFailure;
  } catch (const nd::RewriteError& e) {
    std::cerr << "rewrite error: " << e.what() << "\n";
    return e.code() == nd::RewriteCode::InternalShapeError ? kInternalError
                                                           : kCheckFailure;
  } catch (const nd::GlivenkoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const nd::OracleError& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
