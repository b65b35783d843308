// mfc: command-line front end for workspaces and the verify suites.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mfc/functors.hpp"
#include "mfc/morphisms.hpp"
#include "mfc/suites.hpp"
#include "mfc/textio.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<bool> strict_from_env() {
  const char* v = std::getenv("MFC_STRICT");
  if (!v || !*v) return std::nullopt;
  const std::string s(v);
  if (s == "0") return false;
  if (s == "1") return true;
  throw UsageError("MFC_STRICT must be 0 or 1");
}

mfc::Workspace load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return mfc::parse_workspace(ss.str(), strict_from_env());
  } catch (const mfc::ParseError& e) {
    throw mfc::Error(path + ":" + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic engine for thick morphisms of supermanifolds"};
  app.require_subcommand(1);

  std::string ws_path, morphism, function, outer, inner, suite;
  int order = -1;
  bool tangent = false, antitangent = false;
  mfc::SuiteOptions opts;

  auto* check = app.add_subcommand("check", "Validate a workspace and run relation checks");
  check->add_option("workspace", ws_path, "Workspace file")->required();

  auto* pull = app.add_subcommand("pullback", "Nonlinear pullback of a function");
  pull->add_option("workspace", ws_path, "Workspace file")->required();
  pull->add_option("--morphism", morphism)->required();
  pull->add_option("--function", function)->required();
  pull->add_option("--order", order, "eps order (default: workspace eps_order)");

  auto* comp = app.add_subcommand("compose", "Compose two morphisms (outer after inner)");
  comp->add_option("workspace", ws_path, "Workspace file")->required();
  comp->add_option("--outer", outer)->required();
  comp->add_option("--inner", inner)->required();
  comp->add_option("--order", order, "Truncation order (default: workspace order)");

  auto* lft = app.add_subcommand("lift", "Tangent or antitangent lift");
  lft->add_option("workspace", ws_path, "Workspace file")->required();
  lft->add_option("--morphism", morphism)->required();
  auto* t_flag = lft->add_flag("--tangent", tangent);
  auto* a_flag = lft->add_flag("--antitangent", antitangent);
  t_flag->excludes(a_flag);

  auto* ver = app.add_subcommand("verify", "Run a seeded property suite");
  ver->add_option("--suite", suite)->required()->check(CLI::IsMember(mfc::suite_names()));
  ver->add_option("--seed", opts.seed);
  ver->add_option("--trials", opts.trials)->check(CLI::PositiveNumber);
  ver->add_option("--order", opts.order)->check(CLI::Range(1, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) {
      const mfc::Workspace ws = load(ws_path);
      mfc::Report rep;
      for (const auto& [name, phi] : ws.morphisms) rep.append(mfc::relation_check(phi), name);
      rep.expect("workspace", true);
      std::cout << rep.format();
      return rep.passed() ? 0 : kExitFailed;
    }
    if (*pull) {
      const mfc::Workspace ws = load(ws_path);
      const int n = order >= 0 ? order : ws.settings.eps_order;
      std::cout << mfc::serialize(mfc::pullback(ws.morphism(morphism), ws.function(function).value, n))
                << "\n";
      return 0;
    }
    if (*comp) {
      const mfc::Workspace ws = load(ws_path);
      const int n = order >= 0 ? order : ws.settings.order;
      std::cout << mfc::serialize(mfc::compose(ws.morphism(outer), ws.morphism(inner), n).S) << "\n";
      return 0;
    }
    if (*lft) {
      if (!tangent && !antitangent) throw UsageError("lift needs --tangent or --antitangent");
      const mfc::Workspace ws = load(ws_path);
      const auto kind = tangent ? mfc::LiftKind::tangent : mfc::LiftKind::antitangent;
      std::cout << mfc::serialize(mfc::lift(ws.morphism(morphism), kind).S) << "\n";
      return 0;
    }
    if (*ver) {
      const mfc::Report rep = mfc::run_suite(suite, opts);
      std::cout << rep.format();
      return rep.passed() ? 0 : kExitFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "mfc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mfc::Error& e) {
    std::cerr << "mfc: error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
