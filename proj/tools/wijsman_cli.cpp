#include <wijsman/claims.hpp>
#include <wijsman/error.hpp>
#include <wijsman/serialize.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kUsageError = 64;

template <class T>
void add_optional(CLI::App* app, const std::string& flag, std::optional<T>& target, const std::string& help) {
  app->add_option_function<T>(flag, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Wijsman hyperspace constructions"};
  app.require_subcommand(1);

  wijsman::ClaimParams params;
  std::string claim;
  std::string out;

  auto* run = app.add_subcommand("run", "Run a claim pipeline and emit a JSON report");
  run->add_option("claim", claim, "Claim id")->required();
  add_optional(run, "--bound", params.bound, "Enumeration bound N");
  add_optional(run, "--pairs", params.pairs, "Number of pairs for the paired space");
  add_optional(run, "--copies", params.copies, "Number of interval copies");
  add_optional(run, "--max-e", params.max_e, "Largest element of E for dyadic claims");
  add_optional(run, "--grid", params.grid, "Rational grid resolution");
  add_optional(run, "--count", params.count, "Number of samples or factors");
  add_optional(run, "--seed", params.seed, "Random seed");
  run->add_option("--out", out, "Write the report here instead of standard output");

  auto* explain = app.add_subcommand("explain", "Describe what a claim verifies");
  explain->add_option("claim", claim, "Claim id")->required();

  auto* list = app.add_subcommand("list", "List claim ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (list->parsed()) {
    for (const auto& info : wijsman::claim_catalog()) std::cout << info.id << '\n';
    return 0;
  }

  if (!wijsman::find_claim(claim)) {
    std::cerr << "error: unknown claim '" << claim << "'; see `wijsman list`\n";
    return kUsageError;
  }

  if (explain->parsed()) {
    std::cout << wijsman::explain_claim(claim);
    return 0;
  }

  wijsman::VerificationReport report;
  try {
    report = wijsman::run_claim(claim, params);
  } catch (const wijsman::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }

  const std::string text = nlohmann::json(report).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << out << '\n';
      return kUsageError;
    }
    file << text;
  }
  std::cerr << claim << ": " << wijsman::to_string(report.outcome) << '\n';
  return wijsman::exit_status(report.outcome);
}
