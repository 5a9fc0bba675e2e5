#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shadowsum/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"shadowsum: level-k modular data, fusion rules, and state sums "
               "for colored links in Sigma x S^1"};
  app.require_subcommand(1);

  shadowsum::RunConfig cfg;
  double tolerance = 0.0;
  bool have_tolerance = false;

  auto add_common = [&](CLI::App* sub, bool need_algebra) {
    auto* a = sub->add_option("-a,--algebra", cfg.algebra, "algebra spec, e.g. A1, B2, G2");
    auto* k = sub->add_option("-k,--level", cfg.level, "level (positive integer)");
    if (need_algebra) {
      a->required();
      k->required();
    }
    sub->add_option("-f,--format", cfg.output_format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--tolerance", tolerance, "override the pass/fail tolerance")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { have_tolerance = true; });
    sub->add_option("--weyl-cap", cfg.weyl_cap, "Weyl group order cap")
        ->check(CLI::PositiveNumber);
  };

  auto* modular = app.add_subcommand("modular", "emit alcove, S/T/C matrices, dimensions");
  add_common(modular, true);
  auto* fusion = app.add_subcommand("fusion", "emit Verlinde and Racah fusion tables");
  add_common(fusion, true);

  auto* shadow = app.add_subcommand("shadow", "evaluate the shadow state sum of a link");
  auto* cssum = app.add_subcommand("cs-sum", "evaluate the torus-gauge state sum of a link");
  auto* wlo = app.add_subcommand("wlo", "evaluate the Wilson loop observable of a link");
  for (CLI::App* sub : {shadow, cssum, wlo}) {
    sub->add_option("input", cfg.input_path, "link document (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    add_common(sub, false);
  }

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (have_tolerance) cfg.tolerance = tolerance;

  const shadowsum::RunResult result = shadowsum::run(cfg);
  std::cout << shadowsum::render(result, cfg);
  return result.exit_code;
}
