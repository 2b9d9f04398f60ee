// phodge: JSON front end for the periodic Hodge decomposition library.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "phodge/commands.hpp"
#include "phodge/green.hpp"

namespace {

void add_common(CLI::App* app, phodge::CommandOptions& o) {
  app->add_option("--grid", o.grid, "points per axis (0: command default)")->check(CLI::NonNegativeNumber);
  app->add_option("--seed", o.seed, "seed for every random draw");
  app->add_option("--tol", o.tol, "Green solver tolerance (0: default)")->check(CLI::NonNegativeNumber);
  app->add_option("--metric", o.metric, "flat | embedded-torus");
  app->add_option("--R", o.R, "major radius of the embedded torus");
  app->add_option("--r", o.r, "minor radius of the embedded torus");
  app->add_option("--mu0", o.mu0, "magnetic constant");
  app->add_option("--c", o.c, "speed of light");
  app->add_option("--samples", o.samples, "random draws per battery (0: default)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-Riemannian Hodge decomposition on periodic tori"};
  app.require_subcommand(1);
  std::string json_out;
  bool timings = false;
  app.add_option("--json-out", json_out, "write the report here instead of stdout");
  app.add_flag("--timings", timings, "add per-phase wall times to the report");

  phodge::CommandOptions opts;

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an invariant battery");
  verify->add_option("suite", suite, "core | cohomology | decompose | em")->required();
  add_common(verify, opts);

  std::string mode = "flat";
  auto* torus2 = app.add_subcommand("torus2", "cohomology matrices of the 2-torus");
  torus2->add_option("--mode", mode, "flat | embedded");
  add_common(torus2, opts);

  int m = 0, s = 0;
  std::string group, params;
  auto* taxonomy = app.add_subcommand("taxonomy", "beta = 2 solution families");
  taxonomy->add_option("--m", m, "middle dimension")->required();
  taxonomy->add_option("--s", s, "number of negative signature entries")->required();
  taxonomy->add_option("--group", group, "S2.1.1 .. S2.2.2 (default: all admissible)");
  taxonomy->add_option("--params", params, "free entries, e.g. E12=1,l11=1/2,sign=-1");

  std::string preset;
  auto* decompose = app.add_subcommand("decompose", "Hodge decomposition of a preset form");
  decompose->add_option("--preset", preset, "harmonic-t2 | mixed-t2 | random-t2 | embedded-t2 | middle-t4")
      ->required();
  add_common(decompose, opts);

  std::string em_preset, charges = "1@01";
  auto* em = app.add_subcommand("em", "electromagnetism on the Minkowski 4-torus");
  em->add_option("--preset", em_preset, "topological | exact | mixed")->required();
  em->add_option("--charges", charges, "magnetic charges, e.g. 1@01,2@23");
  add_common(em, opts);

  for (auto* sub : {verify, torus2, taxonomy, decompose, em}) {
    sub->add_option("--json-out", json_out, "write the report here instead of stdout");
    sub->add_flag("--timings", timings, "add per-phase wall times to the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    phodge::Report rep("");
    if (*verify) rep = phodge::cmd_verify(suite, opts);
    else if (*torus2) rep = phodge::cmd_torus2(mode, opts);
    else if (*taxonomy)
      rep = phodge::cmd_taxonomy(m, s, group.empty() ? std::nullopt : std::optional(group), params);
    else if (*decompose) rep = phodge::cmd_decompose(preset, opts);
    else rep = phodge::cmd_em(em_preset, charges, opts);

    const std::string text = rep.dump(timings);
    if (json_out.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
      std::ofstream out(json_out, std::ios::binary);
      if (!out) {
        std::cerr << "phodge: cannot write " << json_out << "\n";
        return 2;
      }
      out << text;
    }
    for (const auto& c : rep.checks())
      if (!c.pass) std::cerr << "FAIL " << c.name << " residual " << c.residual << " > " << c.tolerance << "\n";
    return rep.exit_code();
  } catch (const std::invalid_argument& e) {
    std::cerr << "phodge: " << e.what() << "\n";
    return 2;
  } catch (const phodge::SolveError& e) {
    std::cerr << "phodge: solver failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "phodge: " << e.what() << "\n";
    return 1;
  }
}
