// Command-line front end: one subcommand per experiment kind.

#include <iostream>

#include <CLI11.hpp>

#include "hypoly/harness.hpp"

using hypoly::ExperimentConfig;
using hypoly::ExperimentKind;

namespace {

CLI::App* add_experiment(CLI::App& app, const char* name, const char* help, ExperimentKind kind,
                         ExperimentConfig& cfg, ExperimentKind& chosen) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("inputs", cfg.inputs, "Polyhedron files or catalog:NAME");
  sub->add_option("--out", cfg.out_dir, "Output directory (HYPOLY_OUT_DIR overrides)");
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_option("--tol", cfg.tolerance, "Numerical tolerance");
  sub->add_option("--steps", cfg.steps, "Continuation steps");
  sub->add_option("--r-min", cfg.r_min, "Smallest r");
  sub->add_option("--r-max", cfg.r_max, "Largest r");
  sub->add_option("--r-step", cfg.r_step, "Step between r values");
  sub->add_option("--threads", cfg.threads, "Worker threads");
  sub->callback([&chosen, kind] { chosen = kind; });
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic polyhedra: realization, deformation, volume and quantum invariants"};
  app.set_config("--config", "", "INI or TOML file; one section per subcommand");
  app.require_subcommand(1);
  app.set_version_flag("--version", hypoly::kVersion);

  ExperimentConfig cfg;
  ExperimentKind kind = ExperimentKind::Check;

  add_experiment(app, "check", "Classify realizations (skeleton status, Steinitz)", ExperimentKind::Check, cfg, kind);

  auto* volume = add_experiment(app, "volume", "Quadrature and Monte Carlo volume", ExperimentKind::Volume, cfg, kind);
  volume->add_option("--samples", cfg.samples, "Monte Carlo samples");

  auto* deform = add_experiment(app, "deform", "Run a deformation family", ExperimentKind::Deform, cfg, kind);
  deform->add_option("--family", cfg.family, "scale-one-edge or add-diagonal");
  deform->add_option("--edge", cfg.edge, "Deformed edge (scale-one-edge)");
  deform->add_option("--t-begin", cfg.t_begin, "Start of the parameter range");
  deform->add_option("--t-end", cfg.t_end, "End of the parameter range");

  auto* stoker = add_experiment(app, "stoker", "Compare independent solves to the same angles", ExperimentKind::Stoker,
                                cfg, kind);
  stoker->add_option("--perturbation", cfg.perturbation, "Angle offset of the initial guesses");

  auto* yokota = add_experiment(app, "yokota", "Yokota value of a colored graph", ExperimentKind::Yokota, cfg, kind);
  yokota->add_option("--colors", cfg.colors, "One even color per edge")->delimiter(',');
  yokota->add_option("--r", cfg.r, "Odd r >= 5");
  yokota->add_option("--normalization", cfg.normalization, "bare or unitary");

  auto* volconj = add_experiment(app, "volconj", "Slope series over a range of r", ExperimentKind::VolConj, cfg, kind);
  volconj->add_option("--normalization", cfg.normalization, "bare or unitary");
  volconj->add_flag("--fixed-colors", cfg.fixed_colors, "Keep the colors of r-min at every r");

  add_experiment(app, "catalog", "Build, verify and export the catalog", ExperimentKind::Catalog, cfg, kind);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  cfg.kind = kind;
  return hypoly::run_experiment(cfg, std::cout).exit_code;
}
