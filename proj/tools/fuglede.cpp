// fuglede: build and machine-check spectral non-tiling sets.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace fuglede::cli;

  CLI::App app{"Construct and verify spectral sets that do not tile, in finite groups, Z^n and R^n"};
  app.require_subcommand(1);

  Common common;
  app.add_flag("--json", common.json, "Machine-readable output");
  app.add_option("--budget", common.budget, "Node budget for spectrum and tiling searches (env FUGLEDE_BUDGET)");

  CounterexampleOptions cx;
  auto* cx_cmd = app.add_subcommand("counterexample", "Build a named counterexample and run its checks");
  cx_cmd->add_option("variant", cx.variant, "z2-12 | z2-11 | z3-6 | z3-5 | lattice | continuum")->required();
  cx_cmd->add_option("--matrix", cx.matrix, "Replace the embedded matrix (name h12/h6 or a JSON file)");
  cx_cmd->add_option("--m", cx.m, "Lattice cells per axis")->check(CLI::Range(1, 21));
  cx_cmd->add_option("--k-radius", cx.k_radius, "Integer shift radius for the continuum truncation")
      ->check(CLI::NonNegativeNumber);
  cx_cmd->add_option("--max-pairs", cx.max_pairs, "Pair sample size when the truncation is too large");

  ScanCommandOptions sc;
  auto* scan_cmd = app.add_subcommand("scan", "Compare spectral and tiling status over subsets (JSON lines)");
  scan_cmd->add_option("group", sc.group, "Group descriptor: n, p^k, or n1xn2x...")->required();
  scan_cmd->add_option("--size", sc.size, "Only subsets of this size");
  scan_cmd->add_option("--set", sc.sets, "Only the translation classes of these sets (file or literal)")
      ->allow_extra_args(false);
  scan_cmd->add_option("--subset-budget", sc.subset_budget, "Subsets visited before giving up");

  VerifyOptions vf;
  auto* verify_cmd = app.add_subcommand("verify", "Check a matrix, a spectrum, or a tiling complement");
  verify_cmd->add_option("--matrix", vf.matrix, "Matrix name (h12, h6) or JSON file");
  verify_cmd->add_option("--group", vf.group, "Group descriptor");
  verify_cmd->add_option("--set", vf.set, "Set: JSON file, JSON array, or {..} literal");
  verify_cmd->add_option("--spectrum", vf.spectrum, "Proposed spectrum");
  verify_cmd->add_option("--complement", vf.complement, "Proposed tiling complement");

  ExportOptions ex;
  auto* export_cmd = app.add_subcommand("export", "Write the cube-union geometry and its spectrum as JSON");
  export_cmd->add_option("--m", ex.m, "Lattice cells per axis")->check(CLI::Range(1, 21));
  export_cmd->add_option("--out", ex.path, "Output path")->required();

  DensityCommandOptions dn;
  auto* density_cmd = app.add_subcommand("density", "Window density of the lifted set");
  density_cmd->add_option("--m", dn.m, "Lattice cells per axis")->check(CLI::PositiveNumber);
  density_cmd->add_option("--l", dn.l, "Window side")->check(CLI::PositiveNumber);
  density_cmd->add_option("--stride", dn.stride, "Window grid stride")->check(CLI::PositiveNumber);
  density_cmd->add_option("--trials", dn.trials, "Random windows instead of the full grid (0 = full grid)");
  density_cmd->add_option("--aligned-l", dn.aligned_l, "Also check 3-aligned windows of this side exactly");

  ContinuumOptions ct;
  auto* continuum_cmd = app.add_subcommand("verify-continuum", "Orthogonality of truncated spectra on the cube union");
  continuum_cmd->add_option("--m", ct.m, "Lattice cells per axis")->check(CLI::Range(1, 21));
  continuum_cmd->add_option("--k-radius", ct.k_radius, "Integer shift radius")->check(CLI::NonNegativeNumber);
  continuum_cmd->add_option("--max-pairs", ct.max_pairs, "Pair sample size when the truncation is too large");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }

  return guarded(common, std::cout, std::cerr, [&] {
    if (*cx_cmd) return cmd_counterexample(cx, common, std::cout);
    if (*scan_cmd) return cmd_scan(sc, common, std::cout);
    if (*verify_cmd) return cmd_verify(vf, common, std::cout);
    if (*export_cmd) return cmd_export(ex, common, std::cout);
    if (*density_cmd) return cmd_density(dn, common, std::cout);
    return cmd_verify_continuum(ct, common, std::cout);
  });
}
