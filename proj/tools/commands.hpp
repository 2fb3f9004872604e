#pragma once

// Subcommand implementations for the fuglede tool. Each takes its parsed
// options and an output stream and returns the process exit status:
//   0  every check passed
//   1  a check failed (the failing check is named in the output)
//   2  invalid input or configuration
//   3  a search or scan ran out of budget

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fuglede/constructions.hpp"
#include "fuglede/continuum.hpp"
#include "fuglede/hadamard.hpp"
#include "fuglede/io.hpp"
#include "fuglede/lattice.hpp"
#include "fuglede/scan.hpp"
#include "fuglede/spectra.hpp"
#include "fuglede/tiling.hpp"

namespace fuglede::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kBadInput = 2, kBudget = 3 };

struct Common {
  bool json = false;
  std::optional<std::uint64_t> budget;

  SearchOptions search() const {
    SearchOptions opt;
    if (const char* env = std::getenv("FUGLEDE_BUDGET"); env && *env) opt.node_budget = std::stoull(env);
    if (budget) opt.node_budget = *budget;
    return opt;
  }
};

inline ButsonMatrix load_matrix(const std::string& name_or_path) {
  if (auto m = named_matrix(name_or_path)) return *m;
  return load_json_file(name_or_path).get<ButsonMatrix>();
}

inline std::string show(const GroupElement& x) {
  std::string s = "(";
  for (std::size_t j = 0; j < x.size(); ++j) s += (j ? "," : "") + std::to_string(x[j]);
  return s + ")";
}

inline std::string show(const ElementSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + show(s[i]);
  return out + "}";
}

// ---------------------------------------------------------------------------
// counterexample

struct Stage {
  std::string check;  // library operation that decided this stage
  std::string what;   // human description
  bool pass = false;
  json detail = json::object();
};

class StageLog {
public:
  StageLog(std::ostream& out, bool as_json) : out_(out), json_(as_json) {}

  bool add(Stage s) {
    if (!json_) {
      out_ << (s.pass ? "[PASS] " : "[FAIL] ") << s.check << ": " << s.what << '\n';
      if (!s.pass && !s.detail.empty()) out_ << "       " << s.detail.dump() << '\n';
    }
    if (!s.pass && !failed_) failed_ = s.check;
    stages_.push_back(std::move(s));
    return stages_.back().pass;
  }

  int finish(const std::string& variant) {
    if (json_) {
      json j{{"variant", variant}, {"pass", !failed_.has_value()}, {"stages", json::array()}};
      for (const auto& s : stages_)
        j["stages"].push_back({{"check", s.check}, {"what", s.what}, {"pass", s.pass}, {"detail", s.detail}});
      if (failed_) j["failed_check"] = *failed_;
      out_ << j.dump() << '\n';
    } else if (failed_) {
      out_ << "counterexample " << variant << ": FAILED at " << *failed_ << '\n';
    } else {
      out_ << "counterexample " << variant << ": all checks passed\n";
    }
    return failed_ ? kCheckFailed : kOk;
  }

private:
  std::ostream& out_;
  bool json_;
  std::vector<Stage> stages_;
  std::optional<std::string> failed_;
};

struct CounterexampleOptions {
  std::string variant;
  std::optional<std::string> matrix;  // overrides the embedded matrix
  long long m = 2;
  long long k_radius = 1;
  std::uint64_t max_pairs = 1'000'000;
};

namespace detail {

inline bool matrix_stage(StageLog& log, const ButsonMatrix& h) {
  const auto check = verify_butson(h);
  Stage s{"verify_butson",
          std::to_string(h.size()) + "x" + std::to_string(h.size()) + " matrix over roots of unity of order " +
              std::to_string(h.q()) + " has pairwise orthogonal rows",
          check.valid,
          {{"q", h.q()}, {"size", h.size()}}};
  if (check.failing_rows)
    s.detail["failing_rows"] = {check.failing_rows->first + 1, check.failing_rows->second + 1};
  return log.add(std::move(s));
}

inline bool finite_pair_stages(StageLog& log, const SpectralPair& p, const Common& common, const std::string& label) {
  const auto spec = is_spectrum(p.group, p.set, p.spectrum);
  Stage s{"is_spectrum",
          label + ": " + std::to_string(p.set.size()) + "-element set in Z_" + p.group.descriptor() +
              " has a " + std::to_string(p.spectrum.size()) + "-element spectrum",
          spec.valid,
          {{"group", p.group}, {"set", p.set}, {"spectrum", p.spectrum}}};
  if (spec.witness) s.detail["witness"] = {spec.witness->first, spec.witness->second};
  if (!log.add(std::move(s))) return false;

  const auto tiling = find_tiling(p.group, p.set, common.search());
  std::string what = label + ": does not tile Z_" + p.group.descriptor();
  if (const auto* d = tiling.obstruction())
    what += " (" + std::to_string(d->set_size) + " does not divide " + std::to_string(d->group_order) + ")";
  return log.add({"find_tiling", what, !tiling.tiles(), tiling_certificate_json(tiling)});
}

inline bool lattice_stages(StageLog& log, const LatticePair& lp) {
  const auto& cfg = lp.config;
  const auto cells = fuglede::detail::checked_pow(cfg.m, cfg.dimension);
  const auto expected = static_cast<std::uint64_t>(lp.base.size()) * static_cast<std::uint64_t>(cells);
  const bool sizes = lp.omega1.size() == expected && lp.lambda1.size() == expected;
  if (!log.add({"build_omega1",
                "lifted set has " + std::to_string(lp.omega1.size()) + " points and " +
                    std::to_string(lp.lambda1.size()) + " frequencies with denominator " +
                    std::to_string(lp.lambda1.denominator) + " (expected " + std::to_string(expected) + ")",
                sizes,
                {{"m", cfg.m}, {"points", lp.omega1.size()}, {"frequencies", lp.lambda1.size()}}}))
    return false;

  const auto ortho = verify_ortho_lattice(lp.omega1, lp.lambda1);
  Stage s{"verify_ortho_lattice",
          "all " + std::to_string(ortho.pairs_checked) + " frequency pairs are orthogonal on the lifted set",
          ortho.valid,
          {{"pairs", ortho.pairs_checked}}};
  if (ortho.witness) s.detail["witness"] = {ortho.witness->first.numerators, ortho.witness->second.numerators};
  if (!log.add(std::move(s))) return false;

  if (!log.add({"cell_count_check",
                "every aligned 3-cell holds exactly " + std::to_string(lp.base.size()) + " points",
                cell_count_check(lp.omega1, cfg, lp.base.size()),
                {{"per_cell", lp.base.size()}}}))
    return false;

  const auto torus = torus_non_tiling(lp.omega1, cfg);
  std::string what = "no tiling of the torus (Z/" + std::to_string(cfg.modulus()) + ")^" +
                     std::to_string(cfg.dimension);
  json detail = json::object();
  if (torus) {
    what += " (" + std::to_string(torus->set_size) + " does not divide " + std::to_string(torus->group_order) + ")";
    detail = *torus;
  }
  return log.add({"torus_non_tiling", what, torus.has_value(), detail});
}

}  // namespace detail

inline int cmd_counterexample(const CounterexampleOptions& opt, const Common& common, std::ostream& out) {
  const auto& v = opt.variant;
  static const std::vector<std::string> variants{"z2-12", "z2-11", "z3-6", "z3-5", "lattice", "continuum"};
  if (std::find(variants.begin(), variants.end(), v) == variants.end())
    throw std::invalid_argument("unknown variant '" + v + "' (z2-12, z2-11, z3-6, z3-5, lattice, continuum)");
  StageLog log(out, common.json);
  const bool binary = v == "z2-12" || v == "z2-11";
  const ButsonMatrix h = opt.matrix ? load_matrix(*opt.matrix) : (binary ? hadamard_12() : hadamard_6());
  if (!detail::matrix_stage(log, h)) return log.finish(v);

  if (v == "z2-12") {
    detail::finite_pair_stages(log, z2_12_pair(h), common, "finite counterexample in Z_2^12");
  } else if (v == "z2-11") {
    detail::finite_pair_stages(log, z2_11_pair(h), common, "descended counterexample in Z_2^11");
  } else if (v == "z3-6") {
    detail::finite_pair_stages(log, z3_6_pair(h), common, "finite counterexample in Z_3^6");
  } else if (v == "z3-5") {
    detail::finite_pair_stages(log, z3_5_pair(h), common, "descended counterexample in Z_3^5");
  } else {
    if (!detail::finite_pair_stages(log, z3_5_pair(h), common, "base counterexample in Z_3^5")) return log.finish(v);
    LatticeConfig cfg;
    cfg.m = opt.m;
    const LatticePair lp = lattice_pair(cfg, h);
    if (!detail::lattice_stages(log, lp)) return log.finish(v);
    if (v == "continuum") {
      const CubeUnion omega2 = build_omega2(lp.omega1);
      if (!log.add({"build_omega2", "union of " + std::to_string(omega2.measure()) + " unit cubes, measure " +
                                        std::to_string(omega2.measure()),
                    omega2.measure() == lp.omega1.size(),
                    {{"measure", omega2.measure()}}}))
        return log.finish(v);
      for (long long r : {0LL, opt.k_radius}) {
        TruncationOptions topt;
        topt.max_pairs = r == 0 ? 0 : opt.max_pairs;
        const auto check = verify_spectrum_truncation(lp.omega1, lp.lambda1, r, topt);
        Stage s{"verify_spectrum_truncation",
                "frequencies Lambda1 + k, |k| <= " + std::to_string(r) + ": " +
                    std::to_string(check.pairs_checked) + (check.sampled ? " sampled" : "") +
                    " pairs orthogonal on the cube union",
                check.valid,
                {{"k_radius", r}, {"pairs", check.pairs_checked}, {"sampled", check.sampled}}};
        if (!log.add(std::move(s))) return log.finish(v);
        if (r == opt.k_radius) break;
      }
    }
  }
  return log.finish(v);
}

// ---------------------------------------------------------------------------
// scan

namespace detail {

inline std::string read_set_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return arg;
  return read_text_file(arg);
}

}  // namespace detail

struct ScanCommandOptions {
  std::string group;
  std::optional<std::size_t> size;
  std::vector<std::string> sets;  // restrict to the classes of these sets
  std::optional<std::uint64_t> subset_budget;
};

inline json scan_record_json(const ScanRecord& r) {
  json j{{"set", r.set}, {"spectral", r.spectral()}, {"tiles", r.tiles()}};
  if (r.spectral()) j["spectrum"] = r.spectrum.spectrum;
  if (r.tiles()) j["complement"] = *r.tiling.complement;
  j["tiling_certificate"] = tiling_certificate_json(r.tiling);
  return j;
}

inline int cmd_scan(const ScanCommandOptions& opt, const Common& common, std::ostream& out) {
  const GroupSpec g = parse_group_descriptor(opt.group);
  auto sink = [&](const ScanRecord& r) { out << scan_record_json(r).dump() << '\n'; };
  ScanReport report;
  if (!opt.sets.empty()) {
    std::vector<ElementSet> sets;
    for (const auto& s : opt.sets) sets.push_back(parse_element_set(g, detail::read_set_argument(s)));
    report = fuglede_scan_classes(g, sets, common.search(), sink);
  } else {
    ScanOptions sopt;
    sopt.size_filter = opt.size;
    sopt.search = common.search();
    if (opt.subset_budget) sopt.subset_budget = *opt.subset_budget;
    report = fuglede_scan(g, sopt, sink);
  }
  json summary{{"group", g.descriptor()},
               {"classes", report.classes},
               {"spectral_non_tiles", report.spectral_non_tiles.size()},
               {"tiles_non_spectral", report.tiles_non_spectral.size()},
               {"complete", report.complete}};
  if (!report.complete) summary["incomplete_reason"] = report.incomplete_reason;
  out << json{{"summary", summary}}.dump() << '\n';
  return report.complete ? kOk : kBudget;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::optional<std::string> matrix;
  std::optional<std::string> group;
  std::optional<std::string> set;
  std::optional<std::string> spectrum;
  std::optional<std::string> complement;
};



inline int cmd_verify(const VerifyOptions& opt, const Common& common, std::ostream& out) {
  json verdict;
  if (opt.matrix) {
    const ButsonMatrix h = load_matrix(*opt.matrix);
    const auto check = verify_butson(h);
    verdict = {{"check", "verify_butson"}, {"valid", check.valid}};
    if (check.failing_rows) verdict["witness"] = {check.failing_rows->first + 1, check.failing_rows->second + 1};
    if (!common.json) {
      out << "verify_butson: " << (check.valid ? "valid" : "invalid");
      if (check.failing_rows)
        out << ", rows " << check.failing_rows->first + 1 << " and " << check.failing_rows->second + 1
            << " are not orthogonal";
      out << '\n';
    }
  } else {
    if (!opt.group || !opt.set || (opt.spectrum.has_value() == opt.complement.has_value()))
      throw std::invalid_argument("verify needs --matrix, or --group and --set with exactly one of --spectrum/--complement");
    const GroupSpec g = parse_group_descriptor(*opt.group);
    const ElementSet t = parse_element_set(g, detail::read_set_argument(*opt.set));
    if (opt.spectrum) {
      const ElementSet l = parse_element_set(g, detail::read_set_argument(*opt.spectrum));
      const auto check = is_spectrum(g, t, l);
      verdict = {{"check", "is_spectrum"}, {"valid", check.valid}};
      if (check.cardinality_mismatch) verdict["cardinality_mismatch"] = {t.size(), l.size()};
      if (check.witness) verdict["witness"] = {check.witness->first, check.witness->second};
      if (!common.json) {
        out << "is_spectrum: " << (check.valid ? "valid" : "invalid");
        if (check.cardinality_mismatch) out << ", set has " << t.size() << " elements but spectrum has " << l.size();
        if (check.witness)
          out << ", frequencies " << show(check.witness->first) << " and " << show(check.witness->second)
              << " are not orthogonal";
        out << '\n';
      }
    } else {
      const ElementSet sigma = parse_element_set(g, detail::read_set_argument(*opt.complement));
      const auto defect = find_cover_defect(g, t, sigma);
      verdict = {{"check", "verify_tiling"}, {"valid", !defect.has_value()}};
      if (defect) verdict["witness"] = {{"element", defect->element}, {"times_covered", defect->times}};
      if (!common.json) {
        out << "verify_tiling: " << (defect ? "invalid" : "valid");
        if (defect) out << ", element " << show(defect->element) << " covered " << defect->times << " times";
        out << '\n';
      }
    }
  }
  if (common.json) out << verdict.dump() << '\n';
  return verdict["valid"].get<bool>() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// export, density, verify-continuum

struct ExportOptions {
  long long m = 2;
  std::string path;
};

inline int cmd_export(const ExportOptions& opt, const Common& common, std::ostream& out) {
  LatticeConfig cfg;
  cfg.m = opt.m;
  const LatticePair lp = lattice_pair(cfg);
  const CubeUnion omega2 = build_omega2(lp.omega1);
  export_geometry(omega2, lp.lambda1, opt.path);
  if (common.json)
    out << json{{"path", opt.path}, {"measure", omega2.measure()}, {"dimension", omega2.dimension()}}.dump() << '\n';
  else
    out << "wrote " << omega2.measure() << " unit cubes in dimension " << omega2.dimension() << " to " << opt.path
        << '\n';
  return kOk;
}

struct DensityCommandOptions {
  long long m = 16;
  long long l = 8;
  long long stride = 4;
  std::uint64_t trials = 0;
  std::optional<long long> aligned_l;
};

inline int cmd_density(const DensityCommandOptions& opt, const Common& common, std::ostream& out) {
  LatticeConfig cfg;
  cfg.m = opt.m;
  cfg.l = opt.l;
  cfg.validate_density();
  const SpectralPair base = z3_5_pair();
  const LatticeSet omega1 = build_omega1(base.set, cfg);
  DensityOptions dopt;
  dopt.stride = opt.stride;
  dopt.trials = opt.trials;
  const auto rep = density_check(omega1, cfg, base.set.size(), dopt);
  bool pass = rep.within_bound;
  json j{{"m", cfg.m},
         {"l", cfg.l},
         {"stride", opt.stride},
         {"windows", rep.windows},
         {"nonzero_windows", rep.nonzero_windows},
         {"min_count", rep.min_count},
         {"max_count", rep.max_count},
         {"window_volume", rep.window_volume},
         {"within_bound", rep.within_bound}};
  std::optional<AlignedWindowReport> aligned;
  if (opt.aligned_l) {
    LatticeConfig acfg = cfg;
    acfg.l = *opt.aligned_l;
    aligned = aligned_window_check(omega1, acfg, base.set.size());
    pass = pass && aligned->exact;
    j["aligned"] = {{"l", acfg.l}, {"windows", aligned->windows}, {"expected", aligned->expected},
                    {"exact", aligned->exact}};
  }
  j["pass"] = pass;
  if (common.json) {
    out << j.dump() << '\n';
  } else {
    std::ostringstream s;
    s.precision(6);
    s << "density_check M=" << cfg.m << " L=" << cfg.l << " stride=" << opt.stride << ": " << rep.windows
      << " windows, counts in [" << rep.min_count << ", " << rep.max_count << "], densities in ["
      << rep.min_density() << ", " << rep.max_density() << "] vs " << rep.target_density()
      << ", bound 12/L " << (rep.within_bound ? "holds" : "VIOLATED") << '\n';
    if (aligned)
      s << "aligned windows L=" << *opt.aligned_l << ": " << aligned->windows << " windows, each "
        << (aligned->exact ? "exactly " : "NOT always ") << aligned->expected << " points\n";
    out << s.str();
  }
  return pass ? kOk : kCheckFailed;
}

struct ContinuumOptions {
  long long m = 2;
  long long k_radius = 1;
  std::uint64_t max_pairs = 1'000'000;
};

inline int cmd_verify_continuum(const ContinuumOptions& opt, const Common& common, std::ostream& out) {
  LatticeConfig cfg;
  cfg.m = opt.m;
  const LatticePair lp = lattice_pair(cfg);
  TruncationOptions topt;
  topt.max_pairs = opt.k_radius == 0 ? 0 : opt.max_pairs;
  const auto check = verify_spectrum_truncation(lp.omega1, lp.lambda1, opt.k_radius, topt);
  json j{{"check", "verify_spectrum_truncation"},
         {"m", cfg.m},
         {"k_radius", opt.k_radius},
         {"measure", lp.omega1.size()},
         {"frequencies", check.frequencies},
         {"pairs", check.pairs_checked},
         {"sampled", check.sampled},
         {"valid", check.valid}};
  if (check.witness) {
    j["witness"] = {{{"base", check.witness->first.base.numerators}, {"shift", check.witness->first.shift}},
                    {{"base", check.witness->second.base.numerators}, {"shift", check.witness->second.shift}}};
  }
  if (common.json)
    out << j.dump() << '\n';
  else
    out << "verify_spectrum_truncation M=" << cfg.m << " k-radius=" << opt.k_radius << ": " << check.pairs_checked
        << (check.sampled ? " sampled" : "") << " pairs of " << check.frequencies << " frequencies, "
        << (check.valid ? "all orthogonal" : "NOT orthogonal") << '\n';
  return check.valid ? kOk : kCheckFailed;
}

/// Runs `body`, mapping library exceptions onto exit codes. In json mode the
/// error is reported as a JSON object.
inline int guarded(const Common& common, std::ostream& out, std::ostream& err, const std::function<int()>& body) {
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    if (common.json)
      out << json{{"error", kind}, {"message", msg}}.dump() << '\n';
    else
      err << "error: " << msg << '\n';
    return code;
  };
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    return fail(kBudget, "budget_exceeded", e.what());
  } catch (const json::exception& e) {
    return fail(kBadInput, "invalid_input", e.what());
  } catch (const std::logic_error& e) {
    return fail(kBadInput, "invalid_input", e.what());
  } catch (const std::exception& e) {
    return fail(kBadInput, "error", e.what());
  }
}

}  // namespace fuglede::cli
