// cantorq: exact quantization toolkit for the standard triadic
// self-similar measure. Subcommands construct candidate-optimal
// codebooks, evaluate exact quantization errors, verify them against a
// discretized Lloyd search, scan scaled errors, and recompute the
// estimate checkpoint table.
//
// Exit codes: 0 success / PASS, 1 verification mismatch, 2 usage error,
// 3 I/O error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cantorq/asymptotics.hpp"
#include "cantorq/distortion.hpp"
#include "cantorq/lloyd.hpp"
#include "cantorq/measure.hpp"
#include "cantorq/quantizer.hpp"

using json = nlohmann::ordered_json;
using namespace cantorq;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string bigfloat_string(const BigFloat& v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

std::string regime_name(Regime r) { return r == Regime::A ? "A" : "B"; }

json point_json(const Rational& p, int digits) {
  return json{{"exact", fraction_string(p)}, {"decimal", decimal_string(p, digits)}};
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

struct OptimalArgs {
  long n = 0;
  std::string index_set;
  bool list_all = false;
  long limit = 20;
  int digits = 12;
  bool as_json = false;
};

struct SetListing {
  std::vector<std::string> index_words;
  std::vector<Rational> points;
};

SetListing listing_for(long n, const IndexSet& I) {
  SetListing s;
  for (const Word& w : I.members) s.index_words.push_back(w.str());
  s.points = optimal_set(n, I).points;
  return s;
}

void print_listing(std::ostream& os, const SetListing& s, int digits) {
  os << "index set: {";
  for (std::size_t i = 0; i < s.index_words.size(); ++i)
    os << (i ? "," : "") << s.index_words[i];
  os << "}\n";
  for (const Rational& p : s.points)
    os << "  " << fraction_string(p) << " = " << decimal_string(p, digits) << "\n";
}

int run_optimal(const OptimalArgs& args) {
  if (args.n < 1) throw CLI::ValidationError("--n must be >= 1");

  std::vector<SetListing> listings;
  std::string regime_note;
  std::string count = "1";
  if (args.n <= 2) {
    if (!args.index_set.empty())
      throw CLI::ValidationError("index sets apply to n >= 3; n = 1, 2 are closed forms");
    listings.push_back(SetListing{{}, (args.n == 1 ? alpha1() : alpha2()).points});
    regime_note = "closed form for n <= 2";
  } else {
    const RegimeDescriptor r = regime_of(args.n);
    regime_note = "regime " + regime_name(r.regime) + ", ell=" + std::to_string(r.ell) +
                  ", capacity=" + std::to_string(r.capacity);
    count = count_optimal_sets(args.n).str();
    if (!args.index_set.empty()) {
      IndexSet I;
      I.level = r.ell;
      for (const std::string& w : split_csv(args.index_set)) I.members.push_back(Word::parse(w));
      std::sort(I.members.begin(), I.members.end());
      listings.push_back(listing_for(args.n, I));
    } else if (args.list_all) {
      for_each_index_set(args.n, [&](const IndexSet& I) {
        listings.push_back(listing_for(args.n, I));
        return static_cast<long>(listings.size()) < args.limit;
      });
    } else {
      listings.push_back(listing_for(args.n, enumerate_index_sets(args.n, 1).front()));
    }
  }

  if (args.as_json) {
    json out;
    out["command"] = "optimal";
    out["parameters"] = {{"n", args.n}, {"list_all", args.list_all}, {"limit", args.limit}};
    out["note"] = regime_note;
    out["admissible_sets"] = count;
    json sets = json::array();
    for (const SetListing& s : listings) {
      json pts = json::array();
      for (const Rational& p : s.points) pts.push_back(point_json(p, args.digits));
      sets.push_back(json{{"index_set", s.index_words}, {"points", pts}});
    }
    out["sets"] = sets;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: optimal\nn: " << args.n << "\n"
              << "construction: " << regime_note << "\n"
              << "admissible index sets: " << count << "\n";
    for (const SetListing& s : listings) print_listing(std::cout, s, args.digits);
  }
  return 0;
}

struct ErrorArgs {
  long n = -1;
  std::string codebook;
  int depth_cap = 40;
  int digits = 12;
  bool as_json = false;
};

int run_error(const ErrorArgs& args) {
  const bool have_n = args.n >= 0;
  const bool have_codebook = !args.codebook.empty();
  if (have_n == have_codebook)
    throw CLI::ValidationError("provide exactly one of --n or --codebook");

  json out;
  out["command"] = "error";
  if (have_n) {
    if (args.n < 1) throw CLI::ValidationError("--n must be >= 1");
    const Rational v = vn_exact(args.n);
    out["parameters"] = {{"n", args.n}};
    out["kind"] = "exact";
    out["value"] = point_json(v, args.digits);
    out["note"] = "closed-form n-point quantization error";
    if (!args.as_json)
      std::cout << "command: error\nn: " << args.n << "\nexact: " << fraction_string(v)
                << " = " << decimal_string(v, args.digits) << "\n";
  } else {
    std::vector<Rational> pts;
    for (const std::string& p : split_csv(args.codebook)) pts.push_back(parse_rational(p));
    const DistortionResult r = codebook_distortion(pts, args.depth_cap);
    out["parameters"] = {{"codebook", args.codebook}, {"depth_cap", args.depth_cap}};
    out["kind"] = r.exact ? "exact" : "bounds";
    out["depth_used"] = r.subdivision_depth_used;
    json cells = json::array();
    for (std::size_t idx : r.empty_cells) cells.push_back(idx);
    out["empty_cells"] = cells;
    out["note"] = "distortion of the given codebook by cylinder subdivision";
    if (r.exact) {
      out["value"] = point_json(r.value, args.digits);
    } else {
      out["lower"] = point_json(r.lower, args.digits);
      out["upper"] = point_json(r.upper, args.digits);
    }
    if (!args.as_json) {
      std::cout << "command: error\ncodebook: " << args.codebook << "\n";
      if (r.exact) {
        std::cout << "exact: " << fraction_string(r.value) << " = "
                  << decimal_string(r.value, args.digits) << "\n";
      } else {
        std::cout << "bounds (depth cap " << args.depth_cap << " reached):\n"
                  << "  lower: " << fraction_string(r.lower) << " = "
                  << decimal_string(r.lower, args.digits) << "\n"
                  << "  upper: " << fraction_string(r.upper) << " = "
                  << decimal_string(r.upper, args.digits) << "\n";
      }
      for (std::size_t idx : r.empty_cells)
        std::cout << "empty cell: point #" << idx << " receives no mass\n";
    }
  }
  if (args.as_json) std::cout << out.dump(2) << "\n";
  return 0;
}

struct VerifyArgs {
  long n = 0;
  int depth = 6;
  int restarts = 64;
  std::uint64_t seed = kDefaultSeed;
  double point_tol = 1e-6;
  double gap_tol = 1e-9;
  int digits = 12;
  bool as_json = false;
};

/// Recovers the candidate index set matching an oracle codebook by
/// counting points inside each level-ell branch cylinder.
std::optional<IndexSet> infer_index_set(const std::vector<double>& pts, long n) {
  const RegimeDescriptor r = regime_of(n);
  const MeasureSpec spec = MeasureSpec::triadic();
  const int lone = r.regime == Regime::A ? 1 : 2;
  IndexSet I;
  I.level = r.ell;
  std::size_t used = 0;
  for (const Word& w : words_of_level(r.ell)) {
    const double left = to_double(map_apply(spec, w, Rational(0))) - 1e-9;
    const double right = to_double(map_apply(spec, w, Rational(1))) + 1e-9;
    int count = 0;
    for (double p : pts)
      if (p >= left && p <= right) ++count;
    used += static_cast<std::size_t>(count);
    if (count == lone + 1)
      I.members.push_back(w);
    else if (count != lone)
      return std::nullopt;
  }
  if (used != pts.size()) return std::nullopt;
  if (static_cast<long>(I.members.size()) != index_cardinality(r)) return std::nullopt;
  return I;
}

int run_verify(const VerifyArgs& args) {
  if (args.n < 1) throw CLI::ValidationError("--n must be >= 1");
  if (args.depth < 1 || args.depth > 15) throw CLI::ValidationError("--depth must be in [1, 15]");
  double cap = std::pow(3.0, args.depth);
  if (static_cast<double>(args.n) > cap)
    throw CLI::ValidationError("need n <= 3^depth atoms to place n centers");

  LloydConfig cfg;
  cfg.restarts = args.restarts;
  cfg.rng_seed = args.seed;
  const LloydResult res = best_of_restarts(static_cast<int>(args.n), args.depth, cfg);

  std::vector<Rational> candidate;
  std::vector<std::string> index_words;
  bool structure_ok = true;
  if (args.n == 1) {
    candidate = alpha1().points;
  } else if (args.n == 2) {
    candidate = alpha2().points;
  } else if (auto I = infer_index_set(res.codebook, args.n)) {
    for (const Word& w : I->members) index_words.push_back(w.str());
    candidate = optimal_set(args.n, *I).points;
  } else {
    structure_ok = false;
  }

  double deviation = 1.0;
  if (structure_ok) {
    deviation = 0.0;
    for (std::size_t i = 0; i < candidate.size(); ++i)
      deviation = std::max(deviation, std::abs(res.codebook[i] - to_double(candidate[i])));
  }

  const double correction = to_double(variance_error()) / std::pow(25.0, args.depth);
  const double corrected = res.discrete_distortion + correction;
  const double gap = std::abs(corrected - to_double(vn_exact(args.n)));

  bool grid_identity_exact = false;
  if (structure_ok && args.depth <= 10) {
    const Rational exact_disc =
        discrete_distortion_exact(exact_atom_locations(args.depth), candidate);
    const Rational corr = variance_error() *
                          rational_pow(make_rational(1, 25), static_cast<unsigned>(args.depth));
    grid_identity_exact = exact_disc + corr == vn_exact(args.n);
  }

  const bool pass = structure_ok && deviation < args.point_tol && gap < args.gap_tol;

  std::ostringstream dev_ss, gap_ss;
  dev_ss << std::scientific << std::setprecision(3) << deviation;
  gap_ss << std::scientific << std::setprecision(3) << gap;

  if (args.as_json) {
    json out;
    out["command"] = "verify";
    out["parameters"] = {{"n", args.n},
                         {"depth", args.depth},
                         {"restarts", args.restarts},
                         {"seed", args.seed}};
    json cb = json::array();
    for (double p : res.codebook) {
      std::ostringstream ss;
      ss << std::setprecision(17) << p;
      cb.push_back(ss.str());
    }
    out["oracle_codebook"] = cb;
    out["candidate_index_set"] = index_words;
    out["structure_recognized"] = structure_ok;
    out["max_point_deviation"] = dev_ss.str();
    out["discrete_distortion"] = bigfloat_string(BigFloat(res.discrete_distortion), args.digits);
    out["grid_correction"] = bigfloat_string(BigFloat(correction), 2 * args.digits);
    out["vn_exact"] = point_json(vn_exact(args.n), args.digits);
    out["distortion_gap"] = gap_ss.str();
    out["grid_identity_exact"] = grid_identity_exact;
    out["result"] = pass ? "PASS" : "FAIL";
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: verify\nn: " << args.n << "  depth: " << args.depth
              << "  restarts: " << args.restarts << "  seed: " << args.seed << "\n";
    std::cout << "oracle codebook:";
    for (double p : res.codebook) std::cout << " " << std::setprecision(17) << p;
    std::cout << "\n";
    if (!index_words.empty()) {
      std::cout << "candidate index set: {";
      for (std::size_t i = 0; i < index_words.size(); ++i)
        std::cout << (i ? "," : "") << index_words[i];
      std::cout << "}\n";
    }
    if (!structure_ok) std::cout << "candidate structure not recognized\n";
    std::cout << "max point deviation: " << dev_ss.str() << "\n"
              << "discrete distortion + correction vs exact: gap " << gap_ss.str() << "\n"
              << "grid identity in exact arithmetic: "
              << (grid_identity_exact ? "holds" : "not checked") << "\n"
              << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : kExitMismatch;
}

struct ScanArgs {
  long n_min = 1;
  long n_max = 729;
  std::string format = "csv";
  std::string out_path;
  int digits = 12;
};

int run_scan(const ScanArgs& args) {
  if (args.n_min < 1 || args.n_min > args.n_max)
    throw CLI::ValidationError("need 1 <= n-min <= n-max");
  if (args.format != "csv" && args.format != "json")
    throw CLI::ValidationError("--format must be csv or json");

  const auto rows = scan_scaled_errors(args.n_min, args.n_max);
  std::ostringstream body;
  if (args.format == "csv") {
    body << "n,ell,regime,x,scaled_error\n";
    for (const ScanRow& row : rows)
      body << row.n << ',' << row.ell << ',' << regime_name(row.regime) << ','
           << bigfloat_string(row.x, args.digits) << ','
           << bigfloat_string(row.scaled_error, args.digits) << "\n";
  } else {
    json out = json::array();
    for (const ScanRow& row : rows)
      out.push_back(json{{"n", row.n},
                         {"ell", row.ell},
                         {"regime", regime_name(row.regime)},
                         {"x", bigfloat_string(row.x, args.digits)},
                         {"scaled_error", bigfloat_string(row.scaled_error, args.digits)}});
    body << out.dump(2) << "\n";
  }

  if (args.out_path.empty() || args.out_path == "-") {
    std::cout << body.str();
    return 0;
  }
  std::ofstream file(args.out_path);
  if (!file) {
    std::cerr << "cannot open " << args.out_path << " for writing\n";
    return kExitIo;
  }
  file << body.str();
  if (!file.good()) {
    std::cerr << "write to " << args.out_path << " failed\n";
    return kExitIo;
  }
  return 0;
}

struct CheckpointArgs {
  int digits = 12;
  bool as_json = false;
};

int run_checkpoints(const CheckpointArgs& args) {
  const auto rows = proof_checkpoint_integrals();
  bool all_ok = true;
  if (args.as_json) {
    json out = json::array();
    for (const Checkpoint& row : rows) {
      const bool ok = row.pass();
      all_ok = all_ok && ok;
      json r;
      r["name"] = row.name;
      r["computed"] = point_json(row.computed, args.digits);
      if (row.expected_exact) r["reference"] = fraction_string(*row.expected_exact);
      if (row.expected_decimal) r["reference"] = decimal_string(*row.expected_decimal, 7);
      r["status"] = ok ? "ok" : "MISMATCH";
      out.push_back(r);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: checkpoints\n";
    std::cout << std::left << std::setw(42) << "name" << std::setw(38) << "computed"
              << std::setw(18) << "decimal" << std::setw(16) << "reference"
              << "status\n";
    for (const Checkpoint& row : rows) {
      const bool ok = row.pass();
      all_ok = all_ok && ok;
      const std::string ref = row.expected_exact ? fraction_string(*row.expected_exact)
                                                 : decimal_string(*row.expected_decimal, 7);
      std::cout << std::left << std::setw(42) << row.name << std::setw(38)
                << fraction_string(row.computed) << std::setw(18)
                << decimal_string(row.computed, args.digits) << std::setw(16) << ref
                << (ok ? "ok" : "MISMATCH") << "\n";
    }
    std::cout << "result: " << (all_ok ? "PASS" : "FAIL") << "\n";
  }
  return all_ok ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact quantization toolkit for the standard triadic self-similar measure"};
  app.require_subcommand(1);

  OptimalArgs optimal_args;
  CLI::App* optimal = app.add_subcommand("optimal", "construct candidate-optimal codebooks");
  optimal->add_option("--n", optimal_args.n, "codebook size")->required();
  optimal->add_option("--index-set", optimal_args.index_set,
                      "comma-separated level-ell words, e.g. 11,23");
  optimal->add_flag("--list-all", optimal_args.list_all, "enumerate admissible index sets");
  optimal->add_option("--limit", optimal_args.limit, "cap for --list-all")->default_val(20);
  optimal->add_option("--digits", optimal_args.digits, "decimal digits")->default_val(12);
  optimal->add_flag("--json", optimal_args.as_json, "JSON output");

  ErrorArgs error_args;
  CLI::App* error_cmd = app.add_subcommand("error", "exact quantization or codebook error");
  error_cmd->add_option("--n", error_args.n, "codebook size for the closed form");
  error_cmd->add_option("--codebook", error_args.codebook, "comma-separated rationals p/q");
  error_cmd->add_option("--depth-cap", error_args.depth_cap, "subdivision depth cap")
      ->default_val(40);
  error_cmd->add_option("--digits", error_args.digits, "decimal digits")->default_val(12);
  error_cmd->add_flag("--json", error_args.as_json, "JSON output");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "check a codebook against the Lloyd search");
  verify->add_option("--n", verify_args.n, "codebook size")->required();
  verify->add_option("--depth", verify_args.depth, "atom grid depth")->default_val(6);
  verify->add_option("--restarts", verify_args.restarts, "random restarts")->default_val(64);
  verify->add_option("--seed", verify_args.seed, "RNG seed")
      ->envname("CANTORQ_SEED")
      ->default_val(kDefaultSeed);
  verify->add_option("--point-tol", verify_args.point_tol, "pointwise tolerance")
      ->default_val(1e-6);
  verify->add_option("--gap-tol", verify_args.gap_tol, "distortion gap tolerance")
      ->default_val(1e-9);
  verify->add_option("--digits", verify_args.digits, "decimal digits")->default_val(12);
  verify->add_flag("--json", verify_args.as_json, "JSON output");

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand("scan", "scaled quantization errors n^(2/beta) V_n");
  scan->add_option("--n-min", scan_args.n_min, "first n")->default_val(1);
  scan->add_option("--n-max", scan_args.n_max, "last n")->default_val(729);
  scan->add_option("--format", scan_args.format, "csv or json")->default_val("csv");
  scan->add_option("--out", scan_args.out_path, "output path (default stdout)");
  scan->add_option("--digits", scan_args.digits, "decimal digits")->default_val(12);

  CheckpointArgs checkpoint_args;
  CLI::App* checkpoints = app.add_subcommand("checkpoints", "recompute the estimate table");
  checkpoints->add_option("--digits", checkpoint_args.digits, "decimal digits")->default_val(12);
  checkpoints->add_flag("--json", checkpoint_args.as_json, "JSON output");

  try {
    app.parse(argc, argv);
    if (optimal->parsed()) return run_optimal(optimal_args);
    if (error_cmd->parsed()) return run_error(error_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (scan->parsed()) return run_scan(scan_args);
    if (checkpoints->parsed()) return run_checkpoints(checkpoint_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
