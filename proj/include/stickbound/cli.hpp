#pragma once

// Command-line front end. run_cli() takes argv-style arguments (without the
// program name) and returns the process exit code.

#include "stickbound/bounds.hpp"
#include "stickbound/construct.hpp"
#include "stickbound/io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace stickbound {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitVerification = 2,
  kExitInvariantMismatch = 3,
};

inline constexpr const char* kMaxExtensionEnv = "STICKBOUND_MAX_L";

/// Top-reduction cap from the environment, or the default when unset.
inline long max_extension_from_env() {
  const char* raw = std::getenv(kMaxExtensionEnv);
  if (raw == nullptr || *raw == '\0') return kDefaultMaxExtension;
  std::string_view s(raw);
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 1)
    throw std::invalid_argument(std::string(kMaxExtensionEnv) + " must be a positive integer, got '" +
                                std::string(s) + "'");
  return v;
}

struct BatchRow {
  std::string id;
  std::size_t n = 0;
  BetaCounts beta;
  std::size_t shift = 0;
  std::size_t sticks = 0;
  std::string bound;
  bool bound_satisfied = false;
  std::string top_reduction;
  bool embedded = false;
  bool invariants_match = false;
  std::string determinant;
  std::string seed;
  int exit_code = kExitOk;
};

inline const char* kBatchHeader =
    "id,n,beta1,beta2,beta3,shift,sticks,bound,bound_satisfied,top_reduction,embedded,"
    "invariants_match,determinant,seed";

inline std::string csv_line(const BatchRow& r) {
  auto b = [](bool x) { return x ? "true" : "false"; };
  std::ostringstream s;
  s << r.id << ',' << r.n << ',' << r.beta.beta1 << ',' << r.beta.beta2 << ',' << r.beta.beta3 << ','
    << r.shift << ',' << r.sticks << ',' << r.bound << ',' << b(r.bound_satisfied) << ','
    << r.top_reduction << ',' << b(r.embedded) << ',' << b(r.invariants_match) << ','
    << r.determinant << ',' << r.seed;
  return s.str();
}

/// Runs the pipeline on one presentation; failures become row verdicts.
inline BatchRow batch_row(std::string id, const ArcPresentation& ap, const BuildOptions& opt,
                          std::string seed, std::ostream& err) {
  BatchRow row;
  row.id = std::move(id);
  row.seed = std::move(seed);
  row.n = ap.n();
  try {
    BuildResult r = build_full(ap, opt);
    const Certificate& c = r.cert;
    row.beta = c.beta;
    row.shift = c.shift;
    row.sticks = c.sticks_k3;
    row.bound = to_string(c.bound);
    row.bound_satisfied = c.bound_satisfied;
    row.top_reduction = c.top_reduction_label();
    row.embedded = c.k1_embedded && c.k2_embedded && c.k3_embedded;
    row.invariants_match = c.invariants_match;
    row.determinant = c.determinant.get_str();
    if (!c.invariants_match) row.exit_code = kExitInvariantMismatch;
  } catch (const std::invalid_argument& e) {
    err << row.id << ": invalid input: " << e.what() << '\n';
    row.top_reduction = "error:invalid-input";
    row.exit_code = kExitInvalidInput;
  } catch (const std::exception& e) {
    err << row.id << ": verification failure: " << e.what() << '\n';
    row.top_reduction = "error:verification";
    row.exit_code = kExitVerification;
  }
  return row;
}

namespace detail {

// Invalid input outranks verification failure, which outranks a mismatch.
inline int worse(int a, int b) {
  auto rank = [](int c) {
    switch (c) {
      case kExitInvalidInput: return 3;
      case kExitVerification: return 2;
      case kExitInvariantMismatch: return 1;
      default: return 0;
    }
  };
  return rank(a) >= rank(b) ? a : b;
}

inline ArcPresentation load_valid_arc(const std::string& path, std::size_t min_n) {
  ArcPresentation ap = read_arc(path);
  require_valid(ap, path.c_str());
  if (ap.n() < min_n)
    throw std::invalid_argument(path + ": need at least " + std::to_string(min_n) + " chords");
  return ap;
}

inline std::string random_name(std::size_t n, std::uint64_t seed) {
  return "random_n" + std::to_string(n) + "_s" + std::to_string(seed);
}

inline std::vector<std::filesystem::path> collect_arc_files(const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".arc") found.push_back(e.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

struct Options {
  std::string input, polygon, out, obj, csv;
  std::vector<std::string> inputs;
  bool no_top = false;
  bool nonalternating_prime = false;
  long n = 0, count = 1, cmin = 3, cmax = 12;
  std::uint64_t seed = 0;
};

inline int cmd_build(const Options& o, std::ostream& out, std::ostream& err) {
  ArcPresentation ap;
  BuildOptions opt;
  try {
    ap = load_valid_arc(o.input, 3);
    opt.top_reduction = !o.no_top;
    opt.max_extension = max_extension_from_env();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  BuildResult r;
  try {
    r = build_full(ap, opt);
  } catch (const std::exception& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  }
  try {
    if (o.out.empty())
      out << polygon_json_text(r);
    else
      write_file(o.out, polygon_json_text(r));
    if (!o.obj.empty()) write_file(o.obj, obj_text(r.knot.vertices));
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  const Certificate& c = r.cert;
  if (!c.invariants_match) {
    err << "invariant mismatch: input determinant differs or Alexander polynomials disagree\n";
    return kExitInvariantMismatch;
  }
  if (!c.bound_satisfied && opt.top_reduction) {
    err << "verification failure: " << c.sticks_k3 << " sticks exceed bound " << to_string(c.bound)
        << " (top reduction " << c.top_reduction_label() << ")\n";
    return kExitVerification;
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  ArcPresentation ap;
  StoredPolygon poly;
  try {
    ap = load_valid_arc(o.input, 3);
    poly = parse_polygon_json(read_file(o.polygon));
    if (!poly.roles.empty() && poly.roles.size() != poly.vertices.size())
      throw IoError("polygon JSON: " + std::to_string(poly.roles.size()) + " edge roles for " +
                    std::to_string(poly.vertices.size()) + " vertices");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  try {
    EmbeddingVerdict ev = polygon_embedded(poly.vertices);
    if (!ev) {
      err << "not embedded: " << ev.reason << '\n';
      return kExitVerification;
    }
  } catch (const std::invalid_argument& e) {
    err << "not embedded: " << e.what() << '\n';
    return kExitVerification;
  }
  out << "embedded: ok\n";

  const std::size_t sticks = stick_count(poly.vertices);
  if (poly.sticks && *poly.sticks != static_cast<long>(sticks)) {
    err << "stick count mismatch: stored " << *poly.sticks << ", counted " << sticks << '\n';
    return kExitVerification;
  }
  const Rational bound = theorem_bound(ap.n());
  if (Rational(static_cast<long>(sticks)) > bound) {
    err << "bound violated: " << sticks << " sticks > " << to_string(bound) << '\n';
    return kExitVerification;
  }
  out << "sticks: " << sticks << " <= " << to_string(bound) << '\n';

  MatchReport mr;
  try {
    ProjectedDiagram pd = project(poly.vertices);
    mr = match(diagram(ap), pd.diagram);
  } catch (const std::exception& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  }
  out << "determinant: " << mr.det1 << " vs " << mr.det2 << '\n';
  out << "alexander: " << mr.alex1.str() << " vs " << mr.alex2.str() << '\n';
  if (!mr.consistent) {
    err << "invariant mismatch\n";
    return kExitInvariantMismatch;
  }
  out << "invariants: consistent\n";
  return kExitOk;
}

inline int cmd_simplify(const Options& o, std::ostream& out, std::ostream& err) {
  ArcPresentation ap;
  try {
    ap = load_valid_arc(o.input, 2);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  const std::size_t start = ap.n();
  try {
    while (auto next = destabilize_top(ap)) {
      if (!match(diagram(ap), diagram(*next)).consistent) {
        err << "invariant mismatch after destabilizing " << ap.n() << " chords\n";
        return kExitInvariantMismatch;
      }
      ap = std::move(*next);
    }
  } catch (const std::exception& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  }
  err << "simplified " << start << " -> " << ap.n() << " chords\n";
  try {
    if (o.out.empty())
      out << serialize_arc(ap);
    else
      write_file(o.out, serialize_arc(ap));
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitOk;
}

inline int cmd_random(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n < 2 || o.count < 1) {
    err << "error: random needs --n >= 2 and --count >= 1\n";
    return kExitInvalidInput;
  }
  if (o.out.empty() && o.count > 1) {
    err << "error: --out DIR is required when --count > 1\n";
    return kExitInvalidInput;
  }
  const std::size_t n = static_cast<std::size_t>(o.n);
  if (o.out.empty()) {
    out << serialize_arc(random_presentation(n, o.seed));
    return kExitOk;
  }
  try {
    std::filesystem::create_directories(o.out);
    for (long i = 0; i < o.count; ++i) {
      std::uint64_t s = o.seed + static_cast<std::uint64_t>(i);
      auto path = std::filesystem::path(o.out) / (random_name(n, s) + ".arc");
      write_file(path.string(), serialize_arc(random_presentation(n, s)));
      out << path.string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitOk;
}

inline int cmd_batch(const Options& o, std::ostream& out, std::ostream& err) {
  BuildOptions opt;
  try {
    opt.top_reduction = !o.no_top;
    opt.max_extension = max_extension_from_env();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  std::vector<BatchRow> rows;
  if (o.inputs.empty()) {
    if (o.n < 3 || o.count < 1) {
      err << "error: batch needs input files, or --n >= 3 with --count\n";
      return kExitInvalidInput;
    }
    const std::size_t n = static_cast<std::size_t>(o.n);
    for (long i = 0; i < o.count; ++i) {
      std::uint64_t s = o.seed + static_cast<std::uint64_t>(i);
      rows.push_back(batch_row(random_name(n, s), random_presentation(n, s), opt, std::to_string(s), err));
    }
  } else {
    for (const auto& path : collect_arc_files(o.inputs)) {
      std::string id = path.stem().string();
      ArcPresentation ap;
      try {
        ap = load_valid_arc(path.string(), 3);
      } catch (const std::exception& e) {
        err << id << ": invalid input: " << e.what() << '\n';
        BatchRow bad;
        bad.id = id;
        bad.top_reduction = "error:invalid-input";
        bad.exit_code = kExitInvalidInput;
        rows.push_back(std::move(bad));
        continue;
      }
      rows.push_back(batch_row(id, ap, opt, "", err));
    }
  }

  std::string csv = std::string(kBatchHeader) + "\n";
  int code = kExitOk;
  for (const auto& r : rows) {
    csv += csv_line(r) + "\n";
    code = worse(code, r.exit_code);
  }
  try {
    if (o.csv.empty())
      out << csv;
    else
      write_file(o.csv, csv);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return code;
}

inline int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<BoundReport> rows;
  try {
    rows = bound_table(o.cmin, o.cmax, o.nonalternating_prime);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  std::ostringstream csv;
  csv << "c,a_upper,negami_lower,negami_lower_approx,negami_lower_ceil,negami_upper,huh_oh_upper\n";
  for (const auto& r : rows)
    csv << r.c << ',' << r.a_upper << ',' << r.negami.lower.symbolic() << ','
        << r.negami.lower.decimal() << ',' << r.negami.lower.ceiling() << ',' << r.negami.upper << ','
        << to_string(r.huh_oh) << '\n';
  if (!o.csv.empty()) {
    try {
      write_file(o.csv, csv.str());
    } catch (const IoError& e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalidInput;
    }
    return kExitOk;
  }
  out << std::left << std::setw(5) << "c" << std::setw(9) << "a_upper" << std::setw(20)
      << "negami_lower" << std::setw(9) << "~" << std::setw(6) << "ceil" << std::setw(14)
      << "negami_upper" << "huh_oh_upper\n";
  for (const auto& r : rows)
    out << std::left << std::setw(5) << r.c << std::setw(9) << r.a_upper << std::setw(20)
        << r.negami.lower.symbolic() << std::setw(9) << r.negami.lower.decimal() << std::setw(6)
        << r.negami.lower.ceiling().get_str() << std::setw(14) << r.negami.upper
        << to_string(r.huh_oh) << '\n';
  return kExitOk;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stick knots from arc presentations with at most 3(n-1)/2 sticks", "stickbound"};
  app.require_subcommand(1);
  detail::Options o;

  auto* build = app.add_subcommand("build", "Build an embedded stick knot from an .arc file");
  build->add_option("input", o.input, "Arc presentation file")->required();
  build->add_option("--out", o.out, "Polygon JSON path (default stdout)");
  build->add_option("--obj", o.obj, "Also write an OBJ polyline");
  build->add_flag("--no-top-reduction", o.no_top, "Stop before the final top move");

  auto* verify = app.add_subcommand("verify", "Re-check a stored polygon against its presentation");
  verify->add_option("input", o.input, "Arc presentation file")->required();
  verify->add_option("polygon", o.polygon, "Polygon JSON file")->required();

  auto* simplify = app.add_subcommand("simplify", "Apply top destabilizations while possible");
  simplify->add_option("input", o.input, "Arc presentation file")->required();
  simplify->add_option("--out", o.out, "Output .arc path (default stdout)");

  auto* random = app.add_subcommand("random", "Generate random arc presentations");
  random->add_option("--n", o.n, "Number of chords")->required();
  random->add_option("--seed", o.seed, "First seed");
  random->add_option("--count", o.count, "Number of presentations (seeds seed..seed+count-1)");
  random->add_option("--out", o.out, "Output directory (default stdout, count 1 only)");

  auto* batch = app.add_subcommand("batch", "Build many presentations and write a CSV report");
  batch->add_option("inputs", o.inputs, ".arc files or directories");
  batch->add_option("--n", o.n, "Chords per random instance when no inputs are given");
  batch->add_option("--seed", o.seed, "First seed for random instances");
  batch->add_option("--count", o.count, "Number of random instances");
  batch->add_option("--csv", o.csv, "CSV path (default stdout)");
  batch->add_flag("--no-top-reduction", o.no_top, "Stop before the final top move");

  auto* bounds = app.add_subcommand("bounds", "Print crossing-number bound table");
  bounds->add_option("--cmin", o.cmin, "Smallest crossing number");
  bounds->add_option("--cmax", o.cmax, "Largest crossing number");
  bounds->add_flag("--nonalternating-prime", o.nonalternating_prime, "Use the non-alternating prime bounds");
  bounds->add_option("--csv", o.csv, "Write CSV instead of the table");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; every other parse error is invalid input.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalidInput;
  }

  if (build->parsed()) return detail::cmd_build(o, out, err);
  if (verify->parsed()) return detail::cmd_verify(o, out, err);
  if (simplify->parsed()) return detail::cmd_simplify(o, out, err);
  if (random->parsed()) return detail::cmd_random(o, out, err);
  if (batch->parsed()) return detail::cmd_batch(o, out, err);
  return detail::cmd_bounds(o, out, err);
}

}  // namespace stickbound
