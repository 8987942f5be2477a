// qclock: batch analysis of monomial presentations, witnesses and periodic
// complexes. Exit codes: 0 ok / satisfied / gradable, 1 clock violated or not
// gradable, 2 input or parse error, 3 guard limit reached, 4 internal error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qclock/qclock.hpp"

namespace {

using namespace qclock;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;
constexpr int kExitInternal = 4;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string input;
  std::string output;
  std::size_t cycle_cap = 100000;
  bool all_cycles = false;
  std::optional<std::size_t> cycle;
  bool oracle = false;
  std::optional<std::int64_t> bound;
  std::size_t period = 1;
};

/// Raised to attach the input file name to an error.
struct FileError {
  std::string file;
  Error error;
};

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_input("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_input("cannot write '" + path + "'");
  out << text;
}

template <class F>
auto with_file(const std::string& path, F&& f) {
  try {
    return f(read_input(path));
  } catch (const Error& e) {
    throw FileError{path, e};
  }
}

void add_warnings(Report& r, const std::string& file, const std::vector<Diagnostic>& ds) {
  for (const Diagnostic& d : ds) r.warnings.push_back(file + ":" + to_string(d.pos) + ": " + d.message);
}

void add_loop_warning(Report& r, const Quiver& q) {
  for (const Arrow& a : q.arrows())
    if (a.source == a.target) {
      r.warnings.push_back("quiver has loops; they are treated as 1-cycles, although such "
                           "algebras have infinite global dimension");
      return;
    }
}

int emit(const Options& o, const Report& r, int code) {
  if (o.format == "json") {
    std::cout << nlohmann::json(r).dump(2) << '\n';
  } else {
    std::cout << render_text(r, o.all_cycles);
    if (r.artifact && o.output.empty()) std::cout << '\n' << *r.artifact;
  }
  return code;
}

// --- subcommands --------------------------------------------------------------

Report new_report(std::string command, std::string input) {
  Report r;
  r.command = std::move(command);
  r.input = std::move(input);
  return r;
}

int run_classify(const Options& o) {
  auto pres = with_file(o.input, [](const std::string& t) { return parse_presentation(t); });
  Report r = new_report("classify", o.input);
  r.classification = classify_report(pres, o.cycle_cap);
  add_loop_warning(r, pres.quiver());
  return emit(o, r, kExitOk);
}

std::string clock_interpretation(const MonomialPresentation& pres, const ClockVerdict& v) {
  if (v.satisfied) return "";
  if (is_quadratic(pres)) return kNonGradableInterpretation;
  return std::string(kNonGradableInterpretation) +
         " (conjectural: some relation is longer than 2)";
}

int run_clock(const Options& o) {
  auto pres = with_file(o.input, [](const std::string& t) { return parse_presentation(t); });
  Report r = new_report("clock", o.input);
  ClockVerdict v = satisfies_clock(pres, o.cycle_cap);
  r.clock = clock_report(pres, v);
  r.interpretation = clock_interpretation(pres, v);
  add_loop_warning(r, pres.quiver());
  return emit(o, r, v.satisfied ? kExitOk : kExitNegative);
}

int run_witness(const Options& o) {
  auto pres = share(with_file(o.input, [](const std::string& t) { return parse_presentation(t); }));
  std::optional<std::size_t> idx;
  if (o.cycle) {
    if (*o.cycle == 0) throw_input("--cycle is 1-based");
    idx = *o.cycle - 1;
  }
  Witness w = witness_diffmod(pres, idx, o.cycle_cap);
  Report r = new_report("witness", o.input);
  r.witness = witness_report(w);
  r.grading = grading_report(w.grading);
  r.interpretation = w.conjectural ? std::string(kNonGradableInterpretation) +
                                         " (conjectural: some relation is longer than 2)"
                                   : kNonGradableInterpretation;
  add_loop_warning(r, pres->quiver());

  std::ostringstream dm;
  dm << "# non-gradable witness for cycle #" << w.cycle_index + 1 << " of " << pres->name()
     << "\n# eps = " << r.witness->eps << "\n\n"
     << render_diffmod(w.module);
  r.artifact = dm.str();
  if (!o.output.empty()) write_output(o.output, *r.artifact);
  return emit(o, r, kExitOk);
}

int run_grade(const Options& o) {
  std::vector<Diagnostic> warnings;
  auto dm = with_file(o.input, [&](const std::string& t) { return load_diffmod(t, &warnings); });
  Report r = new_report("grade", o.input);
  add_warnings(r, o.input, warnings);
  GradingResult g = strict_grading(dm);
  r.grading = grading_report(g);
  if (o.oracle) {
    auto bound = o.bound.value_or(static_cast<std::int64_t>(dm.size()));
    if (bound < 0) throw_input("--bound must be non-negative");
    auto oracle = strict_grading_oracle(dm, bound);
    bool agrees = oracle.has_value() == g.assignment.has_value() &&
                  (!oracle || *oracle == *g.assignment);
    if (!oracle && g.assignment) {
      auto spread = std::minmax_element(g.assignment->degrees.begin(), g.assignment->degrees.end());
      if (spread.first != g.assignment->degrees.end() &&
          std::max(-*spread.first, *spread.second) > bound)
        agrees = true;  // degrees exceed the search window
    }
    r.grading->oracle_agrees = agrees;
    if (!agrees) {
      emit(o, r, kExitInternal);
      throw_internal("strict grading and the exhaustive oracle disagree");
    }
  }
  return emit(o, r, g.assignment ? kExitOk : kExitNegative);
}

/// Random reordering of summands within each position.
PositionPermutation random_permutation(const PeriodicComplex& p, std::mt19937_64& rng) {
  PositionPermutation perm(p.period());
  for (std::size_t r = 0; r < p.period(); ++r) {
    perm[r].resize(p.position(r).size());
    std::iota(perm[r].begin(), perm[r].end(), 0);
    std::shuffle(perm[r].begin(), perm[r].end(), rng);
  }
  return perm;
}

std::vector<std::size_t> position_sizes(const PeriodicComplex& p) {
  std::vector<std::size_t> out;
  for (const auto& pos : p.positions()) out.push_back(pos.size());
  return out;
}

bool same_summand_multiset(const PeriodicComplex& a, const PeriodicComplex& b) {
  std::vector<VertexId> x, y;
  for (const auto& p : a.positions()) x.insert(x.end(), p.begin(), p.end());
  for (const auto& p : b.positions()) y.insert(y.end(), p.begin(), p.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

int finish_periodic(const Options& o, Report& r) {
  bool ok = std::all_of(r.periodic->checks.begin(), r.periodic->checks.end(),
                        [](const CheckReport& c) { return c.passed; });
  int code = emit(o, r, ok ? kExitOk : kExitInternal);
  if (!ok) throw_internal("periodic self-check failed");
  return code;
}

int run_fold(const Options& o) {
  if (o.period == 0) throw_input("-n must be at least 1");
  std::vector<Diagnostic> warnings;
  auto x = with_file(o.input, [&](const std::string& t) { return load_complex(t, &warnings); });
  std::mt19937_64 rng(o.seed);
  PeriodicComplex p = fold(x, o.period);
  Report r = new_report("fold", o.input);
  add_warnings(r, o.input, warnings);
  PeriodicReport pr{"fold", o.period, position_sizes(p), {}};
  std::size_t degree_total = 0;
  for (const auto& t : x.terms()) degree_total += t.size();
  pr.checks.push_back({"summand count preserved", p.total_size() == degree_total});
  pr.checks.push_back({"collapse(fold(x,n)) = fold(x,1) up to permutation",
                       permutation_equal(collapse(p), fold(x, 1)).has_value()});
  pr.checks.push_back({"fold recognised after a seeded reshuffle",
                       permutation_equal(p, permuted(p, random_permutation(p, rng))).has_value()});
  r.periodic = std::move(pr);
  r.artifact = render_periodic(p);
  if (!o.output.empty()) write_output(o.output, *r.artifact);
  return finish_periodic(o, r);
}

int run_collapse(const Options& o) {
  std::vector<Diagnostic> warnings;
  auto p = with_file(o.input, [&](const std::string& t) { return load_periodic(t, &warnings); });
  std::mt19937_64 rng(o.seed);
  PeriodicComplex c = collapse(p);
  Report r = new_report("collapse", o.input);
  add_warnings(r, o.input, warnings);
  PeriodicReport pr{"collapse", 1, position_sizes(c), {}};
  pr.checks.push_back({"summand multiset preserved", same_summand_multiset(p, c)});
  PeriodicComplex shuffled = permuted(p, random_permutation(p, rng));
  pr.checks.push_back({"collapse is invariant under a seeded reshuffle",
                       permutation_equal(collapse(shuffled), c).has_value()});
  r.periodic = std::move(pr);
  r.artifact = render_periodic(c);
  if (!o.output.empty()) write_output(o.output, *r.artifact);
  return finish_periodic(o, r);
}

int run_decompose(const Options& o) {
  if (o.period == 0) throw_input("-n must be at least 1");
  std::vector<Diagnostic> warnings;
  auto x = with_file(o.input, [&](const std::string& t) { return load_complex(t, &warnings); });
  std::mt19937_64 rng(o.seed);
  std::vector<PeriodicComplex> parts = decompose_residues(x, o.period);
  PeriodicComplex sum = direct_sum(parts);
  PeriodicComplex folded = fold(x, o.period);
  Report r = new_report("decompose", o.input);
  add_warnings(r, o.input, warnings);
  PeriodicReport pr{"decompose", o.period, position_sizes(sum), {}};
  pr.checks.push_back({"direct sum of residue summands = include(fold(x,1),n)",
                       permutation_equal(sum, include(fold(x, 1), o.period)).has_value()});
  for (std::size_t k = 0; k < parts.size(); ++k)
    pr.checks.push_back({"summand " + std::to_string(k) + " = rotate(fold(x,n)," + std::to_string(k) + ")",
                         permutation_equal(parts[k], rotate(folded, static_cast<std::int64_t>(k)))
                             .has_value()});
  pr.checks.push_back({"direct sum recognised after a seeded reshuffle",
                       permutation_equal(sum, permuted(sum, random_permutation(sum, rng))).has_value()});
  r.periodic = std::move(pr);
  std::string all;
  for (std::size_t k = 0; k < parts.size(); ++k)
    all += (k ? "\n" : "") + std::string("# residue summand ") + std::to_string(k) + "\n" +
           render_periodic(parts[k]);
  r.artifact = all;
  if (!o.output.empty()) write_output(o.output, *r.artifact);
  return finish_periodic(o, r);
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::input:
    case ErrorKind::parse:
      return kExitInput;
    case ErrorKind::guard:
      return kExitGuard;
    case ErrorKind::internal:
      return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Clock condition, non-gradable witnesses and periodic complexes for monomial algebras"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for randomized self-checks")->capture_default_str();

  auto input_opt = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", o.input, what)->required();
    sub->fallthrough();
  };

  auto* classify = app.add_subcommand("classify", "Classify a .quiver presentation");
  input_opt(classify, ".quiver file");
  classify->add_option("--cycle-cap", o.cycle_cap, "Maximum number of simple cycles")->capture_default_str();

  auto* clock = app.add_subcommand("clock", "Decide the clock condition");
  input_opt(clock, ".quiver file");
  clock->add_flag("--all-cycles", o.all_cycles, "List every cycle in text output");
  clock->add_option("--cycle-cap", o.cycle_cap, "Maximum number of simple cycles")->capture_default_str();

  auto* witness = app.add_subcommand("witness", "Build a non-gradable differential module");
  input_opt(witness, ".quiver file");
  witness->add_option("--cycle", o.cycle, "Cycle number as listed by 'clock' (1-based)");
  witness->add_option("-o,--output", o.output, "Write the witness .dm here");
  witness->add_option("--cycle-cap", o.cycle_cap, "Maximum number of simple cycles")->capture_default_str();

  auto* grade = app.add_subcommand("grade", "Strict grading of a .dm differential module");
  input_opt(grade, ".dm file");
  grade->add_flag("--oracle", o.oracle, "Cross-check with exhaustive search");
  grade->add_option("--bound", o.bound, "Oracle degree bound (default: summand count)");

  auto* fold_cmd = app.add_subcommand("fold", "Fold a bounded complex to an n-periodic one");
  input_opt(fold_cmd, ".cpx file");
  fold_cmd->add_option("-n", o.period, "Period")->required();
  fold_cmd->add_option("-o,--output", o.output, "Write the .pcx here");

  auto* collapse_cmd = app.add_subcommand("collapse", "Collapse an n-periodic complex to a 1-periodic one");
  input_opt(collapse_cmd, ".pcx file");
  collapse_cmd->add_option("-o,--output", o.output, "Write the .pcx here");

  auto* decompose = app.add_subcommand("decompose", "Residue decomposition of include(fold(x,1),n)");
  input_opt(decompose, ".cpx file");
  decompose->add_option("-n", o.period, "Period")->required();
  decompose->add_option("-o,--output", o.output, "Write the summands here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*classify) return run_classify(o);
    if (*clock) return run_clock(o);
    if (*witness) return run_witness(o);
    if (*grade) return run_grade(o);
    if (*fold_cmd) return run_fold(o);
    if (*collapse_cmd) return run_collapse(o);
    if (*decompose) return run_decompose(o);
  } catch (const FileError& e) {
    const char* sep = e.error.kind() == ErrorKind::parse ? ":" : ": ";
    std::cerr << "qclock: " << e.file << sep << e.error.what() << '\n';
    return exit_code_for(e.error.kind());
  } catch (const Error& e) {
    std::cerr << "qclock: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "qclock: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
