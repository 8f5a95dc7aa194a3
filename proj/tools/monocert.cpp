#include <charconv>
#include <climits>
#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "monocert/exact_verifier.hpp"
#include "monocert/oracle.hpp"
#include "monocert/pipeline.hpp"

namespace {

using namespace monocert;

constexpr int kExitError = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitUsage = 64;
constexpr int kExitBadData = 65;

// --workers beats MONOCERT_WORKERS beats the hardware thread count.
int default_workers() {
  if (const char* raw = std::getenv("MONOCERT_WORKERS")) {
    int value = 0;
    const char* end = raw + std::string_view(raw).size();
    const auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec == std::errc{} && ptr == end && value >= 1) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

int scaled_iterations(int base, int multiplier) {
  const long long scaled = static_cast<long long>(base) * multiplier;
  return scaled > INT_MAX ? INT_MAX : static_cast<int>(scaled);
}

std::vector<BigInt> parse_certificate_vector(std::string_view text) {
  std::vector<BigInt> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of(",-", pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view tok = text.substr(pos, end - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos)
      throw std::invalid_argument("malformed certificate component '" + std::string(tok) + "'");
    BigInt value;
    value.set_str(std::string(tok), 10);
    out.push_back(std::move(value));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

struct GenOptions {
  CampaignConfig cfg;
  int run() const {
    const CampaignSummary summary = run_campaign(cfg);
    std::cout << format_summary(summary) << '\n';
    if (summary.undetermined > 0) {
      std::cout << "undetermined assignments listed in " << cfg.output_path << ".undetermined"
                << '\n';
      return kExitUndetermined;
    }
    return 0;
  }
};

struct VerifyOptions {
  std::string path;
  int vertex_count = 0;
  int workers = 1;
  bool complete = false;
  int run() const {
    const VerifySummary summary = verify_file(path, vertex_count, workers);
    std::cout << format_summary(summary) << '\n';
    if (summary.invalid > 0) return kExitError;
    if (complete && (summary.missing > 0 || summary.duplicates > 0)) return kExitError;
    return 0;
  }
};

struct SingleOptions {
  int vertex_count = 0;
  std::string assignment;
  std::string certificate;
  SolverConfig solver;
  std::vector<int> effort_ladder = {1, 10};

  int verify_given() const {
    IntegerCertificate cert;
    cert.assignment = parse_assignment(vertex_count, assignment);
    cert.coefficients = parse_certificate_vector(certificate);
    const VerificationReport report = verify_certificate(cert);
    if (report.valid) {
      std::cout << "VALID\n";
      return 0;
    }
    std::cout << "INVALID: ";
    if (report.failure_index)
      std::cout << "pivot " << *report.failure_index + 1 << " is not positive\n";
    else
      std::cout << "coefficients must all be positive\n";
    return kExitError;
  }

  int solve_and_print() const {
    const VertexAssignment a = parse_assignment(vertex_count, assignment);
    const FloatSystem sys = build_float_system(a);
    std::string last_diagnostic;
    bool certified_but_unverified = false;
    for (int multiplier : effort_ladder) {
      SolverConfig rung = solver;
      rung.max_iterations = scaled_iterations(solver.max_iterations, multiplier);
      const CertificateCandidate cand = solve_certificate(sys, a, rung);
      if (cand.status != SolveStatus::Certified) {
        last_diagnostic = cand.diagnostic;
        certified_but_unverified = false;
        continue;
      }
      certified_but_unverified = true;
      for (long denominator : {100L, 10000L, 100000000L}) {
        IntegerCertificate cert;
        try {
          cert = round_to_integer_certificate(cand, denominator);
        } catch (const RoundingFailure&) {
          continue;
        }
        if (!verify_certificate(cert).valid) continue;
        for (std::size_t k = 0; k < cert.coefficients.size(); ++k) {
          if (k) std::cout << '-';
          std::cout << cert.coefficients[k].get_str();
        }
        std::cout << '\n';
        return 0;
      }
    }
    if (certified_but_unverified) {
      std::cerr << "certificate found numerically but exact verification rejected it\n";
      return kExitError;
    }
    std::cout << "UNDETERMINED\n";
    if (!last_diagnostic.empty()) std::cerr << last_diagnostic << '\n';
    return kExitUndetermined;
  }

  int run() const { return certificate.empty() ? solve_and_print() : verify_given(); }
};

struct ProbeOptions {
  int vertex_count = 0;
  std::string assignment;
  int dim = 2;
  int restarts = 100;
  std::uint64_t seed = 0;
  double margin = 0.0;
  int run() const {
    const VertexAssignment a = parse_assignment(vertex_count, assignment);
    const auto point = search_feasible_point(a, dim, restarts, seed, margin);
    if (!point) {
      std::cerr << "no feasible point found after " << restarts << " restarts\n";
      return kExitNotFound;
    }
    std::cout << format_probe_point(*point);
    std::cout << "penalty " << point->penalty << '\n';
    return 0;
  }
};

struct SummaryOptions {
  std::string path;
  int workers = 1;
  int run() const {
    std::cout << report_summary(path, workers);
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certificate factory and exact verifier for mono-unstable skeleton search"};
  app.require_subcommand(1);
  const int workers = default_workers();

  GenOptions gen;
  gen.cfg.workers = workers;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen", "enumerate all assignments for a vertex count and certify each one");
  gen_cmd->add_option("--v,--vertices,-V", gen.cfg.vertex_count, "number of vertices")
      ->required();
  gen_cmd->add_option("--out,--output,-o", gen.cfg.output_path, "certificate CSV path")
      ->required();
  gen_cmd->add_option("--workers", gen.cfg.workers, "worker threads");
  gen_cmd->add_option("--seed", gen.cfg.solver.seed,
                      "reserved; the default solver is deterministic");
  gen_cmd->add_option("--checkpoint-interval", gen.cfg.checkpoint_interval,
                      "assignments per flushed chunk");
  gen_cmd->add_flag("--resume", gen.cfg.resume, "continue from an existing checkpoint");
  gen_cmd->add_option("--limit", gen.cfg.limit,
                      "process only the lexicographically first N assignments");
  gen_cmd->add_option("--max-iterations", gen.cfg.solver.max_iterations,
                      "solver iteration budget before the effort ladder");
  gen_cmd->add_option("--z-threshold", gen.cfg.solver.z_threshold,
                      "minimum attained z for a numeric certificate");
  gen_cmd->add_option("--effort", gen.cfg.effort_ladder, "iteration multipliers tried in order")
      ->delimiter(',');
  gen_cmd->add_option("--stop-after-chunks", gen.cfg.stop_after_chunks,
                      "interrupt after N chunks (testing aid)");

  VerifyOptions verify;
  verify.workers = workers;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "re-verify a certificate CSV with exact arithmetic");
  verify_cmd->add_option("file", verify.path, "certificate CSV path");
  verify_cmd->add_option("--in", verify.path, "certificate CSV path (alternative to positional)");
  verify_cmd->add_option("--v,--vertices,-V", verify.vertex_count,
                         "expected vertex count (0 = take from file)");
  verify_cmd->add_option("--workers", verify.workers, "worker threads");
  verify_cmd->add_flag("--complete", verify.complete,
                       "also fail when assignments are missing or duplicated");

  SingleOptions single;
  CLI::App* single_cmd =
      app.add_subcommand("single", "certify one assignment, or verify a given certificate");
  single_cmd->add_option("--v,--vertices,-V", single.vertex_count, "number of vertices")
      ->required();
  single_cmd->add_option("--assignment,-a", single.assignment,
                         "j_2..j_V, comma- or dash-separated")
      ->required();
  single_cmd->add_option("--certificate,-c", single.certificate,
                         "verify this c_2..c_V instead of solving");
  single_cmd->add_option("--max-iterations", single.solver.max_iterations,
                         "solver iteration budget before the effort ladder");
  single_cmd->add_option("--z-threshold", single.solver.z_threshold,
                         "minimum attained z for a numeric certificate");
  single_cmd
      ->add_option("--effort", single.effort_ladder, "iteration multipliers tried in order")
      ->delimiter(',');

  ProbeOptions probe;
  CLI::App* probe_cmd = app.add_subcommand(
      "probe", "search numerically for a vertex configuration satisfying an assignment");
  probe_cmd->add_option("--v,--vertices,-V", probe.vertex_count, "number of vertices")
      ->required();
  probe_cmd->add_option("--assignment,-a", probe.assignment,
                        "j_2..j_V, comma- or dash-separated")
      ->required();
  probe_cmd->add_option("--dim,-d", probe.dim, "ambient dimension (1, 2, or 3)");
  probe_cmd->add_option("--restarts", probe.restarts, "random restarts");
  probe_cmd->add_option("--seed", probe.seed, "restart seed");
  probe_cmd->add_option("--margin", probe.margin, "required slack in every shadow inequality");

  SummaryOptions summary;
  summary.workers = workers;
  CLI::App* summary_cmd =
      app.add_subcommand("summary", "report totals and statistics for a certificate CSV");
  summary_cmd->add_option("file", summary.path, "certificate CSV path");
  summary_cmd->add_option("--in", summary.path, "certificate CSV path (alternative to positional)");
  summary_cmd->add_option("--workers", summary.workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify_cmd->parsed() && verify.path.empty())
      throw std::invalid_argument("verify needs a file (positional or --in)");
    if (summary_cmd->parsed() && summary.path.empty())
      throw std::invalid_argument("summary needs a file (positional or --in)");
    if (gen_cmd->parsed()) return gen.run();
    if (verify_cmd->parsed()) return verify.run();
    if (single_cmd->parsed()) return single.run();
    if (probe_cmd->parsed()) return probe.run();
    if (summary_cmd->parsed()) return summary.run();
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line_number << ": " << e.what() << '\n';
    return kExitBadData;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitBadData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
