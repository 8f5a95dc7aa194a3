#include "monocert/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <climits>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>
#include <thread>
#include <unordered_set>

#include "monocert/exact_verifier.hpp"

namespace monocert {

namespace {

namespace fs = std::filesystem;

constexpr std::string_view kCsvHeader = "V,assignment,certificate";
constexpr long kDenominatorLadder[] = {100, 10000, 100000000};
constexpr int kCheckpointVersion = 1;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Per-assignment work: solve, round, exactly verify, escalating effort and
// rounding precision until something sticks.

struct RowOutcome {
  bool certified = false;
  std::string csv_row;            // without trailing newline
  std::string undetermined_row;   // dash-joined assignment
  std::uint64_t verify_failures = 0;
};

int scaled_iterations(int base, int multiplier) {
  const long long scaled = static_cast<long long>(base) * multiplier;
  return scaled > INT_MAX ? INT_MAX : static_cast<int>(scaled);
}

RowOutcome process_assignment(int vertex_count, std::uint64_t index, const SolverConfig& solver,
                              const std::vector<int>& effort_ladder) {
  const VertexAssignment a = assignment_from_index(vertex_count, index);
  const FloatSystem sys = build_float_system(a);

  RowOutcome outcome;
  bool certified_but_unverified = false;
  for (int multiplier : effort_ladder) {
    SolverConfig rung = solver;
    rung.max_iterations = scaled_iterations(solver.max_iterations, multiplier);
    const CertificateCandidate cand = solve_certificate(sys, a, rung);
    if (cand.status != SolveStatus::Certified) {
      certified_but_unverified = false;
      continue;
    }
    certified_but_unverified = true;
    for (long denominator : kDenominatorLadder) {
      IntegerCertificate cert;
      try {
        cert = round_to_integer_certificate(cand, denominator);
      } catch (const RoundingFailure&) {
        continue;  // larger denominators may separate the components
      }
      const VerificationReport report = verify_certificate(cert);
      if (!report.valid) {
        ++outcome.verify_failures;
        continue;
      }
      outcome.certified = true;
      std::string row = std::to_string(vertex_count);
      row.push_back(',');
      row += format_assignment(a);
      row.push_back(',');
      for (std::size_t k = 0; k < cert.coefficients.size(); ++k) {
        if (k) row.push_back('-');
        row += cert.coefficients[k].get_str();
      }
      outcome.csv_row = std::move(row);
      return outcome;
    }
  }
  if (certified_but_unverified)
    throw CampaignAborted("assignment " + format_assignment(a) +
                          ": numerically certified but exact verification rejected every "
                          "rounding; this indicates a defect, not a mathematical outcome");
  outcome.undetermined_row = format_assignment(a);
  return outcome;
}

// Runs fn(k) for k in [0, count) across the workers, collecting outputs into
// index-addressed slots so the merge order never depends on scheduling.
template <typename Fn>
void parallel_for(std::uint64_t count, int workers, Fn&& fn) {
  const int usable = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), count));
  if (usable <= 1) {
    for (std::uint64_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(usable));
  pool.reserve(static_cast<std::size_t>(usable));
  for (int w = 0; w < usable; ++w) {
    const std::uint64_t lo = count * static_cast<std::uint64_t>(w) / usable;
    const std::uint64_t hi = count * static_cast<std::uint64_t>(w + 1) / usable;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::uint64_t k = lo; k < hi; ++k) fn(k);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Checkpointing. The file records how many assignments are durably flushed
// and the exact byte sizes of both outputs; resume truncates to those sizes,
// so an interruption between flush and checkpoint cannot duplicate rows.

struct Checkpoint {
  int vertex_count = 0;
  std::uint64_t limit = 0;
  std::uint64_t processed = 0;
  std::uint64_t certified = 0;
  std::uint64_t undetermined = 0;
  std::uint64_t verify_failures = 0;
  std::uint64_t csv_bytes = 0;
  std::uint64_t undetermined_bytes = 0;
};

void write_checkpoint(const std::string& path, const Checkpoint& ck) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << "monocert-ckpt " << kCheckpointVersion << '\n'
        << "vertex_count " << ck.vertex_count << '\n'
        << "limit " << ck.limit << '\n'
        << "processed " << ck.processed << '\n'
        << "certified " << ck.certified << '\n'
        << "undetermined " << ck.undetermined << '\n'
        << "verify_failures " << ck.verify_failures << '\n'
        << "csv_bytes " << ck.csv_bytes << '\n'
        << "undetermined_bytes " << ck.undetermined_bytes << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  fs::rename(tmp, path);  // atomic replacement on the same filesystem
}

std::optional<Checkpoint> read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) return std::nullopt;
  std::string magic;
  int version = -1;
  if (!(in >> magic >> version) || magic != "monocert-ckpt" || version != kCheckpointVersion)
    throw SchemaError("unrecognized checkpoint format in " + path);
  Checkpoint ck;
  std::string key;
  std::uint64_t value = 0;
  while (in >> key >> value) {
    if (key == "vertex_count")
      ck.vertex_count = static_cast<int>(value);
    else if (key == "limit")
      ck.limit = value;
    else if (key == "processed")
      ck.processed = value;
    else if (key == "certified")
      ck.certified = value;
    else if (key == "undetermined")
      ck.undetermined = value;
    else if (key == "verify_failures")
      ck.verify_failures = value;
    else if (key == "csv_bytes")
      ck.csv_bytes = value;
    else if (key == "undetermined_bytes")
      ck.undetermined_bytes = value;
    else
      throw SchemaError("unknown checkpoint field '" + key + "' in " + path);
  }
  return ck;
}

void truncate_to(const std::string& path, std::uint64_t size) {
  if (!fs::exists(path) || fs::file_size(path) < size)
    throw SchemaError(path + " is shorter than its checkpoint records");
  fs::resize_file(path, size);
}

std::uint64_t size_of(const std::string& path) {
  return static_cast<std::uint64_t>(fs::file_size(path));
}

// ---------------------------------------------------------------------------
// Certificate file parsing, shared by verification and reporting.

struct ParsedRow {
  std::uint64_t line = 0;
  VertexAssignment assignment;
  std::vector<BigInt> coefficients;
};

struct ParsedFile {
  int vertex_count = 0;  // zero when the file has no data rows and no hint
  std::vector<ParsedRow> rows;
};

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = text.find(sep, pos);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
}

int parse_row_vertex_count(std::string_view field, std::uint64_t line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw ParseError(line, "malformed vertex count '" + std::string(field) + "'");
  return value;
}

std::vector<BigInt> parse_coefficients(std::string_view field, int vertex_count,
                                       std::uint64_t line) {
  std::vector<BigInt> out;
  for (std::string_view tok : split(field, '-')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError(line, "malformed coefficient '" + std::string(tok) + "'");
    BigInt value;
    value.set_str(std::string(tok), 10);
    out.push_back(std::move(value));
  }
  if (out.size() != static_cast<std::size_t>(vertex_count - 1))
    throw ParseError(line, "expected " + std::to_string(vertex_count - 1) + " coefficients, got " +
                               std::to_string(out.size()));
  return out;
}

ParsedFile parse_certificate_file(const std::string& path, int expected_vertex_count) {
  std::ifstream in(path);
  if (!in.is_open()) throw std::runtime_error("cannot open " + path);

  std::string line;
  std::uint64_t line_number = 1;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw SchemaError(path + ": first line must be '" + std::string(kCsvHeader) + "'");

  ParsedFile out;
  out.vertex_count = expected_vertex_count;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string_view> fields = split(line, ',');
    if (fields.size() != 3)
      throw ParseError(line_number, "expected 3 comma-separated fields, got " +
                                        std::to_string(fields.size()));
    const int v = parse_row_vertex_count(fields[0], line_number);
    if (out.vertex_count == 0)
      out.vertex_count = v;
    else if (v != out.vertex_count)
      throw SchemaError(path + " line " + std::to_string(line_number) + ": vertex count " +
                        std::to_string(v) + " does not match " +
                        std::to_string(out.vertex_count));
    ParsedRow row;
    row.line = line_number;
    try {
      row.assignment = parse_assignment(v, fields[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_number, e.what());
    }
    row.coefficients = parse_coefficients(fields[2], v, line_number);
    out.rows.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact re-verification of parsed rows.

struct RowAudit {
  bool valid = false;
  std::string reason;  // set when invalid
  BigInt max_pivot_denominator;
};

std::vector<RowAudit> audit_rows(const ParsedFile& file, int workers) {
  std::vector<RowAudit> audits(file.rows.size());
  parallel_for(file.rows.size(), workers, [&](std::uint64_t k) {
    const ParsedRow& row = file.rows[static_cast<std::size_t>(k)];
    RowAudit& audit = audits[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < row.coefficients.size(); ++i) {
      if (row.coefficients[i] <= 0) {
        audit.reason = "coefficient " + std::to_string(i + 2) + " is not positive";
        return;
      }
    }
    IntegerCertificate cert;
    cert.assignment = row.assignment;
    cert.coefficients = row.coefficients;
    const VerificationReport report = verify_certificate(cert);
    if (!report.valid) {
      audit.reason = "pivot " + std::to_string(report.failure_index.value_or(-1) + 1) +
                     " is not positive";
      return;
    }
    audit.valid = true;
    for (const Rational& p : report.pivots) {
      const BigInt den(p.get_den());
      if (den > audit.max_pivot_denominator) audit.max_pivot_denominator = den;
    }
  });
  return audits;
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1fs", s);
  return buf;
}

}  // namespace

void CampaignConfig::validate() const {
  (void)assignment_space_size(vertex_count);  // rejects V < 2
  if (vertex_count > 12)
    throw std::invalid_argument("campaigns support vertex counts between 2 and 12");
  if (workers < 1 || workers > 4096)
    throw std::invalid_argument("workers must be between 1 and 4096");
  if (output_path.empty()) throw std::invalid_argument("output path must not be empty");
  if (checkpoint_interval < 1)
    throw std::invalid_argument("checkpoint interval must be at least 1");
  solver.validate();
  if (effort_ladder.empty()) throw std::invalid_argument("effort ladder must not be empty");
  for (int rung : effort_ladder)
    if (rung < 1 || rung > 1000000)
      throw std::invalid_argument("effort ladder entries must be between 1 and 1000000");
}

CampaignSummary run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();

  const std::uint64_t space = assignment_space_size(cfg.vertex_count);
  const std::uint64_t target = cfg.limit == 0 ? space : std::min(space, cfg.limit);
  const std::string undetermined_path = cfg.output_path + ".undetermined";
  const std::string checkpoint_path = cfg.output_path + ".ckpt";

  Checkpoint state;
  state.vertex_count = cfg.vertex_count;
  state.limit = cfg.limit;
  if (cfg.resume) {
    const std::optional<Checkpoint> ck = read_checkpoint(checkpoint_path);
    if (!ck)
      throw std::runtime_error("no checkpoint at " + checkpoint_path +
                               "; run without resume to start fresh");
    if (ck->vertex_count != cfg.vertex_count)
      throw SchemaError("checkpoint was written for V=" + std::to_string(ck->vertex_count));
    if (ck->limit != cfg.limit)
      throw SchemaError("checkpoint was written with a different enumeration limit");
    truncate_to(cfg.output_path, ck->csv_bytes);
    truncate_to(undetermined_path, ck->undetermined_bytes);
    state = *ck;
  }

  std::ofstream csv, undetermined;
  if (state.processed == 0) {
    csv.open(cfg.output_path, std::ios::trunc);
    csv << kCsvHeader << '\n';
    undetermined.open(undetermined_path, std::ios::trunc);
  } else {
    csv.open(cfg.output_path, std::ios::app);
    undetermined.open(undetermined_path, std::ios::app);
  }
  if (!csv || !undetermined)
    throw std::runtime_error("cannot open outputs next to " + cfg.output_path);

  bool complete = true;
  std::uint64_t chunks_this_run = 0;
  std::vector<RowOutcome> results;
  while (state.processed < target) {
    const std::uint64_t chunk = std::min<std::uint64_t>(cfg.checkpoint_interval,
                                                        target - state.processed);
    results.assign(static_cast<std::size_t>(chunk), RowOutcome{});
    const std::uint64_t base = state.processed;
    parallel_for(chunk, cfg.workers, [&](std::uint64_t k) {
      results[static_cast<std::size_t>(k)] =
          process_assignment(cfg.vertex_count, base + k, cfg.solver, cfg.effort_ladder);
    });

    for (const RowOutcome& r : results) {
      if (r.certified) {
        csv << r.csv_row << '\n';
        ++state.certified;
      } else {
        undetermined << r.undetermined_row << '\n';
        ++state.undetermined;
      }
      state.verify_failures += r.verify_failures;
    }
    csv.flush();
    undetermined.flush();
    if (!csv || !undetermined) throw std::runtime_error("write failed near " + cfg.output_path);

    state.processed += chunk;
    state.csv_bytes = size_of(cfg.output_path);
    state.undetermined_bytes = size_of(undetermined_path);
    write_checkpoint(checkpoint_path, state);

    ++chunks_this_run;
    if (cfg.stop_after_chunks != 0 && chunks_this_run >= cfg.stop_after_chunks &&
        state.processed < target) {
      complete = false;
      break;
    }
  }

  if (complete) {
    csv.close();
    undetermined.close();
    fs::remove(checkpoint_path);
  }

  CampaignSummary summary;
  summary.vertex_count = cfg.vertex_count;
  summary.total = state.processed;  // equals certified + undetermined
  summary.certified = state.certified;
  summary.undetermined = state.undetermined;
  summary.verify_failures = state.verify_failures;
  summary.wall_time_seconds = seconds_since(start);
  summary.complete = complete;
  return summary;
}

VerifySummary verify_file(const std::string& path, int expected_vertex_count, int workers) {
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  const auto start = Clock::now();
  const ParsedFile file = parse_certificate_file(path, expected_vertex_count);
  const std::vector<RowAudit> audits = audit_rows(file, workers);

  VerifySummary s;
  s.vertex_count = file.vertex_count;
  s.rows = file.rows.size();
  std::unordered_set<std::uint64_t> seen, covered;
  for (std::size_t k = 0; k < file.rows.size(); ++k) {
    const std::uint64_t index = assignment_index(file.rows[k].assignment);
    if (!seen.insert(index).second) ++s.duplicates;
    if (audits[k].valid) {
      ++s.valid;
      covered.insert(index);
    } else {
      ++s.invalid;
      s.invalid_rows.emplace_back(file.rows[k].line, audits[k].reason);
    }
  }
  if (s.vertex_count != 0)
    s.missing = assignment_space_size(s.vertex_count) - covered.size();
  s.wall_time_seconds = seconds_since(start);
  return s;
}

std::string report_summary(const std::string& path, int workers) {
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  const auto start = Clock::now();
  const ParsedFile file = parse_certificate_file(path, 0);
  const std::vector<RowAudit> audits = audit_rows(file, workers);

  std::uint64_t valid = 0, invalid = 0, duplicates = 0;
  BigInt min_coefficient = 0, max_coefficient = 0, max_pivot_denominator = 0;
  std::vector<double> magnitudes;
  std::unordered_set<std::uint64_t> seen, covered;
  for (std::size_t k = 0; k < file.rows.size(); ++k) {
    const std::uint64_t index = assignment_index(file.rows[k].assignment);
    if (!seen.insert(index).second) ++duplicates;
    if (audits[k].valid) {
      ++valid;
      covered.insert(index);
      for (const BigInt& c : file.rows[k].coefficients) {
        if (magnitudes.empty() || c < min_coefficient) min_coefficient = c;
        if (magnitudes.empty() || c > max_coefficient) max_coefficient = c;
        magnitudes.push_back(c.get_d());
      }
      if (audits[k].max_pivot_denominator > max_pivot_denominator)
        max_pivot_denominator = audits[k].max_pivot_denominator;
    } else {
      ++invalid;
    }
  }

  std::ostringstream out;
  out << "certificate file: " << path << '\n';
  if (file.vertex_count == 0) {
    out << "no data rows\n";
    return out.str();
  }
  const std::uint64_t space = assignment_space_size(file.vertex_count);
  out << "vertex count: " << file.vertex_count << '\n'
      << "rows: " << file.rows.size() << " (valid " << valid << ", invalid " << invalid
      << ", duplicates " << duplicates << ", missing " << space - covered.size() << " of "
      << space << ")\n";
  if (valid > 0) {
    std::sort(magnitudes.begin(), magnitudes.end());
    const std::size_t count = magnitudes.size();
    const double median = count % 2 ? magnitudes[count / 2]
                                    : 0.5 * (magnitudes[count / 2 - 1] + magnitudes[count / 2]);
    char median_text[32];
    std::snprintf(median_text, sizeof(median_text), "%g", median);
    out << "coefficients: min " << min_coefficient.get_str() << ", median " << median_text
        << ", max " << max_coefficient.get_str() << '\n'
        << "largest pivot denominator: " << max_pivot_denominator.get_str() << '\n';
  }

  const std::string undetermined_path = path + ".undetermined";
  if (fs::exists(undetermined_path)) {
    std::ifstream in(undetermined_path);
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) entries.push_back(line);
    out << "undetermined sidecar: " << entries.size() << " assignments\n";
    for (std::size_t k = 0; k < entries.size() && k < 10; ++k)
      out << "  " << entries[k] << '\n';
    if (entries.size() > 10) out << "  ... and " << entries.size() - 10 << " more\n";
  }
  out << "wall time: " << format_seconds(seconds_since(start)) << '\n';
  return out.str();
}

std::string format_summary(const CampaignSummary& s) {
  std::ostringstream out;
  out << "campaign V=" << s.vertex_count << ": " << s.certified << "/" << s.total
      << " certified, " << s.undetermined << " undetermined, " << s.verify_failures
      << " verification retries (wall " << format_seconds(s.wall_time_seconds) << ")";
  if (!s.complete) out << "\ninterrupted mid-run; rerun with resume to continue";
  return out.str();
}

std::string format_summary(const VerifySummary& s) {
  std::ostringstream out;
  out << "verification V=" << s.vertex_count << ": " << s.rows << " rows, " << s.valid
      << " valid, " << s.invalid << " invalid, " << s.duplicates << " duplicates, " << s.missing
      << " missing (wall " << format_seconds(s.wall_time_seconds) << ")";
  constexpr std::size_t kShown = 20;
  for (std::size_t k = 0; k < s.invalid_rows.size() && k < kShown; ++k)
    out << "\n  line " << s.invalid_rows[k].first << ": " << s.invalid_rows[k].second;
  if (s.invalid_rows.size() > kShown)
    out << "\n  ... and " << s.invalid_rows.size() - kShown << " more";
  return out.str();
}

}  // namespace monocert
