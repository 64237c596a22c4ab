#include "amc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "amc/atlir_checker.hpp"
#include "amc/error.hpp"
#include "amc/parser.hpp"
#include "amc/translate.hpp"
#include "ini.hpp"

namespace amc {

const char* to_string(Engine e) { return e == Engine::Atlir ? "atlir" : "aemc"; }

std::optional<Engine> parse_engine(std::string_view text) {
  if (text == "atlir") return Engine::Atlir;
  if (text == "aemc") return Engine::Aemc;
  return std::nullopt;
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "table" || text == "aligned-table") return ReportFormat::Table;
  return std::nullopt;
}

CheckReport run_check(const Icgs& model, StateId q, std::string_view text, const CheckRequest& request,
                      const AliasMap& aliases) {
  CheckReport r;
  r.formula = std::string(text);
  r.engine = request.engine;
  Deadline deadline = Deadline::after(request.timeout);
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  try {
    if (request.engine == Engine::Atlir) {
      AtlFormula f = parse_atl(text);
      AtlirOptions o;
      o.deadline = deadline;
      AtlirChecker checker(model, o, aliases);
      AtlirReport a = checker.check(q, f);
      r.truth = a.truth;
      r.strategies_examined = a.strategies_examined;
      if (a.witness) r.witness = a.witness->describe(model);
    } else {
      r.variant = request.variant;
      AemcFormula f = [&] {
        try {
          return parse_aemc(text);
        } catch (const ParseError& aemc_error) {
          try {
            return translate_aemc(parse_atl(text));
          } catch (const ParseError&) {
            throw aemc_error;
          }
        }
      }();
      AemcOptions o;
      o.variant = request.variant;
      o.jobs = request.jobs;
      o.deadline = deadline;
      AemcChecker checker(model, o, aliases);
      auto [truth, stats] = checker.check(q, f);
      r.truth = truth;
      r.sat_count = stats.sat_count;
      r.iterations = stats.iterations;
      r.applications = stats.applications;
      r.fixpoint_checks_ok = stats.monotone_chains && stats.within_state_bound;
    }
  } catch (const TimeoutError&) {
    r = CheckReport{};
    r.formula = std::string(text);
    r.engine = request.engine;
    if (request.engine == Engine::Aemc) r.variant = request.variant;
    r.timeout = true;
  }
  r.wall_time = elapsed();
  return r;
}

namespace {

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

const std::map<std::string, std::vector<std::string>>& formula_names() {
  static const std::map<std::string, std::vector<std::string>> names = {
      {"intersection", {"safe", "crash"}},
      {"castles", {"psi1", "psi2"}},
      {"tianji", {"phi1", "phi2"}},
      {"modtianji", {"phi1", "phi2"}},
  };
  return names;
}

}  // namespace

std::vector<PlanCell> parse_plan(std::string_view text) {
  std::vector<PlanCell> cells;
  for (const auto& s : ini::split_sections(text)) {
    if (s.name != "cell") throw ParseError("unknown section [" + s.name + "]", s.line, 1);
    PlanCell c;
    c.engines.clear();
    bool have_bench = false, have_next = false;
    for (const auto& l : s.lines) {
      std::string_view key, value;
      if (!ini::split_assignment(l, key, value)) throw ParseError("expected 'key = value'", l.number, l.column);
      if (key == "bench") {
        c.bench = std::string(value);
        have_bench = true;
      } else if (key == "config") {
        c.config = std::string(value);
      } else if (key == "formulas") {
        c.formulas = words(value);
      } else if (key == "engines") {
        for (const auto& w : words(value)) {
          auto e = parse_engine(w);
          if (!e) throw ParseError("unknown engine '" + w + "'", l.number, l.column);
          c.engines.push_back(*e);
        }
      } else if (key == "next") {
        have_next = true;
        c.variants.clear();
        for (const auto& w : words(value)) {
          auto v = parse_next_variant(w);
          if (!v) throw ParseError("unknown next variant '" + w + "'", l.number, l.column);
          c.variants.push_back(*v);
        }
      } else {
        throw ParseError("unknown key '" + std::string(key) + "'", l.number, l.column);
      }
    }
    if (!have_bench) throw ParseError("cell without 'bench'", s.line, 1);
    if (c.formulas.empty()) throw ParseError("cell without 'formulas'", s.line, 1);
    if (c.engines.empty()) c.engines = {Engine::Aemc};
    if (have_next && c.variants.empty()) throw ParseError("empty 'next' list", s.line, 1);
    cells.push_back(std::move(c));
  }
  return cells;
}

std::vector<CheckReport> run_matrix(const std::vector<PlanCell>& plan, const RunOptions& options) {
  // Validate names up front so that a typo does not surface hours into a run.
  std::vector<std::size_t> first_row(plan.size() + 1, 0);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const PlanCell& c = plan[i];
    auto known = formula_names().find(c.bench);
    if (known == formula_names().end()) throw UnknownNameError("unknown benchmark '" + c.bench + "'");
    for (const auto& f : c.formulas) {
      bool atl = std::find(known->second.begin(), known->second.end(), f) != known->second.end();
      bool aemc = !f.empty() && f.back() == 'p' &&
                  std::find(known->second.begin(), known->second.end(), f.substr(0, f.size() - 1)) !=
                      known->second.end();
      if (!atl && !aemc) throw UnknownNameError("unknown formula '" + f + "' for benchmark '" + c.bench + "'");
      for (Engine e : c.engines)
        if (e == Engine::Atlir && !atl)
          throw InvalidArgumentError("formula '" + f + "' is an AEMC formula; the atlir engine needs ATL");
    }
    std::size_t rows = 0;
    for (std::size_t f = 0; f < c.formulas.size(); ++f)
      for (Engine e : c.engines) rows += e == Engine::Aemc ? c.variants.size() : 1;
    first_row[i + 1] = first_row[i] + rows;
  }

  std::vector<CheckReport> reports(first_row.back());
  std::vector<std::exception_ptr> errors(plan.size());
  auto run_cell = [&](std::size_t i) {
    const PlanCell& c = plan[i];
    BenchmarkInstance inst = generate_benchmark(c.bench, c.config);
    FormulaBundle bundle = inst.bundle();
    std::size_t row = first_row[i];
    for (const auto& name : c.formulas) {
      bool is_aemc = false;
      const std::string* text = bundle.find(name, &is_aemc);
      for (Engine e : c.engines) {
        std::vector<NextVariant> variants = e == Engine::Aemc ? c.variants : std::vector<NextVariant>{NextVariant::SubjectiveUniform};
        for (NextVariant v : variants) {
          CheckRequest req;
          req.engine = e;
          req.variant = v;
          req.timeout = options.timeout;
          CheckReport r = run_check(inst.model, inst.initial, *text, req, inst.aliases);
          r.instance = inst.label;
          r.formula = name;
          if (options.progress) options.progress(r);
          reports[row++] = std::move(r);
        }
      }
    }
  };

  unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(plan.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < plan.size(); ++i) run_cell(i);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < plan.size();) {
        try {
          run_cell(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reports;
}

namespace {

const std::vector<std::string> kCsvHeader = {"instance",   "formula",    "engine",
                                             "variant",    "truth",      "sat_count",
                                             "iterations", "applications", "strategies_examined",
                                             "wall_time",  "timeout"};

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
std::string opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::vector<std::string> fields(const CheckReport& r) {
  return {r.instance,
          r.formula,
          to_string(r.engine),
          r.variant ? to_string(*r.variant) : "",
          r.timeout ? "timeout" : r.truth ? (*r.truth ? "true" : "false") : "",
          opt(r.sat_count),
          opt(r.iterations),
          opt(r.applications),
          opt(r.strategies_examined),
          format_double(r.wall_time),
          r.timeout ? "true" : "false"};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> rec;
  std::string cur;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(cur));
      cur.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cur.empty()) {
        rec.push_back(std::move(cur));
        out.push_back(std::move(rec));
      }
      rec.clear();
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", static_cast<int>(out.size() + 1), 1);
  if (any || !cur.empty()) {
    rec.push_back(std::move(cur));
    out.push_back(std::move(rec));
  }
  return out;
}

template <class T>
std::optional<T> parse_number(const std::string& s, int line) {
  if (s.empty()) return std::nullopt;
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("malformed number '" + s + "'", line, 1);
  return v;
}

}  // namespace

std::string render(const std::vector<CheckReport>& reports, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Csv) {
    auto line = [&](const std::vector<std::string>& f) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ',';
        out += csv_field(f[i]);
      }
      out += '\n';
    };
    line(kCsvHeader);
    for (const auto& r : reports) line(fields(r));
    return out;
  }

  std::vector<std::string> header = {"Instance", "Formula", "Engine", "Next",   "Truth",
                                     "#sat",     "#iter",   "#apps",  "#strat", "Time [s]"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    char t[32];
    std::snprintf(t, sizeof t, "%.3f", r.wall_time);
    auto f = fields(r);
    rows.push_back({f[0], f[1], f[2], f[3].empty() ? "-" : f[3], f[4], f[5].empty() ? "-" : f[5],
                    f[6].empty() ? "-" : f[6], f[7].empty() ? "-" : f[7], f[8].empty() ? "-" : f[8],
                    r.timeout ? "timeout" : t});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    width[i] = header[i].size();
    for (const auto& row : rows) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& f) {
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) s += " | ";
      bool numeric = i >= 5;
      std::string pad(width[i] - f[i].size(), ' ');
      s += numeric ? pad + f[i] : f[i] + pad;
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out += s + '\n';
  };
  line(header);
  std::string rule;
  for (std::size_t i = 0; i < width.size(); ++i) {
    if (i) rule += "-+-";
    rule += std::string(width[i], '-');
  }
  out += rule + '\n';
  for (const auto& row : rows) line(row);
  return out;
}

std::vector<CheckReport> parse_csv(std::string_view text) {
  auto records = csv_records(text);
  if (records.empty() || records[0] != kCsvHeader) throw ParseError("missing or unexpected CSV header", 1, 1);
  std::vector<CheckReport> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    int line = static_cast<int>(i + 1);
    if (f.size() != kCsvHeader.size())
      throw ParseError("expected " + std::to_string(kCsvHeader.size()) + " fields", line, 1);
    CheckReport r;
    r.instance = f[0];
    r.formula = f[1];
    auto e = parse_engine(f[2]);
    if (!e) throw ParseError("unknown engine '" + f[2] + "'", line, 1);
    r.engine = *e;
    if (!f[3].empty()) {
      r.variant = parse_next_variant(f[3]);
      if (!r.variant) throw ParseError("unknown next variant '" + f[3] + "'", line, 1);
    }
    if (f[10] != "true" && f[10] != "false") throw ParseError("timeout must be true or false", line, 1);
    r.timeout = f[10] == "true";
    if (f[4] == "true" || f[4] == "false")
      r.truth = f[4] == "true";
    else if (f[4] != "timeout" && !f[4].empty())
      throw ParseError("malformed truth value '" + f[4] + "'", line, 1);
    r.sat_count = parse_number<std::size_t>(f[5], line);
    r.iterations = parse_number<std::size_t>(f[6], line);
    r.applications = parse_number<std::size_t>(f[7], line);
    r.strategies_examined = parse_number<std::uint64_t>(f[8], line);
    auto t = parse_number<double>(f[9], line);
    r.wall_time = t.value_or(0.0);
    out.push_back(std::move(r));
  }
  return out;
}

std::string describe(const CheckReport& r) {
  std::ostringstream s;
  if (!r.instance.empty()) s << "instance: " << r.instance << "\n";
  s << "formula: " << r.formula << "\n";
  s << "engine: " << to_string(r.engine) << "\n";
  if (r.variant) s << "next: " << to_string(*r.variant) << "\n";
  s << "truth: " << (r.timeout ? "timeout" : r.truth ? (*r.truth ? "true" : "false") : "") << "\n";
  if (r.sat_count) s << "sat_count: " << *r.sat_count << "\n";
  if (r.iterations) s << "iterations: " << *r.iterations << "\n";
  if (r.applications) s << "applications: " << *r.applications << "\n";
  if (r.strategies_examined) s << "strategies_examined: " << *r.strategies_examined << "\n";
  if (!r.witness.empty()) s << "witness: " << r.witness << "\n";
  if (r.engine == Engine::Aemc && !r.timeout)
    s << "fixpoint_checks: " << (r.fixpoint_checks_ok ? "ok" : "FAILED") << "\n";
  char t[32];
  std::snprintf(t, sizeof t, "%.6f", r.wall_time);
  s << "wall_time: " << t << "\n";
  return s.str();
}

}  // namespace amc
