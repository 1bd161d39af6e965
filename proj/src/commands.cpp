#include "mpps/commands.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "mpps/mixtures.hpp"
#include "mpps/random.hpp"

namespace mpps {

namespace {

std::vector<std::string_view> split_colon(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(':', start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

double parse_real(std::string_view s, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + ": not a finite number: '" + std::string(s) + "'");
  return v;
}

long long parse_integer(std::string_view s, const char* what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string(what) + ": not an integer: '" + std::string(s) + "'");
  return v;
}

const GridSpec& need_grid(const RunConfig& cfg) {
  if (!cfg.grid) throw std::invalid_argument(std::string(to_string(cfg.command)) + " needs --grid lo:hi:n");
  return *cfg.grid;
}

const CountRange& need_range(const RunConfig& cfg) {
  if (!cfg.n_range) throw std::invalid_argument(std::string(to_string(cfg.command)) + " needs --n-range lo:hi");
  return *cfg.n_range;
}

[[noreturn]] void bad_target(const RunConfig& cfg) {
  throw std::invalid_argument("target '" + std::string(to_string(cfg.target)) + "' is not valid for " +
                              std::string(to_string(cfg.command)));
}

double lambda_at(const RunConfig& cfg) {
  if (!(cfg.t > 0.0)) throw std::domain_error("--t must be positive");
  return cfg.intensity.make()(cfg.t);
}

template <class F>
Table grid_table(const RunConfig& cfg, std::string x_name, std::string y_name, F&& f) {
  const GridSpec& g = need_grid(cfg);
  Table t{{std::move(x_name), std::move(y_name)}, {}};
  t.rows.reserve(static_cast<std::size_t>(g.n_points));
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.at(i);
    t.rows.push_back({x, f(x)});
  }
  return t;
}

template <class F>
Table count_table(const RunConfig& cfg, std::string y_name, F&& f) {
  const CountRange& r = need_range(cfg);
  Table t{{"n", std::move(y_name)}, {}};
  for (int n = r.lo; n <= r.hi; ++n) t.rows.push_back({static_cast<std::int64_t>(n), f(n)});
  return t;
}

double as_real(const MomentValue& m) { return m.is_finite() ? m.value() : std::numeric_limits<double>::infinity(); }

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::pdf: return "pdf";
    case Command::cdf: return "cdf";
    case Command::pmf: return "pmf";
    case Command::regression: return "regression";
    case Command::moments: return "moments";
    case Command::simulate: return "simulate";
    case Command::verify: return "verify";
  }
  return "?";
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::stacy: return "stacy";
    case Target::exp_stacy: return "exp-stacy";
    case Target::erlang_stacy: return "erlang-stacy";
    case Target::mpstacy: return "mpstacy";
    case Target::mpps: return "mpps";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

Target parse_target(std::string_view s) {
  for (Target t : {Target::stacy, Target::exp_stacy, Target::erlang_stacy, Target::mpstacy, Target::mpps})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown target '" + std::string(s) + "'");
}

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

GridSpec GridSpec::parse(std::string_view s) {
  const auto parts = split_colon(s);
  if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:n, got '" + std::string(s) + "'");
  GridSpec g;
  g.lo = parse_real(parts[0], "grid lo");
  g.hi = parse_real(parts[1], "grid hi");
  const long long n = parse_integer(parts[2], "grid n");
  if (!(g.lo < g.hi)) throw std::invalid_argument("grid needs lo < hi");
  if (n < 2 || n > 100'000'000) throw std::invalid_argument("grid needs 2 <= n <= 1e8");
  g.n_points = static_cast<int>(n);
  return g;
}

double GridSpec::at(int i) const {
  if (i == n_points - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
}

CountRange CountRange::parse(std::string_view s) {
  const auto parts = split_colon(s);
  if (parts.size() != 2) throw std::invalid_argument("n-range must be lo:hi, got '" + std::string(s) + "'");
  const long long lo = parse_integer(parts[0], "n-range lo");
  const long long hi = parse_integer(parts[1], "n-range hi");
  if (lo < 0 || hi < lo || hi > 10'000'000) throw std::invalid_argument("n-range needs 0 <= lo <= hi <= 1e7");
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

IntensitySpec IntensitySpec::parse(std::string_view s) {
  const auto parts = split_colon(s);
  if (parts.size() != 2) throw std::invalid_argument("intensity must be a:p, got '" + std::string(s) + "'");
  IntensitySpec out{parse_real(parts[0], "intensity scale"), parse_real(parts[1], "intensity exponent")};
  out.make();
  return out;
}

IntensityFn IntensitySpec::make() const { return IntensityFn::power_law(scale, exponent); }

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = to_string(command);
  j["params"] = {{"alpha", params.alpha()}, {"beta", params.beta()}, {"c", params.c()}};
  j["target"] = to_string(target);
  j["grid"] = grid ? nlohmann::ordered_json{{"lo", grid->lo}, {"hi", grid->hi}, {"n_points", grid->n_points}}
                   : nlohmann::ordered_json(nullptr);
  j["n_range"] = n_range ? nlohmann::ordered_json{{"lo", n_range->lo}, {"hi", n_range->hi}}
                         : nlohmann::ordered_json(nullptr);
  j["intensity"] = {{"scale", intensity.scale}, {"exponent", intensity.exponent}, {"label", intensity.make().label()}};
  j["erlang_n"] = erlang_n;
  j["t"] = t;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  j["paths"] = paths;
  j["events_per_path"] = events_per_path;
  j["output"] = output.empty() ? "-" : output;
  j["format"] = to_string(format);
  return j;
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_table(std::ostream& out, const RunConfig& cfg, const Table& table) {
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["config"] = cfg.to_json();
    j["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      auto r = nlohmann::ordered_json::array();
      for (const Cell& c : row) {
        if (std::holds_alternative<std::int64_t>(c)) {
          r.push_back(std::get<std::int64_t>(c));
        } else {
          const double v = std::get<double>(c);
          // JSON has no infinity; keep the CSV spelling as a string.
          if (std::isfinite(v)) {
            r.push_back(v);
          } else {
            r.push_back(format_real(v));
          }
        }
      }
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << '\n';
    return;
  }
  out << "# " << cfg.to_json().dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  std::string line;
  for (const auto& row : table.rows) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      if (std::holds_alternative<std::int64_t>(row[i])) {
        line += std::to_string(std::get<std::int64_t>(row[i]));
      } else {
        line += format_real(std::get<double>(row[i]));
      }
    }
    line += '\n';
    out << line;
  }
}

Table cmd_pdf(const RunConfig& cfg) {
  const StacyParams& p = cfg.params;
  switch (cfg.target) {
    case Target::stacy: return grid_table(cfg, "x", "density", [&](double x) { return stacy_pdf(p, x); });
    case Target::exp_stacy: return grid_table(cfg, "x", "density", [&](double x) { return exp_stacy_pdf(p, x); });
    case Target::erlang_stacy: {
      const ErlangIndex n(cfg.erlang_n);
      return grid_table(cfg, "x", "density", [&](double x) { return erlang_stacy_pdf(p, n, x); });
    }
    default: bad_target(cfg);
  }
}

Table cmd_cdf(const RunConfig& cfg) {
  const StacyParams& p = cfg.params;
  switch (cfg.target) {
    case Target::stacy: return grid_table(cfg, "x", "cdf", [&](double x) { return stacy_cdf(p, x); });
    case Target::exp_stacy: return grid_table(cfg, "x", "cdf", [&](double x) { return exp_stacy_cdf(p, x); });
    case Target::erlang_stacy: {
      const ErlangIndex n(cfg.erlang_n);
      return grid_table(cfg, "x", "cdf", [&](double x) { return erlang_stacy_cdf(p, n, x); });
    }
    default: bad_target(cfg);
  }
}

Table cmd_pmf(const RunConfig& cfg) {
  const StacyParams& p = cfg.params;
  switch (cfg.target) {
    case Target::mpstacy: return count_table(cfg, "probability", [&](int n) { return mpstacy_pmf(p, n); });
    case Target::mpps: {
      const double lam = lambda_at(cfg);
      return count_table(cfg, "probability", [&](int n) { return mpps_count_pmf(p, lam, n); });
    }
    default: bad_target(cfg);
  }
}

Table cmd_regression(const RunConfig& cfg) {
  const StacyParams& p = cfg.params;
  switch (cfg.target) {
    case Target::exp_stacy:
      return grid_table(cfg, "t", "regression", [&](double t) { return regression_xi_given_tau(p, t); });
    case Target::mpps: {
      const double lam = lambda_at(cfg);
      return count_table(cfg, "regression", [&](int n) { return regression_xi_given_count(p, lam, n); });
    }
    default: bad_target(cfg);
  }
}

Table cmd_moments(const RunConfig& cfg) {
  const StacyParams& p = cfg.params;
  MeanVariance mv{MomentValue::finite(0.0), MomentValue::finite(0.0)};
  switch (cfg.target) {
    case Target::stacy: {
      const MomentValue m1 = stacy_moment(p, 1.0), m2 = stacy_moment(p, 2.0);
      mv.mean = m1;
      mv.variance = m2.is_finite() ? MomentValue::finite(m2.value() - m1.value() * m1.value()) : m2;
      break;
    }
    case Target::exp_stacy: mv = exp_stacy_mean_var(p); break;
    case Target::erlang_stacy: mv = erlang_stacy_mean_var(p, ErlangIndex(cfg.erlang_n)); break;
    case Target::mpstacy: mv = mpps_mean_var(p, 1.0); break;
    case Target::mpps: mv = mpps_mean_var(p, lambda_at(cfg)); break;
  }
  return Table{{"mean", "variance"}, {{as_real(mv.mean), as_real(mv.variance)}}};
}

Table cmd_simulate(const RunConfig& cfg) {
  if (!cfg.seed) throw std::invalid_argument("simulate needs an explicit --seed");
  if (cfg.paths < 1 || cfg.events_per_path < 1) throw std::invalid_argument("simulate needs paths >= 1 and events >= 1");
  const IntensityFn lam = cfg.intensity.make();
  RandomStream rng(*cfg.seed);
  Table t{{"path_id", "event_index", "event_time"}, {}};
  t.rows.reserve(cfg.paths * cfg.events_per_path);
  for (std::size_t path = 1; path <= cfg.paths; ++path) {
    const SamplePath s = simulate_path(cfg.params, lam, cfg.events_per_path, rng);
    for (std::size_t i = 0; i < s.arrivals.size(); ++i)
      t.rows.push_back({static_cast<std::int64_t>(path), static_cast<std::int64_t>(i + 1), s.arrivals[i]});
  }
  return t;
}

}  // namespace mpps
