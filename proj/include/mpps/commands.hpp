#pragma once

// Table-producing commands behind the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mpps/counting.hpp"
#include "mpps/stacy.hpp"

namespace mpps {

enum class Command { pdf, cdf, pmf, regression, moments, simulate, verify };
enum class Target { stacy, exp_stacy, erlang_stacy, mpstacy, mpps };
enum class OutputFormat { csv, json };

std::string_view to_string(Command c);
std::string_view to_string(Target t);
std::string_view to_string(OutputFormat f);
Target parse_target(std::string_view s);
OutputFormat parse_format(std::string_view s);

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n_points = 0;

  // "lo:hi:n"; lo < hi and n >= 2.
  static GridSpec parse(std::string_view s);
  double at(int i) const;
};

struct CountRange {
  int lo = 0;
  int hi = 0;

  // "lo:hi", inclusive, 0 <= lo <= hi.
  static CountRange parse(std::string_view s);
};

// lambda(t) = scale * t^exponent, written "scale:exponent".
struct IntensitySpec {
  double scale = 1.0;
  double exponent = 1.0;

  static IntensitySpec parse(std::string_view s);
  IntensityFn make() const;
};

struct RunConfig {
  Command command = Command::pdf;
  StacyParams params{1.0, 1.0, 1.0};
  Target target = Target::stacy;
  std::optional<GridSpec> grid;
  std::optional<CountRange> n_range;
  IntensitySpec intensity;
  int erlang_n = 1;
  double t = 1.0;  // time at which lambda is evaluated for mpps targets
  std::optional<std::uint64_t> seed;
  std::size_t paths = 1;
  std::size_t events_per_path = 1;
  std::string output;  // empty means standard output
  OutputFormat format = OutputFormat::csv;

  nlohmann::ordered_json to_json() const;
};

using Cell = std::variant<std::int64_t, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// 17 significant digits through std::to_chars, so no locale dependence.
// Infinities print as "inf".
std::string format_real(double v);

// First line is "# " followed by the RunConfig JSON. In JSON format the
// config is embedded as the "config" member instead.
void write_table(std::ostream& out, const RunConfig& cfg, const Table& table);

Table cmd_pdf(const RunConfig& cfg);
Table cmd_cdf(const RunConfig& cfg);
Table cmd_pmf(const RunConfig& cfg);
Table cmd_regression(const RunConfig& cfg);
Table cmd_moments(const RunConfig& cfg);
Table cmd_simulate(const RunConfig& cfg);

}  // namespace mpps
