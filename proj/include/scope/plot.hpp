#pragma once

// Declarative figures from results documents. A PlotSpec names, per series, an
// input file, a name regex and the x/y fields to extract; build_series turns
// matching records into grouped points and render draws them as SVG.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scope/results.hpp"

namespace scope::plot {

enum class PlotType { Bar, ErrorbarLine, Regression };
enum class AxisScale { Linear, Log10 };
enum class OutputFormat { Svg };

struct AxisSpec {
  std::string label;
  AxisScale scale = AxisScale::Linear;
  bool operator==(const AxisSpec&) const = default;
};

// xfield / yfield name "real_time", "cpu_time", "iterations", a counter, or
// "name_arg<k>": the k-th integer argument of the benchmark name, so that
// "Copy/8/64" has name_arg0 = 8 and name_arg1 = 64.
struct SeriesSpec {
  std::string label;
  std::filesystem::path input_file;
  std::string regex = ".*";
  std::string xfield;
  std::string yfield;
  double xscale = 1.0;
  double yscale = 1.0;
  bool operator==(const SeriesSpec&) const = default;
};

struct OutputSpec {
  std::filesystem::path path;
  OutputFormat format = OutputFormat::Svg;
  bool operator==(const OutputSpec&) const = default;
};

struct PlotSpec {
  std::optional<std::string> title;
  PlotType type = PlotType::Bar;
  AxisSpec x_axis;
  AxisSpec y_axis;
  std::vector<SeriesSpec> series;
  std::vector<OutputSpec> outputs;
  bool operator==(const PlotSpec&) const = default;
};

struct Sample {
  double x = 0;
  double y = 0;
  bool operator==(const Sample&) const = default;
};

// One plotted x position: mean y of its samples and their sample standard
// deviation (0 for a single sample).
struct Point {
  double x = 0;
  double y = 0;
  double yerr = 0;
  bool operator==(const Point&) const = default;
};

struct SeriesData {
  std::string label;
  std::vector<Point> points;    // sorted by x
  std::vector<Sample> samples;  // ungrouped, in record order
};

struct LinearFit {
  double slope = 0;
  double intercept = 0;
};

// Parses a YAML (or JSON) spec. Throws SpecSyntax or SpecSchema.
PlotSpec load_spec(std::string_view text);

// "out1 out2: in1 in2\n" with duplicate inputs removed and make-special
// characters escaped.
std::string spec_dependencies(const PlotSpec& spec);

// Value of `field` on `record`, or nullopt when the record does not carry it.
std::optional<double> field_value(const BenchmarkRecord& record, std::string_view field);

// Throws BadRegex, or MissingField when no matched record carries a field.
// Zero matched records give an empty series.
SeriesData build_series(const SeriesSpec& spec, const ResultsDocument& doc);

// Ordinary least squares. Throws DegenerateRegression when all x are equal
// (or fewer than two samples are given).
LinearFit linear_regression(std::span<const Sample> samples);

// Deterministic 800x600 SVG. Throws EmptyPlot or LogAxisDomain.
std::string render(const PlotSpec& spec, std::span<const SeriesData> series);

// Reads every input file of `spec` once and builds its series in order.
std::vector<SeriesData> load_series(const PlotSpec& spec);

// load_series + render + atomic write of every output. Returns the SVG.
std::string generate(const PlotSpec& spec);

// Single-series bar chart over all records of `input`.
PlotSpec make_bar_spec(const std::filesystem::path& input, std::string xfield,
                       std::string yfield, std::optional<std::string> title,
                       const std::filesystem::path& output);

std::string quick_bar(const std::filesystem::path& input, std::string xfield, std::string yfield,
                      std::optional<std::string> title, const std::filesystem::path& output);

}  // namespace scope::plot
