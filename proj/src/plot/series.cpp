#include <charconv>
#include <cmath>
#include <map>

#include "scope/error.hpp"
#include "scope/fileio.hpp"
#include "scope/plot.hpp"

namespace scope::plot {

namespace {

constexpr std::string_view kNameArgPrefix = "name_arg";

// Integer arguments of a benchmark name: "Copy/8/64_mean" -> {8, 64}.
// Named arguments ("size:8") contribute their value. A component that is not
// an integer is reported as missing.
std::optional<double> name_argument(std::string_view name, std::size_t k) {
  for (auto suffix : kAggregateSuffixes) {
    if (name.size() >= suffix.size() && name.substr(name.size() - suffix.size()) == suffix) {
      name.remove_suffix(suffix.size());
      break;
    }
  }
  std::size_t index = 0;
  std::size_t pos = name.find('/');
  while (pos != std::string_view::npos) {
    const std::size_t next = name.find('/', pos + 1);
    std::string_view part = name.substr(pos + 1, next == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : next - pos - 1);
    if (index == k) {
      if (auto colon = part.rfind(':'); colon != std::string_view::npos) {
        part = part.substr(colon + 1);
      }
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc() || ptr != part.data() + part.size()) {
        return std::nullopt;
      }
      return static_cast<double>(v);
    }
    ++index;
    pos = next;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> field_value(const BenchmarkRecord& record, std::string_view field) {
  if (field == "real_time") return record.real_time;
  if (field == "cpu_time") return record.cpu_time;
  if (field == "iterations") return static_cast<double>(record.iterations);
  if (const double* v = record.counters.find(field)) {
    return *v;
  }
  if (field.substr(0, kNameArgPrefix.size()) == kNameArgPrefix) {
    auto digits = field.substr(kNameArgPrefix.size());
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size()) {
      return name_argument(record.name, k);
    }
  }
  return std::nullopt;
}

SeriesData build_series(const SeriesSpec& spec, const ResultsDocument& doc) {
  const Pattern pattern(spec.regex);
  SeriesData out;
  out.label = spec.label;

  std::size_t matched = 0;
  bool any_x = false;
  bool any_y = false;
  for (const auto& r : doc.benchmarks) {
    if (r.error_occurred || !pattern.search(r.name)) {
      continue;
    }
    ++matched;
    auto x = field_value(r, spec.xfield);
    auto y = field_value(r, spec.yfield);
    any_x = any_x || x.has_value();
    any_y = any_y || y.has_value();
    if (x && y) {
      out.samples.push_back({*x * spec.xscale, *y * spec.yscale});
    }
  }
  if (matched == 0) {
    return out;
  }
  if (!any_x) {
    throw MissingField(spec.xfield);
  }
  if (!any_y) {
    throw MissingField(spec.yfield);
  }

  std::map<double, std::vector<double>> groups;
  for (const auto& s : out.samples) {
    groups[s.x].push_back(s.y);
  }
  for (const auto& [x, ys] : groups) {
    double sum = 0;
    for (double y : ys) sum += y;
    const double mean = sum / static_cast<double>(ys.size());
    double err = 0;
    if (ys.size() > 1) {
      double ss = 0;
      for (double y : ys) ss += (y - mean) * (y - mean);
      err = std::sqrt(ss / static_cast<double>(ys.size() - 1));
    }
    out.points.push_back({x, mean, err});
  }
  return out;
}

LinearFit linear_regression(std::span<const Sample> samples) {
  if (samples.size() < 2) {
    throw DegenerateRegression();
  }
  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0;
  for (const auto& s : samples) {
    sx += s.x;
    sy += s.y;
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0, sxx = 0;
  for (const auto& s : samples) {
    sxy += (s.x - mx) * (s.y - my);
    sxx += (s.x - mx) * (s.x - mx);
  }
  if (sxx == 0) {
    throw DegenerateRegression();
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

std::vector<SeriesData> load_series(const PlotSpec& spec) {
  std::map<std::filesystem::path, ResultsDocument> docs;
  std::vector<SeriesData> out;
  out.reserve(spec.series.size());
  for (const auto& s : spec.series) {
    auto it = docs.find(s.input_file);
    if (it == docs.end()) {
      const std::string text = read_file(s.input_file);
      try {
        it = docs.emplace(s.input_file, parse_document(text)).first;
      } catch (const Error& e) {
        throw Error(s.input_file.string() + ": " + e.what());
      }
    }
    out.push_back(build_series(s, it->second));
  }
  return out;
}

std::string generate(const PlotSpec& spec) {
  const auto series = load_series(spec);
  std::string svg = render(spec, series);
  for (const auto& out : spec.outputs) {
    write_file_atomic(out.path, svg);
  }
  return svg;
}

PlotSpec make_bar_spec(const std::filesystem::path& input, std::string xfield, std::string yfield,
                       std::optional<std::string> title, const std::filesystem::path& output) {
  PlotSpec spec;
  spec.title = std::move(title);
  spec.type = PlotType::Bar;
  spec.x_axis.label = xfield;
  spec.y_axis.label = yfield;
  SeriesSpec s;
  s.label = yfield;
  s.input_file = input;
  s.xfield = std::move(xfield);
  s.yfield = std::move(yfield);
  spec.series.push_back(std::move(s));
  spec.outputs.push_back({output, OutputFormat::Svg});
  return spec;
}

std::string quick_bar(const std::filesystem::path& input, std::string xfield, std::string yfield,
                      std::optional<std::string> title, const std::filesystem::path& output) {
  return generate(make_bar_spec(input, std::move(xfield), std::move(yfield), std::move(title),
                                output));
}

}  // namespace scope::plot
