#include <algorithm>
#include <initializer_list>

#include <yaml-cpp/yaml.h>

#include "scope/error.hpp"
#include "scope/plot.hpp"

namespace scope::plot {

namespace {

void reject_unknown_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SpecSchema("unknown key \"" + key + "\" in " + where);
    }
  }
}

void require_map(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) {
    throw SpecSchema(where + " must be a mapping");
  }
}

std::string scalar_string(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) {
    throw SpecSchema(what + " must be a string");
  }
  return node.as<std::string>();
}

double scalar_double(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) {
    throw SpecSchema(what + " must be a number");
  }
  try {
    return node.as<double>();
  } catch (const YAML::BadConversion&) {
    throw SpecSchema(what + " must be a number, got \"" + node.as<std::string>() + "\"");
  }
}

PlotType parse_type(const std::string& s) {
  if (s == "bar") return PlotType::Bar;
  if (s == "errorbar") return PlotType::ErrorbarLine;
  if (s == "regplot") return PlotType::Regression;
  throw SpecSchema("unknown plot type \"" + s + "\" (expected bar, errorbar or regplot)");
}

AxisSpec parse_axis(const YAML::Node& node, const std::string& where) {
  AxisSpec axis;
  if (!node || node.IsNull()) {
    return axis;
  }
  require_map(node, where);
  reject_unknown_keys(node, {"label", "scale"}, where);
  if (auto label = node["label"]) {
    axis.label = scalar_string(label, where + ".label");
  }
  if (auto scale = node["scale"]) {
    auto s = scalar_string(scale, where + ".scale");
    if (s == "linear") {
      axis.scale = AxisScale::Linear;
    } else if (s == "log" || s == "log10") {
      axis.scale = AxisScale::Log10;
    } else {
      throw SpecSchema("unknown scale \"" + s + "\" in " + where + " (expected linear or log)");
    }
  }
  return axis;
}

SeriesSpec parse_series(const YAML::Node& node, std::size_t index) {
  const std::string where = "series[" + std::to_string(index) + "]";
  require_map(node, where);
  reject_unknown_keys(node, {"label", "input_file", "regex", "xfield", "yfield", "xscale", "yscale"},
                      where);
  SeriesSpec s;
  for (const char* key : {"input_file", "xfield", "yfield"}) {
    if (!node[key]) {
      throw SpecSchema(where + " is missing \"" + key + "\"");
    }
  }
  s.input_file = scalar_string(node["input_file"], where + ".input_file");
  s.xfield = scalar_string(node["xfield"], where + ".xfield");
  s.yfield = scalar_string(node["yfield"], where + ".yfield");
  s.label = node["label"] ? scalar_string(node["label"], where + ".label") : s.input_file.string();
  if (node["regex"]) {
    s.regex = scalar_string(node["regex"], where + ".regex");
  }
  if (node["xscale"]) {
    s.xscale = scalar_double(node["xscale"], where + ".xscale");
  }
  if (node["yscale"]) {
    s.yscale = scalar_double(node["yscale"], where + ".yscale");
  }
  return s;
}

OutputSpec parse_output(const YAML::Node& node, std::size_t index) {
  const std::string where = "output[" + std::to_string(index) + "]";
  require_map(node, where);
  reject_unknown_keys(node, {"name", "format"}, where);
  if (!node["name"]) {
    throw SpecSchema(where + " is missing \"name\"");
  }
  OutputSpec out;
  out.path = scalar_string(node["name"], where + ".name");
  if (node["format"]) {
    auto f = scalar_string(node["format"], where + ".format");
    if (f != "svg") {
      throw SpecSchema("unsupported output format \"" + f + "\" in " + where + " (only svg)");
    }
  }
  return out;
}

}  // namespace

PlotSpec load_spec(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw SpecSyntax(e.what());
  }
  try {
    require_map(root, "spec");
    reject_unknown_keys(root, {"title", "type", "xaxis", "yaxis", "series", "output"}, "spec");

    PlotSpec spec;
    if (root["title"]) {
      spec.title = scalar_string(root["title"], "title");
    }
    if (!root["type"]) {
      throw SpecSchema("spec is missing \"type\"");
    }
    spec.type = parse_type(scalar_string(root["type"], "type"));
    spec.x_axis = parse_axis(root["xaxis"], "xaxis");
    spec.y_axis = parse_axis(root["yaxis"], "yaxis");

    const auto series = root["series"];
    if (!series || !series.IsSequence() || series.size() == 0) {
      throw SpecSchema("\"series\" must be a non-empty list");
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
      spec.series.push_back(parse_series(series[i], i));
    }

    const auto output = root["output"];
    if (!output || !output.IsSequence() || output.size() == 0) {
      throw SpecSchema("\"output\" must be a non-empty list");
    }
    for (std::size_t i = 0; i < output.size(); ++i) {
      spec.outputs.push_back(parse_output(output[i], i));
    }

    if (spec.type == PlotType::Regression &&
        (spec.x_axis.scale == AxisScale::Log10 || spec.y_axis.scale == AxisScale::Log10)) {
      throw SpecSchema("regplot supports linear axes only");
    }
    return spec;
  } catch (const YAML::Exception& e) {
    throw SpecSchema(e.what());
  }
}

namespace {

std::string make_escape(const std::string& path) {
  std::string out;
  for (char c : path) {
    if (c == ' ' || c == '#') {
      out += '\\';
    }
    if (c == '$') {
      out += '$';
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string spec_dependencies(const PlotSpec& spec) {
  std::string rule;
  for (std::size_t i = 0; i < spec.outputs.size(); ++i) {
    if (i) rule += ' ';
    rule += make_escape(spec.outputs[i].path.string());
  }
  rule += ':';
  std::vector<std::string> seen;
  for (const auto& s : spec.series) {
    auto path = s.input_file.string();
    if (std::find(seen.begin(), seen.end(), path) != seen.end()) {
      continue;
    }
    seen.push_back(path);
    rule += ' ';
    rule += make_escape(path);
  }
  rule += '\n';
  return rule;
}

}  // namespace scope::plot
