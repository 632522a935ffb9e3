#include <algorithm>
#include <array>

#include "CLI11.hpp"

#include "scope/cli.hpp"
#include "scope/error.hpp"
#include "scope/fileio.hpp"
#include "scope/plot.hpp"
#include "scope/results.hpp"

namespace scope::cli {

namespace {

constexpr std::array<std::string_view, 5> kSubcommands = {"spec", "deps", "bar", "cat",
                                                          "filter_name"};

std::string synopsis(std::string_view program) {
  std::string p(program);
  return "usage: " + p + " spec <spec-file>\n" +
         "       " + p + " deps <spec-file>\n" +
         "       " + p + " bar <input.json> <output.svg> --xfield <field> --yfield <field> "
                         "[--title <title>]\n" +
         "       " + p + " cat <file> [<file> ...]\n" +
         "       " + p + " filter_name <file> <regex>\n" +
         "A file argument of \"-\" reads standard input (cat, filter_name).\n";
}

ResultsDocument load_document(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_document(text);
  } catch (const Error& e) {
    throw Error((path == "-" ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

}  // namespace

int results_main(std::span<const std::string> argv, std::ostream& out, std::ostream& err) {
  const std::string program = argv.empty() ? "scope_plot" : argv.front();
  if (argv.size() < 2) {
    err << program << ": missing subcommand\n" << synopsis(program);
    return kUsage;
  }
  const std::string& command = argv[1];
  if (command == "--help" || command == "-h" || command == "help") {
    out << synopsis(program);
    return kSuccess;
  }
  if (std::find(kSubcommands.begin(), kSubcommands.end(), command) == kSubcommands.end()) {
    err << program << ": unknown subcommand '" << command
        << "'; valid subcommands are spec, deps, bar, cat, filter_name\n"
        << synopsis(program);
    return kUsage;
  }

  CLI::App app(program + " " + command, program + " " + command);
  std::string spec_file, input, output, xfield, yfield, regex;
  std::optional<std::string> title;
  std::vector<std::string> files;
  if (command == "spec" || command == "deps") {
    app.add_option("spec_file", spec_file, "plot spec file")->required();
  } else if (command == "bar") {
    app.add_option("input", input, "results JSON file")->required();
    app.add_option("output", output, "SVG file to write")->required();
    app.add_option("--xfield", xfield, "field for the x axis")->required();
    app.add_option("--yfield", yfield, "field for the y axis")->required();
    app.add_option("--title", title, "plot title");
  } else if (command == "cat") {
    app.add_option("files", files, "results JSON files")->required();
  } else {
    app.add_option("file", input, "results JSON file")->required();
    app.add_option("regex", regex, "regular expression searched in names")->required();
  }

  // CLI11 consumes a reversed argument vector.
  std::vector<std::string> rest(argv.begin() + 2, argv.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << program << " " << command << ": " << e.what() << "\n" << synopsis(program);
    return kUsage;
  }

  try {
    if (command == "spec") {
      plot::generate(plot::load_spec(read_file(spec_file)));
    } else if (command == "deps") {
      out << plot::spec_dependencies(plot::load_spec(read_file(spec_file)));
    } else if (command == "bar") {
      plot::quick_bar(input, xfield, yfield, title, output);
    } else if (command == "cat") {
      std::vector<ResultsDocument> docs;
      docs.reserve(files.size());
      for (const auto& f : files) {
        docs.push_back(load_document(f));
      }
      out << serialize_document(concat_documents(docs));
    } else {
      const Pattern pattern(regex);
      out << serialize_document(filter_by_name(load_document(input), pattern));
    }
  } catch (const Error& e) {
    err << program << " " << command << ": " << e.what() << "\n";
    return kFailure;
  }
  return kSuccess;
}

}  // namespace scope::cli
