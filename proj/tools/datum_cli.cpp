#include "datum/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
  CLI::App app{"datum - declare finite data types, verify their subtype relations, "
               "evaluate and cast"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  auto* check = app.add_subcommand("check", "parse a workspace and run every verification");
  check->add_option("file", file, "workspace file (.dt)")->required();
  check->add_flag("--json", json, "machine-readable report");

  std::string op_name;
  std::vector<std::string> eval_args;
  std::optional<std::uint64_t> budget;
  auto* eval = app.add_subcommand("eval", "evaluate an operation on characters");
  eval->add_option("file", file, "workspace file (.dt)")->required();
  eval->add_option("op", op_name, "operation name")->required();
  eval->add_option("args", eval_args, "argument characters, e.g. 3 or \"(0,1)\"");
  eval->add_option("--budget", budget, "step budget (default: DATUM_BUDGET or 1000000)");

  std::string from_type, to_type, value;
  auto* cast = app.add_subcommand("cast", "cast a character along the safe subtype paths");
  cast->add_option("file", file, "workspace file (.dt)")->required();
  cast->add_option("from", from_type, "source type")->required();
  cast->add_option("to", to_type, "target type")->required();
  cast->add_option("value", value, "character of the source type")->required();

  std::string format = "dot";
  auto* graph = app.add_subcommand("graph", "export the type graph");
  graph->add_option("file", file, "workspace file (.dt)")->required();
  graph->add_option("--format", format, "dot or json");

  int depth = 1;
  std::size_t cap = 512;
  auto* closure = app.add_subcommand("closure", "enumerate derivable operations");
  closure->add_option("file", file, "workspace file (.dt)")->required();
  closure->add_option("--depth", depth, "maximum rule applications");
  closure->add_option("--cap", cap, "enumeration size cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    if (!message.empty()) std::fprintf(stderr, "%s\n", message.c_str());
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  datum::cli::CommandResult result;
  if (check->parsed()) {
    result = datum::cli::cmd_check(file, json);
  } else if (eval->parsed()) {
    result = datum::cli::cmd_eval(file, op_name, eval_args, budget);
  } else if (cast->parsed()) {
    result = datum::cli::cmd_cast(file, from_type, to_type, value);
  } else if (graph->parsed()) {
    result = datum::cli::cmd_graph(file, format);
  } else {
    result = datum::cli::cmd_closure(file, depth, cap);
  }
  std::fputs(result.output.c_str(), stdout);
  return result.exit_code;
}
