#include "datum/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace datum {
namespace cli {

namespace {

struct LoadedFile {
  bool ok = false;
  std::string text;
  std::string error;
};

LoadedFile read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return LoadedFile{false, {}, "cannot read file '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return LoadedFile{true, buf.str(), {}};
}

struct LoadedWorkspace {
  std::optional<dsl::Workspace> ws;
  CommandResult failure; // set when !ws
};

LoadedWorkspace load_workspace(const std::string& path) {
  LoadedFile file = read_file(path);
  if (!file.ok) return {std::nullopt, CommandResult{2, "error io: " + file.error + "\n"}};
  dsl::ParseResult parsed = dsl::parse_workspace(file.text, path);
  if (!parsed.ok())
    return {std::nullopt, CommandResult{1, dsl::render_diagnostics(parsed.diagnostics)}};
  return {std::move(parsed.workspace), {}};
}

// Every witness accepts every datum of its type: apply_curried succeeds and,
// when nothing remains to be supplied, the carried output lands in the
// codomain. Exhaustive residual evaluation belongs to the subtype checks;
// grid operations may refuse boundary pairs without making the type invalid.
VerificationReport witness_processability(const DataType& t) {
  VerificationReport report;
  report.subject = "witness-processability(" + t.name + ")";
  CheckResult check{"witness-processability", 0, {}, {}};
  for (const auto& w : t.witnesses) {
    check.universe += t.alphabet->size();
    for (const auto& c : t.alphabet->members) {
      try {
        ResidualFunction residual = apply_curried(w, c);
        if (w.base->arity() == 1) {
          Character out = eval_residual(residual, {});
          if (!w.codomain()->contains(out))
            check.counterexamples.push_back(w.display + " at " + to_string(c) +
                                            ": result outside " + w.codomain()->name);
        }
      } catch (const Error& e) {
        check.counterexamples.push_back(w.display + " at " + to_string(c) + ": " +
                                        std::string(errc_name(e.code())));
      }
    }
  }
  report.checks.push_back(std::move(check));
  return report;
}

nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["subject"] = r.subject;
  j["passed"] = r.passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["law"] = c.law;
    cj["universe"] = c.universe;
    cj["counterexamples"] = c.counterexamples;
    if (!c.note.empty()) cj["note"] = c.note;
    j["checks"].push_back(std::move(cj));
  }
  return j;
}

} // namespace

StepBudget resolve_budget(std::optional<std::uint64_t> requested) {
  if (requested) return StepBudget{*requested};
  if (const char* env = std::getenv("DATUM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return StepBudget{v};
  }
  return StepBudget{};
}

CommandResult cmd_check(const std::string& path, bool json) {
  LoadedFile file = read_file(path);
  if (!file.ok) {
    if (!json) return CommandResult{2, "error io: " + file.error + "\n"};
    nlohmann::ordered_json j;
    j["ok"] = false;
    j["io_error"] = file.error;
    return CommandResult{2, j.dump(2) + "\n"};
  }
  dsl::ParseResult parsed = dsl::parse_workspace(file.text, path);

  std::vector<VerificationReport> reports;
  if (parsed.ok()) {
    const dsl::Workspace& ws = *parsed.workspace;
    for (const auto& t : ws.types) reports.push_back(witness_processability(*t));
    for (const auto& e : ws.graph.edges()) reports.push_back(e.verified);
    reports.push_back(verify_order(ws.graph, EdgeKind::R));
    reports.push_back(verify_order(ws.graph, EdgeKind::P));
    reports.push_back(check_dimension_acyclicity(ws.graph).as_report());
  }

  bool all_passed = parsed.ok();
  for (const auto& r : reports) all_passed = all_passed && r.passed();

  if (json) {
    nlohmann::ordered_json j;
    j["ok"] = all_passed;
    j["diagnostics"] = nlohmann::ordered_json::array();
    for (const auto& d : parsed.diagnostics) {
      j["diagnostics"].push_back({{"severity",
                                   d.severity == dsl::Diagnostic::Severity::error ? "error"
                                                                                  : "warning"},
                                  {"file", d.file},
                                  {"line", d.line},
                                  {"col", d.col},
                                  {"code", d.code},
                                  {"message", d.message}});
    }
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(report_json(r));
    return CommandResult{all_passed ? 0 : 1, j.dump(2) + "\n"};
  }

  std::string out = dsl::render_diagnostics(parsed.diagnostics);
  for (const auto& r : reports) out += r.to_text();
  out += all_passed ? "check passed\n" : "check failed\n";
  return CommandResult{all_passed ? 0 : 1, out};
}

CommandResult cmd_eval(const std::string& path, const std::string& op_name,
                       const std::vector<std::string>& args,
                       std::optional<std::uint64_t> budget) {
  LoadedWorkspace loaded = load_workspace(path);
  if (!loaded.ws) return loaded.failure;
  const dsl::Workspace& ws = *loaded.ws;
  const OperationPtr* op = ws.find_operation(op_name);
  if (!op)
    return CommandResult{1, "error UnknownNode: no operation named '" + op_name + "'\n"};
  try {
    std::vector<Character> parsed_args;
    parsed_args.reserve(args.size());
    for (const auto& a : args) parsed_args.push_back(dsl::parse_character_text(a));
    Character result = eval(**op, parsed_args, resolve_budget(budget));
    return CommandResult{0, to_string(result) + "\n"};
  } catch (const Error& e) {
    return CommandResult{1, "error " + std::string(errc_name(e.code())) + ": " + e.what() +
                                "\n"};
  }
}

CommandResult cmd_cast(const std::string& path, const std::string& from_type,
                       const std::string& to_type, const std::string& value) {
  LoadedWorkspace loaded = load_workspace(path);
  if (!loaded.ws) return loaded.failure;
  const dsl::Workspace& ws = *loaded.ws;
  try {
    const TypePtr* from = ws.find_type(from_type);
    const TypePtr* to = ws.find_type(to_type);
    if (!from || !to)
      return CommandResult{1, "error UnknownNode: no type named '" +
                                  (from ? to_type : from_type) + "'\n"};
    Character c = dsl::parse_character_text(value);
    if (!datum_check(**from, c))
      return CommandResult{1, "error DomainViolation: " + to_string(c) +
                                  " is not a datum of " + from_type + "\n"};
    std::optional<CastPath> route = find_cast_path(ws.graph, from_type, to_type);
    if (!route)
      return CommandResult{1, "error NoPath: no safe cast from " + from_type + " to " +
                                  to_type + "\n"};
    Character out = apply_cast_path(*route, c);
    return CommandResult{0, to_string(out) + "\npath: " + route->to_text() + "\n"};
  } catch (const Error& e) {
    return CommandResult{1, "error " + std::string(errc_name(e.code())) + ": " + e.what() +
                                "\n"};
  }
}

CommandResult cmd_graph(const std::string& path, const std::string& format) {
  GraphFormat fmt;
  if (format == "dot") {
    fmt = GraphFormat::dot;
  } else if (format == "json") {
    fmt = GraphFormat::json;
  } else {
    return CommandResult{2, "error UnsupportedFormat: '" + format + "' (use dot or json)\n"};
  }
  LoadedWorkspace loaded = load_workspace(path);
  if (!loaded.ws) return loaded.failure;
  return CommandResult{0, export_graph(loaded.ws->graph, fmt)};
}

CommandResult cmd_closure(const std::string& path, int depth, std::size_t cap) {
  LoadedWorkspace loaded = load_workspace(path);
  if (!loaded.ws) return loaded.failure;
  const dsl::Workspace& ws = *loaded.ws;
  // Interactive listings stay responsive: one million table entries of
  // deduplication work before the partial-listing notice.
  ClosureResult closure = closure_enumerate(ws.alphabets, ws.operations, depth, cap, 1'000'000);
  std::vector<const EnumeratedOp*> ordered;
  ordered.reserve(closure.ops.size());
  for (const auto& e : closure.ops) ordered.push_back(&e);
  std::sort(ordered.begin(), ordered.end(), [](const EnumeratedOp* a, const EnumeratedOp* b) {
    return std::tie(a->cost, a->derivation) < std::tie(b->cost, b->derivation);
  });
  std::string out;
  for (const auto* e : ordered) {
    out += "[cost " + std::to_string(e->cost) + "] " + e->derivation + " : " +
           signature_text(*e->op) + "\n";
  }
  if (closure.truncated) {
    out += "error ClosureCapExceeded: enumeration cap " + std::to_string(closure.cap) +
           " reached; listing is partial\n";
    return CommandResult{1, out};
  }
  return CommandResult{0, out};
}

} // namespace cli
} // namespace datum
