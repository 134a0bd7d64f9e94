#include "ipcf/serialize.hpp"

#include <json.hpp>

#include "ipcf/printer.hpp"

namespace ipcf {

using nlohmann::json;

std::string traceToJson(const Trace& trace) {
  json steps = json::array();
  int i = 1;
  for (const Step& s : trace.steps) {
    steps.push_back(json{{"step", i++},
                         {"rule", std::string(stepRuleName(s.rule))},
                         {"path", s.path},
                         {"term", printTerm(s.result)}});
  }
  json out{{"initial", printTerm(trace.initial)},
           {"steps", std::move(steps)},
           {"status", trace.status == TraceStatus::Normal ? "normal" : "fuel-exhausted"},
           {"final", printTerm(trace.final())}};
  return out.dump(2);
}

std::string typeErrorToJson(const TypeError& e, int line, int col) {
  json out{{"error", "type"},
           {"kind", std::string(typeErrorKindName(e.kind))},
           {"span", json{{"line", line}, {"col", col}}},
           {"term", printTerm(e.offending)},
           {"message", e.what()}};
  if (e.expected) out["expected"] = printType(*e.expected);
  if (e.actual) out["actual"] = printType(*e.actual);
  if (!e.name.empty()) out["name"] = e.name;
  return out.dump(2);
}

std::string parseErrorToJson(const ParseError& e) {
  json out{{"error", "parse"},
           {"span", json{{"line", e.line}, {"col", e.col}}},
           {"expected", e.expected},
           {"found", e.found},
           {"message", e.what()}};
  return out.dump(2);
}

}  // namespace ipcf
