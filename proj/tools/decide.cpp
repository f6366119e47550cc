//------------------------------------------------------------------------------
//
//   Copyright 2026 The dfpil Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
// decide: run a scenario file through the five-step pipeline.

#include <dfpil.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

int exit_code(dfpil::error_kind kind) {
  switch (kind) {
  case dfpil::error_kind::parse: return 2;
  case dfpil::error_kind::numerical:
  case dfpil::error_kind::degenerate_fusion: return 3;
  default: return 1;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dynamic fuzzy linguistic group decision engine"};
  std::string scenario_path;
  std::string stage_name = "all";
  std::string report_format = "text";
  std::string dot_path;
  bool paper_literal = false;
  std::string scheme_name;

  app.add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  app.add_option("--stage", stage_name, "Last stage to run")
      ->check(CLI::IsMember({"markov", "weights", "priorities", "aggregate", "all"}));
  app.add_option("--report", report_format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--export-dot", dot_path, "Write the transition network as Graphviz DOT");
  app.add_flag("--paper-literal", paper_literal,
               "Use the printed inner-deviation constant m(m-1)/2");
  app.add_option("--scheme", scheme_name, "Period weight scheme")
      ->check(CLI::IsMember({"power", "reshape"}));
  CLI11_PARSE(app, argc, argv);

  static std::map<std::string, dfpil::Stage> const stages{
      {"markov", dfpil::Stage::markov},     {"weights", dfpil::Stage::weights},
      {"priorities", dfpil::Stage::priorities}, {"aggregate", dfpil::Stage::aggregate},
      {"all", dfpil::Stage::all}};

  try {
    auto const scenario = dfpil::load_scenario(scenario_path);
    dfpil::PipelineOptions options;
    options.stage = stages.at(stage_name);
    options.paper_literal = paper_literal;
    if (scheme_name == "power") options.scheme = dfpil::WeightScheme::power;
    if (scheme_name == "reshape") options.scheme = dfpil::WeightScheme::reshape;

    auto const report = dfpil::run_pipeline(scenario, options);
    if (report_format == "json") {
      std::cout << dfpil::report_json(scenario, report).dump(2) << "\n";
    } else {
      std::cout << dfpil::report_text(scenario, report);
    }
    if (!dot_path.empty()) {
      std::ofstream dot(dot_path, std::ios::binary);
      if (!dot) {
        std::cerr << "error: cannot write " << dot_path << "\n";
        return 1;
      }
      dot << dfpil::export_dot(*report.transition, scenario.attributes);
    }
  } catch (dfpil::error const &e) {
    std::cerr << "error (" << dfpil::to_string(e.kind()) << "): " << e.what() << "\n";
    for (auto const &d : e.details()) std::cerr << "  " << d << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
