// Copyright 2026 The icdn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run a scenario, benchmark publishing, or validate a file.

#include "icdn/harness/reports.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_runtime = 3;

using icdn::harness::Diagnostic;
using icdn::harness::LoadResult;

void
print_diagnostics(std::ostream& os, const std::vector<Diagnostic>& diags)
{
  for (const auto& d : diags) {
    os << d.to_json() << '\n';
  }
}

LoadResult
load(const std::string& file, std::vector<std::string> overrides, const std::optional<std::uint64_t>& seed,
     const std::optional<std::string>& mode)
{
  if (seed) {
    overrides.push_back(fmt::format("seed={}", *seed));
  }
  if (mode) {
    overrides.push_back(fmt::format("mode=\"{}\"", *mode));
  }
  return icdn::harness::load_scenario_file(file, overrides);
}

std::optional<std::vector<double>>
parse_sizes(const std::string& text)
{
  std::vector<double> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) {
      continue;
    }
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size() || !(v > 0)) {
        return std::nullopt;
      }
      sizes.push_back(v);
    }
    catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return sizes;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"icdn: integrated ICN/CDN delivery simulator"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::string sizes_text;
  unsigned jobs = 1;

  auto* run = app.add_subcommand("run", "Run a scenario and write the CSV suite and summary.txt");
  run->add_option("file", file, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--mode", mode, "icn or cdn-only")->check(CLI::IsMember({"icn", "cdn-only"}));
  run->add_option("--set", overrides, "Override a scenario field, e.g. knobs.gateway_weight=1");

  auto* bench = app.add_subcommand("publish-bench", "Measure origin fetch + publish time per content size");
  bench->add_option("file", file, "Scenario JSON file")->required();
  bench->add_option("--sizes", sizes_text, "Comma-separated sizes in MiB")->required();
  bench->add_option("--out", out_dir, "Output directory")->required();
  bench->add_option("--jobs", jobs, "Sizes simulated in parallel")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Override the scenario seed");
  bench->add_option("--set", overrides, "Override a scenario field");

  auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
  validate->add_option("file", file, "Scenario JSON file")->required();
  validate->add_option("--set", overrides, "Override a scenario field");

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_invalid;
  }

  if (validate->parsed()) {
    LoadResult r = load(file, overrides, std::nullopt, std::nullopt);
    print_diagnostics(std::cout, r.diagnostics);
    return r.diagnostics.empty() ? exit_ok : exit_invalid;
  }

  LoadResult loaded = load(file, overrides, seed, mode);
  if (!loaded.ok()) {
    print_diagnostics(std::cerr, loaded.diagnostics);
    return exit_invalid;
  }
  const auto& scenario = *loaded.scenario;

  if (bench->parsed()) {
    auto sizes = parse_sizes(sizes_text);
    if (!sizes || sizes->empty()) {
      std::cerr << Diagnostic{"BadValue", "--sizes", "expected a non-empty list of positive sizes"}.to_json() << '\n';
      return exit_invalid;
    }
    try {
      auto points = icdn::harness::publish_bench(scenario, *sizes, jobs);
      std::string csv = icdn::harness::publish_csv(points);
      icdn::harness::write_files(out_dir, {{"publish.csv", csv}});
      std::cout << csv;
    }
    catch (const std::exception& e) {
      std::cerr << "icdn: " << e.what() << '\n';
      return exit_runtime;
    }
    return exit_ok;
  }

  try {
    icdn::harness::Testbed bed(scenario);
    bed.run();
    auto result = bed.result();
    icdn::harness::write_outputs(scenario, result, out_dir);
    std::cout << icdn::harness::summary_text(scenario, result);
  }
  catch (const std::exception& e) {
    std::cerr << "icdn: " << e.what() << '\n';
    return exit_runtime;
  }
  return exit_ok;
}
