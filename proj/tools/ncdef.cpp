#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ncdef/errors.hpp"
#include "ncdef/report.hpp"

namespace {

int exit_code(ncdef::ErrorKind k) {
  switch (k) {
    case ncdef::ErrorKind::scenario:
      return 2;
    case ncdef::ErrorKind::hypothesis:
      return 3;
    case ncdef::ErrorKind::invariant:
      return 4;
  }
  return 4;
}

const char* kind_name(ncdef::ErrorKind k) {
  switch (k) {
    case ncdef::ErrorKind::scenario:
      return "scenario";
    case ncdef::ErrorKind::hypothesis:
      return "hypothesis";
    case ncdef::ErrorKind::invariant:
      return "invariant";
  }
  return "invariant";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative deformations, Massey products and the versal morphism"};
  app.require_subcommand(1);

  std::string scenario_path, cochain_path, pin_path, cache_dir, emit;
  std::optional<std::size_t> degree_cap;
  bool no_search = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("scenario", scenario_path, "scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--degree-cap", degree_cap, "truncation degree for the hull (and presentations)");
    sub->add_option("--emit", emit, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--cache-dir", cache_dir, "directory for cached hull runs");
    sub->add_option("--pin-conventions", pin_path, "JSON file overriding representative choices")
        ->check(CLI::ExistingFile);
  };
  std::string command;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"ext", "Ext^1 dimension table"},
           {"hull", "hull presentation and graded dimensions"},
           {"observables", "dimensions of O(M) and of the versal morphism"},
           {"burnside", "classical and generalized Burnside checks"},
           {"standard-form", "block description of the image of eta"},
           {"closure", "re-run the pipeline over B = O(M)"},
           {"kernel-chain", "dimensions of the kernel chain K_n"}}) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    sub->callback([&command, n = name] { command = n; });
  }
  auto* ext = app.add_subcommand("extension", "iterated extensions");
  ext->require_subcommand(1);
  auto* build = ext->add_subcommand("build", "build E from cochains psi_ij");
  common(build);
  build->add_option("cochains", cochain_path, "cochain JSON file")->required()->check(CLI::ExistingFile);
  build->callback([&] { command = "extension build"; });
  auto* check = ext->add_subcommand("check", "decide whether consecutive classes extend");
  common(check);
  check->add_option("cochains", cochain_path, "class JSON file")->required()->check(CLI::ExistingFile);
  check->add_flag("--no-search", no_search, "keep the pinned defining system (no indeterminacy search)");
  check->callback([&] { command = "extension check"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    ncdef::RunOptions opts;
    if (!pin_path.empty()) opts.conventions = ncdef::parse_conventions(ncdef::Json::parse(ncdef::read_file(pin_path)));
    if (!cache_dir.empty()) opts.cache_dir = cache_dir;
    const std::string bytes = ncdef::read_file(scenario_path);
    ncdef::Scenario scenario = ncdef::parse_scenario(bytes, degree_cap);
    if (emit.empty()) emit = scenario.emit;
    ncdef::Session session(std::move(scenario), bytes, opts);

    ncdef::Json report;
    if (command == "ext")
      report = ncdef::report_ext(session);
    else if (command == "hull")
      report = ncdef::report_hull(session);
    else if (command == "observables")
      report = ncdef::report_observables(session);
    else if (command == "burnside")
      report = ncdef::report_burnside(session);
    else if (command == "standard-form")
      report = ncdef::report_standard_form(session);
    else if (command == "closure")
      report = ncdef::report_closure(session);
    else if (command == "kernel-chain")
      report = ncdef::report_kernel_chain(session);
    else if (command == "extension build" || command == "extension check") {
      ncdef::Json cochains;
      try {
        cochains = ncdef::Json::parse(ncdef::read_file(cochain_path));
      } catch (const ncdef::Json::parse_error& e) {
        throw ncdef::ScenarioError("BadJson", e.what());
      }
      if (!cochains.is_object()) throw ncdef::ScenarioError("BadCochains", "cochain file must be a JSON object");
      report = command == "extension build" ? ncdef::report_extension_build(session, cochains)
                                            : ncdef::report_extension_check(session, cochains, !no_search);
    }
    if (emit == "text")
      std::cout << ncdef::render_text(report);
    else
      std::cout << report.dump(2) << "\n";
    return 0;
  } catch (const ncdef::Error& e) {
    const ncdef::Json diag{{"error", {{"kind", kind_name(e.kind())}, {"code", e.code()}, {"message", e.what()}}}};
    std::cerr << diag.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    const ncdef::Json diag{{"error", {{"kind", "invariant"}, {"code", "Unexpected"}, {"message", e.what()}}}};
    std::cerr << diag.dump() << "\n";
    return 4;
  }
}
