#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ncdef/hull.hpp"
#include "ncdef/scenario.hpp"

namespace ncdef {

struct RunOptions {
  Conventions conventions;
  std::optional<std::filesystem::path> cache_dir;
};

/// One scenario with its complex and (lazily) its hull.
class Session {
 public:
  Session(Scenario s, std::string scenario_bytes, RunOptions opts);

  const Scenario& scenario() const { return s_; }
  const Complex& complex() const { return *cx_; }
  const RunOptions& options() const { return opts_; }
  /// Hull from the cache when possible.
  const ProCouple& hull();
  /// Hull computed in this process, with its live class registry.
  HullEngine& engine();
  /// Set after hull(): whether the cache served it.
  bool cache_hit() const { return cache_hit_; }

 private:
  Scenario s_;
  std::string bytes_;
  RunOptions opts_;
  std::unique_ptr<Complex> cx_;
  std::unique_ptr<HullEngine> engine_;
  std::optional<ProCouple> pro_;
  bool cache_hit_ = false;
};

Json report_ext(Session& s);
Json report_hull(Session& s);
Json report_observables(Session& s);
Json report_burnside(Session& s);
Json report_standard_form(Session& s);
Json report_closure(Session& s);
Json report_kernel_chain(Session& s);
/// cochains: {"chain": [...], "psi": [{"i", "j", "values": {basis: matrix}}]}
Json report_extension_build(Session& s, const Json& cochains);
/// cochains: {"chain": [...], "classes": [[Ext^1 coordinates], ...]}
Json report_extension_check(Session& s, const Json& cochains, bool search_indeterminacy);

/// "key: value" lines, nested keys joined by '.'.
std::string render_text(const Json& report);

}  // namespace ncdef
