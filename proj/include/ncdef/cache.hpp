#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ncdef/hull.hpp"
#include "ncdef/scenario.hpp"

namespace ncdef {

Json pro_to_json(const ProCouple& pro);
/// Throws std::exception subclasses on malformed input.
ProCouple pro_from_json(const Json& j, const Complex& cx);

/// Hex SHA-256.
std::string sha256_hex(const std::string& bytes);

/// On-disk store of hull runs keyed by a hash of (scenario bytes, tool
/// version, conventions, degree cap).
class HullCache {
 public:
  explicit HullCache(std::filesystem::path dir);

  static std::string key(const std::string& scenario_bytes, const Conventions& conv, std::size_t degree_cap);
  /// nullopt on a miss. Corrupt or stale entries are deleted with a warning on stderr.
  std::optional<ProCouple> load(const std::string& key, const Complex& cx) const;
  /// Write to a temporary file, then rename.
  void store(const std::string& key, const ProCouple& pro) const;

 private:
  std::filesystem::path entry(const std::string& key) const;
  std::filesystem::path dir_;
};

}  // namespace ncdef
