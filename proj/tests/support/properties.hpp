#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncdef/linalg.hpp"

namespace fx {

struct Tally {
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

/// d1 d0 = 0, d2 d1 = 0, Leibniz sign, cup products of cocycles are cocycles.
Tally complex_properties(const ncdef::Field& f, std::size_t instances, std::uint64_t seed);
/// Class of cup(alpha, beta) unchanged when alpha moves by d0(phi).
Tally cup_class_properties(const ncdef::Field& f, std::size_t instances, std::uint64_t seed);
/// Massey vanishing <=> iterated extension, both directions, plus the
/// induced-class round trip.
Tally extension_round_trips(const ncdef::Field& f, std::size_t instances, std::uint64_t seed);
/// Every hull defect met while running the hull is a cocycle (the engine
/// throws otherwise); returns one check per hull run.
Tally hull_defect_properties(const ncdef::Field& f, std::size_t instances, std::uint64_t seed);

}  // namespace fx
