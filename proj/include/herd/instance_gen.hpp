#pragma once

#include <cstdint>
#include <string_view>

#include "herd/signed_digraph.hpp"

namespace herd {

/// SplitMix64 (Steele, Lea, Flood). Counter-based, so streams are
/// reproducible from the seed alone in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi] by modulo reduction; the bias is below 2^-50 for
  /// the ranges used here.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

enum class Topology { kTree, kLayeredDag, kGeneral };
enum class SignPolicy { kAllPositive, kRandom, kForceSignedDilation, kForceLayerDilation };

std::string_view to_string(Topology t);
std::string_view to_string(SignPolicy s);
Topology topology_from_string(std::string_view text);
SignPolicy sign_policy_from_string(std::string_view text);

struct GenSpec {
  int n = 1;
  Topology topology = Topology::kTree;
  SignPolicy signs = SignPolicy::kRandom;
  std::uint64_t seed = 0;
};

/// Admissible signed digraph with leader 1, deterministic in the spec.
///   tree: node i hangs off a uniform parent in 1..i-1;
///   layered-dag: node i sits one layer below a uniform earlier node, and
///     each node of the layer above adds an edge with probability 0.3;
///   general: a tree plus each further edge u->v (v != 1, u != v) with
///     probability 0.15.
/// Forced policies raise SpecError when n is too small (signed dilation
/// needs n >= 3, layer dilation n >= 4).
SignedDigraph generate(const GenSpec& spec);

}  // namespace herd
