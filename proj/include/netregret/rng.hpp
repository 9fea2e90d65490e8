#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace netregret {

/// SplitMix64 (Steele, Lea & Flood 2014). The state advances by the golden
/// gamma 0x9e3779b97f4a7c15 and each output is the state passed through the
/// Stafford "mix13" finalizer. Satisfies UniformRandomBitGenerator.
///
/// All derived quantities (uniforms, Bernoulli draws, normals, bounded
/// integers) are computed by the helpers below rather than by <random>
/// distributions, whose algorithms are implementation-defined. A given seed
/// therefore produces the same stream on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  std::uint64_t next();

  /// Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// True with probability p (uniform() < p).
  bool bernoulli(double p);
  /// Standard normal via Box-Muller (cosine branch only, one normal per call,
  /// two uniforms consumed).
  double normal();
  /// Uniform integer in [0, n) by rejection of the biased tail.
  std::uint64_t below(std::uint64_t n);
  /// +1 or -1 with equal probability (lowest output bit).
  int rademacher();

 private:
  std::uint64_t state_;
};

/// The SplitMix64 output finalizer as a standalone 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x);

/// Order-sensitive hash of a word sequence:
///   h = mix64(w0); h = mix64(h ^ mix64(wi + gamma * (i + 1))) for i >= 1.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words);

/// Tags that keep independent random streams of one experiment apart.
enum class Stream : std::uint64_t {
  activation = 1,
  adversary = 2,
  graph = 3,
  gossip = 4,
  data = 5,
};

/// seed_for(rep, stream) = hash(master_seed, rep, stream_tag).
std::uint64_t seed_for(std::uint64_t master_seed, std::uint64_t rep, Stream stream);

/// Per-round stream of a repetition: hash(stream_seed, t).
std::uint64_t round_seed(std::uint64_t stream_seed, std::uint64_t t);

}  // namespace netregret
