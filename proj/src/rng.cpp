#include "netregret/rng.hpp"

#include <cmath>
#include <numbers>

namespace netregret {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next() {
  state_ += kGamma;
  return mix64(state_);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

bool Rng::bernoulli(double p) { return uniform() < p; }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % n;
}

int Rng::rademacher() { return (next() & 1ULL) ? 1 : -1; }

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0;
  std::uint64_t i = 0;
  for (std::uint64_t w : words) {
    h = (i == 0) ? mix64(w) : mix64(h ^ mix64(w + kGamma * (i + 1)));
    ++i;
  }
  return h;
}

std::uint64_t seed_for(std::uint64_t master_seed, std::uint64_t rep, Stream stream) {
  return hash_words({master_seed, rep, static_cast<std::uint64_t>(stream)});
}

std::uint64_t round_seed(std::uint64_t stream_seed, std::uint64_t t) {
  return hash_words({stream_seed, t});
}

}  // namespace netregret
