#include "cflgap/random.hpp"

#include <limits>

namespace cflgap {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(Error::Kind::internal, "Rng::below(0)");
  // 2^64 mod n; values below it would bias the low residues.
  const std::uint64_t threshold = (std::numeric_limits<std::uint64_t>::max() - n + 1) % n;
  std::uint64_t u;
  do {
    u = engine_();
  } while (u < threshold);
  return u % n;
}

bool Rng::bernoulli(const Rational& p) {
  if (sgn(p) <= 0) return false;
  if (p >= 1) return true;
  const std::uint64_t den = to_u64(p.get_den());
  const std::uint64_t num = to_u64(p.get_num());
  return below(den) < num;
}

std::size_t Rng::choose(std::span<const Rational> weights) {
  if (weights.empty()) throw Error(Error::Kind::internal, "Rng::choose on empty weights");
  BigInt common = 1;
  for (const auto& w : weights) {
    BigInt g;
    mpz_lcm(g.get_mpz_t(), common.get_mpz_t(), w.get_den_mpz_t());
    common = g;
  }
  const std::uint64_t u = below(to_u64(common));
  BigInt acc = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i].get_num() * (common / weights[i].get_den());
    if (u < acc) return i;
  }
  throw Error(Error::Kind::internal, "Rng::choose: weights do not sum to 1");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace cflgap
