#include <cmath>
#include <optional>
#include <vector>

#include "census_internal.hpp"
#include "hmlab/parallel.hpp"
#include "hmlab/rng.hpp"

namespace hmlab::census {

MonteCarloResult montecarlo_census(const CensusSpec& spec, u64 samples, u64 seed,
                                   const nt::FactorSieve* sieve, int workers) {
  detail::validate_spec(spec, "montecarlo_census");
  if (samples == 0) {
    throw std::invalid_argument("montecarlo_census: samples must be positive");
  }
  if (spec.shard) {
    throw std::invalid_argument(
        "montecarlo_census: sharding applies to exhaustive mode; vary the seed instead");
  }

  detail::Lattice lat = detail::lattice_of(spec);
  if (lat.count[0] == 0 || lat.count[1] == 0 || lat.count[2] == 0) {
    return {0.0L, 0.0L, 0, samples};
  }
  const long double lattice_size =
      (long double)lat.count[0] * (long double)lat.count[1] * (long double)lat.count[2];

  std::optional<nt::FactorSieve> own;
  if (sieve == nullptr || sieve->limit() < (u32)spec.B) {
    own.emplace((u32)spec.B + 1);
    sieve = &*own;
  }

  // Sample j is a pure function of (seed, j): the congruence is satisfied by
  // construction and only gcd/solubility decide acceptance. Fixed chunking
  // keeps the accepted tally identical for every worker count.
  const rng::CounterStream stream{seed};
  constexpr u64 kChunk = u64{1} << 16;
  const u64 num_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<u64> counts =
      par::map_chunks<u64>((std::int64_t)num_chunks, workers, [&](std::int64_t c) -> u64 {
        const u64 lo = (u64)c * kChunk;
        const u64 hi = std::min(samples, lo + kChunk);
        std::vector<i64> scratch;
        scratch.reserve(16);
        u64 acc = 0;
        for (u64 j = lo; j < hi; ++j) {
          conic::Triple t;
          for (int i = 0; i < 3; ++i) {
            const u64 k = rng::bounded(stream.at(3 * j + (u64)i), (u64)lat.count[i]);
            t[i] = lat.start[i] + spec.q * (i64)k;
          }
          if (detail::gcd3(t[0], t[1], t[2]) != 1) continue;
          if (detail::soluble_positive(t, *sieve, scratch)) ++acc;
        }
        return acc;
      });
  u64 accepted = 0;
  for (u64 c : counts) accepted += c;

  const long double phat = (long double)accepted / (long double)samples;
  const long double estimate = lattice_size * phat;
  const long double standard_error =
      lattice_size * std::sqrt(phat * (1.0L - phat) / (long double)samples);
  return {estimate, standard_error, accepted, samples};
}

}  // namespace hmlab::census
