#include <algorithm>
#include <optional>
#include <vector>

#include "census_internal.hpp"
#include "hmlab/parallel.hpp"

namespace hmlab::census {

i64 exhaustive_census(const CensusSpec& spec, const nt::FactorSieve* sieve, int workers) {
  detail::validate_spec(spec, "exhaustive_census");
  if (spec.B > 2000000) {
    throw BudgetExceeded("exhaustive_census: B = " + std::to_string(spec.B) +
                         " exceeds the 2*10^6 cap");
  }
  detail::Lattice lat = detail::lattice_of(spec);
  if (lat.count[0] == 0 || lat.count[1] == 0 || lat.count[2] == 0) return 0;
  long double lattice_size =
      (long double)lat.count[0] * (long double)lat.count[1] * (long double)lat.count[2];
  if (lattice_size > 2.0e9L) {
    throw BudgetExceeded("exhaustive_census: lattice has more than 2*10^9 triples");
  }

  std::optional<nt::FactorSieve> own;
  if (sieve == nullptr || sieve->limit() < (u32)spec.B) {
    own.emplace((u32)spec.B + 1);
    sieve = &*own;
  }

  i64 shard_index = 0, shard_total = 1;
  if (spec.shard) {
    shard_index = spec.shard->first;
    shard_total = spec.shard->second;
  }
  // One chunk per t2 value of this shard; round-robin sharding makes the
  // shard counts an exact partition of the full count.
  std::vector<i64> t2_values;
  for (i64 j = shard_index; j < lat.count[2]; j += shard_total) {
    t2_values.push_back(lat.start[2] + spec.q * j);
  }
  if (t2_values.empty()) return 0;

  std::vector<i64> counts =
      par::map_chunks<i64>((std::int64_t)t2_values.size(), workers, [&](std::int64_t ci) -> i64 {
        const i64 t2 = t2_values[(size_t)ci];
        std::vector<i64> scratch;
        scratch.reserve(16);
        i64 local = 0;
        for (i64 t1 = lat.start[1]; t1 <= spec.B; t1 += spec.q) {
          const i64 g12 = std::gcd(t1, t2);
          for (i64 t0 = lat.start[0]; t0 <= spec.B; t0 += spec.q) {
            if (g12 != 1 && std::gcd(t0, g12) != 1) continue;
            if (detail::soluble_positive({t0, t1, t2}, *sieve, scratch)) ++local;
          }
        }
        return local;
      });
  i64 total = 0;
  for (i64 c : counts) total += c;
  return total;
}

}  // namespace hmlab::census
