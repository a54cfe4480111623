#include "mtolab/random_fields.hpp"

#include <algorithm>
#include <random>

namespace mto {

std::vector<double> random_smooth_coefficients(int K, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) c[k] = unit(rng) / ((1.0 + k) * (1.0 + k));
  return c;
}

sphere::ZonalField random_zonal_field(const sphere::ContextPtr& ctx, int K, std::uint64_t seed) {
  const int kmax = std::min(K, ctx->truncation());
  std::vector<double> c = random_smooth_coefficients(kmax, seed);
  c.resize(static_cast<std::size_t>(ctx->basis_size()), 0.0);
  return sphere::ZonalField(ctx, std::move(c));
}

cr::DiskField random_pluriharmonic_field(const cr::ContextPtr& ctx, int jmax, std::uint64_t seed) {
  jmax = std::min(jmax, ctx->truncation());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(ctx->basis_size()), 0.0);
  c[0] = unit(rng);
  for (int j = 1; j <= jmax; ++j) {
    const double decay = 1.0 / ((1.0 + j) * (1.0 + j));
    c[ctx->index_of(j, 0, cr::BasisEntry::Part::Real)] = unit(rng) * decay;
    c[ctx->index_of(j, 0, cr::BasisEntry::Part::Imag)] = unit(rng) * decay;
  }
  return cr::DiskField(ctx, std::move(c));
}

}  // namespace mto
