#include "wqed/params.hpp"

namespace wqed {

EmitterChain build_periodic_chain(int n, double spacing_nm, const EmitterParams& emitter) {
  if (n < 1) throw std::invalid_argument("build_periodic_chain: n must be >= 1");
  if (!(spacing_nm > 0.0)) throw std::invalid_argument("build_periodic_chain: spacing must be > 0");
  emitter.validate();

  EmitterChain chain;
  chain.emitter = emitter;
  chain.positions_nm.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) chain.positions_nm[static_cast<std::size_t>(j)] = spacing_nm * j;
  return chain;
}

double coupling_amplitude(double big_gamma, double group_velocity) {
  if (!(big_gamma >= 0.0)) throw std::invalid_argument("coupling_amplitude: big_gamma must be >= 0");
  if (!(group_velocity > 0.0))
    throw std::invalid_argument("coupling_amplitude: group_velocity must be > 0");
  return std::sqrt(big_gamma * group_velocity);
}

}  // namespace wqed
