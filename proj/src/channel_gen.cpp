#include "qteleport/channel_gen.hpp"

#include <cmath>

#include "qteleport/displaced.hpp"

namespace qteleport {

namespace {

// Two-photon pair (|01>|01> + |10>|10>) / sqrt(2) across (rail, rail,
// herald, herald); the bare sum is normalized here since the kets are
// orthogonal.
FockState entangled_pair() {
  FockState pair({1, 1, 1, 1});
  const double s = 1.0 / std::sqrt(2.0);
  pair.add({0, 1, 0, 1}, s);
  pair.add({1, 0, 1, 0}, s);
  return pair;
}

}  // namespace

std::vector<HeraldedChannel> generate_channel(const GenerationConfig& cfg, int herald_max) {
  if (!(cfg.t > 0.0) || cfg.t >= 1.0) {
    throw std::invalid_argument("generation transmittance must lie in (0, 1)");
  }
  if (std::abs(cfg.alpha() - cfg.alpha1()) > 1e-12) {
    throw std::invalid_argument("generation requires matched displaced amplitudes");
  }
  const HybridChannel target = build_channel(cfg.beta, cfg.cutoff);

  // Modes: 0 SCS, 1 coherent pump, 2-3 rails, 4-5 heralds.
  const FockState scs = scs_state(Parity::even, cfg.beta, cfg.cutoff);
  const FockState pump = displaced_number_state(0, -cfg.beta1, cfg.cutoff);
  FockState state = tensor(tensor(scs, pump), entangled_pair());
  state = apply_beam_splitter(state, BeamSplitterSpec::make(cfg.t, 0, 4));
  state = apply_beam_splitter(state, BeamSplitterSpec::make(cfg.t, 1, 5));

  // Pump output reference for factoring the pure channel state back out.
  const FockState pump_out = displaced_number_state(0, -cfg.beta1 * cfg.t, state.cutoffs()[1]);
  std::vector<cplx> pump_coeffs(state.cutoffs()[1] + 1, 0.0);
  for (const auto& [key, amp] : pump_out.terms()) {
    pump_coeffs[static_cast<int>(key & 0xff)] = amp;
  }

  std::vector<HeraldedChannel> heralds;
  for (int h_scs = 0; h_scs <= herald_max; ++h_scs) {
    for (int h_pump = 0; h_pump <= herald_max; ++h_pump) {
      const ProjectionResult res =
          project(state, std::vector<int>{4, 5}, occupation{h_scs, h_pump});
      HeraldedChannel out{occupation{h_scs, h_pump}, res.probability,
                          FockState({cfg.cutoff, 1, 1}), 0.0};
      if (!res.post_state) {
        heralds.push_back(std::move(out));
        continue;
      }
      // Post modes: (SCS out, pump out, rail, rail). Correct the rails,
      // trace the pump for the fidelity, and project the pump onto its
      // coherent reference to report a pure channel state.
      FockState corrected =
          apply_dual_rail_gate(*res.post_state, 2, 3, DualRailGate::hadamard());
      corrected = apply_dual_rail_gate(corrected, 2, 3, DualRailGate::z_power(h_scs));

      FockState channel_ref = target.state;
      for (int m = 0; m < 3; ++m) {
        const int have = corrected.cutoffs()[m == 0 ? 0 : m + 1];
        channel_ref.raise_cutoff(m, have);
      }
      out.fidelity = reduced_density(corrected, {0, 2, 3}).fidelity_with(channel_ref);

      FockState pure({corrected.cutoffs()[0], corrected.cutoffs()[2], corrected.cutoffs()[3]});
      for (const auto& [key, amp] : corrected.terms()) {
        const occupation occ = FockState::unpack(key, 4);
        if (occ[1] >= static_cast<int>(pump_coeffs.size())) continue;
        const cplx c = std::conj(pump_coeffs[occ[1]]) * amp;
        if (c == cplx(0.0)) continue;
        pure.add({occ[0], occ[2], occ[3]}, c);
      }
      out.state = pure.norm() > 1e-12 ? pure.normalized() : pure;
      heralds.push_back(std::move(out));
    }
  }
  return heralds;
}

FockState ideal_generation_state(double beta, double alpha, int cutoff, int herald_max) {
  if (beta <= 0.0 || alpha <= 0.0) throw std::invalid_argument("amplitudes must be positive");
  const double n_plus = scs_normalization(Parity::even, beta);
  const double f2 = std::exp(-alpha * alpha);  // matched displaced amplitudes

  // Modes: 0 channel coherent, 1-2 rails, 3-4 heralds. Branch sign sigma
  // follows the SCS coherent component; the pair's herald halves are
  // displaced by -sigma*alpha (SCS side) and +alpha (pump side).
  FockState out({cutoff, 1, 1, herald_max, herald_max});
  for (int branch = 0; branch < 2; ++branch) {
    const double sigma = branch == 0 ? -1.0 : 1.0;
    const FockState coh = displaced_number_state(0, sigma * beta, cutoff);
    for (int n = 0; n <= herald_max; ++n) {
      for (int m = 0; m <= herald_max; ++m) {
        const cplx c01 = coeff(0, n, -sigma * alpha) * coeff(1, m, alpha);
        const cplx c10 = coeff(1, n, -sigma * alpha) * coeff(0, m, alpha);
        const double scale = n_plus * f2 / std::sqrt(2.0);
        for (const auto& [key, amp] : coh.terms()) {
          const int k0 = static_cast<int>(key & 0xff);
          if (c01 != cplx(0.0)) out.add({k0, 0, 1, n, m}, scale * amp * c01);
          if (c10 != cplx(0.0)) out.add({k0, 1, 0, n, m}, scale * amp * c10);
        }
      }
    }
  }
  return out.normalized();
}

}  // namespace qteleport
