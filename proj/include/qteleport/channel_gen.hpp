// Heralded generation of the hybrid channel from an even SCS, a coherent
// ancilla, and a two-photon entangled pair, mixed pairwise on two highly
// transmissive splitters with number-resolved heralding on the pair's
// second halves.

#pragma once

#include "qteleport/teleport.hpp"

namespace qteleport {

struct GenerationConfig {
  double beta;   // SCS amplitude
  double beta1;  // coherent ancilla amplitude
  double t;      // transmittance of both splitters
  int cutoff = kDefaultCutoff;

  double alpha() const { return implied_alpha(beta, t); }
  double alpha1() const { return implied_alpha(beta1, t); }
};

struct HeraldedChannel {
  occupation herald;   // photon counts on the two measured modes
  double probability;
  FockState state;     // channel modes after the H and Z^n correction
  double fidelity;     // against build_channel(beta)
};

// Simulates the generation circuit exactly and enumerates herald patterns up
// to herald_max photons per measured mode. Every heralded state receives the
// dual-rail H followed by Z^n (n = photon count on the SCS-side herald); the
// correctable patterns come out as the channel, the rest are reported as-is.
std::vector<HeraldedChannel> generate_channel(const GenerationConfig& cfg, int herald_max = 2);

// Closed-form limit of the circuit as t -> 1 at fixed displaced amplitudes:
// a double sum of displaced-state matrix elements over herald occupations.
// Modes ordered as (channel coherent, rail, rail, herald, herald).
FockState ideal_generation_state(double beta, double alpha, int cutoff = kDefaultCutoff,
                                 int herald_max = 6);

}  // namespace qteleport
