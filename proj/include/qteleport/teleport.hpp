// The full teleportation pipeline: hybrid-channel construction, Alice's
// mixing (exact splitter and ideal displaced-superposition form), the
// measurement models, Bob's correction, and the closed-form success
// probability distributions.

#pragma once

#include <utility>

#include "qteleport/optics.hpp"

namespace qteleport {

// (|0,-beta>_1 |01>_34 + |0,beta>_1 |10>_34) / norm on modes (1,3,4).
struct HybridChannel {
  double beta;
  int cutoff;
  FockState state;
};

HybridChannel build_channel(double beta, int cutoff = kDefaultCutoff);

// Displacement amplitude paired with a channel amplitude at transmittance t.
double implied_alpha(double beta, double t);
// Channel amplitude required for a displacement alpha at transmittance t.
double implied_beta(double alpha, double t);

// Ideal driven interaction: (|0,-b>|01>D(a) + |0,b>|10>D(-a)) |q> / sqrt(2),
// returned on modes (1,2,3,4) and normalized.
FockState omega_apply(const Qubit& qubit, double alpha, double beta,
                      int cutoff = kDefaultCutoff);

// Exact four-mode output of mixing the channel with the qubit on a splitter
// of transmittance t (modes 1,2). The displacement alpha is implied by
// beta and t.
FockState alice_mix_exact(const HybridChannel& channel, const Qubit& qubit, double t);

// Closed-form fidelity between the exact mixing output and its ideal
// displaced form; exactly 1 at t = 1.
double approximation_fidelity(double alpha, double t, const Qubit& qubit);

enum class MeasurementModel { ideal_parity_pnrd, fock_basis, apd_pair };

struct OutcomeRecord {
  int j = 0;                            // 0: even parity / no click, 1: odd / click
  int n = 0;                            // photon count in the teleported mode
  double probability = 0.0;
  std::pair<int, int> message_bits{0, 0};  // (j, parity of n)
  Qubit bob_state{1.0, 0.0, Rail::dual};   // pre-correction
  occupation alice_pattern;             // raw measured pattern, model dependent
};

// Measures modes (1,2) of a post-mixing four-mode state. beta tags the
// channel amplitude for bookkeeping; the projectors themselves are
// parity/number/APD valued.
std::vector<OutcomeRecord> alice_measure(const FockState& state, MeasurementModel model,
                                         double beta, int n_max = 12);

// Z^(j + parity(n)) then H; the ideal-channel result is N_n (a0, A_n a1).
Qubit bob_correct(const OutcomeRecord& record);

enum class DistributionKind { direct, am0, am1 };

struct ProbabilityReport {
  DistributionKind kind;
  double alpha;
  double a1_abs;
  std::map<int, double> values;
  double tail;  // 1 - sum of enumerated values
};

// P_n for the direct protocol: exp(-a^2) a^(2n) (1 + (|A_n|^2 - 1)|a1|^2) / n!.
double direct_prob(int n, double alpha, double a1_abs);
ProbabilityReport direct_success_probs(double alpha, double a1_abs, int n_max = 30);

// Charles' premodulated qubit N_k (a0, A_k^(-1) a1), k = mod_index.
Qubit prepare_am_qubit(const Qubit& qubit, int mod_index, double alpha);

// P_nk for teleporting the premodulated qubit; outcome n = k restores the
// original exactly.
double am_prob(int mod_index, int n, double alpha, double a1_abs);
ProbabilityReport am_success_probs(int mod_index, double alpha, double a1_abs, int n_max = 30);

}  // namespace qteleport
