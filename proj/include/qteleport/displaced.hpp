// Closed-form matrix elements of displaced number states, even/odd
// superpositions of coherent states, and the modulation-factor algebra.

#pragma once

#include "qteleport/fock.hpp"

namespace qteleport {

double factorial(int n);  // exact in double up to n = 170

// Matrix element c_ln(alpha) of |l, alpha> = D(alpha)|l> over the number
// basis, without the common factor F = exp(-|alpha|^2 / 2):
//   <n| D(alpha) |l> = F * c_ln(alpha).
// Satisfies c_ln(-alpha) = (-1)^(n-l) c_ln(alpha) and F^2 sum_n |c_ln|^2 = 1.
cplx coeff(int l, int n, cplx alpha);

// D(alpha)|l> truncated at `cutoff`; fails if the neglected tail weight
// exceeds kTailWeightTol. Normalized on return.
FockState displaced_number_state(int l, cplx alpha, int cutoff = kDefaultCutoff);

enum class Parity { even, odd };

struct SCSSpec {
  Parity parity;
  double beta;
  double n_plus;   // (2(1 + exp(-2 beta^2)))^(-1/2)
  double n_minus;  // (2(1 - exp(-2 beta^2)))^(-1/2)
};

SCSSpec scs_spec(Parity parity, double beta);
double scs_normalization(Parity parity, double beta);

// N_+(|0,-beta> + |0,beta>) or N_-(|0,-beta> - |0,beta>), normalized.
FockState scs_state(Parity parity, double beta, int cutoff = kDefaultCutoff);

// Photon-number distribution of the even/odd state; zero off-parity.
double scs_distribution(Parity parity, int n, double beta);

// Modulation factor A_n = (n - |alpha|^2) / alpha; alpha = 0 is an error,
// not a limit.
cplx modulation_factor(int n, cplx alpha);

// N_n = (1 + (|A_n|^2 - 1) |a1|^2)^(-1/2) for a qubit amplitude |a1|.
double modulation_normalization(int n, cplx alpha, double a1_abs);

struct ModulationFactors {
  int n;
  cplx alpha;
  cplx a_n;
  double n_n;
  cplx g_n;  // F alpha^n / (2 N_n sqrt(n!))
};

ModulationFactors modulation_factors(int n, cplx alpha, double a1_abs);

}  // namespace qteleport
