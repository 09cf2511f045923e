#include "qteleport/displaced.hpp"

#include <array>
#include <cmath>

namespace qteleport {

namespace {

constexpr int kMaxFactorial = 170;

const std::array<double, kMaxFactorial + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table;
}

cplx pow_int(cplx base, int exp) {
  cplx r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

double binomial(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace

double factorial(int n) {
  if (n < 0 || n > kMaxFactorial) throw std::out_of_range("factorial argument outside [0, 170]");
  return factorial_table()[n];
}

cplx coeff(int l, int n, cplx alpha) {
  if (l < 0 || n < 0) throw std::invalid_argument("coeff indices must be nonnegative");
  // c_ln = alpha^(n-l) / sqrt(l! n!) * sum_k (-1)^k C(l,k) |alpha|^(2k) * ff(n, l-k)
  // with ff(n, j) = n (n-1) ... (n-j+1). Terms with l-k > n vanish; folding
  // alpha^(n-l) |alpha|^(2k) = alpha^(n-l+k) conj(alpha)^k keeps every
  // surviving power nonnegative, so n < l and alpha = 0 need no special case.
  cplx sum = 0.0;
  for (int k = std::max(0, l - n); k <= l; ++k) {
    double ff = 1.0;
    for (int j = 0; j < l - k; ++j) ff *= static_cast<double>(n - j);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binomial(l, k) * ff * pow_int(alpha, n - l + k) * pow_int(std::conj(alpha), k);
  }
  return sum / std::sqrt(factorial(l) * factorial(n));
}

FockState displaced_number_state(int l, cplx alpha, int cutoff) {
  if (l < 0) throw std::invalid_argument("number-state index must be nonnegative");
  const double f = std::exp(-0.5 * std::norm(alpha));
  FockState state({cutoff});
  double weight = 0.0;
  for (int n = 0; n <= cutoff; ++n) {
    const cplx amp = f * coeff(l, n, alpha);
    weight += std::norm(amp);
    if (amp != cplx(0.0)) state.add({n}, amp);
  }
  if (1.0 - weight > kTailWeightTol) {
    throw std::runtime_error("displaced state tail weight " + std::to_string(1.0 - weight) +
                             " exceeds tolerance; raise the cutoff");
  }
  return state.normalized();
}

SCSSpec scs_spec(Parity parity, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("SCS amplitude must be positive");
  const double overlap = std::exp(-2.0 * beta * beta);
  return {parity, beta, 1.0 / std::sqrt(2.0 * (1.0 + overlap)),
          1.0 / std::sqrt(2.0 * (1.0 - overlap))};
}

double scs_normalization(Parity parity, double beta) {
  const SCSSpec spec = scs_spec(parity, beta);
  return parity == Parity::even ? spec.n_plus : spec.n_minus;
}

FockState scs_state(Parity parity, double beta, int cutoff) {
  const double nf = scs_normalization(parity, beta);
  const double f = std::exp(-0.5 * beta * beta);
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  FockState state({cutoff});
  double weight = 0.0;
  for (int n = 0; n <= cutoff; ++n) {
    // c_0n(-beta) + sign * c_0n(beta) keeps only one parity.
    const double c = coeff(0, n, beta).real();
    const double amp = nf * f * (((n % 2 == 0) ? 1.0 : -1.0) * c + sign * c);
    weight += amp * amp;
    if (amp != 0.0) state.add({n}, amp);
  }
  if (1.0 - weight > kTailWeightTol) {
    throw std::runtime_error("SCS tail weight exceeds tolerance; raise the cutoff");
  }
  return state.normalized();
}

double scs_distribution(Parity parity, int n, double beta) {
  if (n < 0) throw std::invalid_argument("photon number must be nonnegative");
  const bool even_n = n % 2 == 0;
  if ((parity == Parity::even) != even_n) return 0.0;
  const double nf = scs_normalization(parity, beta);
  const double b2 = beta * beta;
  return 4.0 * nf * nf * std::exp(-b2) * std::pow(b2, n) / factorial(n);
}

cplx modulation_factor(int n, cplx alpha) {
  if (n < 0) throw std::invalid_argument("outcome index must be nonnegative");
  if (alpha == cplx(0.0)) {
    throw std::domain_error("modulation factor is undefined at alpha = 0");
  }
  return (static_cast<double>(n) - std::norm(alpha)) / alpha;
}

double modulation_normalization(int n, cplx alpha, double a1_abs) {
  const double a2 = std::norm(modulation_factor(n, alpha));
  return 1.0 / std::sqrt(1.0 + (a2 - 1.0) * a1_abs * a1_abs);
}

ModulationFactors modulation_factors(int n, cplx alpha, double a1_abs) {
  const cplx a_n = modulation_factor(n, alpha);
  const double n_n = modulation_normalization(n, alpha, a1_abs);
  const double f = std::exp(-0.5 * std::norm(alpha));
  const cplx g_n = f * pow_int(alpha, n) / (2.0 * n_n * std::sqrt(factorial(n)));
  return {n, alpha, a_n, n_n, g_n};
}

}  // namespace qteleport
