// Truncated multimode Fock-space states: sparse amplitudes keyed by
// occupation tuple, plus density operators for reduced-state checks.
// All values are immutable after construction; operations return new values.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qteleport {

using cplx = std::complex<double>;
using occupation = std::vector<int>;

inline constexpr int kMaxModes = 8;
inline constexpr int kDefaultCutoff = 24;

// Probabilities below this are reported without a post-selected state.
inline constexpr double kProbabilityUnderflow = 1e-15;
// Raw negative probabilities beyond this floor are bugs, not roundoff.
inline constexpr double kNegativeProbabilityFloor = -1e-10;
// Neglected tail weight allowed when constructing truncated states.
inline constexpr double kTailWeightTol = 1e-10;

// Clamps roundoff into [0,1]; throws if the value is negative beyond the floor.
double clamp_probability(double p);

class FockState {
public:
  explicit FockState(std::vector<int> cutoffs);

  static FockState vacuum(std::vector<int> cutoffs);
  static FockState basis_state(std::vector<int> cutoffs, const occupation& occ);

  int mode_count() const { return static_cast<int>(cutoffs_.size()); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }

  // Accumulates amplitude onto an occupation tuple (bounds checked).
  void add(const occupation& occ, cplx amp);
  cplx amplitude(const occupation& occ) const;

  double norm_sq() const;
  double norm() const;
  FockState normalized() const;
  std::size_t term_count() const { return amps_.size(); }
  bool empty() const { return amps_.empty(); }

  // Occupation tuples pack one byte per mode; iteration order is canonical.
  static std::uint64_t pack(const occupation& occ);
  static occupation unpack(std::uint64_t key, int mode_count);
  const std::map<std::uint64_t, cplx>& terms() const { return amps_; }
  void add_packed(std::uint64_t key, cplx amp);

  // Grows a per-mode cutoff in place (amplitudes untouched).
  void raise_cutoff(int mode, int new_cutoff);

private:
  std::vector<int> cutoffs_;
  std::map<std::uint64_t, cplx> amps_;
};

FockState tensor(const FockState& a, const FockState& b);
// Product-inserts a single-mode state at `position` in the mode ordering.
FockState with_mode_inserted(const FockState& state, int position, const FockState& single_mode);
cplx inner(const FockState& a, const FockState& b);
double state_fidelity(const FockState& a, const FockState& b);

struct ProjectionResult {
  double probability = 0.0;
  // Rank-1 projections factor the measured modes out; subspace projections
  // (apd_on, parity) retain them. Absent when probability underflows.
  std::optional<FockState> post_state;
};

struct ModeProjector {
  enum class Kind { number, apd_off, apd_on, scs_even, scs_odd, parity_even, parity_odd };
  Kind kind = Kind::number;
  int n = 0;
  double beta = 0.0;

  static ModeProjector number_state(int n);
  static ModeProjector apd_off();
  static ModeProjector apd_on();
  static ModeProjector scs_even(double beta);
  static ModeProjector scs_odd(double beta);
  static ModeProjector parity_even();
  static ModeProjector parity_odd();
};

ProjectionResult project(const FockState& state, const std::vector<int>& modes,
                         const occupation& outcome);
ProjectionResult project(const FockState& state, int mode, const ModeProjector& projector);

class DensityOperator {
public:
  DensityOperator(std::vector<int> cutoffs, Eigen::MatrixXcd matrix);
  static DensityOperator from_state(const FockState& state);

  int mode_count() const { return static_cast<int>(cutoffs_.size()); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  Eigen::Index index_of(const occupation& occ) const;
  cplx element(const occupation& bra, const occupation& ket) const;

  double trace_real() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  double entropy_bits() const;
  // Fidelity <psi|rho|psi> against a pure state on the same modes.
  double fidelity_with(const FockState& pure) const;

private:
  std::vector<int> cutoffs_;
  Eigen::MatrixXcd matrix_;
};

DensityOperator reduced_density(const FockState& state, const std::vector<int>& keep_modes);
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep_modes);

}  // namespace qteleport
