#include "qteleport/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qteleport/displaced.hpp"

namespace qteleport {

double clamp_probability(double p) {
  if (p < kNegativeProbabilityFloor) {
    throw std::runtime_error("negative probability beyond roundoff floor: " + std::to_string(p));
  }
  return std::min(1.0, std::max(0.0, p));
}

FockState::FockState(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty() || static_cast<int>(cutoffs_.size()) > kMaxModes) {
    throw std::invalid_argument("mode count must be in [1, 8]");
  }
  for (int c : cutoffs_) {
    if (c < 0 || c > 255) throw std::invalid_argument("per-mode cutoff must be in [0, 255]");
  }
}

FockState FockState::vacuum(std::vector<int> cutoffs) {
  FockState s(std::move(cutoffs));
  s.add(occupation(s.mode_count(), 0), 1.0);
  return s;
}

FockState FockState::basis_state(std::vector<int> cutoffs, const occupation& occ) {
  FockState s(std::move(cutoffs));
  s.add(occ, 1.0);
  return s;
}

std::uint64_t FockState::pack(const occupation& occ) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    key |= static_cast<std::uint64_t>(occ[i] & 0xff) << (8 * i);
  }
  return key;
}

occupation FockState::unpack(std::uint64_t key, int mode_count) {
  occupation occ(mode_count);
  for (int i = 0; i < mode_count; ++i) {
    occ[i] = static_cast<int>((key >> (8 * i)) & 0xff);
  }
  return occ;
}

void FockState::add(const occupation& occ, cplx amp) {
  if (static_cast<int>(occ.size()) != mode_count()) {
    throw std::invalid_argument("occupation tuple length does not match mode count");
  }
  for (int i = 0; i < mode_count(); ++i) {
    if (occ[i] < 0 || occ[i] > cutoffs_[i]) {
      throw std::out_of_range("occupation number outside per-mode cutoff");
    }
  }
  add_packed(pack(occ), amp);
}

void FockState::add_packed(std::uint64_t key, cplx amp) {
  auto [it, inserted] = amps_.try_emplace(key, amp);
  if (!inserted) it->second += amp;
}

cplx FockState::amplitude(const occupation& occ) const {
  auto it = amps_.find(pack(occ));
  return it == amps_.end() ? cplx(0.0) : it->second;
}

double FockState::norm_sq() const {
  double s = 0.0;
  for (const auto& [key, amp] : amps_) s += std::norm(amp);
  return s;
}

double FockState::norm() const { return std::sqrt(norm_sq()); }

FockState FockState::normalized() const {
  const double n = norm();
  if (n < 1e-150) throw std::runtime_error("cannot normalize a near-zero state");
  FockState out(cutoffs_);
  for (const auto& [key, amp] : amps_) out.amps_.emplace(key, amp / n);
  return out;
}

void FockState::raise_cutoff(int mode, int new_cutoff) {
  if (mode < 0 || mode >= mode_count()) throw std::out_of_range("mode index");
  if (new_cutoff > 255) throw std::invalid_argument("cutoff above representable range");
  cutoffs_[mode] = std::max(cutoffs_[mode], new_cutoff);
}

FockState tensor(const FockState& a, const FockState& b) {
  std::vector<int> cutoffs = a.cutoffs();
  cutoffs.insert(cutoffs.end(), b.cutoffs().begin(), b.cutoffs().end());
  FockState out(std::move(cutoffs));
  const int shift = 8 * a.mode_count();
  for (const auto& [ka, va] : a.terms()) {
    for (const auto& [kb, vb] : b.terms()) {
      out.add_packed(ka | (kb << shift), va * vb);
    }
  }
  return out;
}

FockState with_mode_inserted(const FockState& state, int position, const FockState& single_mode) {
  if (single_mode.mode_count() != 1) {
    throw std::invalid_argument("inserted factor must be a single-mode state");
  }
  if (position < 0 || position > state.mode_count()) throw std::out_of_range("insert position");
  std::vector<int> cutoffs = state.cutoffs();
  cutoffs.insert(cutoffs.begin() + position, single_mode.cutoffs()[0]);
  FockState out(std::move(cutoffs));
  for (const auto& [key, amp] : state.terms()) {
    occupation occ = FockState::unpack(key, state.mode_count());
    for (const auto& [ks, vs] : single_mode.terms()) {
      occupation ext = occ;
      ext.insert(ext.begin() + position, static_cast<int>(ks & 0xff));
      out.add(ext, amp * vs);
    }
  }
  return out;
}

cplx inner(const FockState& a, const FockState& b) {
  if (a.mode_count() != b.mode_count()) {
    throw std::invalid_argument("inner product requires matching mode counts");
  }
  // Iterate the smaller support; cutoff differences only bound storage.
  const FockState& small = a.term_count() <= b.term_count() ? a : b;
  const FockState& large = a.term_count() <= b.term_count() ? b : a;
  const bool small_is_a = &small == &a;
  cplx s = 0.0;
  for (const auto& [key, amp] : small.terms()) {
    auto it = large.terms().find(key);
    if (it == large.terms().end()) continue;
    s += small_is_a ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return s;
}

double state_fidelity(const FockState& a, const FockState& b) {
  const double f = std::norm(inner(a, b));
  if (f > 1.0 + 1e-9) throw std::runtime_error("fidelity above one; inputs not normalized");
  return std::min(f, 1.0);
}

ModeProjector ModeProjector::number_state(int n) { return {Kind::number, n, 0.0}; }
ModeProjector ModeProjector::apd_off() { return {Kind::apd_off, 0, 0.0}; }
ModeProjector ModeProjector::apd_on() { return {Kind::apd_on, 0, 0.0}; }
ModeProjector ModeProjector::scs_even(double beta) { return {Kind::scs_even, 0, beta}; }
ModeProjector ModeProjector::scs_odd(double beta) { return {Kind::scs_odd, 0, beta}; }
ModeProjector ModeProjector::parity_even() { return {Kind::parity_even, 0, 0.0}; }
ModeProjector ModeProjector::parity_odd() { return {Kind::parity_odd, 0, 0.0}; }

namespace {

ProjectionResult finish_projection(FockState&& post, double prob_raw) {
  ProjectionResult res;
  res.probability = clamp_probability(prob_raw);
  if (res.probability >= kProbabilityUnderflow) {
    const double scale = 1.0 / std::sqrt(prob_raw);
    FockState scaled(post.cutoffs());
    for (const auto& [key, amp] : post.terms()) scaled.add_packed(key, amp * scale);
    res.post_state = std::move(scaled);
  }
  return res;
}

// Projects onto the subspace where pred(n_mode) holds; the mode is retained.
ProjectionResult project_subspace(const FockState& state, int mode,
                                  const std::function<bool(int)>& pred) {
  FockState post(state.cutoffs());
  double prob = 0.0;
  for (const auto& [key, amp] : state.terms()) {
    const int n = static_cast<int>((key >> (8 * mode)) & 0xff);
    if (!pred(n)) continue;
    prob += std::norm(amp);
    post.add_packed(key, amp);
  }
  return finish_projection(std::move(post), prob);
}

// Projects mode onto the rank-1 state with Fock coefficients coeffs[n];
// the mode is removed from the post-selected state.
ProjectionResult project_rank1(const FockState& state, int mode,
                               const std::vector<cplx>& coeffs) {
  std::vector<int> rest_cutoffs;
  for (int i = 0; i < state.mode_count(); ++i) {
    if (i != mode) rest_cutoffs.push_back(state.cutoffs()[i]);
  }
  FockState post(rest_cutoffs);
  for (const auto& [key, amp] : state.terms()) {
    const int n = static_cast<int>((key >> (8 * mode)) & 0xff);
    if (n >= static_cast<int>(coeffs.size())) continue;
    const cplx c = std::conj(coeffs[n]) * amp;
    if (c == cplx(0.0)) continue;
    occupation occ = FockState::unpack(key, state.mode_count());
    occ.erase(occ.begin() + mode);
    post.add(occ, c);
  }
  const double prob = post.norm_sq();
  return finish_projection(std::move(post), prob);
}

}  // namespace

ProjectionResult project(const FockState& state, const std::vector<int>& modes,
                         const occupation& outcome) {
  if (modes.size() != outcome.size()) {
    throw std::invalid_argument("projection outcome length mismatch");
  }
  for (int m : modes) {
    if (m < 0 || m >= state.mode_count()) throw std::out_of_range("projection mode index");
  }
  std::vector<int> rest_cutoffs;
  for (int i = 0; i < state.mode_count(); ++i) {
    if (std::find(modes.begin(), modes.end(), i) == modes.end()) {
      rest_cutoffs.push_back(state.cutoffs()[i]);
    }
  }
  if (rest_cutoffs.empty()) {
    // Full projection: probability only, no residual modes.
    occupation occ(state.mode_count());
    for (std::size_t k = 0; k < modes.size(); ++k) occ[modes[k]] = outcome[k];
    ProjectionResult res;
    res.probability = clamp_probability(std::norm(state.amplitude(occ)));
    return res;
  }
  FockState post(rest_cutoffs);
  double prob = 0.0;
  for (const auto& [key, amp] : state.terms()) {
    bool match = true;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      if (static_cast<int>((key >> (8 * modes[k])) & 0xff) != outcome[k]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    prob += std::norm(amp);
    occupation occ = FockState::unpack(key, state.mode_count());
    occupation rest;
    for (int i = 0; i < state.mode_count(); ++i) {
      if (std::find(modes.begin(), modes.end(), i) == modes.end()) rest.push_back(occ[i]);
    }
    post.add(rest, amp);
  }
  return finish_projection(std::move(post), prob);
}

ProjectionResult project(const FockState& state, int mode, const ModeProjector& projector) {
  if (mode < 0 || mode >= state.mode_count()) throw std::out_of_range("projection mode index");
  const int cutoff = state.cutoffs()[mode];
  switch (projector.kind) {
    case ModeProjector::Kind::number:
      return project(state, std::vector<int>{mode}, occupation{projector.n});
    case ModeProjector::Kind::apd_off:
      return project(state, std::vector<int>{mode}, occupation{0});
    case ModeProjector::Kind::apd_on:
      return project_subspace(state, mode, [](int n) { return n >= 1; });
    case ModeProjector::Kind::parity_even:
      return project_subspace(state, mode, [](int n) { return n % 2 == 0; });
    case ModeProjector::Kind::parity_odd:
      return project_subspace(state, mode, [](int n) { return n % 2 == 1; });
    case ModeProjector::Kind::scs_even:
    case ModeProjector::Kind::scs_odd: {
      const Parity parity =
          projector.kind == ModeProjector::Kind::scs_even ? Parity::even : Parity::odd;
      const FockState scs = scs_state(parity, projector.beta, cutoff);
      std::vector<cplx> coeffs(cutoff + 1, 0.0);
      for (const auto& [key, amp] : scs.terms()) coeffs[static_cast<int>(key & 0xff)] = amp;
      return project_rank1(state, mode, coeffs);
    }
  }
  throw std::invalid_argument("unknown projector");
}

DensityOperator::DensityOperator(std::vector<int> cutoffs, Eigen::MatrixXcd matrix)
    : cutoffs_(std::move(cutoffs)), matrix_(std::move(matrix)) {
  Eigen::Index dim = 1;
  for (int c : cutoffs_) dim *= (c + 1);
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("density matrix dimension does not match cutoffs");
  }
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if (hermiticity_error() > 1e-12 * scale) {
    throw std::runtime_error("density matrix is not Hermitian within tolerance");
  }
}

DensityOperator DensityOperator::from_state(const FockState& state) {
  Eigen::Index dim = 1;
  for (int c : state.cutoffs()) dim *= (c + 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  auto index = [&](std::uint64_t key) {
    Eigen::Index idx = 0;
    for (int i = 0; i < state.mode_count(); ++i) {
      idx = idx * (state.cutoffs()[i] + 1) + static_cast<int>((key >> (8 * i)) & 0xff);
    }
    return idx;
  };
  std::vector<std::pair<Eigen::Index, cplx>> entries;
  for (const auto& [key, amp] : state.terms()) entries.emplace_back(index(key), amp);
  for (const auto& [i, ai] : entries) {
    for (const auto& [j, aj] : entries) m(i, j) += ai * std::conj(aj);
  }
  return DensityOperator(state.cutoffs(), std::move(m));
}

Eigen::Index DensityOperator::index_of(const occupation& occ) const {
  if (static_cast<int>(occ.size()) != mode_count()) {
    throw std::invalid_argument("occupation length mismatch");
  }
  Eigen::Index idx = 0;
  for (int i = 0; i < mode_count(); ++i) {
    if (occ[i] < 0 || occ[i] > cutoffs_[i]) throw std::out_of_range("occupation outside cutoff");
    idx = idx * (cutoffs_[i] + 1) + occ[i];
  }
  return idx;
}

cplx DensityOperator::element(const occupation& bra, const occupation& ket) const {
  return matrix_(index_of(bra), index_of(ket));
}

double DensityOperator::trace_real() const { return matrix_.trace().real(); }

double DensityOperator::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityOperator::entropy_bits() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double p = solver.eigenvalues()[i];
    if (p < kNegativeProbabilityFloor) {
      throw std::runtime_error("density operator has a significantly negative eigenvalue");
    }
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

double DensityOperator::fidelity_with(const FockState& pure) const {
  if (pure.mode_count() != mode_count()) {
    throw std::invalid_argument("fidelity requires matching mode counts");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
  for (const auto& [key, amp] : pure.terms()) {
    v(index_of(FockState::unpack(key, pure.mode_count()))) = amp;
  }
  const cplx f = v.adjoint() * (matrix_ * v);
  return clamp_probability(f.real());
}

DensityOperator reduced_density(const FockState& state, const std::vector<int>& keep_modes) {
  if (keep_modes.empty()) throw std::invalid_argument("keep set must be nonempty");
  for (int m : keep_modes) {
    if (m < 0 || m >= state.mode_count()) throw std::out_of_range("keep mode index");
  }
  std::vector<int> kept_cutoffs;
  for (int m : keep_modes) kept_cutoffs.push_back(state.cutoffs()[m]);
  Eigen::Index dim = 1;
  for (int c : kept_cutoffs) dim *= (c + 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);

  // Group amplitudes by the traced-out part; each group contributes an
  // outer product of its kept-part amplitudes.
  std::map<std::uint64_t, std::vector<std::pair<Eigen::Index, cplx>>> groups;
  for (const auto& [key, amp] : state.terms()) {
    std::uint64_t traced_key = 0;
    Eigen::Index kept_idx = 0;
    int shift = 0;
    for (int i = 0; i < state.mode_count(); ++i) {
      const int n = static_cast<int>((key >> (8 * i)) & 0xff);
      if (std::find(keep_modes.begin(), keep_modes.end(), i) == keep_modes.end()) {
        traced_key |= static_cast<std::uint64_t>(n) << shift;
        shift += 8;
      }
    }
    for (int km : keep_modes) {
      const int n = static_cast<int>((key >> (8 * km)) & 0xff);
      kept_idx = kept_idx * (state.cutoffs()[km] + 1) + n;
    }
    groups[traced_key].emplace_back(kept_idx, amp);
  }
  for (const auto& [tk, entries] : groups) {
    for (const auto& [i, ai] : entries) {
      for (const auto& [j, aj] : entries) m(i, j) += ai * std::conj(aj);
    }
  }
  return DensityOperator(kept_cutoffs, std::move(m));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep_modes) {
  if (keep_modes.empty()) throw std::invalid_argument("keep set must be nonempty");
  for (int m : keep_modes) {
    if (m < 0 || m >= rho.mode_count()) throw std::out_of_range("keep mode index");
  }
  const int M = rho.mode_count();
  std::vector<int> kept_cutoffs;
  for (int m : keep_modes) kept_cutoffs.push_back(rho.cutoffs()[m]);
  Eigen::Index kept_dim = 1;
  for (int c : kept_cutoffs) kept_dim *= (c + 1);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept_dim, kept_dim);

  // Walk every matrix element; fold pairs agreeing on the traced modes.
  std::vector<int> radices(M);
  for (int i = 0; i < M; ++i) radices[i] = rho.cutoffs()[i] + 1;
  const Eigen::Index dim = rho.dim();
  auto decode = [&](Eigen::Index idx) {
    occupation occ(M);
    for (int i = M - 1; i >= 0; --i) {
      occ[i] = static_cast<int>(idx % radices[i]);
      idx /= radices[i];
    }
    return occ;
  };
  auto kept_index = [&](const occupation& occ) {
    Eigen::Index idx = 0;
    for (int km : keep_modes) idx = idx * radices[km] + occ[km];
    return idx;
  };
  for (Eigen::Index i = 0; i < dim; ++i) {
    const occupation oi = decode(i);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const occupation oj = decode(j);
      bool traced_match = true;
      for (int m = 0; m < M && traced_match; ++m) {
        if (std::find(keep_modes.begin(), keep_modes.end(), m) == keep_modes.end() &&
            oi[m] != oj[m]) {
          traced_match = false;
        }
      }
      if (traced_match) out(kept_index(oi), kept_index(oj)) += rho.matrix()(i, j);
    }
  }
  return DensityOperator(kept_cutoffs, std::move(out));
}

}  // namespace qteleport
