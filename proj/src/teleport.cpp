#include "qteleport/teleport.hpp"

#include <cmath>

#include "qteleport/displaced.hpp"

namespace qteleport {

namespace {

void add_scaled(FockState& target, const FockState& source, cplx scale) {
  for (const auto& [key, amp] : source.terms()) target.add_packed(key, amp * scale);
}

// Principal eigenvector of the {|01>, |10>} block, phase-fixed so the
// larger component is real positive.
Qubit dual_rail_qubit_from_density(const DensityOperator& rho) {
  Eigen::Matrix2cd blk;
  blk(0, 0) = rho.element({0, 1}, {0, 1});
  blk(0, 1) = rho.element({0, 1}, {1, 0});
  blk(1, 0) = rho.element({1, 0}, {0, 1});
  blk(1, 1) = rho.element({1, 0}, {1, 0});
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(blk);
  const int top = solver.eigenvalues()(1) >= solver.eigenvalues()(0) ? 1 : 0;
  Eigen::Vector2cd v = solver.eigenvectors().col(top);
  const cplx anchor = std::abs(v(0)) >= std::abs(v(1)) ? v(0) : v(1);
  if (std::abs(anchor) > 0.0) v *= std::conj(anchor) / std::abs(anchor);
  return Qubit{v(0), v(1), Rail::dual}.normalized();
}

Qubit checked_single_rail(const Qubit& qubit) {
  if (qubit.basis != Rail::single) {
    throw std::invalid_argument("teleported qubit must be single-rail");
  }
  return qubit.normalized();
}

}  // namespace

HybridChannel build_channel(double beta, int cutoff) {
  if (beta <= 0.0) throw std::invalid_argument("channel amplitude must be positive");
  const FockState coh_minus = displaced_number_state(0, -beta, cutoff);
  const FockState coh_plus = displaced_number_state(0, beta, cutoff);
  const FockState rail01 = FockState::basis_state({1, 1}, {0, 1});
  const FockState rail10 = FockState::basis_state({1, 1}, {1, 0});
  FockState state({cutoff, 1, 1});
  const double s = 1.0 / std::sqrt(2.0);
  add_scaled(state, tensor(coh_minus, rail01), s);
  add_scaled(state, tensor(coh_plus, rail10), s);
  // The dual-rail parts are orthogonal, so the 1/sqrt(2) form is already
  // unit norm up to truncation; renormalize to remove the truncation residue.
  return {beta, cutoff, state.normalized()};
}

double implied_alpha(double beta, double t) {
  if (!(t > 0.0) || t > 1.0) throw std::invalid_argument("transmittance must lie in (0, 1]");
  return beta * std::sqrt(std::max(0.0, 1.0 - t * t));
}

double implied_beta(double alpha, double t) {
  if (!(t > 0.0) || t >= 1.0) throw std::invalid_argument("transmittance must lie in (0, 1)");
  return alpha / std::sqrt(1.0 - t * t);
}

FockState omega_apply(const Qubit& qubit, double alpha, double beta, int cutoff) {
  if (alpha <= 0.0 || beta <= 0.0) throw std::invalid_argument("amplitudes must be positive");
  const Qubit q = checked_single_rail(qubit);
  const FockState q_fock = to_fock(q, cutoff);
  const FockState displaced_p = apply_displacement(q_fock, 0, alpha);
  const FockState displaced_m = apply_displacement(q_fock, 0, -alpha);
  const FockState coh_minus = displaced_number_state(0, -beta, cutoff);
  const FockState coh_plus = displaced_number_state(0, beta, cutoff);
  const FockState rail01 = FockState::basis_state({1, 1}, {0, 1});
  const FockState rail10 = FockState::basis_state({1, 1}, {1, 0});
  FockState out({cutoff, cutoff, 1, 1});
  const double s = 1.0 / std::sqrt(2.0);
  add_scaled(out, tensor(tensor(coh_minus, displaced_p), rail01), s);
  add_scaled(out, tensor(tensor(coh_plus, displaced_m), rail10), s);
  return out.normalized();
}

FockState alice_mix_exact(const HybridChannel& channel, const Qubit& qubit, double t) {
  const Qubit q = checked_single_rail(qubit);
  const FockState four_mode =
      with_mode_inserted(channel.state, 1, to_fock(q, channel.cutoff));
  return apply_beam_splitter(four_mode, BeamSplitterSpec::make(t, 0, 1));
}

double approximation_fidelity(double alpha, double t, const Qubit& qubit) {
  if (!(t > 0.0) || t > 1.0) throw std::invalid_argument("transmittance must lie in (0, 1]");
  const Qubit q = checked_single_rail(qubit);
  const double f2 = std::exp(-alpha * alpha);
  // beta^2 (1 - 1/t)^2 with beta tied to alpha and t reduces to
  // alpha^2 (1 - t) / (t^2 (1 + t)), which is finite and zero at t = 1.
  const double channel_mismatch = alpha * alpha * (1.0 - t) / (t * t * (1.0 + t));

  auto branch_sum = [&](double a) {
    double sum = 0.0;
    double tm = 1.0;
    for (int m = 0; m <= 170; ++m) {
      const cplx fm = q.a0 * coeff(0, m, a) + q.a1 * coeff(1, m, a);
      const double term = tm * std::norm(fm);
      sum += term;
      if (m > 4 && term < sum * 1e-18) break;
      tm *= t;
    }
    return sum;
  };

  const double total = branch_sum(alpha) + branch_sum(-alpha);
  const double fid = f2 * f2 * std::exp(-channel_mismatch) * 0.25 * total * total;
  return std::min(fid, 1.0);
}

std::vector<OutcomeRecord> alice_measure(const FockState& state, MeasurementModel model,
                                         double beta, int n_max) {
  if (state.mode_count() != 4) {
    throw std::invalid_argument("measurement expects a four-mode post-mixing state");
  }
  if (beta <= 0.0) throw std::invalid_argument("channel amplitude must be positive");
  std::vector<OutcomeRecord> records;

  switch (model) {
    case MeasurementModel::ideal_parity_pnrd: {
      const int cap = std::min(n_max, state.cutoffs()[1]);
      for (int n = 0; n <= cap; ++n) {
        const ProjectionResult photon = project(state, std::vector<int>{1}, occupation{n});
        if (!photon.post_state) continue;
        for (int j = 0; j <= 1; ++j) {
          const auto parity =
              j == 0 ? ModeProjector::parity_even() : ModeProjector::parity_odd();
          const ProjectionResult par = project(*photon.post_state, 0, parity);
          OutcomeRecord rec;
          rec.j = j;
          rec.n = n;
          rec.probability = photon.probability * par.probability;
          rec.message_bits = {j, n % 2};
          rec.alice_pattern = {j, n};
          if (par.post_state) {
            rec.bob_state = dual_rail_qubit_from_density(reduced_density(*par.post_state, {1, 2}));
          }
          records.push_back(std::move(rec));
        }
      }
      break;
    }
    case MeasurementModel::fock_basis: {
      const int cap1 = state.cutoffs()[0];
      const int cap2 = std::min(n_max, state.cutoffs()[1]);
      for (int n1 = 0; n1 <= cap1; ++n1) {
        for (int n2 = 0; n2 <= cap2; ++n2) {
          const ProjectionResult res =
              project(state, std::vector<int>{0, 1}, occupation{n1, n2});
          if (res.probability <= 0.0) continue;
          OutcomeRecord rec;
          rec.j = n1 % 2;
          rec.n = n2;
          rec.probability = res.probability;
          rec.message_bits = {rec.j, n2 % 2};
          rec.alice_pattern = {n1, n2};
          if (res.post_state) {
            rec.bob_state =
                Qubit{res.post_state->amplitude({0, 1}), res.post_state->amplitude({1, 0}),
                      Rail::dual};
            if (rec.bob_state.norm_sq() > 0.0) rec.bob_state = rec.bob_state.normalized();
          }
          records.push_back(std::move(rec));
        }
      }
      break;
    }
    case MeasurementModel::apd_pair: {
      for (int d1 = 0; d1 <= 1; ++d1) {
        const ProjectionResult first =
            project(state, 0, d1 ? ModeProjector::apd_on() : ModeProjector::apd_off());
        if (!first.post_state) {
          OutcomeRecord rec;
          rec.j = d1;
          rec.probability = 0.0;
          records.push_back(std::move(rec));
          continue;
        }
        // apd_off removes the measured mode, apd_on retains it; the
        // teleported mode is therefore the first remaining one either way
        // minus the shift, and Bob's rails stay the last two.
        const int mode2 = d1 ? 1 : 0;
        for (int d2 = 0; d2 <= 1; ++d2) {
          const ProjectionResult second = project(
              *first.post_state, mode2, d2 ? ModeProjector::apd_on() : ModeProjector::apd_off());
          OutcomeRecord rec;
          rec.j = d1;
          rec.n = d2;
          rec.probability = first.probability * second.probability;
          rec.message_bits = {d1, d2};
          rec.alice_pattern = {d1, d2};
          if (second.post_state) {
            const int mc = second.post_state->mode_count();
            rec.bob_state = dual_rail_qubit_from_density(
                reduced_density(*second.post_state, {mc - 2, mc - 1}));
          }
          records.push_back(std::move(rec));
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("unknown measurement model");
  }
  return records;
}

Qubit bob_correct(const OutcomeRecord& record) {
  const int k = (record.j + record.n) % 2;
  const Qubit flipped = dual_rail_apply(record.bob_state, DualRailGate::z_power(k));
  return dual_rail_apply(flipped, DualRailGate::hadamard()).normalized();
}

double direct_prob(int n, double alpha, double a1_abs) {
  if (n < 0) throw std::invalid_argument("photon number must be nonnegative");
  if (a1_abs < 0.0 || a1_abs > 1.0) throw std::invalid_argument("|a1| must lie in [0, 1]");
  const double a2 = std::norm(modulation_factor(n, alpha));
  const double weight = 1.0 + (a2 - 1.0) * a1_abs * a1_abs;
  return std::exp(-alpha * alpha) * std::pow(alpha * alpha, n) / factorial(n) * weight;
}

ProbabilityReport direct_success_probs(double alpha, double a1_abs, int n_max) {
  ProbabilityReport report{DistributionKind::direct, alpha, a1_abs, {}, 0.0};
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double p = direct_prob(n, alpha, a1_abs);
    report.values[n] = p;
    sum += p;
  }
  report.tail = 1.0 - sum;
  return report;
}

Qubit prepare_am_qubit(const Qubit& qubit, int mod_index, double alpha) {
  if (mod_index != 0 && mod_index != 1) throw std::invalid_argument("mod index must be 0 or 1");
  const Qubit q = qubit.normalized();
  const cplx a_k = modulation_factor(mod_index, alpha);
  if (std::abs(a_k) < 1e-14) {
    throw std::domain_error("modulation factor vanishes; premodulation undefined");
  }
  return Qubit{q.a0, q.a1 / a_k, q.basis}.normalized();
}

double am_prob(int mod_index, int n, double alpha, double a1_abs) {
  if (mod_index != 0 && mod_index != 1) throw std::invalid_argument("mod index must be 0 or 1");
  if (n < 0) throw std::invalid_argument("photon number must be nonnegative");
  if (a1_abs < 0.0 || a1_abs > 1.0) throw std::invalid_argument("|a1| must lie in [0, 1]");
  const double a1_sq = a1_abs * a1_abs;
  const double ak2 = std::norm(modulation_factor(mod_index, alpha));
  const double an2 = std::norm(modulation_factor(n, alpha));
  const double numer = 1.0 + (an2 / ak2 - 1.0) * a1_sq;
  const double denom = 1.0 + (1.0 / ak2 - 1.0) * a1_sq;
  return std::exp(-alpha * alpha) * std::pow(alpha * alpha, n) / factorial(n) * numer / denom;
}

ProbabilityReport am_success_probs(int mod_index, double alpha, double a1_abs, int n_max) {
  ProbabilityReport report{mod_index == 0 ? DistributionKind::am0 : DistributionKind::am1, alpha,
                           a1_abs, {}, 0.0};
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double p = am_prob(mod_index, n, alpha, a1_abs);
    report.values[n] = p;
    sum += p;
  }
  report.tail = 1.0 - sum;
  return report;
}

}  // namespace qteleport
