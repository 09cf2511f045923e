#include "qteleport/demod.hpp"

#include <cmath>

#include "qteleport/displaced.hpp"

namespace qteleport {

namespace {

constexpr double kOriginalFidelityTol = 1e-6;

// Known multiplicative distortion of the post-teleportation state handed to
// demodulation: A_1/A_0 after a mod-0 run ends on n=1, A_0/A_1 after a
// mod-1 run ends on n=0.
cplx am_distortion(int which, double alpha) {
  if (which != 0 && which != 1) throw std::invalid_argument("which must be 0 or 1");
  return modulation_factor(1 - which, alpha) / modulation_factor(which, alpha);
}

Qubit implied_original(const Qubit& am_qubit, cplx distortion) {
  const Qubit q = am_qubit.normalized();
  return Qubit{q.a0, q.a1 / distortion, q.basis}.normalized();
}

Qubit single_rail_from_post(const FockState& post) {
  Qubit q{post.amplitude({0}), post.amplitude({1}), Rail::single};
  return q.norm_sq() > 0.0 ? q.normalized() : Qubit{0.0, 0.0, Rail::single};
}

double direct_restore_prob(const std::vector<OutcomeRecord>& records, int n_wanted) {
  double p = 0.0;
  for (const auto& rec : records) {
    if (rec.n == n_wanted) p += rec.probability;
  }
  return p;
}

}  // namespace

GammaSolution solve_gamma(int which, double alpha) {
  if (which != 0 && which != 1) throw std::invalid_argument("which must be 0 or 1");
  if (!(alpha > 0.0) || alpha > 0.8) throw std::invalid_argument("alpha must lie in (0, 0.8]");
  const cplx ratio = which == 0
                         ? modulation_factor(1, alpha) / modulation_factor(0, alpha)
                         : modulation_factor(0, alpha) / modulation_factor(1, alpha);
  auto h = [&](double g) {
    const cplx c_num = which == 0 ? coeff(0, 1, g) : coeff(0, 0, g);
    const cplx c_den = which == 0 ? coeff(1, 1, g) : coeff(1, 0, g);
    return (ratio * c_num / c_den).real() - 1.0;
  };

  // Scan each side of the origin for a sign change, then bisect. Poles sit
  // at g = 0 (which = 1) and g = +-1 (which = 0).
  const double lo_abs = 1e-9;
  const double hi_abs = 1.0 - 1e-9;
  constexpr int kScan = 4000;
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? -1.0 : 1.0;
    double prev_g = sign * lo_abs;
    double prev_h = h(prev_g);
    for (int i = 1; i <= kScan; ++i) {
      const double g = sign * (lo_abs + (hi_abs - lo_abs) * i / kScan);
      const double hg = h(g);
      if (std::isfinite(prev_h) && std::isfinite(hg) && prev_h * hg <= 0.0) {
        double a = prev_g;
        double b = g;
        double ha = prev_h;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (a + b);
          const double hm = h(mid);
          if (!std::isfinite(hm)) break;
          if (ha * hm <= 0.0) {
            b = mid;
          } else {
            a = mid;
            ha = hm;
          }
        }
        const double root = 0.5 * (a + b);
        return {which, alpha, cplx(root, 0.0), std::abs(h(root))};
      }
      prev_g = g;
      prev_h = hg;
    }
  }
  throw std::runtime_error("no demodulation root found for |gamma| < 1");
}

std::vector<DemodOutcome> demod_coherent(const Qubit& am_qubit, int which, double alpha) {
  const cplx distortion = am_distortion(which, alpha);
  const Qubit b = am_qubit.normalized();
  const Qubit original = implied_original(b, distortion).rebased(Rail::single);
  const GammaSolution sol = solve_gamma(which, alpha);

  // Photon rail carrying a0 is the one the ancilla dresses; after the
  // heralding measurement the qubit lives on the other rail alone.
  FockState state({1, kDefaultCutoff});
  if (b.a0 != cplx(0.0)) state.add({0, 1}, b.a0);
  if (b.a1 != cplx(0.0)) state.add({1, 0}, b.a1);
  const FockState displaced = apply_displacement(state, 1, sol.gamma);

  std::vector<DemodOutcome> outcomes;
  for (int k = 0; k <= displaced.cutoffs()[1]; ++k) {
    const ProjectionResult res = project(displaced, std::vector<int>{1}, occupation{k});
    if (res.probability <= 0.0 && k > 2) continue;
    DemodOutcome out;
    out.herald = k == 0 ? DemodOutcome::Herald::vacuum
                        : (k == 1 ? DemodOutcome::Herald::single_photon
                                  : DemodOutcome::Herald::pattern);
    out.pattern = {k};
    out.probability = res.probability;
    if (res.post_state) {
      out.resulting_qubit = single_rail_from_post(*res.post_state);
      if (out.resulting_qubit.norm_sq() > 0.0) {
        out.is_original = qubit_fidelity(out.resulting_qubit, original) >= 1.0 - kOriginalFidelityTol;
      }
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

std::vector<DemodOutcome> demod_coherent_htbs(const Qubit& am_qubit, int which, double alpha,
                                              double t) {
  const cplx distortion = am_distortion(which, alpha);
  const Qubit b = am_qubit.normalized();
  const Qubit original = implied_original(b, distortion).rebased(Rail::single);
  const GammaSolution sol = solve_gamma(which, alpha);

  FockState state({1, kDefaultCutoff});
  if (b.a0 != cplx(0.0)) state.add({0, 1}, b.a0);
  if (b.a1 != cplx(0.0)) state.add({1, 0}, b.a1);
  const FockState joint = htbs_displace(state, 1, sol.gamma, t);

  std::vector<DemodOutcome> outcomes;
  for (int k = 0; k <= 4; ++k) {
    const ProjectionResult res = project(joint, std::vector<int>{1}, occupation{k});
    DemodOutcome out;
    out.herald = k == 0 ? DemodOutcome::Herald::vacuum
                        : (k == 1 ? DemodOutcome::Herald::single_photon
                                  : DemodOutcome::Herald::pattern);
    out.pattern = {k};
    out.probability = res.probability;
    if (res.post_state) {
      // Remaining modes: the qubit rail and the splitter ancilla.
      const DensityOperator rho = reduced_density(*res.post_state, {0});
      Eigen::Matrix2cd blk;
      blk(0, 0) = rho.element({0}, {0});
      blk(0, 1) = rho.element({0}, {1});
      blk(1, 0) = rho.element({1}, {0});
      blk(1, 1) = rho.element({1}, {1});
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(blk);
      const int top = solver.eigenvalues()(1) >= solver.eigenvalues()(0) ? 1 : 0;
      out.resulting_qubit = Qubit{solver.eigenvectors()(0, top), solver.eigenvectors()(1, top),
                                  Rail::single}
                                .normalized();
      out.is_original =
          qubit_fidelity(out.resulting_qubit, original) >= 1.0 - kOriginalFidelityTol;
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

double coherent_success_closed(int which, double alpha, double a1_abs) {
  const double g = solve_gamma(which, alpha).gamma.real();
  const double g2 = g * g;
  if (which == 0) {
    const double extra = std::exp(-g2) * alpha * alpha * (1.0 - g2) * (1.0 - g2);
    return am_prob(0, 0, alpha, a1_abs) * (1.0 + extra);
  }
  const double extra = std::exp(-g2) * g2 / (alpha * alpha);
  return am_prob(1, 1, alpha, a1_abs) * (1.0 + extra);
}

namespace {

// Shared teleport-then-demodulate pipeline; `demod` maps the corrected AM
// qubit to its heralded outcome list.
template <typename DemodFn>
double success_circuit(int which, double alpha, double a1_abs, DemodFn&& demod) {
  const double beta = 0.3;  // distributions are channel-amplitude independent
  const Qubit original{std::sqrt(std::max(0.0, 1.0 - a1_abs * a1_abs)), a1_abs, Rail::single};
  const Qubit premod = prepare_am_qubit(original, which, alpha);
  const FockState mixed = omega_apply(premod, alpha, beta);
  const auto records = alice_measure(mixed, MeasurementModel::ideal_parity_pnrd, beta);

  const double p_direct = direct_restore_prob(records, which);
  double total = p_direct;
  for (const auto& rec : records) {
    if (rec.n != 1 - which || rec.probability <= 0.0) continue;
    const Qubit am_state = bob_correct(rec);
    double herald_success = 0.0;
    for (const auto& out : demod(am_state)) {
      if (out.is_original) herald_success += out.probability;
    }
    total += rec.probability * herald_success;
  }
  return total;
}

}  // namespace

double coherent_success_circuit(int which, double alpha, double a1_abs) {
  return success_circuit(which, alpha, a1_abs, [&](const Qubit& q) {
    return demod_coherent(q, which, alpha);
  });
}

std::vector<DemodOutcome> demod_swap(const Qubit& am_qubit, int which, double alpha) {
  const cplx distortion = am_distortion(which, alpha);
  const Qubit b = am_qubit.normalized();
  const Qubit original = implied_original(b, distortion).rebased(Rail::dual);

  FockState qubit_state({1, 1});
  if (b.a0 != cplx(0.0)) qubit_state.add({0, 1}, b.a0);
  if (b.a1 != cplx(0.0)) qubit_state.add({1, 0}, b.a1);
  const double d_norm = 1.0 / std::sqrt(std::norm(distortion) + 1.0);
  FockState aux({1, 1});
  aux.add({0, 1}, distortion * d_norm);
  aux.add({1, 0}, d_norm);

  const FockState mixed =
      apply_beam_splitter(tensor(qubit_state, aux), BeamSplitterSpec::make(std::sqrt(0.5), 1, 2));

  std::vector<DemodOutcome> outcomes;
  for (int n2 = 0; n2 <= 2; ++n2) {
    for (int n3 = 0; n3 + n2 <= 2; ++n3) {
      const ProjectionResult res = project(mixed, std::vector<int>{1, 2}, occupation{n2, n3});
      DemodOutcome out;
      out.herald = DemodOutcome::Herald::pattern;
      out.pattern = {n2, n3};
      out.probability = res.probability;
      if (res.post_state) {
        Qubit q{res.post_state->amplitude({0, 1}), res.post_state->amplitude({1, 0}), Rail::dual};
        if ((n2 == 0 && n3 == 1) || (n2 == 1 && n3 == 0)) {
          // The |01> herald flips the relative rail phase; Z restores it.
          if (n2 == 0 && n3 == 1) q = dual_rail_apply(q, DualRailGate::pauli_z());
          if (q.norm_sq() > 0.0) {
            out.resulting_qubit = q.normalized();
            out.is_original =
                qubit_fidelity(out.resulting_qubit, original) >= 1.0 - kOriginalFidelityTol;
          }
        } else if (q.norm_sq() > 0.0) {
          out.resulting_qubit = q.normalized();
        }
      }
      outcomes.push_back(std::move(out));
    }
  }
  return outcomes;
}

double swap_success_closed(int which, double alpha, double a1_abs) {
  const double a2 = alpha * alpha;
  const double one_m = 1.0 - a2;
  if (which == 0) {
    const double extra = a2 * one_m * one_m / (a2 * a2 + one_m * one_m);
    return am_prob(0, 0, alpha, a1_abs) * (1.0 + extra);
  }
  const double extra = a2 / (a2 * a2 + one_m * one_m);
  return am_prob(1, 1, alpha, a1_abs) * (1.0 + extra);
}

double swap_success_circuit(int which, double alpha, double a1_abs) {
  return success_circuit(which, alpha, a1_abs, [&](const Qubit& q) {
    return demod_swap(q, which, alpha);
  });
}

DemodOutcome iterate_coherent_extra(const Qubit& residual_qubit, double alpha) {
  const Qubit r = residual_qubit.normalized();
  const GammaSolution sol = solve_gamma(0, alpha);
  // Residual distortion after the first coherent stage on a mod-0 run.
  const cplx distortion =
      am_distortion(0, alpha) / modulation_factor(0, sol.gamma);
  const Qubit original = implied_original(r, distortion).rebased(Rail::single);

  // Transmittance that rescales the amplified rail back onto the original
  // ratio; its sign surplus is a rail phase fixed by Z after the herald.
  const cplx t_req = 1.0 / distortion;
  const double t_mag = std::abs(t_req);
  if (!(t_mag > 0.0) || t_mag >= 1.0) {
    throw std::runtime_error("extra demodulation stage needs a sub-unit transmittance");
  }

  FockState state({kDefaultCutoff, kDefaultCutoff});
  if (r.a0 != cplx(0.0)) state.add({0, 0}, r.a0);
  if (r.a1 != cplx(0.0)) state.add({1, 0}, r.a1);
  const FockState mixed = apply_beam_splitter(state, BeamSplitterSpec::make(t_mag, 0, 1));
  const ProjectionResult res = project(mixed, std::vector<int>{1}, occupation{0});

  DemodOutcome out;
  out.herald = DemodOutcome::Herald::vacuum;
  out.pattern = {0};
  out.probability = res.probability;
  if (res.post_state) {
    Qubit q = single_rail_from_post(*res.post_state);
    if (t_req.real() < 0.0) q = Qubit{q.a0, -q.a1, Rail::single};
    if (q.norm_sq() > 0.0) {
      out.resulting_qubit = q.normalized();
      out.is_original =
          qubit_fidelity(out.resulting_qubit, original) >= 1.0 - kOriginalFidelityTol;
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> extra_stage_reference_candidates(double alpha,
                                                                             double a1_abs) {
  const double g1 = solve_gamma(0, alpha).gamma.real();
  const cplx distortion = am_distortion(0, alpha) / modulation_factor(0, cplx(g1, 0.0));
  const double t_req = std::abs(1.0 / distortion);
  auto reference = [&](double chi) {
    return am_prob(0, 0, alpha, a1_abs) * alpha * alpha * std::exp(-chi * chi) * chi * chi;
  };
  return {{"chi=gamma1", reference(std::abs(g1))}, {"chi=stage-transmittance", reference(t_req)}};
}

double total_success(double p0, double p1, DemodMethod method, double alpha, double a1_abs) {
  if (p0 < 0.0 || p0 > 1.0 || p1 < 0.0 || p1 > 1.0 || p0 + p1 > 1.0 + 1e-9) {
    throw std::invalid_argument("preparation mixture weights are invalid");
  }
  const auto success = method == DemodMethod::coherent ? coherent_success_closed
                                                       : swap_success_closed;
  return p0 * success(0, alpha, a1_abs) + p1 * success(1, alpha, a1_abs);
}

}  // namespace qteleport
