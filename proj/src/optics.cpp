#include "qteleport/optics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qteleport/displaced.hpp"

namespace qteleport {

namespace {

// Parallel paths only pay off once the term list is reasonably large.
constexpr std::size_t kParallelThreshold = 4096;

bool use_parallel(Exec exec, std::size_t work) {
#ifdef _OPENMP
  if (exec == Exec::parallel) return true;
  if (exec == Exec::automatic) return work >= kParallelThreshold && omp_get_max_threads() > 1;
#else
  (void)exec;
  (void)work;
#endif
  return false;
}

// Dense unitary of one total-photon block: entry (k, n1) is the amplitude
// for |n1, N-n1> -> |k, N-k>, from the binomial expansion of
// (t a^+ - r b^+)^n1 (r a^+ + t b^+)^(N-n1).
Eigen::MatrixXcd bs_block(int total, double t, double r) {
  const int dim = total + 1;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n1 = 0; n1 <= total; ++n1) {
    const int n2 = total - n1;
    const double in_norm = std::sqrt(factorial(n1) * factorial(n2));
    for (int i = 0; i <= n1; ++i) {
      for (int j = 0; j <= n2; ++j) {
        const int k = i + j;
        const double c = factorial(n1) / (factorial(i) * factorial(n1 - i)) *
                         factorial(n2) / (factorial(j) * factorial(n2 - j));
        const double sign = ((n1 - i) % 2 == 0) ? 1.0 : -1.0;
        const double amp = c * std::pow(t, i + n2 - j) * std::pow(r, (n1 - i) + j) * sign *
                           std::sqrt(factorial(k) * factorial(total - k)) / in_norm;
        u(k, n1) += amp;
      }
    }
  }
  return u;
}

struct BsEntry {
  std::uint64_t base_key;  // input key with the pair bytes cleared
  int n_a;
  int n_b;
  cplx amp;
};

void spread_entry(const BsEntry& e, int mode_a, int mode_b, const Eigen::MatrixXcd& block,
                  std::map<std::uint64_t, cplx>& out) {
  const int total = e.n_a + e.n_b;
  for (int k = 0; k <= total; ++k) {
    const cplx v = block(k, e.n_a) * e.amp;
    if (v == cplx(0.0)) continue;
    const std::uint64_t key = e.base_key |
                              (static_cast<std::uint64_t>(k) << (8 * mode_a)) |
                              (static_cast<std::uint64_t>(total - k) << (8 * mode_b));
    auto [it, inserted] = out.try_emplace(key, v);
    if (!inserted) it->second += v;
  }
}

}  // namespace

BeamSplitterSpec BeamSplitterSpec::make(double t, int mode_a, int mode_b) {
  if (!(t > 0.0) || t > 1.0) throw std::invalid_argument("transmittance must lie in (0, 1]");
  if (mode_a == mode_b) throw std::invalid_argument("beam splitter needs two distinct modes");
  return {t, std::sqrt(std::max(0.0, 1.0 - t * t)), mode_a, mode_b};
}

BeamSplitterSpec BeamSplitterSpec::inverse() const { return {t, -r, mode_a, mode_b}; }

FockState apply_beam_splitter(const FockState& state, const BeamSplitterSpec& bs, Exec exec) {
  if (bs.mode_a < 0 || bs.mode_a >= state.mode_count() || bs.mode_b < 0 ||
      bs.mode_b >= state.mode_count()) {
    throw std::out_of_range("beam splitter mode index");
  }
  const std::uint64_t mask = ~((std::uint64_t{0xff} << (8 * bs.mode_a)) |
                               (std::uint64_t{0xff} << (8 * bs.mode_b)));
  std::vector<BsEntry> entries;
  entries.reserve(state.term_count());
  int max_total = 0;
  std::set<int> totals;
  for (const auto& [key, amp] : state.terms()) {
    BsEntry e;
    e.base_key = key & mask;
    e.n_a = static_cast<int>((key >> (8 * bs.mode_a)) & 0xff);
    e.n_b = static_cast<int>((key >> (8 * bs.mode_b)) & 0xff);
    e.amp = amp;
    max_total = std::max(max_total, e.n_a + e.n_b);
    totals.insert(e.n_a + e.n_b);
    entries.push_back(e);
  }

  std::vector<Eigen::MatrixXcd> blocks(max_total + 1);
  for (int n : totals) blocks[n] = bs_block(n, bs.t, bs.r);

  FockState out(state.cutoffs());
  out.raise_cutoff(bs.mode_a, max_total);
  out.raise_cutoff(bs.mode_b, max_total);

  if (use_parallel(exec, entries.size())) {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
    std::vector<std::map<std::uint64_t, cplx>> partial(threads);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      spread_entry(e, bs.mode_a, bs.mode_b, blocks[e.n_a + e.n_b], partial[omp_get_thread_num()]);
    }
    for (const auto& part : partial) {
      for (const auto& [key, amp] : part) out.add_packed(key, amp);
    }
#endif
  } else {
    std::map<std::uint64_t, cplx> acc;
    for (const auto& e : entries) {
      spread_entry(e, bs.mode_a, bs.mode_b, blocks[e.n_a + e.n_b], acc);
    }
    for (const auto& [key, amp] : acc) out.add_packed(key, amp);
  }
  return out;
}

FockState apply_displacement(const FockState& state, int mode, cplx alpha, Exec exec) {
  if (mode < 0 || mode >= state.mode_count()) throw std::out_of_range("displacement mode index");
  const int cutoff = state.cutoffs()[mode];
  int support = 0;
  for (const auto& [key, amp] : state.terms()) {
    support = std::max(support, static_cast<int>((key >> (8 * mode)) & 0xff));
  }
  if (cutoff - support < 10) {
    throw std::runtime_error("displacement needs >= 10 photons of cutoff margin above support");
  }

  // G = alpha a^+ - alpha^* a is skew-Hermitian; exp(G) = V exp(-i diag) V^+
  // with iG Hermitian. Exactly unitary up to the eigensolve roundoff.
  const int dim = cutoff + 1;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const cplx i_unit(0.0, 1.0);
  for (int n = 0; n < dim - 1; ++n) {
    const double s = std::sqrt(static_cast<double>(n + 1));
    h(n + 1, n) = i_unit * alpha * s;          // i * alpha * a^+
    h(n, n + 1) = std::conj(h(n + 1, n));      // Hermitian partner (-i alpha^* a)
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  Eigen::VectorXcd phases(dim);
  for (int k = 0; k < dim; ++k) phases(k) = std::exp(-i_unit * solver.eigenvalues()(k));
  const Eigen::MatrixXcd u =
      solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();

  // Group terms over the other modes, then one dense matvec per group.
  std::map<std::uint64_t, Eigen::VectorXcd> groups;
  const std::uint64_t mask = ~(std::uint64_t{0xff} << (8 * mode));
  for (const auto& [key, amp] : state.terms()) {
    auto [it, inserted] = groups.try_emplace(key & mask, Eigen::VectorXcd::Zero(dim));
    it->second(static_cast<int>((key >> (8 * mode)) & 0xff)) = amp;
  }

  std::vector<std::pair<std::uint64_t, Eigen::VectorXcd>> group_list(groups.begin(), groups.end());
  std::vector<Eigen::VectorXcd> results(group_list.size());
  const bool parallel = use_parallel(exec, group_list.size() * static_cast<std::size_t>(dim));
#pragma omp parallel for schedule(static) if (parallel)
  for (std::size_t g = 0; g < group_list.size(); ++g) {
    results[g] = u * group_list[g].second;
  }

  FockState out(state.cutoffs());
  for (std::size_t g = 0; g < group_list.size(); ++g) {
    for (int n = 0; n < dim; ++n) {
      const cplx v = results[g](n);
      if (v != cplx(0.0)) {
        out.add_packed(group_list[g].first | (static_cast<std::uint64_t>(n) << (8 * mode)), v);
      }
    }
  }
  return out;
}

FockState htbs_displace(const FockState& state, int mode, cplx gamma, double t,
                        int ancilla_cutoff) {
  if (!(t > 0.0) || t >= 1.0) throw std::invalid_argument("HTBS transmittance must lie in (0, 1)");
  const double r = std::sqrt(1.0 - t * t);
  const cplx beta = gamma / r;
  // displaced_number_state enforces the tail-weight bound for beta.
  const FockState ancilla = displaced_number_state(0, beta, ancilla_cutoff);
  const FockState joint = tensor(state, ancilla);
  return apply_beam_splitter(joint, BeamSplitterSpec::make(t, mode, state.mode_count()));
}

double htbs_displacement_fidelity(const FockState& state, int mode, cplx gamma, double t,
                                  int ancilla_cutoff) {
  const FockState joint = htbs_displace(state, mode, gamma, t, ancilla_cutoff);
  std::vector<int> keep;
  for (int i = 0; i < state.mode_count(); ++i) keep.push_back(i);
  DensityOperator rho = reduced_density(joint, keep);
  FockState target = apply_displacement(state, mode, gamma);
  // Align cutoffs with the traced joint state (the splitter may have raised them).
  for (int i = 0; i < state.mode_count(); ++i) {
    if (rho.cutoffs()[i] != target.cutoffs()[i]) {
      target.raise_cutoff(i, rho.cutoffs()[i]);
    }
  }
  return rho.fidelity_with(target);
}

DualRailGate DualRailGate::hadamard() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return {Kind::hadamard, m};
}

DualRailGate DualRailGate::pauli_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return {Kind::pauli_z, m};
}

DualRailGate DualRailGate::z_power(int k) {
  Eigen::Matrix2cd m;
  const double z = (k % 2 == 0) ? 1.0 : -1.0;
  m << 1.0, 0.0, 0.0, z;
  return {Kind::z_power, m};
}

Qubit dual_rail_apply(const Qubit& q, const DualRailGate& gate) {
  if (q.basis != Rail::dual) throw std::invalid_argument("gate expects a dual-rail qubit");
  Eigen::Vector2cd v(q.a0, q.a1);
  v = gate.matrix * v;
  return {v(0), v(1), Rail::dual};
}

FockState apply_dual_rail_gate(const FockState& state, int mode_a, int mode_b,
                               const DualRailGate& gate) {
  FockState out(state.cutoffs());
  for (const auto& [key, amp] : state.terms()) {
    const int na = static_cast<int>((key >> (8 * mode_a)) & 0xff);
    const int nb = static_cast<int>((key >> (8 * mode_b)) & 0xff);
    const std::uint64_t base = key & ~((std::uint64_t{0xff} << (8 * mode_a)) |
                                       (std::uint64_t{0xff} << (8 * mode_b)));
    int comp;
    if (na == 0 && nb == 1) {
      comp = 0;
    } else if (na == 1 && nb == 0) {
      comp = 1;
    } else {
      throw std::runtime_error("dual-rail gate applied outside the single-photon subspace");
    }
    for (int row = 0; row < 2; ++row) {
      const cplx v = gate.matrix(row, comp) * amp;
      if (v == cplx(0.0)) continue;
      const int out_na = row == 0 ? 0 : 1;
      const int out_nb = row == 0 ? 1 : 0;
      out.add_packed(base | (static_cast<std::uint64_t>(out_na) << (8 * mode_a)) |
                         (static_cast<std::uint64_t>(out_nb) << (8 * mode_b)),
                     v);
    }
  }
  return out;
}

}  // namespace qteleport
