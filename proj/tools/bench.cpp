// Benchmarks the OpenMP kernels against their serial reference on synthetic
// states large enough to exercise the parallel paths, and checks the two
// flavours agree.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qteleport/optics.hpp"
#include "qteleport/teleport.hpp"

using namespace qteleport;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

FockState dense_two_mode_state(int cutoff, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FockState s({cutoff, cutoff});
  for (int n1 = 0; n1 <= cutoff; ++n1) {
    for (int n2 = 0; n2 <= cutoff; ++n2) {
      s.add({n1, n2}, cplx(gauss(rng), gauss(rng)));
    }
  }
  return s.normalized();
}

double max_amp_diff(const FockState& a, const FockState& b) {
  double worst = 0.0;
  for (const auto& [key, amp] : a.terms()) {
    const auto it = b.terms().find(key);
    const cplx other = it == b.terms().end() ? cplx(0.0) : it->second;
    worst = std::max(worst, std::abs(amp - other));
  }
  return worst;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif

  // Beam splitter on a dense two-mode state.
  for (int cutoff : {40, 64, 90}) {
    const FockState input = dense_two_mode_state(cutoff, 1234u);
    const BeamSplitterSpec bs = BeamSplitterSpec::make(0.8, 0, 1);

    auto start = std::chrono::steady_clock::now();
    const FockState serial = apply_beam_splitter(input, bs, Exec::serial);
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const FockState parallel = apply_beam_splitter(input, bs, Exec::parallel);
    const double t_parallel = seconds_since(start);

    std::printf(
        "beam-splitter cutoff %3d (%7zu terms): serial %7.3f s, parallel %7.3f s, "
        "speedup %5.2fx, max diff %.2e\n",
        cutoff, input.term_count(), t_serial, t_parallel, t_serial / t_parallel,
        max_amp_diff(serial, parallel));
  }

  // Closed-form sweep grid, serial loop vs parallel loop.
  {
    const int nalpha = 160;
    const int na1 = 160;
    std::vector<double> grid(static_cast<std::size_t>(nalpha) * na1);

    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < nalpha; ++i) {
      for (int j = 0; j < na1; ++j) {
        const Qubit q{std::sqrt(0.5), cplx(0.0, std::sqrt(0.5)), Rail::single};
        grid[static_cast<std::size_t>(i) * na1 + j] =
            approximation_fidelity(0.05 + 0.5 * i / nalpha, 0.9 + 0.1 * j / na1, q);
      }
    }
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nalpha; ++i) {
      for (int j = 0; j < na1; ++j) {
        const Qubit q{std::sqrt(0.5), cplx(0.0, std::sqrt(0.5)), Rail::single};
        grid[static_cast<std::size_t>(i) * na1 + j] =
            approximation_fidelity(0.05 + 0.5 * i / nalpha, 0.9 + 0.1 * j / na1, q);
      }
    }
    const double t_parallel = seconds_since(start);
    std::printf("fidelity sweep %dx%d: serial %7.3f s, parallel %7.3f s, speedup %5.2fx\n",
                nalpha, na1, t_serial, t_parallel, t_serial / t_parallel);
  }
  return 0;
}
