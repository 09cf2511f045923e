#include <doctest.h>

#include "qteleport/channel_gen.hpp"
#include "qteleport/displaced.hpp"

using namespace qteleport;

TEST_SUITE("channel_gen") {

TEST_CASE("heralded generation at the reference point") {
  GenerationConfig cfg{0.3, 0.3, std::sqrt(0.99), kDefaultCutoff};
  const auto heralds = generate_channel(cfg, 3);
  double sum = 0.0;
  double four_lowest = 0.0;
  double fid[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (const auto& h : heralds) {
    sum += h.probability;
    if (h.herald[0] <= 1 && h.herald[1] <= 1) {
      four_lowest += h.probability;
      fid[h.herald[0]][h.herald[1]] = h.fidelity;
    }
  }
  SUBCASE("herald probabilities cover the distribution") {
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(four_lowest >= 0.99);
  }
  SUBCASE("equal-count heralds correct onto the channel") {
    CHECK(fid[0][0] >= 0.99);
    CHECK(fid[1][1] >= 0.99);
  }
  SUBCASE("mixed-count heralds do not") {
    // Their corrected states sit near the even superposition times one rail,
    // whose channel fidelity saturates at (1 + e^{-2 b^2}) / 2.
    const double ceiling = 0.5 * (1.0 + std::exp(-2.0 * 0.09));
    CHECK(fid[0][1] == doctest::Approx(ceiling).epsilon(0.01));
    CHECK(fid[1][0] == doctest::Approx(ceiling).epsilon(0.01));
    CHECK(fid[0][1] < 0.95);
  }
}

TEST_CASE("generation requires matched displaced amplitudes") {
  GenerationConfig cfg{0.3, 0.4, std::sqrt(0.99), kDefaultCutoff};
  CHECK_THROWS(generate_channel(cfg));
}

TEST_CASE("closed-form limit state") {
  SUBCASE("normalized after assembly") {
    const FockState ideal = ideal_generation_state(0.3, 0.03, 24, 6);
    CHECK(ideal.norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("equal-count herald components carry the balanced structure") {
    const double beta = 0.3;
    const double alpha = 0.05;
    const FockState ideal = ideal_generation_state(beta, alpha, 24, 6);
    const ProjectionResult res =
        project(ideal, std::vector<int>{3, 4}, occupation{0, 0});
    REQUIRE(res.post_state.has_value());
    // |0,-b>(|01> + |10>) + |0,b>(|01> - |10>), normalized.
    FockState expected({24, 1, 1});
    const FockState cm = displaced_number_state(0, -beta, 24);
    const FockState cp = displaced_number_state(0, beta, 24);
    for (const auto& [key, amp] : cm.terms()) {
      const int k = static_cast<int>(key & 0xff);
      expected.add({k, 0, 1}, amp);
      expected.add({k, 1, 0}, amp);
    }
    for (const auto& [key, amp] : cp.terms()) {
      const int k = static_cast<int>(key & 0xff);
      expected.add({k, 0, 1}, amp);
      expected.add({k, 1, 0}, -amp);
    }
    CHECK(state_fidelity(res.post_state->normalized(), expected.normalized()) >= 1.0 - 1e-9);
  }
  SUBCASE("herald component matches the displaced-element product form") {
    const double beta = 0.3;
    const double alpha = 0.05;
    const FockState ideal = ideal_generation_state(beta, alpha, 24, 6);
    const ProjectionResult res =
        project(ideal, std::vector<int>{3, 4}, occupation{0, 1});
    REQUIRE(res.post_state.has_value());
    FockState expected({24, 1, 1});
    const FockState cm = displaced_number_state(0, -beta, 24);
    const FockState cp = displaced_number_state(0, beta, 24);
    // phi^+- with (n, m) = (0, 1): c_00 c_11 |01> +- c_10 c_01 |10>.
    const cplx u = coeff(0, 0, alpha) * coeff(1, 1, alpha);
    const cplx v = coeff(1, 0, alpha) * coeff(0, 1, alpha);
    for (const auto& [key, amp] : cm.terms()) {
      const int k = static_cast<int>(key & 0xff);
      expected.add({k, 0, 1}, amp * u);
      expected.add({k, 1, 0}, amp * v);
    }
    for (const auto& [key, amp] : cp.terms()) {
      const int k = static_cast<int>(key & 0xff);
      expected.add({k, 0, 1}, amp * u);
      expected.add({k, 1, 0}, -amp * v);
    }
    CHECK(state_fidelity(res.post_state->normalized(), expected.normalized()) >= 1.0 - 1e-9);
  }
}

TEST_CASE("circuit converges to the closed-form limit state") {
  const double alpha = 0.03;
  double prev = -1.0;
  for (double t : {0.97, 0.99, 0.999, 0.9995}) {
    const double r = std::sqrt(1.0 - t * t);
    const double beta = alpha / r;
    GenerationConfig cfg{beta, beta, t, kDefaultCutoff};

    const FockState scs = scs_state(Parity::even, cfg.beta, cfg.cutoff);
    const FockState pump = displaced_number_state(0, -cfg.beta1, cfg.cutoff);
    FockState pair({1, 1, 1, 1});
    pair.add({0, 1, 0, 1}, std::sqrt(0.5));
    pair.add({1, 0, 1, 0}, std::sqrt(0.5));
    FockState state = tensor(tensor(scs, pump), pair);
    state = apply_beam_splitter(state, BeamSplitterSpec::make(cfg.t, 0, 4));
    state = apply_beam_splitter(state, BeamSplitterSpec::make(cfg.t, 1, 5));

    // Project the pump output onto its coherent reference to compare pure
    // five-mode states.
    const FockState pump_ref = displaced_number_state(0, -cfg.beta1 * cfg.t, state.cutoffs()[1]);
    FockState projected({state.cutoffs()[0], 1, 1, state.cutoffs()[4], state.cutoffs()[5]});
    for (const auto& [key, amp] : state.terms()) {
      const occupation occ = FockState::unpack(key, 6);
      const cplx c = std::conj(pump_ref.amplitude({occ[1]})) * amp;
      if (c == cplx(0.0)) continue;
      projected.add({occ[0], occ[2], occ[3], occ[4], occ[5]}, c);
    }
    const FockState circuit = projected.normalized();
    FockState ideal = ideal_generation_state(beta, alpha, kDefaultCutoff, 6);
    for (int m = 0; m < 5; ++m) ideal.raise_cutoff(m, circuit.cutoffs()[m]);
    const double fid = state_fidelity(ideal, circuit);
    CHECK(fid > prev);
    prev = fid;
  }
  CHECK(prev >= 0.999);
}

}  // TEST_SUITE
