#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qteleport/displaced.hpp"
#include "qteleport/optics.hpp"

using namespace qteleport;

namespace {

FockState random_two_mode(int cutoff, int max_photons, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, max_photons);
  FockState s({cutoff, cutoff});
  for (int k = 0; k < 12; ++k) s.add({pick(rng), pick(rng)}, cplx(gauss(rng), gauss(rng)));
  return s.normalized();
}

}  // namespace

TEST_SUITE("optics") {

TEST_CASE("spec validation and inverse") {
  CHECK_THROWS(BeamSplitterSpec::make(0.0, 0, 1));
  CHECK_THROWS(BeamSplitterSpec::make(1.2, 0, 1));
  CHECK_THROWS(BeamSplitterSpec::make(0.9, 1, 1));
  const BeamSplitterSpec bs = BeamSplitterSpec::make(0.8, 0, 1);
  CHECK(bs.t * bs.t + bs.r * bs.r == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bs.inverse().r == doctest::Approx(-bs.r));
}

TEST_CASE("unit transmittance is the identity") {
  const FockState s = random_two_mode(6, 4, 3u);
  const FockState out = apply_beam_splitter(s, BeamSplitterSpec::make(1.0, 0, 1));
  for (const auto& [key, amp] : s.terms()) {
    CHECK(std::abs(out.amplitude(FockState::unpack(key, 2)) - amp) < 1e-12);
  }
}

TEST_CASE("number state through the splitter follows the binomial expansion") {
  const double t = 0.85;
  const double r = std::sqrt(1.0 - t * t);
  for (int m : {1, 2, 4}) {
    const FockState in = FockState::basis_state({6, 6}, {0, m});
    const FockState out = apply_beam_splitter(in, BeamSplitterSpec::make(t, 0, 1));
    // (r a^+ + t b^+)^m / sqrt(m!) |00>
    for (int k = 0; k <= m; ++k) {
      const double expected = factorial(m) / (factorial(k) * factorial(m - k)) *
                              std::pow(r, m - k) * std::pow(t, k) *
                              std::sqrt(factorial(k) * factorial(m - k) / factorial(m));
      CHECK(out.amplitude({m - k, k}).real() == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(out.amplitude({0, m}).real() == doctest::Approx(std::pow(t, m)).epsilon(1e-12));
  }
}

TEST_CASE("coherent inputs map to coherent outputs") {
  const double t = 0.9;
  const double r = std::sqrt(1.0 - t * t);
  const double x = 0.4;
  const double y = 0.25;
  const FockState in = tensor(displaced_number_state(0, x, 24), displaced_number_state(0, y, 24));
  const FockState out = apply_beam_splitter(in, BeamSplitterSpec::make(t, 0, 1));
  FockState expected = tensor(displaced_number_state(0, x * t + y * r, 24),
                              displaced_number_state(0, y * t - x * r, 24));
  expected.raise_cutoff(0, out.cutoffs()[0]);
  expected.raise_cutoff(1, out.cutoffs()[1]);
  CHECK(state_fidelity(expected, out) >= 1.0 - 1e-9);
}

TEST_CASE("photon number is conserved blockwise") {
  const FockState s = random_two_mode(8, 5, 7u);
  const FockState out = apply_beam_splitter(s, BeamSplitterSpec::make(0.7, 0, 1));
  CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
  std::map<int, double> weight_in, weight_out;
  for (const auto& [key, amp] : s.terms()) {
    weight_in[static_cast<int>(key & 0xff) + static_cast<int>((key >> 8) & 0xff)] +=
        std::norm(amp);
  }
  for (const auto& [key, amp] : out.terms()) {
    weight_out[static_cast<int>(key & 0xff) + static_cast<int>((key >> 8) & 0xff)] +=
        std::norm(amp);
  }
  for (const auto& [total, w] : weight_in) {
    CHECK(weight_out[total] == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("splitter followed by its inverse restores the input") {
  const FockState s = random_two_mode(8, 5, 9u);
  const BeamSplitterSpec bs = BeamSplitterSpec::make(0.75, 0, 1);
  const FockState back = apply_beam_splitter(apply_beam_splitter(s, bs), bs.inverse());
  for (const auto& [key, amp] : s.terms()) {
    CHECK(std::abs(back.amplitude(FockState::unpack(key, 2)) - amp) < 1e-12);
  }
}

TEST_CASE("splitter agrees with the generator-exponential oracle") {
  const double t = 0.8;
  const int dim = 9;
  const FockState s = random_two_mode(dim - 1, 3, 15u);
  const FockState out = apply_beam_splitter(s, BeamSplitterSpec::make(t, 0, 1));
  const double theta = std::atan2(std::sqrt(1.0 - t * t), t);
  const Eigen::MatrixXcd u = oracle::taylor_expm(oracle::beam_splitter_generator(theta, dim));
  const Eigen::VectorXcd expected = u * oracle::to_dense(s, {dim, dim});
  const Eigen::VectorXcd got = oracle::to_dense(out, {dim, dim});
  CHECK((expected - got).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("parallel kernel matches the serial reference") {
  std::mt19937 rng(99u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FockState s({40, 40});
  for (int n1 = 0; n1 <= 40; ++n1) {
    for (int n2 = 0; n2 <= 40; ++n2) s.add({n1, n2}, cplx(gauss(rng), gauss(rng)));
  }
  s = s.normalized();
  const BeamSplitterSpec bs = BeamSplitterSpec::make(0.6, 0, 1);
  const FockState serial = apply_beam_splitter(s, bs, Exec::serial);
  const FockState parallel = apply_beam_splitter(s, bs, Exec::parallel);
  double worst = 0.0;
  for (const auto& [key, amp] : serial.terms()) {
    worst = std::max(worst, std::abs(amp - parallel.amplitude(FockState::unpack(key, 2))));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("displacement basics") {
  const FockState one = FockState::basis_state({16}, {1});
  SUBCASE("zero displacement is the identity") {
    const FockState out = apply_displacement(one, 0, 0.0);
    CHECK(std::abs(out.amplitude({1}) - cplx(1.0)) < 1e-12);
  }
  SUBCASE("agrees with the closed-form displaced state") {
    const FockState vac = FockState::vacuum({24});
    const FockState out = apply_displacement(vac, 0, 0.3);
    CHECK(state_fidelity(out, displaced_number_state(0, 0.3, 24)) >= 1.0 - 1e-9);
  }
  SUBCASE("inverse displacement restores the photon") {
    const FockState there = apply_displacement(one, 0, cplx(0.2, 0.1));
    const FockState back = apply_displacement(there, 0, cplx(-0.2, -0.1));
    CHECK(std::abs(back.amplitude({1}) - cplx(1.0)) < 1e-9);
  }
  SUBCASE("cutoff margin is enforced") {
    CHECK_THROWS(apply_displacement(FockState::basis_state({12}, {8}), 0, 0.1));
  }
}

TEST_CASE("displacement parallel path matches serial") {
  std::mt19937 rng(123u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FockState s({24, 3});
  for (int n = 0; n <= 10; ++n) {
    for (int k = 0; k <= 3; ++k) s.add({n, k}, cplx(gauss(rng), gauss(rng)));
  }
  s = s.normalized();
  const FockState a = apply_displacement(s, 0, cplx(0.1, 0.2), Exec::serial);
  const FockState b = apply_displacement(s, 0, cplx(0.1, 0.2), Exec::parallel);
  for (const auto& [key, amp] : a.terms()) {
    CHECK(std::abs(amp - b.amplitude(FockState::unpack(key, 2))) < 1e-12);
  }
}

TEST_CASE("highly transmissive splitter approximates the displacement") {
  SUBCASE("vacuum input at t = 0.995") {
    const FockState vac = FockState::vacuum({24});
    CHECK(htbs_displacement_fidelity(vac, 0, 0.03, 0.995) >= 0.999);
  }
  SUBCASE("zero target displacement") {
    const FockState vac = FockState::vacuum({24});
    CHECK(htbs_displacement_fidelity(vac, 0, 0.0, 0.99) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("fidelity falls as the splitter opens up") {
    FockState plus({24});
    plus.add({0}, std::sqrt(0.5));
    plus.add({1}, std::sqrt(0.5));
    double prev = -1.0;
    for (double t : {0.9, 0.95, 0.99, 0.995, 0.999}) {
      const double fid = htbs_displacement_fidelity(plus, 0, 0.03, t);
      CHECK(fid > prev);
      prev = fid;
    }
    CHECK(prev >= 0.999);
  }
}

TEST_CASE("dual-rail gates") {
  const Qubit q{0.6, cplx(0.0, 0.8), Rail::dual};
  SUBCASE("hadamard squares to the identity") {
    const Qubit twice = dual_rail_apply(dual_rail_apply(q, DualRailGate::hadamard()),
                                        DualRailGate::hadamard());
    CHECK(qubit_fidelity(twice, q) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("z flips the relative sign") {
    const Qubit plus{std::sqrt(0.5), std::sqrt(0.5), Rail::dual};
    const Qubit minus = dual_rail_apply(plus, DualRailGate::pauli_z());
    CHECK(minus.a1.real() == doctest::Approx(-std::sqrt(0.5)));
  }
  SUBCASE("single-rail inputs are rejected") {
    CHECK_THROWS(dual_rail_apply(Qubit{1.0, 0.0, Rail::single}, DualRailGate::pauli_z()));
  }
  SUBCASE("gates are unitary") {
    for (const auto& gate : {DualRailGate::hadamard(), DualRailGate::pauli_z(),
                             DualRailGate::z_power(3)}) {
      const Eigen::Matrix2cd prod = gate.matrix * gate.matrix.adjoint();
      CHECK((prod - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SUBCASE("state-level gate matches the qubit-level gate") {
    FockState s({2, 1, 1});
    s.add({0, 0, 1}, 0.6);
    s.add({0, 1, 0}, cplx(0.0, 0.8));
    const FockState out = apply_dual_rail_gate(s, 1, 2, DualRailGate::hadamard());
    const Qubit expected = dual_rail_apply(q, DualRailGate::hadamard());
    CHECK(std::abs(out.amplitude({0, 0, 1}) - expected.a0) < 1e-14);
    CHECK(std::abs(out.amplitude({0, 1, 0}) - expected.a1) < 1e-14);
    FockState bad({2, 1, 1});
    bad.add({0, 1, 1}, 1.0);
    CHECK_THROWS(apply_dual_rail_gate(bad, 1, 2, DualRailGate::pauli_z()));
  }
}

}  // TEST_SUITE
