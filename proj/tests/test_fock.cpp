#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qteleport/displaced.hpp"
#include "qteleport/fock.hpp"

using namespace qteleport;

namespace {

FockState random_state(std::vector<int> cutoffs, unsigned seed, int terms = 6) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FockState s(cutoffs);
  std::uniform_int_distribution<int> pick(0, 100);
  for (int k = 0; k < terms; ++k) {
    occupation occ;
    for (int c : cutoffs) occ.push_back(pick(rng) % (c + 1));
    s.add(occ, cplx(gauss(rng), gauss(rng)));
  }
  return s.normalized();
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("tensor of basis states") {
  const FockState zero = FockState::basis_state({1}, {0});
  const FockState one = FockState::basis_state({1}, {1});
  const FockState prod = tensor(zero, one);
  CHECK(prod.amplitude({0, 1}) == cplx(1.0));
  CHECK(prod.term_count() == 1);
}

TEST_CASE("tensor preserves norms") {
  const FockState a = random_state({3, 2}, 11u);
  const FockState b = random_state({2}, 22u);
  CHECK(tensor(a, b).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tensor against a componentwise loop") {
  const FockState coh = displaced_number_state(0, 0.3, 16);
  const FockState rail = FockState::basis_state({1, 1}, {0, 1});
  const FockState prod = tensor(coh, rail);
  for (const auto& [key, amp] : coh.terms()) {
    const int n = static_cast<int>(key & 0xff);
    CHECK(std::abs(prod.amplitude({n, 0, 1}) - amp) < 1e-15);
    CHECK(std::abs(prod.amplitude({n, 1, 0})) == 0.0);
  }
}

TEST_CASE("inserting a mode keeps the factorization") {
  const FockState base = random_state({3, 2}, 5u);
  const FockState single = random_state({2}, 6u);
  const FockState inserted = with_mode_inserted(base, 1, single);
  CHECK(inserted.mode_count() == 3);
  CHECK(inserted.norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [key, amp] : base.terms()) {
    const occupation occ = FockState::unpack(key, 2);
    for (int k = 0; k <= 2; ++k) {
      const cplx expected = amp * single.amplitude({k});
      CHECK(std::abs(inserted.amplitude({occ[0], k, occ[1]}) - expected) < 1e-15);
    }
  }
}

TEST_CASE("inner product on the number basis") {
  const FockState n2 = FockState::basis_state({4}, {2});
  const FockState n3 = FockState::basis_state({4}, {3});
  CHECK(inner(n2, n2) == cplx(1.0));
  CHECK(inner(n2, n3) == cplx(0.0));
}

TEST_CASE("displaced vacuum and displaced photon are orthogonal") {
  const FockState d0 = displaced_number_state(0, 0.3, 24);
  const FockState d1 = displaced_number_state(1, 0.3, 24);
  CHECK(std::abs(inner(d0, d1)) < 1e-10);
}

TEST_CASE("coherent overlap with vacuum against the exponential oracle") {
  const FockState d0 = displaced_number_state(0, 0.3, 24);
  const FockState vac = FockState::vacuum({24});
  const cplx overlap = inner(d0, vac);
  const Eigen::MatrixXcd u = oracle::displacement_matrix(0.3, 25);
  CHECK(std::abs(overlap - std::conj(u(0, 0))) < 1e-12);
  CHECK(overlap.real() == doctest::Approx(std::exp(-0.045)).epsilon(1e-10));
}

TEST_CASE("inner is conjugate linear in the first argument") {
  const FockState a = random_state({3, 3}, 31u);
  const FockState b = random_state({3, 3}, 32u);
  CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) < 1e-14);
  CHECK(inner(a, a).real() >= 0.0);
  CHECK(std::abs(inner(a, a).imag()) < 1e-14);
}

TEST_CASE("inner rejects mode-count mismatch") {
  CHECK_THROWS(inner(FockState::vacuum({2}), FockState::vacuum({2, 2})));
}

TEST_CASE("tensor and inner are compatible") {
  const FockState a = random_state({3, 2}, 41u);
  const FockState b = random_state({2}, 42u);
  const FockState c = random_state({3, 2}, 43u);
  const FockState d = random_state({2}, 44u);
  const cplx lhs = inner(tensor(a, b), tensor(c, d));
  const cplx rhs = inner(a, c) * inner(b, d);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("projection onto an occupation outcome") {
  const FockState s = FockState::basis_state({1, 1}, {0, 1});
  const ProjectionResult res = project(s, std::vector<int>{0}, occupation{0});
  CHECK(res.probability == doctest::Approx(1.0));
  REQUIRE(res.post_state.has_value());
  CHECK(res.post_state->amplitude({1}) == cplx(1.0));
}

TEST_CASE("complete projector families sum to one") {
  const FockState s = random_state({4, 3}, 77u);
  SUBCASE("apd pair on one mode") {
    const double p = project(s, 0, ModeProjector::apd_off()).probability +
                     project(s, 0, ModeProjector::apd_on()).probability;
    CHECK(p == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("parity pair") {
    const double p = project(s, 1, ModeProjector::parity_even()).probability +
                     project(s, 1, ModeProjector::parity_odd()).probability;
    CHECK(p == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("full number readout") {
    double p = 0.0;
    for (int n = 0; n <= 4; ++n) {
      p += project(s, std::vector<int>{0}, occupation{n}).probability;
    }
    CHECK(p == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("scs projectors resolve the coherent branch subspace") {
  const FockState even = scs_state(Parity::even, 0.3, 24);
  const FockState odd = scs_state(Parity::odd, 0.3, 24);
  CHECK(project(even, 0, ModeProjector::scs_even(0.3)).probability ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(project(even, 0, ModeProjector::scs_odd(0.3)).probability ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(project(odd, 0, ModeProjector::scs_odd(0.3)).probability ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("projection underflow is flagged without a post state") {
  FockState s({2});
  s.add({0}, std::sqrt(1.0 - 1e-18));
  s.add({1}, 1e-9);
  const ProjectionResult res = project(s, std::vector<int>{0}, occupation{1});
  CHECK(res.probability < 1e-15);
  CHECK(!res.post_state.has_value());
}

TEST_CASE("probability clamp rejects significantly negative values") {
  CHECK(clamp_probability(-1e-12) == 0.0);
  CHECK(clamp_probability(1.0 + 1e-13) == 1.0);
  CHECK_THROWS(clamp_probability(-1e-6));
}

TEST_CASE("partial trace of a two-mode projector") {
  const FockState s = FockState::basis_state({1, 1}, {0, 1});
  const DensityOperator rho = DensityOperator::from_state(s);
  const DensityOperator reduced = partial_trace(rho, {0});
  CHECK(reduced.dim() == 2);
  CHECK(reduced.element({0}, {0}).real() == doctest::Approx(1.0));
  CHECK(std::abs(reduced.element({1}, {1})) < 1e-15);
}

TEST_CASE("partial trace of a maximally entangled rail pair") {
  FockState bell({1, 1});
  bell.add({0, 1}, std::sqrt(0.5));
  bell.add({1, 0}, std::sqrt(0.5));
  const DensityOperator reduced = reduced_density(bell, {0});
  CHECK(reduced.element({0}, {0}).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(reduced.element({1}, {1}).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(reduced.element({0}, {1})) < 1e-14);
  CHECK(reduced.entropy_bits() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("partial trace of a pure product equals the factor projector") {
  const FockState a = random_state({3}, 91u);
  const FockState b = random_state({2, 2}, 92u);
  const DensityOperator reduced = reduced_density(tensor(a, b), {0});
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      const cplx expected = a.amplitude({i}) * std::conj(a.amplitude({j}));
      CHECK(std::abs(reduced.element({i}, {j}) - expected) < 1e-12);
    }
  }
}

TEST_CASE("partial trace routes agree and preserve trace") {
  const FockState s = random_state({2, 2, 2}, 101u, 8);
  const DensityOperator direct = reduced_density(s, {0, 2});
  const DensityOperator via_full = partial_trace(DensityOperator::from_state(s), {0, 2});
  CHECK((direct.matrix() - via_full.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(direct.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(direct.hermiticity_error() < 1e-12);
  CHECK(direct.min_eigenvalue() >= -1e-10);
  CHECK_THROWS(partial_trace(direct, {}));
}

TEST_CASE("state fidelity basics") {
  const FockState a = random_state({3, 2}, 111u);
  CHECK(state_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  const FockState n0 = FockState::basis_state({2}, {0});
  const FockState n1 = FockState::basis_state({2}, {1});
  CHECK(state_fidelity(n0, n1) == 0.0);
}

}  // TEST_SUITE
