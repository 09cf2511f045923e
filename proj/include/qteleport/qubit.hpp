// Two-level amplitudes with a basis tag: single-rail {|0>,|1>} for the
// teleported qubit, dual-rail {|01>,|10>} for Bob's photon.

#pragma once

#include <cmath>

#include "qteleport/fock.hpp"

namespace qteleport {

enum class Rail { single, dual };

struct Qubit {
  cplx a0{1.0};
  cplx a1{0.0};
  Rail basis = Rail::single;

  double norm_sq() const { return std::norm(a0) + std::norm(a1); }

  Qubit normalized() const {
    const double n = std::sqrt(norm_sq());
    if (n < 1e-150) throw std::runtime_error("cannot normalize a zero qubit");
    return {a0 / n, a1 / n, basis};
  }

  Qubit rebased(Rail b) const { return {a0, a1, b}; }
};

// |<q|p>|^2 with global phase quotiented out; basis tags must match.
inline double qubit_fidelity(const Qubit& q, const Qubit& p) {
  if (q.basis != p.basis) throw std::invalid_argument("qubit basis tags differ");
  const double nq = q.norm_sq();
  const double np = p.norm_sq();
  if (nq < 1e-300 || np < 1e-300) throw std::invalid_argument("zero qubit in fidelity");
  const cplx ov = std::conj(q.a0) * p.a0 + std::conj(q.a1) * p.a1;
  return std::norm(ov) / (nq * np);
}

// Single-rail: one mode, a0|0> + a1|1>. Dual-rail: two modes, a0|01> + a1|10>.
inline FockState to_fock(const Qubit& q, int cutoff = kDefaultCutoff) {
  const Qubit n = q.normalized();
  if (q.basis == Rail::single) {
    FockState s({cutoff});
    if (n.a0 != cplx(0.0)) s.add({0}, n.a0);
    if (n.a1 != cplx(0.0)) s.add({1}, n.a1);
    return s;
  }
  FockState s({cutoff, cutoff});
  if (n.a0 != cplx(0.0)) s.add({0, 1}, n.a0);
  if (n.a1 != cplx(0.0)) s.add({1, 0}, n.a1);
  return s;
}

}  // namespace qteleport
