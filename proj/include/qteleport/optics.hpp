// Exact two-mode beam-splitter and single-mode displacement unitaries on
// truncated Fock states, the highly-transmissive-beam-splitter displacement
// approximation, and dual-rail single-qubit gates.
//
// The beam-splitter kernels come in an OpenMP-parallel flavor and a serial
// reference flavor; Exec::automatic picks parallel only when the state is
// large enough to pay for it.

#pragma once

#include "qteleport/fock.hpp"
#include "qteleport/qubit.hpp"

namespace qteleport {

enum class Exec { automatic, serial, parallel };

struct BeamSplitterSpec {
  double t;  // transmittance in (0, 1]
  double r;  // +sqrt(1 - t^2)
  int mode_a;
  int mode_b;

  static BeamSplitterSpec make(double t, int mode_a, int mode_b);
  // U(t, -r); equals the inverse of this splitter.
  BeamSplitterSpec inverse() const;
};

// Mode convention: a_i^+ -> t a_i^+ - r a_j^+ and a_j^+ -> r a_i^+ + t a_j^+,
// so coherent inputs |x>_i |y>_j map to |xt + yr>_i |yt - xr>_j.
// Total photon number in the mode pair is conserved exactly; output cutoffs
// on the pair are raised to the largest occupied block when needed.
FockState apply_beam_splitter(const FockState& state, const BeamSplitterSpec& bs,
                              Exec exec = Exec::automatic);

// exp(alpha a^+ - alpha^* a) on one mode, applied through the eigensystem of
// the truncated generator. Requires >= 10 photons of cutoff margin above the
// occupied support of that mode.
FockState apply_displacement(const FockState& state, int mode, cplx alpha,
                             Exec exec = Exec::automatic);

// Mixes `mode` with a fresh coherent ancilla of amplitude gamma/r on a
// splitter of transmittance t; returns the joint state with the ancilla
// appended as the last mode. In the t -> 1 limit this displaces `mode`
// by gamma.
FockState htbs_displace(const FockState& state, int mode, cplx gamma, double t,
                        int ancilla_cutoff = kDefaultCutoff);

// <target| rho_mode |target> where target = D(gamma) applied to `state` and
// rho_mode traces out the ancilla of htbs_displace.
double htbs_displacement_fidelity(const FockState& state, int mode, cplx gamma, double t,
                                  int ancilla_cutoff = kDefaultCutoff);

struct DualRailGate {
  enum class Kind { hadamard, pauli_z, z_power };
  Kind kind;
  Eigen::Matrix2cd matrix;  // acts on (|01>, |10>) components

  static DualRailGate hadamard();
  static DualRailGate pauli_z();
  static DualRailGate z_power(int k);
};

Qubit dual_rail_apply(const Qubit& q, const DualRailGate& gate);

// Applies the gate within the single-photon subspace of modes (a, b);
// support outside {|01>, |10>} on those modes is an error.
FockState apply_dual_rail_gate(const FockState& state, int mode_a, int mode_b,
                               const DualRailGate& gate);

}  // namespace qteleport
