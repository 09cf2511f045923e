// Parameter sweeps backing the CLI: every command evaluates a grid into an
// ordered row buffer (grid points are independent and may run in parallel)
// and serializes it as CSV with a fixed significant-digit format, so reruns
// are bit-identical.

#pragma once

#include <iosfwd>
#include <string>

#include "qteleport/channel_gen.hpp"
#include "qteleport/demod.hpp"

namespace qteleport {

struct SweepConfig {
  std::vector<double> alpha_grid;
  std::vector<double> t_grid;
  std::vector<double> a1_grid;
  double beta = 0.3;
  int cutoff = kDefaultCutoff;
  std::string output_path;
  int precision = 12;  // significant digits
};

enum class RunStatus { ok = 0, io_error = 1, validation_failure = 2 };

std::string format_value(double v, int precision);

// Rows (alpha, t, fid) for the balanced-phase qubit a0 = sqrt(.5),
// a1 = i sqrt(.5).
RunStatus write_fidelity_surface(std::ostream& os, const SweepConfig& cfg);

// Rows (alpha, a1_abs, n, p) of the direct distribution.
RunStatus write_direct_probs(std::ostream& os, const SweepConfig& cfg, int n_rows = 4);

// Rows (alpha, a1_abs, n, p) of the premodulated distributions.
RunStatus write_am_probs(std::ostream& os, const SweepConfig& cfg, int mod_index,
                         int n_rows = 3);

// Rows (alpha, a1_abs, which, p_closed_form, p_oracle, abs_diff); rows whose
// two routes disagree beyond 1e-2 are flagged in the trailing column.
RunStatus write_demod(std::ostream& os, const SweepConfig& cfg, DemodMethod method);

// Herald table (pattern, probability, corrected fidelity).
RunStatus write_channel_gen(std::ostream& os, const GenerationConfig& cfg, int precision);

struct RhoBReport {
  double diagonal_01 = 0.0;
  double diagonal_10 = 0.0;
  double offdiag_magnitude = 0.0;
  cplx closed_form_offdiag;  // reference closed form, evaluated as published
  double discrepancy = 0.0;  // |closed form - ensemble oracle|
  double trace = 0.0;
  bool flagged = false;      // discrepancy beyond 1e-2
};

// Bob's pre-message ensemble state: outcome-weighted average over Alice's
// results, cross-checked against the no-signaling partial trace.
RhoBReport rho_b_report(double alpha, double beta, const Qubit& qubit, int cutoff = kDefaultCutoff);

struct OrthogonalReport {
  double success_1 = 0.0;        // outcome-n=k restore probability, qubit 1
  double success_2 = 0.0;
  double closed_form_1 = 0.0;
  double closed_form_2 = 0.0;
  double recovered_overlap = 0.0;  // |<recovered 1|recovered 2>|
  bool ok = false;
};

// Teleports an orthogonal qubit pair (a0, a1) and (a1*, -a0*), both with
// mod-0 preparation (or mod-1 for the second when mixed = true).
OrthogonalReport orthogonal_scenario(double alpha, const Qubit& first, bool mixed = false);

}  // namespace qteleport
