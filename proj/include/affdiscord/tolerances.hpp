#pragma once

namespace affdiscord {

// Numerical tolerances used throughout the library. The defaults are the
// contract values; the CLI can override individual entries.
struct Tolerances {
  // Relative Hermiticity check for raw matrices entering the eigensolver,
  // scaled by max(1, maxabs(M)).
  double hermitian = 1e-12;
  // Hermiticity check applied when validating density matrices.
  double state_hermitian = 1e-10;
  // |Tr(rho) - 1| allowed for a density matrix.
  double trace = 1e-10;
  // Eigenvalues in [-psd, 0) are clamped to zero; anything lower is an error.
  double psd = 1e-8;
  // Unit-norm check for pure-state amplitudes.
  double normalization = 1e-12;
  // Largest imaginary residue accepted when projecting gamma entries to reals.
  double imag_residue = 1e-10;
  // Bell-diagonal eigenvalues may dip this far below zero.
  double bloch = 1e-12;
  // Radicands of analytic formulas in [-radicand, 0) are treated as zero.
  double radicand = 1e-12;
  // Local optimizers stop once the relative improvement falls below this.
  double optimizer_rel_improvement = 1e-10;
};

}  // namespace affdiscord
