#pragma once

// ionex — photoionization-with-excitation ratios for two-electron ions.
//
// Header-only library computing the ratios R_{nl}(omega) of
// photoionization-with-excitation to ground-channel photoionization for
// heliumlike ions, from a correlated (Hylleraas) ground state:
//   * high-energy limits A_n,
//   * 1/omega coefficients B_{nl} split into kinematical (shake-up),
//     initial-state and final-state interaction parts,
//   * exact shake-up reference curves, 1/Z-series fits, scaled ratios.
//
// All internal energies are hartree; the CLI/report layer converts to eV.

#include <stdexcept>
#include <string>

namespace ionex {

inline constexpr const char* version_string = "1.0.0";

// On-disk wavefunction text format revision (see hylleraas.hpp save/load).
inline constexpr int wavefunction_format_version = 1;

// Conversion used for all emitted energies.
inline constexpr double hartree_ev = 27.211386;

// An iterative numerical procedure (eigensolver, quadrature, minimizer)
// failed to reach its tolerance. CLI maps this to exit code 2.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A physically closed channel or an argument outside the model's domain
// of validity. CLI maps this to exit code 3.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ionex
