#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qgf/circuit.hpp"

namespace qgf {

class SimError : public std::runtime_error {
 public:
  enum class Code { NonClassicalGate, WidthCap, BadTolerance };

  SimError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Basis states index amplitudes little-endian: bit i of the index is qubit i,
// matching the packed FieldElement encoding.
using BasisState = std::uint64_t;

struct StateVector {
  unsigned qubits = 0;
  std::vector<std::complex<double>> amps;

  static StateVector basis(unsigned qubits, BasisState index);
};

// Exact evaluator for circuits of NOT-family gates only; any width.
BasisState run_permutation(const Circuit& c, BasisState in);

// Default width cap for the dense engine; QGF_STATEVECTOR_CAP overrides.
unsigned statevector_cap();

StateVector run_statevector(const Circuit& c, StateVector state);
StateVector run_statevector(const Circuit& c, StateVector state, unsigned cap);

// Runs from |in>; enforces the cap before the 2^qubits buffer is allocated.
StateVector run_statevector_basis(const Circuit& c, BasisState in);

// The unique index holding squared magnitude >= 1 - tol, if one exists.
// tol must lie in (0, 0.5).
std::optional<BasisState> read_basis(const StateVector& v, double tol = 1e-9);

std::uint64_t read_register(BasisState s, const Register& r);

}  // namespace qgf
