#include "qgf/sim.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace qgf {

namespace {

using u64 = std::uint64_t;

u64 control_mask(const Gate& g) {
  u64 m = 0;
  for (std::uint32_t q : g.controls()) m |= u64(1) << q;
  return m;
}

void check_width_cap(unsigned qubits, unsigned cap) {
  if (qubits > cap)
    throw SimError(SimError::Code::WidthCap,
                   "circuit width " + std::to_string(qubits) + " exceeds the statevector cap " +
                       std::to_string(cap));
}

// Visits every index whose bits under `pinned` equal `pattern`.
template <typename F>
void for_each_pinned(unsigned qubits, u64 pinned, u64 pattern, F&& f) {
  u64 space = (qubits >= 64) ? ~u64(0) : ((u64(1) << qubits) - 1);
  u64 free_mask = space & ~pinned;
  u64 s = 0;
  while (true) {
    f(s | pattern);
    if (s == free_mask) break;
    s = (s - free_mask) & free_mask;
  }
}

}  // namespace

StateVector StateVector::basis(unsigned qubits, BasisState index) {
  StateVector v;
  v.qubits = qubits;
  v.amps.assign(u64(1) << qubits, {0.0, 0.0});
  v.amps[index] = {1.0, 0.0};
  return v;
}

BasisState run_permutation(const Circuit& c, BasisState in) {
  for (const Gate& g : c.gates) {
    if (!is_not_family(g.kind))
      throw SimError(SimError::Code::NonClassicalGate,
                     std::string("permutation path cannot apply ") + gate_name(g.kind));
    u64 cm = control_mask(g);
    if ((in & cm) == cm) in ^= u64(1) << g.target;
  }
  return in;
}

unsigned statevector_cap() {
  static unsigned cap = [] {
    if (const char* env = std::getenv("QGF_STATEVECTOR_CAP")) {
      long v = std::atol(env);
      if (v >= 1 && v <= 34) return static_cast<unsigned>(v);
    }
    return 26u;
  }();
  return cap;
}

StateVector run_statevector(const Circuit& c, StateVector state) {
  return run_statevector(c, std::move(state), statevector_cap());
}

StateVector run_statevector_basis(const Circuit& c, BasisState in) {
  const unsigned cap = statevector_cap();
  check_width_cap(c.qubits, cap);
  return run_statevector(c, StateVector::basis(c.qubits, in), cap);
}

StateVector run_statevector(const Circuit& c, StateVector state, unsigned cap) {
  check_width_cap(c.qubits, cap);
  if (state.qubits != c.qubits || state.amps.size() != (u64(1) << c.qubits))
    throw SimError(SimError::Code::WidthCap, "state width does not match circuit width");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto& a = state.amps;

  for (const Gate& g : c.gates) {
    u64 cm = control_mask(g);
    u64 tb = u64(1) << g.target;
    if (is_not_family(g.kind)) {
      for_each_pinned(c.qubits, cm | tb, cm,
                      [&](u64 i) { std::swap(a[i], a[i | tb]); });
    } else if (is_phase_family(g.kind)) {
      double angle = 2.0 * std::numbers::pi * static_cast<double>(g.phase.num) /
                     static_cast<double>(g.phase.den);
      std::complex<double> w = std::polar(1.0, angle);
      for_each_pinned(c.qubits, cm | tb, cm | tb, [&](u64 i) { a[i] *= w; });
    } else {
      for_each_pinned(c.qubits, tb, 0, [&](u64 i) {
        std::complex<double> x = a[i], y = a[i | tb];
        a[i] = (x + y) * inv_sqrt2;
        a[i | tb] = (x - y) * inv_sqrt2;
      });
    }
  }
  return state;
}

std::optional<BasisState> read_basis(const StateVector& v, double tol) {
  if (!(tol > 0.0 && tol < 0.5))
    throw SimError(SimError::Code::BadTolerance, "tolerance must lie in (0, 0.5)");
  for (u64 i = 0; i < v.amps.size(); ++i)
    if (std::norm(v.amps[i]) >= 1.0 - tol) return i;
  return std::nullopt;
}

std::uint64_t read_register(BasisState s, const Register& r) {
  u64 mask = (r.size >= 64) ? ~u64(0) : ((u64(1) << r.size) - 1);
  return (s >> r.start) & mask;
}

}  // namespace qgf
