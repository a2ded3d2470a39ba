#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgf/circuit.hpp"
#include "qgf/field.hpp"

namespace qgf {

// CarrySum: ripple adders with carry ancillas, NOT-family gates only.
// Phi: Fourier-basis adders made of phase rotations, no carry qubits.
enum class AdderFamily { CarrySum, Phi };

const char* family_name(AdderFamily family);  // "carry-sum" | "phi"
std::optional<AdderFamily> family_from_name(std::string_view name);

class BuildError : public std::runtime_error {
 public:
  enum class Code { OperandOutOfRange, WidthTooSmall, BadControls, NotInvertible };

  BuildError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// ----- integer circuits -----

// Ripple adder for a hardwired classical a on an (n+1)-qubit target register z
// (value plus carry-out MSB) with n-1 carry ancillas: |z> -> |z+a> for z < 2^n,
// and more generally addition mod 2^(n+1) on the full target. External controls
// attach to the Sum gates and the final Carry gate only. Registers:
// [ctl] z carry.
Circuit build_carry_sum_adder(std::uint64_t a, unsigned n, int controls = 0);

// Fourier-basis adder on an N-qubit window holding QFT|z>: one fused rotation
// of a / 2^(j+1) turns per window qubit j, zero rotations elided. Maps
// QFT|z> -> QFT|z+a> with z, a < 2^(N-1). Registers: [ctl] z.
Circuit build_phi_adder(std::uint64_t a, unsigned N, int controls = 0);

// QFT without terminal swaps; after it, window qubit j carries the phase
// z / 2^(j+1) of the input |z>.
Circuit build_qft(unsigned N);

// Swaps registers x and y iff c is 1. Registers: c x y.
Circuit build_cswap(unsigned n);

// ----- GF(p) circuits -----
// The modulus is a raw integer with n = ceil(lg m) value bits; primality is
// deliberately not checked here, so the resource-counting model can feed
// arbitrary odd moduli. Semantics |z> -> |(z+a) mod m> hold for any m >= 3.

Circuit build_mod_adder_gfp(std::uint64_t a, std::uint64_t m, AdderFamily family,
                            int controls = 0);

// |c,x,z> -> |c,x,(z + a*x) mod m> via n modular adders of (2^i * a) mod m,
// each controlled by (c, x_i). The Phi variant brackets the accumulator in a
// QFT / inverse-QFT pair, so inputs and outputs are computational-basis states
// for both families.
Circuit build_addmult_gfp(std::uint64_t a, std::uint64_t m, AdderFamily family);

// |c=1,x,0> -> |1,(a*x) mod m,0>: addmult(a), controlled swap of x with the
// accumulator value qubits, inverse addmult of the inverse operand.
Circuit build_cmult_gfp(std::uint64_t a, std::uint64_t m, AdderFamily family);

// ----- GF(2^n) circuits -----

// NOT (or doubly controlled NOT) on every z qubit where a has a set bit.
Circuit build_adder_gf2n(std::uint64_t a, const FieldSpec& f, int controls = 0);

// |c,x,z> -> |c,x,z + a*x> over GF(2^n): adder of table entry a*x^i mod Q
// doubly controlled by (c, x_i).
Circuit build_addmult_gf2n(std::uint64_t a, const FieldSpec& f);

Circuit build_cmult_gf2n(std::uint64_t a, const FieldSpec& f);

// ----- GF(p^k) circuits -----

// Structural parameters of the coefficient ring Z_p[x] / (Q): enough to build
// every GF(p^k) circuit. Resource-counting experiments instantiate this with
// arbitrary odd p and monic Q; use the FieldSpec overloads when the parameters
// are meant to be a field.
struct GfpkRing {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::vector<std::uint64_t> q_coeffs;  // c_0..c_k ascending, monic

  unsigned l() const { return bit_width_at_least_one(p - 1); }
  unsigned n() const { return k * l(); }
};

GfpkRing ring_of(const FieldSpec& f);

// k sequential GF(p) modular adders, one per coefficient sub-register. The
// CarrySum layout gives every coefficient its own overflow qubit and shares
// one carry pool; the Phi layout shares a single overflow qubit, each modular
// adder bracketed by a QFT pair over its (l+1)-qubit window. Registers:
// [ctl] z0 o0 .. z{k-1} o{k-1} carry t   (CarrySum)
// [ctl] z o t                            (Phi)
Circuit build_adder_gfpk(std::uint64_t a, const GfpkRing& r, AdderFamily family,
                         int controls = 0);
Circuit build_adder_gfpk(std::uint64_t a, const FieldSpec& f, AdderFamily family,
                         int controls = 0);

// n doubly controlled GF(p^k) adders, one per x qubit; the operand of qubit
// (i, j) is the table entry 2^j * a * x^i mod Q.
Circuit build_addmult_gfpk(std::uint64_t a, const GfpkRing& r, AdderFamily family);
Circuit build_addmult_gfpk(std::uint64_t a, const FieldSpec& f, AdderFamily family);

Circuit build_cmult_gfpk(std::uint64_t a, const GfpkRing& r, AdderFamily family);
Circuit build_cmult_gfpk(std::uint64_t a, const FieldSpec& f, AdderFamily family);

// ----- basis-state plumbing for built circuits -----

// Value groups are the registers named c, x, y and the z windows (z, or
// z0..z{k-1} concatenated in index order). Everything else (o*, carry, t) is
// an ancilla that valid runs restore to zero; ctl carries external controls.
// Basis states are spelled uint64 here so builders stay independent of sim.
std::uint64_t read_group(const Circuit& c, std::uint64_t s, std::string_view group);
std::uint64_t write_group(const Circuit& c, std::uint64_t s, std::string_view group,
                          std::uint64_t value);
bool ancillas_clear(const Circuit& c, std::uint64_t s);
bool has_group(const Circuit& c, std::string_view group);

}  // namespace qgf
