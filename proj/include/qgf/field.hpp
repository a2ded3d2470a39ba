#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgf {

enum class FieldKind { Prime, Binary, Extension };

class FieldError : public std::runtime_error {
 public:
  enum class Code {
    NotPrime,
    ReducibleModulus,
    DegreeMismatch,
    NotInvertible,
    InvalidElement,
    BadSpec,
  };

  FieldError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Specification of GF(p), GF(2^n) with modulus Q, or GF(p^k) with monic modulus Q
// over GF(p). Construction validates eagerly: a FieldSpec that exists is a field.
//
// Element encoding is a packed little-endian integer: Prime holds the value
// itself; Binary bit i is the coefficient of x^i; Extension packs coefficient
// c_i into the l-bit window [i*l, (i+1)*l) with l = ceil(lg p).
class FieldSpec {
 public:
  static FieldSpec prime(std::uint64_t p);
  static FieldSpec binary(unsigned n, std::uint64_t modulus_bits);
  // coeffs are c_0..c_k ascending by degree; Q must be monic of degree k.
  static FieldSpec extension(std::uint64_t p, unsigned k, std::vector<std::uint64_t> coeffs);

  // Grammar: `p:<prime>` | `2^<n>:Q=<binary, MSB first>` | `p^k:<p>,<k>,Q=<c_k..c_0>`.
  static FieldSpec parse(const std::string& text);
  std::string to_string() const;

  FieldKind kind() const { return kind_; }
  std::uint64_t p() const { return p_; }

  // Binary: n. Extension: k. Prime: 1.
  unsigned degree() const { return degree_; }

  // Bits per packed coefficient: Prime/the adder width n = ceil(lg p); Binary 1.
  unsigned coeff_bits() const { return coeff_bits_; }

  // Total packed width of an element: Prime ceil(lg p), Binary n, Extension k*l.
  unsigned element_bits() const { return element_bits_; }

  std::uint64_t order() const { return order_; }

  // Binary only: modulus as a bitmask polynomial (bit n set).
  std::uint64_t modulus_bits() const { return modulus_bits_; }

  // Extension only: c_0..c_k ascending.
  const std::vector<std::uint64_t>& modulus_coeffs() const { return modulus_coeffs_; }

  bool element_valid(std::uint64_t x) const;

 private:
  FieldSpec() = default;

  FieldKind kind_ = FieldKind::Prime;
  std::uint64_t p_ = 0;
  unsigned degree_ = 1;
  unsigned coeff_bits_ = 0;
  unsigned element_bits_ = 0;
  std::uint64_t order_ = 0;
  std::uint64_t modulus_bits_ = 0;
  std::vector<std::uint64_t> modulus_coeffs_;

  friend void validate_field(const FieldSpec& spec);
};

// Re-checks every FieldSpec invariant; factories and parse route through this,
// so it only throws when handed parameters that never left a factory.
void validate_field(const FieldSpec& spec);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t m);

std::uint64_t field_add(const FieldSpec& spec, std::uint64_t a, std::uint64_t b);
std::uint64_t field_mul(const FieldSpec& spec, std::uint64_t a, std::uint64_t b);
std::uint64_t field_inv(const FieldSpec& spec, std::uint64_t a);

// Extension only: unpack an element into its k coefficients c_0..c_{k-1}.
std::vector<std::uint64_t> coeff_decompose(const FieldSpec& spec, std::uint64_t a);
std::uint64_t coeff_pack(const FieldSpec& spec, const std::vector<std::uint64_t>& coeffs);

// Classical operand tables consumed by the add-mult builders.
// Binary: n entries a*x^i mod Q. Extension: k*l entries 2^j * (a*x^i) mod Q,
// row-major by (i, j).
std::vector<std::uint64_t> shift_table(const FieldSpec& spec, std::uint64_t a);

// Integer inverse mod m for any m >= 2; nullopt when gcd(a, m) != 1.
std::optional<std::uint64_t> mod_inv(std::uint64_t a, std::uint64_t m);

// Every packed element of the field, ascending; order() entries. Intended for
// exhaustive sweeps, so the order must be modest.
std::vector<std::uint64_t> all_elements(const FieldSpec& spec);

// Ring variants of the extension-field operations: polynomial arithmetic modulo
// a monic Q with coefficients mod p, with no primality or irreducibility
// requirement. Resource-counting experiments draw moduli from all odd values,
// where these coincide with the field operations whenever the parameters do
// form a field. Coefficients of Q are c_0..c_k ascending; elements are packed
// as in FieldSpec with l = ceil(lg p).
std::uint64_t ring_mul_gfpk(std::uint64_t p, unsigned k, const std::vector<std::uint64_t>& q_coeffs,
                            std::uint64_t a, std::uint64_t b);
std::optional<std::uint64_t> ring_inv_gfpk(std::uint64_t p, unsigned k,
                                           const std::vector<std::uint64_t>& q_coeffs, std::uint64_t a);
std::vector<std::uint64_t> ring_shift_table_gfpk(std::uint64_t p, unsigned k,
                                                 const std::vector<std::uint64_t>& q_coeffs,
                                                 std::uint64_t a);

// Bits needed to store v; 1 for v = 0.
unsigned bit_width_at_least_one(std::uint64_t v);

}  // namespace qgf
