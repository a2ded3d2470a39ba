#include "qgf/field.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qgf {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// ----- polynomials over GF(2) as bitmasks -----

int gf2_degree(u64 a) { return static_cast<int>(std::bit_width(a)) - 1; }

u64 gf2_mod(u64 a, u64 q) {
  int dq = gf2_degree(q);
  for (int d = gf2_degree(a); d >= dq; d = gf2_degree(a)) a ^= q << (d - dq);
  return a;
}

u64 gf2_mulmod(u64 a, u64 b, u64 q) {
  u64 r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (u64(1) << gf2_degree(q))) a ^= q;
  }
  return r;
}

bool gf2_irreducible(u64 q, unsigned n) {
  for (unsigned d = 1; 2 * d <= n; ++d)
    for (u64 low = 0; low < (u64(1) << d); ++low)
      if (gf2_mod(q, (u64(1) << d) | low) == 0) return false;
  return true;
}

// ----- polynomials over Z_p as coefficient vectors, ascending degree -----

using Poly = std::vector<u64>;

int poly_degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

// Product reduced by monic q of degree k; inputs have degree < k.
Poly poly_mulmod(u64 p, unsigned k, const Poly& q, const Poly& a, const Poly& b) {
  Poly prod(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (int d = static_cast<int>(2 * k - 2); d >= static_cast<int>(k); --d) {
    u64 c = prod[static_cast<size_t>(d)];
    if (c == 0) continue;
    for (unsigned j = 0; j <= k; ++j) {
      size_t idx = static_cast<size_t>(d) - k + j;
      prod[idx] = (prod[idx] + (p - c % p) * q[j]) % p;
    }
  }
  prod.resize(k);
  return prod;
}

// One multiplication by x, reduced by monic q of degree k.
Poly poly_shift_x(u64 p, unsigned k, const Poly& q, const Poly& a) {
  Poly r(k, 0);
  u64 top = a[k - 1];
  for (unsigned j = 0; j < k; ++j) {
    u64 v = (j > 0 ? a[j - 1] : 0);
    r[j] = (v + (p - (top * q[j]) % p)) % p;
  }
  return r;
}

u64 pack_poly(const Poly& a, unsigned l) {
  u64 v = 0;
  for (size_t i = a.size(); i-- > 0;) v = (v << l) | a[i];
  return v;
}

Poly unpack_poly(u64 v, unsigned k, unsigned l) {
  Poly a(k, 0);
  u64 mask = (l >= 64) ? ~u64(0) : ((u64(1) << l) - 1);
  for (unsigned i = 0; i < k; ++i) a[i] = (v >> (i * l)) & mask;
  return a;
}

[[noreturn]] void bad_spec(const std::string& detail) {
  throw FieldError(FieldError::Code::BadSpec, "bad field spec: " + detail);
}

}  // namespace

unsigned bit_width_at_least_one(u64 v) {
  unsigned w = static_cast<unsigned>(std::bit_width(v));
  return w == 0 ? 1 : w;
}

bool is_prime(u64 m) {
  if (m < 2) return false;
  for (u64 s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (m % s == 0) return m == s;
  }
  u64 d = m - 1;
  int r = 0;
  while ((d & 1) == 0) { d >>= 1; ++r; }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, m);
      if (x == m - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

void validate_field(const FieldSpec& spec) {
  switch (spec.kind_) {
    case FieldKind::Prime:
      if (spec.p_ < 3 || !is_prime(spec.p_))
        throw FieldError(FieldError::Code::NotPrime,
                         "modulus " + std::to_string(spec.p_) + " is not an odd prime >= 3");
      break;
    case FieldKind::Binary: {
      unsigned n = spec.degree_;
      if (n < 2 || n > 32) bad_spec("binary field degree must be in [2, 32]");
      if (gf2_degree(spec.modulus_bits_) != static_cast<int>(n))
        throw FieldError(FieldError::Code::DegreeMismatch,
                         "modulus degree does not match field degree " + std::to_string(n));
      if (!gf2_irreducible(spec.modulus_bits_, n))
        throw FieldError(FieldError::Code::ReducibleModulus, "modulus is reducible over GF(2)");
      break;
    }
    case FieldKind::Extension: {
      if (spec.p_ < 3 || !is_prime(spec.p_))
        throw FieldError(FieldError::Code::NotPrime,
                         "base " + std::to_string(spec.p_) + " is not an odd prime >= 3");
      unsigned k = spec.degree_;
      if (k < 2) bad_spec("extension degree must be >= 2");
      const auto& q = spec.modulus_coeffs_;
      if (q.size() != k + 1 || q[k] != 1)
        throw FieldError(FieldError::Code::DegreeMismatch,
                         "modulus must be monic of degree " + std::to_string(k));
      for (u64 c : q)
        if (c >= spec.p_)
          throw FieldError(FieldError::Code::DegreeMismatch, "modulus coefficient out of range");
      if (spec.element_bits_ > 32) bad_spec("packed element exceeds 32 bits");
      // Trial division by every monic polynomial of degree <= k/2.
      for (unsigned d = 1; 2 * d <= k; ++d) {
        u64 combos = 1;
        for (unsigned i = 0; i < d; ++i) combos *= spec.p_;
        for (u64 c = 0; c < combos; ++c) {
          Poly div(d + 1, 0);
          u64 v = c;
          for (unsigned i = 0; i < d; ++i) { div[i] = v % spec.p_; v /= spec.p_; }
          div[d] = 1;
          // Remainder of q by div via long division.
          Poly rem = q;
          for (int deg = poly_degree(rem); deg >= static_cast<int>(d); deg = poly_degree(rem)) {
            u64 lead = rem[static_cast<size_t>(deg)];
            for (unsigned j = 0; j <= d; ++j) {
              size_t idx = static_cast<size_t>(deg) - d + j;
              rem[idx] = (rem[idx] + (spec.p_ - (lead * div[j]) % spec.p_)) % spec.p_;
            }
          }
          if (poly_degree(rem) < 0)
            throw FieldError(FieldError::Code::ReducibleModulus,
                             "modulus is reducible over GF(" + std::to_string(spec.p_) + ")");
        }
      }
      break;
    }
  }
}

FieldSpec FieldSpec::prime(u64 p) {
  FieldSpec s;
  s.kind_ = FieldKind::Prime;
  s.p_ = p;
  s.degree_ = 1;
  s.coeff_bits_ = p >= 2 ? bit_width_at_least_one(p - 1) : 1;
  s.element_bits_ = s.coeff_bits_;
  s.order_ = p;
  validate_field(s);
  return s;
}

FieldSpec FieldSpec::binary(unsigned n, u64 modulus_bits) {
  FieldSpec s;
  s.kind_ = FieldKind::Binary;
  s.p_ = 2;
  s.degree_ = n;
  s.coeff_bits_ = 1;
  s.element_bits_ = n;
  s.order_ = n < 64 ? (u64(1) << n) : 0;
  s.modulus_bits_ = modulus_bits;
  validate_field(s);
  return s;
}

FieldSpec FieldSpec::extension(u64 p, unsigned k, std::vector<u64> coeffs) {
  FieldSpec s;
  s.kind_ = FieldKind::Extension;
  s.p_ = p;
  s.degree_ = k;
  s.coeff_bits_ = p >= 2 ? bit_width_at_least_one(p - 1) : 1;
  s.element_bits_ = k * s.coeff_bits_;
  s.modulus_coeffs_ = std::move(coeffs);
  s.order_ = 1;
  for (unsigned i = 0; i < k; ++i) s.order_ *= p;
  validate_field(s);
  return s;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) bad_spec("missing ':' in '" + text + "'");
  std::string head = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);

  auto parse_u64 = [](const std::string& s, const char* what) -> u64 {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      bad_spec(std::string("expected a decimal ") + what + ", got '" + s + "'");
    return std::stoull(s);
  };

  if (head == "p") {
    return prime(parse_u64(rest, "prime"));
  }
  if (head.rfind("2^", 0) == 0) {
    u64 n = parse_u64(head.substr(2), "degree");
    if (rest.rfind("Q=", 0) != 0) bad_spec("expected 'Q=' in '" + text + "'");
    std::string bits = rest.substr(2);
    if (bits.empty() || bits.find_first_not_of("01") != std::string::npos)
      bad_spec("modulus must be a binary literal, got '" + bits + "'");
    u64 q = 0;
    for (char c : bits) q = (q << 1) | static_cast<u64>(c - '0');
    return binary(static_cast<unsigned>(n), q);
  }
  if (head == "p^k") {
    std::vector<std::string> parts;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() < 3) bad_spec("expected '<p>,<k>,Q=<coeffs>' in '" + text + "'");
    u64 p = parse_u64(parts[0], "prime");
    u64 k = parse_u64(parts[1], "degree");
    if (parts[2].rfind("Q=", 0) != 0) bad_spec("expected 'Q=' in '" + text + "'");
    parts[2] = parts[2].substr(2);
    // Coefficients are written c_k..c_0; store ascending.
    std::vector<u64> coeffs;
    for (size_t i = parts.size(); i-- > 2;) coeffs.push_back(parse_u64(parts[i], "coefficient"));
    return extension(p, static_cast<unsigned>(k), std::move(coeffs));
  }
  bad_spec("unknown field kind '" + head + "'");
}

std::string FieldSpec::to_string() const {
  switch (kind_) {
    case FieldKind::Prime:
      return "p:" + std::to_string(p_);
    case FieldKind::Binary: {
      std::string bits;
      for (int i = static_cast<int>(degree_); i >= 0; --i)
        bits += ((modulus_bits_ >> i) & 1) ? '1' : '0';
      return "2^" + std::to_string(degree_) + ":Q=" + bits;
    }
    case FieldKind::Extension: {
      std::string s = "p^k:" + std::to_string(p_) + "," + std::to_string(degree_) + ",Q=";
      for (size_t i = modulus_coeffs_.size(); i-- > 0;) {
        s += std::to_string(modulus_coeffs_[i]);
        if (i > 0) s += ",";
      }
      return s;
    }
  }
  return {};
}

bool FieldSpec::element_valid(u64 x) const {
  switch (kind_) {
    case FieldKind::Prime:
      return x < p_;
    case FieldKind::Binary:
      return degree_ >= 64 || x < (u64(1) << degree_);
    case FieldKind::Extension: {
      if (element_bits_ < 64 && (x >> element_bits_) != 0) return false;
      for (u64 c : unpack_poly(x, degree_, coeff_bits_))
        if (c >= p_) return false;
      return true;
    }
  }
  return false;
}

namespace {

void require_element(const FieldSpec& spec, u64 x, const char* name) {
  if (!spec.element_valid(x))
    throw FieldError(FieldError::Code::InvalidElement,
                     std::string(name) + "=" + std::to_string(x) + " is not an element of " + spec.to_string());
}

}  // namespace

u64 field_add(const FieldSpec& spec, u64 a, u64 b) {
  require_element(spec, a, "a");
  require_element(spec, b, "b");
  switch (spec.kind()) {
    case FieldKind::Prime:
      return (a + b) % spec.p();
    case FieldKind::Binary:
      return a ^ b;
    case FieldKind::Extension: {
      Poly pa = unpack_poly(a, spec.degree(), spec.coeff_bits());
      Poly pb = unpack_poly(b, spec.degree(), spec.coeff_bits());
      for (unsigned i = 0; i < spec.degree(); ++i) pa[i] = (pa[i] + pb[i]) % spec.p();
      return pack_poly(pa, spec.coeff_bits());
    }
  }
  return 0;
}

u64 field_mul(const FieldSpec& spec, u64 a, u64 b) {
  require_element(spec, a, "a");
  require_element(spec, b, "b");
  switch (spec.kind()) {
    case FieldKind::Prime:
      return mulmod(a, b, spec.p());
    case FieldKind::Binary:
      return gf2_mulmod(a, b, spec.modulus_bits());
    case FieldKind::Extension:
      return ring_mul_gfpk(spec.p(), spec.degree(), spec.modulus_coeffs(), a, b);
  }
  return 0;
}

u64 field_inv(const FieldSpec& spec, u64 a) {
  require_element(spec, a, "a");
  if (a == 0) throw FieldError(FieldError::Code::NotInvertible, "0 has no inverse");
  switch (spec.kind()) {
    case FieldKind::Prime: {
      auto inv = mod_inv(a, spec.p());
      if (!inv) throw FieldError(FieldError::Code::NotInvertible, "no inverse mod " + std::to_string(spec.p()));
      return *inv;
    }
    case FieldKind::Binary: {
      // Extended Euclid over GF(2)[x].
      u64 q = spec.modulus_bits();
      u64 r0 = q, r1 = a, t0 = 0, t1 = 1;
      while (r1 != 0) {
        u64 r = r0, quot = 0;
        int d1 = gf2_degree(r1);
        for (int d = gf2_degree(r); d >= d1; d = gf2_degree(r)) {
          quot ^= u64(1) << (d - d1);
          r ^= r1 << (d - d1);
        }
        u64 t = t0 ^ gf2_mulmod(quot, t1, q);
        r0 = r1; r1 = r;
        t0 = t1; t1 = t;
      }
      return gf2_mod(t0, q);
    }
    case FieldKind::Extension: {
      auto inv = ring_inv_gfpk(spec.p(), spec.degree(), spec.modulus_coeffs(), a);
      if (!inv) throw FieldError(FieldError::Code::NotInvertible, "element has no inverse");
      return *inv;
    }
  }
  return 0;
}

std::vector<u64> coeff_decompose(const FieldSpec& spec, u64 a) {
  if (spec.kind() != FieldKind::Extension)
    bad_spec("coefficient decomposition requires an extension field");
  require_element(spec, a, "a");
  return unpack_poly(a, spec.degree(), spec.coeff_bits());
}

u64 coeff_pack(const FieldSpec& spec, const std::vector<u64>& coeffs) {
  if (spec.kind() != FieldKind::Extension)
    bad_spec("coefficient packing requires an extension field");
  if (coeffs.size() != spec.degree())
    throw FieldError(FieldError::Code::InvalidElement, "coefficient list has wrong length");
  for (u64 c : coeffs)
    if (c >= spec.p()) throw FieldError(FieldError::Code::InvalidElement, "coefficient out of range");
  return pack_poly(coeffs, spec.coeff_bits());
}

std::vector<u64> shift_table(const FieldSpec& spec, u64 a) {
  require_element(spec, a, "a");
  switch (spec.kind()) {
    case FieldKind::Prime:
      bad_spec("shift tables are defined for binary and extension fields");
    case FieldKind::Binary: {
      std::vector<u64> table(spec.degree());
      u64 v = a;
      for (unsigned i = 0; i < spec.degree(); ++i) {
        table[i] = v;
        v <<= 1;
        if (v & (u64(1) << spec.degree())) v ^= spec.modulus_bits();
      }
      return table;
    }
    case FieldKind::Extension:
      return ring_shift_table_gfpk(spec.p(), spec.degree(), spec.modulus_coeffs(), a);
  }
  return {};
}

std::vector<u64> all_elements(const FieldSpec& spec) {
  std::vector<u64> out;
  out.reserve(spec.order());
  switch (spec.kind()) {
    case FieldKind::Prime:
    case FieldKind::Binary:
      for (u64 v = 0; v < spec.order(); ++v) out.push_back(v);
      break;
    case FieldKind::Extension: {
      const unsigned k = spec.degree();
      const unsigned l = spec.coeff_bits();
      std::vector<u64> cs(k, 0);
      for (;;) {
        u64 packed = 0;
        for (unsigned i = 0; i < k; ++i) packed |= cs[i] << (i * l);
        out.push_back(packed);
        unsigned i = 0;
        while (i < k && ++cs[i] == spec.p()) cs[i++] = 0;
        if (i == k) break;
      }
      break;
    }
  }
  return out;
}

std::optional<u64> mod_inv(u64 a, u64 m) {
  a %= m;
  if (a == 0) return std::nullopt;
  std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r = r0 - q * r1;
    std::int64_t t = t0 - q * t1;
    r0 = r1; r1 = r;
    t0 = t1; t1 = t;
  }
  if (r0 != 1) return std::nullopt;
  if (t0 < 0) t0 += static_cast<std::int64_t>(m);
  return static_cast<u64>(t0);
}

u64 ring_mul_gfpk(u64 p, unsigned k, const std::vector<u64>& q_coeffs, u64 a, u64 b) {
  unsigned l = bit_width_at_least_one(p - 1);
  Poly pa = unpack_poly(a, k, l);
  Poly pb = unpack_poly(b, k, l);
  return pack_poly(poly_mulmod(p, k, q_coeffs, pa, pb), l);
}

std::optional<u64> ring_inv_gfpk(u64 p, unsigned k, const std::vector<u64>& q_coeffs, u64 a) {
  unsigned l = bit_width_at_least_one(p - 1);

  auto trim = [](Poly v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  };
  auto sub = [p, &trim](const Poly& x, const Poly& y) {
    Poly r(std::max(x.size(), y.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
      u64 xi = i < x.size() ? x[i] : 0;
      u64 yi = i < y.size() ? y[i] : 0;
      r[i] = (xi + (p - yi)) % p;
    }
    return trim(std::move(r));
  };
  auto mul = [p, &trim](const Poly& x, const Poly& y) {
    if (x.empty() || y.empty()) return Poly{};
    Poly r(x.size() + y.size() - 1, 0);
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < y.size(); ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
    return trim(std::move(r));
  };
  // Quotient of x by y; fails when a leading coefficient is not invertible mod p.
  auto divide = [p, &sub, &mul](const Poly& x, const Poly& y) -> std::optional<std::pair<Poly, Poly>> {
    Poly rem = x, quot;
    int dy = static_cast<int>(y.size()) - 1;
    auto lead_inv = mod_inv(y.back(), p);
    if (!lead_inv) return std::nullopt;
    while (static_cast<int>(rem.size()) - 1 >= dy && !rem.empty()) {
      int d = static_cast<int>(rem.size()) - 1;
      u64 c = (rem.back() * *lead_inv) % p;
      Poly term(static_cast<size_t>(d - dy) + 1, 0);
      term.back() = c;
      if (quot.size() < term.size()) quot.resize(term.size(), 0);
      quot[static_cast<size_t>(d - dy)] = c;
      rem = sub(rem, mul(term, y));
      if (static_cast<int>(rem.size()) - 1 == d) return std::nullopt;  // no progress, c not exact
    }
    return std::make_pair(std::move(quot), std::move(rem));
  };

  Poly r0 = trim(q_coeffs);
  Poly r1 = trim(unpack_poly(a, k, l));
  Poly t0, t1{1};
  while (!r1.empty()) {
    auto dm = divide(r0, r1);
    if (!dm) return std::nullopt;
    Poly t = sub(t0, mul(dm->first, t1));
    r0 = std::move(r1);
    r1 = std::move(dm->second);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.size() != 1) return std::nullopt;  // gcd not a unit
  auto scale = mod_inv(r0[0], p);
  if (!scale) return std::nullopt;
  Poly result(k, 0);
  for (size_t j = 0; j < t0.size() && j < k; ++j) result[j] = (t0[j] * *scale) % p;
  return pack_poly(result, l);
}

std::vector<u64> ring_shift_table_gfpk(u64 p, unsigned k, const std::vector<u64>& q_coeffs, u64 a) {
  unsigned l = bit_width_at_least_one(p - 1);
  std::vector<u64> table;
  table.reserve(static_cast<size_t>(k) * l);
  Poly cur = unpack_poly(a, k, l);
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = 0; j < l; ++j) {
      u64 scale = (u64(1) << j) % p;
      Poly scaled(k, 0);
      for (unsigned c = 0; c < k; ++c) scaled[c] = (cur[c] * scale) % p;
      table.push_back(pack_poly(scaled, l));
    }
    cur = poly_shift_x(p, k, q_coeffs, cur);
  }
  return table;
}

}  // namespace qgf
