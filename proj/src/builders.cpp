#include "qgf/builders.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace qgf {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using Ctls = std::vector<u32>;

Ctls join(std::initializer_list<u32> own, std::span<const u32> ext) {
  Ctls v(own);
  v.insert(v.end(), ext.begin(), ext.end());
  return v;
}

std::vector<u32> iota_range(u32 start, u32 count) {
  std::vector<u32> v(count);
  std::iota(v.begin(), v.end(), start);
  return v;
}

void require_controls(int controls, bool allow_single) {
  if (controls == 0 || controls == 2 || (allow_single && controls == 1)) return;
  throw BuildError(BuildError::Code::BadControls,
                   allow_single ? "controls must be 0, 1 or 2" : "controls must be 0 or 2");
}

// Widest value register the exact phase denominators can express.
constexpr unsigned kMaxValueBits = 62;

unsigned value_bits(u64 m) { return bit_width_at_least_one(m - 1); }

// Ripple addition of classical a to the n+1 qubits z (value plus carry-out
// MSB) using the n-1 carry ancillas cr; addition mod 2^(n+1) on the whole of
// z. The blocks where a contributes a bit keep their NOT/CNOT pair; constant
// inputs are folded away, which also cancels the NOT pairs at both ends of the
// ripple. ext lands on every Sum gate and on the carry gate that writes z[n];
// with ext off, the remaining gates telescope to the identity.
void emit_csum_add(Circuit& c, u64 a, unsigned n, std::span<const u32> z,
                   std::span<const u32> cr, std::span<const u32> ext, bool subtract) {
  std::vector<Gate> gs;
  auto bit = [&](unsigned i) { return (a >> i) & 1u; };
  auto out = [&](unsigned i) { return i + 1 < n ? cr[i] : z[n]; };
  auto put = [&](u32 target, const Ctls& controls) {
    gs.push_back(Gate::not_gate(target, controls));
  };

  if (bit(0)) put(out(0), {z[0]});
  for (unsigned i = 1; i < n; ++i) {
    std::span<const u32> e = (i == n - 1) ? ext : std::span<const u32>{};
    if (bit(i)) {
      put(out(i), join({z[i]}, e));
      put(z[i], join({}, e));
    }
    put(out(i), join({cr[i - 1], z[i]}, e));
  }
  put(z[n - 1], join({cr[n - 2]}, ext));
  for (unsigned i = n - 2; i >= 1; --i) {
    put(out(i), {cr[i - 1], z[i]});
    if (bit(i)) {
      put(z[i], {});
      put(out(i), {z[i]});
    }
    if (bit(i)) put(z[i], join({}, ext));
    put(z[i], join({cr[i - 1]}, ext));
  }
  if (bit(0)) put(out(0), {z[0]});
  if (bit(0)) put(z[0], join({}, ext));
  // Bit n of the operand has no carry chain mod 2^(n+1); it is a bare MSB flip.
  if (bit(n)) put(z[n], join({}, ext));

  if (subtract) std::reverse(gs.begin(), gs.end());
  for (auto& g : gs) c.push(g);
}

// Fourier cascade over the window w, no terminal swaps: forward leaves qubit j
// carrying phase z / 2^(j+1).
void emit_qft(Circuit& c, std::span<const u32> w, bool inverse) {
  const unsigned N = static_cast<unsigned>(w.size());
  if (!inverse) {
    for (unsigned j = N; j-- > 0;) {
      c.push(Gate::hadamard(w[j]));
      for (unsigned m = j; m-- > 0;) {
        const i64 den = i64(1) << (j - m + 1);
        c.push(Gate::phase_gate(w[j], make_phase(1, den), {w[m]}));
      }
    }
  } else {
    for (unsigned j = 0; j < N; ++j) {
      for (unsigned m = 0; m < j; ++m) {
        const i64 den = i64(1) << (j - m + 1);
        c.push(Gate::phase_gate(w[j], make_phase(den - 1, den), {w[m]}));
      }
      c.push(Gate::hadamard(w[j]));
    }
  }
}

// One fused rotation per window qubit: qubit j advances by a / 2^(j+1) turns.
// Zero rotations are elided, so gate counts depend on the operand bits.
void emit_phi_add(Circuit& c, u64 a, std::span<const u32> w, std::span<const u32> ext,
                  bool subtract) {
  for (unsigned j = 0; j < w.size(); ++j) {
    const i64 den = i64(1) << (j + 1);
    i64 num = static_cast<i64>(a & (static_cast<u64>(den) - 1));
    if (subtract) num = den - num;
    if (num % den == 0) continue;
    c.push(Gate::phase_gate(w[j], make_phase(num, den), ext));
  }
}

// Seven-step modular addition of a on the L+1 qubit accumulator zw (value plus
// overflow MSB): add a, subtract m, file the underflow bit into t, add back m
// iff t, subtract a, clear t against the restored MSB, add a again. Only the
// three a-steps carry the external controls; with them off the remaining steps
// cancel. The Phi family keeps zw in Fourier space and surfaces to the
// computational basis around the two MSB reads.
void emit_mod_add(Circuit& c, AdderFamily fam, u64 a, u64 m, unsigned L,
                  std::span<const u32> zw, std::span<const u32> cr, u32 t,
                  std::span<const u32> ext) {
  const u32 top = zw[L];
  const u32 tq[1] = {t};
  auto add = [&](u64 v, std::span<const u32> e, bool sub) {
    if (fam == AdderFamily::CarrySum) {
      emit_csum_add(c, v, L, zw, cr, e, sub);
    } else {
      emit_phi_add(c, v, zw, e, sub);
    }
  };

  add(a, ext, false);
  add(m, {}, true);
  if (fam == AdderFamily::Phi) emit_qft(c, zw, true);
  c.push(Gate::not_gate(t, {top}));
  if (fam == AdderFamily::Phi) emit_qft(c, zw, false);
  add(m, tq, false);
  add(a, ext, true);
  if (fam == AdderFamily::Phi) emit_qft(c, zw, true);
  c.push(Gate::not_gate(top));
  c.push(Gate::not_gate(t, {top}));
  c.push(Gate::not_gate(top));
  if (fam == AdderFamily::Phi) emit_qft(c, zw, false);
  add(a, ext, false);
}

void emit_cswap_pairs(Circuit& c, u32 ctl, std::span<const u32> xs,
                      std::span<const u32> ys) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    c.push(Gate::not_gate(xs[i], {ys[i]}));
    c.push(Gate::not_gate(ys[i], {ctl, xs[i]}));
    c.push(Gate::not_gate(xs[i], {ys[i]}));
  }
}

struct Layout {
  Circuit circuit;
  u32 cursor = 0;

  std::vector<u32> add(const std::string& name, u32 size) {
    circuit.registers.push_back(Register{name, cursor, size});
    auto idx = iota_range(cursor, size);
    cursor += size;
    return idx;
  }
  Circuit take() {
    circuit.qubits = cursor;
    return std::move(circuit);
  }
};

void check_modulus(u64 m) {
  if (m < 3) {
    throw BuildError(BuildError::Code::WidthTooSmall, "modulus must be at least 3");
  }
  if (value_bits(m) > kMaxValueBits) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "modulus too wide");
  }
}

void check_ring(const GfpkRing& r) {
  if (r.p < 3) {
    throw BuildError(BuildError::Code::WidthTooSmall,
                     "coefficient modulus must be at least 3");
  }
  if (r.k < 2) {
    throw BuildError(BuildError::Code::WidthTooSmall,
                     "extension degree must be at least 2");
  }
  if (r.q_coeffs.size() != r.k + 1 || r.q_coeffs[r.k] != 1) {
    throw BuildError(BuildError::Code::OperandOutOfRange,
                     "structure polynomial must be monic of degree k");
  }
  for (u64 q : r.q_coeffs) {
    if (q >= r.p) {
      throw BuildError(BuildError::Code::OperandOutOfRange,
                       "structure polynomial coefficient not reduced mod p");
    }
  }
  if (r.n() > kMaxValueBits) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "element too wide");
  }
}

std::vector<u64> ring_coeffs(const GfpkRing& r, u64 a) {
  const unsigned l = r.l();
  const u64 mask = (u64(1) << l) - 1;
  if (l < 64 && (a >> (r.k * l)) != 0) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "element out of range");
  }
  std::vector<u64> cs(r.k);
  for (unsigned i = 0; i < r.k; ++i) {
    cs[i] = (a >> (i * l)) & mask;
    if (cs[i] >= r.p) {
      throw BuildError(BuildError::Code::OperandOutOfRange,
                       "element coefficient not reduced mod p");
    }
  }
  return cs;
}

}  // namespace

const char* family_name(AdderFamily family) {
  return family == AdderFamily::CarrySum ? "carry-sum" : "phi";
}

std::optional<AdderFamily> family_from_name(std::string_view name) {
  if (name == "carry-sum") return AdderFamily::CarrySum;
  if (name == "phi") return AdderFamily::Phi;
  return std::nullopt;
}

Circuit build_carry_sum_adder(u64 a, unsigned n, int controls) {
  if (n < 2) {
    throw BuildError(BuildError::Code::WidthTooSmall, "adder needs at least 2 value bits");
  }
  if (n > kMaxValueBits) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "value register too wide");
  }
  require_controls(controls, true);
  if (a >> n) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "addend exceeds n bits");
  }
  Layout lay;
  auto ext = controls ? lay.add("ctl", static_cast<u32>(controls)) : std::vector<u32>{};
  auto z = lay.add("z", n + 1);
  auto cr = lay.add("carry", n - 1);
  Circuit c = lay.take();
  emit_csum_add(c, a, n, z, cr, ext, false);
  return c;
}

Circuit build_phi_adder(u64 a, unsigned N, int controls) {
  if (N < 1) {
    throw BuildError(BuildError::Code::WidthTooSmall, "window needs at least 1 qubit");
  }
  if (N > kMaxValueBits + 1) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "window too wide");
  }
  require_controls(controls, true);
  if (a >> (N - 1)) {
    throw BuildError(BuildError::Code::OperandOutOfRange,
                     "addend exceeds N-1 bits, sum could overflow the window");
  }
  Layout lay;
  auto ext = controls ? lay.add("ctl", static_cast<u32>(controls)) : std::vector<u32>{};
  auto z = lay.add("z", N);
  Circuit c = lay.take();
  emit_phi_add(c, a, z, ext, false);
  return c;
}

Circuit build_qft(unsigned N) {
  if (N < 1) {
    throw BuildError(BuildError::Code::WidthTooSmall, "window needs at least 1 qubit");
  }
  if (N > kMaxValueBits + 1) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "window too wide");
  }
  Circuit c = make_circuit(N, "q");
  emit_qft(c, iota_range(0, N), false);
  return c;
}

Circuit build_cswap(unsigned n) {
  if (n < 1) {
    throw BuildError(BuildError::Code::WidthTooSmall, "need at least 1 qubit pair");
  }
  Layout lay;
  auto cq = lay.add("c", 1);
  auto xs = lay.add("x", n);
  auto ys = lay.add("y", n);
  Circuit c = lay.take();
  emit_cswap_pairs(c, cq[0], xs, ys);
  return c;
}

Circuit build_mod_adder_gfp(u64 a, u64 m, AdderFamily family, int controls) {
  check_modulus(m);
  require_controls(controls, false);
  if (a >= m) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "addend must be below the modulus");
  }
  const unsigned n = value_bits(m);
  Layout lay;
  auto ext = controls ? lay.add("ctl", static_cast<u32>(controls)) : std::vector<u32>{};
  auto zw = lay.add("z", n);
  auto ov = lay.add("o", 1);
  zw.push_back(ov[0]);
  std::vector<u32> cr;
  if (family == AdderFamily::CarrySum) cr = lay.add("carry", n - 1);
  auto t = lay.add("t", 1);
  Circuit c = lay.take();
  emit_mod_add(c, family, a, m, n, zw, cr, t[0], ext);
  return c;
}

Circuit build_addmult_gfp(u64 a, u64 m, AdderFamily family) {
  check_modulus(m);
  if (a >= m) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "operand must be below the modulus");
  }
  const unsigned n = value_bits(m);
  Layout lay;
  auto cq = lay.add("c", 1);
  auto xs = lay.add("x", n);
  auto zw = lay.add("z", n);
  auto ov = lay.add("o", 1);
  zw.push_back(ov[0]);
  std::vector<u32> cr;
  if (family == AdderFamily::CarrySum) cr = lay.add("carry", n - 1);
  auto t = lay.add("t", 1);
  Circuit c = lay.take();

  if (family == AdderFamily::Phi) emit_qft(c, zw, false);
  u64 cur = a % m;
  for (unsigned i = 0; i < n; ++i) {
    const u32 ctls[2] = {cq[0], xs[i]};
    emit_mod_add(c, family, cur, m, n, zw, cr, t[0], ctls);
    cur = (cur * 2) % m;
  }
  if (family == AdderFamily::Phi) emit_qft(c, zw, true);
  return c;
}

Circuit build_cmult_gfp(u64 a, u64 m, AdderFamily family) {
  check_modulus(m);
  if (a >= m) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "operand must be below the modulus");
  }
  const auto ainv = mod_inv(a, m);
  if (!ainv) {
    throw BuildError(BuildError::Code::NotInvertible,
                     "operand has no inverse modulo the modulus");
  }
  Circuit c = build_addmult_gfp(a, m, family);
  const unsigned n = value_bits(m);
  const auto* x = c.find_register("x");
  const auto* z = c.find_register("z");
  emit_cswap_pairs(c, 0, iota_range(x->start, n), iota_range(z->start, n));
  append(c, inverse(build_addmult_gfp(*ainv, m, family)), 0);
  return c;
}

Circuit build_adder_gf2n(u64 a, const FieldSpec& f, int controls) {
  if (f.kind() != FieldKind::Binary) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "binary field spec required");
  }
  require_controls(controls, false);
  if (!f.element_valid(a)) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "element out of range");
  }
  const unsigned n = f.degree();
  Layout lay;
  auto ext = controls ? lay.add("ctl", static_cast<u32>(controls)) : std::vector<u32>{};
  auto z = lay.add("z", n);
  Circuit c = lay.take();
  for (unsigned j = 0; j < n; ++j) {
    if ((a >> j) & 1u) c.push(Gate::not_gate(z[j], ext));
  }
  return c;
}

Circuit build_addmult_gf2n(u64 a, const FieldSpec& f) {
  if (f.kind() != FieldKind::Binary) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "binary field spec required");
  }
  if (!f.element_valid(a)) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "element out of range");
  }
  const unsigned n = f.degree();
  Layout lay;
  auto cq = lay.add("c", 1);
  auto xs = lay.add("x", n);
  auto z = lay.add("z", n);
  Circuit c = lay.take();
  const auto table = shift_table(f, a);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      if ((table[i] >> j) & 1u) c.push(Gate::not_gate(z[j], {cq[0], xs[i]}));
    }
  }
  return c;
}

Circuit build_cmult_gf2n(u64 a, const FieldSpec& f) {
  if (f.kind() != FieldKind::Binary) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "binary field spec required");
  }
  if (!f.element_valid(a)) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "element out of range");
  }
  if (a == 0) {
    throw BuildError(BuildError::Code::NotInvertible, "zero has no inverse");
  }
  Circuit c = build_addmult_gf2n(a, f);
  const unsigned n = f.degree();
  const auto* x = c.find_register("x");
  const auto* z = c.find_register("z");
  emit_cswap_pairs(c, 0, iota_range(x->start, n), iota_range(z->start, n));
  append(c, inverse(build_addmult_gf2n(field_inv(f, a), f)), 0);
  return c;
}

GfpkRing ring_of(const FieldSpec& f) {
  if (f.kind() != FieldKind::Extension) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "extension field spec required");
  }
  return GfpkRing{f.p(), f.degree(), f.modulus_coeffs()};
}

namespace {

// Shared skeleton for the GF(p^k) adder body: runs one GF(p) modular adder per
// coefficient. windows[i] is the l+1 qubit accumulator of coefficient i.
void emit_gfpk_adder_body(Circuit& c, const GfpkRing& r, AdderFamily fam,
                          const std::vector<u64>& coeffs,
                          const std::vector<std::vector<u32>>& windows,
                          std::span<const u32> cr, u32 t, std::span<const u32> ext) {
  const unsigned l = r.l();
  for (unsigned i = 0; i < r.k; ++i) {
    if (fam == AdderFamily::Phi) emit_qft(c, windows[i], false);
    emit_mod_add(c, fam, coeffs[i], r.p, l, windows[i], cr, t, ext);
    if (fam == AdderFamily::Phi) emit_qft(c, windows[i], true);
  }
}

struct GfpkFrame {
  Circuit circuit;
  std::vector<u32> cq, xs;             // empty unless multiplication layout
  std::vector<std::vector<u32>> windows;
  std::vector<u32> z_value;            // value qubits in element bit order
  std::vector<u32> cr;
  u32 t = 0;
  std::vector<u32> ext;
};

// Builds the register layout shared by the GF(p^k) circuits. with_x adds the
// c/x pair used by the multiplication circuits; controls adds the external
// control register used by the plain adders.
GfpkFrame gfpk_frame(const GfpkRing& r, AdderFamily fam, bool with_x, int controls) {
  const unsigned l = r.l();
  const unsigned n = r.n();
  GfpkFrame fr;
  Layout lay;
  if (with_x) {
    fr.cq = lay.add("c", 1);
    fr.xs = lay.add("x", n);
  } else if (controls) {
    fr.ext = lay.add("ctl", static_cast<u32>(controls));
  }
  if (fam == AdderFamily::CarrySum) {
    for (unsigned i = 0; i < r.k; ++i) {
      auto zi = lay.add("z" + std::to_string(i), l);
      auto oi = lay.add("o" + std::to_string(i), 1);
      fr.z_value.insert(fr.z_value.end(), zi.begin(), zi.end());
      zi.push_back(oi[0]);
      fr.windows.push_back(std::move(zi));
    }
    fr.cr = lay.add("carry", l - 1);
  } else {
    auto z = lay.add("z", n);
    auto ov = lay.add("o", 1);
    fr.z_value = z;
    for (unsigned i = 0; i < r.k; ++i) {
      std::vector<u32> w(z.begin() + i * l, z.begin() + (i + 1) * l);
      w.push_back(ov[0]);
      fr.windows.push_back(std::move(w));
    }
  }
  fr.t = lay.add("t", 1)[0];
  fr.circuit = lay.take();
  return fr;
}

}  // namespace

Circuit build_adder_gfpk(u64 a, const GfpkRing& r, AdderFamily family, int controls) {
  check_ring(r);
  require_controls(controls, false);
  const auto coeffs = ring_coeffs(r, a);
  GfpkFrame fr = gfpk_frame(r, family, false, controls);
  emit_gfpk_adder_body(fr.circuit, r, family, coeffs, fr.windows, fr.cr, fr.t, fr.ext);
  return std::move(fr.circuit);
}

Circuit build_addmult_gfpk(u64 a, const GfpkRing& r, AdderFamily family) {
  check_ring(r);
  const auto table = ring_shift_table_gfpk(r.p, r.k, r.q_coeffs, a);
  GfpkFrame fr = gfpk_frame(r, family, true, 0);
  const unsigned n = r.n();
  for (unsigned q = 0; q < n; ++q) {
    const u32 ctls[2] = {fr.cq[0], fr.xs[q]};
    emit_gfpk_adder_body(fr.circuit, r, family, ring_coeffs(r, table[q]), fr.windows,
                         fr.cr, fr.t, ctls);
  }
  return std::move(fr.circuit);
}

Circuit build_cmult_gfpk(u64 a, const GfpkRing& r, AdderFamily family) {
  check_ring(r);
  ring_coeffs(r, a);
  const auto ainv = ring_inv_gfpk(r.p, r.k, r.q_coeffs, a);
  if (!ainv) {
    throw BuildError(BuildError::Code::NotInvertible,
                     "operand has no inverse in the coefficient ring");
  }
  Circuit c = build_addmult_gfpk(a, r, family);
  GfpkFrame fr = gfpk_frame(r, family, true, 0);
  const auto* x = c.find_register("x");
  emit_cswap_pairs(c, 0, iota_range(x->start, r.n()), fr.z_value);
  append(c, inverse(build_addmult_gfpk(*ainv, r, family)), 0);
  return c;
}

Circuit build_adder_gfpk(u64 a, const FieldSpec& f, AdderFamily family, int controls) {
  return build_adder_gfpk(a, ring_of(f), family, controls);
}

Circuit build_addmult_gfpk(u64 a, const FieldSpec& f, AdderFamily family) {
  return build_addmult_gfpk(a, ring_of(f), family);
}

Circuit build_cmult_gfpk(u64 a, const FieldSpec& f, AdderFamily family) {
  return build_cmult_gfpk(a, ring_of(f), family);
}

namespace {

bool is_z_window(std::string_view name) {
  if (name.empty() || name[0] != 'z') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](unsigned char ch) { return std::isdigit(ch); });
}

bool is_ancilla_register(std::string_view name) {
  if (name == "carry" || name == "t") return true;
  if (name.empty() || name[0] != 'o') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](unsigned char ch) { return std::isdigit(ch); });
}

// Qubits of a value group in ascending bit significance. Group "z" is the
// concatenation of all z windows in start order.
std::vector<u32> group_qubits(const Circuit& c, std::string_view group) {
  std::vector<const Register*> regs;
  for (const auto& r : c.registers) {
    if (group == "z" ? is_z_window(r.name) : r.name == group) regs.push_back(&r);
  }
  std::sort(regs.begin(), regs.end(),
            [](const Register* a, const Register* b) { return a->start < b->start; });
  std::vector<u32> qs;
  for (const auto* r : regs) {
    for (u32 i = 0; i < r->size; ++i) qs.push_back(r->start + i);
  }
  return qs;
}

}  // namespace

bool has_group(const Circuit& c, std::string_view group) {
  return !group_qubits(c, group).empty();
}

u64 read_group(const Circuit& c, u64 s, std::string_view group) {
  const auto qs = group_qubits(c, group);
  if (qs.empty()) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "no such register group");
  }
  u64 v = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) v |= ((s >> qs[i]) & 1u) << i;
  return v;
}

u64 write_group(const Circuit& c, u64 s, std::string_view group, u64 value) {
  const auto qs = group_qubits(c, group);
  if (qs.empty()) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "no such register group");
  }
  if (qs.size() < 64 && (value >> qs.size()) != 0) {
    throw BuildError(BuildError::Code::OperandOutOfRange, "value exceeds the register group");
  }
  for (std::size_t i = 0; i < qs.size(); ++i) {
    s &= ~(u64(1) << qs[i]);
    s |= ((value >> i) & 1u) << qs[i];
  }
  return s;
}

bool ancillas_clear(const Circuit& c, u64 s) {
  for (const auto& r : c.registers) {
    if (!is_ancilla_register(r.name)) continue;
    for (u32 i = 0; i < r.size; ++i) {
      if ((s >> (r.start + i)) & 1u) return false;
    }
  }
  return true;
}

}  // namespace qgf
