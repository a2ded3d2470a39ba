#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgf/builders.hpp"
#include "qgf/circuit.hpp"
#include "qgf/field.hpp"
#include "qgf/resources.hpp"
#include "qgf/sim.hpp"

namespace {

using namespace qgf;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;
constexpr int kNonBasis = 3;
constexpr int kCap = 4;

constexpr u64 kDefaultSeed = 12345;

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  return kUsage;
}

// ----- shared plumbing -----

bool not_family_only(const Circuit& c) {
  return std::all_of(c.gates.begin(), c.gates.end(),
                     [](const Gate& g) { return is_not_family(g.kind); });
}

// Basis-in, basis-out evaluation; picks the permutation path when possible and
// reports a nullopt when a statevector run ends off the computational basis.
std::optional<u64> eval_circuit(const Circuit& c, u64 in) {
  if (not_family_only(c)) return run_permutation(c, in);
  return read_basis(run_statevector_basis(c, in));
}

// Same circuit layout with the window [wstart, wstart+wsize) taken through a
// Fourier / inverse-Fourier pair around the original gates. Used to exercise
// Fourier-basis adders on computational-basis inputs.
Circuit wrap_fourier(const Circuit& c, u32 wstart, unsigned wsize) {
  Circuit full;
  full.qubits = c.qubits;
  full.registers = c.registers;
  append(full, build_qft(wsize), wstart);
  append(full, c, 0);
  append(full, inverse(build_qft(wsize)), wstart);
  return full;
}

struct BuildOpts {
  std::string field;
  std::string kind;
  std::string family = "carry-sum";
  std::string out;
  unsigned n = 0;
  u64 a = 0;
  int controls = 0;
};

int run_build(const BuildOpts& o) {
  const auto fam = family_from_name(o.family);
  if (!fam) return fail_usage("unknown family: " + o.family);

  Circuit c;
  std::ostringstream meta;
  if (o.kind == "qft" || o.kind == "cswap" || o.kind == "int-adder") {
    if (o.n == 0) return fail_usage("--n is required for kind " + o.kind);
    if (o.kind == "qft") {
      c = build_qft(o.n);
    } else if (o.kind == "cswap") {
      c = build_cswap(o.n);
    } else if (*fam == AdderFamily::CarrySum) {
      c = build_carry_sum_adder(o.a, o.n, o.controls);
    } else {
      c = build_phi_adder(o.a, o.n + 1, o.controls);
    }
    meta << "# kind=" << o.kind << " n=" << o.n;
    if (o.kind == "int-adder") {
      meta << " a=" << o.a << " family=" << family_name(*fam) << " controls=" << o.controls;
    }
  } else if (o.kind == "adder" || o.kind == "addmult" || o.kind == "cmult") {
    if (o.field.empty()) return fail_usage("--field is required for kind " + o.kind);
    const FieldSpec f = FieldSpec::parse(o.field);
    switch (f.kind()) {
      case FieldKind::Prime:
        if (o.kind == "adder") c = build_mod_adder_gfp(o.a, f.p(), *fam, o.controls);
        else if (o.kind == "addmult") c = build_addmult_gfp(o.a, f.p(), *fam);
        else c = build_cmult_gfp(o.a, f.p(), *fam);
        break;
      case FieldKind::Binary:
        if (o.kind == "adder") c = build_adder_gf2n(o.a, f, o.controls);
        else if (o.kind == "addmult") c = build_addmult_gf2n(o.a, f);
        else c = build_cmult_gf2n(o.a, f);
        break;
      case FieldKind::Extension:
        if (o.kind == "adder") c = build_adder_gfpk(o.a, f, *fam, o.controls);
        else if (o.kind == "addmult") c = build_addmult_gfpk(o.a, f, *fam);
        else c = build_cmult_gfpk(o.a, f, *fam);
        break;
    }
    meta << "# kind=" << o.kind << " field=" << f.to_string() << " a=" << o.a;
    if (f.kind() != FieldKind::Binary) meta << " family=" << family_name(*fam);
    if (o.kind == "adder") meta << " controls=" << o.controls;
  } else {
    return fail_usage("unknown kind: " + o.kind);
  }
  meta << " width=" << c.qubits << '\n';

  const std::string text = meta.str() + serialize(c);
  if (o.out == "-") {
    std::cout << text;
  } else {
    std::ofstream fs(o.out);
    if (!fs) return fail_usage("cannot write " + o.out);
    fs << text;
  }
  return kOk;
}

// ----- simulate -----

struct SimOpts {
  std::string path;
  std::vector<std::string> sets;
};

std::map<std::string, std::string> parse_meta(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] != '#') break;
    std::istringstream ls(line.substr(first + 1));
    std::string tok;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos && eq > 0) {
        kv.emplace(tok.substr(0, eq), tok.substr(eq + 1));
      }
    }
  }
  return kv;
}

// Concatenated value of the registers not named in skip, in layout order.
u64 residual_value(const Circuit& c, u64 s, const std::vector<std::string>& skip) {
  u64 v = 0;
  unsigned pos = 0;
  for (const auto& r : c.registers) {
    if (std::find(skip.begin(), skip.end(), r.name) != skip.end()) continue;
    for (u32 i = 0; i < r.size && pos < 64; ++i) {
      v |= ((s >> (r.start + i)) & 1u) << pos++;
    }
  }
  return v;
}

std::vector<std::string> z_window_names(const Circuit& c) {
  std::vector<std::string> names;
  for (const auto& r : c.registers) {
    if (r.name == "z" ||
        (!r.name.empty() && r.name[0] == 'z' &&
         std::all_of(r.name.begin() + 1, r.name.end(),
                     [](unsigned char ch) { return std::isdigit(ch); }))) {
      names.push_back(r.name);
    }
  }
  return names;
}

int run_simulate(const SimOpts& o) {
  std::ifstream fs(o.path);
  if (!fs) return fail_usage("cannot read " + o.path);
  std::stringstream buf;
  buf << fs.rdbuf();
  const std::string text = buf.str();

  const auto meta = parse_meta(text);
  const Circuit c = parse_circuit(text);

  std::map<std::string, u64> assigns;
  for (const auto& item : o.sets) {
    std::istringstream is(item);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok.empty()) continue;
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        return fail_usage("bad assignment (want name=value): " + tok);
      }
      u64 value = 0;
      try {
        value = std::stoull(tok.substr(eq + 1));
      } catch (const std::exception&) {
        return fail_usage("bad assignment value: " + tok);
      }
      assigns[tok.substr(0, eq)] = value;
    }
  }

  for (const char* need : {"c", "x", "y", "ctl"}) {
    if (has_group(c, need) && !assigns.count(need)) {
      return fail_usage(std::string("missing required assignment for register ") + need);
    }
  }

  u64 s = 0;
  for (const auto& [name, value] : assigns) {
    if (!has_group(c, name)) return fail_usage("unknown register: " + name);
    s = write_group(c, s, name, value);
  }

  u64 out = 0;
  if (not_family_only(c)) {
    out = run_permutation(c, s);
  } else {
    const auto b = read_basis(run_statevector_basis(c, s));
    if (!b) {
      std::cerr << "error: output is not a computational basis state\n";
      return kNonBasis;
    }
    out = *b;
  }

  const std::string kind = meta.count("kind") ? meta.at("kind") : "";
  std::ostringstream os;
  if (kind == "cmult") {
    os << "x=" << read_group(c, out, "x") << " anc=" << residual_value(c, out, {"c", "x"});
  } else if (kind == "addmult") {
    auto skip = z_window_names(c);
    skip.push_back("c");
    skip.push_back("x");
    os << "z=" << read_group(c, out, "z") << " anc=" << residual_value(c, out, skip);
  } else if (kind == "adder" || kind == "int-adder") {
    auto skip = z_window_names(c);
    skip.push_back("ctl");
    os << "z=" << read_group(c, out, "z") << " anc=" << residual_value(c, out, skip);
  } else if (kind == "cswap") {
    os << "x=" << read_group(c, out, "x") << " y=" << read_group(c, out, "y")
       << " anc=" << residual_value(c, out, {"c", "x", "y"});
  } else {
    bool first = true;
    for (const auto& r : c.registers) {
      if (!first) os << ' ';
      os << r.name << '=' << read_group(c, out, r.name);
      first = false;
    }
  }
  std::cout << os.str() << '\n';
  return kOk;
}

// ----- verify -----

struct VerifyOpts {
  std::string field;
  std::string family = "carry-sum";
  bool exhaustive = false;
  unsigned samples = 0;
  u64 seed = kDefaultSeed;
  bool counts = false;
};

struct VerifyState {
  bool all_pass = true;
  void report(const std::string& name, bool pass, std::size_t cases) {
    std::cout << name << (pass ? ": PASS (" : ": FAIL (") << cases << " cases)\n";
    all_pass = all_pass && pass;
  }
};

// Budget guard for statevector sweeps: amplitudes times gates times cases.
bool sv_budget_ok(unsigned width, std::size_t gates, std::size_t cases) {
  const long double ops =
      std::pow(2.0L, static_cast<long double>(width)) * gates * static_cast<long double>(cases);
  return ops < 8.0e9L;
}

int run_verify(const VerifyOpts& o) {
  const FieldSpec f = FieldSpec::parse(o.field);
  const auto famOpt = family_from_name(o.family);
  if (!famOpt) return fail_usage("unknown family: " + o.family);
  const AdderFamily fam = *famOpt;
  const bool exhaustive = o.samples == 0;
  if (exhaustive && f.order() > 4096) {
    return fail_usage("field order above 4096; use --samples N");
  }

  std::mt19937_64 rng(o.seed);
  std::cout << "# seed=" << o.seed << '\n';
  std::cout << "# field=" << f.to_string() << " family=" << family_name(fam) << " mode="
            << (exhaustive ? std::string("exhaustive") : "samples:" + std::to_string(o.samples))
            << '\n';

  const auto elems = all_elements(f);
  const auto pick = [&](const std::vector<u64>& pool) {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  };
  std::vector<u64> nonzero(elems.begin() + 1, elems.end());

  const bool prime = f.kind() == FieldKind::Prime;
  const bool binary = f.kind() == FieldKind::Binary;
  const unsigned n = binary ? f.degree() : bit_width_at_least_one(f.p() - 1) * (prime ? 1 : f.degree());

  VerifyState st;

  const auto build_adder = [&](u64 a, int controls) {
    if (prime) return build_mod_adder_gfp(a, f.p(), fam, controls);
    if (binary) return build_adder_gf2n(a, f, controls);
    return build_adder_gfpk(a, f, fam, controls);
  };
  const auto build_am = [&](u64 a) {
    if (prime) return build_addmult_gfp(a, f.p(), fam);
    if (binary) return build_addmult_gf2n(a, f);
    return build_addmult_gfpk(a, f, fam);
  };
  const auto build_cm = [&](u64 a) {
    if (prime) return build_cmult_gfp(a, f.p(), fam);
    if (binary) return build_cmult_gf2n(a, f);
    return build_cmult_gfpk(a, f, fam);
  };
  // The standalone GF(p) Fourier-family adder works in the Fourier basis; wrap
  // its accumulator window so the sweep can use basis states.
  const auto adapt_adder = [&](Circuit c) {
    if (prime && fam == AdderFamily::Phi) {
      const auto* z = c.find_register("z");
      return wrap_fourier(c, z->start, z->size + 1);
    }
    return c;
  };

  // Fourier-family sweeps need the dense engine; reject an over-wide run up
  // front instead of part way through the sweep.
  if (!binary && fam == AdderFamily::Phi) {
    const auto need = build_cm(nonzero.front()).qubits;
    if (need > statevector_cap()) {
      return fail_usage("Fourier-family multiplier needs " + std::to_string(need) +
                        " qubits, above the statevector cap " +
                        std::to_string(statevector_cap()) + "; raise QGF_STATEVECTOR_CAP");
    }
  }

  // width reproduction against the closed forms
  {
    CountQuery q;
    q.family = fam;
    if (f.kind() == FieldKind::Extension) {
      q.k = f.degree();
      q.l = f.coeff_bits();
    } else {
      q.n = n;
    }
    const CircuitKind adder_kind = prime   ? CircuitKind::ModAdderGfp
                                   : binary ? CircuitKind::AdderGf2n
                                            : CircuitKind::AdderGfpk;
    const CircuitKind am_kind = prime   ? CircuitKind::AddMultGfp
                                : binary ? CircuitKind::AddMultGf2n
                                         : CircuitKind::AddMultGfpk;
    const CircuitKind cm_kind = prime   ? CircuitKind::CMultGfp
                                : binary ? CircuitKind::CMultGf2n
                                         : CircuitKind::CMultGfpk;
    bool ok = true;
    std::size_t circuits = 0;
    const u64 probe = nonzero.front();
    for (int controls : {0, 2}) {
      q.kind = adder_kind;
      q.controls = controls;
      ok = ok && build_adder(probe, controls).qubits == static_cast<u64>(formula(q).width);
      ++circuits;
    }
    q.controls = 0;
    q.kind = am_kind;
    ok = ok && build_am(probe).qubits == static_cast<u64>(formula(q).width);
    q.kind = cm_kind;
    ok = ok && build_cm(probe).qubits == static_cast<u64>(formula(q).width);
    circuits += 2;
    st.report("width", ok, circuits);
  }

  // adder semantics: z -> z + a, doubly controlled variant fires only on 3
  {
    bool ok = true;
    std::size_t cases = 0;
    const auto check = [&](u64 a, u64 z, unsigned ctl) {
      const Circuit c0 = adapt_adder(build_adder(a, ctl ? 2 : 0));
      u64 in = write_group(c0, 0, "z", z);
      if (ctl) in = write_group(c0, in, "ctl", ctl);
      const u64 expect_z = (!ctl || ctl == 3) ? field_add(f, z, a) : z;
      const auto got = eval_circuit(c0, in);
      ok = ok && got && *got == write_group(c0, in, "z", expect_z);
      ++cases;
    };
    if (exhaustive) {
      const Circuit probe = adapt_adder(build_adder(nonzero.front(), 2));
      if (fam == AdderFamily::Phi &&
          !sv_budget_ok(probe.qubits, probe.gates.size(), elems.size() * elems.size() * 5)) {
        return fail_usage("field too large for exhaustive Fourier-family sweep; use --samples N");
      }
      for (u64 a : elems) {
        for (u64 z : elems) {
          for (unsigned ctl : {0u, 1u, 2u, 3u}) check(a, z, ctl);
        }
        check(a, pick(elems), 0);
      }
    } else {
      for (unsigned i = 0; i < o.samples; ++i) {
        check(pick(elems), pick(elems), std::uniform_int_distribution<unsigned>(0, 3)(rng));
        check(pick(elems), pick(elems), 0);
      }
    }
    st.report("adder", ok, cases);
  }

  // addmult semantics: |c,x,z> -> |c,x,z + a*x>
  {
    bool ok = true;
    std::size_t cases = 0;
    const auto check = [&](const Circuit& c, u64 a, u64 x, u64 z, u64 ctl) {
      u64 in = write_group(c, 0, "c", ctl);
      in = write_group(c, in, "x", x);
      in = write_group(c, in, "z", z);
      const u64 expect_z = ctl ? field_add(f, z, field_mul(f, a, x)) : z;
      const auto got = eval_circuit(c, in);
      ok = ok && got && *got == write_group(c, in, "z", expect_z);
      ++cases;
    };
    if (exhaustive) {
      const Circuit probe = build_am(nonzero.front());
      if (fam == AdderFamily::Phi &&
          !sv_budget_ok(probe.qubits, probe.gates.size(), elems.size() * (elems.size() + 2))) {
        return fail_usage("field too large for exhaustive Fourier-family sweep; use --samples N");
      }
      for (u64 a : elems) {
        const Circuit c = build_am(a);
        for (u64 x : elems) check(c, a, x, 0, 1);
        check(c, a, pick(elems), pick(elems), 1);
        check(c, a, pick(elems), pick(elems), 0);
      }
    } else {
      for (unsigned i = 0; i < o.samples; ++i) {
        const u64 a = pick(elems);
        const Circuit c = build_am(a);
        check(c, a, pick(elems), pick(elems), i % 2);
      }
    }
    st.report("addmult", ok, cases);
  }

  // cmult semantics: |c,x,0> -> |c, a*x if c else x, 0>
  {
    bool ok = true;
    std::size_t cases = 0;
    const auto check = [&](const Circuit& c, u64 a, u64 x, u64 ctl) {
      u64 in = write_group(c, 0, "c", ctl);
      in = write_group(c, in, "x", x);
      const u64 expect_x = ctl ? field_mul(f, a, x) : x;
      const auto got = eval_circuit(c, in);
      ok = ok && got && *got == write_group(c, in, "x", expect_x);
      ++cases;
    };
    if (exhaustive) {
      const Circuit probe = build_cm(nonzero.front());
      if (fam == AdderFamily::Phi &&
          !sv_budget_ok(probe.qubits, probe.gates.size(), nonzero.size() * elems.size() * 2)) {
        return fail_usage("field too large for exhaustive Fourier-family sweep; use --samples N");
      }
      for (u64 a : nonzero) {
        const Circuit c = build_cm(a);
        for (u64 x : elems) {
          check(c, a, x, 1);
          check(c, a, x, 0);
        }
      }
    } else {
      for (unsigned i = 0; i < o.samples; ++i) {
        const u64 a = pick(nonzero);
        const Circuit c = build_cm(a);
        check(c, a, pick(elems), i % 2);
      }
    }
    st.report("cmult", ok, cases);
  }

  if (o.counts) {
    if (binary) {
      // exact averages over every operand: adder N mean n/2, addmult C2N mean n^2/2
      Rat nsum(0), csum(0);
      for (u64 a : elems) {
        nsum = nsum + Rat(tally(build_adder_gf2n(a, f, 0))[static_cast<int>(GateKind::N)]);
        csum = csum + Rat(tally(build_addmult_gf2n(a, f))[static_cast<int>(GateKind::C2N)]);
      }
      const Rat cnt(static_cast<std::int64_t>(elems.size()));
      const bool ok = nsum / cnt == Rat(n, 2) && csum / cnt == Rat(static_cast<std::int64_t>(n) * n, 2);
      st.report("counts", ok, elems.size() * 2);
    } else {
      // fixed modulus: report deviations, pass on exact width reproduction
      CountQuery q;
      q.family = fam;
      if (prime) {
        q.kind = CircuitKind::CMultGfp;
        q.n = n;
      } else {
        q.kind = CircuitKind::CMultGfpk;
        q.k = f.degree();
        q.l = f.coeff_bits();
      }
      std::vector<BuildSample> samples;
      for (u64 a : nonzero) samples.push_back(measure(build_cm(a)));
      const CompareReport rep = compare(q, samples);
      std::cout << render_compare(rep);
      st.report("counts", rep.width_exact, samples.size());
    }
  }

  return st.all_pass ? kOk : kVerifyFail;
}

// ----- estimate -----

struct EstOpts {
  int table = 0;
  u64 p = 0;
  unsigned k = 0;
  std::string field;
  std::string kind;
  std::string family = "carry-sum";
  std::string format = "text";
  unsigned n = 0;
  int controls = 0;
  unsigned empirical = 0;
  u64 seed = kDefaultSeed;
};

int run_estimate(const EstOpts& o) {
  if (o.table == 1) {
    std::cout << table1();
    return kOk;
  }
  if (o.table == 2) {
    if (o.p != 0 || o.k != 0) {
      if (o.p == 0 || o.k == 0) return fail_usage("--table 2 instantiation needs both --p and --k");
      std::cout << table2(o.p, o.k);
    } else {
      std::cout << table2();
    }
    return kOk;
  }
  if (o.table != 0) return fail_usage("--table must be 1 or 2");
  if (o.kind.empty()) return fail_usage("--kind or --table is required");
  if (o.format != "text" && o.format != "csv") return fail_usage("--format must be text or csv");

  const auto famOpt = family_from_name(o.family);
  if (!famOpt) return fail_usage("unknown family: " + o.family);
  const AdderFamily fam = *famOpt;

  CountQuery q;
  q.family = fam;
  q.controls = o.controls;
  std::string family_label = family_name(fam);
  std::optional<FieldSpec> field;

  if (o.kind == "int-adder") {
    q.kind = fam == AdderFamily::CarrySum ? CircuitKind::CarrySumAdder : CircuitKind::PhiAdder;
    q.n = o.n;
  } else if (o.kind == "qft") {
    q.kind = CircuitKind::Qft;
    q.n = o.n;
    family_label.clear();
  } else if (o.kind == "cswap") {
    q.kind = CircuitKind::CSwap;
    q.n = o.n;
    family_label.clear();
  } else if (o.kind == "adder" || o.kind == "addmult" || o.kind == "cmult") {
    if (o.field.empty()) return fail_usage("--field is required for kind " + o.kind);
    field = FieldSpec::parse(o.field);
    switch (field->kind()) {
      case FieldKind::Prime:
        q.n = bit_width_at_least_one(field->p() - 1);
        q.kind = o.kind == "adder"     ? CircuitKind::ModAdderGfp
                 : o.kind == "addmult" ? CircuitKind::AddMultGfp
                                       : CircuitKind::CMultGfp;
        break;
      case FieldKind::Binary:
        q.n = field->degree();
        q.kind = o.kind == "adder"     ? CircuitKind::AdderGf2n
                 : o.kind == "addmult" ? CircuitKind::AddMultGf2n
                                       : CircuitKind::CMultGf2n;
        family_label.clear();
        break;
      case FieldKind::Extension:
        q.k = field->degree();
        q.l = field->coeff_bits();
        q.kind = o.kind == "adder"     ? CircuitKind::AdderGfpk
                 : o.kind == "addmult" ? CircuitKind::AddMultGfpk
                                       : CircuitKind::CMultGfpk;
        break;
    }
    if (o.kind != "adder") q.controls = 0;
  } else {
    return fail_usage("unknown kind: " + o.kind);
  }

  const ResourceEstimate est = formula(q);
  if (o.empirical) std::cout << "# seed=" << o.seed << '\n';
  if (o.format == "csv") {
    std::cout << csv_header() << '\n'
              << csv_row(q.kind, family_label, q.controls, est) << '\n';
  } else {
    std::cout << render_estimate(q.kind, family_label, q.controls, est);
  }

  if (o.empirical == 0) return kOk;

  std::mt19937_64 rng(o.seed);
  std::vector<BuildSample> samples;
  const auto build_one = [&]() -> Circuit {
    switch (q.kind) {
      case CircuitKind::Qft:
        return build_qft(q.n);
      case CircuitKind::CSwap:
        return build_cswap(q.n);
      case CircuitKind::CarrySumAdder: {
        const u64 a = rng() & ((u64(1) << q.n) - 1);
        return build_carry_sum_adder(a, q.n, q.controls);
      }
      case CircuitKind::PhiAdder: {
        const u64 a = rng() & ((u64(1) << q.n) - 1);
        return build_phi_adder(a, q.n + 1, q.controls);
      }
      default: {
        const auto elems = all_elements(*field);
        u64 a = elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)];
        if (o.kind == "cmult") {
          while (a == 0) {
            a = elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)];
          }
        }
        switch (field->kind()) {
          case FieldKind::Prime:
            if (o.kind == "adder") return build_mod_adder_gfp(a, field->p(), fam, q.controls);
            if (o.kind == "addmult") return build_addmult_gfp(a, field->p(), fam);
            return build_cmult_gfp(a, field->p(), fam);
          case FieldKind::Binary:
            if (o.kind == "adder") return build_adder_gf2n(a, *field, q.controls);
            if (o.kind == "addmult") return build_addmult_gf2n(a, *field);
            return build_cmult_gf2n(a, *field);
          case FieldKind::Extension:
          default:
            if (o.kind == "adder") return build_adder_gfpk(a, *field, fam, q.controls);
            if (o.kind == "addmult") return build_addmult_gfpk(a, *field, fam);
            return build_cmult_gfpk(a, *field, fam);
        }
      }
    }
    throw std::logic_error("unreachable");
  };
  for (unsigned i = 0; i < o.empirical; ++i) samples.push_back(measure(build_one()));
  std::cout << render_compare(compare(q, samples));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circuit synthesis, simulation and cost accounting for finite-field arithmetic"};
  app.require_subcommand(1);

  BuildOpts b;
  SimOpts s;
  VerifyOpts v;
  EstOpts e;

  auto* cb = app.add_subcommand("build", "build a circuit and write its text form");
  cb->add_option("--field", b.field, "field spec: p:<p> | 2^<n>:Q=<bits> | p^k:<p>,<k>,Q=<coeffs>");
  cb->add_option("--kind", b.kind, "adder | addmult | cmult | int-adder | qft | cswap")->required();
  cb->add_option("--a", b.a, "classical operand (packed field element)");
  cb->add_option("--n", b.n, "size for int-adder / qft / cswap");
  cb->add_option("--family", b.family, "carry-sum | phi");
  cb->add_option("--controls", b.controls, "external adder controls (0, 1 or 2)");
  cb->add_option("-o,--out", b.out, "output path, - for stdout")->required();

  auto* cs = app.add_subcommand("simulate", "run a circuit file on a classical input");
  cs->add_option("circuit", s.path, "circuit file")->required();
  cs->add_option("--set", s.sets, "assignments, e.g. --set c=1,x=4")->take_all();

  auto* cv = app.add_subcommand("verify", "sweep a field's circuits against the classical oracles");
  cv->add_option("--field", v.field, "field spec")->required();
  cv->add_option("--family", v.family, "carry-sum | phi");
  auto* vx = cv->add_flag("--exhaustive", v.exhaustive, "sweep every case (default)");
  cv->add_option("--samples", v.samples, "random cases per check instead of full sweeps")
      ->excludes(vx);
  cv->add_option("--seed", v.seed, "RNG seed");
  cv->add_flag("--counts", v.counts, "also check/report gate-count statistics");

  auto* ce = app.add_subcommand("estimate", "print closed-form resource costs");
  ce->add_option("--table", e.table, "1: integer adders, 2: field arithmetic");
  ce->add_option("--p", e.p, "instantiate table 2 at this odd prime");
  ce->add_option("--k", e.k, "instantiate table 2 at this extension degree");
  ce->add_option("--field", e.field, "field spec");
  ce->add_option("--kind", e.kind, "adder | addmult | cmult | int-adder | qft | cswap");
  ce->add_option("--n", e.n, "size for int-adder / qft / cswap");
  ce->add_option("--family", e.family, "carry-sum | phi");
  ce->add_option("--controls", e.controls, "external adder controls");
  ce->add_option("--format", e.format, "text | csv");
  ce->add_option("--empirical", e.empirical, "also compare against N built circuits");
  ce->add_option("--seed", e.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cb->parsed()) return run_build(b);
    if (cs->parsed()) return run_simulate(s);
    if (cv->parsed()) return run_verify(v);
    if (ce->parsed()) return run_estimate(e);
    return fail_usage("no subcommand");
  } catch (const SimError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return ex.code() == SimError::Code::WidthCap ? kCap : kUsage;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kUsage;
  }
}
