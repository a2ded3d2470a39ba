#include "qgf/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qgf {

namespace {

constexpr std::array<const char*, kGateKindCount> kNames = {
    "N", "CN", "C2N", "C3N", "C4N", "P", "CP", "C2P", "H"};

[[noreturn]] void bad_gate(const std::string& what) {
  throw CircuitError(CircuitError::Code::BadGate, what);
}

void check_controls(const Gate& g) {
  auto cs = g.controls();
  for (size_t i = 0; i < cs.size(); ++i) {
    if (cs[i] == g.target) bad_gate("control equals target");
    if (i > 0 && cs[i] == cs[i - 1]) bad_gate("duplicate control");
  }
}

}  // namespace

const char* gate_name(GateKind kind) { return kNames[static_cast<size_t>(kind)]; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (int i = 0; i < kGateKindCount; ++i)
    if (name == kNames[static_cast<size_t>(i)]) return static_cast<GateKind>(i);
  return std::nullopt;
}

bool is_not_family(GateKind kind) {
  return kind == GateKind::N || kind == GateKind::CN || kind == GateKind::C2N ||
         kind == GateKind::C3N || kind == GateKind::C4N;
}

bool is_phase_family(GateKind kind) {
  return kind == GateKind::P || kind == GateKind::CP || kind == GateKind::C2P;
}

int control_count(GateKind kind) {
  switch (kind) {
    case GateKind::N: case GateKind::P: case GateKind::H: return 0;
    case GateKind::CN: case GateKind::CP: return 1;
    case GateKind::C2N: case GateKind::C2P: return 2;
    case GateKind::C3N: return 3;
    case GateKind::C4N: return 4;
  }
  return 0;
}

GateKind not_with_controls(int controls) {
  switch (controls) {
    case 0: return GateKind::N;
    case 1: return GateKind::CN;
    case 2: return GateKind::C2N;
    case 3: return GateKind::C3N;
    case 4: return GateKind::C4N;
    default:
      throw CircuitError(CircuitError::Code::ArityOverflow,
                         "NOT gates support at most 4 controls, got " + std::to_string(controls));
  }
}

GateKind phase_with_controls(int controls) {
  switch (controls) {
    case 0: return GateKind::P;
    case 1: return GateKind::CP;
    case 2: return GateKind::C2P;
    default:
      throw CircuitError(CircuitError::Code::ArityOverflow,
                         "phase gates support at most 2 controls, got " + std::to_string(controls));
  }
}

Phase make_phase(std::int64_t num, std::int64_t den) {
  if (den <= 0) bad_gate("phase denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  std::int64_t g = std::gcd(num, den);
  return Phase{num / g, den / g};
}

Gate Gate::not_gate(std::uint32_t target, std::span<const std::uint32_t> controls) {
  Gate g;
  g.kind = not_with_controls(static_cast<int>(controls.size()));
  g.target = target;
  g.control_n = static_cast<std::uint8_t>(controls.size());
  std::copy(controls.begin(), controls.end(), g.control_idx.begin());
  std::sort(g.control_idx.begin(), g.control_idx.begin() + g.control_n);
  check_controls(g);
  return g;
}

Gate Gate::phase_gate(std::uint32_t target, Phase phase, std::span<const std::uint32_t> controls) {
  if (phase.num == 0) bad_gate("phase gates must carry a nonzero phase");
  Gate g;
  g.kind = phase_with_controls(static_cast<int>(controls.size()));
  g.target = target;
  g.control_n = static_cast<std::uint8_t>(controls.size());
  std::copy(controls.begin(), controls.end(), g.control_idx.begin());
  std::sort(g.control_idx.begin(), g.control_idx.begin() + g.control_n);
  g.phase = phase;
  check_controls(g);
  return g;
}

Gate Gate::hadamard(std::uint32_t target) {
  Gate g;
  g.kind = GateKind::H;
  g.target = target;
  return g;
}

void Circuit::push(const Gate& g) {
  if (g.target >= qubits) bad_gate("gate target out of range");
  for (std::uint32_t c : g.controls())
    if (c >= qubits) bad_gate("gate control out of range");
  gates.push_back(g);
}

const Register* Circuit::find_register(std::string_view name) const {
  for (const Register& r : registers)
    if (r.name == name) return &r;
  return nullptr;
}

Circuit make_circuit(std::uint32_t qubits, const std::string& reg_name) {
  Circuit c;
  c.qubits = qubits;
  if (qubits > 0) c.registers.push_back({reg_name, 0, qubits});
  return c;
}

GateTally tally(const Circuit& c) {
  GateTally t{};
  for (const Gate& g : c.gates) ++t[static_cast<size_t>(g.kind)];
  return t;
}

std::int64_t total_gates(const GateTally& t) {
  return std::accumulate(t.begin(), t.end(), std::int64_t{0});
}

int depth(const Circuit& c) {
  std::vector<int> layer(c.qubits, 0);
  int max_layer = 0;
  for (const Gate& g : c.gates) {
    int l = layer[g.target];
    for (std::uint32_t q : g.controls()) l = std::max(l, layer[q]);
    ++l;
    layer[g.target] = l;
    for (std::uint32_t q : g.controls()) layer[q] = l;
    max_layer = std::max(max_layer, l);
  }
  return max_layer;
}

Circuit inverse(const Circuit& c) {
  Circuit inv;
  inv.qubits = c.qubits;
  inv.registers = c.registers;
  inv.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    if (is_phase_family(g.kind)) {
      Phase flipped = make_phase(g.phase.den - g.phase.num, g.phase.den);
      if (flipped.num == 0) continue;
      g.phase = flipped;
    }
    inv.gates.push_back(g);
  }
  return inv;
}

Circuit with_controls(const Circuit& c, std::span<const std::uint32_t> new_controls) {
  std::vector<std::uint32_t> sorted(new_controls.begin(), new_controls.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != c.qubits + i)
      bad_gate("new controls must be the next fresh qubit indices");

  Circuit out;
  out.qubits = c.qubits + static_cast<std::uint32_t>(sorted.size());
  out.registers = c.registers;
  if (!sorted.empty()) {
    std::string name = "ctl";
    while (out.find_register(name)) name += "_";
    out.registers.push_back({name, c.qubits, static_cast<std::uint32_t>(sorted.size())});
  }
  out.gates.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    std::vector<std::uint32_t> cs(g.controls().begin(), g.controls().end());
    cs.insert(cs.end(), sorted.begin(), sorted.end());
    Gate widened;
    if (is_not_family(g.kind)) {
      widened = Gate::not_gate(g.target, cs);
    } else if (is_phase_family(g.kind)) {
      widened = Gate::phase_gate(g.target, g.phase, cs);
    } else {
      throw CircuitError(CircuitError::Code::ArityOverflow,
                         "H has no controlled form in this gate set");
    }
    out.push(widened);
  }
  return out;
}

void append(Circuit& dst, const Circuit& src, std::uint32_t offset) {
  if (offset + src.qubits > dst.qubits) bad_gate("appended circuit exceeds target width");
  for (const Gate& g : src.gates) {
    Gate shifted = g;
    shifted.target += offset;
    for (std::uint8_t i = 0; i < shifted.control_n; ++i) shifted.control_idx[i] += offset;
    dst.push(shifted);
  }
}

std::string serialize(const Circuit& c) {
  std::ostringstream out;
  out << "QUBITS " << c.qubits << "\n";
  for (const Register& r : c.registers)
    out << "REG " << r.name << " " << r.start << " " << r.size << "\n";
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::H) {
      out << "H " << g.target << "\n";
    } else if (is_not_family(g.kind)) {
      out << gate_name(g.kind) << " " << g.target << " ;";
      for (std::uint32_t q : g.controls()) out << " " << q;
      out << "\n";
    } else {
      out << gate_name(g.kind) << " " << g.phase.num << "/" << g.phase.den << " ;";
      for (std::uint32_t q : g.controls()) out << " " << q;
      out << " -> " << g.target << "\n";
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void syntax_error(int line, const std::string& what) {
  throw CircuitError(CircuitError::Code::Syntax,
                     "line " + std::to_string(line) + ": " + what, line);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::uint32_t parse_index(const std::string& tok, int line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    syntax_error(line, "expected a qubit index, got '" + tok + "'");
  return static_cast<std::uint32_t>(std::stoul(tok));
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool saw_qubits = false;
  bool saw_gate = false;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto pos = s.find('#'); pos != std::string::npos) s.resize(pos);
    auto toks = split_ws(s);
    if (toks.empty()) continue;

    if (toks[0] == "QUBITS") {
      if (saw_qubits) syntax_error(line, "duplicate QUBITS line");
      if (toks.size() != 2) syntax_error(line, "QUBITS takes one count");
      c.qubits = parse_index(toks[1], line);
      saw_qubits = true;
      continue;
    }
    if (!saw_qubits) syntax_error(line, "QUBITS must come first");

    if (toks[0] == "REG") {
      if (saw_gate) syntax_error(line, "REG lines must precede gates");
      if (toks.size() != 4) syntax_error(line, "REG takes name, start, length");
      Register r{toks[1], parse_index(toks[2], line), parse_index(toks[3], line)};
      if (r.start + r.size > c.qubits) syntax_error(line, "register window out of range");
      c.registers.push_back(r);
      continue;
    }

    auto kind = gate_from_name(toks[0]);
    if (!kind) syntax_error(line, "unknown gate '" + toks[0] + "'");
    saw_gate = true;

    try {
      if (*kind == GateKind::H) {
        if (toks.size() != 2) syntax_error(line, "H takes one target");
        c.push(Gate::hadamard(parse_index(toks[1], line)));
      } else if (is_not_family(*kind)) {
        if (toks.size() < 3 || toks[2] != ";")
          syntax_error(line, "expected '<KIND> <target> ; <controls>'");
        std::uint32_t target = parse_index(toks[1], line);
        std::vector<std::uint32_t> controls;
        for (size_t i = 3; i < toks.size(); ++i) controls.push_back(parse_index(toks[i], line));
        if (static_cast<int>(controls.size()) != control_count(*kind))
          syntax_error(line, "control count does not match gate kind");
        c.push(Gate::not_gate(target, controls));
      } else {
        if (toks.size() < 3 || toks[2] != ";")
          syntax_error(line, "expected '<KIND> <num>/<den> ; <controls> -> <target>'");
        auto slash = toks[1].find('/');
        if (slash == std::string::npos) syntax_error(line, "phase must be <num>/<den>");
        std::int64_t num = 0, den = 0;
        try {
          num = std::stoll(toks[1].substr(0, slash));
          den = std::stoll(toks[1].substr(slash + 1));
        } catch (const std::exception&) {
          syntax_error(line, "bad phase '" + toks[1] + "'");
        }
        if (den <= 0) syntax_error(line, "phase denominator must be positive");
        auto arrow = std::find(toks.begin() + 3, toks.end(), "->");
        if (arrow == toks.end() || arrow + 1 == toks.end() || arrow + 2 != toks.end())
          syntax_error(line, "expected '-> <target>'");
        std::vector<std::uint32_t> controls;
        for (auto it = toks.begin() + 3; it != arrow; ++it) controls.push_back(parse_index(*it, line));
        if (static_cast<int>(controls.size()) != control_count(*kind))
          syntax_error(line, "control count does not match gate kind");
        Phase ph = make_phase(num, den);
        if (ph.num == 0) syntax_error(line, "phase gates must carry a nonzero phase");
        c.push(Gate::phase_gate(parse_index(*(arrow + 1), line), ph, controls));
      }
    } catch (const CircuitError& e) {
      if (e.code() == CircuitError::Code::Syntax) throw;
      syntax_error(line, e.what());
    }
  }

  if (!saw_qubits) syntax_error(line == 0 ? 1 : line, "missing QUBITS header");
  if (c.registers.empty() && c.qubits > 0) c.registers.push_back({"q", 0, c.qubits});

  // Windows must tile [0, qubits) exactly.
  std::vector<Register> sorted = c.registers;
  std::sort(sorted.begin(), sorted.end(),
            [](const Register& a, const Register& b) { return a.start < b.start; });
  std::uint32_t next = 0;
  for (const Register& r : sorted) {
    if (r.start != next) syntax_error(line, "register windows must tile the qubit range");
    next += r.size;
  }
  if (next != c.qubits) syntax_error(line, "register windows must cover every qubit");

  return c;
}

}  // namespace qgf
