#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgf {

// The elementary gate set: NOT with 0..4 controls, phase shift with 0..2
// controls, Hadamard. There is no decomposition pass below this level.
enum class GateKind : std::uint8_t { N, CN, C2N, C3N, C4N, P, CP, C2P, H };

inline constexpr int kGateKindCount = 9;

const char* gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

bool is_not_family(GateKind kind);
bool is_phase_family(GateKind kind);
int control_count(GateKind kind);
GateKind not_with_controls(int controls);    // throws on controls > 4
GateKind phase_with_controls(int controls);  // throws on controls > 2

class CircuitError : public std::runtime_error {
 public:
  enum class Code { BadGate, ArityOverflow, Syntax };

  CircuitError(Code code, const std::string& what, int line = 0)
      : std::runtime_error(what), code_(code), line_(line) {}
  Code code() const { return code_; }
  int line() const { return line_; }  // 1-based; 0 when not a parse error

 private:
  Code code_;
  int line_;
};

// Rotation angle in turns (fractions of a full 2*pi), reduced, in [0, 1).
// Stored gates never carry num == 0; the zero value only appears transiently.
struct Phase {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const Phase&, const Phase&) = default;
};

// Reduces num/den into [0, 1); den must be positive.
Phase make_phase(std::int64_t num, std::int64_t den);

struct Gate {
  GateKind kind = GateKind::N;
  std::uint32_t target = 0;
  std::array<std::uint32_t, 4> control_idx{};
  std::uint8_t control_n = 0;
  Phase phase;

  std::span<const std::uint32_t> controls() const { return {control_idx.data(), control_n}; }

  // Factories sort controls and pick the kind from the arity.
  static Gate not_gate(std::uint32_t target, std::span<const std::uint32_t> controls = {});
  static Gate phase_gate(std::uint32_t target, Phase phase,
                         std::span<const std::uint32_t> controls = {});
  static Gate hadamard(std::uint32_t target);

  static Gate not_gate(std::uint32_t target, std::initializer_list<std::uint32_t> cs) {
    return not_gate(target, std::span<const std::uint32_t>(cs.begin(), cs.size()));
  }
  static Gate phase_gate(std::uint32_t target, Phase phase,
                         std::initializer_list<std::uint32_t> cs) {
    return phase_gate(target, phase, std::span<const std::uint32_t>(cs.begin(), cs.size()));
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Register {
  std::string name;
  std::uint32_t start = 0;
  std::uint32_t size = 0;

  friend bool operator==(const Register&, const Register&) = default;
};

struct Circuit {
  std::uint32_t qubits = 0;
  std::vector<Register> registers;
  std::vector<Gate> gates;

  // Appends after checking the gate against qubit bounds.
  void push(const Gate& g);

  const Register* find_register(std::string_view name) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Circuit with the given width and a single register spanning it.
Circuit make_circuit(std::uint32_t qubits, const std::string& reg_name = "q");

using GateTally = std::array<std::int64_t, kGateKindCount>;

GateTally tally(const Circuit& c);
std::int64_t total_gates(const GateTally& t);

// ASAP layering: a gate lands on layer 1 + max(layer of any earlier gate
// sharing one of its qubits, controls included); depth is the last layer.
int depth(const Circuit& c);

// Gates reversed; NOT family and H are self-inverse, phases map t -> 1 - t.
Circuit inverse(const Circuit& c);

// Adds fresh control qubits (exactly the next indices after c.qubits) to every
// gate. H cannot be controlled in this gate set; N saturates at 4 controls and
// P at 2, both reported as ArityOverflow.
Circuit with_controls(const Circuit& c, std::span<const std::uint32_t> new_controls);

// Copies src's gates into dst with qubit indices shifted by offset.
void append(Circuit& dst, const Circuit& src, std::uint32_t offset = 0);

// Text format, one gate per line:
//   QUBITS <count>
//   REG <name> <start> <len>
//   N-family:  <KIND> <target> ; <controls>
//   P-family:  <KIND> <num>/<den> ; <controls> -> <target>
//   H:         H <target>
// Lines starting with '#' are comments.
std::string serialize(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace qgf
