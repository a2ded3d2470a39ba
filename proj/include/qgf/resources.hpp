#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgf/builders.hpp"
#include "qgf/circuit.hpp"
#include "qgf/rational.hpp"

namespace qgf {

// One enumerator per closed-form cost entry; family/controls/size parameters
// ride alongside in CountQuery.
enum class CircuitKind {
  CarrySumAdder,
  PhiAdder,
  Qft,
  ModAdderGfp,
  AddMultGfp,
  CSwap,
  CMultGfp,
  AdderGf2n,
  AddMultGf2n,
  CMultGf2n,
  AdderGfpk,
  AddMultGfpk,
  CMultGfpk,
};

const char* circuit_kind_name(CircuitKind kind);
bool kind_is_extension(CircuitKind kind);   // parameterized by (k, l) instead of n
bool kind_has_family(CircuitKind kind);
int kind_max_controls(CircuitKind kind);    // 2, or 0 when the kind is uncontrollable

class ResourceError : public std::runtime_error {
 public:
  enum class Code { OutOfDomain, EmptySamples };

  ResourceError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct CountQuery {
  CircuitKind kind = CircuitKind::CarrySumAdder;
  AdderFamily family = AdderFamily::CarrySum;  // ignored unless kind_has_family
  int controls = 0;                            // adder kinds only
  unsigned n = 0;                              // value bits; window qubits for Qft
  unsigned k = 0, l = 0;                       // extension kinds only, n = k*l
};

// Closed-form cost of one circuit shape: exact width, per-gate-kind average
// counts over uniform operand and modulus bits, and the serial depth of the
// reference construction.
struct ResourceEstimate {
  std::int64_t width = 0;
  std::array<Rat, kGateKindCount> counts{};
  Rat depth;
};

ResourceEstimate formula(const CountQuery& q);

// ----- empirical comparison -----

struct BuildSample {
  std::int64_t width = 0;
  GateTally tally{};
  std::int64_t depth = 0;
};

BuildSample measure(const Circuit& c);

struct CompareEntry {
  std::string label;  // gate kind name or "depth"
  Rat expected;
  Rat mean;
  Rat abs_dev;        // mean - expected
  double rel_dev;     // |abs_dev| / expected; 0 when both sides are 0
  bool exact = false;
};

struct CompareReport {
  std::size_t samples = 0;
  std::int64_t width_expected = 0;
  bool width_exact = true;
  std::vector<CompareEntry> entries;  // nine gate kinds, then depth
};

CompareReport compare(const CountQuery& q, std::span<const BuildSample> samples);

// ----- rendering -----

// Cost summary tables: symbolic forms for the integer adders (table1) and the
// field circuits (table2); table2(p, k) instantiates the width column at
// l = ceil(lg p), n = k*l. table2 requires an odd prime p and k >= 1.
std::string table1();
std::string table2();
std::string table2(std::uint64_t p, unsigned k);

std::string csv_header();
std::string csv_row(CircuitKind kind, const std::string& family, int controls,
                    const ResourceEstimate& est);
std::string render_estimate(CircuitKind kind, const std::string& family, int controls,
                            const ResourceEstimate& est);
std::string render_compare(const CompareReport& report);

}  // namespace qgf
