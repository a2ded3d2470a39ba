#include "qgf/resources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qgf {
namespace {

using i64 = std::int64_t;

void out_of_domain(const std::string& what) {
  throw ResourceError(ResourceError::Code::OutOfDomain, what);
}

struct KindInfo {
  CircuitKind kind;
  const char* name;
  bool extension;
  bool has_family;
  int max_controls;
};

constexpr KindInfo kKinds[] = {
    {CircuitKind::CarrySumAdder, "carry-sum-adder", false, false, 2},
    {CircuitKind::PhiAdder, "phi-adder", false, false, 2},
    {CircuitKind::Qft, "qft", false, false, 0},
    {CircuitKind::ModAdderGfp, "mod-adder-gfp", false, true, 2},
    {CircuitKind::AddMultGfp, "addmult-gfp", false, true, 0},
    {CircuitKind::CSwap, "cswap", false, false, 0},
    {CircuitKind::CMultGfp, "cmult-gfp", false, true, 0},
    {CircuitKind::AdderGf2n, "adder-gf2n", false, false, 2},
    {CircuitKind::AddMultGf2n, "addmult-gf2n", false, false, 0},
    {CircuitKind::CMultGf2n, "cmult-gf2n", false, false, 0},
    {CircuitKind::AdderGfpk, "adder-gfpk", true, true, 2},
    {CircuitKind::AddMultGfpk, "addmult-gfpk", true, true, 0},
    {CircuitKind::CMultGfpk, "cmult-gfpk", true, true, 0},
};

const KindInfo& info(CircuitKind kind) {
  for (const auto& ki : kKinds) {
    if (ki.kind == kind) return ki;
  }
  out_of_domain("unknown circuit kind");
  throw std::logic_error("unreachable");
}

}  // namespace

const char* circuit_kind_name(CircuitKind kind) { return info(kind).name; }
bool kind_is_extension(CircuitKind kind) { return info(kind).extension; }
bool kind_has_family(CircuitKind kind) { return info(kind).has_family; }
int kind_max_controls(CircuitKind kind) { return info(kind).max_controls; }

ResourceEstimate formula(const CountQuery& q) {
  using K = CircuitKind;
  const KindInfo& ki = info(q.kind);

  if (q.controls < 0 || q.controls > ki.max_controls) out_of_domain("controls out of range");
  const bool single_ok = q.kind == K::CarrySumAdder || q.kind == K::PhiAdder;
  if (q.controls == 1 && !single_ok) out_of_domain("controls must be 0 or 2");

  i64 n = 0, k = 0, l = 0;
  if (ki.extension) {
    if (q.k < 1) out_of_domain("extension degree must be at least 1");
    if (q.l < 2) out_of_domain("coefficient width must be at least 2");
    k = q.k;
    l = q.l;
    n = k * l;
  } else {
    const unsigned min_n = (q.kind == K::Qft || q.kind == K::CSwap || q.kind == K::PhiAdder)
                               ? 1u
                               : 2u;
    if (q.n < min_n) out_of_domain("size parameter too small");
    n = q.n;
  }

  const bool phi = ki.has_family && q.family == AdderFamily::Phi;
  const int e = q.controls;

  ResourceEstimate r;
  auto& C = r.counts;
  auto at = [&C](GateKind gk) -> Rat& { return C[static_cast<std::size_t>(gk)]; };
  const Rat half(1, 2);

  switch (q.kind) {
    case K::CarrySumAdder:
      r.width = 2 * n + e;
      r.depth = Rat(11, 2) * n - Rat(13, 2);
      if (e == 0) {
        at(GateKind::C2N) = 2 * n - 3;
        at(GateKind::CN) = 2 * n - Rat(3, 2);
        at(GateKind::N) = Rat(3, 2) * n - 2;
      } else if (e == 1) {
        at(GateKind::C3N) = 1;
        at(GateKind::C2N) = 3 * n - Rat(9, 2);
        at(GateKind::CN) = Rat(3, 2) * n - 1;
        at(GateKind::N) = n - 2;
      } else {
        at(GateKind::C4N) = 1;
        at(GateKind::C3N) = n - half;
        at(GateKind::C2N) = Rat(5, 2) * n - 4;
        at(GateKind::CN) = n - 1;
        at(GateKind::N) = n - 2;
      }
      break;

    case K::PhiAdder:
      r.width = n + 1 + e;
      r.depth = e == 0 ? Rat(1) : Rat(n);
      at(phase_with_controls(e)) = n;
      break;

    case K::Qft:
      r.width = n;
      at(GateKind::CP) = Rat(n * n - n, 2);
      at(GateKind::H) = n;
      r.depth = 2 * n - 1;
      break;

    case K::ModAdderGfp:
      if (!phi) {
        r.width = 2 * n + 1 + e;
        r.depth = Rat(55, 2) * n - Rat(57, 2);
        if (e == 0) {
          at(GateKind::C3N) = 1;
          at(GateKind::C2N) = 11 * n - Rat(33, 2);
          at(GateKind::CN) = Rat(19, 2) * n - 5;
          at(GateKind::N) = 7 * n - 8;
        } else {
          at(GateKind::C4N) = 3;
          at(GateKind::C3N) = 3 * n - half;
          at(GateKind::C2N) = Rat(25, 2) * n - Rat(39, 2);
          at(GateKind::CN) = Rat(13, 2) * n - Rat(7, 2);
          at(GateKind::N) = Rat(11, 2) * n - 8;
        }
      } else {
        r.width = n + 2 + e;
        at(GateKind::CP) = 2 * n * n + 3 * n;
        at(GateKind::CN) = 2;
        at(GateKind::N) = 2;
        at(GateKind::H) = 4 * n + 4;
        if (e == 0) {
          at(GateKind::P) = 4 * n;
          r.depth = 9 * n + 12;
        } else {
          at(GateKind::C2P) = 3 * n;
          at(GateKind::P) = n;
          r.depth = 12 * n + 9;
        }
      }
      break;

    case K::AddMultGfp:
      if (!phi) {
        r.width = 3 * n + 2;
        at(GateKind::C4N) = 3 * n;
        at(GateKind::C3N) = 3 * n * n - half * n;
        at(GateKind::C2N) = Rat(25, 2) * n * n - Rat(39, 2) * n;
        at(GateKind::CN) = Rat(13, 2) * n * n - Rat(7, 2) * n;
        at(GateKind::N) = Rat(11, 2) * n * n - 8 * n;
        r.depth = Rat(55, 2) * n * n - Rat(57, 2) * n;
      } else {
        r.width = 2 * n + 3;
        at(GateKind::C2P) = 3 * n * n;
        at(GateKind::CP) = 2 * n * n * n + 4 * n * n + n;
        at(GateKind::P) = n * n;
        at(GateKind::CN) = 2 * n;
        at(GateKind::N) = 2 * n;
        at(GateKind::H) = 4 * n * n + 6 * n + 2;
        r.depth = 12 * n * n + 13 * n + 2;
      }
      break;

    case K::CSwap:
      r.width = 2 * n + 1;
      at(GateKind::C2N) = n;
      at(GateKind::CN) = 2 * n;
      r.depth = n + 2;
      break;

    case K::CMultGfp:
      if (!phi) {
        r.width = 3 * n + 2;
        at(GateKind::C4N) = 6 * n;
        at(GateKind::C3N) = 6 * n * n - n;
        at(GateKind::C2N) = 25 * n * n - 38 * n;
        at(GateKind::CN) = 13 * n * n - 5 * n;
        at(GateKind::N) = 11 * n * n - 16 * n;
        r.depth = 55 * n * n - 56 * n + 2;
      } else {
        r.width = 2 * n + 3;
        at(GateKind::C2P) = 6 * n * n;
        at(GateKind::CP) = 4 * n * n * n + 8 * n * n + 2 * n;
        at(GateKind::P) = 2 * n * n;
        at(GateKind::C2N) = n;
        at(GateKind::CN) = 6 * n;
        at(GateKind::N) = 4 * n;
        at(GateKind::H) = 8 * n * n + 12 * n + 4;
        r.depth = 24 * n * n + 27 * n + 6;
      }
      break;

    case K::AdderGf2n:
      r.width = n + e;
      if (e == 0) {
        at(GateKind::N) = half * n;
        r.depth = 1;
      } else {
        at(GateKind::C2N) = half * n;
        r.depth = half * n;
      }
      break;

    case K::AddMultGf2n:
      r.width = 2 * n + 1;
      at(GateKind::C2N) = half * n * n;
      r.depth = half * n * n;
      break;

    case K::CMultGf2n:
      r.width = 2 * n + 1;
      at(GateKind::C2N) = n * n + n;
      at(GateKind::CN) = 2 * n;
      r.depth = n * n + n + 2;
      break;

    case K::AdderGfpk:
      if (!phi) {
        r.width = n + k + l + e;
        r.depth = Rat(55, 2) * n - Rat(57, 2) * k;
        if (e == 0) {
          at(GateKind::C3N) = k;
          at(GateKind::C2N) = 11 * n - Rat(33, 2) * k;
          at(GateKind::CN) = Rat(19, 2) * n - 5 * k;
          at(GateKind::N) = 7 * n - 8 * k;
        } else {
          at(GateKind::C4N) = 3 * k;
          at(GateKind::C3N) = 3 * n - half * k;
          at(GateKind::C2N) = Rat(25, 2) * n - Rat(39, 2) * k;
          at(GateKind::CN) = Rat(13, 2) * n - Rat(7, 2) * k;
          at(GateKind::N) = Rat(11, 2) * n - 8 * k;
        }
      } else {
        r.width = n + 2 + e;
        at(GateKind::CP) = 3 * n * l + 4 * n;
        at(GateKind::CN) = 2 * k;
        at(GateKind::N) = 2 * k;
        at(GateKind::H) = 6 * n + 6 * k;
        if (e == 0) {
          at(GateKind::P) = 4 * n;
          r.depth = 13 * n + 14 * k;
        } else {
          at(GateKind::C2P) = 3 * n;
          at(GateKind::P) = n;
          r.depth = 16 * n + 11 * k;
        }
      }
      break;

    case K::AddMultGfpk:
      if (!phi) {
        r.width = 2 * n + k + l + 1;
        at(GateKind::C4N) = 3 * n * k;
        at(GateKind::C3N) = 3 * n * n - half * n * k;
        at(GateKind::C2N) = Rat(25, 2) * n * n - Rat(39, 2) * n * k;
        at(GateKind::CN) = Rat(13, 2) * n * n - Rat(7, 2) * n * k;
        at(GateKind::N) = Rat(11, 2) * n * n - 8 * n * k;
        r.depth = Rat(55, 2) * n * n - Rat(57, 2) * n * k;
      } else {
        r.width = 2 * n + 3;
        at(GateKind::C2P) = 3 * n * n;
        at(GateKind::CP) = 3 * n * n * l + 4 * n * n;
        at(GateKind::P) = n * n;
        at(GateKind::CN) = 2 * n * k;
        at(GateKind::N) = 2 * n * k;
        at(GateKind::H) = 6 * n * n + 6 * n * k;
        r.depth = 16 * n * n + 11 * n * k;
      }
      break;

    case K::CMultGfpk:
      if (!phi) {
        r.width = 2 * n + k + l + 1;
        at(GateKind::C4N) = 6 * n * k;
        at(GateKind::C3N) = 6 * n * n - n * k;
        at(GateKind::C2N) = 25 * n * n - 39 * n * k + n;
        at(GateKind::CN) = 13 * n * n - 7 * n * k + 2 * n;
        at(GateKind::N) = 11 * n * n - 16 * n * k;
        r.depth = 55 * n * n - 57 * n * k + n + 2;
      } else {
        r.width = 2 * n + 3;
        at(GateKind::C2P) = 6 * n * n;
        at(GateKind::CP) = 6 * n * n * l + 8 * n * n;
        at(GateKind::P) = 2 * n * n;
        at(GateKind::C2N) = n;
        at(GateKind::CN) = 4 * n * k + 2 * n;
        at(GateKind::N) = 4 * n * k;
        at(GateKind::H) = 12 * n * n + 12 * n * k;
        r.depth = 32 * n * n + 22 * n * k + n + 2;
      }
      break;
  }
  return r;
}

BuildSample measure(const Circuit& c) {
  return BuildSample{c.qubits, tally(c), depth(c)};
}

CompareReport compare(const CountQuery& q, std::span<const BuildSample> samples) {
  if (samples.empty()) {
    throw ResourceError(ResourceError::Code::EmptySamples, "compare needs at least one sample");
  }
  const ResourceEstimate est = formula(q);
  CompareReport rep;
  rep.samples = samples.size();
  rep.width_expected = est.width;
  for (const auto& s : samples) {
    if (s.width != est.width) rep.width_exact = false;
  }

  auto add_entry = [&](const std::string& label, Rat expected, Rat mean) {
    CompareEntry e;
    e.label = label;
    e.expected = expected;
    e.mean = mean;
    e.abs_dev = mean - expected;
    e.exact = e.abs_dev.is_zero();
    if (expected.is_zero()) {
      e.rel_dev = mean.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      e.rel_dev = std::abs(e.abs_dev.to_double() / expected.to_double());
    }
    rep.entries.push_back(std::move(e));
  };

  const auto count = static_cast<std::int64_t>(samples.size());
  for (std::size_t gi = 0; gi < kGateKindCount; ++gi) {
    std::int64_t sum = 0;
    for (const auto& s : samples) sum += s.tally[gi];
    add_entry(gate_name(static_cast<GateKind>(gi)), est.counts[gi], Rat(sum, count));
  }
  std::int64_t dsum = 0;
  for (const auto& s : samples) dsum += s.depth;
  add_entry("depth", est.depth, Rat(dsum, count));
  return rep;
}

namespace {

// Left-aligned plain-text grid with two-space gutters.
std::string render_grid(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (row.size() > widths.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(widths[i] - row[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

const char* kTable2Circuits[3] = {"adder", "doubly controlled adder",
                                  "controlled multiplication"};
const char* kTable2Widths[3][5] = {
    {"2l+1", "l+2", "n", "kl+k+l", "kl+2"},
    {"2l+3", "l+4", "n+2", "kl+k+l+2", "kl+4"},
    {"3l+2", "2l+3", "2n+1", "2kl+k+l+1", "2kl+3"},
};
const char* kTable2Sizes[3][5] = {
    {"O(l)", "O(l^2)", "O(n)", "O(kl)", "O(kl^2)"},
    {"O(l)", "O(l^2)", "O(n)", "O(kl)", "O(kl^2)"},
    {"O(l^2)", "O(l^3)", "O(n^2)", "O(k^2 l^2)", "O(k^2 l^3)"},
};
const char* kTable2Depths[3][5] = {
    {"O(l)", "O(l)", "1", "O(kl)", "O(kl)"},
    {"O(l)", "O(l)", "O(n)", "O(kl)", "O(kl)"},
    {"O(l^2)", "O(l^2)", "O(n^2)", "O(k^2 l^2)", "O(k^2 l^2)"},
};

// Width cells of table 2 in (row, column) order, as closed forms of (k, l, n).
std::int64_t table2_width_value(int row, int col, std::int64_t k, std::int64_t l) {
  const std::int64_t n = k * l;
  const std::int64_t cells[3][5] = {
      {2 * l + 1, l + 2, n, k * l + k + l, k * l + 2},
      {2 * l + 3, l + 4, n + 2, k * l + k + l + 2, k * l + 4},
      {3 * l + 2, 2 * l + 3, 2 * n + 1, 2 * k * l + k + l + 1, 2 * k * l + 3},
  };
  return cells[row][col];
}

std::string render_table2(const std::string& title,
                          const std::vector<std::vector<std::string>>& width_cells) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({title});
  rows.push_back({"circuit", "metric", "GF(p) carry-sum", "GF(p) phi", "GF(2^n)",
                  "GF(p^k) carry-sum", "GF(p^k) phi"});
  for (int r = 0; r < 3; ++r) {
    std::vector<std::string> wrow = {kTable2Circuits[r], "width"};
    wrow.insert(wrow.end(), width_cells[r].begin(), width_cells[r].end());
    rows.push_back(wrow);
    std::vector<std::string> srow = {"", "size"};
    for (int c = 0; c < 5; ++c) srow.push_back(kTable2Sizes[r][c]);
    rows.push_back(srow);
    std::vector<std::string> drow = {"", "depth"};
    for (int c = 0; c < 5; ++c) drow.push_back(kTable2Depths[r][c]);
    rows.push_back(drow);
  }
  return render_grid(rows);
}

}  // namespace

std::string table1() {
  std::vector<std::vector<std::string>> rows = {
      {"integer adders, n value bits"},
      {"circuit", "width", "size", "depth"},
      {"carry-sum adder", "2n", "O(n)", "O(n)"},
      {"phi-adder", "n+1", "O(n)", "1"},
      {"doubly controlled carry-sum adder", "2n+2", "O(n)", "O(n)"},
      {"doubly controlled phi-adder", "n+3", "O(n)", "O(n)"},
  };
  return render_grid(rows);
}

std::string table2() {
  std::vector<std::vector<std::string>> width_cells(3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 5; ++c) width_cells[r].push_back(kTable2Widths[r][c]);
  }
  return render_table2("field arithmetic, l = ceil(lg p), n = kl", width_cells);
}

std::string table2(std::uint64_t p, unsigned k) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) out_of_domain("p must be an odd prime");
  if (k < 1) out_of_domain("k must be at least 1");
  const auto l = static_cast<std::int64_t>(bit_width_at_least_one(p - 1));
  const auto kk = static_cast<std::int64_t>(k);
  std::vector<std::vector<std::string>> width_cells(3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 5; ++c) {
      width_cells[r].push_back(std::to_string(table2_width_value(r, c, kk, l)));
    }
  }
  std::ostringstream title;
  title << "field arithmetic at p=" << p << ", k=" << k << " (l=" << l << ", n=" << kk * l
        << ")";
  return render_table2(title.str(), width_cells);
}

std::string csv_header() {
  return "circuit_kind,family,controls,width,N,CN,C2N,C3N,C4N,P,CP,C2P,H,depth";
}

namespace {

// CSV column order for the gate counts; the tally array is indexed by GateKind
// declaration order instead.
constexpr GateKind kCsvGateOrder[] = {GateKind::N,   GateKind::CN,  GateKind::C2N,
                                      GateKind::C3N, GateKind::C4N, GateKind::P,
                                      GateKind::CP,  GateKind::C2P, GateKind::H};

}  // namespace

std::string csv_row(CircuitKind kind, const std::string& family, int controls,
                    const ResourceEstimate& est) {
  std::ostringstream os;
  os << circuit_kind_name(kind) << ',' << (family.empty() ? "-" : family) << ','
     << controls << ',' << est.width;
  for (GateKind gk : kCsvGateOrder) {
    os << ',' << est.counts[static_cast<std::size_t>(gk)].str_num_den();
  }
  os << ',' << est.depth.str_num_den();
  return os.str();
}

std::string render_estimate(CircuitKind kind, const std::string& family, int controls,
                            const ResourceEstimate& est) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"kind", circuit_kind_name(kind)});
  rows.push_back({"family", family.empty() ? "-" : family});
  rows.push_back({"controls", std::to_string(controls)});
  rows.push_back({"width", std::to_string(est.width)});
  for (GateKind gk : kCsvGateOrder) {
    const Rat& v = est.counts[static_cast<std::size_t>(gk)];
    if (!v.is_zero()) rows.push_back({gate_name(gk), v.str()});
  }
  rows.push_back({"depth", est.depth.str()});
  return render_grid(rows);
}

std::string render_compare(const CompareReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"samples", std::to_string(report.samples)});
  rows.push_back({"width", std::to_string(report.width_expected),
                  report.width_exact ? "PASS" : "FAIL"});
  rows.push_back({"gate", "mean", "expected", "abs-dev", "rel-dev"});
  for (const auto& e : report.entries) {
    if (e.expected.is_zero() && e.mean.is_zero()) continue;
    std::ostringstream rel;
    if (std::isinf(e.rel_dev)) {
      rel << "inf";
    } else {
      rel.setf(std::ios::fixed);
      rel.precision(2);
      rel << e.rel_dev * 100.0 << '%';
    }
    rows.push_back({e.label, e.mean.str(), e.expected.str(), e.abs_dev.str(), rel.str()});
  }
  return render_grid(rows);
}

}  // namespace qgf
