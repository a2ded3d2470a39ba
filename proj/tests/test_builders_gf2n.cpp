#include <bit>
#include <vector>

#include "doctest.h"
#include "qgf/builders.hpp"
#include "qgf/circuit.hpp"
#include "qgf/field.hpp"
#include "qgf/sim.hpp"

using namespace qgf;
using u64 = std::uint64_t;

namespace {

FieldSpec gf2(unsigned n) {
  switch (n) {
    case 2: return FieldSpec::binary(2, 0b111);
    case 3: return FieldSpec::binary(3, 0b1011);
    case 4: return FieldSpec::binary(4, 0b10011);
    case 5: return FieldSpec::binary(5, 0b100101);
    default: REQUIRE(false); return FieldSpec::binary(2, 0b111);
  }
}

}  // namespace

TEST_SUITE("builders_gf2n") {

TEST_CASE("adder is a bitwise xor of the operand") {
  for (unsigned n = 2; n <= 5; ++n) {
    const FieldSpec f = gf2(n);
    for (u64 a = 0; a < f.order(); ++a) {
      const Circuit c = build_adder_gf2n(a, f);
      CHECK(c.qubits == n);
      CHECK(tally(c)[static_cast<int>(GateKind::N)] == std::popcount(a));
      for (u64 z = 0; z < f.order(); ++z) {
        const u64 in = write_group(c, 0, "z", z);
        CHECK(run_permutation(c, in) == write_group(c, in, "z", z ^ a));
      }
    }
  }
}

TEST_CASE("doubly controlled adder fires only on 3") {
  const FieldSpec f = gf2(4);
  for (u64 a = 0; a < 16; ++a) {
    const Circuit c = build_adder_gf2n(a, f, 2);
    CHECK(c.qubits == 6);
    CHECK(tally(c)[static_cast<int>(GateKind::C2N)] == std::popcount(a));
    for (u64 ctl = 0; ctl < 4; ++ctl) {
      for (u64 z = 0; z < 16; ++z) {
        u64 in = write_group(c, 0, "z", z);
        in = write_group(c, in, "ctl", ctl);
        const u64 want_z = (ctl == 3) ? (z ^ a) : z;
        CHECK(run_permutation(c, in) == write_group(c, in, "z", want_z));
      }
    }
  }
}

TEST_CASE("adder rejects bad parameters") {
  const FieldSpec f = gf2(3);
  CHECK_THROWS_AS(build_adder_gf2n(8, f), BuildError);
  CHECK_THROWS_AS(build_adder_gf2n(1, f, 1), BuildError);
  CHECK_THROWS_AS(build_adder_gf2n(1, FieldSpec::prime(7)), BuildError);
}

TEST_CASE("multiply-accumulate adds the field product") {
  for (unsigned n = 2; n <= 4; ++n) {
    const FieldSpec f = gf2(n);
    for (u64 a = 0; a < f.order(); ++a) {
      const Circuit c = build_addmult_gf2n(a, f);
      CHECK(c.qubits == 2 * n + 1);
      for (u64 x = 0; x < f.order(); ++x) {
        u64 in = write_group(c, 0, "c", 1);
        in = write_group(c, in, "x", x);
        CHECK(run_permutation(c, in) == write_group(c, in, "z", field_mul(f, a, x)));
      }
      // nonzero accumulator and disabled runs
      const u64 x = (a + 1) % f.order(), z = (a + 3) % f.order();
      u64 in = write_group(c, 0, "c", 1);
      in = write_group(c, in, "x", x);
      in = write_group(c, in, "z", z);
      CHECK(run_permutation(c, in) ==
            write_group(c, in, "z", field_add(f, z, field_mul(f, a, x))));
      u64 off = write_group(c, 0, "c", 0);
      off = write_group(c, off, "x", x);
      off = write_group(c, off, "z", z);
      CHECK(run_permutation(c, off) == off);
    }
  }
}

TEST_CASE("multiply-accumulate over every accumulator value") {
  const FieldSpec f = gf2(3);
  for (u64 a = 0; a < 8; ++a) {
    const Circuit c = build_addmult_gf2n(a, f);
    for (u64 x = 0; x < 8; ++x) {
      for (u64 z = 0; z < 8; ++z) {
        u64 in = write_group(c, 0, "c", 1);
        in = write_group(c, in, "x", x);
        in = write_group(c, in, "z", z);
        CHECK(run_permutation(c, in) ==
              write_group(c, in, "z", field_add(f, z, field_mul(f, a, x))));
      }
    }
  }
}

TEST_CASE("multiply-accumulate gate count follows the shift table") {
  const FieldSpec f = gf2(4);
  for (u64 a = 0; a < 16; ++a) {
    std::int64_t want = 0;
    u64 xi = 1;
    for (unsigned i = 0; i < 4; ++i) {
      want += std::popcount(field_mul(f, a, xi));
      xi = field_mul(f, xi, 0b0010);
    }
    CHECK(tally(build_addmult_gf2n(a, f))[static_cast<int>(GateKind::C2N)] == want);
  }
}

TEST_CASE("in-place multiplier maps x to a*x when enabled") {
  for (unsigned n = 2; n <= 5; ++n) {
    const FieldSpec f = gf2(n);
    for (u64 a = 1; a < f.order(); ++a) {
      const Circuit c = build_cmult_gf2n(a, f);
      CHECK(c.qubits == 2 * n + 1);
      for (u64 x = 0; x < f.order(); ++x) {
        for (u64 ctl : {0, 1}) {
          u64 in = write_group(c, 0, "c", ctl);
          in = write_group(c, in, "x", x);
          const u64 want_x = ctl ? field_mul(f, a, x) : x;
          CHECK(run_permutation(c, in) == write_group(c, in, "x", want_x));
        }
      }
    }
  }
}

TEST_CASE("in-place multiplier rejects zero") {
  CHECK_THROWS_AS(build_cmult_gf2n(0, gf2(3)), BuildError);
}

TEST_CASE("in-place multipliers compose multiplicatively") {
  const FieldSpec f = gf2(3);
  const u64 a = 3, b = 6;
  Circuit chain = build_cmult_gf2n(a, f);
  append(chain, build_cmult_gf2n(b, f), 0);
  const Circuit direct = build_cmult_gf2n(field_mul(f, a, b), f);
  for (u64 x = 0; x < 8; ++x) {
    const u64 in = write_group(chain, write_group(chain, 0, "c", 1), "x", x);
    CHECK(run_permutation(chain, in) == run_permutation(direct, in));
  }
}

TEST_CASE("in-place multiplier inverse divides") {
  const FieldSpec f = gf2(4);
  const u64 a = 5;
  const Circuit c = build_cmult_gf2n(a, f);
  const Circuit back = inverse(c);
  const u64 ainv = field_inv(f, a);
  for (u64 x = 0; x < 16; ++x) {
    const u64 in = write_group(c, write_group(c, 0, "c", 1), "x", x);
    CHECK(run_permutation(back, in) == write_group(c, in, "x", field_mul(f, ainv, x)));
    CHECK(run_permutation(back, run_permutation(c, in)) == in);
  }
}

}  // TEST_SUITE
