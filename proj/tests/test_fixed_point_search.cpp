#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "brute_force.hpp"
#include "fpsearch/fixed_point_search.hpp"

using namespace fpsearch;

namespace {

constexpr double kPhi = std::numbers::pi / 3;

std::vector<int> as_ints(const OracleSpec& o) {
  std::vector<int> out;
  for (auto x : o.matching()) out.push_back(static_cast<int>(x));
  return out;
}

std::vector<OracleSpec> two_qubit_oracles(double phi, std::size_t kmax = 4) {
  std::vector<OracleSpec> out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    auto b = OracleSpec::all_with_k(2, k, phi);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

// 1 - (1 - k/N)^(3^r) in long double, written out independently.
double reference_closed_form(int r, int k, int n) {
  long double q = 1.0L - static_cast<long double>(k) / (1 << n);
  return static_cast<double>(1.0L - std::pow(q, std::pow(3.0L, r)));
}

}  // namespace

TEST(OracleSpec, Validation) {
  EXPECT_THROW(OracleSpec(2, std::vector<std::string>{}, kPhi), std::invalid_argument);
  EXPECT_THROW(OracleSpec(2, {"00", "00"}, kPhi), std::invalid_argument);
  EXPECT_THROW(OracleSpec(2, {"0"}, kPhi), std::invalid_argument);
  EXPECT_THROW(OracleSpec(2, {"02"}, kPhi), std::invalid_argument);
  EXPECT_THROW(OracleSpec(2, {"11"}, 2 * std::numbers::pi), std::invalid_argument);
  EXPECT_NO_THROW(OracleSpec(2, {"11"}, -1.9 * std::numbers::pi));
}

TEST(OracleSpec, IdsAndEnumeration) {
  EXPECT_EQ(OracleSpec(2, {"01", "00"}, kPhi).id(), "00+01");
  EXPECT_EQ(OracleSpec::all_with_k(2, 1, kPhi).size(), 4u);
  EXPECT_EQ(OracleSpec::all_with_k(2, 2, kPhi).size(), 6u);
  EXPECT_EQ(OracleSpec::all_with_k(2, 3, kPhi).size(), 4u);
  EXPECT_EQ(OracleSpec::all_with_k(3, 2, kPhi).size(), 28u);
  EXPECT_EQ(OracleSpec(2, {"10"}, kPhi).complement().id(), "00+01+11");
}

TEST(PhaseOracle, PiPhaseIsSignFlip) {
  const auto u = phase_oracle(OracleSpec(2, {"11"}, std::numbers::pi));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(u(i, i) - Complex(i == 3 ? -1.0 : 1.0)), 0.0, 1e-15);
  }
}

TEST(PhaseOracle, AllStatesIsGlobalPhase) {
  const auto u = phase_oracle(OracleSpec(2, {"00", "01", "10", "11"}, kPhi));
  EXPECT_TRUE(equal_up_to_global_phase(u, UnitaryMatrix::identity(4), kAlgebraTol));
  EXPECT_NEAR(std::abs(u(0, 0) - std::polar(1.0, kPhi)), 0.0, kAlgebraTol);
}

TEST(PhaseOracle, OriginOracleIsR0) {
  const auto u = phase_oracle(OracleSpec(2, {"00"}, kPhi));
  EXPECT_EQ(OracleSpec(2, {"00"}, kPhi), OracleSpec::origin(2, kPhi));
  EXPECT_NEAR(std::abs(u(0, 0) - std::polar(1.0, kPhi)), 0.0, kAlgebraTol);
  EXPECT_NEAR(std::abs(u(1, 1) - 1.0), 0.0, kAlgebraTol);
}

TEST(PseudoHadamard, SingleQubitAndUniformOverlap) {
  const auto u1 = pseudo_hadamard(1);
  EXPECT_NEAR(std::norm(u1(0, 0)), 0.5, kAlgebraTol);
  EXPECT_NEAR(std::norm(u1(1, 0)), 0.5, kAlgebraTol);
  const auto u2 = pseudo_hadamard(2);
  for (std::size_t s = 0; s < 4; ++s) EXPECT_NEAR(std::norm(u2(s, 0)), 0.25, kAlgebraTol);
  EXPECT_LE(u2.unitarity_error(), kAlgebraTol);
  EXPECT_THROW(pseudo_hadamard(0), std::invalid_argument);
}

TEST(RotationY, MatchesConvention) {
  const auto r = rotation_y(std::numbers::pi / 2);
  const double c = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(r(0, 0) - c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r(0, 1) + c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r(1, 0) - c), 0.0, 1e-15);
}

TEST(RecursiveOperator, OrderZeroIsU) {
  const OracleSpec o(2, {"11"}, kPhi);
  EXPECT_TRUE(equal_up_to_global_phase(recursive_operator(RecursionOrder(0), o, OracleSpec::origin(2, kPhi)),
                                       pseudo_hadamard(2), kAlgebraTol));
}

TEST(RecursiveOperator, Order1K1AllTargets) {
  for (const auto& o : OracleSpec::all_with_k(2, 1, kPhi)) {
    const auto v = recursive_operator(RecursionOrder(1), o, OracleSpec::origin(2, kPhi));
    EXPECT_NEAR(success_probability(v, o), 0.578125, 1e-12) << o.id();
    EXPECT_NEAR(std::round(success_probability(v, o) * 1e4) / 1e4, 0.5781, 1e-12);
  }
}

TEST(RecursiveOperator, Order2K2) {
  const OracleSpec o(2, {"00", "01"}, kPhi);
  const auto v = recursive_operator(RecursionOrder(2), o, OracleSpec::origin(2, kPhi));
  EXPECT_NEAR(std::round(success_probability(v, o) * 1e4) / 1e4, 0.9980, 1e-12);
}

TEST(RecursiveOperator, MatchesBruteForceModel) {
  for (double phi : {kPhi, std::numbers::pi, 0.7}) {
    for (const auto& o : two_qubit_oracles(phi)) {
      for (int r = 0; r <= 3; ++r) {
        const auto v = recursive_operator(RecursionOrder(r), o, OracleSpec::origin(2, phi));
        const auto ref = brute::ideal_v(r, as_ints(o), phi);
        double worst = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(v(i, j) - ref[i][j]));
        EXPECT_LE(worst, 1e-12) << o.id() << " r=" << r;
      }
    }
  }
}

TEST(RecursiveOperator, RejectsMismatchedOrigin) {
  const OracleSpec o(2, {"11"}, kPhi);
  EXPECT_THROW(recursive_operator(RecursionOrder(1), o, OracleSpec::origin(2, -kPhi)), std::invalid_argument);
  EXPECT_THROW(recursive_operator(RecursionOrder(1), o, OracleSpec(2, {"01"}, kPhi)), std::invalid_argument);
  EXPECT_THROW(recursive_operator(RecursionOrder(1), o, OracleSpec::origin(3, kPhi)), std::invalid_argument);
}

TEST(RecursionOrder, DepthCap) {
  EXPECT_THROW(RecursionOrder(9), DepthLimitExceeded);
  EXPECT_THROW(RecursionOrder(-1), std::invalid_argument);
  EXPECT_NO_THROW(RecursionOrder(8));
  EXPECT_THROW(RecursionOrder(3, 2), DepthLimitExceeded);
  try {
    RecursionOrder(12);
  } catch (const DepthLimitExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("12"), std::string::npos);
  }
}

TEST(SuccessProbability, Examples) {
  EXPECT_NEAR(success_probability(UnitaryMatrix::identity(4), OracleSpec(2, {"00"}, kPhi)), 1.0, 1e-15);
  EXPECT_NEAR(success_probability(pseudo_hadamard(2), OracleSpec(2, {"01", "11"}, kPhi)), 0.5, 1e-12);
  const OracleSpec o(2, {"10"}, kPhi);
  const auto v3 = recursive_operator(RecursionOrder(3), o, OracleSpec::origin(2, kPhi));
  EXPECT_NEAR(std::round(success_probability(v3, o) * 1e4) / 1e4, 0.9996, 1e-12);
}

TEST(SuccessProbability, EqualsProjectionOntoTargetForIdealOperators) {
  for (const auto& o : two_qubit_oracles(kPhi, 3)) {
    for (int r = 0; r <= 4; ++r) {
      const auto v = recursive_operator(RecursionOrder(r), o, OracleSpec::origin(2, kPhi));
      EXPECT_NEAR(success_probability(v, o), target_overlap_probability(v, o), 1e-12) << o.id();
    }
  }
}

TEST(ClosedForm, Examples) {
  EXPECT_NEAR(closed_form_success(RecursionOrder(1), 1, 2), 37.0 / 64.0, 1e-15);
  for (std::size_t k = 1; k <= 4; ++k) {
    EXPECT_NEAR(closed_form_success(RecursionOrder(0), k, 2), k / 4.0, 1e-15);
  }
  EXPECT_NEAR(closed_form_success(RecursionOrder(2), 3, 2), 1.0 - std::pow(0.25, 9), 1e-15);
  EXPECT_THROW(closed_form_success(RecursionOrder(1), 0, 2), std::invalid_argument);
  EXPECT_THROW(closed_form_success(RecursionOrder(1), 5, 2), std::invalid_argument);
}

TEST(ClosedForm, AgreesWithSimulationN2AndN3) {
  for (const auto& o : two_qubit_oracles(kPhi)) {
    for (int r = 0; r <= 4; ++r) {
      const RecursionOrder order(r);
      const double sim = success_probability(recursive_operator(order, o, OracleSpec::origin(2, kPhi)), o);
      EXPECT_NEAR(sim, closed_form_success(order, o.k(), 2), 1e-12) << o.id() << " r=" << r;
      EXPECT_NEAR(closed_form_success(order, o.k(), 2), reference_closed_form(r, static_cast<int>(o.k()), 2),
                  1e-15);
    }
  }
  for (const auto& bits : std::vector<std::vector<std::string>>{{"101"}, {"000", "111"}, {"001", "010", "100"}}) {
    const OracleSpec o(3, bits, kPhi);
    for (int r = 0; r <= 3; ++r) {
      const RecursionOrder order(r);
      const double sim = success_probability(recursive_operator(order, o, OracleSpec::origin(3, kPhi)), o);
      EXPECT_NEAR(sim, closed_form_success(order, o.k(), 3), 1e-12) << o.id() << " r=" << r;
    }
  }
}

TEST(CubeLaw, IdealAllOraclesUpToCap) {
  for (const auto& o : two_qubit_oracles(kPhi, 3)) {
    const auto origin = OracleSpec::origin(2, kPhi);
    double prev = success_probability(recursive_operator(RecursionOrder(0), o, origin), o);
    for (int r = 1; r <= kDefaultMaxOrder; ++r) {
      const double p = success_probability(recursive_operator(RecursionOrder(r), o, origin), o);
      EXPECT_NEAR(1.0 - p, std::pow(1.0 - prev, 3), 1e-12) << o.id() << " r=" << r;
      EXPECT_GE(p, prev - 1e-12);
      prev = p;
    }
  }
}

TEST(CubeLaw, ConjugatePhaseAlsoWorks) {
  const OracleSpec o(2, {"01"}, -kPhi);
  const auto origin = OracleSpec::origin(2, -kPhi);
  for (int r = 0; r <= 3; ++r) {
    EXPECT_NEAR(success_probability(recursive_operator(RecursionOrder(r), o, origin), o),
                closed_form_success(RecursionOrder(r), 1, 2), 1e-12);
  }
}

TEST(QueryCount, Examples) {
  EXPECT_EQ(query_count(RecursionOrder(0)), 0u);
  EXPECT_EQ(query_count(RecursionOrder(3)), 13u);
  EXPECT_EQ(query_count(RecursionOrder(4)), 40u);
  EXPECT_EQ(query_count(RecursionOrder(8)), 3280u);
}

TEST(ExpandGateList, SmallOrders) {
  EXPECT_EQ(expand_gate_list(RecursionOrder(0)), std::vector<GateKind>{GateKind::U});
  const std::vector<GateKind> r1{GateKind::U, GateKind::Rf, GateKind::UDag, GateKind::R0, GateKind::U};
  EXPECT_EQ(expand_gate_list(RecursionOrder(1)), r1);
}

TEST(ExpandGateList, FamilyCountsMatchQueryCount) {
  for (int r = 0; r <= kDefaultMaxOrder; ++r) {
    const RecursionOrder order(r);
    const auto gates = expand_gate_list(order);
    const auto rf = std::count_if(gates.begin(), gates.end(), is_oracle_family);
    const auto r0 = std::count_if(gates.begin(), gates.end(), is_origin_family);
    EXPECT_EQ(static_cast<std::uint64_t>(rf), query_count(order));
    EXPECT_EQ(static_cast<std::uint64_t>(r0), query_count(order));
  }
  const auto g3 = expand_gate_list(RecursionOrder(3));
  EXPECT_EQ(std::count_if(g3.begin(), g3.end(), is_oracle_family), 13);
  EXPECT_EQ(std::count_if(g3.begin(), g3.end(), is_origin_family), 13);
}

TEST(ExpandGateList, ProductEqualsRecursion) {
  for (const auto& o : two_qubit_oracles(kPhi, 3)) {
    const auto origin = OracleSpec::origin(2, kPhi);
    for (int r = 0; r <= 4; ++r) {
      const RecursionOrder order(r);
      const auto a = gate_list_unitary(expand_gate_list(order), o, origin);
      const auto b = recursive_operator(order, o, origin);
      EXPECT_LE((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-12) << o.id() << " r=" << r;
    }
  }
}

TEST(Equivalences, FullOracleIsIdentity) {
  EXPECT_TRUE(equal_up_to_global_phase(phase_oracle(OracleSpec(2, {"00", "01", "10", "11"}, kPhi)),
                                       UnitaryMatrix::identity(4), 1e-12));
}

TEST(Equivalences, ComplementWithNegatedPhase) {
  for (double phi : {kPhi, std::numbers::pi, 1.1}) {
    for (const auto& o : two_qubit_oracles(phi, 3)) {
      EXPECT_TRUE(equal_up_to_global_phase(phase_oracle(o.complement().inverse()), phase_oracle(o), 1e-12))
          << o.id();
    }
  }
}

TEST(Equivalences, K3BehavesLikeK1AtPi) {
  const double pi = std::numbers::pi;
  const OracleSpec k1(2, {"10"}, pi);
  const OracleSpec k3 = k1.complement();
  const auto origin = OracleSpec::origin(2, pi);
  const auto v1 = recursive_operator(RecursionOrder(1), k1, origin);
  const auto v3 = recursive_operator(RecursionOrder(1), k3, origin);
  EXPECT_TRUE(equal_up_to_global_phase(v1, v3, 1e-12));
}

TEST(Equivalences, ClassicGroverSingleStep) {
  const double pi = std::numbers::pi;
  for (const auto& o : OracleSpec::all_with_k(2, 1, pi)) {
    const auto v = recursive_operator(RecursionOrder(1), o, OracleSpec::origin(2, pi));
    EXPECT_NEAR(success_probability(v, o), 1.0, 1e-12) << o.id();
  }
}

TEST(Bitstrings, RoundTrip) {
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(parse_bitstring(bitstring(i, 3), 3), i);
  EXPECT_EQ(bitstring(2, 2), "10");
  EXPECT_THROW(parse_bitstring("1x", 2), std::invalid_argument);
}
