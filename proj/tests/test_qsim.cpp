// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qksvm/qsim/channels.hpp"
#include "qksvm/qsim/gates.hpp"
#include "qksvm/qsim/sampling.hpp"
#include "qksvm/util/rng.hpp"

using namespace qksvm;
using namespace qksvm::qsim;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(int n_qubits, Rng& rng) {
  StateVector s = StateVector::zero_state(n_qubits);
  for (auto& a : s.amps) {
    a = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  const double norm = std::sqrt(s.norm_sq());
  for (auto& a : s.amps) a /= norm;
  return s;
}

GateOp random_gate(int n_qubits, Rng& rng) {
  const int kind = static_cast<int>(rng.below(6));
  const int q1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits)));
  int q2 = q1;
  if (n_qubits > 1) {
    while (q2 == q1) {
      q2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits)));
    }
  }
  const double angle = rng.uniform(-2.0 * kPi, 2.0 * kPi);
  switch (kind) {
    case 0: return GateOp::h(q1);
    case 1: return GateOp::rx(q1, angle);
    case 2: return GateOp::ry(q1, angle);
    case 3: return GateOp::rz(q1, angle);
    case 4: return n_qubits > 1 ? GateOp::rzz(q1, q2, angle) : GateOp::rz(q1, angle);
    default: return n_qubits > 1 ? GateOp::cnot(q1, q2) : GateOp::h(q1);
  }
}

}  // namespace

TEST_CASE("basis index convention: qubit 0 is the most significant bit") {
  // Flip qubit 0 of three via RX(pi); the excited amplitude must sit at
  // index 2^(N-1) = 4.
  StateVector s = apply_gate(StateVector::zero_state(3), GateOp::rx(0, kPi));
  for (std::size_t q = 0; q < s.dim(); ++q) {
    const double p = std::norm(s.amps[q]);
    CHECK(p == doctest::Approx(q == 4 ? 1.0 : 0.0).epsilon(1e-12));
  }
  // And qubit 2 (least significant) lands at index 1.
  s = apply_gate(StateVector::zero_state(3), GateOp::rx(2, kPi));
  CHECK(std::norm(s.amps[1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("RX(pi) maps |0> to -i|1>") {
  const StateVector s =
      apply_gate(StateVector::zero_state(1), GateOp::rx(0, kPi));
  CHECK(std::abs(s.amps[0]) < 1e-12);
  CHECK(std::abs(s.amps[1] - cd{0.0, -1.0}) < 1e-12);
}

TEST_CASE("Hadamard on |0> gives the uniform superposition") {
  const StateVector s = apply_gate(StateVector::zero_state(1), GateOp::h(0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.amps[0] - cd{r, 0.0}) < 1e-12);
  CHECK(std::abs(s.amps[1] - cd{r, 0.0}) < 1e-12);
}

TEST_CASE("RZZ phases |01> by e^{+i alpha/2}") {
  const double alpha = 0.7345;
  StateVector s = StateVector::zero_state(2);
  s.amps[0] = 0;
  s.amps[1] = 1;  // |q0=0, q1=1>
  s = apply_gate(std::move(s), GateOp::rzz(0, 1, alpha));
  const cd expected = std::exp(cd{0.0, alpha / 2.0});
  CHECK(std::abs(s.amps[1] - expected) < 1e-12);
}

TEST_CASE("hadamard layer examples") {
  StateVector s = apply_hadamard_layer(StateVector::zero_state(2));
  for (const auto& a : s.amps) CHECK(std::abs(a - cd{0.5, 0.0}) < 1e-12);

  s = apply_hadamard_layer(std::move(s));
  CHECK(std::abs(s.amps[0] - cd{1.0, 0.0}) < 1e-12);

  s = apply_hadamard_layer(StateVector::zero_state(3));
  const double amp = 1.0 / (2.0 * std::sqrt(2.0));
  for (const auto& a : s.amps) CHECK(std::abs(a - cd{amp, 0.0}) < 1e-12);
}

TEST_CASE("apply_circuit composes left to right") {
  const StateVector zero = StateVector::zero_state(2);
  CHECK(overlap_probability(apply_circuit(zero, {}), zero) ==
        doctest::Approx(1.0));
  const std::vector<GateOp> hh = {GateOp::h(0), GateOp::h(0)};
  const StateVector round_trip = apply_circuit(zero, hh);
  CHECK(std::abs(round_trip.amps[0] - cd{1.0, 0.0}) < 1e-12);
}

TEST_CASE("two-qubit entangling circuit matches its hand expansion") {
  // H on both qubits, RZ(a) and RZ(b), then RZZ(c) gives amplitude
  // (1/2) e^{-i((-1)^{q0} a + (-1)^{q1} b)/2} e^{-i (-1)^{q0 == q1} c/2}
  // at basis (q0, q1); expanded independently of the simulator.
  Rng rng(41);
  for (int rep = 0; rep < 25; ++rep) {
    const double a = rng.uniform(-4.0, 4.0);
    const double b = rng.uniform(-4.0, 4.0);
    const double c = rng.uniform(-4.0, 4.0);
    const std::vector<GateOp> ops = {GateOp::h(0), GateOp::h(1),
                                     GateOp::rz(0, a), GateOp::rz(1, b),
                                     GateOp::rzz(0, 1, c)};
    const StateVector s = apply_circuit(StateVector::zero_state(2), ops);
    for (int q0 = 0; q0 < 2; ++q0) {
      for (int q1 = 0; q1 < 2; ++q1) {
        const double sa = q0 ? 1.0 : -1.0;
        const double sb = q1 ? 1.0 : -1.0;
        const double sc = (q0 == q1) ? -1.0 : 1.0;
        const cd expected =
            0.5 * std::exp(cd{0.0, (sa * a + sb * b + sc * c) / 2.0});
        const std::size_t index =
            static_cast<std::size_t>(q1) + 2 * static_cast<std::size_t>(q0);
        CHECK(std::abs(s.amps[index] - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("overlap probability basics") {
  Rng rng(7);
  const StateVector s = random_state(3, rng);
  CHECK(overlap_probability(s, s) == doctest::Approx(1.0).epsilon(1e-12));

  const StateVector zero = StateVector::zero_state(1);
  const StateVector one = apply_gate(zero, GateOp::rx(0, kPi));
  CHECK(overlap_probability(zero, one) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(overlap_probability(zero, apply_gate(zero, GateOp::h(0))) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("every gate unitary is unitary") {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const GateOp g = random_gate(4, rng);
    const Eigen::MatrixXcd u = gate_unitary(g);
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    CHECK((gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm() <
          1e-12);
  }
}

TEST_CASE("norm is preserved by random circuits") {
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    StateVector s = random_state(4, rng);
    for (int step = 0; step < 30; ++step) {
      apply_gate_in_place(s, random_gate(4, rng));
    }
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
  }
}

TEST_CASE("RZZ equals CNOT RZ CNOT") {
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const double angle = rng.uniform(-2.0 * kPi, 2.0 * kPi);
    StateVector s = random_state(2, rng);
    const StateVector via_rzz = apply_gate(s, GateOp::rzz(0, 1, angle));
    const std::vector<GateOp> decomposed = {
        GateOp::cnot(0, 1), GateOp::rz(1, angle), GateOp::cnot(0, 1)};
    const StateVector via_cnot = apply_circuit(s, decomposed);
    for (std::size_t q = 0; q < s.dim(); ++q) {
      CHECK(std::abs(via_rzz.amps[q] - via_cnot.amps[q]) < 1e-12);
    }
  }
}

TEST_CASE("gate index validation") {
  StateVector s = StateVector::zero_state(2);
  CHECK_THROWS_AS(apply_gate_in_place(s, GateOp::h(2)), Error);
  CHECK_THROWS_AS(apply_gate_in_place(s, GateOp::rzz(0, 0, 1.0)), Error);
  CHECK_THROWS_AS(overlap_probability(StateVector::zero_state(1),
                                      StateVector::zero_state(2)),
                  Error);
}

TEST_CASE("depolarizing channel point values") {
  const DensityMatrix dm = DensityMatrix::zero_state(1);

  const DensityMatrix same = apply_depolarizing_all(dm, 0.0);
  CHECK((same.mat - dm.mat).norm() < 1e-12);

  Rng rng(19);
  DensityMatrix mixed = DensityMatrix::from_pure(random_state(1, rng));
  mixed = apply_depolarizing_all(std::move(mixed), 0.75);
  CHECK((mixed.mat - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);

  const DensityMatrix tilted = apply_depolarizing_all(dm, 0.1);
  CHECK(std::abs(tilted.mat(0, 0).real() - (1.0 - 2.0 * 0.1 / 3.0)) < 1e-12);
  CHECK(std::abs(tilted.mat(1, 1).real() - 2.0 * 0.1 / 3.0) < 1e-12);
}

TEST_CASE("full depolarization of many qubits reaches the maximally mixed state") {
  Rng rng(23);
  DensityMatrix dm = DensityMatrix::from_pure(random_state(3, rng));
  dm = apply_depolarizing_all(std::move(dm), 0.75);
  CHECK((dm.mat - Eigen::MatrixXcd::Identity(8, 8) / 8.0).norm() < 1e-10);
  CHECK(std::abs(dm.trace_real() - 1.0) < 1e-10);
}

TEST_CASE("apply_channel rejects non trace preserving sets") {
  KrausSet bad = depolarizing_kraus(0.2);
  bad.pop_back();
  CHECK_THROWS_AS(apply_channel(DensityMatrix::zero_state(1), bad, 0), Error);
  CHECK_THROWS_AS(apply_depolarizing_all(DensityMatrix::zero_state(1), 1.5),
                  Error);
}

TEST_CASE("density evolution is consistent with the pure path") {
  Rng rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    StateVector s = random_state(3, rng);
    std::vector<GateOp> ops;
    for (int step = 0; step < 12; ++step) ops.push_back(random_gate(3, rng));

    const StateVector pure = apply_circuit(s, ops);
    const DensityMatrix evolved =
        evolve_density(DensityMatrix::from_pure(s), ops);
    CHECK((evolved.mat - DensityMatrix::from_pure(pure).mat).norm() < 1e-12);

    CHECK((evolved.mat - evolved.mat.adjoint()).norm() < 1e-10);
    CHECK(std::abs(evolved.trace_real() - 1.0) < 1e-10);
  }
}

TEST_CASE("purity never increases under depolarization") {
  Rng rng(31);
  for (double p : {0.01, 0.1, 0.3, 0.6}) {
    DensityMatrix dm = DensityMatrix::from_pure(random_state(2, rng));
    double purity = dm.purity();
    for (int step = 0; step < 4; ++step) {
      dm = apply_depolarizing_all(std::move(dm), p);
      const double next = dm.purity();
      CHECK(next <= purity + 1e-12);
      purity = next;
    }
  }
}

TEST_CASE("prob_all_zeros point values") {
  CHECK(prob_all_zeros(DensityMatrix::zero_state(3)) == doctest::Approx(1.0));

  DensityMatrix mixed = DensityMatrix::zero_state(2);
  mixed.mat = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  CHECK(prob_all_zeros(mixed) == doctest::Approx(0.25));

  const DensityMatrix plus = DensityMatrix::from_pure(
      apply_gate(StateVector::zero_state(1), GateOp::h(0)));
  CHECK(prob_all_zeros(plus) == doctest::Approx(0.5));
}

TEST_CASE("sampling follows the basis distribution") {
  Rng rng(37);
  const StateVector zeros = StateVector::zero_state(3);
  for (int rep = 0; rep < 20; ++rep) {
    CHECK(sample_bitstring(zeros, rng) == "000");
  }

  const StateVector plus = apply_gate(StateVector::zero_state(1), GateOp::h(0));
  int count0 = 0;
  const int n = 100000;
  for (int rep = 0; rep < n; ++rep) {
    if (sample_bitstring(plus, rng) == "0") ++count0;
  }
  const double freq = static_cast<double>(count0) / n;
  // Binomial 3-sigma band around 0.5 at n = 1e5 is within [0.49, 0.51].
  CHECK(freq > 0.49);
  CHECK(freq < 0.51);
}

TEST_CASE("sampling replays identically for the same seed") {
  Rng a(101), b(101);
  const StateVector plus = apply_hadamard_layer(StateVector::zero_state(4));
  for (int rep = 0; rep < 100; ++rep) {
    CHECK(sample_bitstring(plus, a) == sample_bitstring(plus, b));
  }
}
