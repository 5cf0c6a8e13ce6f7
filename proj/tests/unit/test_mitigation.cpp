// Copyright 2026 The oqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "oqsim/mitigation.hpp"
#include "oqsim/models.hpp"
#include "oqsim/serialization.hpp"
#include "oracles.hpp"

using namespace oqsim;

namespace {

Matrix diag(std::initializer_list<double> v) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) {
        m(i, i) = x;
        ++i;
    }
    return m;
}

DensityMatrix plus_dm() {
    Vector v(2);
    v << 1.0, 1.0;
    return DensityMatrix::from_state(QuantumState::normalized(v));
}

// Random channel on the simplex with a dominant identity weight.
PauliChannel random_channel(std::size_t nq, oracle::Rng& rng, double identity_weight = 0.7) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PauliChannel ch;
    ch.num_qubits = nq;
    ch.epsilons.assign(std::size_t{1} << (2 * nq), 0.0);
    double rest = 0.0;
    for (std::size_t i = 1; i < ch.epsilons.size(); ++i) rest += ch.epsilons[i] = u(rng);
    for (std::size_t i = 1; i < ch.epsilons.size(); ++i) ch.epsilons[i] *= (1.0 - identity_weight) / rest;
    ch.epsilons[0] = identity_weight;
    return ch;
}

// Direct sum over Pauli strings, written independently of the library.
Matrix pauli_channel_oracle(const PauliChannel& ch, const Matrix& rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < ch.epsilons.size(); ++i) {
        std::string label;
        std::size_t idx = i;
        for (std::size_t q = 0; q < ch.num_qubits; ++q) {
            label.insert(label.begin(), "IXYZ"[idx % 4]);
            idx /= 4;
        }
        const oracle::Mat p = oracle::pauli_word(label);
        out += ch.epsilons[i] * p * rho * p.adjoint();
    }
    return out;
}

}  // namespace

TEST(PauliChannel, ApplyExamples) {
    const DensityMatrix rho = plus_dm();
    EXPECT_LT(oracle::max_abs(apply_pauli_channel(PauliChannel::identity(1), rho).matrix() - rho.matrix()), 1e-15);
    const PauliChannel zflip{1, {0.0, 0.0, 0.0, 1.0}};
    const Matrix minus = apply_pauli_channel(zflip, rho).matrix();
    EXPECT_NEAR(minus(0, 1).real(), -0.5, 1e-15);
    const PauliChannel half_x{1, {0.5, 0.5, 0.0, 0.0}};
    const Matrix mixed = apply_pauli_channel(half_x, DensityMatrix::from_state(QuantumState::basis(2, 0))).matrix();
    EXPECT_LT(oracle::max_abs(mixed - diag({0.5, 0.5})), 1e-15);
    EXPECT_THROW(apply_pauli_channel(half_x, DensityMatrix::maximally_mixed(4)), ValidationError);
    EXPECT_THROW((PauliChannel{1, {0.5, 0.6, 0.0, 0.0}}.validate()), ValidationError);
    EXPECT_THROW((PauliChannel{1, {1.1, -0.1, 0.0, 0.0}}.validate()), ValidationError);
}

TEST(PauliChannel, MatchesDirectSumAndPreservesTrace) {
    oracle::Rng rng(61);
    for (int trial = 0; trial < 5; ++trial) {
        const PauliChannel ch = random_channel(2, rng);
        const Matrix rho = oracle::random_density(4, rng);
        const Matrix out = apply_pauli_channel(ch, DensityMatrix::physical(rho)).matrix();
        EXPECT_LT(oracle::max_abs(out - pauli_channel_oracle(ch, rho)), 1e-14);
        EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    }
}

TEST(Qdc, ApplyExamples) {
    const DensityMatrix zero = DensityMatrix::from_state(QuantumState::basis(2, 0));
    EXPECT_LT(oracle::max_abs(apply_qdc({1, 0.0}, zero).matrix() - zero.matrix()), 1e-15);
    EXPECT_LT(oracle::max_abs(apply_qdc({1, 1.0}, zero).matrix() - diag({0.5, 0.5})), 1e-15);
    EXPECT_LT(oracle::max_abs(apply_qdc({1, 0.5}, zero).matrix() - diag({0.75, 0.25})), 1e-15);
    EXPECT_THROW(apply_qdc({2, 0.5}, zero), ValidationError);
    EXPECT_THROW((DepolarizingChannel{1, 1.5}.validate()), ValidationError);
}

TEST(Superoperator, Examples) {
    EXPECT_LT(oracle::max_abs(channel_superoperator(PauliChannel::identity(1)) - Matrix::Identity(4, 4)), 1e-15);
    EXPECT_LT(oracle::max_abs(channel_superoperator(PauliChannel{1, {0, 0, 0, 1}}) - diag({1, -1, -1, 1})), 1e-15);
    oracle::Rng rng(62);
    const PauliChannel ch = random_channel(2, rng, 0.4);
    const Matrix rho = oracle::random_density(4, rng);
    EXPECT_LT(oracle::max_abs(unvec(channel_superoperator(ch) * vec(rho), 4) -
                              apply_pauli_channel(ch, DensityMatrix::physical(rho)).matrix()),
              1e-12);
}

TEST(Invert, Examples) {
    const DensityMatrix noisy = DensityMatrix::raw(diag({0.75, 0.25}));
    EXPECT_LT(oracle::max_abs(invert_channel(DepolarizingChannel{1, 0.5}, noisy).matrix() - diag({1.0, 0.0})), 1e-15);
    const DensityMatrix mm = DensityMatrix::maximally_mixed(2);
    EXPECT_LT(oracle::max_abs(invert_channel(DepolarizingChannel{1, 0.5}, mm).matrix() - mm.matrix()), 1e-15);
    EXPECT_THROW(invert_channel(DepolarizingChannel{1, 1.0}, mm), ValidationError);
}

TEST(Invert, RoundTripProperty) {
    oracle::Rng rng(63);
    for (int trial = 0; trial < 6; ++trial) {
        const PauliChannel ch = random_channel(2, rng, 0.6 + 0.05 * trial);
        const DensityMatrix rho = DensityMatrix::physical(oracle::random_density(4, rng));
        InversionDiagnostics diag_info;
        const DensityMatrix back = invert_channel(ch, apply_pauli_channel(ch, rho), &diag_info);
        EXPECT_TRUE(back.is_raw());
        EXPECT_LT(oracle::max_abs(back.matrix() - rho.matrix()), 1e-10);
        EXPECT_EQ(diag_info.rank, 16u);
        EXPECT_GT(diag_info.rcond, 0.0);

        const DepolarizingChannel q{2, 0.1 * trial};
        EXPECT_LT(oracle::max_abs(invert_channel(q, apply_qdc(q, rho)).matrix() - rho.matrix()), 1e-10);
    }
}

TEST(Invert, RankDeficientDiagnostics) {
    // eps_0 = eps_Z = 1/2 kills the coherences: superoperator rank 2 of 4.
    InversionDiagnostics d;
    invert_channel(PauliChannel{1, {0.5, 0.0, 0.0, 0.5}}, plus_dm(), &d);
    EXPECT_EQ(d.rank, 2u);
    EXPECT_EQ(d.full_rank, 4u);
}

TEST(ChannelAlgebra, QdcCommutesWithUnitalChannels) {
    // Mixtures of random unitaries are unital, which is what the commutation needs:
    // E(I) = I. Non-unital maps such as amplitude damping do not commute with QDC.
    oracle::Rng rng(64);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Matrix> us;
        std::vector<double> ps = {0.5, 0.3, 0.2};
        for (int k = 0; k < 3; ++k) us.push_back(oracle::random_unitary(4, rng));
        auto channel = [&](const Matrix& r) {
            Matrix out = Matrix::Zero(4, 4);
            for (int k = 0; k < 3; ++k) out += ps[k] * us[k] * r * us[k].adjoint();
            return out;
        };
        const DensityMatrix rho = DensityMatrix::physical(oracle::random_density(4, rng));
        const DepolarizingChannel q{2, 0.37};
        const Matrix a = apply_qdc(q, DensityMatrix::physical(channel(rho.matrix()))).matrix();
        const Matrix b = channel(apply_qdc(q, rho).matrix());
        EXPECT_LT(oracle::max_abs(a - b), 1e-10);
    }
}

TEST(ChannelAlgebra, PauliChannelsCommute) {
    oracle::Rng rng(65);
    for (int trial = 0; trial < 5; ++trial) {
        const PauliChannel a = random_channel(2, rng, 0.3);
        const PauliChannel b = random_channel(2, rng, 0.5);
        const Matrix sa = channel_superoperator(a);
        const Matrix sb = channel_superoperator(b);
        EXPECT_LT(oracle::max_abs(sa * sb - sb * sa), 1e-10);
    }
}

TEST(FitPauli, SyntheticRecovery) {
    oracle::Rng rng(66);
    const PauliChannel truth = random_channel(1, rng, 0.8);
    std::vector<StatePair> pairs;
    for (int k = 0; k < 4; ++k) {
        const DensityMatrix rho = DensityMatrix::physical(oracle::random_density(2, rng));
        pairs.emplace_back(rho, apply_pauli_channel(truth, rho));
    }
    const PauliFitReport rep = fit_pauli_channel(pairs);
    EXPECT_TRUE(rep.converged);
    EXPECT_LT(rep.kkt_residual, kFitKktTolerance);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(rep.channel.epsilons[i], truth.epsilons[i], 1e-6);
}

TEST(FitPauli, TwoQubitRecoveryWithZeros) {
    oracle::Rng rng(67);
    PauliChannel truth = random_channel(2, rng, 0.75);
    // Sparse truth exercises the active constraints.
    double removed = 0.0;
    for (std::size_t i = 1; i < 16; i += 3) {
        removed += truth.epsilons[i];
        truth.epsilons[i] = 0.0;
    }
    truth.epsilons[0] += removed;
    std::vector<StatePair> pairs;
    for (int k = 0; k < 6; ++k) {
        const DensityMatrix rho = DensityMatrix::physical(oracle::random_density(4, rng));
        pairs.emplace_back(rho, apply_pauli_channel(truth, rho));
    }
    const PauliFitReport rep = fit_pauli_channel(pairs);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(rep.channel.epsilons[i], truth.epsilons[i], 1e-6) << i;
    double sum = 0.0;
    for (double e : rep.channel.epsilons) {
        EXPECT_GE(e, 0.0);
        sum += e;
    }
    EXPECT_NEAR(sum, 1.0, 1e-8);
    for (std::size_t i = 1; i < rep.objective_history.size(); ++i) {
        EXPECT_LE(rep.objective_history[i], rep.objective_history[i - 1] * (1.0 + 1e-12) + 1e-300);
    }
}

TEST(FitPauli, IdenticalPairsGiveIdentity) {
    oracle::Rng rng(68);
    const DensityMatrix rho = DensityMatrix::physical(oracle::random_density(4, rng));
    const PauliFitReport rep = fit_pauli_channel({{rho, rho}});
    EXPECT_NEAR(rep.channel.epsilons[0], 1.0, 1e-8);
    EXPECT_THROW(fit_pauli_channel({}), ValidationError);
}

TEST(FitPauli, PurePairAttainsZeroResidual) {
    oracle::Rng rng(69);
    const PauliChannel truth = random_channel(2, rng, 0.6);
    const DensityMatrix rho = DensityMatrix::from_state(QuantumState(oracle::random_state(4, rng)));
    const DensityMatrix noisy = apply_pauli_channel(truth, rho);
    const PauliFitReport rep = fit_pauli_channel({{rho, noisy}});
    EXPECT_LT(oracle::max_abs(apply_pauli_channel(rep.channel, rho).matrix() - noisy.matrix()), 1e-6);
}

TEST(FitQdc, SyntheticRecovery) {
    oracle::Rng rng(70);
    std::vector<StatePair> mixed;
    std::vector<StatePair> pure;
    for (int k = 0; k < 3; ++k) {
        const DensityMatrix r = DensityMatrix::physical(oracle::random_density(4, rng));
        mixed.emplace_back(r, apply_qdc({2, 0.3}, r));
        const DensityMatrix p = DensityMatrix::from_state(QuantumState(oracle::random_state(4, rng)));
        pure.emplace_back(p, apply_qdc({2, 0.3}, p));
    }
    EXPECT_NEAR(fit_qdc_lambda(mixed, LambdaStrategy::FidelityMax), 0.3, 1e-3);
    EXPECT_NEAR(fit_qdc_lambda(mixed, LambdaStrategy::FrobeniusMin), 0.3, 1e-3);
    // Pure references: every lambda >= 0.3 restores fidelity 1 after projection,
    // and the tie-break must return the left edge of that plateau.
    const LambdaFitReport rep = fit_qdc_lambda_report(pure, LambdaStrategy::FidelityMax);
    EXPECT_NEAR(rep.lambda, 0.3, 1e-3);
    EXPECT_NEAR(rep.score, 1.0, 1e-9);
    EXPECT_FALSE(rep.grid.empty());
}

TEST(FitQdc, IdenticalPairsGiveZero) {
    oracle::Rng rng(71);
    const DensityMatrix r = DensityMatrix::physical(oracle::random_density(2, rng));
    EXPECT_NEAR(fit_qdc_lambda({{r, r}}, LambdaStrategy::FidelityMax), 0.0, 1e-9);
    EXPECT_NEAR(fit_qdc_lambda({{r, r}}, LambdaStrategy::FrobeniusMin), 0.0, 1e-4);
    EXPECT_THROW(fit_qdc_lambda({}, LambdaStrategy::FidelityMax), ValidationError);
}

TEST(Project, Examples) {
    oracle::Rng rng(72);
    const DensityMatrix rho = DensityMatrix::physical(oracle::random_density(3, rng));
    EXPECT_LT(oracle::max_abs(project_physical(rho).matrix() - rho.matrix()), 1e-12);
    const DensityMatrix p = project_physical(DensityMatrix::raw(diag({1.2, -0.2})));
    EXPECT_LT(oracle::max_abs(p.matrix() - diag({1.0, 0.0})), 1e-15);
    EXPECT_FALSE(p.is_raw());
    EXPECT_LT(oracle::max_abs(project_physical(p).matrix() - p.matrix()), 1e-15);
    EXPECT_THROW(project_physical(DensityMatrix::raw(diag({-0.5, -0.5}))), NumericalError);
    Matrix nh = diag({0.5, 0.5});
    nh(0, 1) = 0.2;
    EXPECT_THROW(project_physical(DensityMatrix::raw(nh)), ValidationError);
}

TEST(Project, IdempotentProperty) {
    oracle::Rng rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix h = oracle::random_hermitian(4, rng) * 0.3 + Matrix::Identity(4, 4) / 4.0;
        const DensityMatrix once = project_physical(DensityMatrix::raw(h));
        EXPECT_TRUE(once.satisfies_physical(1e-10));
        EXPECT_LT(oracle::max_abs(project_physical(once).matrix() - once.matrix()), 1e-12);
    }
}

TEST(Twirl, Examples) {
    const Matrix tau = diag({1, -1, 1, -1});
    const DensityMatrix sym = DensityMatrix::physical(diag({0.1, 0.2, 0.3, 0.4}));
    EXPECT_LT(oracle::max_abs(parity_twirl(sym, tau).matrix() - sym.matrix()), 1e-15);
    Vector v = Vector::Zero(4);
    v(0) = v(1) = std::sqrt(0.5);
    const DensityMatrix tw = parity_twirl(DensityMatrix::from_state(QuantumState(v)), tau);
    EXPECT_LT(oracle::max_abs(tw.matrix() - diag({0.5, 0.5, 0.0, 0.0})), 1e-15);
    EXPECT_LT(oracle::max_abs(parity_twirl(tw, tau).matrix() - tw.matrix()), 1e-15);
    EXPECT_THROW(parity_twirl(tw, diag({1, 2, 1, 1})), ValidationError);
}

TEST(Twirl, KillsParityOddObservablesProperty) {
    oracle::Rng rng(74);
    const Matrix tau = parity_operator(3);
    const Matrix a = oracle::lowering(3);
    const Matrix x = (a + a.adjoint()) / std::sqrt(2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix tw = parity_twirl(DensityMatrix::physical(oracle::random_density(4, rng)), tau);
        EXPECT_LT(oracle::max_abs(tw.matrix() * tau - tau * tw.matrix()), 1e-10);
        EXPECT_NEAR(std::abs((tw.matrix() * x).trace()), 0.0, 1e-10);
        EXPECT_NEAR(std::abs((tw.matrix() * a).trace()), 0.0, 1e-10);
    }
}

TEST(Serialization, ChannelsAndReports) {
    oracle::Rng rng(75);
    const PauliChannel ch = random_channel(2, rng);
    const PauliChannel back = pauli_channel_from_json(json::parse(channel_to_json(ch).dump()));
    EXPECT_EQ(back.epsilons, ch.epsilons);
    const DepolarizingChannel q = depolarizing_channel_from_json(channel_to_json(DepolarizingChannel{2, 0.25}));
    EXPECT_EQ(q.lambda, 0.25);
    EXPECT_THROW(depolarizing_channel_from_json(json{{"num_qubits", 1}, {"lambda", 2.0}}), ValidationError);
    const DensityMatrix r = DensityMatrix::physical(oracle::random_density(4, rng));
    const json rep = fit_report_to_json(fit_pauli_channel({{r, apply_pauli_channel(ch, r)}}));
    EXPECT_TRUE(rep.contains("iterations"));
    EXPECT_TRUE(rep.contains("kkt_residual"));
}
