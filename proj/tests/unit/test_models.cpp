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

#include "oqsim/kraus.hpp"
#include "oqsim/lindblad.hpp"
#include "oqsim/models.hpp"
#include "oracles.hpp"

using namespace oqsim;

TEST(Annihilation, Entries) {
    Matrix two(2, 2);
    two << 0.0, 1.0, 0.0, 0.0;
    EXPECT_EQ(annihilation_operator(1), two);
    const Matrix a = annihilation_operator(3);
    EXPECT_LT(oracle::max_abs(a - oracle::lowering(3)), 1e-15);
    const Vector out = a * Vector::Unit(4, 3);
    EXPECT_NEAR(out(2).real(), std::sqrt(3.0), 1e-15);
    Matrix number = Matrix::Zero(4, 4);
    for (int n = 0; n < 4; ++n) number(n, n) = n;
    EXPECT_LT(oracle::max_abs(a.adjoint() * a - number), 1e-14);
    EXPECT_THROW(annihilation_operator(0), ValidationError);
}

TEST(Annihilation, NilpotentAndTruncatedCommutator) {
    for (std::size_t n_max = 1; n_max <= 6; ++n_max) {
        const Matrix a = annihilation_operator(n_max);
        const auto d = static_cast<Eigen::Index>(n_max + 1);
        Matrix power = Matrix::Identity(d, d);
        for (std::size_t k = 0; k <= n_max; ++k) power = power * a;
        EXPECT_EQ(power, Matrix::Zero(d, d));
        Matrix expected = Matrix::Identity(d, d);
        expected(d - 1, d - 1) -= static_cast<double>(d);
        EXPECT_LT(oracle::max_abs(commutator(a, a.adjoint()) - expected), 1e-13);
    }
}

TEST(PauliModel, ReferenceConfiguration) {
    const LindbladModel m = pauli_channel_model({"IX", "XI", "ZZ", "XX"}, {0.1, 0.1, 1.0, 1.0});
    EXPECT_EQ(m.dim(), 4u);
    EXPECT_EQ(m.hamiltonian, Matrix::Zero(4, 4));
    EXPECT_LT(oracle::max_abs(m.lindblads[2] - oracle::pauli_word("ZZ")), 1e-15);
    EXPECT_LT(oracle::max_abs(m.lindblads[0] - oracle::pauli_word("IX")), 1e-15);
    const ConditionReport r = check_conditions(m);
    EXPECT_TRUE(r.all_satisfied());
    EXPECT_NEAR(std::abs(r.nu), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(r.lambda_const), 0.0, 1e-14);
    EXPECT_EQ(r.alpha, 0.0);
    const auto g = detect_group_structure(m);
    ASSERT_TRUE(g.has_value());
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(g->periods[i], 2u);
        EXPECT_NEAR(g->thetas[i], 1.0, 1e-12);
    }
}

TEST(PauliModel, ErrorsAndDephasing) {
    const LindbladModel z = pauli_channel_model({"Z"}, {0.5});
    EXPECT_EQ(z.dim(), 2u);
    EXPECT_THROW(pauli_channel_model({"XQ"}, {0.1}), ValidationError);
    EXPECT_THROW(pauli_channel_model({"X", "XX"}, {0.1, 0.1}), ValidationError);
    EXPECT_THROW(pauli_channel_model({"X"}, {0.1, 0.2}), ValidationError);
}

TEST(PauliModel, ConditionsHoldForRandomStringsProperty) {
    oracle::Rng rng(81);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> rate(0.01, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::string> labels;
        std::vector<double> gammas;
        for (int k = 0; k < 3; ++k) {
            std::string s;
            for (int q = 0; q < 2; ++q) s += "IXYZ"[pick(rng)];
            labels.push_back(s);
            gammas.push_back(rate(rng));
        }
        const ConditionReport r = check_conditions(pauli_channel_model(labels, gammas));
        EXPECT_TRUE(r.all_satisfied()) << r.failure_summary();
        EXPECT_NEAR(std::abs(r.nu), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(r.lambda_const), 0.0, 1e-12);
    }
}

TEST(Schwinger, JzSpectrumAndHamiltonian) {
    const LindbladModel m = schwinger_model(1.0, SchwingerAxis::Z, 1.0, 1);
    EXPECT_EQ(m.dim(), 4u);
    const Matrix& jz = m.lindblads[0];
    const double expected[] = {0.0, -0.5, 0.5, 0.0};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(jz(i, i).real(), expected[i], 1e-15);
        for (int j = 0; j < 4; ++j) {
            if (i != j) EXPECT_EQ(jz(i, j), cplx(0.0));
        }
    }
    // H = w(1 + n1 + n2): the first excited doublet sits at 2w.
    EXPECT_NEAR(m.hamiltonian(1, 1).real(), 2.0, 1e-15);
    EXPECT_NEAR(m.hamiltonian(2, 2).real(), 2.0, 1e-15);
    EXPECT_NEAR(m.hamiltonian(3, 3).real(), 3.0, 1e-15);
    const ConditionReport r = check_conditions(m);
    EXPECT_TRUE(r.all_satisfied());
    EXPECT_NEAR(std::abs(r.nu), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(r.lambda_const), 0.0, 1e-14);
    EXPECT_EQ(schwinger_model(1.0, SchwingerAxis::Z, 1.0, 2).dim(), 9u);
    EXPECT_THROW(schwinger_model(1.0, SchwingerAxis::Z, 1.0, 0), ValidationError);
}

TEST(Schwinger, AngularMomentumAlgebraOnSingleParticleSector) {
    const Matrix jx = schwinger_model(1.0, SchwingerAxis::X, 1.0).lindblads[0];
    const Matrix jy = schwinger_model(1.0, SchwingerAxis::Y, 1.0).lindblads[0];
    const Matrix jz = schwinger_model(1.0, SchwingerAxis::Z, 1.0).lindblads[0];
    const Matrix c = commutator(jx, jy) - kI * jz;
    // Restrict to span{|01>, |10>}.
    for (int i : {1, 2}) {
        for (int j : {1, 2}) EXPECT_NEAR(std::abs(c(i, j)), 0.0, 1e-12);
    }
    EXPECT_TRUE(is_hermitian(jx));
    EXPECT_TRUE(is_hermitian(jy));
}

TEST(DampedQho, StructureAndConditions) {
    const LindbladModel m = damped_qho_model(1.0, 1.0, 3);
    const ConditionReport r = check_conditions(m);
    EXPECT_TRUE(r.all_satisfied());
    EXPECT_EQ(r.f_kind, FKind::Saturating);
    EXPECT_NEAR(r.alpha, 1.0, 1e-12);
    const auto g = detect_group_structure(m);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->periods[0], 4u);
    EXPECT_EQ(g->thetas[0], 0.0);
}

TEST(DampedQho, RelaxesToGroundState) {
    const LindbladModel m = damped_qho_model(1.0, 1.0, 3);
    const DensityMatrix rho = exact_evolve(m, DensityMatrix::from_state(reference_initial_states().at("qho")), 40.0);
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-12);
}

TEST(DampedQho, SeriesAtFullOrderIsExactProperty) {
    const LindbladModel m = damped_qho_model(1.0, 1.0, 3);
    const ExactEvolver exact(m);
    oracle::Rng rng(82);
    const DensityMatrix rho0 = DensityMatrix::physical(oracle::random_density(4, rng));
    for (int k = 0; k <= 12; ++k) {
        const double t = 0.25 * k;
        const KrausSeries s = build_tp_series(m, t, 3);
        EXPECT_LT(trace_distance(apply_series(s, rho0).matrix(), exact.evolve(rho0, t).matrix()), 1e-9) << t;
    }
}

TEST(CatState, NormalizationAndParity) {
    const QuantumState cat = cat_state(1.2, 3);
    const Vector& v = cat.amplitudes();
    EXPECT_NEAR(v.norm(), 1.0, 1e-15);
    EXPECT_EQ(v(0), cplx(0.0));
    EXPECT_EQ(v(2), cplx(0.0));
    // Amplitude ratio a^3/sqrt(3!) : a/sqrt(1!).
    EXPECT_NEAR((v(3) / v(1)).real(), 1.44 / std::sqrt(6.0), 1e-14);
    const Matrix tau = parity_operator(3);
    EXPECT_NEAR((v.adjoint() * tau * v)(0, 0).real(), -1.0, 1e-15);
    EXPECT_THROW(cat_state(0.0, 3), ValidationError);
    EXPECT_THROW(cat_state(1.0, 2), ValidationError);
}

TEST(InitialStates, Amplitudes) {
    const auto s = reference_initial_states();
    ASSERT_EQ(s.size(), 3u);
    const Vector& pauli = s.at("pauli").amplitudes();
    EXPECT_NEAR(pauli(1).real(), -0.6, 1e-15);
    EXPECT_NEAR(pauli(3).real(), -0.8, 1e-15);
    const Vector& qho = s.at("qho").amplitudes();
    EXPECT_NEAR(qho(2).imag(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(qho(3).real(), 1.0 / std::sqrt(2.0), 1e-15);
    const Vector& sw = s.at("schwinger").amplitudes();
    EXPECT_NEAR(sw(1).imag(), 1.0 / std::sqrt(3.0), 1e-15);
    for (const auto& [name, st] : s) EXPECT_NEAR(st.amplitudes().norm(), 1.0, 1e-15) << name;
}

TEST(Presets, AllBuildAndSatisfyConditions) {
    const auto keys = preset_keys();
    EXPECT_EQ(keys.size(), 4u);
    for (const std::string& k : keys) {
        const ModelPreset p = make_preset(k);
        EXPECT_EQ(p.key, k);
        EXPECT_EQ(p.initial.dim(), p.model.dim());
        EXPECT_TRUE(check_conditions(p.model).all_satisfied()) << k;
        EXPECT_GT(p.num_times, 1u);
    }
    EXPECT_NEAR(check_conditions(make_preset("qho-cat").model).alpha, 0.6, 1e-12);
    const ModelPreset qho = make_preset("qho-damped");
    EXPECT_EQ(qho.t_max, 3.0);
    EXPECT_EQ(qho.num_times, 19u);
    const ModelPreset cat = make_preset("qho-cat");
    EXPECT_EQ(cat.t_max, 2.0);
    EXPECT_EQ(cat.num_times, 9u);
    EXPECT_THROW(make_preset("nope"), ValidationError);
}
