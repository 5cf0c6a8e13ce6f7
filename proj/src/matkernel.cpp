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

#include "oqsim/matkernel.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <vector>

namespace oqsim {

namespace {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

void require_square(const Matrix& a, const char* what) {
    if (!is_square(a)) {
        throw ValidationError(std::string(what) + ": matrix must be square");
    }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError(std::string(what) + ": dimension mismatch");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw ValidationError("QuantumState: empty amplitude vector");
    }
    if (!amplitudes_.allFinite()) {
        throw ValidationError("QuantumState: non-finite amplitude");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > tol::kStateNorm) {
        throw ValidationError("QuantumState: amplitudes are not normalized");
    }
}

QuantumState QuantumState::normalized(const Vector& amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw ValidationError("QuantumState: cannot normalize a zero or non-finite vector");
    }
    return QuantumState(amplitudes / n);
}

QuantumState QuantumState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw ValidationError("QuantumState::basis: index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return QuantumState(std::move(v));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::physical(const Matrix& m, double tolerance) {
    DensityMatrix out = raw(m);
    if (!out.satisfies_physical(tolerance)) {
        throw ValidationError("DensityMatrix: matrix is not a physical density matrix");
    }
    out.matrix_ = hermitian_part(m);
    out.raw_ = false;
    return out;
}

DensityMatrix DensityMatrix::raw(const Matrix& m) {
    require_square(m, "DensityMatrix");
    if (m.rows() == 0) {
        throw ValidationError("DensityMatrix: empty matrix");
    }
    if (!all_finite(m)) {
        throw ValidationError("DensityMatrix: non-finite entry");
    }
    return DensityMatrix(m, true);
}

DensityMatrix DensityMatrix::from_state(const QuantumState& psi) {
    const Vector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint(), false);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(dim), false);
}

bool DensityMatrix::satisfies_physical(double tolerance) const {
    if (!is_hermitian(matrix_, tolerance)) {
        return false;
    }
    if (std::abs(matrix_.trace() - cplx(1.0)) > tolerance) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(matrix_), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tolerance;
}

// ---------------------------------------------------------------------------
// Matrix functions

Matrix matexp(const Matrix& a) {
    require_square(a, "matexp");
    if (!all_finite(a)) {
        throw ValidationError("matexp: non-finite entry");
    }
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 > tol::kMaxExpNorm) {
        throw ValidationError("matexp: norm exceeds the supported range");
    }
    return a.exp();
}

HermitianEigen herm_eig(const Matrix& h) {
    require_square(h, "herm_eig");
    if (!is_hermitian(h)) {
        throw ValidationError("herm_eig: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
    if (es.info() != Eigen::Success) {
        throw NumericalError("herm_eig: eigensolver did not converge");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

Matrix psd_sqrt(const Matrix& a) {
    const HermitianEigen eig = herm_eig(a);
    if (eig.values.size() > 0 && eig.values.minCoeff() < -tol::kPsdReject) {
        throw NumericalError("psd_sqrt: matrix is not positive semidefinite");
    }
    const RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * roots.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

Matrix pinv(const Matrix& a, double rcond) {
    if (!(rcond > 0.0 && rcond < 1.0)) {
        throw ValidationError("pinv: rcond must lie in (0, 1)");
    }
    if (a.size() == 0) {
        return Matrix(a.cols(), a.rows());
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    const double cutoff = rcond * s(0);
    RealVector inv = RealVector::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff) {
            inv(i) = 1.0 / s(i);
        }
    }
    return svd.matrixV() * inv.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
}

Matrix clip_to_physical(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
    RealVector values = es.eigenvalues().cwiseMax(0.0);
    const double total = values.sum();
    if (!(total > 1e-14)) {
        throw NumericalError("clip_to_physical: no positive spectral weight remains");
    }
    values /= total;
    return es.eigenvectors() * values.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Square-root factor B (d x k) of a PSD matrix, B B^+ = m, keeping only the
// eigenvalues above a relative floor so rank-deficient inputs stay exact.
Matrix support_root(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const RealVector& w = es.eigenvalues();
    const double floor = 1e-13 * std::max(w.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) > floor) {
            keep.push_back(i);
        }
    }
    Matrix b(m.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        b.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) * std::sqrt(w(keep[c]));
    }
    return b;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.matrix(), sigma.matrix(), "fidelity");
    const Matrix r = rho.is_raw() ? clip_to_physical(rho.matrix()) : hermitian_part(rho.matrix());
    const Matrix s = sigma.is_raw() ? clip_to_physical(sigma.matrix()) : hermitian_part(sigma.matrix());
    // Tr sqrt(sqrt(r) s sqrt(r)) equals Tr sqrt(B^+ s B) for any B B^+ = r; the
    // lower-rank argument gives the smaller, better conditioned core.
    Matrix br = support_root(r);
    Matrix bs = support_root(s);
    const bool use_r = br.cols() <= bs.cols();
    const Matrix& b = use_r ? br : bs;
    const Matrix& other = use_r ? s : r;
    const Matrix core = hermitian_part(b.adjoint() * other * b);
    Eigen::SelfAdjointEigenSolver<Matrix> es(core, Eigen::EigenvaluesOnly);
    const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(rho.matrix()), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 0.0) {
            s -= p * std::log(p);
        }
    }
    return std::max(s, 0.0);
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
    require_same_dim(rho, sigma, "trace_distance");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(rho - sigma), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return trace_distance(rho.matrix(), sigma.matrix());
}

// ---------------------------------------------------------------------------
// Helpers

bool is_square(const Matrix& a) {
    return a.rows() == a.cols();
}

bool is_hermitian(const Matrix& a, double tolerance) {
    if (!is_square(a)) {
        return false;
    }
    return max_abs_entry(a - a.adjoint()) <= tolerance;
}

Matrix hermitian_part(const Matrix& a) {
    return 0.5 * (a + a.adjoint());
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

cplx frobenius_inner(const Matrix& a, const Matrix& b) {
    return (a.adjoint() * b).trace();
}

double spectral_norm(const Matrix& a) {
    if (a.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

double max_abs_entry(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

Vector vec(const Matrix& rho) {
    const Eigen::Index d = rho.rows();
    Vector v(d * rho.cols());
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            v(i * rho.cols() + j) = rho(i, j);
        }
    }
    return v;
}

Matrix unvec(const Vector& v, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    if (v.size() != d * d) {
        throw ValidationError("unvec: vector length is not dim^2");
    }
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = v(i * d + j);
        }
    }
    return m;
}

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t log2_exact(std::size_t n) {
    if (!is_power_of_two(n)) {
        throw ValidationError("dimension " + std::to_string(n) + " is not a power of two");
    }
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

Matrix pauli(char label) {
    Matrix m = Matrix::Zero(2, 2);
    switch (label) {
        case 'I':
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case 'X':
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 'Y':
            m(0, 1) = -kI;
            m(1, 0) = kI;
            break;
        case 'Z':
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw ValidationError(std::string("invalid Pauli label '") + label + "'");
    }
    return m;
}

Matrix pauli_string(std::string_view label) {
    if (label.empty()) {
        throw ValidationError("empty Pauli string");
    }
    Matrix m = pauli(label.front());
    for (std::size_t q = 1; q < label.size(); ++q) {
        m = kron(m, pauli(label[q]));
    }
    return m;
}

std::string pauli_label(std::size_t index, std::size_t num_qubits) {
    static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
    std::string s(num_qubits, 'I');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        s[num_qubits - 1 - q] = kLetters[index % 4];
        index /= 4;
    }
    return s;
}

}  // namespace oqsim
