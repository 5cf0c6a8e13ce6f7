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

// Dense complex linear algebra shared by every other module: matrix
// functions, Hermitian spectra, state containers and distance measures.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include "oqsim/errors.hpp"

namespace oqsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

namespace tol {
/// Max |A - A^dagger| entry accepted as Hermitian.
inline constexpr double kHermitian = 1e-10;
/// Max |Tr(rho) - 1| for a physical density matrix.
inline constexpr double kTrace = 1e-10;
/// Eigenvalues above -kEigenFloor count as non-negative.
inline constexpr double kEigenFloor = 1e-10;
/// Max |<psi|psi> - 1| for a pure state.
inline constexpr double kStateNorm = 1e-12;
/// Eigenvalues below -kPsdReject mean the input is genuinely not PSD.
inline constexpr double kPsdReject = 1e-6;
/// matexp refuses inputs with a larger 1-norm.
inline constexpr double kMaxExpNorm = 1e4;
/// Default relative cutoff for the pseudoinverse.
inline constexpr double kPinvRcond = 1e-12;
}  // namespace tol

/// Normalized pure state |psi>.
class QuantumState {
  public:
    /// Throws ValidationError unless the 2-norm is 1 within tol::kStateNorm.
    explicit QuantumState(Vector amplitudes);

    /// Rescales a nonzero vector to unit norm.
    static QuantumState normalized(const Vector& amplitudes);
    static QuantumState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }
    cplx operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  private:
    Vector amplitudes_;
};

/// Density matrix with an explicit physicality flag.
///
/// Physical matrices are Hermitian, unit-trace and PSD (within the tol::
/// constants). Raw matrices carry tomography and mitigation intermediates
/// that may violate positivity until they are projected.
class DensityMatrix {
  public:
    /// Validates Hermiticity, trace and spectrum against `tolerance`.
    static DensityMatrix physical(const Matrix& m, double tolerance = tol::kHermitian);
    /// No validation beyond squareness and finiteness.
    static DensityMatrix raw(const Matrix& m);
    static DensityMatrix from_state(const QuantumState& psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    bool is_raw() const { return raw_; }
    cplx operator()(std::size_t i, std::size_t j) const {
        return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    /// True when the matrix satisfies the physical invariants within `tolerance`.
    bool satisfies_physical(double tolerance = tol::kHermitian) const;

  private:
    DensityMatrix(Matrix m, bool raw) : matrix_(std::move(m)), raw_(raw) {}

    Matrix matrix_;
    bool raw_ = false;
};

struct HermitianEigen {
    RealVector values;  // ascending
    Matrix vectors;     // columns are eigenvectors
};

// ---------------------------------------------------------------------------
// Matrix functions

/// e^A by scaling-and-squaring with a Pade approximant.
Matrix matexp(const Matrix& a);

/// Eigendecomposition of a Hermitian matrix; the input is symmetrized first.
HermitianEigen herm_eig(const Matrix& h);

/// Principal square root of a PSD Hermitian matrix. Small negative
/// eigenvalues are clipped; anything below -tol::kPsdReject throws.
Matrix psd_sqrt(const Matrix& a);

/// Moore-Penrose pseudoinverse via SVD.
Matrix pinv(const Matrix& a, double rcond = tol::kPinvRcond);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 in [0, 1].
/// Raw inputs are projected to the nearest physical state first.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// -sum lambda ln lambda, in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// (1/2) sum |eig(rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Matrix& rho, const Matrix& sigma);

/// Clip negative eigenvalues to zero and renormalize to unit trace.
/// Throws NumericalError if nothing positive remains.
Matrix clip_to_physical(const Matrix& m);

// ---------------------------------------------------------------------------
// Small helpers

bool is_square(const Matrix& a);
bool is_hermitian(const Matrix& a, double tolerance = tol::kHermitian);
Matrix hermitian_part(const Matrix& a);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
/// Frobenius inner product Tr(A^dagger B).
cplx frobenius_inner(const Matrix& a, const Matrix& b);
/// Largest singular value.
double spectral_norm(const Matrix& a);
double max_abs_entry(const Matrix& a);

/// Row-major vectorization: vec(rho)[i*d + j] = rho(i, j).
Vector vec(const Matrix& rho);
Matrix unvec(const Vector& v, std::size_t dim);

bool is_power_of_two(std::size_t n);
std::size_t log2_exact(std::size_t n);

// ---------------------------------------------------------------------------
// Pauli algebra. Qubit 0 is the leftmost character / most significant bit.

Matrix pauli(char label);
/// Tensor product for a label such as "IXZ". Throws on invalid characters.
Matrix pauli_string(std::string_view label);
/// Label of the Pauli string with base-4 index `index` (I=0, X=1, Y=2, Z=3).
std::string pauli_label(std::size_t index, std::size_t num_qubits);

}  // namespace oqsim
