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

#include <cmath>

#include "oqsim/circuits.hpp"

namespace oqsim {

namespace {

bool compatible(const std::string& pauli, const std::string& basis) {
    for (std::size_t q = 0; q < pauli.size(); ++q) {
        if (pauli[q] != 'I' && pauli[q] != basis[q]) {
            return false;
        }
    }
    return true;
}

double parity_expectation(const std::map<std::string, double>& dist, const std::string& pauli) {
    double e = 0.0;
    for (const auto& [bits, p] : dist) {
        int parity = 0;
        for (std::size_t q = 0; q < pauli.size(); ++q) {
            if (pauli[q] != 'I' && bits[q] == '1') {
                parity ^= 1;
            }
        }
        e += parity ? -p : p;
    }
    return e;
}

}  // namespace

std::vector<std::string> pauli_bases(std::size_t num_qubits) {
    static constexpr char kAxes[] = {'X', 'Y', 'Z'};
    std::size_t count = 1;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        count *= 3;
    }
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string s(num_qubits, 'Z');
        std::size_t rest = i;
        for (std::size_t q = num_qubits; q-- > 0;) {
            s[q] = kAxes[rest % 3];
            rest /= 3;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<double> pauli_expectations(const std::vector<ShotResult>& results, std::size_t num_qubits) {
    std::map<std::string, std::map<std::string, double>> by_basis;
    for (const ShotResult& r : results) {
        if (r.basis.size() != num_qubits) {
            throw ValidationError("tomography: inconsistent qubit counts");
        }
        by_basis[r.basis] = r.distribution();
    }
    for (const std::string& b : pauli_bases(num_qubits)) {
        if (by_basis.find(b) == by_basis.end()) {
            throw ValidationError("tomography: missing measurement basis " + b);
        }
    }
    const std::size_t count = std::size_t{1} << (2 * num_qubits);
    std::vector<double> out(count, 0.0);
    out[0] = 1.0;
    for (std::size_t idx = 1; idx < count; ++idx) {
        const std::string p = pauli_label(idx, num_qubits);
        double sum = 0.0;
        std::size_t used = 0;
        for (const auto& [basis, dist] : by_basis) {
            if (compatible(p, basis)) {
                sum += parity_expectation(dist, p);
                ++used;
            }
        }
        out[idx] = sum / static_cast<double>(used);
    }
    return out;
}

DensityMatrix tomography(const std::vector<TermResults>& terms, std::size_t num_qubits) {
    if (terms.empty()) {
        throw ValidationError("tomography: no terms");
    }
    const std::size_t count = std::size_t{1} << (2 * num_qubits);
    std::vector<double> total(count, 0.0);
    for (const TermResults& term : terms) {
        if (!(term.weight_sq >= 0.0)) {
            throw ValidationError("tomography: weights must be non-negative");
        }
        const std::vector<double> e = pauli_expectations(term.results, num_qubits);
        double survival = 0.0;
        for (const ShotResult& r : term.results) {
            survival += r.accepted_fraction;
        }
        survival /= static_cast<double>(term.results.size());
        const double scale = term.weight_sq * survival;
        for (std::size_t i = 0; i < count; ++i) {
            total[i] += scale * e[i];
        }
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    Matrix rho = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < count; ++i) {
        if (total[i] != 0.0) {
            rho += total[i] * pauli_string(pauli_label(i, num_qubits));
        }
    }
    rho /= static_cast<double>(dim);
    return DensityMatrix::raw(hermitian_part(rho));
}

}  // namespace oqsim
