// SPDX-License-Identifier: Apache-2.0
//
// wtd - MIMO wiretap decompositions, secrecy capacity and layered transceiver planning
// Copyright (C) 2026 The wtd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WTD_CORE_HPP
#define WTD_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace wtd
{
    using cplx = std::complex<double>;
    using Matrix = Eigen::MatrixXcd;
    using ComplexVector = Eigen::VectorXcd;
    using RealVector = Eigen::VectorXd;

    // Numerical thresholds shared by all modules. Relative quantities are
    // measured against the Frobenius norm of the operand.
    namespace tol
    {
        inline constexpr double reconstruction = 1e-9;
        inline constexpr double majorization = 1e-9; // relative, applied in the log domain
        inline constexpr double rank = 1e-12;
        inline constexpr double unitary_input = 1e-8;
        inline constexpr double hermitian = 1e-10;
        inline constexpr double psd_clamp = 1e-10;
        inline constexpr double gsv_unity = 1e-9; // mu^2 > 1 + gsv_unity counts as "greater than one"
    }

    enum class ErrorCode
    {
        domain,
        rank_deficient,
        majorization,
        not_psd,
        numerical_failure,
        insufficient_samples
    };

    const char *to_string(ErrorCode code) noexcept;

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    // Raised by gtd/gmd when the target diagonal is not majorized by the singular values.
    // `prefix()` is the 1-based length of the first failing prefix product; it equals
    // the vector length when only the total products disagree.
    class MajorizationError : public Error
    {
    public:
        MajorizationError(std::size_t prefix, const std::string &what)
            : Error(ErrorCode::majorization, what), prefix_(prefix) {}
        std::size_t prefix() const noexcept { return prefix_; }

    private:
        std::size_t prefix_;
    };

    [[noreturn]] void fail(ErrorCode code, const std::string &what);

    // Matrix helpers used throughout the library.
    double unitarity_error(const Matrix &u);                    // ||U^H U - I||_F
    double hermitian_error(const Matrix &a);                    // ||A - A^H||_F
    double relative_residual(const Matrix &approx, const Matrix &exact);
    bool is_generalized_upper_triangular(const Matrix &t);      // exact zeros below the diagonal
    Matrix generalized_diagonal(Eigen::Index rows, Eigen::Index cols, const RealVector &diag);

    // Completes an M x N matrix with orthonormal columns to an M x M unitary
    // matrix whose first N columns are exactly `cols`.
    Matrix complete_unitary(const Matrix &cols);
}

#endif
