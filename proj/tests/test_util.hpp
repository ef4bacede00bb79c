// Copyright 2026 The povmf Authors
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

#pragma once

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "povmf/error.hpp"
#include "povmf/operator_algebra.hpp"

namespace povmf::test {

inline const Complex kI{0.0, 1.0};

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Matrix pauli_x() { return mat2(0, 1, 1, 0); }
inline Matrix pauli_y() { return mat2(0, -kI, kI, 0); }
inline Matrix pauli_z() { return mat2(1, 0, 0, -1); }
inline Matrix proj0() { return mat2(1, 0, 0, 0); }
inline Matrix proj1() { return mat2(0, 0, 0, 1); }
inline Matrix proj_plus() { return mat2(0.5, 0.5, 0.5, 0.5); }
inline Matrix proj_minus() { return mat2(0.5, -0.5, -0.5, 0.5); }

inline Matrix swap4() {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
    return s;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace povmf::test

#define EXPECT_MATRIX_NEAR(a, b, tol) EXPECT_LE(::povmf::test::max_abs((a) - (b)), (tol))

#define EXPECT_POVMF_ERROR(stmt, expected_code)                                  \
    do {                                                                         \
        try {                                                                    \
            stmt;                                                                \
            ADD_FAILURE() << "expected " << ::povmf::to_string(expected_code);   \
        } catch (const ::povmf::Error& e) {                                      \
            EXPECT_EQ(e.code(), expected_code) << e.what();                      \
        }                                                                        \
    } while (0)
