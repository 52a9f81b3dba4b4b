// Copyright 2026 The Qlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLAB_TYPES_HPP_
#define QLAB_TYPES_HPP_

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qlab {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Tolerances shared by all modules.
inline constexpr double kConstructTol = 1e-12;
inline constexpr double kCompareTol = 1e-10;
inline constexpr double kRankTol = 1e-8;

// Hard cap on the number of amplitudes of any dense state.
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 21;

inline constexpr cplx kI{0.0, 1.0};

}  // namespace qlab

#endif  // QLAB_TYPES_HPP_
