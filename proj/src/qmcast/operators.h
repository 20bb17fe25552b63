// Copyright 2026 The qmcast Authors
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

#ifndef QMCAST_OPERATORS_H
#define QMCAST_OPERATORS_H

#include <map>
#include <vector>

#include "qmcast/finite_field.h"
#include "qmcast/qudit_state.h"

namespace qmcast {

/// X_d^power = sum_k |k + power><k| (indices mod d).
Mat pauli_x(size_t d, int64_t power = 1);
/// Z_d^power = sum_k w^{power k} |k><k|, w = exp(2 pi i / d).
Mat pauli_z(size_t d, int64_t power = 1);
Vec pauli_z_diagonal(size_t d, int64_t power);

/// Z(t) = sum_x w^{Tr(x t)} |x><x| on a dimension-q register, w = exp(-2 pi i / p).
Mat gf_z(const FieldElement &t);
/// Z(c_1) (x) ... (x) Z(c_r) on the joint q^r register, as a diagonal.
Vec gf_z_diagonal(const FieldVector &c);

/// sum_j |j><j| (x) U_j on C^d (x) C^k, with U_j = I unless given in `blocks`.
Mat controlled(size_t d, size_t k, const std::map<size_t, Mat> &blocks);

/// Permutation matrix with |x> -> |perm[x]>.
Mat permutation_matrix(const std::vector<size_t> &perm);

/// Unitary mapping inputs[i] to outputs[i] for orthonormal families of equal
/// size. The rest of the space is mapped between the Gram-Schmidt complements
/// of the two families, each built from the computational basis in order.
Mat complete_unitary(const std::vector<Vec> &inputs, const std::vector<Vec> &outputs, size_t dim);

bool is_unitary(const Mat &m, double tol = 1e-10);

/// sum_k |k>|k> / sqrt(d).
Vec max_entangled(size_t d);
Vec basis_vector(size_t d, size_t k);

}  // namespace qmcast

#endif
