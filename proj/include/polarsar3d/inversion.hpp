// SPDX-License-Identifier: Apache-2.0
//
// polarsar3d - 3D radar imaging from polarization-diverse measurements
// Copyright (C) 2026 polarsar3d contributors
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

#ifndef POLARSAR3D_INVERSION_HPP
#define POLARSAR3D_INVERSION_HPP

#include <cstddef>
#include <vector>

#include "polarsar3d/forward.hpp"
#include "polarsar3d/geometry.hpp"
#include "polarsar3d/kgrid.hpp"
#include "polarsar3d/types.hpp"

namespace polarsar3d::inversion
{
    // Condition-number ceiling for the dense Gram solve.
    inline constexpr double condition_limit = 1e12;

    struct StageTimings
    {
        double weights_s = 0.0;
        double regrid_s = 0.0;
        double fft_s = 0.0;
        double residual_s = 0.0;
        double total_s = 0.0;
    };

    struct ReconstructionReport
    {
        forward::ThreeMaps maps;
        double residual_norm = 0.0;      // ||S - A*shat||
        double data_fit_relative = 0.0;  // residual_norm / ||S||
        StageTimings timings;
    };

    // Fast minimum-norm least-squares reconstruction of the three maps:
    // weight each measurement by pi_k, regrid per map (coincident cells
    // average), inverse unitary DFT, demodulate the k-center ramp. The
    // residual is evaluated with apply_forward on the result. On nearest-
    // mode acquisitions whose samples sit on distinct grid nodes the data
    // fit is exact; with linear interpolation it is an approximation and
    // data_fit_relative reports the level.
    ReconstructionReport mnls_fast(const forward::Hologram &holo, const kgrid::KGrid &grid);

    // Dense oracle: builds the explicit operator A, solves (A A^H)u = S by a
    // dense factorization and returns A^H u. Caps both A and the Gram matrix
    // at cap elements (size_cap_error) and refuses condition estimates above
    // condition_limit (conditioning_error naming near-duplicate rows).
    forward::ThreeMaps mnls_dense(const forward::Hologram &holo,
                                  const kgrid::ImageGeometry &geom,
                                  std::size_t cap = forward::dense_cap_default);

    // General constrained quadratic minimum-norm solution: minimizes
    // x^H Q x subject to A x = c, via xhat = Q^-1 A^H (A Q^-1 A^H)^-1 c.
    // Q must be positive definite and A full row rank (invalid_input_error
    // otherwise). When A is square this reduces to xhat = A^-1 c.
    std::vector<cdouble> constrained_min_norm(const ComplexMatrix &Q, const ComplexMatrix &A,
                                              const std::vector<cdouble> &c);

    // Diagonal of A A^H for an acquisition whose samples sit on distinct
    // grid nodes: w_xx^2 + w_yy^2 + w_xy^2 per measurement. Off-node or
    // duplicated samples break the diagonality and throw
    // identity_violated_error.
    std::vector<double> aadagger_diagonal(const geometry::Acquisition &acq,
                                          const kgrid::KGrid &grid);

    // Squared misfit ||S - A*maps||^2 evaluated with apply_forward.
    double ls_residual(const forward::ThreeMaps &maps, const forward::Hologram &holo,
                       const kgrid::KGrid &grid);

} // namespace polarsar3d::inversion

#endif
