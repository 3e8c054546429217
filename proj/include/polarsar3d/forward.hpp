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

#ifndef POLARSAR3D_FORWARD_HPP
#define POLARSAR3D_FORWARD_HPP

#include <cstdint>
#include <vector>

#include "polarsar3d/geometry.hpp"
#include "polarsar3d/kgrid.hpp"
#include "polarsar3d/polarimetry.hpp"
#include "polarsar3d/types.hpp"

namespace polarsar3d::forward
{
    // Point scatterer at a continuous position with a full scattering
    // matrix.
    struct Scatterer
    {
        Vec3 pos;
        polarimetry::ScatteringMatrix matrix;
    };

    struct Scene
    {
        std::vector<Scatterer> scatterers;
    };

    // Polarization-blind scatterer for the classical fixed-polarization
    // model.
    struct ScalarScatterer
    {
        Vec3 pos;
        cdouble amplitude{0.0, 0.0};
    };

    // Complex measurement vector with the acquisition that produced it.
    // values[i] corresponds to acquisition.descriptors[i].
    struct Hologram
    {
        std::vector<cdouble> values;
        geometry::Acquisition acquisition;
    };

    // Three co-registered complex volumes on one image grid, linearized
    // x fastest, then y, then z.
    struct ThreeMaps
    {
        std::vector<cdouble> xx;
        std::vector<cdouble> yy;
        std::vector<cdouble> xy;
        kgrid::ImageGeometry geometry;
    };

    // Element cap for the dense oracle path (product of matrix dimensions).
    inline constexpr std::size_t dense_cap_default = std::size_t{1} << 24;

    // Simulates the hologram of a continuous scene:
    //   S_i = sum_n coeff_n(i) * exp(-2i*k_i*(khat_i . r_n)) + eps_i
    // with coeff_n the effective polarimetric coefficient and eps circular
    // complex Gaussian noise (std noise_sigma/sqrt(2) per component) from a
    // per-measurement seeded generator; identical inputs give bit-identical
    // holograms for any thread count.
    Hologram simulate_hologram(const Scene &scene, const geometry::Acquisition &acq,
                               double noise_sigma, std::uint64_t seed);

    // Matrix-free discrete forward operator: per map, modulate by the
    // k-center ramp, apply the unitary DFT, read the spectrum at the sample
    // locations, weight by w_k(i), and sum the three maps. Noise-free.
    std::vector<cdouble> apply_forward(const ThreeMaps &maps, const geometry::Acquisition &acq,
                                       const kgrid::KGrid &grid);

    // Exact adjoint of apply_forward under the standard complex inner
    // products.
    ThreeMaps apply_adjoint(const std::vector<cdouble> &values, const geometry::Acquisition &acq,
                            const kgrid::KGrid &grid);

    // Explicit M x 3N operator matrix (oracle only): entry (i, (k, n)) is
    //   w_k(i)/sqrt(N) * exp(+i*q_i . r_n)
    // with column blocks xx, yy, xy matching the map vectorization. Refuses
    // to allocate more than cap elements (size_cap_error).
    ComplexMatrix dense_matrix(const geometry::Acquisition &acq,
                               const kgrid::ImageGeometry &geom,
                               std::size_t cap = dense_cap_default);

    // Classical fixed-polarization hologram S_i = sum_n s_n *
    // exp(-2i*k_i*(khat_i . r_n)); equals simulate_hologram with
    // s_xx = s_yy = s_n, s_xy = 0 for co-polarized acquisitions.
    Hologram classical_ms_hologram(const std::vector<ScalarScatterer> &scatterers,
                                   const geometry::Acquisition &acq);

} // namespace polarsar3d::forward

#endif
