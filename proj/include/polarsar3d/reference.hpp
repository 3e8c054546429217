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

#ifndef POLARSAR3D_REFERENCE_HPP
#define POLARSAR3D_REFERENCE_HPP

#include <cstdint>
#include <vector>

#include "polarsar3d/forward.hpp"
#include "polarsar3d/geometry.hpp"
#include "polarsar3d/kgrid.hpp"
#include "polarsar3d/types.hpp"

namespace polarsar3d::ref
{
    // Serial reference implementations of the parallel kernels. They share
    // the per-measurement arithmetic with the parallel versions and differ
    // only in scheduling, so results must match bit-exactly for any thread
    // count. Kept for testing and for the benchmark tool.

    forward::Hologram simulate_hologram(const forward::Scene &scene,
                                        const geometry::Acquisition &acq,
                                        double noise_sigma, std::uint64_t seed);

    std::vector<cdouble> apply_forward(const forward::ThreeMaps &maps,
                                       const geometry::Acquisition &acq,
                                       const kgrid::KGrid &grid);

    forward::ThreeMaps apply_adjoint(const std::vector<cdouble> &values,
                                     const geometry::Acquisition &acq,
                                     const kgrid::KGrid &grid);

    kgrid::GriddedSpectrum regrid(const std::vector<cdouble> &values,
                                  const std::vector<double> &weights,
                                  const geometry::Acquisition &acq, const kgrid::KGrid &grid);

    std::vector<cdouble> extract(const std::vector<cdouble> &grid_values,
                                 const geometry::Acquisition &acq, const kgrid::KGrid &grid);

} // namespace polarsar3d::ref

#endif
