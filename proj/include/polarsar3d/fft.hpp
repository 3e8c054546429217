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

#ifndef POLARSAR3D_FFT_HPP
#define POLARSAR3D_FFT_HPP

#include <vector>

#include "polarsar3d/types.hpp"

namespace polarsar3d::fft
{
    // Unitary centered 3-D DFT pair. Indices are centered at h = N/2 per
    // axis, so with u = m - h and v = n - h:
    //
    //   to_spectrum:  X[m] = 1/sqrt(Ntot) * sum_n x[n] * exp(+2i*pi*(u.v/N))
    //   to_image:     x[n] = 1/sqrt(Ntot) * sum_m X[m] * exp(-2i*pi*(u.v/N))
    //
    // The two are exact inverses (and adjoints) of each other; centering is
    // done by circular index rotations, so no phase-factor roundoff enters.
    // Arrays are linearized x fastest, then y, then z. Both run serially and
    // deterministically; they are safe to call from multiple threads.

    std::vector<cdouble> to_spectrum(const std::vector<cdouble> &image, const Dims3 &dims);

    std::vector<cdouble> to_image(const std::vector<cdouble> &spectrum, const Dims3 &dims);

} // namespace polarsar3d::fft

#endif
