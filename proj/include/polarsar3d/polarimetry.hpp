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

#ifndef POLARSAR3D_POLARIMETRY_HPP
#define POLARSAR3D_POLARIMETRY_HPP

#include "polarsar3d/types.hpp"

namespace polarsar3d::polarimetry
{
    // Symmetric 2x2 scattering matrix of a point scatterer in the target
    // frame; the off-diagonal element is stored once (monostatic
    // reciprocity).
    struct ScatteringMatrix
    {
        cdouble xx{0.0, 0.0};
        cdouble yy{0.0, 0.0};
        cdouble xy{0.0, 0.0};
    };

    // Real weights mixing the xx/yy/xy maps into one measurement.
    struct ModeWeights
    {
        double xx = 0.0;
        double yy = 0.0;
        double xy = 0.0;

        double norm2() const { return xx * xx + yy * yy + xy * xy; }
    };

    // Frame normalizer K = cos^2(t)cos^2(p) + sin^2(p), in [0, 1].
    double kappa(double theta, double phi);

    // Closed-form mode weights for the given look angles.
    // HH: (cos^2 t cos^2 p, sin^2 p, cos t sin 2p) / K
    // VV: (sin^2 p, cos^2 t cos^2 p, -cos t sin 2p) / K
    // HV: (cos t sin 2p / 2, -cos t sin 2p / 2, -(cos^2 t cos^2 p - sin^2 p)) / K
    // Throws frame_singularity_error when K <= kappa_min.
    ModeWeights closed_form_weights(double theta, double phi, Mode mode);

    // Same weights computed through the bilinear form of the antenna-frame
    // projections: w_xx = a_R a_E, w_yy = b_R b_E, w_xy = a_R b_E + b_R a_E
    // with (a, b) the jones_projection pairs. Agrees with
    // closed_form_weights to 1e-12; kept as an independent derivation for
    // cross-checking.
    ModeWeights projection_composed_weights(double theta, double phi, Mode mode);

    // Effective scalar coefficient seen by one measurement:
    // w_xx*s_xx + w_yy*s_yy + w_xy*s_xy.
    cdouble effective_coefficient(const ScatteringMatrix &S, double theta, double phi, Mode mode);

    // Per-map reconstruction weights pi_k = w_k / (w_xx^2 + w_yy^2 + w_xy^2).
    // Satisfies sum_k w_k*pi_k = 1 for every admissible descriptor.
    ModeWeights inversion_weights(double theta, double phi, Mode mode);

} // namespace polarsar3d::polarimetry

#endif
