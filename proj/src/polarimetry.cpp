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

#include <cmath>
#include <sstream>

#include "polarsar3d/errors.hpp"
#include "polarsar3d/geometry.hpp"
#include "polarsar3d/polarimetry.hpp"

namespace polarsar3d::polarimetry
{
    double kappa(double theta, double phi)
    {
        double ct = std::cos(theta);
        double sp = std::sin(phi), cp = std::cos(phi);
        return ct * ct * cp * cp + sp * sp;
    }

    namespace
    {
        double guarded_kappa(double theta, double phi)
        {
            double K = kappa(theta, phi);
            if (K <= kappa_min)
            {
                std::ostringstream msg;
                msg << "mode weights: antenna frame singular at theta=" << rad2deg(theta)
                    << " deg, phi=" << rad2deg(phi) << " deg (K=" << K << ")";
                throw frame_singularity_error(msg.str());
            }
            return K;
        }
    } // namespace

    ModeWeights closed_form_weights(double theta, double phi, Mode mode)
    {
        double K = guarded_kappa(theta, phi);
        double ct = std::cos(theta);
        double sp = std::sin(phi), cp = std::cos(phi);
        double c2 = ct * ct * cp * cp;
        double s2 = sp * sp;
        double cs2 = ct * 2.0 * sp * cp; // cos(t)*sin(2p)

        ModeWeights w;
        switch (mode)
        {
        case Mode::HH:
            w = {c2 / K, s2 / K, cs2 / K};
            break;
        case Mode::VV:
            w = {s2 / K, c2 / K, -cs2 / K};
            break;
        case Mode::HV:
            w = {0.5 * cs2 / K, -0.5 * cs2 / K, -(c2 - s2) / K};
            break;
        }
        return w;
    }

    ModeWeights projection_composed_weights(double theta, double phi, Mode mode)
    {
        auto [ae, be] = geometry::jones_projection(
            theta, phi, mode == Mode::VV ? AntennaPol::V : AntennaPol::H);
        auto [ar, br] = geometry::jones_projection(
            theta, phi, mode == Mode::HH ? AntennaPol::H : AntennaPol::V);

        return {ar * ae, br * be, ar * be + br * ae};
    }

    cdouble effective_coefficient(const ScatteringMatrix &S, double theta, double phi, Mode mode)
    {
        ModeWeights w = closed_form_weights(theta, phi, mode);
        return w.xx * S.xx + w.yy * S.yy + w.xy * S.xy;
    }

    ModeWeights inversion_weights(double theta, double phi, Mode mode)
    {
        ModeWeights w = closed_form_weights(theta, phi, mode);
        double n2 = w.norm2();
        if (!(n2 > 0.0))
            throw error("inversion_weights: weight vector vanished, which the "
                        "admissible domain precludes");
        return {w.xx / n2, w.yy / n2, w.xy / n2};
    }

} // namespace polarsar3d::polarimetry
