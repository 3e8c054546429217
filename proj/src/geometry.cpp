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
#include <cstdlib>
#include <sstream>

#include "polarsar3d/errors.hpp"
#include "polarsar3d/geometry.hpp"
#include "polarsar3d/polarimetry.hpp"

namespace polarsar3d::geometry
{
    SweepSpec parse_sweep(const std::string &text)
    {
        auto parse_num = [&](const std::string &part) {
            char *end = nullptr;
            double v = std::strtod(part.c_str(), &end);
            if (end == part.c_str() || *end != '\0')
                throw invalid_input_error("sweep: cannot parse number '" + part + "' in '" + text + "'");
            return v;
        };

        auto c1 = text.find(':');
        if (c1 == std::string::npos)
        {
            double v = parse_num(text);
            return {v, 1.0, v};
        }
        auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
            throw invalid_input_error("sweep: expected start:step:stop, got '" + text + "'");

        SweepSpec spec;
        spec.start = parse_num(text.substr(0, c1));
        spec.step = parse_num(text.substr(c1 + 1, c2 - c1 - 1));
        spec.stop = parse_num(text.substr(c2 + 1));
        return spec;
    }

    std::size_t sweep_count(const SweepSpec &spec)
    {
        if (!(spec.step > 0.0))
            throw invalid_input_error("sweep: step must be > 0");
        if (spec.stop < spec.start)
            throw invalid_input_error("sweep: stop must be >= start");

        double ratio = (spec.stop - spec.start) / spec.step;
        double rounded = std::round(ratio);
        if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, std::abs(ratio)))
            return static_cast<std::size_t>(rounded) + 1;
        return static_cast<std::size_t>(std::floor(ratio)) + 1;
    }

    std::vector<double> sweep_values(const SweepSpec &spec)
    {
        std::size_t n = sweep_count(spec);
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i)
            vals[i] = spec.start + static_cast<double>(i) * spec.step;
        return vals;
    }

    std::pair<Vec3, double> wave_vector(double theta, double phi, double freq)
    {
        if (!(freq > 0.0))
            throw invalid_input_error("wave_vector: frequency must be > 0 Hz");

        double st = std::sin(theta), ct = std::cos(theta);
        double sp = std::sin(phi), cp = std::cos(phi);
        Vec3 dir{-st * cp, -st * sp, -ct};
        double k = 2.0 * pi * freq / speed_of_light;
        return {dir, k};
    }

    Vec3 jones_emission(double theta, double phi, AntennaPol pol)
    {
        double st = std::sin(theta), ct = std::cos(theta);
        double sp = std::sin(phi), cp = std::cos(phi);
        if (pol == AntennaPol::H)
            return {-ct * cp, -ct * sp, st};
        return {-sp, cp, 0.0};
    }

    namespace
    {
        double checked_kappa(double theta, double phi, const char *where)
        {
            double K = polarimetry::kappa(theta, phi);
            if (K <= kappa_min)
            {
                std::ostringstream msg;
                msg << where << ": antenna frame singular at theta=" << rad2deg(theta)
                    << " deg, phi=" << rad2deg(phi) << " deg (K=" << K << ")";
                throw frame_singularity_error(msg.str());
            }
            return K;
        }
    } // namespace

    AntennaFrame antenna_frame(double theta, double phi)
    {
        double K = checked_kappa(theta, phi, "antenna_frame");
        double st = std::sin(theta), ct = std::cos(theta);
        double sp = std::sin(phi), cp = std::cos(phi);

        // Closed forms, defined at theta = 0 where the cross-product
        // construction degenerates.
        Vec3 x0{ct * cp, ct * sp, -st};
        Vec3 y0{-sp, cp, 0.0};
        Vec3 z0{st * cp, st * sp, ct};

        double rk = 1.0 / std::sqrt(K);
        AntennaFrame frame;
        frame.x_prime = rk * (ct * cp * x0 - sp * y0);
        frame.y_prime = rk * (sp * x0 + ct * cp * y0);
        frame.z_prime = z0;
        return frame;
    }

    std::pair<double, double> jones_projection(double theta, double phi, AntennaPol pol)
    {
        double K = checked_kappa(theta, phi, "jones_projection");
        double ct = std::cos(theta);
        double sp = std::sin(phi), cp = std::cos(phi);
        double rk = 1.0 / std::sqrt(K);

        if (pol == AntennaPol::H)
            return {-ct * cp * rk, -sp * rk};
        return {-sp * rk, ct * cp * rk};
    }

    Acquisition expand_sweep(const SweepSpec &theta_rad, const SweepSpec &phi_rad,
                             const SweepSpec &freq_hz, Mode mode)
    {
        std::vector<double> thetas = sweep_values(theta_rad);
        std::vector<double> phis = sweep_values(phi_rad);
        std::vector<double> freqs = sweep_values(freq_hz);

        for (double f : freqs)
            if (!(f > 0.0))
                throw invalid_input_error("expand_sweep: frequencies must be > 0 Hz");

        // Reject any singular (theta, phi) pair up front rather than
        // silently dropping descriptors.
        for (double t : thetas)
            for (double p : phis)
                checked_kappa(t, p, "expand_sweep");

        Acquisition acq;
        acq.descriptors.reserve(thetas.size() * phis.size() * freqs.size());
        for (double t : thetas)
            for (double p : phis)
                for (double f : freqs)
                    acq.descriptors.push_back({t, p, f, mode});
        return acq;
    }

} // namespace polarsar3d::geometry
