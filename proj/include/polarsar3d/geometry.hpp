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

#ifndef POLARSAR3D_GEOMETRY_HPP
#define POLARSAR3D_GEOMETRY_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polarsar3d/types.hpp"

namespace polarsar3d::geometry
{
    // One monostatic measurement: azimuth theta, roll phi (radians), wave
    // frequency (Hz) and polarization mode.
    struct MeasurementDescriptor
    {
        double theta = 0.0;
        double phi = 0.0;
        double freq = 0.0;
        Mode mode = Mode::HH;
    };

    // Ordered measurement list. Ordering is significant: hologram values are
    // stored in descriptor order.
    struct Acquisition
    {
        std::vector<MeasurementDescriptor> descriptors;

        std::size_t size() const { return descriptors.size(); }
    };

    // Right-handed orthonormal antenna triad expressed in the target frame.
    // z_prime points from the antenna towards the target center.
    struct AntennaFrame
    {
        Vec3 x_prime;
        Vec3 y_prime;
        Vec3 z_prime;
    };

    // Arithmetic sweep start:step:stop. The stop value is included when
    // (stop - start) is an integer multiple of step to 1e-9 relative.
    struct SweepSpec
    {
        double start = 0.0;
        double step = 1.0;
        double stop = 0.0;
    };

    // Parses "start:step:stop"; a bare number is a single-point sweep.
    SweepSpec parse_sweep(const std::string &text);

    // Number of points generated by a sweep. Throws invalid_input_error when
    // step <= 0 or stop < start.
    std::size_t sweep_count(const SweepSpec &spec);

    // Points of the sweep, computed as start + i*step.
    std::vector<double> sweep_values(const SweepSpec &spec);

    // Unit propagation direction of the emitted wave and the wavenumber
    // 2*pi*freq/c [rad/m]. The direction points towards the target,
    // [-sin(t)cos(p), -sin(t)sin(p), -cos(t)].
    std::pair<Vec3, double> wave_vector(double theta, double phi, double freq);

    // Unit polarization (Jones) vector of an H or V antenna port for the
    // given look angles. Orthogonal to the wave direction.
    Vec3 jones_emission(double theta, double phi, AntennaPol pol);

    // Antenna frame for the given look angles, built from the closed forms
    // that stay defined at theta = 0. Throws frame_singularity_error when
    // the normalizer K = cos^2(t)cos^2(p) + sin^2(p) drops to kappa_min.
    AntennaFrame antenna_frame(double theta, double phi);

    // Coordinates of the antenna polarization vector in the (x', y') frame
    // plane. The pair is unit-norm; there is no component along the wave
    // direction.
    std::pair<double, double> jones_projection(double theta, double phi, AntennaPol pol);

    // Cartesian product of the three sweeps: frequency fastest, then phi,
    // then theta. Angles in radians, frequency in Hz. Every (theta, phi)
    // combination must be admissible; a singular pair throws
    // frame_singularity_error naming the offending angles (degrees).
    Acquisition expand_sweep(const SweepSpec &theta_rad, const SweepSpec &phi_rad,
                             const SweepSpec &freq_hz, Mode mode);

} // namespace polarsar3d::geometry

#endif
