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

#ifndef POLARSAR3D_TYPES_HPP
#define POLARSAR3D_TYPES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace polarsar3d
{
    using cdouble = std::complex<double>;

    // Speed of light in vacuum [m/s]
    inline constexpr double speed_of_light = 299792458.0;

    // Antenna frames divide by sqrt(K); descriptors with K at or below this
    // are rejected as singular.
    inline constexpr double kappa_min = 1e-6;

    inline constexpr double pi = 3.14159265358979323846;

    inline double deg2rad(double deg) { return deg * (pi / 180.0); }
    inline double rad2deg(double rad) { return rad * (180.0 / pi); }

    // Polarization acquisition mode: antenna polarization at emission and
    // reception. HV covers VH as well (monostatic reciprocity).
    enum class Mode : std::uint8_t
    {
        HH,
        VV,
        HV
    };

    // Linear antenna polarization of a single port.
    enum class AntennaPol : std::uint8_t
    {
        H,
        V
    };

    std::string to_string(Mode mode);
    Mode mode_from_string(const std::string &name);

    // Minimal 3-vector used throughout the geometry and operator code.
    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        constexpr double &operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
        constexpr const double &operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

        friend constexpr Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend constexpr Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend constexpr Vec3 operator*(double s, const Vec3 &v) { return {s * v.x, s * v.y, s * v.z}; }
        friend constexpr Vec3 operator*(const Vec3 &v, double s) { return s * v; }
    };

    inline constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

    inline constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
    {
        return {a.y * b.z - a.z * b.y,
                a.z * b.x - a.x * b.z,
                a.x * b.y - a.y * b.x};
    }

    inline double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }

    // Small dense row-major complex matrix, used only on the oracle paths.
    struct ComplexMatrix
    {
        std::size_t rows = 0;
        std::size_t cols = 0;
        std::vector<cdouble> data;

        ComplexMatrix() = default;
        ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

        cdouble &operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
        const cdouble &operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    };

    // Grid dimensions (Nx, Ny, Nz). Linear indices run x fastest, then y, then z.
    using Dims3 = std::array<int, 3>;

    inline std::size_t total_size(const Dims3 &d)
    {
        return static_cast<std::size_t>(d[0]) * static_cast<std::size_t>(d[1]) * static_cast<std::size_t>(d[2]);
    }

    inline std::size_t linear_index(const Dims3 &d, int ix, int iy, int iz)
    {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(d[0]) * (static_cast<std::size_t>(iy) +
                                                 static_cast<std::size_t>(d[1]) * static_cast<std::size_t>(iz));
    }

} // namespace polarsar3d

#endif
