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
//
// Internal per-measurement kernels shared between the OpenMP-parallel
// operators and the serial reference implementations. Keeping the
// arithmetic in one place is what makes the two paths bit-identical: they
// may only differ in scheduling, never in the order of operations inside
// one measurement or one cell.

#ifndef POLARSAR3D_SRC_KERNELS_HPP
#define POLARSAR3D_SRC_KERNELS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "polarsar3d/errors.hpp"
#include "polarsar3d/forward.hpp"
#include "polarsar3d/geometry.hpp"
#include "polarsar3d/kgrid.hpp"
#include "polarsar3d/polarimetry.hpp"
#include "polarsar3d/types.hpp"

namespace polarsar3d::detail
{
    // Sample locations within this distance (in cell units) of a grid node
    // are treated as exact node hits by the linear interpolator.
    inline constexpr double node_snap_tol = 1e-9;

    inline std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Circular complex Gaussian noise, std sigma/sqrt(2) per component,
    // from a generator seeded per measurement index. Parallel and serial
    // runs therefore draw identical noise.
    inline cdouble noise_sample(std::uint64_t seed, std::uint64_t index, double sigma)
    {
        std::mt19937_64 gen(splitmix64(seed ^ splitmix64(index + 1)));
        double u1 = (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        double u2 = static_cast<double>(gen() >> 11) * 0x1.0p-53;         // [0, 1)
        double r = std::sqrt(-2.0 * std::log(u1));
        double scale = sigma / std::sqrt(2.0);
        return {scale * r * std::cos(2.0 * pi * u2), scale * r * std::sin(2.0 * pi * u2)};
    }

    inline void check_descriptor(const geometry::MeasurementDescriptor &d, std::size_t index)
    {
        if (!(d.freq > 0.0))
        {
            std::ostringstream msg;
            msg << "measurement " << index << ": frequency must be > 0 Hz";
            throw invalid_input_error(msg.str());
        }
        if (polarimetry::kappa(d.theta, d.phi) <= kappa_min)
        {
            std::ostringstream msg;
            msg << "measurement " << index << ": antenna frame singular at theta="
                << rad2deg(d.theta) << " deg, phi=" << rad2deg(d.phi) << " deg";
            throw frame_singularity_error(msg.str());
        }
    }

    inline void check_acquisition(const geometry::Acquisition &acq)
    {
        for (std::size_t i = 0; i < acq.size(); ++i)
            check_descriptor(acq.descriptors[i], i);
    }

    inline std::vector<polarimetry::ModeWeights> weights_of(const geometry::Acquisition &acq)
    {
        std::vector<polarimetry::ModeWeights> w(acq.size());
        for (std::size_t i = 0; i < acq.size(); ++i)
        {
            const auto &d = acq.descriptors[i];
            w[i] = polarimetry::closed_form_weights(d.theta, d.phi, d.mode);
        }
        return w;
    }

    // Hologram value of a continuous scene for one measurement (noise-free):
    // sum_n (w . S_n) * exp(-2i*k*(khat . r_n)).
    inline cdouble scene_sample(const forward::Scene &scene,
                                const geometry::MeasurementDescriptor &d)
    {
        auto [khat, k] = geometry::wave_vector(d.theta, d.phi, d.freq);
        polarimetry::ModeWeights w = polarimetry::closed_form_weights(d.theta, d.phi, d.mode);
        cdouble acc{0.0, 0.0};
        for (const auto &sc : scene.scatterers)
        {
            cdouble coeff = w.xx * sc.matrix.xx + w.yy * sc.matrix.yy + w.xy * sc.matrix.xy;
            acc += coeff * std::polar(1.0, -2.0 * k * dot(khat, sc.pos));
        }
        return acc;
    }

    inline cdouble scene_sample_noisy(const forward::Scene &scene,
                                      const geometry::MeasurementDescriptor &d,
                                      double sigma, std::uint64_t seed, std::uint64_t index)
    {
        cdouble v = scene_sample(scene, d);
        if (sigma > 0.0)
            v += noise_sample(seed, index, sigma);
        return v;
    }

    // Polarization-blind sample: sum_n s_n * exp(-2i*k*(khat . r_n)).
    inline cdouble classical_sample(const std::vector<forward::ScalarScatterer> &scatterers,
                                    const geometry::MeasurementDescriptor &d)
    {
        auto [khat, k] = geometry::wave_vector(d.theta, d.phi, d.freq);
        cdouble acc{0.0, 0.0};
        for (const auto &sc : scatterers)
            acc += sc.amplitude * std::polar(1.0, -2.0 * k * dot(khat, sc.pos));
        return acc;
    }

    // Interpolation footprint of one sample location: up to 8 cells with
    // their weights. Unused slots carry weight 0 and a valid cell index.
    struct CellSplat
    {
        std::size_t cell[8];
        double w[8];
        int n;
    };

    inline Vec3 cell_coords(const kgrid::KGrid &g, const Vec3 &q)
    {
        return {(q.x - g.center.x) / g.delta_k.x + static_cast<double>(g.dims[0] / 2),
                (q.y - g.center.y) / g.delta_k.y + static_cast<double>(g.dims[1] / 2),
                (q.z - g.center.z) / g.delta_k.z + static_cast<double>(g.dims[2] / 2)};
    }

    inline bool axis_nearest(double u, int n, int &idx)
    {
        double r = std::round(u);
        if (r < 0.0 || r > static_cast<double>(n - 1))
            return false;
        idx = static_cast<int>(r);
        return true;
    }

    // Lower cell index and fractional offset for linear interpolation,
    // snapping near-node locations so exact node hits stay exact.
    inline bool axis_linear(double u, int n, int &lo, double &t)
    {
        double r = std::round(u);
        if (std::abs(u - r) <= node_snap_tol)
        {
            if (r < 0.0 || r > static_cast<double>(n - 1))
                return false;
            lo = static_cast<int>(r);
            t = 0.0;
            return true;
        }
        double fl = std::floor(u);
        if (fl < 0.0 || fl + 1.0 > static_cast<double>(n - 1))
            return false;
        lo = static_cast<int>(fl);
        t = u - fl;
        return true;
    }

    inline bool make_splat(const kgrid::KGrid &g, const Vec3 &q, CellSplat &out)
    {
        Vec3 u = cell_coords(g, q);
        if (g.interp == kgrid::Interp::nearest)
        {
            int ix, iy, iz;
            if (!axis_nearest(u.x, g.dims[0], ix) || !axis_nearest(u.y, g.dims[1], iy) ||
                !axis_nearest(u.z, g.dims[2], iz))
                return false;
            out.cell[0] = linear_index(g.dims, ix, iy, iz);
            out.w[0] = 1.0;
            out.n = 1;
            return true;
        }

        int lx, ly, lz;
        double tx, ty, tz;
        if (!axis_linear(u.x, g.dims[0], lx, tx) || !axis_linear(u.y, g.dims[1], ly, ty) ||
            !axis_linear(u.z, g.dims[2], lz, tz))
            return false;

        // Snapped axes keep the high corner clamped in range; its weight is 0.
        int ix[2] = {lx, std::min(lx + 1, g.dims[0] - 1)};
        int iy[2] = {ly, std::min(ly + 1, g.dims[1] - 1)};
        int iz[2] = {lz, std::min(lz + 1, g.dims[2] - 1)};
        double wx[2] = {1.0 - tx, tx};
        double wy[2] = {1.0 - ty, ty};
        double wz[2] = {1.0 - tz, tz};

        for (int c = 0; c < 8; ++c)
        {
            int dx = c & 1, dy = (c >> 1) & 1, dz = (c >> 2) & 1;
            out.cell[c] = linear_index(g.dims, ix[dx], iy[dy], iz[dz]);
            out.w[c] = wx[dx] * wy[dy] * wz[dz];
        }
        out.n = 8;
        return true;
    }

    // Footprints for a whole acquisition; throws out_of_band_error listing
    // the offending measurement indices.
    std::vector<CellSplat> make_splats(const geometry::Acquisition &acq, const kgrid::KGrid &g);

    inline cdouble extract_one(const std::vector<cdouble> &grid_values, const CellSplat &s)
    {
        cdouble acc{0.0, 0.0};
        for (int c = 0; c < s.n; ++c)
            acc += s.w[c] * grid_values[s.cell[c]];
        return acc;
    }

    // Deterministic scatter: deposits w[c]*vals[i] into each footprint cell,
    // summing contributions per cell in (measurement, corner) order exactly
    // like a serial accumulation loop, regardless of thread count. hits, if
    // given, accumulates the interpolation weights the same way.
    void scatter_deterministic(const std::vector<CellSplat> &splats,
                               const std::vector<cdouble> &vals, std::vector<cdouble> &accum,
                               std::vector<double> *hits);

} // namespace polarsar3d::detail

#endif
