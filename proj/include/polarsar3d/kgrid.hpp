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

#ifndef POLARSAR3D_KGRID_HPP
#define POLARSAR3D_KGRID_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polarsar3d/geometry.hpp"
#include "polarsar3d/types.hpp"

namespace polarsar3d::kgrid
{
    enum class Interp : std::uint8_t
    {
        nearest,
        linear
    };

    std::string to_string(Interp interp);
    Interp interp_from_string(const std::string &name);

    // Cartesian spatial-frequency grid [rad/m]. Node m sits at
    // center + (m - h) * delta_k per axis, h = dims/2. The conjugate image
    // grid has voxel pitch 2*pi/(dims*delta_k) and voxel n at (n - h)*pitch.
    struct KGrid
    {
        Dims3 dims{2, 2, 2};
        Vec3 delta_k{1.0, 1.0, 1.0};
        Vec3 center{0.0, 0.0, 0.0};
        Interp interp = Interp::nearest;

        // Throws invalid_input_error unless dims >= 2 and delta_k > 0.
        void validate() const;

        Vec3 voxel_pitch() const;
    };

    // Image voxel grid [m]: voxel (i,j,k) center is origin + index*pitch.
    struct ImageGeometry
    {
        Dims3 dims{1, 1, 1};
        Vec3 voxel_pitch{1.0, 1.0, 1.0};
        Vec3 origin{0.0, 0.0, 0.0};

        std::size_t size() const { return total_size(dims); }

        Vec3 voxel_center(int ix, int iy, int iz) const
        {
            return {origin.x + ix * voxel_pitch.x,
                    origin.y + iy * voxel_pitch.y,
                    origin.z + iz * voxel_pitch.z};
        }
    };

    // Conjugate image grid of a k-space grid (centered, pitch
    // 2*pi/(dims*delta_k)).
    ImageGeometry image_geometry(const KGrid &grid);

    // Regridded spectrum: cell values plus the interpolation weight each
    // cell accumulated. Values are zero wherever hit_weight is zero.
    struct GriddedSpectrum
    {
        std::vector<cdouble> values;
        std::vector<double> hit_weight;
        Dims3 dims{};
    };

    // Spatial frequency sampled by one measurement: q = -2*k*khat [rad/m].
    // Phi-invariant at theta = 0, where all rolls look down the same axis.
    Vec3 sample_location(const geometry::MeasurementDescriptor &d);

    // Per-voxel phase ramp exp(+i*center.r_n) on the conjugate image grid.
    // Carries the k-space center offset so the grid itself never needs to
    // contain the origin.
    std::vector<cdouble> modulation_ramp(const KGrid &grid);

    // Scatters weight[i]*value[i] onto the grid (nearest cell, or trilinear
    // splat over the 8 surrounding cells), accumulates splat weights in
    // hit_weight, and normalizes each touched cell by its accumulated
    // weight, so coincident measurements average. Deterministic for any
    // thread count. Throws out_of_band_error listing measurements that fall
    // outside the grid, invalid_input_error on non-finite input.
    GriddedSpectrum regrid(const std::vector<cdouble> &values,
                           const std::vector<double> &weights,
                           const geometry::Acquisition &acq, const KGrid &grid);

    // Reads the gridded values back at each sample location with the grid's
    // interpolation mode.
    std::vector<cdouble> extract(const std::vector<cdouble> &grid_values,
                                 const geometry::Acquisition &acq, const KGrid &grid);
    std::vector<cdouble> extract(const GriddedSpectrum &spectrum,
                                 const geometry::Acquisition &acq, const KGrid &grid);

    // Exact adjoint of extract: adds weight*value into the surrounding
    // cells without any normalization.
    void splat_accumulate(std::vector<cdouble> &grid_values,
                          const std::vector<cdouble> &values,
                          const geometry::Acquisition &acq, const KGrid &grid);

    // Picks delta_k = 2*pi/extent per axis, centers on the sample centroid,
    // and rounds dims up to FFT-friendly sizes (factors 2, 3, 5) that cover
    // the sampled band with one cell of margin. Throws cannot_suggest_error
    // when fewer than two distinct sample locations exist.
    KGrid suggest_grid(const geometry::Acquisition &acq, const Vec3 &image_extent_m);

    // Synthesizes descriptors whose sample locations land exactly on the
    // requested grid nodes. phi_roll supplies the free roll angle for
    // on-axis nodes (empty = 0, else one entry per node). Nodes that no
    // physical look direction reaches (zero frequency, q_z < 0, or a
    // singular frame) throw infeasible_error.
    geometry::Acquisition on_grid_acquisition(const KGrid &grid,
                                              const std::vector<Dims3> &nodes, Mode mode,
                                              const std::vector<double> &phi_roll = {});

} // namespace polarsar3d::kgrid

#endif
