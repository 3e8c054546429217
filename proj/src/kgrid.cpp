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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "kernels.hpp"
#include "polarsar3d/errors.hpp"
#include "polarsar3d/kgrid.hpp"

namespace polarsar3d::kgrid
{
    std::string to_string(Interp interp)
    {
        return interp == Interp::nearest ? "nearest" : "linear";
    }

    Interp interp_from_string(const std::string &name)
    {
        if (name == "nearest")
            return Interp::nearest;
        if (name == "linear")
            return Interp::linear;
        throw invalid_input_error("unknown interpolation mode '" + name +
                                  "' (expected nearest or linear)");
    }

    void KGrid::validate() const
    {
        for (int d : dims)
            if (d < 2)
                throw invalid_input_error("k-grid dims must be >= 2 per axis");
        for (std::size_t a = 0; a < 3; ++a)
            if (!(delta_k[a] > 0.0) || !std::isfinite(delta_k[a]))
                throw invalid_input_error("k-grid delta_k must be > 0");
        for (std::size_t a = 0; a < 3; ++a)
            if (!std::isfinite(center[a]))
                throw invalid_input_error("k-grid center must be finite");
    }

    Vec3 KGrid::voxel_pitch() const
    {
        return {2.0 * pi / (dims[0] * delta_k.x),
                2.0 * pi / (dims[1] * delta_k.y),
                2.0 * pi / (dims[2] * delta_k.z)};
    }

    ImageGeometry image_geometry(const KGrid &grid)
    {
        grid.validate();
        ImageGeometry geom;
        geom.dims = grid.dims;
        geom.voxel_pitch = grid.voxel_pitch();
        geom.origin = {-(grid.dims[0] / 2) * geom.voxel_pitch.x,
                       -(grid.dims[1] / 2) * geom.voxel_pitch.y,
                       -(grid.dims[2] / 2) * geom.voxel_pitch.z};
        return geom;
    }

    Vec3 sample_location(const geometry::MeasurementDescriptor &d)
    {
        auto [khat, k] = geometry::wave_vector(d.theta, d.phi, d.freq);
        return -2.0 * k * khat;
    }

    std::vector<cdouble> modulation_ramp(const KGrid &grid)
    {
        ImageGeometry geom = image_geometry(grid);
        std::vector<cdouble> ramp(geom.size());
#pragma omp parallel for schedule(static)
        for (long long iz = 0; iz < geom.dims[2]; ++iz)
            for (int iy = 0; iy < geom.dims[1]; ++iy)
                for (int ix = 0; ix < geom.dims[0]; ++ix)
                {
                    Vec3 r = geom.voxel_center(ix, iy, static_cast<int>(iz));
                    ramp[linear_index(geom.dims, ix, iy, static_cast<int>(iz))] =
                        std::polar(1.0, dot(grid.center, r));
                }
        return ramp;
    }

    GriddedSpectrum regrid(const std::vector<cdouble> &values, const std::vector<double> &weights,
                           const geometry::Acquisition &acq, const KGrid &grid)
    {
        const std::size_t m = acq.size();
        if (values.size() != m || weights.size() != m)
            throw invalid_input_error("regrid: values/weights length must equal acquisition length");
        for (std::size_t i = 0; i < m; ++i)
            if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()) ||
                !std::isfinite(weights[i]))
                throw invalid_input_error("regrid: non-finite input at measurement " +
                                          std::to_string(i));

        auto splats = detail::make_splats(acq, grid);

        std::vector<cdouble> weighted(m);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(m); ++i)
            weighted[i] = weights[i] * values[i];

        GriddedSpectrum spec;
        spec.dims = grid.dims;
        spec.values.assign(total_size(grid.dims), cdouble{0.0, 0.0});
        spec.hit_weight.assign(total_size(grid.dims), 0.0);
        detail::scatter_deterministic(splats, weighted, spec.values, &spec.hit_weight);

        const std::size_t n = spec.values.size();
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(n); ++c)
        {
            if (spec.hit_weight[c] > 0.0)
                spec.values[c] /= spec.hit_weight[c];
            else
                spec.values[c] = cdouble{0.0, 0.0};
        }
        return spec;
    }

    std::vector<cdouble> extract(const std::vector<cdouble> &grid_values,
                                 const geometry::Acquisition &acq, const KGrid &grid)
    {
        if (grid_values.size() != total_size(grid.dims))
            throw invalid_input_error("extract: grid array size does not match grid dims");
        auto splats = detail::make_splats(acq, grid);

        std::vector<cdouble> out(acq.size());
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(acq.size()); ++i)
            out[i] = detail::extract_one(grid_values, splats[i]);
        return out;
    }

    std::vector<cdouble> extract(const GriddedSpectrum &spectrum, const geometry::Acquisition &acq,
                                 const KGrid &grid)
    {
        if (spectrum.dims != grid.dims)
            throw invalid_input_error("extract: spectrum dims do not match grid dims");
        return extract(spectrum.values, acq, grid);
    }

    void splat_accumulate(std::vector<cdouble> &grid_values, const std::vector<cdouble> &values,
                          const geometry::Acquisition &acq, const KGrid &grid)
    {
        if (grid_values.size() != total_size(grid.dims))
            throw invalid_input_error("splat: grid array size does not match grid dims");
        if (values.size() != acq.size())
            throw invalid_input_error("splat: values length must equal acquisition length");
        auto splats = detail::make_splats(acq, grid);
        detail::scatter_deterministic(splats, values, grid_values, nullptr);
    }

    namespace
    {
        // Smallest 2/3/5-smooth integer >= n.
        int smooth235(int n)
        {
            for (int m = std::max(n, 2);; ++m)
            {
                int r = m;
                for (int f : {2, 3, 5})
                    while (r % f == 0)
                        r /= f;
                if (r == 1)
                    return m;
            }
        }
    } // namespace

    KGrid suggest_grid(const geometry::Acquisition &acq, const Vec3 &image_extent_m)
    {
        for (std::size_t a = 0; a < 3; ++a)
            if (!(image_extent_m[a] > 0.0) || !std::isfinite(image_extent_m[a]))
                throw invalid_input_error("suggest_grid: image extent must be > 0 m");
        if (acq.size() == 0)
            throw cannot_suggest_error("suggest_grid: empty acquisition");
        detail::check_acquisition(acq);

        std::vector<Vec3> locs(acq.size());
        for (std::size_t i = 0; i < acq.size(); ++i)
            locs[i] = sample_location(acq.descriptors[i]);

        bool distinct = false;
        for (std::size_t i = 1; i < locs.size() && !distinct; ++i)
            distinct = norm(locs[i] - locs[0]) > 1e-9 * std::max(1.0, norm(locs[0]));
        if (!distinct)
            throw cannot_suggest_error(
                "suggest_grid: acquisition samples a single spatial frequency (single "
                "frequency and single look direction); grid extent is undefined");

        Vec3 lo = locs[0], hi = locs[0];
        for (const Vec3 &q : locs)
            for (std::size_t a = 0; a < 3; ++a)
            {
                lo[a] = std::min(lo[a], q[a]);
                hi[a] = std::max(hi[a], q[a]);
            }

        KGrid grid;
        grid.interp = Interp::nearest;
        for (std::size_t a = 0; a < 3; ++a)
        {
            grid.delta_k[a] = 2.0 * pi / image_extent_m[a];
            grid.center[a] = 0.5 * (lo[a] + hi[a]);
            double half_band = 0.5 * (hi[a] - lo[a]);
            // One cell of margin on each side of the sampled band.
            int need = 2 * (static_cast<int>(std::ceil(half_band / grid.delta_k[a])) + 1);
            grid.dims[a] = smooth235(std::max(need, 2));
        }
        grid.validate();
        return grid;
    }

    geometry::Acquisition on_grid_acquisition(const KGrid &grid, const std::vector<Dims3> &nodes,
                                              Mode mode, const std::vector<double> &phi_roll)
    {
        grid.validate();
        if (!phi_roll.empty() && phi_roll.size() != nodes.size())
            throw invalid_input_error("on_grid_acquisition: phi_roll must be empty or match the "
                                      "node list length");

        geometry::Acquisition acq;
        acq.descriptors.reserve(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
        {
            const Dims3 &node = nodes[i];
            for (std::size_t a = 0; a < 3; ++a)
                if (node[a] < 0 || node[a] >= grid.dims[a])
                    throw invalid_input_error("on_grid_acquisition: node " + std::to_string(i) +
                                              " outside grid dims");

            Vec3 q{grid.center.x + (node[0] - grid.dims[0] / 2) * grid.delta_k.x,
                   grid.center.y + (node[1] - grid.dims[1] / 2) * grid.delta_k.y,
                   grid.center.z + (node[2] - grid.dims[2] / 2) * grid.delta_k.z};

            double qn = norm(q);
            if (!(qn > 0.0))
                throw infeasible_error("on_grid_acquisition: node " + std::to_string(i) +
                                       " sits at the k-space origin (zero frequency)");
            if (q.z < 0.0)
                throw infeasible_error("on_grid_acquisition: node " + std::to_string(i) +
                                       " has q_z < 0, unreachable by the monostatic look cone");

            double theta = std::acos(std::clamp(q.z / qn, -1.0, 1.0));
            double rho = std::hypot(q.x, q.y);
            double phi = rho > qn * 1e-12 ? std::atan2(q.y, q.x)
                                          : (phi_roll.empty() ? 0.0 : phi_roll[i]);
            double freq = speed_of_light * qn / (4.0 * pi);

            if (polarimetry::kappa(theta, phi) <= kappa_min)
            {
                std::ostringstream msg;
                msg << "on_grid_acquisition: node " << i << " is only reachable through a "
                    << "singular antenna frame (theta=" << rad2deg(theta)
                    << " deg, phi=" << rad2deg(phi) << " deg)";
                throw infeasible_error(msg.str());
            }
            acq.descriptors.push_back({theta, phi, freq, mode});
        }
        return acq;
    }

} // namespace polarsar3d::kgrid

namespace polarsar3d::detail
{
    std::vector<CellSplat> make_splats(const geometry::Acquisition &acq, const kgrid::KGrid &g)
    {
        g.validate();
        check_acquisition(acq);

        const std::size_t m = acq.size();
        std::vector<CellSplat> splats(m);
        std::vector<unsigned char> bad(m, 0);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(m); ++i)
        {
            Vec3 q = kgrid::sample_location(acq.descriptors[i]);
            if (!make_splat(g, q, splats[i]))
                bad[i] = 1;
        }

        std::size_t nbad = 0;
        std::ostringstream offenders;
        for (std::size_t i = 0; i < m; ++i)
            if (bad[i])
            {
                if (nbad < 10)
                    offenders << (nbad ? ", " : "") << i;
                ++nbad;
            }
        if (nbad > 0)
        {
            std::ostringstream msg;
            msg << nbad << " of " << m << " sample locations fall outside the k-grid "
                << "(measurements " << offenders.str() << (nbad > 10 ? ", ..." : "") << ")";
            throw out_of_band_error(msg.str());
        }
        return splats;
    }

    void scatter_deterministic(const std::vector<CellSplat> &splats,
                               const std::vector<cdouble> &vals, std::vector<cdouble> &accum,
                               std::vector<double> *hits)
    {
        const std::size_t m = splats.size();

        // With a single thread the plain accumulation loop is cheaper and
        // produces the same bits (the sorted path below replays additions
        // in this exact order).
        if (omp_get_max_threads() == 1)
        {
            for (std::size_t i = 0; i < m; ++i)
                for (int c = 0; c < splats[i].n; ++c)
                {
                    accum[splats[i].cell[c]] += splats[i].w[c] * vals[i];
                    if (hits != nullptr)
                        (*hits)[splats[i].cell[c]] += splats[i].w[c];
                }
            return;
        }

        // Gather all (cell, slot) pairs, order them by cell with the
        // original (measurement, corner) order as tie-break, then reduce
        // each cell's run in that order. The additions per cell happen in
        // exactly the order a serial accumulation loop would produce.
        struct Slot
        {
            std::size_t cell;
            std::uint64_t order;
        };
        std::vector<Slot> slots;
        std::vector<std::size_t> start(m + 1, 0);
        for (std::size_t i = 0; i < m; ++i)
            start[i + 1] = start[i] + static_cast<std::size_t>(splats[i].n);
        slots.resize(start[m]);

#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(m); ++i)
            for (int c = 0; c < splats[i].n; ++c)
                slots[start[i] + c] = {splats[i].cell[c],
                                       (static_cast<std::uint64_t>(i) << 3) | static_cast<std::uint64_t>(c)};

        std::sort(slots.begin(), slots.end(), [](const Slot &a, const Slot &b) {
            return a.cell != b.cell ? a.cell < b.cell : a.order < b.order;
        });

        for (std::size_t s = 0; s < slots.size();)
        {
            const std::size_t cell = slots[s].cell;
            cdouble vsum{0.0, 0.0};
            double wsum = 0.0;
            std::size_t e = s;
            for (; e < slots.size() && slots[e].cell == cell; ++e)
            {
                std::size_t i = slots[e].order >> 3;
                int c = static_cast<int>(slots[e].order & 7);
                vsum += splats[i].w[c] * vals[i];
                wsum += splats[i].w[c];
            }
            accum[cell] += vsum;
            if (hits != nullptr)
                (*hits)[cell] += wsum;
            s = e;
        }
    }

} // namespace polarsar3d::detail
