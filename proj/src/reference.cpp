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

#include "kernels.hpp"
#include "polarsar3d/errors.hpp"
#include "polarsar3d/fft.hpp"
#include "polarsar3d/reference.hpp"

namespace polarsar3d::ref
{
    namespace
    {
        // Serial twin of detail::make_splats, byte-identical error text.
        std::vector<detail::CellSplat> serial_splats(const geometry::Acquisition &acq,
                                                     const kgrid::KGrid &g)
        {
            g.validate();
            detail::check_acquisition(acq);

            const std::size_t m = acq.size();
            std::vector<detail::CellSplat> splats(m);
            std::size_t nbad = 0;
            std::ostringstream offenders;
            for (std::size_t i = 0; i < m; ++i)
            {
                Vec3 q = kgrid::sample_location(acq.descriptors[i]);
                if (!detail::make_splat(g, q, splats[i]))
                {
                    if (nbad < 10)
                        offenders << (nbad ? ", " : "") << i;
                    ++nbad;
                }
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

        // Plain accumulation loop the deterministic parallel scatter must match.
        void serial_scatter(const std::vector<detail::CellSplat> &splats,
                            const std::vector<cdouble> &vals, std::vector<cdouble> &accum,
                            std::vector<double> *hits)
        {
            for (std::size_t i = 0; i < splats.size(); ++i)
            {
                const auto &s = splats[i];
                for (int c = 0; c < s.n; ++c)
                {
                    accum[s.cell[c]] += s.w[c] * vals[i];
                    if (hits)
                        (*hits)[s.cell[c]] += s.w[c];
                }
            }
        }

        std::vector<cdouble> serial_ramp(const kgrid::KGrid &grid)
        {
            kgrid::ImageGeometry geom = kgrid::image_geometry(grid);
            std::vector<cdouble> ramp(geom.size());
            for (int iz = 0; iz < geom.dims[2]; ++iz)
                for (int iy = 0; iy < geom.dims[1]; ++iy)
                    for (int ix = 0; ix < geom.dims[0]; ++ix)
                    {
                        Vec3 r = geom.voxel_center(ix, iy, iz);
                        ramp[linear_index(geom.dims, ix, iy, iz)] =
                            std::polar(1.0, dot(grid.center, r));
                    }
            return ramp;
        }
    } // namespace

    forward::Hologram simulate_hologram(const forward::Scene &scene,
                                        const geometry::Acquisition &acq, double noise_sigma,
                                        std::uint64_t seed)
    {
        if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
            throw invalid_input_error("simulate_hologram: noise_sigma must be finite and >= 0");
        detail::check_acquisition(acq);

        forward::Hologram holo;
        holo.acquisition = acq;
        holo.values.resize(acq.size());
        for (std::size_t i = 0; i < acq.size(); ++i)
            holo.values[i] =
                detail::scene_sample_noisy(scene, acq.descriptors[i], noise_sigma, seed, i);
        return holo;
    }

    std::vector<cdouble> apply_forward(const forward::ThreeMaps &maps,
                                       const geometry::Acquisition &acq, const kgrid::KGrid &grid)
    {
        auto weights = detail::weights_of(acq);
        auto splats = serial_splats(acq, grid);
        auto ramp = serial_ramp(grid);

        const std::size_t m = acq.size();
        const std::size_t n = ramp.size();
        std::vector<cdouble> out(m, cdouble{0.0, 0.0});
        std::vector<cdouble> work(n);

        const std::vector<cdouble> *mapv[3] = {&maps.xx, &maps.yy, &maps.xy};
        for (int k = 0; k < 3; ++k)
        {
            for (std::size_t v = 0; v < n; ++v)
                work[v] = (*mapv[k])[v] * ramp[v];

            std::vector<cdouble> spec = fft::to_spectrum(work, grid.dims);

            for (std::size_t i = 0; i < m; ++i)
            {
                const auto &w = weights[i];
                double wk = k == 0 ? w.xx : (k == 1 ? w.yy : w.xy);
                out[i] += wk * detail::extract_one(spec, splats[i]);
            }
        }
        return out;
    }

    forward::ThreeMaps apply_adjoint(const std::vector<cdouble> &values,
                                     const geometry::Acquisition &acq, const kgrid::KGrid &grid)
    {
        if (values.size() != acq.size())
            throw invalid_input_error("apply_adjoint: values length must equal acquisition length");
        auto weights = detail::weights_of(acq);
        auto splats = serial_splats(acq, grid);
        auto ramp = serial_ramp(grid);

        const std::size_t m = acq.size();
        const std::size_t n = ramp.size();

        forward::ThreeMaps maps;
        maps.geometry = kgrid::image_geometry(grid);
        std::vector<cdouble> *mapv[3] = {&maps.xx, &maps.yy, &maps.xy};
        std::vector<cdouble> weighted(m);
        for (int k = 0; k < 3; ++k)
        {
            for (std::size_t i = 0; i < m; ++i)
            {
                const auto &w = weights[i];
                double wk = k == 0 ? w.xx : (k == 1 ? w.yy : w.xy);
                weighted[i] = wk * values[i];
            }

            std::vector<cdouble> accum(n, cdouble{0.0, 0.0});
            serial_scatter(splats, weighted, accum, nullptr);

            std::vector<cdouble> img = fft::to_image(accum, grid.dims);
            mapv[k]->resize(n);
            for (std::size_t v = 0; v < n; ++v)
                (*mapv[k])[v] = img[v] * std::conj(ramp[v]);
        }
        return maps;
    }

    kgrid::GriddedSpectrum regrid(const std::vector<cdouble> &values,
                                  const std::vector<double> &weights,
                                  const geometry::Acquisition &acq, const kgrid::KGrid &grid)
    {
        const std::size_t m = acq.size();
        if (values.size() != m || weights.size() != m)
            throw invalid_input_error("regrid: values/weights length must equal acquisition length");
        for (std::size_t i = 0; i < m; ++i)
            if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()) ||
                !std::isfinite(weights[i]))
                throw invalid_input_error("regrid: non-finite input at measurement " +
                                          std::to_string(i));

        auto splats = serial_splats(acq, grid);

        std::vector<cdouble> weighted(m);
        for (std::size_t i = 0; i < m; ++i)
            weighted[i] = weights[i] * values[i];

        kgrid::GriddedSpectrum spec;
        spec.dims = grid.dims;
        spec.values.assign(total_size(grid.dims), cdouble{0.0, 0.0});
        spec.hit_weight.assign(total_size(grid.dims), 0.0);
        serial_scatter(splats, weighted, spec.values, &spec.hit_weight);

        for (std::size_t c = 0; c < spec.values.size(); ++c)
        {
            if (spec.hit_weight[c] > 0.0)
                spec.values[c] /= spec.hit_weight[c];
            else
                spec.values[c] = cdouble{0.0, 0.0};
        }
        return spec;
    }

    std::vector<cdouble> extract(const std::vector<cdouble> &grid_values,
                                 const geometry::Acquisition &acq, const kgrid::KGrid &grid)
    {
        if (grid_values.size() != total_size(grid.dims))
            throw invalid_input_error("extract: grid array size does not match grid dims");
        auto splats = serial_splats(acq, grid);

        std::vector<cdouble> out(acq.size());
        for (std::size_t i = 0; i < acq.size(); ++i)
            out[i] = detail::extract_one(grid_values, splats[i]);
        return out;
    }

} // namespace polarsar3d::ref
