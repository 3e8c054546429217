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
#include "polarsar3d/forward.hpp"

namespace polarsar3d::forward
{
    namespace
    {
        void check_scene(const Scene &scene)
        {
            for (std::size_t n = 0; n < scene.scatterers.size(); ++n)
            {
                const auto &sc = scene.scatterers[n];
                bool ok = std::isfinite(sc.pos.x) && std::isfinite(sc.pos.y) &&
                          std::isfinite(sc.pos.z);
                for (cdouble v : {sc.matrix.xx, sc.matrix.yy, sc.matrix.xy})
                    ok = ok && std::isfinite(v.real()) && std::isfinite(v.imag());
                if (!ok)
                    throw invalid_input_error("scene: non-finite scatterer " + std::to_string(n));
            }
        }

        void check_maps(const ThreeMaps &maps, const kgrid::KGrid &grid)
        {
            kgrid::ImageGeometry want = kgrid::image_geometry(grid);
            bool ok = maps.geometry.dims == want.dims;
            for (std::size_t a = 0; a < 3 && ok; ++a)
            {
                ok = std::abs(maps.geometry.voxel_pitch[a] - want.voxel_pitch[a]) <=
                         1e-9 * want.voxel_pitch[a] &&
                     std::abs(maps.geometry.origin[a] - want.origin[a]) <=
                         1e-9 * std::abs(want.origin[a]) + 1e-15;
            }
            if (!ok)
                throw invalid_input_error(
                    "maps geometry does not match the grid's conjugate image grid");
            const std::size_t n = total_size(maps.geometry.dims);
            if (maps.xx.size() != n || maps.yy.size() != n || maps.xy.size() != n)
                throw invalid_input_error("maps arrays do not match their declared dims");
        }
    } // namespace

    Hologram simulate_hologram(const Scene &scene, const geometry::Acquisition &acq,
                               double noise_sigma, std::uint64_t seed)
    {
        if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
            throw invalid_input_error("simulate_hologram: noise_sigma must be finite and >= 0");
        check_scene(scene);
        detail::check_acquisition(acq);

        Hologram holo;
        holo.acquisition = acq;
        holo.values.resize(acq.size());
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(acq.size()); ++i)
            holo.values[i] = detail::scene_sample_noisy(scene, acq.descriptors[i], noise_sigma,
                                                        seed, static_cast<std::uint64_t>(i));
        return holo;
    }

    std::vector<cdouble> apply_forward(const ThreeMaps &maps, const geometry::Acquisition &acq,
                                       const kgrid::KGrid &grid)
    {
        check_maps(maps, grid);
        auto weights = detail::weights_of(acq);
        auto splats = detail::make_splats(acq, grid);
        auto ramp = kgrid::modulation_ramp(grid);

        const std::size_t m = acq.size();
        const std::size_t n = ramp.size();
        std::vector<cdouble> out(m, cdouble{0.0, 0.0});
        std::vector<cdouble> work(n);

        const std::vector<cdouble> *mapv[3] = {&maps.xx, &maps.yy, &maps.xy};
        for (int k = 0; k < 3; ++k)
        {
#pragma omp parallel for schedule(static)
            for (long long v = 0; v < static_cast<long long>(n); ++v)
                work[v] = (*mapv[k])[v] * ramp[v];

            std::vector<cdouble> spec = fft::to_spectrum(work, grid.dims);

#pragma omp parallel for schedule(static)
            for (long long i = 0; i < static_cast<long long>(m); ++i)
            {
                const auto &w = weights[i];
                double wk = k == 0 ? w.xx : (k == 1 ? w.yy : w.xy);
                out[i] += wk * detail::extract_one(spec, splats[i]);
            }
        }
        return out;
    }

    ThreeMaps apply_adjoint(const std::vector<cdouble> &values, const geometry::Acquisition &acq,
                            const kgrid::KGrid &grid)
    {
        if (values.size() != acq.size())
            throw invalid_input_error("apply_adjoint: values length must equal acquisition length");
        auto weights = detail::weights_of(acq);
        auto splats = detail::make_splats(acq, grid);
        auto ramp = kgrid::modulation_ramp(grid);

        const std::size_t m = acq.size();
        const std::size_t n = ramp.size();

        ThreeMaps maps;
        maps.geometry = kgrid::image_geometry(grid);
        std::vector<cdouble> *mapv[3] = {&maps.xx, &maps.yy, &maps.xy};
        std::vector<cdouble> weighted(m);
        for (int k = 0; k < 3; ++k)
        {
#pragma omp parallel for schedule(static)
            for (long long i = 0; i < static_cast<long long>(m); ++i)
            {
                const auto &w = weights[i];
                double wk = k == 0 ? w.xx : (k == 1 ? w.yy : w.xy);
                weighted[i] = wk * values[i];
            }

            std::vector<cdouble> accum(n, cdouble{0.0, 0.0});
            detail::scatter_deterministic(splats, weighted, accum, nullptr);

            std::vector<cdouble> img = fft::to_image(accum, grid.dims);
            mapv[k]->resize(n);
#pragma omp parallel for schedule(static)
            for (long long v = 0; v < static_cast<long long>(n); ++v)
                (*mapv[k])[v] = img[v] * std::conj(ramp[v]);
        }
        return maps;
    }

    ComplexMatrix dense_matrix(const geometry::Acquisition &acq, const kgrid::ImageGeometry &geom,
                               std::size_t cap)
    {
        const std::size_t m = acq.size();
        const std::size_t n = geom.size();
        if (m == 0 || n == 0)
            throw invalid_input_error("dense_matrix: empty acquisition or empty grid");
        for (int d : geom.dims)
            if (d < 1)
                throw invalid_input_error("dense_matrix: grid dims must be >= 1");
        if (m > cap / (3 * n))
        {
            std::ostringstream msg;
            msg << "dense_matrix: " << m << " x " << 3 * n << " entries exceed the cap of " << cap
                << "; the dense path is an oracle for small instances only";
            throw size_cap_error(msg.str());
        }
        detail::check_acquisition(acq);
        auto weights = detail::weights_of(acq);

        const double root_n = std::sqrt(static_cast<double>(n));
        ComplexMatrix a(m, 3 * n);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(m); ++i)
        {
            Vec3 q = kgrid::sample_location(acq.descriptors[i]);
            const auto &w = weights[i];
            std::size_t col = 0;
            for (int iz = 0; iz < geom.dims[2]; ++iz)
                for (int iy = 0; iy < geom.dims[1]; ++iy)
                    for (int ix = 0; ix < geom.dims[0]; ++ix, ++col)
                    {
                        cdouble phase = std::polar(1.0 / root_n, dot(q, geom.voxel_center(ix, iy, iz)));
                        a(i, col) = w.xx * phase;
                        a(i, n + col) = w.yy * phase;
                        a(i, 2 * n + col) = w.xy * phase;
                    }
        }
        return a;
    }

    Hologram classical_ms_hologram(const std::vector<ScalarScatterer> &scatterers,
                                   const geometry::Acquisition &acq)
    {
        for (std::size_t n = 0; n < scatterers.size(); ++n)
        {
            const auto &sc = scatterers[n];
            if (!std::isfinite(sc.pos.x) || !std::isfinite(sc.pos.y) || !std::isfinite(sc.pos.z) ||
                !std::isfinite(sc.amplitude.real()) || !std::isfinite(sc.amplitude.imag()))
                throw invalid_input_error("scene: non-finite scatterer " + std::to_string(n));
        }
        detail::check_acquisition(acq);

        Hologram holo;
        holo.acquisition = acq;
        holo.values.resize(acq.size());
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(acq.size()); ++i)
            holo.values[i] = detail::classical_sample(scatterers, acq.descriptors[i]);
        return holo;
    }

} // namespace polarsar3d::forward
