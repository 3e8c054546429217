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
#include <mutex>

#include <fftw3.h>

#include "polarsar3d/errors.hpp"
#include "polarsar3d/fft.hpp"

namespace polarsar3d::fft
{
    namespace
    {
        std::mutex &planner_mutex()
        {
            static std::mutex m;
            return m;
        }

        // Centered transform via exact circular index rotations around
        // h = N/2 per axis: rotate the center to index 0, run the plain
        // FFT, rotate back, scale by 1/sqrt(Ntot). FFTW_ESTIMATE on an
        // fftw-aligned buffer keeps plan selection independent of caller
        // allocations, so results are reproducible across runs and thread
        // settings.
        std::vector<cdouble> centered_transform(const std::vector<cdouble> &in,
                                                const Dims3 &dims, int sign)
        {
            for (int d : dims)
                if (d < 1)
                    throw invalid_input_error("fft: dims must be positive");
            const std::size_t n = total_size(dims);
            if (in.size() != n)
                throw invalid_input_error("fft: array size does not match dims");

            const int nx = dims[0], ny = dims[1], nz = dims[2];
            const int hx = nx / 2, hy = ny / 2, hz = nz / 2;

            fftw_complex *buf = fftw_alloc_complex(n);
            if (buf == nullptr)
                throw error("fft: allocation failed");

            // buf[p] = in[(p + h) mod N] per axis
            for (int iz = 0; iz < nz; ++iz)
            {
                int sz = (iz + hz) % nz;
                for (int iy = 0; iy < ny; ++iy)
                {
                    int sy = (iy + hy) % ny;
                    for (int ix = 0; ix < nx; ++ix)
                    {
                        int sx = (ix + hx) % nx;
                        const cdouble &v = in[linear_index(dims, sx, sy, sz)];
                        std::size_t p = linear_index(dims, ix, iy, iz);
                        buf[p][0] = v.real();
                        buf[p][1] = v.imag();
                    }
                }
            }

            fftw_plan plan;
            {
                std::lock_guard<std::mutex> lock(planner_mutex());
                plan = fftw_plan_dft_3d(nz, ny, nx, buf, buf, sign, FFTW_ESTIMATE);
            }
            if (plan == nullptr)
            {
                fftw_free(buf);
                throw error("fft: plan creation failed");
            }
            fftw_execute(plan);
            {
                std::lock_guard<std::mutex> lock(planner_mutex());
                fftw_destroy_plan(plan);
            }

            // out[(u + h) mod N] = buf[u] / sqrt(n) per axis
            const double scale = 1.0 / std::sqrt(static_cast<double>(n));
            std::vector<cdouble> out(n);
            for (int uz = 0; uz < nz; ++uz)
            {
                int oz = (uz + hz) % nz;
                for (int uy = 0; uy < ny; ++uy)
                {
                    int oy = (uy + hy) % ny;
                    for (int ux = 0; ux < nx; ++ux)
                    {
                        int ox = (ux + hx) % nx;
                        std::size_t p = linear_index(dims, ux, uy, uz);
                        out[linear_index(dims, ox, oy, oz)] =
                            cdouble{buf[p][0] * scale, buf[p][1] * scale};
                    }
                }
            }
            fftw_free(buf);
            return out;
        }
    } // namespace

    std::vector<cdouble> to_spectrum(const std::vector<cdouble> &image, const Dims3 &dims)
    {
        return centered_transform(image, dims, FFTW_BACKWARD);
    }

    std::vector<cdouble> to_image(const std::vector<cdouble> &spectrum, const Dims3 &dims)
    {
        return centered_transform(spectrum, dims, FFTW_FORWARD);
    }

} // namespace polarsar3d::fft
