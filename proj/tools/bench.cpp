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
// Times the parallel kernels against their serial reference twins on one
// medium instance and verifies the outputs are bit-identical. Exits 1 on
// any mismatch, so it doubles as a determinism smoke test.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "polarsar3d/forward.hpp"
#include "polarsar3d/geometry.hpp"
#include "polarsar3d/kgrid.hpp"
#include "polarsar3d/reference.hpp"
#include "polarsar3d/threading.hpp"

namespace
{
    using namespace polarsar3d;
    using Clock = std::chrono::steady_clock;

    template <typename F>
    double timed(F &&f)
    {
        auto t0 = Clock::now();
        f();
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    bool bits_equal(const std::vector<cdouble> &a, const std::vector<cdouble> &b)
    {
        return a.size() == b.size() &&
               std::memcmp(a.data(), b.data(), a.size() * sizeof(cdouble)) == 0;
    }

    int report(const char *name, double serial_s, double parallel_s, bool identical)
    {
        std::printf("%-14s %9.3f s %9.3f s %7.2fx   %s\n", name, serial_s, parallel_s,
                    serial_s / parallel_s, identical ? "bit-identical" : "MISMATCH");
        return identical ? 0 : 1;
    }
} // namespace

int main(int argc, char **argv)
{
    apply_thread_env();

    int dim = 48;
    std::size_t m = 20000;
    std::uint64_t seed = 7;

    CLI::App app{"polarsar3d benchmark: serial reference vs parallel kernels"};
    app.add_option("--dim", dim, "Cubic k-grid dimension")->check(CLI::Range(8, 192));
    app.add_option("--m", m, "Measurement count");
    app.add_option("--seed", seed, "Instance RNG seed");
    CLI11_PARSE(app, argc, argv);

    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    std::normal_distribution<double> nd(0.0, 1.0);

    kgrid::KGrid grid;
    grid.dims = {dim, dim, dim};
    grid.delta_k = {40.0, 40.0, 40.0};
    grid.center = {0.0, 0.0, 50.0 * dim};
    grid.interp = kgrid::Interp::linear;
    kgrid::ImageGeometry geom = kgrid::image_geometry(grid);

    geometry::Acquisition acq;
    acq.descriptors.resize(m);
    for (auto &d : acq.descriptors)
    {
        Vec3 q;
        for (int a = 0; a < 3; ++a)
        {
            double u = 0.5 + ur(gen) * (grid.dims[a] - 2.0);
            q[a] = grid.center[a] + (u - grid.dims[a] / 2) * grid.delta_k[a];
        }
        double qn = norm(q);
        d.freq = speed_of_light * qn / (4.0 * pi);
        d.theta = std::acos(std::clamp(q.z / qn, -1.0, 1.0));
        d.phi = std::atan2(q.y, q.x);
        d.mode = static_cast<Mode>(gen() % 3);
    }

    forward::Scene scene;
    double half = 0.45 * dim * geom.voxel_pitch.x / 2.0;
    for (int i = 0; i < 32; ++i)
    {
        forward::Scatterer sc;
        sc.pos = {half * (2.0 * ur(gen) - 1.0), half * (2.0 * ur(gen) - 1.0),
                  half * (2.0 * ur(gen) - 1.0)};
        sc.matrix = {cdouble{nd(gen), nd(gen)}, cdouble{nd(gen), nd(gen)},
                     cdouble{nd(gen), nd(gen)}};
        scene.scatterers.push_back(sc);
    }

    forward::ThreeMaps maps;
    maps.geometry = geom;
    for (auto *a : {&maps.xx, &maps.yy, &maps.xy})
    {
        a->resize(geom.size());
        for (auto &v : *a)
            v = cdouble{nd(gen), nd(gen)};
    }

    std::printf("instance: %d^3 voxels, M = %zu, linear interpolation, %d thread(s)\n\n", dim, m,
                omp_get_max_threads());
    std::printf("%-14s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    int rc = 0;

    forward::Hologram h_ser, h_par;
    double ts = timed([&] { h_ser = ref::simulate_hologram(scene, acq, 0.01, 11); });
    double tp = timed([&] { h_par = forward::simulate_hologram(scene, acq, 0.01, 11); });
    rc |= report("simulate", ts, tp, bits_equal(h_ser.values, h_par.values));

    std::vector<cdouble> f_ser, f_par;
    ts = timed([&] { f_ser = ref::apply_forward(maps, acq, grid); });
    tp = timed([&] { f_par = forward::apply_forward(maps, acq, grid); });
    rc |= report("apply_forward", ts, tp, bits_equal(f_ser, f_par));

    forward::ThreeMaps a_ser, a_par;
    ts = timed([&] { a_ser = ref::apply_adjoint(h_ser.values, acq, grid); });
    tp = timed([&] { a_par = forward::apply_adjoint(h_par.values, acq, grid); });
    rc |= report("apply_adjoint", ts, tp,
                 bits_equal(a_ser.xx, a_par.xx) && bits_equal(a_ser.yy, a_par.yy) &&
                     bits_equal(a_ser.xy, a_par.xy));

    std::vector<double> unit(m, 1.0);
    kgrid::GriddedSpectrum r_ser, r_par;
    ts = timed([&] { r_ser = ref::regrid(h_ser.values, unit, acq, grid); });
    tp = timed([&] { r_par = kgrid::regrid(h_par.values, unit, acq, grid); });
    rc |= report("regrid", ts, tp,
                 bits_equal(r_ser.values, r_par.values) &&
                     r_ser.hit_weight.size() == r_par.hit_weight.size() &&
                     std::memcmp(r_ser.hit_weight.data(), r_par.hit_weight.data(),
                                 r_ser.hit_weight.size() * sizeof(double)) == 0);

    return rc;
}
