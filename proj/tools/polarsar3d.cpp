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
// Batch pipeline: make-acq -> simulate -> reconstruct -> slice, plus a
// self-check harness. Angles are degrees on the command line and in JSON
// files, frequencies Hz, positions meters, slice floors dB.
// Exit codes: 0 success, 1 check failure, 2 usage/input error, 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polarsar3d/errors.hpp"
#include "polarsar3d/forward.hpp"
#include "polarsar3d/geometry.hpp"
#include "polarsar3d/inversion.hpp"
#include "polarsar3d/io.hpp"
#include "polarsar3d/kgrid.hpp"
#include "polarsar3d/polarimetry.hpp"
#include "polarsar3d/threading.hpp"

namespace
{
    using namespace polarsar3d;

    struct exit_with
    {
        int code;
        std::string message;
    };

    // Failures while loading inputs are usage errors (2); failures while
    // producing outputs are I/O errors (3).
    template <typename F>
    auto input_phase(F &&f) -> decltype(f())
    {
        try
        {
            return f();
        }
        catch (const error &e)
        {
            throw exit_with{2, e.what()};
        }
    }

    template <typename F>
    void output_phase(F &&f)
    {
        try
        {
            f();
        }
        catch (const io_error &e)
        {
            throw exit_with{3, e.what()};
        }
        catch (const error &e)
        {
            throw exit_with{2, e.what()};
        }
    }

    void run_make_acq(const std::string &mode_str, const std::string &theta,
                      const std::string &phi, const std::string &freq, const std::string &out)
    {
        geometry::Acquisition acq = input_phase(
            [&]
            {
                Mode mode = mode_from_string(mode_str);
                geometry::SweepSpec t = geometry::parse_sweep(theta);
                geometry::SweepSpec p = geometry::parse_sweep(phi);
                geometry::SweepSpec f = geometry::parse_sweep(freq);
                t = {deg2rad(t.start), deg2rad(t.step), deg2rad(t.stop)};
                p = {deg2rad(p.start), deg2rad(p.step), deg2rad(p.stop)};
                return geometry::expand_sweep(t, p, f, mode);
            });
        output_phase([&] { io::save_sweep_acquisition(theta, phi, freq,
                                                      mode_from_string(mode_str), out); });
        std::cout << "wrote " << out << ": M = " << acq.size() << " measurements\n";
    }

    void run_simulate(const std::string &scene_path, const std::string &acq_path,
                      const std::string &out, double sigma, std::uint64_t seed)
    {
        auto scene = input_phase([&] { return io::load_scene(scene_path); });
        auto acq = input_phase([&] { return io::load_acquisition(acq_path); });
        forward::Hologram holo;
        output_phase(
            [&]
            {
                holo = forward::simulate_hologram(scene, acq, sigma, seed);
                io::write_hologram(holo, out);
            });
        std::cout << "wrote " << out << ": M = " << holo.values.size() << " samples\n";
    }

    void run_reconstruct(const std::string &holo_path, const std::string &grid_path,
                         const std::string &out_dir, const std::string &interp)
    {
        auto holo = input_phase([&] { return io::read_hologram(holo_path); });
        auto grid = input_phase(
            [&]
            {
                kgrid::KGrid g = io::load_grid(grid_path);
                if (!interp.empty())
                    g.interp = kgrid::interp_from_string(interp);
                return g;
            });

        inversion::ReconstructionReport rep;
        output_phase(
            [&]
            {
                rep = inversion::mnls_fast(holo, grid);
                std::error_code ec;
                std::filesystem::create_directories(out_dir, ec);
                if (ec)
                    throw io_error("cannot create " + out_dir + ": " + ec.message());
                io::write_volume(rep.maps.xx, rep.maps.geometry, "xx", out_dir + "/xx.p3dvol");
                io::write_volume(rep.maps.yy, rep.maps.geometry, "yy", out_dir + "/yy.p3dvol");
                io::write_volume(rep.maps.xy, rep.maps.geometry, "xy", out_dir + "/xy.p3dvol");
                io::write_report(rep, grid, holo.values.size(), out_dir + "/report.json");
            });
        std::cout << "reconstructed " << holo.values.size() << " samples onto " << grid.dims[0]
                  << "x" << grid.dims[1] << "x" << grid.dims[2] << " voxels\n"
                  << "residual_norm = " << rep.residual_norm
                  << ", data_fit_relative = " << rep.data_fit_relative << "\n"
                  << "total " << rep.timings.total_s << " s (regrid " << rep.timings.regrid_s
                  << " s, fft " << rep.timings.fft_s << " s)\n"
                  << "wrote " << out_dir << "/{xx,yy,xy}.p3dvol and report.json\n";
    }

    void run_slice(const std::string &map_path, const std::string &axis_str, int index,
                   double db_floor, const std::string &out)
    {
        auto vol = input_phase([&] { return io::read_volume(map_path); });
        int axis = input_phase(
            [&]
            {
                if (axis_str == "x" || axis_str == "0")
                    return 0;
                if (axis_str == "y" || axis_str == "1")
                    return 1;
                if (axis_str == "z" || axis_str == "2")
                    return 2;
                throw invalid_input_error("axis must be x, y or z");
            });
        output_phase([&]
                     { io::export_slice(vol.values, vol.geometry, axis, index, db_floor, out); });
        std::cout << "wrote " << out << "\n";
    }

    // ---- self checks ----------------------------------------------------

    kgrid::KGrid random_grid(std::mt19937_64 &gen, kgrid::Interp interp)
    {
        std::uniform_int_distribution<int> dim(4, 8);
        kgrid::KGrid g;
        g.dims = {dim(gen), dim(gen), dim(gen)};
        g.delta_k = {40.0, 40.0, 40.0};
        g.center = {0.0, 0.0, 420.0};
        g.interp = interp;
        return g;
    }

    geometry::Acquisition random_on_grid_acq(std::mt19937_64 &gen, const kgrid::KGrid &g,
                                             std::size_t m)
    {
        std::set<std::size_t> picked;
        std::uniform_int_distribution<int> ux(0, g.dims[0] - 1), uy(0, g.dims[1] - 1),
            uz(0, g.dims[2] - 1);
        std::vector<Dims3> nodes;
        while (nodes.size() < m)
        {
            Dims3 n{ux(gen), uy(gen), uz(gen)};
            if (picked.insert(linear_index(g.dims, n[0], n[1], n[2])).second)
                nodes.push_back(n);
        }
        std::uniform_real_distribution<double> roll(0.0, 2.0 * pi);
        geometry::Acquisition acq;
        const Mode modes[3] = {Mode::HH, Mode::VV, Mode::HV};
        for (int k = 0; k < 3; ++k)
        {
            std::vector<Dims3> part(nodes.begin() + k * m / 3, nodes.begin() + (k + 1) * m / 3);
            if (part.empty())
                continue;
            std::vector<double> phi(part.size());
            for (auto &p : phi)
                p = roll(gen);
            auto sub = kgrid::on_grid_acquisition(g, part, modes[k], phi);
            acq.descriptors.insert(acq.descriptors.end(), sub.descriptors.begin(),
                                   sub.descriptors.end());
        }
        return acq;
    }

    geometry::Acquisition random_off_grid_acq(std::mt19937_64 &gen, const kgrid::KGrid &g,
                                              std::size_t m)
    {
        geometry::Acquisition acq;
        std::uniform_real_distribution<double> ur(0.0, 1.0);
        std::uniform_int_distribution<int> um(0, 2);
        for (std::size_t i = 0; i < m; ++i)
        {
            Vec3 q;
            for (int a = 0; a < 3; ++a)
            {
                double u = 0.5 + ur(gen) * (g.dims[a] - 2.0);
                q[a] = g.center[a] + (u - g.dims[a] / 2) * g.delta_k[a];
            }
            double qn = norm(q);
            geometry::MeasurementDescriptor d;
            d.freq = speed_of_light * qn / (4.0 * pi);
            d.theta = std::acos(std::clamp(q.z / qn, -1.0, 1.0));
            d.phi = std::atan2(q.y, q.x);
            d.mode = static_cast<Mode>(um(gen));
            acq.descriptors.push_back(d);
        }
        return acq;
    }

    std::vector<cdouble> random_complex(std::mt19937_64 &gen, std::size_t n)
    {
        std::normal_distribution<double> nd(0.0, 1.0);
        std::vector<cdouble> v(n);
        for (auto &x : v)
            x = cdouble{nd(gen), nd(gen)};
        return v;
    }

    int run_check(const std::string &mode, std::uint64_t seed, std::size_t trials)
    {
        if (mode == "weights")
        {
            if (trials == 0)
                trials = 10000;
            std::mt19937_64 gen(seed);
            std::uniform_real_distribution<double> uth(0.0, deg2rad(80.0));
            std::uniform_real_distribution<double> uph(0.0, 2.0 * pi);
            double worst = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
            {
                double theta = uth(gen), phi = uph(gen);
                for (Mode m : {Mode::HH, Mode::VV, Mode::HV})
                {
                    auto a = polarimetry::closed_form_weights(theta, phi, m);
                    auto b = polarimetry::projection_composed_weights(theta, phi, m);
                    worst = std::max({worst, std::abs(a.xx - b.xx), std::abs(a.yy - b.yy),
                                      std::abs(a.xy - b.xy)});
                }
            }
            bool ok = worst < 1e-12;
            std::cout << "weights: " << trials << " trials, max |closed-form - composed| = "
                      << worst << " (tolerance 1e-12): " << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? 0 : 1;
        }
        if (mode == "adjoint")
        {
            if (trials == 0)
                trials = 100;
            std::mt19937_64 gen(seed);
            double worst = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
            {
                kgrid::KGrid g = random_grid(
                    gen, t % 2 ? kgrid::Interp::linear : kgrid::Interp::nearest);
                std::uniform_int_distribution<int> um(16, 96);
                std::size_t m = std::min<std::size_t>(um(gen), total_size(g.dims) / 2);
                geometry::Acquisition acq = (t / 2) % 2 ? random_off_grid_acq(gen, g, m)
                                                        : random_on_grid_acq(gen, g, m);
                m = acq.size();

                forward::ThreeMaps x;
                x.geometry = kgrid::image_geometry(g);
                x.xx = random_complex(gen, x.geometry.size());
                x.yy = random_complex(gen, x.geometry.size());
                x.xy = random_complex(gen, x.geometry.size());
                std::vector<cdouble> y = random_complex(gen, m);

                std::vector<cdouble> ax = forward::apply_forward(x, acq, g);
                forward::ThreeMaps aty = forward::apply_adjoint(y, acq, g);

                cdouble lhs{0.0, 0.0}, rhs{0.0, 0.0};
                for (std::size_t i = 0; i < m; ++i)
                    lhs += ax[i] * std::conj(y[i]);
                for (std::size_t v = 0; v < x.geometry.size(); ++v)
                    rhs += x.xx[v] * std::conj(aty.xx[v]) + x.yy[v] * std::conj(aty.yy[v]) +
                           x.xy[v] * std::conj(aty.xy[v]);
                double defect =
                    std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
                worst = std::max(worst, defect);
            }
            bool ok = worst < 1e-10;
            std::cout << "adjoint: " << trials << " trials, max relative defect = " << worst
                      << " (tolerance 1e-10): " << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? 0 : 1;
        }
        if (mode == "oracle")
        {
            if (trials == 0)
                trials = 25;
            std::mt19937_64 gen(seed);
            double worst = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
            {
                kgrid::KGrid g;
                g.dims = {6, 6, 6};
                g.delta_k = {40.0, 40.0, 40.0};
                g.center = {0.0, 0.0, 420.0};
                g.interp = kgrid::Interp::nearest;
                geometry::Acquisition acq = random_on_grid_acq(gen, g, 96);

                forward::Hologram holo;
                holo.acquisition = acq;
                holo.values = random_complex(gen, acq.size());

                auto fast = inversion::mnls_fast(holo, g);
                auto dense = inversion::mnls_dense(holo, kgrid::image_geometry(g));

                const std::vector<cdouble> *fa[3] = {&fast.maps.xx, &fast.maps.yy, &fast.maps.xy};
                const std::vector<cdouble> *da[3] = {&dense.xx, &dense.yy, &dense.xy};
                for (int k = 0; k < 3; ++k)
                {
                    double num = 0.0, den = 0.0;
                    for (std::size_t v = 0; v < fa[k]->size(); ++v)
                    {
                        num += std::norm((*fa[k])[v] - (*da[k])[v]);
                        den += std::norm((*da[k])[v]);
                    }
                    worst = std::max(worst, std::sqrt(num / std::max(den, 1e-300)));
                }
            }
            bool ok = worst < 1e-8;
            std::cout << "oracle: " << trials << " instances, max map relative error = " << worst
                      << " (tolerance 1e-8): " << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? 0 : 1;
        }
        throw exit_with{2, "unknown check mode '" + mode + "' (expected weights, adjoint or oracle)"};
    }
} // namespace

int main(int argc, char **argv)
{
    polarsar3d::apply_thread_env();

    CLI::App app{"polarsar3d: polarization-diverse 3-D radar imaging pipeline.\n"
                 "Angles in degrees, frequencies in Hz, positions in meters."};
    app.require_subcommand(1);

    std::string mode, theta, phi, freq, out, scene, acqp, holo, grid, outdir, interp, map, axis;
    double sigma = 0.0, db_floor = -60.0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    int index = 0;

    auto &mk = *app.add_subcommand("make-acq", "Expand a sweep into an acquisition JSON file");
    mk.add_option("--mode", mode, "Polarization mode: HH, VV or HV")->required();
    mk.add_option("--theta", theta, "Azimuth sweep, degrees, start:step:stop")->required();
    mk.add_option("--phi", phi, "Roll sweep, degrees, start:step:stop")->required();
    mk.add_option("--freq", freq, "Frequency sweep, Hz, start:step:stop")->required();
    mk.add_option("--out", out, "Output acquisition JSON path")->required();
    mk.callback([&] { run_make_acq(mode, theta, phi, freq, out); });

    auto &sim = *app.add_subcommand("simulate", "Simulate a hologram from a scene JSON file");
    sim.add_option("--scene", scene, "Scene JSON path")->required();
    sim.add_option("--acq", acqp, "Acquisition JSON path")->required();
    sim.add_option("--out", out, "Output hologram path")->required();
    sim.add_option("--noise-sigma", sigma, "Complex noise std dev (0 = noiseless)");
    sim.add_option("--seed", seed, "Noise RNG seed");
    sim.callback([&] { run_simulate(scene, acqp, out, sigma, seed); });

    auto &rec = *app.add_subcommand("reconstruct",
                                    "Reconstruct the xx/yy/xy maps from a hologram");
    rec.add_option("--holo", holo, "Input hologram path")->required();
    rec.add_option("--grid", grid, "k-grid JSON path")->required();
    rec.add_option("--out-dir", outdir, "Output directory for volumes and report")->required();
    rec.add_option("--interp", interp, "Override grid interpolation: nearest or linear");
    rec.callback([&] { run_reconstruct(holo, grid, outdir, interp); });

    auto &chk = *app.add_subcommand("check", "Run a built-in numerical self check");
    chk.add_option("--mode", mode, "weights, adjoint or oracle")->required();
    chk.add_option("--seed", seed, "RNG seed")->default_val(1);
    chk.add_option("--trials", trials, "Trial count (0 = mode default)");
    int check_rc = 0;
    chk.callback([&] { check_rc = run_check(mode, seed, trials); });

    auto &sl = *app.add_subcommand("slice", "Export a dB-scaled PGM slice of a volume");
    sl.add_option("--map", map, "Input volume path")->required();
    sl.add_option("--axis", axis, "Slice axis: x, y or z")->required();
    sl.add_option("--index", index, "Slice index along the axis")->required();
    sl.add_option("--db-floor", db_floor, "Dynamic-range floor in dB (negative)");
    sl.add_option("--out", out, "Output PGM path")->required();
    sl.callback([&] { run_slice(map, axis, index, db_floor, out); });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    catch (const exit_with &x)
    {
        if (!x.message.empty())
            std::cerr << "error: " << x.message << "\n";
        return x.code;
    }
    return check_rc;
}
