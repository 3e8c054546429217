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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sys/wait.h>

#include "polarsar3d/io.hpp"
#include "testutil.hpp"

using namespace polarsar3d;
using namespace testutil;

namespace
{
    struct CliResult
    {
        int code = -1;
        std::string output; // stdout + stderr
    };

    CliResult run_cli(const TempDir &tmp, const std::string &args)
    {
        const std::string log = tmp.file("cli_log.txt");
        std::string cmd = std::string(POLARSAR3D_CLI_PATH) + " " + args + " > " + log + " 2>&1";
        int raw = std::system(cmd.c_str());
        REQUIRE(raw != -1);
        REQUIRE(WIFEXITED(raw));
        return {WEXITSTATUS(raw), slurp(log)};
    }

    void spit(const std::string &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        REQUIRE(out.good());
        out << text;
        REQUIRE(out.good());
    }
} // namespace

TEST_CASE("make-acq expands sweeps and reports the measurement count")
{
    TempDir tmp;
    auto res = run_cli(tmp, "make-acq --mode HH --theta 0:2:20 --phi 0:5:355 "
                            "--freq 1e9:1e8:1.2e9 --out " +
                                tmp.file("acq.json"));
    CHECK(res.code == 0);
    CHECK(res.output.find("2376") != std::string::npos);
    geometry::Acquisition acq = io::load_acquisition(tmp.file("acq.json"));
    CHECK(acq.size() == 11 * 72 * 3);
    CHECK(acq.descriptors[0].mode == Mode::HH);
}

TEST_CASE("make-acq maps failures to the documented exit codes")
{
    TempDir tmp;
    // A sweep that passes through a singular antenna frame is a usage error.
    auto singular = run_cli(tmp, "make-acq --mode VV --theta 90 --phi 0 --freq 1e9 --out " +
                                     tmp.file("bad.json"));
    CHECK(singular.code == 2);

    // Missing required options are parse errors.
    auto missing = run_cli(tmp, "make-acq --mode VV --theta 0:2:10 --out " + tmp.file("x.json"));
    CHECK(missing.code == 2);

    // Unparseable sweep strings are usage errors.
    auto garbled = run_cli(tmp, "make-acq --mode VV --theta 1:2:junk --phi 0 --freq 1e9 --out " +
                                    tmp.file("y.json"));
    CHECK(garbled.code == 2);

    // Unwritable output destinations are I/O errors.
    auto unwritable = run_cli(
        tmp, "make-acq --mode VV --theta 0 --phi 0 --freq 1e9 --out /dev/null/sub/acq.json");
    CHECK(unwritable.code == 3);

    CHECK(run_cli(tmp, "--help").code == 0);
    CHECK(run_cli(tmp, "make-acq --help").code == 0);
    CHECK(run_cli(tmp, "no-such-command").code == 2);
}

TEST_CASE("simulate is deterministic in the seed and honors the noise level")
{
    TempDir tmp;
    spit(tmp.file("scene.json"),
         "{\"scatterers\": [{\"pos_m\": [0.1, -0.05, 0.2], \"sxx\": [1.0, 0.0], "
         "\"syy\": [0.5, 0.5]}]}");
    auto mk = run_cli(tmp, "make-acq --mode HH --theta 0:2:20 --phi 0:5:355 "
                           "--freq 1e9:1e8:1.2e9 --out " +
                               tmp.file("acq.json"));
    REQUIRE(mk.code == 0);

    const std::string base = "simulate --scene " + tmp.file("scene.json") + " --acq " +
                             tmp.file("acq.json") + " --noise-sigma 0.5 --seed 11 --out ";
    REQUIRE(run_cli(tmp, base + tmp.file("a.p3dholo")).code == 0);
    REQUIRE(run_cli(tmp, base + tmp.file("b.p3dholo")).code == 0);
    CHECK(slurp(tmp.file("a.p3dholo")) == slurp(tmp.file("b.p3dholo")));

    const std::string other = "simulate --scene " + tmp.file("scene.json") + " --acq " +
                              tmp.file("acq.json") + " --noise-sigma 0.5 --seed 12 --out " +
                              tmp.file("c.p3dholo");
    REQUIRE(run_cli(tmp, other).code == 0);
    CHECK(slurp(tmp.file("a.p3dholo")) != slurp(tmp.file("c.p3dholo")));

    // Noise power: simulate an empty scene so the hologram is pure noise.
    spit(tmp.file("empty.json"), "{\"scatterers\": []}");
    auto noise = run_cli(tmp, "simulate --scene " + tmp.file("empty.json") + " --acq " +
                                  tmp.file("acq.json") + " --noise-sigma 0.5 --seed 3 --out " +
                                  tmp.file("n.p3dholo"));
    REQUIRE(noise.code == 0);
    forward::Hologram holo = io::read_hologram(tmp.file("n.p3dholo"));
    double power = 0.0;
    for (cdouble v : holo.values)
        power += std::norm(v);
    power /= static_cast<double>(holo.values.size());
    CHECK(power == doctest::Approx(0.25).epsilon(0.1));

    // A missing scene file is an input error.
    auto missing = run_cli(tmp, "simulate --scene " + tmp.file("nope.json") + " --acq " +
                                    tmp.file("acq.json") + " --out " + tmp.file("x.p3dholo"));
    CHECK(missing.code == 2);
    CHECK(missing.output.find("nope.json") != std::string::npos);
}

TEST_CASE("reconstruct recovers on-node holograms and is reproducible")
{
    std::mt19937_64 gen(223);
    TempDir tmp;

    kgrid::KGrid grid;
    grid.dims = {6, 6, 8};
    grid.delta_k = {40.0, 40.0, 40.0};
    grid.center = {0.0, 0.0, 420.0};
    grid.interp = kgrid::Interp::nearest;
    io::save_grid(grid, tmp.file("grid.json"));

    auto nodes = random_nodes(gen, grid, 48);
    forward::Hologram holo;
    holo.acquisition = kgrid::on_grid_acquisition(grid, nodes, Mode::HH);
    holo.values = random_complex(gen, holo.acquisition.size());
    io::write_hologram(holo, tmp.file("holo.p3dholo"));

    const std::string cmd = "reconstruct --holo " + tmp.file("holo.p3dholo") + " --grid " +
                            tmp.file("grid.json") + " --out-dir ";
    auto res = run_cli(tmp, cmd + tmp.file("rec1"));
    CHECK(res.code == 0);
    CHECK(res.output.find("data_fit_relative") != std::string::npos);

    nlohmann::json report = nlohmann::json::parse(slurp(tmp.file("rec1/report.json")));
    CHECK(report["hologram_m"] == 48);
    CHECK(report["data_fit_relative"].get<double>() < 1e-8);

    io::Volume xx = io::read_volume(tmp.file("rec1/xx.p3dvol"));
    CHECK(xx.geometry.dims == grid.dims);
    CHECK(xx.label == "xx");
    io::Volume xy = io::read_volume(tmp.file("rec1/xy.p3dvol"));
    CHECK(xy.label == "xy");

    // Bit-identical rerun.
    REQUIRE(run_cli(tmp, cmd + tmp.file("rec2")).code == 0);
    CHECK(slurp(tmp.file("rec1/xx.p3dvol")) == slurp(tmp.file("rec2/xx.p3dvol")));
    CHECK(slurp(tmp.file("rec1/yy.p3dvol")) == slurp(tmp.file("rec2/yy.p3dvol")));
    CHECK(slurp(tmp.file("rec1/xy.p3dvol")) == slurp(tmp.file("rec2/xy.p3dvol")));

    // The interpolation override is accepted.
    auto lin = run_cli(tmp, cmd + tmp.file("rec3") + " --interp linear");
    CHECK(lin.code == 0);

    // Missing inputs exit 2 and name the offending path.
    auto missing = run_cli(tmp, "reconstruct --holo " + tmp.file("absent.p3dholo") + " --grid " +
                                    tmp.file("grid.json") + " --out-dir " + tmp.file("rec4"));
    CHECK(missing.code == 2);
    CHECK(missing.output.find("absent.p3dholo") != std::string::npos);

    // Unwritable output directories exit 3.
    auto unwritable = run_cli(tmp, cmd + "/dev/null/rec");
    CHECK(unwritable.code == 3);
}

TEST_CASE("slice exports PGM images from reconstructed volumes")
{
    std::mt19937_64 gen(227);
    TempDir tmp;
    kgrid::ImageGeometry geom;
    geom.dims = {6, 5, 4};
    geom.voxel_pitch = {0.1, 0.1, 0.1};
    geom.origin = {-0.3, -0.25, -0.2};
    auto values = random_complex(gen, geom.size());
    io::write_volume(values, geom, "xx", tmp.file("map.p3dvol"));

    auto res = run_cli(tmp, "slice --map " + tmp.file("map.p3dvol") +
                                " --axis z --index 2 --db-floor -50 --out " + tmp.file("s.pgm"));
    CHECK(res.code == 0);
    CHECK(slurp(tmp.file("s.pgm")).substr(0, 7) == "P5\n6 5\n");

    // Numeric axis spelling works too.
    CHECK(run_cli(tmp, "slice --map " + tmp.file("map.p3dvol") +
                           " --axis 0 --index 3 --out " + tmp.file("sx.pgm"))
              .code == 0);
    CHECK(slurp(tmp.file("sx.pgm")).substr(0, 7) == "P5\n5 4\n");

    CHECK(run_cli(tmp, "slice --map " + tmp.file("map.p3dvol") +
                           " --axis w --index 0 --out " + tmp.file("e.pgm"))
              .code == 2);
    CHECK(run_cli(tmp, "slice --map " + tmp.file("map.p3dvol") +
                           " --axis z --index 99 --out " + tmp.file("e.pgm"))
              .code == 2);
    CHECK(run_cli(tmp, "slice --map " + tmp.file("nope.p3dvol") +
                           " --axis z --index 0 --out " + tmp.file("e.pgm"))
              .code == 2);
}

TEST_CASE("the built-in self checks pass")
{
    TempDir tmp;
    auto weights = run_cli(tmp, "check --mode weights --trials 500 --seed 5");
    CHECK(weights.code == 0);
    CHECK(weights.output.find("PASS") != std::string::npos);

    auto adjoint = run_cli(tmp, "check --mode adjoint --trials 4 --seed 6");
    CHECK(adjoint.code == 0);
    CHECK(adjoint.output.find("PASS") != std::string::npos);

    auto oracle = run_cli(tmp, "check --mode oracle --trials 2 --seed 7");
    CHECK(oracle.code == 0);
    CHECK(oracle.output.find("PASS") != std::string::npos);

    CHECK(run_cli(tmp, "check --mode bogus").code == 2);
}
