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

#include <cstring>
#include <fstream>
#include <json.hpp>
#include <random>

#include "polarsar3d/errors.hpp"
#include "polarsar3d/io.hpp"
#include "testutil.hpp"

using namespace polarsar3d;
using namespace testutil;

namespace
{
    void spit(const std::string &path, const std::string &bytes)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        REQUIRE(out.good());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        REQUIRE(out.good());
    }

    forward::Hologram sample_hologram(std::mt19937_64 &gen, std::size_t m)
    {
        forward::Hologram holo;
        std::uniform_real_distribution<double> th(0.0, 0.6), ph(0.0, 2.0 * pi), fr(8e9, 12e9);
        for (std::size_t i = 0; i < m; ++i)
            holo.acquisition.descriptors.push_back(
                {th(gen), ph(gen), fr(gen), static_cast<Mode>(i % 3)});
        holo.values = random_complex(gen, m);
        return holo;
    }

    kgrid::ImageGeometry sample_geometry()
    {
        kgrid::ImageGeometry geom;
        geom.dims = {4, 3, 5};
        geom.voxel_pitch = {0.25, 0.5, 0.125};
        geom.origin = {-0.5, -0.5, -0.25};
        return geom;
    }

    std::vector<cdouble> float_exact_values(std::mt19937_64 &gen, std::size_t n)
    {
        auto values = random_complex(gen, n);
        for (auto &v : values)
            v = cdouble{static_cast<double>(static_cast<float>(v.real())),
                        static_cast<double>(static_cast<float>(v.imag()))};
        return values;
    }

    // 16-byte magic + u64 LE header length + header, for hand-built files.
    std::string container_prefix(const std::string &magic, const std::string &header)
    {
        std::string bytes = magic;
        bytes.resize(16, '\0');
        std::uint64_t len = header.size();
        for (int b = 0; b < 8; ++b)
            bytes.push_back(static_cast<char>((len >> (8 * b)) & 0xff));
        return bytes + header;
    }
} // namespace

TEST_CASE("holograms roundtrip bit-exactly")
{
    std::mt19937_64 gen(163);
    TempDir tmp;
    forward::Hologram holo = sample_hologram(gen, 17);
    const std::string path = tmp.file("mixed.p3dholo");
    io::write_hologram(holo, path);

    forward::Hologram back = io::read_hologram(path);
    REQUIRE(back.values.size() == holo.values.size());
    CHECK(std::memcmp(back.values.data(), holo.values.data(),
                      holo.values.size() * sizeof(cdouble)) == 0);
    for (std::size_t i = 0; i < holo.acquisition.size(); ++i)
    {
        const auto &a = holo.acquisition.descriptors[i];
        const auto &b = back.acquisition.descriptors[i];
        CHECK(b.theta == doctest::Approx(a.theta).epsilon(1e-14));
        CHECK(b.phi == doctest::Approx(a.phi).epsilon(1e-14));
        CHECK(b.freq == a.freq);
        CHECK(b.mode == a.mode);
    }
}

TEST_CASE("hologram writes are byte-deterministic")
{
    std::mt19937_64 gen(167);
    TempDir tmp;
    forward::Hologram holo = sample_hologram(gen, 9);
    io::write_hologram(holo, tmp.file("a.p3dholo"));
    io::write_hologram(holo, tmp.file("b.p3dholo"));
    CHECK(slurp(tmp.file("a.p3dholo")) == slurp(tmp.file("b.p3dholo")));
}

TEST_CASE("corrupt hologram containers are diagnosed")
{
    std::mt19937_64 gen(173);
    TempDir tmp;
    forward::Hologram holo = sample_hologram(gen, 5);
    const std::string path = tmp.file("holo.p3dholo");
    io::write_hologram(holo, path);
    const std::string good = slurp(path);

    std::string bad_magic = good;
    bad_magic[0] = 'X';
    spit(path, bad_magic);
    CHECK_THROWS_WITH_AS(io::read_hologram(path), doctest::Contains("bad magic"), format_error);

    std::string truncated = good;
    truncated.resize(good.size() - 8);
    spit(path, truncated);
    CHECK_THROWS_WITH_AS(io::read_hologram(path),
                         doctest::Contains("payload size mismatch"), format_error);
    CHECK_THROWS_WITH_AS(io::read_hologram(path), doctest::Contains("80 bytes"), format_error);

    std::string trailing = good + "zz";
    spit(path, trailing);
    CHECK_THROWS_WITH_AS(io::read_hologram(path),
                         doctest::Contains("payload size mismatch"), format_error);

    std::string overrun = good;
    for (int b = 16; b < 24; ++b)
        overrun[b] = static_cast<char>(0xff);
    spit(path, overrun);
    CHECK_THROWS_WITH_AS(io::read_hologram(path),
                         doctest::Contains("truncated or corrupt header"), format_error);

    std::string garbled = good;
    garbled[24] = 'X';
    spit(path, garbled);
    CHECK_THROWS_WITH_AS(io::read_hologram(path),
                         doctest::Contains("malformed JSON header"), format_error);

    spit(path, container_prefix("P3DHOLO1", "{\"format_version\":2}"));
    CHECK_THROWS_WITH_AS(io::read_hologram(path),
                         doctest::Contains("unsupported format version"), format_error);

    CHECK_THROWS_AS(io::read_hologram(tmp.file("missing.p3dholo")), io_error);
}

TEST_CASE("hologram writes reject inconsistent input")
{
    std::mt19937_64 gen(179);
    TempDir tmp;
    forward::Hologram holo = sample_hologram(gen, 4);
    holo.values.pop_back();
    CHECK_THROWS_AS(io::write_hologram(holo, tmp.file("bad.p3dholo")), invalid_input_error);
    forward::Hologram empty;
    CHECK_THROWS_AS(io::write_hologram(empty, tmp.file("empty.p3dholo")), invalid_input_error);
}

TEST_CASE("volumes roundtrip exactly at float32 precision")
{
    std::mt19937_64 gen(181);
    TempDir tmp;
    kgrid::ImageGeometry geom = sample_geometry();
    auto values = float_exact_values(gen, geom.size());
    const std::string path = tmp.file("map.p3dvol");
    io::write_volume(values, geom, "xy", path);

    io::Volume vol = io::read_volume(path);
    CHECK(vol.label == "xy");
    CHECK(vol.geometry.dims == geom.dims);
    CHECK(vol.geometry.voxel_pitch.x == geom.voxel_pitch.x);
    CHECK(vol.geometry.voxel_pitch.y == geom.voxel_pitch.y);
    CHECK(vol.geometry.voxel_pitch.z == geom.voxel_pitch.z);
    CHECK(vol.geometry.origin.x == geom.origin.x);
    CHECK(vol.geometry.origin.y == geom.origin.y);
    CHECK(vol.geometry.origin.z == geom.origin.z);
    REQUIRE(vol.values.size() == values.size());
    CHECK(std::memcmp(vol.values.data(), values.data(), values.size() * sizeof(cdouble)) == 0);
}

TEST_CASE("volume containers validate their input and shape")
{
    std::mt19937_64 gen(191);
    TempDir tmp;
    kgrid::ImageGeometry geom = sample_geometry();
    auto values = float_exact_values(gen, geom.size());

    CHECK_THROWS_AS(io::write_volume(values, geom, "zz", tmp.file("v.p3dvol")),
                    invalid_input_error);
    auto short_values = values;
    short_values.pop_back();
    CHECK_THROWS_AS(io::write_volume(short_values, geom, "xx", tmp.file("v.p3dvol")),
                    invalid_input_error);
    auto nan_values = values;
    nan_values[3] = cdouble{std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_WITH_AS(io::write_volume(nan_values, geom, "xx", tmp.file("v.p3dvol")),
                         doctest::Contains("voxel 3"), invalid_input_error);

    // A hologram container is not a volume.
    forward::Hologram holo = sample_hologram(gen, 3);
    io::write_hologram(holo, tmp.file("h.p3dholo"));
    CHECK_THROWS_WITH_AS(io::read_volume(tmp.file("h.p3dholo")),
                         doctest::Contains("bad magic"), format_error);

    // Declared dims that disagree with the payload.
    io::write_volume(values, geom, "xx", tmp.file("v.p3dvol"));
    std::string bytes = slurp(tmp.file("v.p3dvol"));
    bytes.resize(bytes.size() - 4);
    spit(tmp.file("v.p3dvol"), bytes);
    CHECK_THROWS_WITH_AS(io::read_volume(tmp.file("v.p3dvol")),
                         doctest::Contains("payload size mismatch"), format_error);

    // Hand-built header with absurd dims must be rejected before allocating.
    spit(tmp.file("huge.p3dvol"),
         container_prefix("P3DVOL01",
                          "{\"format_version\":1,\"dims\":[1000000,1000000,1000000],"
                          "\"voxel_pitch_m\":[1,1,1],\"origin_m\":[0,0,0],"
                          "\"map\":\"xx\",\"dtype\":\"complex64\"}"));
    CHECK_THROWS_WITH_AS(io::read_volume(tmp.file("huge.p3dvol")),
                         doctest::Contains("bad dims"), format_error);
}

TEST_CASE("export_slice writes calibrated PGM images")
{
    TempDir tmp;
    kgrid::ImageGeometry geom = sample_geometry(); // dims 4 x 3 x 5

    SUBCASE("an impulse maps to a single bright pixel")
    {
        std::vector<cdouble> values(geom.size(), cdouble{0.0, 0.0});
        values[linear_index(geom.dims, 1, 2, 3)] = cdouble{0.0, 2.5};
        io::export_slice(values, geom, 2, 3, -60.0, tmp.file("z.pgm"));
        std::string img = slurp(tmp.file("z.pgm"));
        const std::string header = "P5\n4 3\n255\n";
        REQUIRE(img.substr(0, header.size()) == header);
        REQUIRE(img.size() == header.size() + 12);
        for (int p = 0; p < 12; ++p)
            CHECK(static_cast<unsigned char>(img[header.size() + p]) ==
                  (p == 2 * 4 + 1 ? 255 : 0));

        // A slice that misses the impulse is all black.
        io::export_slice(values, geom, 2, 0, -60.0, tmp.file("z0.pgm"));
        std::string miss = slurp(tmp.file("z0.pgm"));
        for (std::size_t p = header.size(); p < miss.size(); ++p)
            CHECK(static_cast<unsigned char>(miss[p]) == 0);
    }

    SUBCASE("axis selection transposes the image shape")
    {
        std::vector<cdouble> values(geom.size(), cdouble{1.0, 0.0});
        io::export_slice(values, geom, 0, 2, -40.0, tmp.file("x.pgm"));
        CHECK(slurp(tmp.file("x.pgm")).substr(0, 9) == "P5\n3 5\n25");
        io::export_slice(values, geom, 1, 0, -40.0, tmp.file("y.pgm"));
        CHECK(slurp(tmp.file("y.pgm")).substr(0, 9) == "P5\n4 5\n25");

        // A constant volume sits at the 0 dB peak everywhere: all white.
        std::string img = slurp(tmp.file("x.pgm"));
        for (std::size_t p = std::strlen("P5\n3 5\n255\n"); p < img.size(); ++p)
            CHECK(static_cast<unsigned char>(img[p]) == 255);
    }

    SUBCASE("the dB floor clamps to black")
    {
        std::vector<cdouble> values(geom.size(), cdouble{1.0, 0.0});
        values[0] = cdouble{1e-3, 0.0}; // exactly -60 dB below the peak
        values[1] = cdouble{1e-8, 0.0}; // far below the floor
        io::export_slice(values, geom, 2, 0, -60.0, tmp.file("f.pgm"));
        std::string img = slurp(tmp.file("f.pgm"));
        const std::size_t base = std::strlen("P5\n4 3\n255\n");
        CHECK(static_cast<unsigned char>(img[base + 0]) == 0);
        CHECK(static_cast<unsigned char>(img[base + 1]) == 0);
        CHECK(static_cast<unsigned char>(img[base + 2]) == 255);
    }

    SUBCASE("an all-zero volume produces an all-black image")
    {
        std::vector<cdouble> values(geom.size(), cdouble{0.0, 0.0});
        io::export_slice(values, geom, 2, 2, -60.0, tmp.file("zero.pgm"));
        std::string img = slurp(tmp.file("zero.pgm"));
        for (std::size_t p = std::strlen("P5\n4 3\n255\n"); p < img.size(); ++p)
            CHECK(static_cast<unsigned char>(img[p]) == 0);
    }

    SUBCASE("bad arguments are rejected")
    {
        std::vector<cdouble> values(geom.size(), cdouble{1.0, 0.0});
        CHECK_THROWS_AS(io::export_slice(values, geom, 3, 0, -60.0, tmp.file("b.pgm")),
                        invalid_input_error);
        CHECK_THROWS_AS(io::export_slice(values, geom, 2, 5, -60.0, tmp.file("b.pgm")),
                        invalid_input_error);
        CHECK_THROWS_AS(io::export_slice(values, geom, 2, -1, -60.0, tmp.file("b.pgm")),
                        invalid_input_error);
        CHECK_THROWS_AS(io::export_slice(values, geom, 2, 0, 0.0, tmp.file("b.pgm")),
                        invalid_input_error);
        values.pop_back();
        CHECK_THROWS_AS(io::export_slice(values, geom, 2, 0, -60.0, tmp.file("b.pgm")),
                        invalid_input_error);
    }
}

TEST_CASE("scenes roundtrip through JSON")
{
    TempDir tmp;
    forward::Scene scene;
    scene.scatterers.push_back(
        {Vec3{0.5, -1.25, 2.0}, {cdouble{1.0, -2.0}, cdouble{0.25, 0.0}, cdouble{0.0, 3.0}}});
    scene.scatterers.push_back({Vec3{0.0, 0.0, 0.0}, {cdouble{1.0, 0.0}, {}, {}}});
    io::save_scene(scene, tmp.file("scene.json"));

    forward::Scene back = io::load_scene(tmp.file("scene.json"));
    REQUIRE(back.scatterers.size() == 2);
    for (std::size_t n = 0; n < 2; ++n)
    {
        CHECK(back.scatterers[n].pos.x == scene.scatterers[n].pos.x);
        CHECK(back.scatterers[n].pos.y == scene.scatterers[n].pos.y);
        CHECK(back.scatterers[n].pos.z == scene.scatterers[n].pos.z);
        CHECK(back.scatterers[n].matrix.xx == scene.scatterers[n].matrix.xx);
        CHECK(back.scatterers[n].matrix.yy == scene.scatterers[n].matrix.yy);
        CHECK(back.scatterers[n].matrix.xy == scene.scatterers[n].matrix.xy);
    }
}

TEST_CASE("scene fields default to zero and malformed scenes are rejected")
{
    TempDir tmp;
    spit(tmp.file("scene.json"),
         "{\"scatterers\": [{\"pos_m\": [1.0, 2.0, 3.0], \"syy\": [4.0, -1.0]}]}");
    forward::Scene scene = io::load_scene(tmp.file("scene.json"));
    REQUIRE(scene.scatterers.size() == 1);
    CHECK(scene.scatterers[0].pos.z == 3.0);
    CHECK(scene.scatterers[0].matrix.xx == cdouble{0.0, 0.0});
    CHECK(scene.scatterers[0].matrix.yy == cdouble{4.0, -1.0});
    CHECK(scene.scatterers[0].matrix.xy == cdouble{0.0, 0.0});

    spit(tmp.file("bad.json"), "{\"scatterers\": [{\"pos_m\": [1.0, 2.0");
    CHECK_THROWS_AS(io::load_scene(tmp.file("bad.json")), format_error);
    spit(tmp.file("noarr.json"), "{\"points\": []}");
    CHECK_THROWS_AS(io::load_scene(tmp.file("noarr.json")), format_error);
    spit(tmp.file("nopos.json"), "{\"scatterers\": [{\"sxx\": [1.0, 0.0]}]}");
    CHECK_THROWS_AS(io::load_scene(tmp.file("nopos.json")), format_error);
}

TEST_CASE("sweep acquisitions load to the expanded descriptor list")
{
    TempDir tmp;
    io::save_sweep_acquisition("0:2:8", "0:45:315", "1e9:5e8:2e9", Mode::HV,
                               tmp.file("acq.json"));
    geometry::Acquisition acq = io::load_acquisition(tmp.file("acq.json"));

    geometry::SweepSpec th = geometry::parse_sweep("0:2:8");
    geometry::SweepSpec ph = geometry::parse_sweep("0:45:315");
    geometry::SweepSpec fr = geometry::parse_sweep("1e9:5e8:2e9");
    geometry::Acquisition want = geometry::expand_sweep(
        {deg2rad(th.start), deg2rad(th.step), deg2rad(th.stop)},
        {deg2rad(ph.start), deg2rad(ph.step), deg2rad(ph.stop)}, fr, Mode::HV);

    REQUIRE(acq.size() == want.size());
    REQUIRE(acq.size() == 5 * 8 * 3);
    for (std::size_t i = 0; i < acq.size(); ++i)
    {
        CHECK(acq.descriptors[i].theta == want.descriptors[i].theta);
        CHECK(acq.descriptors[i].phi == want.descriptors[i].phi);
        CHECK(acq.descriptors[i].freq == want.descriptors[i].freq);
        CHECK(acq.descriptors[i].mode == Mode::HV);
    }
}

TEST_CASE("explicit acquisitions roundtrip")
{
    std::mt19937_64 gen(193);
    TempDir tmp;
    geometry::Acquisition acq;
    std::uniform_real_distribution<double> th(0.0, 0.5), ph(0.0, 2.0 * pi), fr(8e9, 12e9);
    for (int i = 0; i < 7; ++i)
        acq.descriptors.push_back({th(gen), ph(gen), fr(gen), Mode::VV});
    io::save_acquisition(acq, tmp.file("acq.json"));

    geometry::Acquisition back = io::load_acquisition(tmp.file("acq.json"));
    REQUIRE(back.size() == acq.size());
    for (std::size_t i = 0; i < acq.size(); ++i)
    {
        CHECK(back.descriptors[i].theta == doctest::Approx(acq.descriptors[i].theta).epsilon(1e-14));
        CHECK(back.descriptors[i].phi == doctest::Approx(acq.descriptors[i].phi).epsilon(1e-14));
        CHECK(back.descriptors[i].freq == acq.descriptors[i].freq);
        CHECK(back.descriptors[i].mode == Mode::VV);
    }
}

TEST_CASE("mixed-mode acquisitions have no JSON form")
{
    TempDir tmp;
    geometry::Acquisition acq;
    acq.descriptors.push_back({0.1, 0.2, 1e9, Mode::HH});
    acq.descriptors.push_back({0.1, 0.2, 1e9, Mode::HV});
    CHECK_THROWS_AS(io::save_acquisition(acq, tmp.file("acq.json")), invalid_input_error);
}

TEST_CASE("grids roundtrip and default to nearest interpolation")
{
    TempDir tmp;
    kgrid::KGrid grid;
    grid.dims = {8, 12, 20};
    grid.delta_k = {2.25, 3.5, 0.75};
    grid.center = {0.5, -1.5, 400.0};
    grid.interp = kgrid::Interp::linear;
    io::save_grid(grid, tmp.file("grid.json"));

    kgrid::KGrid back = io::load_grid(tmp.file("grid.json"));
    CHECK(back.dims == grid.dims);
    CHECK(back.delta_k.x == grid.delta_k.x);
    CHECK(back.delta_k.y == grid.delta_k.y);
    CHECK(back.delta_k.z == grid.delta_k.z);
    CHECK(back.center.x == grid.center.x);
    CHECK(back.center.y == grid.center.y);
    CHECK(back.center.z == grid.center.z);
    CHECK(back.interp == kgrid::Interp::linear);

    spit(tmp.file("noint.json"),
         "{\"dims\": [4, 4, 4], \"delta_k\": [1, 1, 1], \"center\": [0, 0, 9]}");
    CHECK(io::load_grid(tmp.file("noint.json")).interp == kgrid::Interp::nearest);

    spit(tmp.file("badint.json"),
         "{\"dims\": [4, 4, 4], \"delta_k\": [1, 1, 1], \"center\": [0, 0, 9], "
         "\"interp\": \"cubic\"}");
    CHECK_THROWS_AS(io::load_grid(tmp.file("badint.json")), format_error);

    spit(tmp.file("baddims.json"),
         "{\"dims\": [4.5, 4, 4], \"delta_k\": [1, 1, 1], \"center\": [0, 0, 9]}");
    CHECK_THROWS_AS(io::load_grid(tmp.file("baddims.json")), format_error);

    CHECK_THROWS_AS(io::load_grid(tmp.file("absent.json")), io_error);
}

TEST_CASE("reconstruction reports serialize every diagnostic")
{
    TempDir tmp;
    inversion::ReconstructionReport report;
    report.residual_norm = 0.125;
    report.data_fit_relative = 0.015625;
    report.timings = {0.5, 1.5, 2.5, 3.5, 8.0};

    kgrid::KGrid grid;
    grid.dims = {16, 16, 32};
    grid.delta_k = {2.0, 2.0, 1.0};
    grid.center = {0.0, 0.0, 300.0};
    grid.interp = kgrid::Interp::linear;

    io::write_report(report, grid, 1234, tmp.file("report.json"));
    nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("report.json")));
    CHECK(j["hologram_m"] == 1234);
    CHECK(j["residual_norm"] == 0.125);
    CHECK(j["data_fit_relative"] == 0.015625);
    CHECK(j["grid"]["dims"] == nlohmann::json({16, 16, 32}));
    CHECK(j["grid"]["interp"] == "linear");
    CHECK(j["timings_s"]["weights"] == 0.5);
    CHECK(j["timings_s"]["regrid"] == 1.5);
    CHECK(j["timings_s"]["fft"] == 2.5);
    CHECK(j["timings_s"]["residual"] == 3.5);
    CHECK(j["timings_s"]["total"] == 8.0);
}
