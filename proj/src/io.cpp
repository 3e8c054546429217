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
#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <iostream>

#include <unistd.h>

#include <json.hpp>

#include "kernels.hpp"
#include "polarsar3d/errors.hpp"
#include "polarsar3d/io.hpp"

static_assert(std::endian::native == std::endian::little,
              "on-disk formats are little-endian; big-endian hosts are not supported");

namespace polarsar3d::io
{
    namespace
    {
        using njson = nlohmann::json;

        constexpr std::size_t magic_size = 16;
        constexpr const char *hologram_magic = "P3DHOLO1";
        constexpr const char *volume_magic = "P3DVOL01";

        void append_magic(std::string &out, const char *magic)
        {
            char field[magic_size] = {};
            std::memcpy(field, magic, std::strlen(magic));
            out.append(field, magic_size);
        }

        void append_u64(std::string &out, std::uint64_t v)
        {
            char b[8];
            std::memcpy(b, &v, 8);
            out.append(b, 8);
        }

        void append_f64(std::string &out, double v)
        {
            char b[8];
            std::memcpy(b, &v, 8);
            out.append(b, 8);
        }

        void append_f32(std::string &out, float v)
        {
            char b[4];
            std::memcpy(b, &v, 4);
            out.append(b, 4);
        }

        [[noreturn]] void fail_io(const std::string &path, const char *action)
        {
            throw io_error(std::string(action) + " " + path + ": " + std::strerror(errno));
        }

        void write_whole_file(const std::string &path, const std::string &bytes)
        {
            std::FILE *f = std::fopen(path.c_str(), "wb");
            if (!f)
                fail_io(path, "cannot open");
            if (!bytes.empty() && std::fwrite(bytes.data(), 1, bytes.size(), f) != bytes.size())
            {
                std::fclose(f);
                fail_io(path, "cannot write");
            }
            if (std::fflush(f) != 0 || ::fsync(::fileno(f)) != 0)
            {
                std::fclose(f);
                fail_io(path, "cannot flush");
            }
            if (std::fclose(f) != 0)
                fail_io(path, "cannot close");
        }

        std::string read_whole_file(const std::string &path)
        {
            std::FILE *f = std::fopen(path.c_str(), "rb");
            if (!f)
                fail_io(path, "cannot open");
            std::string bytes;
            char buf[1 << 16];
            std::size_t got;
            while ((got = std::fread(buf, 1, sizeof buf, f)) > 0)
                bytes.append(buf, got);
            if (std::ferror(f))
            {
                std::fclose(f);
                fail_io(path, "cannot read");
            }
            std::fclose(f);
            return bytes;
        }

        // Splits a container file into its JSON header and payload view.
        njson parse_container(const std::string &path, const std::string &bytes,
                              const char *magic, const char *kind, std::size_t &payload_at)
        {
            char field[magic_size] = {};
            std::memcpy(field, magic, std::strlen(magic));
            if (bytes.size() < magic_size + 8 || std::memcmp(bytes.data(), field, magic_size) != 0)
                throw format_error(path + ": not a " + kind + " file (bad magic)");

            std::uint64_t header_len = 0;
            std::memcpy(&header_len, bytes.data() + magic_size, 8);
            if (header_len > (std::uint64_t(1) << 30) ||
                magic_size + 8 + header_len > bytes.size())
                throw format_error(path + ": truncated or corrupt header (declared " +
                                   std::to_string(header_len) + " bytes)");

            njson header;
            try
            {
                header = njson::parse(bytes.begin() + magic_size + 8,
                                      bytes.begin() + magic_size + 8 +
                                          static_cast<std::size_t>(header_len));
            }
            catch (const njson::exception &e)
            {
                throw format_error(path + ": malformed JSON header: " + e.what());
            }
            if (!header.is_object() || header.value("format_version", -1) != 1)
                throw format_error(path + ": unsupported format version");
            payload_at = magic_size + 8 + static_cast<std::size_t>(header_len);
            return header;
        }

        void check_payload_size(const std::string &path, const std::string &bytes,
                                std::size_t payload_at, std::size_t expected)
        {
            const std::size_t actual = bytes.size() - payload_at;
            if (actual != expected)
                throw format_error(path + ": payload size mismatch: expected " +
                                   std::to_string(expected) + " bytes, found " +
                                   std::to_string(actual));
        }

        std::vector<double> number_array(const njson &j, const char *key, const std::string &path)
        {
            if (!j.contains(key) || !j[key].is_array())
                throw format_error(path + ": missing or non-array field '" + key + "'");
            std::vector<double> out;
            out.reserve(j[key].size());
            for (const auto &v : j[key])
            {
                if (!v.is_number())
                    throw format_error(path + ": non-numeric entry in '" + key + "'");
                out.push_back(v.get<double>());
            }
            return out;
        }

        Vec3 vec3_field(const njson &j, const char *key, const std::string &path)
        {
            auto a = number_array(j, key, path);
            if (a.size() != 3)
                throw format_error(path + ": field '" + key + "' must have 3 entries");
            return {a[0], a[1], a[2]};
        }

        njson acquisition_header(const geometry::Acquisition &acq)
        {
            njson h;
            std::vector<double> theta(acq.size()), phi(acq.size()), freq(acq.size());
            bool uniform = true;
            for (std::size_t i = 0; i < acq.size(); ++i)
            {
                const auto &d = acq.descriptors[i];
                theta[i] = rad2deg(d.theta);
                phi[i] = rad2deg(d.phi);
                freq[i] = d.freq;
                uniform = uniform && d.mode == acq.descriptors[0].mode;
            }
            if (uniform && !acq.descriptors.empty())
                h["mode"] = to_string(acq.descriptors[0].mode);
            else
            {
                std::vector<std::string> modes(acq.size());
                for (std::size_t i = 0; i < acq.size(); ++i)
                    modes[i] = to_string(acq.descriptors[i].mode);
                h["modes"] = modes;
            }
            h["theta_deg"] = theta;
            h["phi_deg"] = phi;
            h["freq_hz"] = freq;
            return h;
        }

        geometry::Acquisition acquisition_from_header(const njson &h, const std::string &path)
        {
            auto theta = number_array(h, "theta_deg", path);
            auto phi = number_array(h, "phi_deg", path);
            auto freq = number_array(h, "freq_hz", path);
            const std::size_t m = theta.size();
            if (m == 0 || phi.size() != m || freq.size() != m)
                throw format_error(path + ": theta_deg/phi_deg/freq_hz must be equal-length, non-empty");

            std::vector<Mode> modes(m);
            try
            {
                if (h.contains("modes"))
                {
                    if (!h["modes"].is_array() || h["modes"].size() != m)
                        throw format_error(path + ": 'modes' must list one mode per measurement");
                    for (std::size_t i = 0; i < m; ++i)
                        modes[i] = mode_from_string(h["modes"][i].get<std::string>());
                }
                else if (h.contains("mode"))
                {
                    Mode mode = mode_from_string(h["mode"].get<std::string>());
                    std::fill(modes.begin(), modes.end(), mode);
                }
                else
                    throw format_error(path + ": missing 'mode'");
            }
            catch (const njson::exception &e)
            {
                throw format_error(path + ": bad mode field: " + e.what());
            }
            catch (const invalid_input_error &e)
            {
                throw format_error(path + ": " + e.what());
            }

            geometry::Acquisition acq;
            acq.descriptors.resize(m);
            for (std::size_t i = 0; i < m; ++i)
                acq.descriptors[i] = {deg2rad(theta[i]), deg2rad(phi[i]), freq[i], modes[i]};
            return acq;
        }
    } // namespace

    void write_hologram(const forward::Hologram &holo, const std::string &path)
    {
        if (holo.values.size() != holo.acquisition.size())
            throw invalid_input_error(
                "write_hologram: hologram length does not match its acquisition");
        if (holo.acquisition.size() == 0)
            throw invalid_input_error("write_hologram: empty hologram");

        njson header;
        header["format_version"] = 1;
        header["m"] = holo.values.size();
        header["acquisition"] = acquisition_header(holo.acquisition);
        std::string hs = header.dump();

        std::string bytes;
        bytes.reserve(magic_size + 8 + hs.size() + 16 * holo.values.size());
        append_magic(bytes, hologram_magic);
        append_u64(bytes, hs.size());
        bytes += hs;
        for (cdouble v : holo.values)
        {
            append_f64(bytes, v.real());
            append_f64(bytes, v.imag());
        }
        write_whole_file(path, bytes);
    }

    forward::Hologram read_hologram(const std::string &path)
    {
        std::string bytes = read_whole_file(path);
        std::size_t payload_at = 0;
        njson header = parse_container(path, bytes, hologram_magic, "hologram", payload_at);

        if (!header.contains("acquisition") || !header["acquisition"].is_object())
            throw format_error(path + ": missing acquisition header");
        forward::Hologram holo;
        holo.acquisition = acquisition_from_header(header["acquisition"], path);

        const std::size_t m = holo.acquisition.size();
        if (header.value("m", std::uint64_t(0)) != m)
            throw format_error(path + ": header 'm' disagrees with the acquisition length");
        check_payload_size(path, bytes, payload_at, 16 * m);

        holo.values.resize(m);
        for (std::size_t i = 0; i < m; ++i)
        {
            double re, im;
            std::memcpy(&re, bytes.data() + payload_at + 16 * i, 8);
            std::memcpy(&im, bytes.data() + payload_at + 16 * i + 8, 8);
            holo.values[i] = cdouble{re, im};
        }
        return holo;
    }

    void write_volume(const std::vector<cdouble> &values, const kgrid::ImageGeometry &geom,
                      const std::string &label, const std::string &path)
    {
        if (label != "xx" && label != "yy" && label != "xy")
            throw invalid_input_error("write_volume: label must be xx, yy or xy");
        if (values.size() != geom.size() || values.empty())
            throw invalid_input_error("write_volume: value count does not match the geometry");
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
                throw invalid_input_error("write_volume: non-finite value at voxel " +
                                          std::to_string(i));

        njson header;
        header["format_version"] = 1;
        header["dims"] = geom.dims;
        header["voxel_pitch_m"] = {geom.voxel_pitch.x, geom.voxel_pitch.y, geom.voxel_pitch.z};
        header["origin_m"] = {geom.origin.x, geom.origin.y, geom.origin.z};
        header["map"] = label;
        header["dtype"] = "complex64";
        std::string hs = header.dump();

        std::string bytes;
        bytes.reserve(magic_size + 8 + hs.size() + 8 * values.size());
        append_magic(bytes, volume_magic);
        append_u64(bytes, hs.size());
        bytes += hs;
        for (cdouble v : values)
        {
            append_f32(bytes, static_cast<float>(v.real()));
            append_f32(bytes, static_cast<float>(v.imag()));
        }
        write_whole_file(path, bytes);
    }

    Volume read_volume(const std::string &path)
    {
        std::string bytes = read_whole_file(path);
        std::size_t payload_at = 0;
        njson header = parse_container(path, bytes, volume_magic, "volume", payload_at);

        if (header.value("dtype", "") != std::string("complex64"))
            throw format_error(path + ": unsupported dtype");
        auto dims = number_array(header, "dims", path);
        if (dims.size() != 3)
            throw format_error(path + ": bad dims");
        for (double d : dims)
            if (d < 1 || d > 65536 || d != std::floor(d))
                throw format_error(path + ": bad dims");

        Volume vol;
        vol.geometry.dims = {static_cast<int>(dims[0]), static_cast<int>(dims[1]),
                             static_cast<int>(dims[2])};
        vol.geometry.voxel_pitch = vec3_field(header, "voxel_pitch_m", path);
        vol.geometry.origin = vec3_field(header, "origin_m", path);
        vol.label = header.value("map", "");
        if (vol.label != "xx" && vol.label != "yy" && vol.label != "xy")
            throw format_error(path + ": bad map label");

        const std::size_t n = vol.geometry.size();
        check_payload_size(path, bytes, payload_at, 8 * n);
        vol.values.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            float re, im;
            std::memcpy(&re, bytes.data() + payload_at + 8 * i, 4);
            std::memcpy(&im, bytes.data() + payload_at + 8 * i + 4, 4);
            vol.values[i] = cdouble{re, im};
        }
        return vol;
    }

    void export_slice(const std::vector<cdouble> &values, const kgrid::ImageGeometry &geom,
                      int axis, int index, double db_floor, const std::string &path)
    {
        if (values.size() != geom.size() || values.empty())
            throw invalid_input_error("export_slice: value count does not match the geometry");
        if (axis < 0 || axis > 2)
            throw invalid_input_error("export_slice: axis must be 0 (x), 1 (y) or 2 (z)");
        if (index < 0 || index >= geom.dims[static_cast<std::size_t>(axis)])
            throw invalid_input_error("export_slice: slice index " + std::to_string(index) +
                                      " outside dims");
        if (!(db_floor < 0.0))
            throw invalid_input_error("export_slice: db_floor must be negative (e.g. -60)");

        double vmax = 0.0;
        for (cdouble v : values)
            vmax = std::max(vmax, std::abs(v));
        if (vmax == 0.0)
            std::cerr << "export_slice: all-zero volume, writing a black image: " << path << "\n";

        const int w = axis == 0 ? geom.dims[1] : geom.dims[0];
        const int h = axis == 2 ? geom.dims[1] : geom.dims[2];

        std::string bytes = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
        bytes.reserve(bytes.size() + static_cast<std::size_t>(w) * h);
        for (int row = 0; row < h; ++row)
            for (int col = 0; col < w; ++col)
            {
                int ix = axis == 0 ? index : col;
                int iy = axis == 1 ? index : (axis == 0 ? col : row);
                int iz = axis == 2 ? index : row;
                double a = std::abs(values[linear_index(geom.dims, ix, iy, iz)]);
                unsigned char pixel = 0;
                if (vmax > 0.0 && a > 0.0)
                {
                    double db = 20.0 * std::log10(a / vmax);
                    double scaled = 255.0 * (db - db_floor) / (-db_floor);
                    pixel = static_cast<unsigned char>(std::lround(std::clamp(scaled, 0.0, 255.0)));
                }
                bytes.push_back(static_cast<char>(pixel));
            }
        write_whole_file(path, bytes);
    }

    forward::Scene load_scene(const std::string &path)
    {
        std::string text = read_whole_file(path);
        njson j;
        try
        {
            j = njson::parse(text);
        }
        catch (const njson::exception &e)
        {
            throw format_error(path + ": malformed JSON: " + e.what());
        }
        if (!j.is_object() || !j.contains("scatterers") || !j["scatterers"].is_array())
            throw format_error(path + ": missing 'scatterers' array");

        auto complex_field = [&](const njson &s, const char *key) -> cdouble {
            if (!s.contains(key))
                return cdouble{0.0, 0.0};
            auto a = number_array(s, key, path);
            if (a.size() != 2)
                throw format_error(path + ": field '" + key + "' must be [re, im]");
            return cdouble{a[0], a[1]};
        };

        forward::Scene scene;
        for (const auto &s : j["scatterers"])
        {
            if (!s.is_object())
                throw format_error(path + ": scatterer entries must be objects");
            forward::Scatterer sc;
            sc.pos = vec3_field(s, "pos_m", path);
            sc.matrix.xx = complex_field(s, "sxx");
            sc.matrix.yy = complex_field(s, "syy");
            sc.matrix.xy = complex_field(s, "sxy");
            scene.scatterers.push_back(sc);
        }
        return scene;
    }

    void save_scene(const forward::Scene &scene, const std::string &path)
    {
        njson j;
        j["scatterers"] = njson::array();
        for (const auto &sc : scene.scatterers)
        {
            njson s;
            s["pos_m"] = {sc.pos.x, sc.pos.y, sc.pos.z};
            s["sxx"] = {sc.matrix.xx.real(), sc.matrix.xx.imag()};
            s["syy"] = {sc.matrix.yy.real(), sc.matrix.yy.imag()};
            s["sxy"] = {sc.matrix.xy.real(), sc.matrix.xy.imag()};
            j["scatterers"].push_back(s);
        }
        write_whole_file(path, j.dump(2) + "\n");
    }

    geometry::Acquisition load_acquisition(const std::string &path)
    {
        std::string text = read_whole_file(path);
        njson j;
        try
        {
            j = njson::parse(text);
        }
        catch (const njson::exception &e)
        {
            throw format_error(path + ": malformed JSON: " + e.what());
        }
        if (!j.is_object())
            throw format_error(path + ": expected a JSON object");

        geometry::Acquisition acq;
        if (j.contains("sweep"))
        {
            const auto &sw = j["sweep"];
            if (!sw.is_object())
                throw format_error(path + ": 'sweep' must be an object");
            Mode mode;
            std::string ts, ps, fs;
            try
            {
                mode = mode_from_string(j.at("mode").get<std::string>());
                ts = sw.at("theta_deg").get<std::string>();
                ps = sw.at("phi_deg").get<std::string>();
                fs = sw.at("freq_hz").get<std::string>();
            }
            catch (const njson::exception &e)
            {
                throw format_error(path + ": bad sweep fields: " + e.what());
            }
            geometry::SweepSpec theta = geometry::parse_sweep(ts);
            geometry::SweepSpec phi = geometry::parse_sweep(ps);
            geometry::SweepSpec freq = geometry::parse_sweep(fs);
            theta = {deg2rad(theta.start), deg2rad(theta.step), deg2rad(theta.stop)};
            phi = {deg2rad(phi.start), deg2rad(phi.step), deg2rad(phi.stop)};
            acq = geometry::expand_sweep(theta, phi, freq, mode);
        }
        else
        {
            acq = acquisition_from_header(j, path);
            detail::check_acquisition(acq);
        }
        return acq;
    }

    void save_acquisition(const geometry::Acquisition &acq, const std::string &path)
    {
        if (acq.size() == 0)
            throw invalid_input_error("save_acquisition: empty acquisition");
        for (const auto &d : acq.descriptors)
            if (d.mode != acq.descriptors[0].mode)
                throw invalid_input_error(
                    "save_acquisition: mixed-mode acquisitions have no JSON form");
        njson j = acquisition_header(acq);
        write_whole_file(path, j.dump(2) + "\n");
    }

    void save_sweep_acquisition(const std::string &theta_deg, const std::string &phi_deg,
                                const std::string &freq_hz, Mode mode, const std::string &path)
    {
        njson j;
        j["mode"] = to_string(mode);
        j["sweep"] = {{"theta_deg", theta_deg}, {"phi_deg", phi_deg}, {"freq_hz", freq_hz}};
        write_whole_file(path, j.dump(2) + "\n");
    }

    kgrid::KGrid load_grid(const std::string &path)
    {
        std::string text = read_whole_file(path);
        njson j;
        try
        {
            j = njson::parse(text);
        }
        catch (const njson::exception &e)
        {
            throw format_error(path + ": malformed JSON: " + e.what());
        }
        if (!j.is_object())
            throw format_error(path + ": expected a JSON object");

        auto dims = number_array(j, "dims", path);
        if (dims.size() != 3 || dims[0] != std::floor(dims[0]) || dims[1] != std::floor(dims[1]) ||
            dims[2] != std::floor(dims[2]))
            throw format_error(path + ": 'dims' must be 3 integers");

        kgrid::KGrid grid;
        grid.dims = {static_cast<int>(dims[0]), static_cast<int>(dims[1]),
                     static_cast<int>(dims[2])};
        grid.delta_k = vec3_field(j, "delta_k", path);
        grid.center = vec3_field(j, "center", path);
        if (j.contains("interp"))
        {
            try
            {
                grid.interp = kgrid::interp_from_string(j["interp"].get<std::string>());
            }
            catch (const njson::exception &e)
            {
                throw format_error(path + ": bad interp field: " + e.what());
            }
            catch (const invalid_input_error &e)
            {
                throw format_error(path + ": " + e.what());
            }
        }
        grid.validate();
        return grid;
    }

    void save_grid(const kgrid::KGrid &grid, const std::string &path)
    {
        grid.validate();
        njson j;
        j["dims"] = grid.dims;
        j["delta_k"] = {grid.delta_k.x, grid.delta_k.y, grid.delta_k.z};
        j["center"] = {grid.center.x, grid.center.y, grid.center.z};
        j["interp"] = kgrid::to_string(grid.interp);
        write_whole_file(path, j.dump(2) + "\n");
    }

    void write_report(const inversion::ReconstructionReport &report, const kgrid::KGrid &grid,
                      std::size_t m, const std::string &path)
    {
        njson j;
        j["hologram_m"] = m;
        j["grid"] = {{"dims", grid.dims},
                     {"delta_k", {grid.delta_k.x, grid.delta_k.y, grid.delta_k.z}},
                     {"center", {grid.center.x, grid.center.y, grid.center.z}},
                     {"interp", kgrid::to_string(grid.interp)}};
        j["residual_norm"] = report.residual_norm;
        j["data_fit_relative"] = report.data_fit_relative;
        j["timings_s"] = {{"weights", report.timings.weights_s},
                          {"regrid", report.timings.regrid_s},
                          {"fft", report.timings.fft_s},
                          {"residual", report.timings.residual_s},
                          {"total", report.timings.total_s}};
        write_whole_file(path, j.dump(2) + "\n");
    }

} // namespace polarsar3d::io
