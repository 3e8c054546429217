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

#ifndef POLARSAR3D_IO_HPP
#define POLARSAR3D_IO_HPP

#include <string>
#include <vector>

#include "polarsar3d/forward.hpp"
#include "polarsar3d/geometry.hpp"
#include "polarsar3d/inversion.hpp"
#include "polarsar3d/kgrid.hpp"
#include "polarsar3d/types.hpp"

namespace polarsar3d::io
{
    // On-disk formats are little-endian regardless of host. Holograms store
    // float64 pairs (oracle comparisons need the full precision), volumes
    // store float32 pairs. Both start with a 16-byte magic field (8 ASCII
    // characters, zero padded) followed by a uint64 length-prefixed UTF-8
    // JSON header.

    struct Volume
    {
        std::vector<cdouble> values;
        kgrid::ImageGeometry geometry;
        std::string label; // xx | yy | xy
    };

    // Hologram container, magic P3DHOLO1. The header embeds the acquisition
    // (degrees/Hz); the payload is M (float64 re, float64 im) pairs in
    // descriptor order. The file is fsynced before return.
    void write_hologram(const forward::Hologram &holo, const std::string &path);
    forward::Hologram read_hologram(const std::string &path);

    // Volume container, magic P3DVOL01, payload float32 pairs x-fastest.
    // Non-finite values are rejected. The file is fsynced before return.
    void write_volume(const std::vector<cdouble> &values, const kgrid::ImageGeometry &geom,
                      const std::string &label, const std::string &path);
    Volume read_volume(const std::string &path);

    // 8-bit binary PGM slice in dB relative to the volume peak:
    // pixel = clamp(255 * (20*log10(|v|/max) - db_floor) / (-db_floor)).
    // axis is 0/1/2 for x/y/z; db_floor must be negative (e.g. -60). An
    // all-zero volume writes an all-black image and warns on stderr.
    void export_slice(const std::vector<cdouble> &values, const kgrid::ImageGeometry &geom,
                      int axis, int index, double db_floor, const std::string &path);

    // Scene JSON: { "scatterers": [ { "pos_m": [x,y,z], "sxx": [re,im],
    // "syy": [re,im], "sxy": [re,im] }, ... ] }; missing matrix entries
    // default to zero.
    forward::Scene load_scene(const std::string &path);
    void save_scene(const forward::Scene &scene, const std::string &path);

    // Acquisition JSON, either explicit lists
    //   { "mode": "HH", "theta_deg": [..], "phi_deg": [..], "freq_hz": [..] }
    // or a sweep form
    //   { "mode": "HH", "sweep": { "theta_deg": "0:2:20",
    //     "phi_deg": "0:5:360", "freq_hz": "1e9:1e7:3e9" } }.
    // Angles on disk are degrees; in memory, radians.
    geometry::Acquisition load_acquisition(const std::string &path);
    void save_acquisition(const geometry::Acquisition &acq, const std::string &path);
    void save_sweep_acquisition(const std::string &theta_deg, const std::string &phi_deg,
                                const std::string &freq_hz, Mode mode, const std::string &path);

    // Grid JSON: { "dims": [..], "delta_k": [..], "center": [..],
    // "interp": "nearest"|"linear" }, units rad/m.
    kgrid::KGrid load_grid(const std::string &path);
    void save_grid(const kgrid::KGrid &grid, const std::string &path);

    // Reconstruction report JSON (residuals, timings, configuration echo).
    void write_report(const inversion::ReconstructionReport &report, const kgrid::KGrid &grid,
                      std::size_t m, const std::string &path);

} // namespace polarsar3d::io

#endif
