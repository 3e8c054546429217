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

#ifndef POLARSAR3D_ERRORS_HPP
#define POLARSAR3D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polarsar3d
{
    // Common base so callers can catch everything thrown by this library.
    struct error : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Arguments violate a documented precondition (bad sizes, bad ranges,
    // malformed sweep descriptors, non-positive pitches, ...).
    struct invalid_input_error : error
    {
        using error::error;
    };

    // Antenna frame undefined: the frame normalizer K dropped below the
    // admissible minimum for the requested look direction.
    struct frame_singularity_error : error
    {
        using error::error;
    };

    // A sample location falls outside the k-space grid it is regridded onto.
    struct out_of_band_error : error
    {
        using error::error;
    };

    // A dense operation would exceed its configured element cap.
    struct size_cap_error : error
    {
        using error::error;
    };

    // Gram matrix too ill-conditioned to invert reliably.
    struct conditioning_error : error
    {
        using error::error;
    };

    // No physical acquisition reproduces the requested sample locations.
    struct infeasible_error : error
    {
        using error::error;
    };

    // File contents do not match the expected on-disk format.
    struct format_error : error
    {
        using error::error;
    };

    // Operating-system level I/O failure (open, read, write, sync).
    struct io_error : error
    {
        using error::error;
    };

    // A self-check identity (adjoint test, weight partition, ...) failed.
    struct identity_violated_error : error
    {
        using error::error;
    };

    // Grid suggestion has no answer (degenerate sample set).
    struct cannot_suggest_error : error
    {
        using error::error;
    };

} // namespace polarsar3d

#endif
