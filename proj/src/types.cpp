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

#include "polarsar3d/errors.hpp"
#include "polarsar3d/types.hpp"

namespace polarsar3d
{
    std::string to_string(Mode mode)
    {
        switch (mode)
        {
        case Mode::HH:
            return "HH";
        case Mode::VV:
            return "VV";
        default:
            return "HV";
        }
    }

    Mode mode_from_string(const std::string &name)
    {
        if (name == "HH")
            return Mode::HH;
        if (name == "VV")
            return Mode::VV;
        if (name == "HV")
            return Mode::HV;
        throw invalid_input_error("unknown polarization mode '" + name + "' (expected HH, VV or HV)");
    }
} // namespace polarsar3d
