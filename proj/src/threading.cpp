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

#include <cstdlib>

#include <omp.h>

#include "polarsar3d/threading.hpp"

namespace polarsar3d
{
    int effective_threads()
    {
        const char *env = std::getenv("POLARSAR3D_THREADS");
        if (env == nullptr || *env == '\0')
            return 0;
        char *end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n <= 0)
            return 0;
        return static_cast<int>(n);
    }

    void apply_thread_env()
    {
        int n = effective_threads();
        if (n > 0)
            omp_set_num_threads(n);
    }

} // namespace polarsar3d
