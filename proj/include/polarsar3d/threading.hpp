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

#ifndef POLARSAR3D_THREADING_HPP
#define POLARSAR3D_THREADING_HPP

namespace polarsar3d
{
    // Number of OpenMP threads the parallel kernels should use.
    // Reads POLARSAR3D_THREADS; 0 or unset means the OpenMP default.
    int effective_threads();

    // Applies effective_threads() to the OpenMP runtime. Called by the CLI
    // once at startup; library code only ever reads the runtime setting.
    void apply_thread_env();

} // namespace polarsar3d

#endif
