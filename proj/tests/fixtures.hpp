// Copyright 2026 The sicalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include "sicalign/fidsearch.hpp"

namespace fixtures {

/// Unconstrained SIC fiducial in dimension n, searched once per process.
const sic::FiducialVector &sic_fiducial(std::int64_t n);

/// Fiducial in dimension d(d-2) aligned with d, searched once per process.
const sic::FiducialVector &aligned_fiducial(std::int64_t d);

/// SIC fiducial in dimension 8 whose phases violate the first alignment
/// condition for d = 4.
const sic::FiducialVector &unaligned_fiducial_8();

/// Fresh directory under the system temp path, removed at process exit.
std::filesystem::path scratch_dir();

}  // namespace fixtures
