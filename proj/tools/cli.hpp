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

#include <ostream>

namespace sic::cli {

/// Parses the arguments, runs one verb and writes its JSON report to out.
/// Returns 0 when every check passes, 1 on a verification failure and 2 on
/// a usage or input error. Diagnostics go to err.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace sic::cli
