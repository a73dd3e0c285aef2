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

#include "json.hpp"

#include "sicalign/clifford.hpp"
#include "sicalign/decomp.hpp"
#include "sicalign/fidsearch.hpp"
#include "sicalign/sic.hpp"

namespace sic::cli {

using nlohmann::json;

json to_json(const ComplexMatrix &M);
json to_json(const ComplexVector &v);
json to_json(const DisplacementIndex &idx);
json to_json(const SymplecticMatrix &F);

json to_json(const SicReport &r);
json to_json(const AlignmentReport &r);
json to_json(const PiResult &r);
json to_json(const BlockParityReport &r);
json to_json(const FramePartition &p);
json to_json(const SymmetryReport &r);
json to_json(const ParityAuditReport &r);
json to_json(const IntertwinerReport &r);
json to_json(const SplitReport &r);
json to_json(const SubspaceSplittingReport &r);
json to_json(const SearchResult &r);

}  // namespace sic::cli
