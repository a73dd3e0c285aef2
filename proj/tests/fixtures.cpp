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

#include "fixtures.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace fixtures {

namespace {

sic::FiducialVector search(std::int64_t n, std::optional<std::int64_t> d, std::uint64_t seed) {
    sic::SearchConfig cfg;
    cfg.dim = n;
    cfg.seed = seed;
    cfg.align_d = d;
    const sic::SearchResult r = sic::find_fiducial(cfg);
    r.require_converged();
    return r.fiducial;
}

struct ScratchRoot {
    std::filesystem::path path;
    ScratchRoot() {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() / ("sicalign-test-" + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~ScratchRoot() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

}  // namespace

const sic::FiducialVector &sic_fiducial(std::int64_t n) {
    static std::map<std::int64_t, sic::FiducialVector> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, search(n, std::nullopt, 0)).first;
    }
    return it->second;
}

const sic::FiducialVector &aligned_fiducial(std::int64_t d) {
    static std::map<std::int64_t, sic::FiducialVector> cache;
    auto it = cache.find(d);
    if (it == cache.end()) {
        it = cache.emplace(d, search(d * (d - 2), d, 0)).first;
    }
    return it->second;
}

const sic::FiducialVector &unaligned_fiducial_8() {
    static const sic::FiducialVector fid = [] {
        for (std::uint64_t seed = 0; seed < 64; ++seed) {
            sic::FiducialVector f = search(8, std::nullopt, seed);
            if (!sic::check_alignment_c1(f, 4).condition1_pass) {
                return f;
            }
        }
        throw std::runtime_error("no unaligned SIC fiducial found in dimension 8");
    }();
    return fid;
}

std::filesystem::path scratch_dir() {
    static ScratchRoot root;
    static int counter = 0;
    const std::filesystem::path p = root.path / std::to_string(counter++);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace fixtures
