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

#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report_json.hpp"
#include "sicalign/errors.hpp"

namespace sic::cli {

namespace {

struct Options {
    std::string op;
    std::string fiducial;
    std::string fiducial_d;
    std::string out;
    std::string mode = "both";
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    std::int64_t cap = 8;
    std::int64_t restarts = 8;
    std::int64_t max_iter = 20000;
    std::vector<std::int64_t> F;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    double penalty_weight = 1.0;
    bool zauner = false;
    unsigned threads = 0;

    double tol_or(double fallback) const { return tol.value_or(fallback); }
};

// Report skeleton. Every residual key exists from the start so failed runs
// keep the schema.
class Report {
   public:
    Report(const std::string &command, const std::vector<std::string> &residual_keys) {
        json residuals = json::object();
        for (const std::string &k : residual_keys) {
            residuals[k] = nullptr;
        }
        doc_ = {{"command", command},
                {"inputs", json::object()},
                {"residuals", std::move(residuals)},
                {"pass", false},
                {"timing", {{"seconds", 0.0}}},
                {"details", json::object()}};
    }

    json &inputs() { return doc_["inputs"]; }
    json &details() { return doc_["details"]; }
    void residual(const std::string &key, double value) { doc_["residuals"].at(key) = value; }
    void set_pass(bool p) { doc_["pass"] = p; }
    bool pass() const { return doc_["pass"].get<bool>(); }
    void set_seconds(double s) { doc_["timing"]["seconds"] = s; }
    const json &doc() const { return doc_; }

   private:
    json doc_;
};

// Errors that mean the request was malformed rather than that a check failed.
bool is_input_error(const std::exception &e) {
    return dynamic_cast<const sic::ParseError *>(&e) != nullptr ||
           dynamic_cast<const DimensionMismatch *>(&e) != nullptr ||
           dynamic_cast<const DimensionError *>(&e) != nullptr || dynamic_cast<const NotCoprime *>(&e) != nullptr ||
           dynamic_cast<const NotSymplectic *>(&e) != nullptr || dynamic_cast<const NotInvertible *>(&e) != nullptr ||
           dynamic_cast<const std::invalid_argument *>(&e) != nullptr ||
           dynamic_cast<const std::out_of_range *>(&e) != nullptr ||
           dynamic_cast<const std::filesystem::filesystem_error *>(&e) != nullptr;
}

FiducialVector load(const std::string &path, Report &rep) {
    std::vector<std::string> warnings;
    FiducialVector fid = load_fiducial(path, &warnings);
    json &w = rep.details()["warnings"];
    if (!w.is_array()) {
        w = json::array();
    }
    for (const std::string &m : warnings) {
        w.push_back(m);
    }
    return fid;
}

double max_of(const std::array<double, 4> &v) { return *std::max_element(v.begin(), v.end()); }

// Verbs.

void gen(const Options &o, Report &rep) {
    const double tol = o.tol_or(kDefaultTol);
    rep.inputs() = {{"op", o.op}, {"n", o.n}, {"a", o.a}, {"b", o.b}, {"d", o.d}, {"F", o.F}, {"tol", tol}};
    ComplexMatrix M;
    std::optional<double> covariance;
    auto with_symplectic = [&](const SymplecticMatrix &F) {
        rep.details()["symplectic"] = to_json(F);
        M = symplectic_unitary(F);
        covariance = covariance_check(M, F);
    };
    if (o.op == "displacement") {
        M = displacement(o.n, o.a, o.b);
    } else if (o.op == "parity") {
        M = parity(o.n);
    } else if (o.op == "displaced-parity") {
        M = displaced_parity({o.a, o.b, o.n});
    } else if (o.op == "pauli-x") {
        M = pauli_x(o.n);
    } else if (o.op == "pauli-z") {
        M = pauli_z(o.n);
    } else if (o.op == "intertwiner") {
        M = intertwiner(o.n);
    } else if (o.op == "symplectic") {
        if (o.F.size() != 4) {
            throw std::invalid_argument("gen --op symplectic needs --F alpha,beta,gamma,delta");
        }
        with_symplectic(SymplecticMatrix(o.F[0], o.F[1], o.F[2], o.F[3], o.n));
    } else {
        with_symplectic(symmetry_matrix(o.d));
    }
    const double unitarity = unitarity_residual(M);
    rep.residual("unitarity", unitarity);
    if (covariance) {
        rep.residual("covariance", *covariance);
    }
    rep.details()["matrix"] = to_json(M);
    rep.set_pass(unitarity < tol && covariance.value_or(0.0) < tol);
}

void verify_sic_verb(const Options &o, Report &rep) {
    const double tol = o.tol_or(1e-8);
    rep.inputs() = {{"fiducial", o.fiducial}, {"tol", tol}};
    const FiducialVector fid = load(o.fiducial, rep);
    const SicReport r = verify_sic(fid, tol);
    rep.residual("max_overlap_residual", r.max_overlap_residual);
    rep.residual("resolution_residual", r.resolution_residual);
    rep.details()["sic"] = to_json(r);
    rep.set_pass(r.pass);
}

void check_alignment_verb(const Options &o, Report &rep) {
    const double tol = o.tol_or(1e-6);
    rep.inputs() = {{"fiducial", o.fiducial}, {"fiducial_d", o.fiducial_d}, {"d", o.d}, {"tol", tol}};
    const FiducialVector fid = load(o.fiducial, rep);
    AlignmentReport r;
    if (o.fiducial_d.empty()) {
        r = check_alignment_c1(fid, o.d, tol);
    } else {
        const FiducialVector low = load(o.fiducial_d, rep);
        try {
            r = check_alignment_c2(fid, low, o.d, tol);
        } catch (const SearchSpaceExhausted &e) {
            r = check_alignment_c1(fid, o.d, tol);
            r.condition2_pass = false;
            rep.details()["error"] = e.what();
        }
    }
    rep.residual("condition1_max_residual", r.condition1_max_residual);
    if (r.condition2_max_residual) {
        rep.residual("condition2_max_residual", *r.condition2_max_residual);
    }
    rep.details()["alignment"] = to_json(r);
    rep.set_pass(r.condition1_pass && r.condition2_pass.value_or(true));
}

void pi_ranks_verb(const Options &o, Report &rep) {
    const double tol = o.tol_or(1e-8);
    rep.inputs() = {{"fiducial", o.fiducial}, {"d", o.d}, {"tol", tol}};
    const FiducialVector fid = load(o.fiducial, rep);
    bool pass = true;
    for (int which : {1, 2}) {
        const PiResult pi = projector_pi(fid, o.d, which);
        const std::int64_t expected = expected_pi_rank(o.d, which);
        json j = to_json(pi);
        j["expected_rank"] = expected;
        rep.details()["pi" + std::to_string(which)] = std::move(j);
        rep.residual("pi" + std::to_string(which) + "_idempotency", pi.idempotency_residual);
        pass = pass && pi.idempotency_residual < tol && pi.rank_consistent && pi.rank == expected;
    }
    const double expansion = pi_expansion_crosscheck(fid, o.d);
    rep.residual("expansion_crosscheck", expansion);
    pass = pass && expansion < tol;
    if (o.d % 2 == 0) {
        const BlockParityReport bp = pi_block_parity_check(fid, o.d, tol);
        rep.residual("block_parity", max_of(bp.residuals));
        rep.details()["block_parity"] = to_json(bp);
        pass = pass && bp.pass;
    } else {
        rep.details()["block_parity"] = nullptr;
    }
    rep.set_pass(pass);
}

void extract_frames_verb(const Options &o, Report &rep) {
    const double tol = o.tol_or(1e-8);
    rep.inputs() = {{"fiducial", o.fiducial}, {"d", o.d}, {"mode", o.mode}, {"tol", tol}};
    const FiducialVector fid = load(o.fiducial, rep);
    bool pass = true;
    auto one = [&](FrameMode mode, const std::string &name) {
        const FramePartition p = extract_frames(fid, o.d, mode, tol);
        double tight = 0.0;
        double equi = 0.0;
        for (const Frame &f : p.frames) {
            tight = std::max(tight, f.tightness_residual);
            equi = std::max(equi, f.equiangularity_residual);
        }
        rep.residual(name + "_tightness", tight);
        rep.residual(name + "_equiangularity", equi);
        rep.details()[name] = to_json(p);
        pass = pass && p.pass;
    };
    if (o.mode != "fine") {
        one(FrameMode::Coarse, "coarse");
    }
    if (o.mode != "coarse") {
        one(FrameMode::Fine, "fine");
    }
    rep.set_pass(pass);
}

void verify_symmetry_verb(const Options &o, Report &rep) {
    const double fixed_tol = o.tol_or(1e-8);
    rep.inputs() = {{"fiducial", o.fiducial}, {"d", o.d}, {"tol", fixed_tol}};
    const FiducialVector fid = load(o.fiducial, rep);
    const SymmetryReport r = verify_symmetry(fid, o.d, 1e-10, fixed_tol, 1e-9);
    rep.residual("square", r.square_residual);
    rep.residual("fixed_point", r.fixed_point_residual);
    rep.residual("permutation", r.permutation_residual);
    rep.residual("block_form", r.block_form_residual);
    rep.details()["symmetry"] = to_json(r);
    rep.details()["symplectic"] = to_json(symmetry_matrix(o.d));
    rep.set_pass(r.pass);
}

void parity_audit_verb(const Options &o, Report &rep) {
    const double tol = o.tol_or(1e-10);
    rep.inputs() = {{"n", o.n}, {"cap", o.cap}, {"tol", tol}};
    const ParityAuditReport r = parity_uniqueness_audit(o.n, o.cap, tol);
    const double expansion = parity_expansion_check(o.n);
    rep.residual("max_residual", r.max_residual);
    rep.residual("expansion", expansion);
    rep.details()["audit"] = to_json(r);
    rep.details()["text"] = r.to_text();
    rep.set_pass(r.pass && expansion < tol);
}

void decomp_audit_verb(const Options &o, Report &rep) {
    const double tol = o.tol_or(kDefaultTol);
    rep.inputs() = {{"n", o.n}, {"d", o.d}, {"n1", o.n1}, {"n2", o.n2}, {"tol", tol}};
    if (o.n == 0 && o.d == 0 && o.n1 == 0 && o.n2 == 0) {
        throw std::invalid_argument("decomp-audit needs --n, --d or --n1/--n2");
    }
    if ((o.n1 == 0) != (o.n2 == 0)) {
        throw std::invalid_argument("decomp-audit: --n1 and --n2 go together");
    }
    bool pass = true;
    json &details = rep.details();
    details["intertwiner"] = nullptr;
    details["split"] = nullptr;
    details["subspace"] = nullptr;
    if (o.n != 0) {
        const IntertwinerReport r = intertwiner_check(o.n, tol, std::min(tol, 1e-13));
        rep.residual("intertwiner", std::max({r.unitarity_residual, r.x_residual, r.z_residual, r.block_residual}));
        rep.residual("block_leakage", r.block_leakage);
        details["intertwiner"] = to_json(r);
        pass = pass && r.pass;
    }
    if (o.n1 != 0) {
        const SplitReport r = split_check(o.n1, o.n2, tol);
        rep.residual("split", r.max_residual);
        details["split"] = to_json(r);
        pass = pass && r.pass;
    }
    if (o.d != 0) {
        const SubspaceSplittingReport r = subspace_splitting_check(o.d, tol);
        rep.residual("subspace_fine", r.fine_residual);
        rep.residual("subspace_coarse", r.coarse_residual);
        details["subspace"] = to_json(r);
        pass = pass && r.pass;
    }
    rep.set_pass(pass);
}

void find_fiducial_verb(const Options &o, Report &rep) {
    SearchConfig cfg;
    cfg.dim = o.n;
    cfg.seed = o.seed;
    cfg.restarts = o.restarts;
    cfg.max_iterations = o.max_iter;
    cfg.penalty_weight = o.penalty_weight;
    cfg.use_zauner_subspace = o.zauner;
    cfg.convergence_threshold = o.tol_or(cfg.convergence_threshold);
    cfg.threads = o.threads;
    if (o.d != 0) {
        cfg.align_d = o.d;
    }
    rep.inputs() = {{"n", o.n},
                    {"d", o.d},
                    {"seed", o.seed},
                    {"restarts", o.restarts},
                    {"max_iter", o.max_iter},
                    {"penalty_weight", o.penalty_weight},
                    {"zauner", o.zauner},
                    {"tol", cfg.convergence_threshold},
                    {"out", o.out}};
    cfg.validate();
    const SearchResult r = find_fiducial(cfg);
    const SicReport sic = verify_sic(r.fiducial);
    rep.residual("frame_potential_gap", r.frame_potential - frame_potential_floor(o.n));
    if (r.alignment_residual) {
        rep.residual("alignment_penalty", *r.alignment_residual);
    }
    rep.residual("max_overlap_residual", sic.max_overlap_residual);
    rep.details()["search"] = to_json(r);
    rep.details()["sic"] = to_json(sic);
    rep.details()["saved"] = nullptr;
    if (!o.out.empty()) {
        save_fiducial(r.fiducial, o.out);
        rep.details()["saved"] = o.out;
    }
    rep.set_pass(r.converged && sic.pass);
}

struct Verb {
    std::string name;
    std::string help;
    std::vector<std::string> residual_keys;
    std::function<void(const Options &, Report &)> body;
};

std::vector<Verb> verbs() {
    return {
        {"gen", "Build an operator and print it", {"unitarity", "covariance"}, gen},
        {"verify-sic", "Check that a fiducial generates a SIC",
         {"max_overlap_residual", "resolution_residual"}, verify_sic_verb},
        {"check-alignment", "Check the alignment conditions of a fiducial in dimension d(d-2)",
         {"condition1_max_residual", "condition2_max_residual"}, check_alignment_verb},
        {"pi-ranks", "Ranks and idempotency of the two frame projectors",
         {"pi1_idempotency", "pi2_idempotency", "expansion_crosscheck", "block_parity"}, pi_ranks_verb},
        {"extract-frames", "Partition the orbit into tight frames",
         {"coarse_tightness", "coarse_equiangularity", "fine_tightness", "fine_equiangularity"},
         extract_frames_verb},
        {"verify-symmetry", "Check the order-two symplectic symmetry",
         {"square", "fixed_point", "permutation", "block_form"}, verify_symmetry_verb},
        {"parity-audit", "Exhaustive search for Clifford parity operators",
         {"max_residual", "expansion"}, parity_audit_verb},
        {"decomp-audit", "Intertwiner, Chinese-remainder and subspace splitting checks",
         {"intertwiner", "block_leakage", "split", "subspace_fine", "subspace_coarse"}, decomp_audit_verb},
        {"find-fiducial", "Numerical search for a (possibly aligned) SIC fiducial",
         {"frame_potential_gap", "alignment_penalty", "max_overlap_residual"}, find_fiducial_verb},
    };
}

void add_options(const std::string &verb, CLI::App &sub, Options &o) {
    auto tol = [&] { sub.add_option("--tol", o.tol, "Tolerance"); };
    auto fiducial = [&] { sub.add_option("--fiducial", o.fiducial, "Fiducial file")->required(); };
    auto d = [&](bool required) {
        auto *opt = sub.add_option("--d", o.d, "Low dimension d");
        if (required) {
            opt->required();
        }
    };
    if (verb == "gen") {
        sub.add_option("--op", o.op, "Operator")
            ->required()
            ->check(CLI::IsMember({"displacement", "parity", "displaced-parity", "symplectic", "pauli-x", "pauli-z",
                                   "intertwiner", "fb"}));
        sub.add_option("--n", o.n, "Dimension");
        sub.add_option("--a", o.a, "First displacement index");
        sub.add_option("--b", o.b, "Second displacement index");
        sub.add_option("--F", o.F, "Symplectic entries alpha,beta,gamma,delta")->delimiter(',');
        d(false);
        tol();
    } else if (verb == "verify-sic") {
        fiducial();
        tol();
    } else if (verb == "check-alignment") {
        fiducial();
        sub.add_option("--fiducial-d", o.fiducial_d, "Fiducial in dimension d, enables condition 2");
        d(true);
        tol();
    } else if (verb == "pi-ranks" || verb == "verify-symmetry") {
        fiducial();
        d(true);
        tol();
    } else if (verb == "extract-frames") {
        fiducial();
        d(true);
        sub.add_option("--mode", o.mode, "coarse, fine or both")->check(CLI::IsMember({"coarse", "fine", "both"}));
        tol();
    } else if (verb == "parity-audit") {
        sub.add_option("--n", o.n, "Dimension")->required();
        sub.add_option("--cap", o.cap, "Largest dimension accepted");
        tol();
    } else if (verb == "decomp-audit") {
        sub.add_option("--n", o.n, "Dimension divisible by 4");
        sub.add_option("--n1", o.n1, "First coprime factor");
        sub.add_option("--n2", o.n2, "Second coprime factor");
        d(false);
        tol();
    } else if (verb == "find-fiducial") {
        sub.add_option("--n", o.n, "Dimension")->required();
        d(false);
        sub.add_option("--seed", o.seed, "Random seed");
        sub.add_option("--restarts", o.restarts, "Number of random restarts");
        sub.add_option("--max-iter", o.max_iter, "Iteration budget per restart");
        sub.add_option("--penalty-weight", o.penalty_weight, "Initial alignment penalty weight");
        sub.add_flag("--zauner", o.zauner, "Search inside the Zauner eigenspace");
        sub.add_option("--threads", o.threads, "Worker threads, 0 for all cores");
        sub.add_option("--out", o.out, "Write the fiducial here");
        tol();
    }
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weyl-Heisenberg, Clifford and aligned SIC verification", "sicalign"};
    app.require_subcommand(1);
    Options opts;
    const std::vector<Verb> table = verbs();
    std::map<CLI::App *, const Verb *> by_app;
    for (const Verb &v : table) {
        CLI::App *sub = app.add_subcommand(v.name, v.help);
        add_options(v.name, *sub, opts);
        by_app[sub] = &v;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const Verb *verb = nullptr;
    for (const auto &[sub, v] : by_app) {
        if (sub->parsed()) {
            verb = v;
        }
    }
    Report rep{verb->name, verb->residual_keys};
    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        verb->body(opts, rep);
        code = rep.pass() ? 0 : 1;
    } catch (const std::exception &e) {
        if (is_input_error(e)) {
            err << "sicalign " << verb->name << ": " << e.what() << "\n";
            return 2;
        }
        rep.set_pass(false);
        rep.details()["error"] = e.what();
        code = 1;
    }
    rep.set_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    out << rep.doc().dump(2) << "\n";
    return code;
}

}  // namespace sic::cli
