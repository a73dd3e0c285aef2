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

#include "sicalign/clifford.hpp"

#include <cmath>
#include <sstream>

#include "sicalign/errors.hpp"

namespace sic {

SymplecticMatrix::SymplecticMatrix(std::int64_t alpha, std::int64_t beta, std::int64_t gamma,
                                   std::int64_t delta, std::int64_t dim)
    : alpha_(alpha, bar(dim)), beta_(beta, bar(dim)), gamma_(gamma, bar(dim)), delta_(delta, bar(dim)), dim_(dim) {
    if (dim < 1) {
        throw DimensionError("SymplecticMatrix: dimension must be positive");
    }
    const ModInt det = alpha_ * delta_ - beta_ * gamma_;
    if (det.value() != reduce(1, bar(dim))) {
        std::ostringstream msg;
        msg << "[[" << alpha << ", " << beta << "], [" << gamma << ", " << delta << "]] has determinant "
            << det.value() << " mod " << bar(dim);
        throw NotSymplectic(msg.str());
    }
}

SymplecticMatrix SymplecticMatrix::identity(std::int64_t dim) { return {1, 0, 0, 1, dim}; }

SymplecticMatrix SymplecticMatrix::fourier(std::int64_t dim) { return {0, -1, 1, 0, dim}; }

DisplacementIndex SymplecticMatrix::apply(const DisplacementIndex &idx) const {
    const ModInt a{idx.a, modulus()};
    const ModInt b{idx.b, modulus()};
    return {(alpha_ * a + beta_ * b).value(), (gamma_ * a + delta_ * b).value(), dim_};
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix &o) const {
    if (o.dim_ != dim_) {
        throw DimensionMismatch("SymplecticMatrix: product of matrices for different dimensions");
    }
    return {(alpha_ * o.alpha_ + beta_ * o.gamma_).value(), (alpha_ * o.beta_ + beta_ * o.delta_).value(),
            (gamma_ * o.alpha_ + delta_ * o.gamma_).value(), (gamma_ * o.beta_ + delta_ * o.delta_).value(), dim_};
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    return {delta_.value(), (-beta_).value(), (-gamma_).value(), alpha_.value(), dim_};
}

bool SymplecticMatrix::operator==(const SymplecticMatrix &o) const noexcept {
    return dim_ == o.dim_ && entries() == o.entries();
}

bool is_prime(const SymplecticMatrix &F) { return F.beta().is_invertible(); }

PrimeDecomposition prime_decompose(const SymplecticMatrix &F, bool force_split) {
    if (is_prime(F) && !force_split) {
        return {F, SymplecticMatrix::identity(F.dim()), true};
    }
    const std::int64_t nbar = F.modulus();
    for (std::int64_t s = 0; s < nbar; ++s) {
        if (!(F.alpha() + F.beta() * ModInt{s, nbar}).is_invertible()) {
            continue;
        }
        const SymplecticMatrix G{s, -1, 1, 0, F.dim()};
        return {F * G.inverse(), G, false};
    }
    // gcd(alpha, beta, nbar) = 1 whenever det F = 1, so some s always works.
    throw NotSymplectic("prime_decompose: no admissible shift found");
}

ComplexMatrix prime_symplectic_unitary(const SymplecticMatrix &F) {
    if (!is_prime(F)) {
        throw std::invalid_argument("prime_symplectic_unitary: beta is not invertible modulo nbar");
    }
    const std::int64_t n = F.dim();
    const std::int64_t nbar = F.modulus();
    const std::int64_t beta_inv = inv_mod(F.beta().value(), nbar).value();
    const std::int64_t alpha = F.alpha().value();
    const std::int64_t delta = F.delta().value();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix V(n, n);
    for (std::int64_t u = 0; u < n; ++u) {
        for (std::int64_t v = 0; v < n; ++v) {
            const std::int64_t quad = reduce(alpha * v * v - 2 * u * v + delta * u * u, nbar);
            V(u, v) = scale * tau_power(beta_inv * quad % nbar, n);
        }
    }
    return V;
}

ComplexMatrix symplectic_unitary(const SymplecticMatrix &F) {
    const PrimeDecomposition dec = prime_decompose(F);
    if (dec.passthrough) {
        return prime_symplectic_unitary(dec.first);
    }
    return prime_symplectic_unitary(dec.first) * prime_symplectic_unitary(dec.second);
}

double covariance_check(const ComplexMatrix &V, const SymplecticMatrix &F) {
    const std::int64_t n = F.dim();
    if (V.rows() != n || V.cols() != n) {
        throw DimensionMismatch("covariance_check: unitary does not act on C^" + std::to_string(n));
    }
    double worst = 0.0;
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            const ComplexMatrix conj = V * displacement(n, a, b) * V.adjoint();
            worst = std::max(worst, phase_aligned_distance(conj, displacement(F.apply({a, b, n}))));
        }
    }
    return worst;
}

ComplexMatrix parity(std::int64_t n) {
    if (n < 1) {
        throw DimensionError("parity: dimension must be positive");
    }
    ComplexMatrix P = ComplexMatrix::Zero(n, n);
    for (std::int64_t u = 0; u < n; ++u) {
        P(reduce(-u, n), u) = 1.0;
    }
    return P;
}

ComplexMatrix displaced_parity(const DisplacementIndex &idx) { return displacement(idx) * parity(idx.dim); }

ParityClass classify_parity(const DisplacementIndex &idx) {
    const ComplexMatrix P = displaced_parity(idx);
    const double tr = P.trace().real();
    ParityClass out;
    out.index = idx;
    out.trace_value = static_cast<int>(std::lround(tr));
    out.trace_residual = std::abs(tr - out.trace_value);
    const ComplexMatrix herm = 0.5 * (P + P.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double ev = solver.eigenvalues()(i);
        if (ev > 0.5) {
            ++out.spectrum.first;
        } else if (ev < -0.5) {
            ++out.spectrum.second;
        }
    }
    return out;
}

double parity_expansion_check(std::int64_t n) {
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            double weight = 1.0;
            if (n % 2 == 0) {
                weight = ((a + 1) * (b + 1)) % 2 == 0 ? 0.0 : 2.0;
            }
            if (weight != 0.0) {
                sum += weight * displacement(n, a, b);
            }
        }
    }
    sum /= static_cast<double>(n);
    return (sum - parity(n)).norm();
}

std::vector<ParityAuditCase> parity_table(std::int64_t n) {
    const std::int64_t nbar = bar(n);
    auto row = [&](std::string id, std::int64_t al, std::int64_t be, std::int64_t ga, std::int64_t de, std::int64_t k,
                   std::int64_t l) {
        ParityAuditCase c;
        c.id = std::move(id);
        c.F = {reduce(al, nbar), reduce(be, nbar), reduce(ga, nbar), reduce(de, nbar)};
        c.k = reduce(k, n);
        c.l = reduce(l, n);
        return c;
    };
    if (n % 2 != 0) {
        return {row("odd", -1, 0, 0, -1, 0, 0)};
    }
    const std::int64_t h = n / 2;
    std::vector<ParityAuditCase> rows;
    int id = 1;
    for (std::int64_t al : {std::int64_t{-1}, n - 1}) {
        for (std::int64_t be : {std::int64_t{0}, n}) {
            for (std::int64_t ga : {std::int64_t{0}, n}) {
                rows.push_back(row("row" + std::to_string(id++), al, be, ga, al, be == 0 ? 0 : h, ga == 0 ? 0 : h));
            }
        }
    }
    return rows;
}

std::vector<SymplecticMatrix> enumerate_symplectic(std::int64_t n) {
    const std::int64_t nbar = bar(n);
    std::vector<SymplecticMatrix> out;
    for (std::int64_t al = 0; al < nbar; ++al) {
        for (std::int64_t be = 0; be < nbar; ++be) {
            for (std::int64_t ga = 0; ga < nbar; ++ga) {
                for (std::int64_t de = 0; de < nbar; ++de) {
                    if (reduce(al * de - be * ga, nbar) == reduce(1, nbar)) {
                        out.emplace_back(al, be, ga, de, n);
                    }
                }
            }
        }
    }
    return out;
}

namespace {

struct Evaluated {
    int sign = 0;
    cplx phase{0.0, 0.0};
    double residual = 0.0;
};

// Fixes e^{i theta} from C^2 = c I, then measures the distance to +-P.
Evaluated evaluate_candidate(const ComplexMatrix &C, const ComplexMatrix &P) {
    const std::int64_t n = C.rows();
    const ComplexMatrix sq = C * C;
    const cplx c = sq.trace() / static_cast<double>(n);
    const double square_residual = (sq - c * ComplexMatrix::Identity(n, n)).norm();
    const cplx phase = 1.0 / std::sqrt(c);
    const ComplexMatrix fixed = phase * C;
    const double plus = (fixed - P).norm();
    const double minus = (fixed + P).norm();
    Evaluated e;
    e.phase = phase;
    e.sign = plus <= minus ? 1 : -1;
    e.residual = std::max(std::min(plus, minus), square_residual);
    return e;
}

}  // namespace

ParityAuditReport parity_uniqueness_audit(std::int64_t n, std::int64_t cap, double tol) {
    if (n < 2 || n > cap) {
        throw DimensionError("parity_uniqueness_audit: n must lie in [2, " + std::to_string(cap) + "], got " +
                             std::to_string(n));
    }
    ParityAuditReport report;
    report.n = n;
    report.cases = parity_table(n);

    const ComplexMatrix P = parity(n);
    const ComplexMatrix X = displacement(n, 1, 0);
    const ComplexMatrix Z = displacement(n, 0, 1);
    const ComplexMatrix X_target = displacement(n, -1, 0);
    const ComplexMatrix Z_target = displacement(n, 0, -1);

    for (const SymplecticMatrix &F : enumerate_symplectic(n)) {
        const ComplexMatrix V = symplectic_unitary(F);
        // D_{k,l} only changes conjugates by phases, so F itself must send
        // D_{1,0} and D_{0,1} to multiples of their inverses.
        if (phase_aligned_distance(V * X * V.adjoint(), X_target) > tol ||
            phase_aligned_distance(V * Z * V.adjoint(), Z_target) > tol) {
            report.candidates_scanned += n * n;
            continue;
        }
        for (std::int64_t k = 0; k < n; ++k) {
            for (std::int64_t l = 0; l < n; ++l) {
                ++report.candidates_scanned;
                const ComplexMatrix C = displacement(n, k, l) * V;
                if ((C * X * C.adjoint() - X_target).norm() > tol || (C * Z * C.adjoint() - Z_target).norm() > tol) {
                    continue;
                }
                const Evaluated ev = evaluate_candidate(C, P);
                bool matched = false;
                for (ParityAuditCase &c : report.cases) {
                    if (c.F == F.entries() && c.k == k && c.l == l) {
                        c.found = true;
                        c.sign = ev.sign;
                        c.forced_phase = ev.phase;
                        c.residual = ev.residual;
                        c.pass = ev.residual < tol;
                        matched = true;
                    }
                }
                if (!matched) {
                    ++report.extra_candidates;
                }
            }
        }
    }

    report.pass = report.extra_candidates == 0;
    for (const ParityAuditCase &c : report.cases) {
        report.max_residual = std::max(report.max_residual, c.residual);
        report.pass = report.pass && c.found && c.pass;
    }
    return report;
}

std::string ParityAuditReport::to_text() const {
    std::ostringstream out;
    out.precision(3);
    for (const ParityAuditCase &c : cases) {
        out << "case=" << c.id << " n=" << n << " F=[[" << c.F[0] << "," << c.F[1] << "],[" << c.F[2] << ","
            << c.F[3] << "]] k=" << c.k << " l=" << c.l << " sign=" << (c.sign >= 0 ? "+" : "-")
            << " residual=" << std::scientific << c.residual << std::defaultfloat
            << " verdict=" << (c.pass ? "pass" : "fail") << "\n";
    }
    out << "scanned=" << candidates_scanned << " extra=" << extra_candidates << " verdict=" << (pass ? "pass" : "fail")
        << "\n";
    return out.str();
}

void ParityAuditReport::require() const {
    if (!pass) {
        throw AuditFailure("parity audit failed for n=" + std::to_string(n) + "\n" + to_text());
    }
}

SymplecticMatrix symmetry_matrix(std::int64_t d) {
    if (d < 4 || d % 2 != 0) {
        throw DimensionError("symmetry_matrix: d must be even and at least 4, got " + std::to_string(d));
    }
    const std::int64_t n = d * (d - 2);
    return {1 - d, n, n, 1 - d + n, n};
}

}  // namespace sic
