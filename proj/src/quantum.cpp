// Copyright 2026 The toric-bell Authors
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

#include "bell/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "bell/coefficients.hpp"
#include "bell/dense.hpp"
#include "bell/stabilizers.hpp"
#include "bell/threading.hpp"

namespace bell {

namespace {

using cplx = std::complex<double>;

int mod(long long a, int m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

long long pow_mod(long long base, long long exp, long long m) {
    long long result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

int inverse_mod(int a, int d) {
    return static_cast<int>(pow_mod(a, d - 2, d));  // d prime
}

/// Symplectic row (x | z) of a word, entries in Z_d.
std::vector<int> symplectic_row(const WeylWord& w) {
    std::vector<int> row;
    row.reserve(2 * w.num_sites());
    row.insert(row.end(), w.x.begin(), w.x.end());
    row.insert(row.end(), w.z.begin(), w.z.end());
    return row;
}

}  // namespace

StabilizerGroup::StabilizerGroup(const TorusLattice& lat, int sector_a, int sector_b)
    : lattice_(lat), a_(mod(sector_a, lat.d())), b_(mod(sector_b, lat.d())) {
    int d = lat.d();
    int n = lat.num_sites();

    auto vertices = lat.vertices();
    auto plaquettes = lat.plaquettes();
    // Drop one star and one plaquette: their products over the whole lattice
    // are the identity, so the full sets are redundant.
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        generators_.push_back(vertex_operator(lat, vertices[i]));
    }
    for (size_t i = 0; i + 1 < plaquettes.size(); ++i) {
        generators_.push_back(plaquette_operator(lat, plaquettes[i]));
    }

    // Non-contractible Z loops: all vertical edges of row i = 1 and all
    // horizontal edges of column j = 1. Both commute with every star term
    // and complete the group to a full stabilizer state; the sector phases
    // give them eigenvalues omega^a and omega^b.
    loop_row_ = WeylWord::identity(n, d);
    for (int j = 0; j < lat.extent(); j += 2) {
        loop_row_.z[lat.site_index({1, j})] = 1;
    }
    loop_col_ = WeylWord::identity(n, d);
    for (int i = 0; i < lat.extent(); i += 2) {
        loop_col_.z[lat.site_index({i, 1})] = 1;
    }
    WeylWord ga = loop_row_;
    ga.phase = mod(-a_, d);
    WeylWord gb = loop_col_;
    gb.phase = mod(-b_, d);
    generators_.push_back(ga);
    generators_.push_back(gb);

    if (static_cast<int>(generators_.size()) != n) {
        throw std::logic_error("stabilizer generator count mismatch");
    }
    for (size_t p = 0; p < generators_.size(); ++p) {
        for (size_t q = p + 1; q < generators_.size(); ++q) {
            if (commutation_phase(generators_[p], generators_[q]) != 0) {
                throw std::logic_error("stabilizer generators fail to commute");
            }
        }
    }

    // Row echelon form over Z_d with the words carrying their phases through
    // the row operations, so membership solves recover exact eigenvalues.
    std::vector<WeylWord> rows = generators_;
    std::vector<std::vector<int>> vecs;
    vecs.reserve(rows.size());
    for (const WeylWord& w : rows) {
        vecs.push_back(symplectic_row(w));
    }
    size_t next = 0;
    for (int col = 0; col < 2 * n && next < rows.size(); ++col) {
        size_t pivot = next;
        while (pivot < rows.size() && vecs[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[pivot]);
        std::swap(vecs[next], vecs[pivot]);
        int inv = inverse_mod(vecs[next][col], d);
        if (inv != 1) {
            rows[next] = power(rows[next], inv);
            for (int c = 0; c < 2 * n; ++c) {
                vecs[next][c] = mod(static_cast<long long>(vecs[next][c]) * inv, d);
            }
        }
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == next || vecs[r][col] == 0) {
                continue;
            }
            int factor = vecs[r][col];
            rows[r] = multiply(rows[r], power(rows[next], d - factor));
            for (int c = 0; c < 2 * n; ++c) {
                vecs[r][c] = mod(vecs[r][c] + static_cast<long long>(d - factor) * vecs[next][c], d);
            }
        }
        echelon_.push_back(rows[next]);
        pivots_.push_back(col);
        ++next;
    }
    if (static_cast<int>(echelon_.size()) != n) {
        throw std::logic_error("stabilizer generators are not independent (symplectic rank " +
                               std::to_string(echelon_.size()) + " of " + std::to_string(n) + ")");
    }
}

std::complex<double> StabilizerGroup::expectation(const WeylWord& w) const {
    int d = lattice_.d();
    int n = lattice_.num_sites();
    if (w.d != d || w.num_sites() != n) {
        throw std::invalid_argument("word does not match the group's lattice");
    }
    std::vector<int> residual = symplectic_row(w);
    WeylWord member = WeylWord::identity(n, d);
    for (size_t r = 0; r < echelon_.size(); ++r) {
        int c = residual[pivots_[r]];
        if (c == 0) {
            continue;
        }
        member = multiply(member, power(echelon_[r], c));
        std::vector<int> row = symplectic_row(echelon_[r]);
        for (int col = 0; col < 2 * n; ++col) {
            residual[col] = mod(residual[col] + static_cast<long long>(d - c) * row[col], d);
        }
    }
    for (int col = 0; col < 2 * n; ++col) {
        if (residual[col] != 0) {
            return 0.0;
        }
    }
    // w = omega^{w.phase - member.phase} * member and member fixes the state.
    return omega_power(d, w.phase - member.phase);
}

bool StabilizerGroup::contains(const WeylWord& w) const {
    cplx e = expectation(w);
    return std::abs(e - cplx(1.0, 0.0)) < 1e-12;
}

StabilizerGroup ground_state_group(const TorusLattice& lat, int sector_a, int sector_b) {
    return StabilizerGroup(lat, sector_a, sector_b);
}

std::complex<double> expectation(const StabilizerGroup& group, const WeylWord& w) {
    return group.expectation(w);
}

IdealObservable ideal_observable(SiteRole role, int x, int k, int d) {
    if (k < 1 || k > d - 1) {
        throw std::invalid_argument("observable mode k must lie in 1..d-1");
    }
    if (x < 0 || x > d - 1) {
        throw std::invalid_argument("observable input x must lie in 0..d-1");
    }
    IdealObservable obs;
    obs.d = d;
    switch (role) {
        case SiteRole::Generic:
            if (x == 0) {
                obs.parts.push_back({1.0, WeylWord::single(1, d, 0, k, 0)});
            } else if (x == 1) {
                obs.parts.push_back({1.0, WeylWord::single(1, d, 0, 0, k)});
            } else {
                throw std::invalid_argument("generic sites only have inputs 0 and 1");
            }
            break;
        case SiteRole::Neighbor:
            if (x == 1) {
                obs.parts.push_back({1.0, WeylWord::single(1, d, 0, 0, k)});
            } else {
                obs.parts.push_back(
                    {1.0, WeylWord::displacement(1, d, 0, k * (1 - x), -k * x)});
            }
            break;
        case SiteRole::Special: {
            cplx front = lambda(k, d) / std::sqrt(static_cast<double>(d));
            for (int y = 0; y < d; ++y) {
                cplx c = front * omega_power(d, static_cast<long long>(k) * x * y +
                                                    static_cast<long long>(k) * y * (y + 1));
                obs.parts.push_back({c, WeylWord::displacement(1, d, 0, k * (1 - y), k * y)});
            }
            break;
        }
    }
    return obs;
}

Eigen::MatrixXcd ideal_observable_matrix(SiteRole role, int x, int k, int d) {
    IdealObservable obs = ideal_observable(role, x, k, d);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [c, word] : obs.parts) {
        m += c * to_dense(word);
    }
    return m;
}

namespace {

/// Role of every lattice site given the special-site list.
std::map<SiteCoord, SiteRole> role_map(const TorusLattice& lat,
                                       const std::vector<SiteCoord>& special) {
    std::map<SiteCoord, SiteRole> roles;
    for (SiteCoord s : lat.sites()) {
        roles[s] = SiteRole::Generic;
    }
    for (SiteCoord s : special) {
        roles[lat.wrap(s)] = SiteRole::Special;
        roles[lat.wrap({s.i + 1, s.j - 1})] = SiteRole::Neighbor;
    }
    return roles;
}

/// Expected value of sum_terms coeff * prod factors with the ideal
/// observables substituted, evaluated term by term on the stabilizer state.
cplx terms_expectation(const std::vector<BellTerm>& terms, const TorusLattice& lat,
                       const std::map<SiteCoord, SiteRole>& roles, const StabilizerGroup& group) {
    int d = lat.d();
    int n = lat.num_sites();
    cplx total = 0.0;
    for (const BellTerm& term : terms) {
        std::vector<std::pair<cplx, WeylWord>> strings = {
            {term.coeff, WeylWord::identity(n, d)}};
        for (const ObservableRef& f : term.factors) {
            IdealObservable obs = ideal_observable(roles.at(f.site), f.input, f.mode, d);
            int site = lat.site_index(f.site);
            std::vector<std::pair<cplx, WeylWord>> next;
            next.reserve(strings.size() * obs.parts.size());
            for (const auto& [c0, w0] : strings) {
                for (const auto& [c1, w1] : obs.parts) {
                    WeylWord embedded =
                        WeylWord::single(n, d, site, w1.x[0], w1.z[0], w1.phase);
                    next.push_back({c0 * c1, multiply(w0, embedded)});
                }
            }
            strings = std::move(next);
        }
        for (const auto& [c, w] : strings) {
            total += c * group.expectation(w);
        }
    }
    return total;
}

}  // namespace

double bell_expectation(const BellExpression& expr, const StabilizerGroup& group) {
    const TorusLattice& lat = group.lattice();
    if (expr.d != lat.d() || expr.L != lat.L()) {
        throw std::invalid_argument("expression and stabilizer group disagree on the lattice");
    }
    auto roles = role_map(lat, expr.special);
    cplx total = terms_expectation(expr.terms, lat, roles, group);
    if (std::abs(total.imag()) > 1e-9) {
        throw std::logic_error("Bell expectation has a non-negligible imaginary part");
    }
    return total.real();
}

std::vector<double> sos_factor_expectations(const BellExpression& expr,
                                            const StabilizerGroup& group) {
    const TorusLattice& lat = group.lattice();
    SpecialSiteSet specials{expr.special};
    auto roles = role_map(lat, expr.special);
    std::vector<double> out;
    for (const GeneratorTerms& gen : expression_generators(lat, specials)) {
        cplx g = terms_expectation(gen.terms, lat, roles, group);
        out.push_back(2.0 - 2.0 * g.real());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix-free SOS verification.

namespace {

struct SiteOp {
    int site;
    std::vector<cplx> mat;  // m x m, row major
};

using GeneratorOp = std::vector<SiteOp>;

std::vector<cplx> to_flat(const Eigen::MatrixXcd& m) {
    std::vector<cplx> out(m.rows() * m.cols());
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            out[r * m.cols() + c] = m(r, c);
        }
    }
    return out;
}

std::vector<cplx> adjoint_flat(const std::vector<cplx>& m, int dim) {
    std::vector<cplx> out(dim * dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            out[c * dim + r] = std::conj(m[r * dim + c]);
        }
    }
    return out;
}

class StateKernel {
  public:
    StateKernel(int m, int n_sites) : m_(m) {
        strides_.resize(n_sites);
        long long s = 1;
        for (int i = 0; i < n_sites; ++i) {
            strides_[i] = s;
            s *= m;
        }
        dim_ = s;
    }

    long long dim() const { return dim_; }

    void apply_site(std::vector<cplx>& v, int site, const std::vector<cplx>& mat) const {
        long long stride = strides_[site];
        long long block = stride * m_;
        cplx tmp[8];
        for (long long hi = 0; hi < dim_; hi += block) {
            for (long long lo = hi; lo < hi + stride; ++lo) {
                for (int y = 0; y < m_; ++y) {
                    tmp[y] = v[lo + y * stride];
                }
                for (int y = 0; y < m_; ++y) {
                    cplx acc = 0.0;
                    for (int yy = 0; yy < m_; ++yy) {
                        acc += mat[y * m_ + yy] * tmp[yy];
                    }
                    v[lo + y * stride] = acc;
                }
            }
        }
    }

    void apply_generator(std::vector<cplx>& v, const GeneratorOp& gen, bool adjoint) const {
        for (const SiteOp& op : gen) {
            if (adjoint) {
                apply_site(v, op.site, adjoint_flat(op.mat, m_));
            } else {
                apply_site(v, op.site, op.mat);
            }
        }
    }

  private:
    int m_;
    long long dim_ = 1;
    std::vector<long long> strides_;
};

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = cplx(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < dim; ++c) {
        cplx diag = r(c, c);
        q.col(c) *= std::abs(diag) < 1e-14 ? 1.0 : diag / std::abs(diag);
    }
    return q;
}

/// Unitary with eigenvalues that are d-th roots of unity, so A^d = I.
Eigen::MatrixXcd random_order_d_unitary(int dim, int d, std::mt19937_64& rng) {
    Eigen::MatrixXcd v = random_unitary(dim, rng);
    std::uniform_int_distribution<int> pick(0, d - 1);
    Eigen::VectorXcd eig(dim);
    for (int i = 0; i < dim; ++i) {
        eig(i) = omega_power(d, pick(rng));
    }
    return v * eig.asDiagonal() * v.adjoint();
}

/// Per-site family A_{x,k} = (A_{x,1})^k of random order-d unitaries.
struct PartyObservables {
    // mats[x][k-1] for k in 1..d-1
    std::vector<std::vector<Eigen::MatrixXcd>> mats;
};

}  // namespace

double verify_sos(const TorusLattice& lat, const SpecialSiteSet& specials,
                  const SosOptions& options) {
    ValidationReport report = validate_special_sites(lat, specials);
    if (!report.ok) {
        throw std::invalid_argument("invalid special sites: " + report.message);
    }
    int d = lat.d();
    int n = lat.num_sites();
    int m = options.party_dim;
    if (m < 1 || m > 8) {
        throw std::invalid_argument("party dimension must lie in 1..8");
    }
    double dim_check = std::pow(static_cast<double>(m), static_cast<double>(n));
    if (dim_check > 4.0e6) {
        throw std::invalid_argument("party_dim^N state is too large for the matrix-free check");
    }

    std::vector<SiteCoord> special;
    for (SiteCoord s : specials.sites) {
        special.push_back(lat.wrap(s));
    }
    int R = static_cast<int>(special.size());
    double constant = quantum_bound(n, d, R);

    std::set<SiteCoord> near_vertices;
    std::set<SiteCoord> near_plaquettes;
    for (SiteCoord s : special) {
        near_vertices.insert(lat.wrap({s.i, s.j - 1}));
        near_vertices.insert(lat.wrap({s.i, s.j + 1}));
        near_plaquettes.insert(lat.wrap({s.i - 1, s.j}));
        near_plaquettes.insert(lat.wrap({s.i + 1, s.j}));
    }

    StateKernel kernel(m, n);
    long long dim = kernel.dim();
    LambdaTable lambdas = LambdaTable::make(d);

    double worst = 0.0;
    std::mt19937_64 rng(options.seed);
    for (int trial = 0; trial < options.trials; ++trial) {
        // Fresh observables per trial: one order-d unitary per site and input.
        std::vector<PartyObservables> party(n);
        for (int s = 0; s < n; ++s) {
            party[s].mats.resize(d);
            for (int x = 0; x < d; ++x) {
                Eigen::MatrixXcd a1 = random_order_d_unitary(m, d, rng);
                party[s].mats[x].resize(d - 1);
                party[s].mats[x][0] = a1;
                for (int k = 2; k <= d - 1; ++k) {
                    party[s].mats[x][k - 1] = party[s].mats[x][k - 2] * a1;
                }
            }
        }
        auto site_mat = [&](SiteCoord c, int x, int k) {
            return to_flat(party[lat.site_index(c)].mats[x][k - 1]);
        };
        // Substituted combination on a special site:
        //   Abar_{x,k} = w^{-kx(x+1)} / (sqrt(d) lambda_k) sum_y w^{-kxy} A_{y,k}.
        auto abar_mat = [&](SiteCoord c, int x, int k) {
            Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);
            for (int y = 0; y < d; ++y) {
                acc += omega_power(d, -static_cast<long long>(k) * x * y) *
                       party[lat.site_index(c)].mats[y][k - 1];
            }
            cplx front = omega_power(d, -static_cast<long long>(k) * x * (x + 1)) /
                         (std::sqrt(static_cast<double>(d)) * lambdas.at(k));
            return to_flat((front * acc).eval());
        };

        // Substituted generators as products of site-local matrices, the
        // weight of the matching |.|^2 block, and whether that block daggers
        // the generator (it does for the star above and the plaquette to the
        // left of a special site; the dagger placement is what makes the
        // quadratic pieces telescope through the conjugation identity).
        struct SosBlock {
            double weight;
            bool factor_daggered;
            GeneratorOp ops;
        };
        std::vector<SosBlock> gens;
        auto op = [&](SiteCoord c) { return lat.site_index(lat.wrap(c)); };
        for (SiteCoord v : lat.vertices()) {
            if (near_vertices.count(v)) {
                continue;
            }
            gens.push_back({1.0,
                            false,
                            {{op({v.i - 1, v.j}), site_mat(lat.wrap({v.i - 1, v.j}), 0, d - 1)},
                             {op({v.i, v.j - 1}), site_mat(lat.wrap({v.i, v.j - 1}), 0, d - 1)},
                             {op({v.i, v.j + 1}), site_mat(lat.wrap({v.i, v.j + 1}), 0, 1)},
                             {op({v.i + 1, v.j}), site_mat(lat.wrap({v.i + 1, v.j}), 0, 1)}}});
        }
        for (SiteCoord p : lat.plaquettes()) {
            if (near_plaquettes.count(p)) {
                continue;
            }
            gens.push_back({1.0,
                            false,
                            {{op({p.i - 1, p.j}), site_mat(lat.wrap({p.i - 1, p.j}), 1, 1)},
                             {op({p.i, p.j - 1}), site_mat(lat.wrap({p.i, p.j - 1}), 1, d - 1)},
                             {op({p.i, p.j + 1}), site_mat(lat.wrap({p.i, p.j + 1}), 1, 1)},
                             {op({p.i + 1, p.j}), site_mat(lat.wrap({p.i + 1, p.j}), 1, d - 1)}}});
        }
        for (SiteCoord s : special) {
            int i = s.i;
            int j = s.j;
            gens.push_back({1.0,
                            false,
                            {{op({i - 1, j - 1}), site_mat(lat.wrap({i - 1, j - 1}), 0, d - 1)},
                             {op({i, j - 2}), site_mat(lat.wrap({i, j - 2}), 0, d - 1)},
                             {op({i, j}), abar_mat(s, 0, 1)},
                             {op({i + 1, j - 1}), site_mat(lat.wrap({i + 1, j - 1}), 0, 1)}}});
            gens.push_back({1.0,
                            true,
                            {{op({i - 1, j + 1}), site_mat(lat.wrap({i - 1, j + 1}), 0, d - 1)},
                             {op({i, j}), abar_mat(s, 0, d - 1)},
                             {op({i, j + 2}), site_mat(lat.wrap({i, j + 2}), 0, 1)},
                             {op({i + 1, j + 1}), site_mat(lat.wrap({i + 1, j + 1}), 0, 1)}}});
            gens.push_back({1.0,
                            true,
                            {{op({i - 2, j}), site_mat(lat.wrap({i - 2, j}), 1, 1)},
                             {op({i - 1, j - 1}), site_mat(lat.wrap({i - 1, j - 1}), 1, d - 1)},
                             {op({i - 1, j + 1}), site_mat(lat.wrap({i - 1, j + 1}), 1, 1)},
                             {op({i, j}), abar_mat(s, 1, d - 1)}}});
            gens.push_back({1.0,
                            false,
                            {{op({i, j}), abar_mat(s, 1, 1)},
                             {op({i + 1, j - 1}), site_mat(lat.wrap({i + 1, j - 1}), 1, d - 1)},
                             {op({i + 1, j + 1}), site_mat(lat.wrap({i + 1, j + 1}), 1, 1)},
                             {op({i + 2, j}), site_mat(lat.wrap({i + 2, j}), 1, d - 1)}}});
            for (int x = 2; x <= d - 1; ++x) {
                gens.push_back(
                    {2.0,
                     false,
                     {{op({i - 1, j - 1}), site_mat(lat.wrap({i - 1, j - 1}), 0, x - 1)},
                      {op({i, j - 2}), site_mat(lat.wrap({i, j - 2}), 0, x - 1)},
                      {op({i, j}), abar_mat(s, x, 1)},
                      {op({i + 1, j - 1}), site_mat(lat.wrap({i + 1, j - 1}), x, 1)},
                      {op({i + 1, j + 1}), site_mat(lat.wrap({i + 1, j + 1}), 1, x)},
                      {op({i + 2, j}), site_mat(lat.wrap({i + 2, j}), 1, d - x)}}});
            }
        }

        // Random test vector.
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<cplx> v(dim);
        double norm2 = 0.0;
        for (long long idx = 0; idx < dim; ++idx) {
            v[idx] = cplx(gauss(rng), gauss(rng));
            norm2 += std::norm(v[idx]);
        }
        double norm = std::sqrt(norm2);

        // residual = constant*v - B v - sum_i w_i |I - M_i|^2 v.
        std::vector<cplx> residual(dim);
        for (long long idx = 0; idx < dim; ++idx) {
            residual[idx] = constant * v[idx];
        }
        std::vector<cplx> scratch(dim);
        std::vector<cplx> scratch2(dim);
        for (const auto& block : gens) {
            double weight = block.weight;
            // B contribution: gen + gen^dagger.
            scratch = v;
            kernel.apply_generator(scratch, block.ops, false);
            for (long long idx = 0; idx < dim; ++idx) {
                residual[idx] -= weight * scratch[idx];
            }
            scratch = v;
            kernel.apply_generator(scratch, block.ops, true);
            for (long long idx = 0; idx < dim; ++idx) {
                residual[idx] -= weight * scratch[idx];
            }
            // |I - M|^2 v = t - M^dagger t with t = v - M v, where M is the
            // generator or its adjoint per the block's dagger placement.
            scratch = v;
            kernel.apply_generator(scratch, block.ops, block.factor_daggered);
            for (long long idx = 0; idx < dim; ++idx) {
                scratch2[idx] = v[idx] - scratch[idx];
            }
            scratch = scratch2;
            kernel.apply_generator(scratch, block.ops, !block.factor_daggered);
            for (long long idx = 0; idx < dim; ++idx) {
                residual[idx] -= weight * (scratch2[idx] - scratch[idx]);
            }
        }
        double r2 = 0.0;
        for (long long idx = 0; idx < dim; ++idx) {
            r2 += std::norm(residual[idx]);
        }
        worst = std::max(worst, std::sqrt(r2) / norm);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Observable identities.

ObservableIdentityReport verify_observable_identities(int d, std::uint64_t seed) {
    ObservableIdentityReport report{0.0, 0.0, 0.0, 0.0, 0.0};
    std::mt19937_64 rng(seed);
    LambdaTable lambdas = LambdaTable::make(d);

    auto abar_from = [&](const std::vector<Eigen::MatrixXcd>& a1, int x, int k) {
        int dim = static_cast<int>(a1[0].rows());
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
        for (int y = 0; y < d; ++y) {
            Eigen::MatrixXcd ayk = Eigen::MatrixXcd::Identity(dim, dim);
            for (int p = 0; p < k; ++p) {
                ayk = ayk * a1[y];
            }
            acc += omega_power(d, -static_cast<long long>(k) * x * y) * ayk;
        }
        return (omega_power(d, -static_cast<long long>(k) * x * (x + 1)) /
                (std::sqrt(static_cast<double>(d)) * lambdas.at(k)) * acc)
            .eval();
    };

    // Random order-d unitaries, dimension 4.
    {
        int dim = 4;
        std::vector<Eigen::MatrixXcd> a1;
        for (int y = 0; y < d; ++y) {
            a1.push_back(random_order_d_unitary(dim, d, rng));
        }
        for (int k = 1; k <= d - 1; ++k) {
            Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
            for (int x = 0; x < d; ++x) {
                Eigen::MatrixXcd ab = abar_from(a1, x, k);
                sum += ab.adjoint() * ab;
                Eigen::MatrixXcd conj_dev = ab.adjoint() - abar_from(a1, x, d - k);
                report.conjugation_dev = std::max(report.conjugation_dev, conj_dev.norm());
            }
            Eigen::MatrixXcd dev = sum - static_cast<double>(d) * Eigen::MatrixXcd::Identity(dim, dim);
            report.sum_identity_dev = std::max(report.sum_identity_dev, dev.norm());
        }
    }

    // Ideal single-site observables.
    {
        std::vector<Eigen::MatrixXcd> a1;
        for (int y = 0; y < d; ++y) {
            a1.push_back(ideal_observable_matrix(SiteRole::Special, y, 1, d));
        }
        for (int k = 1; k <= d - 1; ++k) {
            Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
            for (int x = 0; x < d; ++x) {
                Eigen::MatrixXcd ab = abar_from(a1, x, k);
                sum += ab.adjoint() * ab;
                Eigen::MatrixXcd conj_dev = ab.adjoint() - abar_from(a1, x, d - k);
                report.conjugation_dev = std::max(report.conjugation_dev, conj_dev.norm());
            }
            Eigen::MatrixXcd dev = sum - static_cast<double>(d) * Eigen::MatrixXcd::Identity(d, d);
            report.sum_identity_dev = std::max(report.sum_identity_dev, dev.norm());
        }
        if (d == 3) {
            Eigen::MatrixXcd b0 = abar_from(a1, 0, 1);
            Eigen::MatrixXcd b1 = abar_from(a1, 1, 1);
            Eigen::MatrixXcd ab22 = abar_from(a1, 2, 2);
            Eigen::MatrixXcd anti = b0 * b1 + b1 * b0;
            report.anticommutator_dev = (anti + ab22).norm();
            report.anticommutator_unitarity_dev =
                (anti.adjoint() * anti - Eigen::MatrixXcd::Identity(3, 3)).norm();
            report.cube_dev = std::max((b0 * b0 * b0 - Eigen::MatrixXcd::Identity(3, 3)).norm(),
                                       (b1 * b1 * b1 - Eigen::MatrixXcd::Identity(3, 3)).norm());
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Dense ground state (small lattices only).

void apply_word(std::vector<std::complex<double>>& state, const WeylWord& w) {
    int d = w.d;
    int n = w.num_sites();
    long long dim = 1;
    std::vector<long long> strides(n);
    for (int s = 0; s < n; ++s) {
        strides[s] = dim;
        if (dim > (1LL << 40)) {
            throw std::invalid_argument("word has too many sites for a dense state");
        }
        dim *= d;
    }
    if (dim != static_cast<long long>(state.size())) {
        throw std::invalid_argument("state dimension does not match the word");
    }
    std::vector<int> support;
    for (int s = 0; s < n; ++s) {
        if (w.x[s] != 0 || w.z[s] != 0) {
            support.push_back(s);
        }
    }
    std::vector<cplx> out(dim, 0.0);
    cplx global = omega_power(d, w.phase);
    for (long long idx = 0; idx < dim; ++idx) {
        if (state[idx] == 0.0) {
            continue;
        }
        long long target = idx;
        long long phase = 0;
        for (int s : support) {
            int digit = static_cast<int>((idx / strides[s]) % d);
            phase += static_cast<long long>(w.z[s]) * digit;
            int shifted = digit + w.x[s];
            if (shifted >= d) {
                shifted -= d;
            }
            target += static_cast<long long>(shifted - digit) * strides[s];
        }
        out[target] += global * omega_power(d, phase) * state[idx];
    }
    state = std::move(out);
}

std::vector<std::complex<double>> ground_state_vector(const StabilizerGroup& group) {
    const TorusLattice& lat = group.lattice();
    int d = lat.d();
    int n = lat.num_sites();
    double dim_check = std::pow(static_cast<double>(d), static_cast<double>(n));
    if (dim_check > static_cast<double>(kDenseDimCap)) {
        throw std::invalid_argument("lattice too large for a dense ground state");
    }
    long long dim = static_cast<long long>(dim_check + 0.5);

    // Flux-free seed with the requested loop eigenvalues: sector_a on the
    // vertical edges of column 0, sector_b on the horizontal edges of row 0.
    std::vector<int> pattern(n, 0);
    for (int i = 1; i < lat.extent(); i += 2) {
        pattern[lat.site_index({i, 0})] = group.sector_a();
    }
    for (int j = 1; j < lat.extent(); j += 2) {
        pattern[lat.site_index({0, j})] = group.sector_b();
    }
    long long seed_index = 0;
    long long stride = 1;
    for (int s = 0; s < n; ++s) {
        seed_index += pattern[s] * stride;
        stride *= d;
    }
    std::vector<cplx> state(dim, 0.0);
    state[seed_index] = 1.0;

    // Group-average onto the joint +1 eigenspace, one generator at a time.
    for (const WeylWord& g : group.generators()) {
        std::vector<cplx> acc(dim, 0.0);
        std::vector<cplx> current = state;
        for (int k = 0; k < d; ++k) {
            for (long long idx = 0; idx < dim; ++idx) {
                acc[idx] += current[idx];
            }
            if (k + 1 < d) {
                apply_word(current, g);
            }
        }
        double norm2 = 0.0;
        for (long long idx = 0; idx < dim; ++idx) {
            acc[idx] /= static_cast<double>(d);
            norm2 += std::norm(acc[idx]);
        }
        if (norm2 < 1e-24) {
            throw std::logic_error("projector annihilated the seed state");
        }
        state = std::move(acc);
    }
    double norm2 = 0.0;
    for (long long idx = 0; idx < dim; ++idx) {
        norm2 += std::norm(state[idx]);
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (long long idx = 0; idx < dim; ++idx) {
        state[idx] *= inv;
    }
    return state;
}

}  // namespace bell
