// Copyright 2026 The qlbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "qlbm/block_encoding.hpp"
#include "qlbm/classical_lbm.hpp"
#include "qlbm/csv.hpp"
#include "qlbm/dilation.hpp"
#include "qlbm/gauss_bench.hpp"
#include "qlbm/lbm_encodings.hpp"
#include "qlbm/marching.hpp"
#include "qlbm/qlsa.hpp"

namespace qlbm {
namespace suites {

namespace {

using lattice::GridSpec;
using lattice::VelocitySet;

std::string kv(std::initializer_list<std::pair<const char*, std::string>> items) {
  std::string s;
  for (const auto& [k, v] : items) {
    if (!s.empty()) s += ";";
    s += std::string(k) + "=" + v;
  }
  return s;
}

std::string grid_str(const GridSpec& g) { return std::to_string(g.nx) + "x" + std::to_string(g.ny); }

std::size_t random_pow2(std::mt19937_64& rng, std::size_t max) {
  const std::size_t k = lattice::log2_exact(max);
  std::uniform_int_distribution<std::size_t> d(1, std::max<std::size_t>(k, 1));
  return std::size_t{1} << d(rng);
}

std::vector<double> random_phi(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.5, 1.5);
  std::vector<double> p(n);
  for (auto& v : p) v = d(rng);
  return p;
}

CVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  CVector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = cplx(d(rng), d(rng));
  return v;
}

double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

bool SuiteResult::pass() const { return failures() == 0; }

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.pass; }));
}

void SuiteResult::append(const SuiteResult& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void write_rows_csv(std::ostream& out, const SuiteResult& r) {
  csv::Writer w(out);
  w.row({"suite", "check", "params", "value", "bound", "pass"});
  for (const auto& row : r.rows) {
    w.cell(row.suite);
    w.cell(row.check);
    w.cell(row.params);
    w.cell(row.value);
    w.cell(row.bound);
    w.cell(row.pass);
    w.end_row();
  }
}

lattice::VelocityField random_field(const GridSpec& grid, const VelocitySet& vs,
                                    std::mt19937_64& rng, double limit) {
  std::uniform_real_distribution<double> d(-limit, limit);
  std::vector<lattice::Velocity> table(grid.n());
  for (auto& v : table) {
    v.x = d(rng);
    v.y = vs.d == 2 ? d(rng) : 0.0;
  }
  return lattice::VelocityField::per_node(std::move(table));
}

lattice::VelocityField random_field_sequence(const GridSpec& grid, const VelocitySet& vs,
                                             std::size_t steps, std::mt19937_64& rng,
                                             double limit) {
  std::uniform_real_distribution<double> d(-limit, limit);
  std::vector<std::vector<lattice::Velocity>> tables(std::max<std::size_t>(steps, 1));
  for (auto& t : tables) {
    t.resize(grid.n());
    for (auto& v : t) {
      v.x = d(rng);
      v.y = vs.d == 2 ? d(rng) : 0.0;
    }
  }
  return lattice::VelocityField::time_indexed(std::move(tables));
}

CMatrix random_matrix(std::size_t rows, std::size_t cols, double norm, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  CMatrix A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = cplx(d(rng), d(rng));
  const double s = Eigen::JacobiSVD<CMatrix>(A).singularValues()[0];
  return A * (norm / s);
}

SuiteResult representation_suite(const RepresentationSuiteOptions& o) {
  SuiteResult res;
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> tau_d(0, o.taus.size() - 1);
  std::uniform_int_distribution<std::size_t> steps_d(1, o.max_steps);
  for (std::size_t s = 0; s < o.configs; ++s) {
    const VelocitySet vs = lattice::velocity_set(s % 2 == 0 ? "d1q3" : "d2q5");
    const std::size_t nx = random_pow2(rng, o.max_grid);
    const std::size_t ny = vs.d == 2 ? random_pow2(rng, o.max_grid) : 1;
    const GridSpec grid = GridSpec::make(nx, ny);
    const double tau = o.taus[tau_d(rng)];
    const double omega = bench::default_omega(tau);
    const std::size_t steps = steps_d(rng);
    const auto u = random_field(grid, vs, rng, o.limit);
    const auto f0 = lbm::init_equilibrium(random_phi(grid.n(), rng), u, vs, grid);
    const auto classical = lbm::run(f0, u, tau, steps);
    marching::Marcher marcher(u, tau, omega, vs, grid);
    const auto traj = marcher.run(marching::MarchingState::pack(f0, omega), steps);

    double worst_f = 0.0;
    double worst_phi = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
      const auto& ref = classical.states[k].f;
      const Eigen::MatrixXd got = traj[k].unpack().f;
      const double floor_f = 1e-3 * ref.cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0; i < ref.size(); ++i) {
        const double r = ref.data()[i];
        worst_f = std::max(worst_f, std::abs(got.data()[i] - r) / std::max(std::abs(r), floor_f));
      }
      const auto& pr = classical.phi[k];
      const auto pg = traj[k].phi();
      double pmax = 0.0;
      for (double v : pr) pmax = std::max(pmax, std::abs(v));
      for (std::size_t j = 0; j < pr.size(); ++j)
        worst_phi = std::max(worst_phi,
                             std::abs(pg[j] - pr[j]) / std::max(std::abs(pr[j]), 1e-3 * pmax));
    }
    const std::string p = kv({{"config", std::to_string(s)}, {"model", vs.name},
                              {"grid", grid_str(grid)}, {"tau_star", csv::num(tau)},
                              {"steps", std::to_string(steps)}});
    res.add({"marching", "populations==classical", p, worst_f, o.tol, worst_f <= o.tol});
    res.add({"marching", "phi==classical", p, worst_phi, o.tol, worst_phi <= o.tol});
  }
  return res;
}

SuiteResult norm_suite(const NormSuiteOptions& o) {
  SuiteResult res;
  const VelocitySet vs = lattice::velocity_set(o.model);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> num(-10, 10);
  for (double omega : o.omegas) {
    const double tau = 1.0 / (1.0 - omega);
    for (std::size_t s = 0; s < o.samples; ++s) {
      const std::size_t nx = random_pow2(rng, o.max_grid);
      const std::size_t ny = vs.d == 2 ? random_pow2(rng, o.max_grid) : 1;
      const GridSpec grid = GridSpec::make(nx, ny);
      const auto u = random_field(grid, vs, rng);
      const auto set = marching::build_M(u, tau, omega, vs, grid);
      const auto rep = marching::verify_norm_bound(set, u, o.tol);
      const std::string p = kv({{"omega", csv::num(omega)}, {"grid", grid_str(grid)},
                                {"sample", std::to_string(s)}});
      res.add({"norm", "spectral_norm(M_omega)<=1", p, rep.norm, 1.0 + o.tol, rep.bound_holds});

      std::vector<std::array<lattice::Rational, 2>> ur(grid.n());
      for (auto& v : ur) {
        v[0] = lattice::Rational(num(rng), 30);
        v[1] = vs.d == 2 ? lattice::Rational(num(rng), 30) : lattice::Rational(0);
      }
      const auto b1 = marching::exact_B_norm1(ur, vs);
      res.add({"norm", "B_norm1==1 (exact)", p, boost::rational_cast<double>(b1), 1.0,
               b1 == lattice::Rational(1)});
    }
  }
  return res;
}

SuiteResult be_suite(const BeSuiteOptions& o) {
  SuiteResult res;
  const VelocitySet vs = lattice::d2q5();
  std::mt19937_64 rng(o.seed);
  const double tau = o.tau_star;
  const double omega = marching::coupled_omega(tau);
  be::VerifyOptions vo;
  vo.tol = o.tol;
  vo.seed = o.seed;
  vo.probes = o.unitarity_probes;

  std::vector<GridSpec> grids;
  for (std::size_t n = 1; n <= o.max_qubits; ++n) grids.push_back(GridSpec::make(std::size_t{1} << n, 1));
  if (o.include_2d) grids.push_back(GridSpec::make(2, 2));

  for (const auto& grid : grids) {
    const std::size_t n = grid.qubits();
    const auto u = random_field(grid, vs, rng);
    const be::LbmContext ctx{u, vs, grid, tau, 0};
    const auto refs = be::lbm_references(ctx, omega);
    struct Item {
      be::BlockEncoding enc;
      std::optional<ops::Operator> ref;
      std::optional<double> alpha;
      std::size_t m_bound;
    };
    std::vector<Item> items;
    items.push_back({be::be_E(), std::nullopt, 1.0, 1});
    for (std::size_t i = 0; i < 5; ++i)
      items.push_back({be::be_relabel(be::be_Eij(i, 5, 3), "E_" + std::to_string(i) + "5"),
                       std::nullopt, 1.0, 1});
    items.push_back({be::be_Ae1(1.0 - 1.0 / tau, grid), std::nullopt, 1.0, 1});
    items.push_back({be::be_Ae2(ctx, 1.0 / tau), std::nullopt, 5.0, n + 5});
    items.push_back({be::be_Ae(ctx), refs.Ae, 6.0, n + 6});
    items.push_back({be::be_Pe(vs, grid), refs.Pe, 1.0, 1});
    items.push_back({be::be_EI(grid), refs.EI, 3.0, 3});
    items.push_back({be::be_D(), std::nullopt, 2.0, 1});
    items.push_back({be::be_Me(ctx), refs.Me, 18.0 * std::sqrt(2.0), n + 10});
    items.push_back({be::be_Momega(ctx, omega), refs.Momega, be::alpha_M(omega),
                     be::n_M_bound(n)});

    for (const auto& it : items) {
      const auto chk = be::verify_encoding(it.enc, vo, it.ref);
      const std::string p = kv({{"grid", grid_str(grid)}, {"n", std::to_string(n)},
                                {"encoding", it.enc.label}});
      res.add({"be", "unitarity_defect", p, chk.unitarity_defect, o.tol,
               chk.unitarity_defect <= o.tol});
      res.add({"be", "block_error", p, chk.block_error, o.tol, chk.block_error <= o.tol});
      if (it.alpha) {
        const double rel = std::abs(it.enc.alpha - *it.alpha) / *it.alpha;
        res.add({"be", "alpha==expected", p, it.enc.alpha, *it.alpha, rel <= vo.alpha_rel_tol});
      }
      res.add({"be", "ancillas<=bound", p, static_cast<double>(it.enc.m),
               static_cast<double>(it.m_bound), it.enc.m <= it.m_bound});
    }
  }
  return res;
}

SuiteResult dilation_suite(const DilationSuiteOptions& o) {
  SuiteResult res;
  std::mt19937_64 rng(o.seed);

  // Two-factor form of S against its defining form.
  for (std::size_t nt = 1; nt <= 3; ++nt) {
    for (std::size_t m = 0; m <= 2; ++m) {
      const auto add = dilation::add_operator(nt);
      const CMatrix a = ops::materialize(dilation::relocation(add, m, 2));
      const CMatrix b = ops::materialize(dilation::relocation_direct(add, m, 2));
      const double err = (a - b).cwiseAbs().maxCoeff();
      res.add({"dilation", "relocation==direct_sum_form",
               kv({{"n_t", std::to_string(nt)}, {"m", std::to_string(m)}}), err, 1e-15,
               err <= 1e-15});
    }
  }

  // LBM instances: D2Q5 on N×1 with a fresh velocity field every step.
  const VelocitySet vs = lattice::d2q5();
  const double tau = o.tau_star;
  const double omega = marching::coupled_omega(tau);
  for (std::size_t N = 2; N <= o.max_nodes; N *= 2) {
    const GridSpec grid = GridSpec::make(N, 1);
    const std::size_t steps = o.max_steps;
    const auto u = random_field_sequence(grid, vs, steps, rng);
    const auto f0 = lbm::init_equilibrium(random_phi(grid.n(), rng), u, vs, grid);
    const auto s0 = marching::MarchingState::pack(f0, omega);
    marching::Marcher marcher(u, tau, omega, vs, grid);
    const auto traj = marcher.run(s0, steps);
    std::vector<be::BlockEncoding> encs;
    for (std::size_t j = 0; j < steps; ++j)
      encs.push_back(be::be_Momega(be::LbmContext{u, vs, grid, tau, j}, omega));
    const std::string p = kv({{"N", std::to_string(N)}, {"N_t", std::to_string(steps)},
                              {"m", std::to_string(encs.front().m)}});
    dilation::DilatedRunOptions dro;
    dro.tol = o.tol;
    dro.max_amplitudes = std::size_t{1} << 25;
    const auto r = dilation::dilated_run(s0.psi, encs, dro);
    res.add({"dilation", "success_prob==closed_form", p, r.prob_error, o.tol, r.prob_matches});
    const auto n_psi = traj.back().psi.size();
    const double dev = max_abs(r.psi_T_estimate.head(n_psi) - traj.back().psi);
    res.add({"dilation", "estimate==marching_end", p, dev, 1e-9, dev <= 1e-9});
    res.add({"dilation", "zero_blocks", p, r.max_structure_defect, 1e-12,
             r.max_structure_defect <= 1e-12});
    res.add({"dilation", "norm_drift", p, r.max_norm_drift, 1e-12, r.max_norm_drift <= 1e-12});
  }

  // Random contraction sequences with dense encodings.
  std::uniform_int_distribution<std::size_t> nt_d(1, 8);
  std::uniform_int_distribution<std::size_t> k_d(1, 4);
  std::uniform_real_distribution<double> norm_d(0.3, 1.0);
  std::uniform_real_distribution<double> alpha_d(1.0, 3.0);
  for (std::size_t s = 0; s < o.random_sequences; ++s) {
    const std::size_t nt = nt_d(rng);
    const std::size_t dim = std::size_t{1} << k_d(rng);
    std::vector<be::BlockEncoding> encs;
    for (std::size_t j = 0; j < nt; ++j)
      encs.push_back(be::be_dense(random_matrix(dim, dim, norm_d(rng), rng), alpha_d(rng)));
    const CVector psi0 = random_vector(dim, rng);
    dilation::DilatedRunOptions dro;
    dro.tol = o.tol;
    const auto r = dilation::dilated_run(psi0, encs, dro);
    const std::string p = kv({{"sample", std::to_string(s)}, {"N_t", std::to_string(nt)},
                              {"dim", std::to_string(dim)}});
    res.add({"dilation", "success_prob==closed_form", p, r.prob_error, o.tol, r.prob_matches});
    const double rel = r.estimate_error / std::max(r.psi_T_exact.norm(), 1e-300);
    res.add({"dilation", "estimate==exact", p, rel, 1e-9, rel <= 1e-9});
    res.add({"dilation", "zero_blocks", p, r.max_structure_defect, 1e-12,
             r.max_structure_defect <= 1e-12});
    const auto naive = dilation::naive_run(psi0, encs);
    const double gap = std::abs(naive.cumulative.back() - r.success_prob);
    res.add({"dilation", "naive_product==dilated_prob", p, gap, o.tol, gap <= o.tol});
  }
  return res;
}

SuiteResult usva_suite(const UsvaSuiteOptions& o) {
  SuiteResult res;
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> dim_d(1, o.max_dim);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < o.matrices; ++k) {
    const std::size_t dim = dim_d(rng);
    const double a_norm = 0.1 + 0.9 * unit(rng);
    const CMatrix A = random_matrix(dim, dim, a_norm, rng);
    const double alpha = a_norm * (1.0 + 2.0 * unit(rng));
    const auto enc = be::be_dense(A, alpha, "random");
    const double s = a_norm * (1.0 + unit(rng));
    const double delta = 0.05 + 0.45 * unit(rng);
    const double eps = 1e-3;
    const auto r = dilation::usva(enc, s, delta, eps);
    const std::string p = kv({{"sample", std::to_string(k)}, {"dim", std::to_string(dim)},
                              {"s", csv::num(s)}, {"delta", csv::num(delta)}});

    const auto& e = r.encoding;
    const CMatrix raw = be::be_extract(e) / e.alpha;
    CMatrix expect = CMatrix::Zero(raw.rows(), raw.cols());
    expect.topLeftCorner(A.rows(), A.cols()) = A * ((1.0 - delta) / s);
    const double err = (raw - expect).cwiseAbs().maxCoeff();
    res.add({"usva", "block==(1-delta)A/s", p, err, o.tol, err <= o.tol && !r.clamped});
    const auto ur = ops::verify_unitary(e.U, o.tol);
    res.add({"usva", "unitarity_defect", p, ur.defect, o.tol, ur.is_unitary});
    const double q = alpha / (delta * s) * std::log(alpha / (s * eps));
    const double qerr = std::abs(r.query_count - q) / q;
    res.add({"usva", "query_count==formula", p, r.query_count, q, qerr <= 1e-14});
    res.add({"usva", "ancillas==m+1", p, static_cast<double>(e.m),
             static_cast<double>(enc.m + 1), e.m == enc.m + 1});
  }
  return res;
}

namespace {

void add_bounds_rows(SuiteResult& res, const std::string& p, const qlsa::SingularBoundReport& b) {
  res.add({"qlsa", "sigma_max<=2", p, b.sigma_max, b.bound_max, b.pass_max});
  res.add({"qlsa", "sigma_min>=1/(N_t+1)", p, b.sigma_min, b.bound_min, b.pass_min});
}

}  // namespace

SuiteResult qlsa_suite(const QlsaSuiteOptions& o) {
  SuiteResult res;
  std::mt19937_64 rng(o.seed);
  qlsa::SingularBoundOptions so;
  so.tol = o.tol;

  {
    const auto sys = qlsa::assemble({ops::identity(1)}, CVector::Ones(1));
    const auto b = qlsa::singular_bounds(sys, so);
    const double hi = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
    const double lo = std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);
    res.add({"qlsa", "hand_sigma_max", "N_t=1;B=1", b.sigma_max, hi,
             std::abs(b.sigma_max - hi) <= 1e-12});
    res.add({"qlsa", "hand_sigma_min", "N_t=1;B=1", b.sigma_min, lo,
             std::abs(b.sigma_min - lo) <= 1e-12});
    add_bounds_rows(res, "N_t=1;B=1", b);
  }

  std::uniform_int_distribution<std::size_t> nt_d(1, o.max_steps);
  std::uniform_int_distribution<std::size_t> bd_d(1, o.max_block_dim);
  std::uniform_real_distribution<double> norm_d(0.0, 1.0);
  for (std::size_t s = 0; s < o.systems; ++s) {
    const std::size_t nt = nt_d(rng);
    const std::size_t bd = bd_d(rng);
    std::vector<ops::Operator> B;
    for (std::size_t k = 0; k < nt; ++k) B.push_back(ops::dense(random_matrix(bd, bd, norm_d(rng), rng)));
    const auto sys = qlsa::assemble(std::move(B), random_vector(bd, rng));
    so.check_premise = false;
    const auto b = qlsa::singular_bounds(sys, so);
    add_bounds_rows(res, kv({{"random", std::to_string(s)}, {"N_t", std::to_string(nt)},
                             {"block_dim", std::to_string(bd)}}),
                    b);
  }

  // Gauss Hill systems, B_n = M_ω. 2D uses a reduced grid unless asked otherwise.
  std::vector<bench::GaussCase> cases = bench::benchmark_cases_1d(bench::Path::qlsa);
  for (auto c : bench::benchmark_cases_2d(bench::Path::qlsa)) {
    if (!o.full_scale_benchmarks) {
      c.grid = GridSpec::make(8, 8);
      c.x0 = c.y0 = 4.0;
      c.sigma0 = 1.5;
      c.id += "_8x8";
    }
    cases.push_back(c);
  }
  so.check_premise = true;
  so.norm.max_iterations = 20000;
  for (const auto& c : cases) {
    const auto vs = lattice::velocity_set(c.model);
    const auto u = lattice::VelocityField::uniform(c.u);
    const double omega = c.resolved_omega();
    marching::Marcher marcher(u, c.tau_star, omega, vs, c.grid);
    const auto f0 = lbm::init_equilibrium(bench::gauss_init(c), u, vs, c.grid);
    const auto s0 = marching::MarchingState::pack(f0, omega);
    so.periodic = qlsa::PeriodicLayout{vs.q() + 1, c.grid.nx, c.grid.ny};
    for (std::size_t nt : c.steps) {
      std::vector<ops::Operator> B(nt, marcher.ops_for(0).M_omega);
      const auto sys = qlsa::assemble(B, s0.psi, false);
      const auto b = qlsa::singular_bounds(sys, so);
      const std::string p = kv({{"case", c.id}, {"N_t", std::to_string(nt)},
                                {"omega", csv::num(omega)}});
      add_bounds_rows(res, p, b);
      res.add({"qlsa", "premise max||B_n||<=1", p, b.max_B_norm, 1.0, b.premise_holds});
    }
  }
  return res;
}

}  // namespace suites
}  // namespace qlbm
