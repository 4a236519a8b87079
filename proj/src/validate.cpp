#include "dqd/validate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "dqd/integrals.hpp"
#include "dqd/noise.hpp"
#include "dqd/oracle.hpp"
#include "dqd/parallel.hpp"
#include "dqd/potential.hpp"
#include "dqd/special.hpp"

namespace dqd {

namespace {

using Clock = std::chrono::steady_clock;

void add(SuiteResult& s, std::string name, double value, double bound, bool passed) {
  s.checks.push_back({std::move(name), value, bound, passed});
  s.passed = s.passed && passed;
}

/// value <= bound, with NaN failing.
void add_le(SuiteResult& s, std::string name, double value, double bound) {
  add(s, std::move(name), value, bound, value <= bound);
}

template <class F>
SuiteResult timed(std::string name, F&& body) {
  const auto start = Clock::now();
  SuiteResult s;
  s.name = std::move(name);
  body(s);
  s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return s;
}

std::string label(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

struct OracleCase {
  oracle::ElementKind kind;
  std::array<int, 4> idx;
};

constexpr std::array<OracleCase, 13> kOracleCases{{
    {oracle::ElementKind::overlap, {1, 2, 1, 1}},
    {oracle::ElementKind::kinetic, {1, 1, 1, 1}},
    {oracle::ElementKind::kinetic, {1, 2, 1, 1}},
    {oracle::ElementKind::potential, {1, 1, 1, 1}},
    {oracle::ElementKind::potential, {1, 2, 1, 1}},
    {oracle::ElementKind::potential, {2, 2, 1, 1}},
    {oracle::ElementKind::impurity, {1, 1, 1, 1}},
    {oracle::ElementKind::impurity, {1, 2, 1, 1}},
    {oracle::ElementKind::impurity, {2, 2, 1, 1}},
    {oracle::ElementKind::coulomb, {1, 1, 1, 1}},
    {oracle::ElementKind::coulomb, {1, 2, 1, 2}},
    {oracle::ElementKind::coulomb, {1, 2, 2, 1}},
    {oracle::ElementKind::coulomb, {1, 1, 1, 2}},
}};

double closed_form(const OracleCase& c, const DeviceParams& p, const Impurity& imp,
                   ScaledBessel bessel) {
  const auto basis = make_basis(p);
  const auto dc = derive_constants(p);
  const auto [i, j, k, l] = c.idx;
  switch (c.kind) {
    case oracle::ElementKind::overlap: return overlap_matrix(basis)[i - 1][j - 1];
    case oracle::ElementKind::kinetic: return kinetic_element(i, j, basis, dc);
    case oracle::ElementKind::potential: return potential_element(i, j, p, basis);
    case oracle::ElementKind::impurity:
      return impurity_element(i, j, imp, basis, dc.coulomb_scale_mev_nm, bessel);
    case oracle::ElementKind::coulomb:
      return coulomb_element(i, j, k, l, basis, dc.coulomb_scale_mev_nm, bessel);
  }
  return 0.0;
}

}  // namespace

double corrupted_i0e(double x) { return i0e(x) * (1.0 + 1e-3); }

SuiteResult oracle_suite(const DeviceParams& base, int count, std::uint64_t seed,
                         double tolerance, bool corrupt_bessel) {
  return timed("oracle", [&](SuiteResult& s) {
    const double a_b = derive_constants(base).fock_darwin_radius_nm;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    struct Draw {
      DeviceParams p;
      Impurity imp;
    };
    std::vector<Draw> draws(count);
    for (auto& d : draws) {
      d.p = base;
      d.p.a_nm = (0.5 + 2.5 * unit(rng)) * a_b;
      d.p.epsilon_mev = unit(rng);
      d.p.xi_mev = 1.5 * unit(rng);
      const double r = (1.5 + 18.5 * unit(rng)) * d.p.a_nm;
      const double theta = 2.0 * std::numbers::pi * unit(rng);
      d.imp = Impurity{{r * std::cos(theta), r * std::sin(theta)}, -1.0};
    }
    const ScaledBessel bessel = corrupt_bessel ? &corrupted_i0e : nullptr;
    const std::size_t per = kOracleCases.size();
    const auto results = parallel_map<ValidationCheck>(draws.size() * per, [&](std::size_t n) {
      const auto& d = draws[n / per];
      const auto& c = kOracleCases[n % per];
      char name[128];
      std::snprintf(name, sizeof name, "set %zu %s %d%d%d%d", n / per,
                    std::string(oracle::kind_name(c.kind)).c_str(), c.idx[0], c.idx[1], c.idx[2],
                    c.idx[3]);
      oracle::Request req;
      req.kind = c.kind;
      req.indices = c.idx;
      req.impurity = d.imp;
      try {
        const auto ref = oracle::quadrature_oracle(req, d.p);
        const double value = closed_form(c, d.p, d.imp, bessel);
        const double rel = std::abs(value - ref.value) / std::max(std::abs(ref.value), 1e-12);
        return ValidationCheck{name, rel, tolerance, rel <= tolerance};
      } catch (const oracle::Refused& e) {
        return ValidationCheck{std::string(name) + " (oracle refused)", INFINITY, tolerance, false};
      }
    });
    for (const auto& r : results) add(s, r.name, r.value, r.bound, r.passed);
  });
}

std::vector<SuiteResult> run_validation(const DeviceParams& base, const ValidateOptions& opt) {
  std::vector<SuiteResult> suites;
  const auto mode = opt.mode;

  suites.push_back(oracle_suite(base, opt.quick ? 4 : 20, opt.seed, 1e-6, opt.corrupt_bessel));

  suites.push_back(timed("potential", [&](SuiteResult& s) {
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      DeviceParams p = base;
      p.epsilon_mev = unit(rng);
      p.xi_mev = 0.5 + 0.8 * unit(rng);
      const auto rep = potential_constraint_report(p);
      add_le(s, label("constraints eps=%.4f xi=%.4f", p.epsilon_mev, p.xi_mev),
             rep.max_relative_residual, 1e-12);
      add(s, label("barrier exists eps=%.4f xi=%.4f", p.epsilon_mev, p.xi_mev), 0.0, 0.0,
          validate_params(p).ok);
    }
    DeviceParams bad = base;
    bad.xi_mev = 0.0;
    bad.epsilon_mev = -1.0;
    bool rejected = false;
    try {
      require_valid(bad);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    add(s, "barrier-less configuration rejected", 0.0, 0.0, rejected && !validate_params(bad).ok);
  }));

  suites.push_back(timed("orthonormality", [&](SuiteResult& s) {
    const double a_b = derive_constants(base).fock_darwin_radius_nm;
    for (double ratio : {0.5, 0.9377, 1.5, 3.0}) {
      DeviceParams p = base;
      p.a_nm = ratio * a_b;
      const auto b = make_basis(p);
      const Mat2 g = b.orthogonalizer * overlap_matrix(b) * b.orthogonalizer;
      add_le(s, label("M O M = 1, a/a_B=%.4f", ratio), max_abs(g + (-1.0) * identity<2>()), 1e-12);
    }
    const auto b = make_basis(base);
    Mat2 numeric{};
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        oracle::Request r;
        r.kind = oracle::ElementKind::overlap;
        r.indices = {i, j, 1, 1};
        numeric[i - 1][j - 1] = oracle::quadrature_oracle(r, base).value;
      }
    const Mat2 g = b.orthogonalizer * numeric * b.orthogonalizer;
    add_le(s, "<psi_i|psi_j> by quadrature", max_abs(g + (-1.0) * identity<2>()), 1e-9);
  }));

  suites.push_back(timed("t0_eigenvector", [&](SuiteResult& s) {
    const Vector<4> t0{0.0, std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2, 0.0};
    for (AssemblyMode m : {AssemblyMode::paper_literal, AssemblyMode::full_slater_condon}) {
      for (double eps : {0.0, 0.3, 0.8}) {
        for (bool with_imp : {false, true}) {
          DeviceParams p = base;
          p.epsilon_mev = eps;
          std::optional<Impurity> imp;
          if (with_imp) imp = Impurity{};
          const auto r = solve_point(p, imp, m);
          const auto& h = r.hamiltonian;
          const double lambda = h[1][1] - h[1][2];
          const auto hv = h * t0;
          double res = 0.0;
          for (int i = 0; i < 4; ++i) res = std::max(res, std::abs(hv[i] - lambda * t0[i]));
          const std::string tag = std::string(mode_name(m)) + label(" eps=%.2f", eps) +
                                  (with_imp ? " impurity" : " clean");
          add_le(s, "T0 eigenvector " + tag, res / frobenius_norm(h), 1e-10);
          add_le(s, "eigen-residual " + tag, max_relative_residual(h, r.spectrum), 1e-12);
          add_le(s, "orthonormal eigenvectors " + tag, orthonormality_defect(r.spectrum), 1e-12);
        }
      }
      for (double eps : {0.1, 0.3, 0.8}) {
        DeviceParams plus = base, minus = base;
        plus.epsilon_mev = eps;
        minus.epsilon_mev = -eps;
        const double jp = solve_point(plus, std::nullopt, m).j_mev();
        const double jm = solve_point(minus, std::nullopt, m).j_mev();
        add_le(s, std::string(mode_name(m)) + label(" J(eps)=J(-eps) eps=%.2f", eps),
               std::abs(jp - jm) / std::abs(jp), 1e-10);
      }
    }
  }));

  suites.push_back(timed("sweet_spot", [&](SuiteResult& s) {
    for (double xi : {0.6, 1.0, 1.3}) {
      const auto ss = sweet_spot_check(xi, base, mode);
      add_le(s, label("|dJ/deps| / J at xi=%.1f", xi),
             std::abs(ss.derivative_ghz_per_mev) / ss.j_ghz, 1e-6);
    }
  }));

  suites.push_back(timed("trends", [&](SuiteResult& s) {
    const Impurity imp{{-6.0 * base.a_nm, 6.0 * base.a_nm}, -1.0};
    DeviceParams start = base;
    start.epsilon_mev = 0.0;
    const double j0 = solve_point(start, std::nullopt, mode).j_ghz();
    std::vector<double> targets{j0};
    const double step = opt.quick ? 0.1 : 0.05;
    for (double j = step; j <= 1.0 + 1e-9; j += step)
      if (j > j0) targets.push_back(j);
    const auto pts = parallel_map<ChiPoint>(
        targets.size(), [&](std::size_t k) { return improvement_factor(targets[k], start, imp, mode); });

    add_le(s, "chi(J0) = 1", std::abs(pts.front().chi - 1.0), 1e-6);
    double worst_match = 0.0;
    for (const auto& p : pts)
      worst_match = std::max(worst_match, std::max(std::abs(p.tilt.j_ghz - p.j_target_ghz),
                                                   std::abs(p.barrier.j_ghz - p.j_target_ghz)) /
                                              p.j_target_ghz);
    add_le(s, "matched J (relative)", worst_match, 1e-6);
    for (std::size_t k = 1; k < pts.size(); ++k) {
      const auto& a = pts[k - 1];
      const auto& b = pts[k];
      const std::string at = label(" J %.3f -> %.3f GHz", a.j_target_ghz, b.j_target_ghz);
      add(s, "chi nondecreasing" + at, b.chi - a.chi, 0.0, b.chi >= a.chi);
      const double ta = std::abs(a.tilt_noise.rel_noise), tb = std::abs(b.tilt_noise.rel_noise);
      add(s, "tilt |dJ/J| increasing" + at, tb - ta, 0.0, tb > ta);
      const double ba = std::abs(a.barrier_noise.rel_noise),
                   bb = std::abs(b.barrier_noise.rel_noise);
      add(s, "barrier |dJ/J| decreasing" + at, bb - ba, 0.0, bb < ba);
    }

    const auto eps_grid = control_grid(0.0, 1.0, opt.quick ? 0.1 : 0.02);
    const auto j_eps = parallel_map<double>(eps_grid.size(), [&](std::size_t k) {
      DeviceParams p = base;
      p.epsilon_mev = eps_grid[k];
      p.xi_mev = 1.3;
      return solve_point(p, std::nullopt, mode).j_ghz();
    });
    bool eps_ok = true;
    for (std::size_t k = 1; k < j_eps.size(); ++k) eps_ok = eps_ok && j_eps[k] >= j_eps[k - 1];
    add(s, "J(eps) nondecreasing on [0, 1] meV at xi=1.3", 0.0, 0.0, eps_ok);

    const auto xi_grid = control_grid(0.5, 1.3, opt.quick ? 0.1 : 0.02);
    const auto j_xi = parallel_map<double>(xi_grid.size(), [&](std::size_t k) {
      DeviceParams p = base;
      p.epsilon_mev = 0.0;
      p.xi_mev = xi_grid[k];
      return solve_point(p, std::nullopt, mode).j_ghz();
    });
    bool xi_ok = true;
    for (std::size_t k = 1; k < j_xi.size(); ++k) xi_ok = xi_ok && j_xi[k] <= j_xi[k - 1];
    add(s, "J(xi) nonincreasing on [0.5, 1.3] meV at eps=0", 0.0, 0.0, xi_ok);
  }));

  return suites;
}

bool print_report(std::ostream& out, const std::vector<SuiteResult>& suites) {
  bool all = true;
  char buf[256];
  for (const auto& s : suites) {
    std::size_t failed = 0;
    for (const auto& c : s.checks) {
      if (c.passed) continue;
      ++failed;
      std::snprintf(buf, sizeof buf, "  FAIL %-16s %s (value %.3e, bound %.3e)\n", s.name.c_str(),
                    c.name.c_str(), c.value, c.bound);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%-16s %s  %zu/%zu checks passed\n", s.name.c_str(),
                  s.passed ? "PASS" : "FAIL", s.checks.size() - failed, s.checks.size());
    out << buf;
    all = all && s.passed;
  }
  out << (all ? "validate: all suites passed\n" : "validate: FAILURES\n");
  return all;
}

}  // namespace dqd
