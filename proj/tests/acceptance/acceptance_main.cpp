// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "curvcone/cli.hpp"
#include "curvcone/dim4.hpp"
#include "curvcone/operator_file.hpp"
#include "curvcone/sos.hpp"
#include "curvcone/sturm.hpp"
#include "curvcone/weitzenboeck.hpp"
#include "oracles.hpp"

using namespace curvcone;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fx(const std::string& name) { return std::string(CURVCONE_FIXTURE_DIR) + "/" + name; }

std::string cli_out(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

Outcome defpoly_identity() {
  int code = 0;
  std::string out = cli_out({"defpoly", fx("id4.json")}, code);
  return {code == 0 && out == "0\n", "printed " + out.substr(0, out.find('\n'))};
}

Outcome defpoly_diag() {
  int code = 0;
  std::string out = cli_out({"defpoly", fx("diag_123456.json"), "--bound", "0"}, code);
  std::string text = out.substr(0, out.find('\n'));
  bool positive = false;
  try {
    positive = parse_rat(text) > 0;
  } catch (const std::exception&) {
  }
  return {code == 0 && positive, "printed " + text};
}

Outcome zoltek_chain() {
  Outcome o;
  CurvOp zol(read_operator_file(fx("zoltek5.json")).op());
  bool fixture_ok = zol.matrix() == bianchi_project(oracle::zoltek_raw()).matrix() && bianchi_project(zol) == zol;
  InnerResult m0 = inner_membership(zol, 0, 1e-7);
  double tol = 1e-7;
  InnerResult m1 = inner_membership(zol, 1, tol);
  if (m1.outcome != InnerOutcome::kYes) {
    tol = 1e-5;
    m1 = inner_membership(zol, 1, tol);
  }
  bool outer0 = outer_membership(zol, 0).member;
  // Independent check of the certificate identity at random points.
  double worst = 0;
  if (m1.certificate) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
      std::vector<double> x(10);
      for (auto& v : x) v = g(rng);
      double scale = 0;
      for (double v : x) scale += v * v;
      worst = std::max(worst, std::abs(oracle::certificate_identity_at(zol, *m1.certificate, x)) / (scale * scale));
    }
  }
  o.pass = fixture_ok && m0.outcome == InnerOutcome::kNoCertificate && m1.outcome == InnerOutcome::kYes && outer0 &&
           worst < 1e-5;
  std::ostringstream d;
  d << "fixture " << (fixture_ok ? "ok" : "MISMATCH") << ", m=0 inner " << to_string(m0.outcome) << " (margin "
    << m0.ray_margin << "), m=1 inner " << to_string(m1.outcome) << " at tol " << tol << ", outer m=0 "
    << (outer0 ? "TRUE" : "FALSE") << ", identity error " << worst;
  o.detail = d.str();
  return o;
}

CurvOp dim4_instance(std::uint64_t seed) {
  // Shifts spread the suite over both sides of the cone.
  static const Rat shifts[] = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1), Rat(3, 2), Rat(2)};
  return random_curvop(4, seed) + shifts[seed % 7] * CurvOp::identity(4);
}

Outcome dim4_equivalence() {
  int decisive = 0, disagree = 0, yes = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    CurvOp r = dim4_instance(seed);
    auto sweep = oracle::dim4_sweep(r);
    if (sweep == oracle::SweepVerdict::kUndecided) continue;
    ++decisive;
    bool exact = query_sec_geq(r);
    yes += exact;
    if (exact != (sweep == oracle::SweepVerdict::kTrue)) ++disagree;
  }
  std::ostringstream d;
  d << decisive << "/500 decisive (" << yes << " true), " << disagree << " disagreements";
  return {disagree == 0 && decisive > 0, d.str()};
}

Outcome certificate_soundness() {
  int trues = 0, bad = 0, strict = 0, roots = 0;
  auto check = [&](const CurvOp& r) {
    if (!query_sec_geq(r)) return;
    ++trues;
    auto cert = ft_certificate(r);
    if (!cert) {
      ++bad;
      return;
    }
    PsdStatus st;
    if (cert->kind == FtCertificate::Kind::kRationalPoint) {
      st = psd_status(shifted_by_star(r, cert->value));
    } else {
      ++roots;
      st = psd_status_at_root(r, cert->factor, cert->lo, cert->hi);
      // Numeric look at the refined root.
      Rat lo = cert->lo, hi = cert->hi;
      int slo = cert->factor.sign_at(ExtRat(lo));
      for (int k = 0; k < 60; ++k) {
        Rat mid = (lo + hi) / 2;
        int s = cert->factor.sign_at(ExtRat(mid));
        if (s == 0) lo = hi = mid;
        if (s == 0) break;
        if (s == slo)
          lo = mid;
        else
          hi = mid;
      }
      if (oracle::min_eig(shifted_by_star(r, (lo + hi) / 2)) < -1e-9) ++bad;
    }
    if (st == PsdStatus::kNotPsd) ++bad;
    if (cert->strict) {
      ++strict;
      if (st != PsdStatus::kPositiveDefinite) ++bad;
    }
    if (query_sec_gt(r) && !cert->strict) ++bad;
  };
  for (std::uint64_t seed = 0; seed < 500; ++seed) check(dim4_instance(seed));
  std::mt19937_64 rng(77);
  for (int t = 0; t < 50; ++t) check(oracle::boundary_curvop4(rng));
  std::ostringstream d;
  d << trues << " TRUE instances, " << strict << " strict, " << roots << " isolated-root certificates, " << bad
    << " failures";
  return {bad == 0 && trues > 0, d.str()};
}

Outcome hierarchy_sandwich() {
  int outer_false = 0, violations = 0, inner_runs = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    static const Rat shifts[] = {Rat(0), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
    CurvOp r = random_curvop(5, 1000 + seed) + shifts[seed % 5] * CurvOp::identity(5);
    if (outer_membership(r, 2).member) continue;
    ++outer_false;
    for (int m = 0; m <= 1; ++m) {
      ++inner_runs;
      if (inner_membership(r, m).outcome == InnerOutcome::kYes) ++violations;
    }
  }
  std::ostringstream d;
  d << outer_false << "/100 outside an outer level, " << inner_runs << " inner runs, " << violations << " violations";
  return {violations == 0 && outer_false > 0, d.str()};
}

Outcome weitzenboeck_ricci() {
  std::ostringstream d;
  bool ok = true;
  for (int n = 3; n <= 5; ++n) {
    std::optional<Rat> factor;
    HarmonicBasis hb = harmonic_basis(n, 1);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      CurvOp r = random_curvop(n, 500 + seed);
      SymMatRat k = curvature_term(r, hb).matrix;
      Matrix<Rat> ric = oracle::ricci_from_tensor(r);
      for (int i = 0; i < n && !factor; ++i)
        if (ric(i, i) != 0) factor = k(i, i) / ric(i, i);
      if (!factor) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (k(i, j) != *factor * ric(i, j)) ok = false;
    }
    if (!factor || *factor <= 0) ok = false;
    d << "n=" << n << " factor " << (factor ? to_string(*factor) : "none") << (n < 5 ? ", " : "");
  }
  return {ok, d.str()};
}

Outcome kernel_suites() {
  std::mt19937_64 rng(2024);
  int exceptions = 0, failures = 0;
  int sturm_cases = 0, disc_cases = 0, iso_cases = 0, psd_cases = 0;
  auto guarded = [&](const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception&) {
      ++exceptions;
    }
  };
  // Sturm counts against companion-matrix roots.
  while (sturm_cases < 1000) {
    guarded([&] {
      UniPoly p = oracle::random_poly(rng, 1 + sturm_cases % 8, 30, 1 + sturm_cases % 6).squarefree_part();
      if (p.degree() < 1) return;
      std::vector<double> roots = oracle::numeric_real_roots(p, 1e-9);
      std::vector<double> loose = oracle::numeric_real_roots(p, 1e-4);
      if (roots.size() != loose.size()) return;  // near-real pair: numerically ambiguous
      Rat a = oracle::random_rat(rng, 60, 8), b = a + (Rat(1 + sturm_cases % 5) / 2);
      for (double r : roots)
        if (std::abs(r - a.get_d()) < 1e-6 || std::abs(r - b.get_d()) < 1e-6) return;
      std::sort(roots.begin(), roots.end());
      for (std::size_t i = 1; i < roots.size(); ++i)
        if (roots[i] - roots[i - 1] < 1e-6) return;
      if (p.eval(a) == 0 || p.eval(b) == 0) return;
      long inside = std::count_if(roots.begin(), roots.end(), [&](double r) { return r > a.get_d() && r <= b.get_d(); });
      if (count_roots(p, ExtRat::neg_inf(), ExtRat::pos_inf()) != static_cast<int>(roots.size())) ++failures;
      if (count_roots(p, ExtRat(a), ExtRat(b)) != inside) ++failures;
      ++sturm_cases;
    });
  }
  // Discriminant identities.
  for (; disc_cases < 300; ++disc_cases) {
    guarded([&] {
      UniPoly p = oracle::random_poly(rng, 1 + disc_cases % 6, 9, 1 + disc_cases % 3);
      if (disc_cases % 4 == 0) p *= UniPoly{Rat(disc_cases % 3), Rat(1)} * UniPoly{Rat(disc_cases % 3), Rat(1)};
      Rat d = discriminant_x(p);
      if (discriminant_x(-p) != d || discriminant_x(p.reflect()) != d) ++failures;
      if (discriminant_x(p.shift((Rat(disc_cases % 11 - 5) / 3))) != d) ++failures;
      if ((d == 0) != (gcd(p, p.derivative()).degree() > 0)) ++failures;
      if (p.degree() == 2 && d != p.coeff(1) * p.coeff(1) - 4 * p.coeff(2) * p.coeff(0)) ++failures;
    });
  }
  // Partition invariants, checked by per-interval Sturm counting.
  for (; iso_cases < 200; ++iso_cases) {
    guarded([&] {
      std::vector<UniPoly> fam;
      for (int k = 0; k < 1 + iso_cases % 4; ++k) fam.push_back(oracle::random_poly(rng, 1 + (iso_cases + k) % 6, 9, 1 + k));
      if (iso_cases % 5 == 0) fam.push_back(fam[0] * UniPoly{Rat(1), Rat(-1)});
      IsolatingPartition part = isolate_family(fam);
      if (part.points.front() != ExtRat::neg_inf() || part.points.back() != ExtRat::pos_inf()) ++failures;
      for (std::size_t j = 0; j + 1 < part.points.size(); ++j)
        if (!(part.points[j] < part.points[j + 1])) ++failures;
      for (std::size_t j = 1; j + 1 < part.points.size(); ++j)
        for (const auto& p : fam)
          if (p.eval(part.points[j].value()) == 0) ++failures;
      UniPoly prod(1);
      for (const auto& p : fam) prod *= p;
      UniPoly sqf = prod.squarefree_part();
      int total = 0;
      for (int j = 0; j < part.num_intervals(); ++j) {
        const ExtRat& lo = part.points[static_cast<std::size_t>(j)];
        const ExtRat& hi = part.points[static_cast<std::size_t>(j) + 1];
        int c = count_roots(sqf, lo, hi);
        if (part.num_intervals() > 1 && c != 1) ++failures;
        total += c;
        for (std::size_t i = 0; i < fam.size(); ++i)
          if (part.root_flags[static_cast<std::size_t>(j)][i] != (count_roots(fam[i].squarefree_part(), lo, hi) > 0)) ++failures;
      }
      if (total != count_roots(sqf, ExtRat::neg_inf(), ExtRat::pos_inf())) ++failures;
    });
  }
  // psd_status against numeric eigenvalues, away from singular cases.
  while (psd_cases < 500) {
    guarded([&] {
      const int n = 1 + psd_cases % 8;
      SymMatRat m = oracle::random_sym(rng, n, 10, 1 + psd_cases % 4);
      // Shift half the cases toward the PSD side.
      if (psd_cases % 2) m += Rat(psd_cases % 7 + 1) * SymMatRat::identity(n);
      double lam = oracle::min_eig(m);
      if (std::abs(lam) < 1e-6) return;
      PsdStatus st = psd_status(m);
      if ((st == PsdStatus::kNotPsd) != (lam < 0)) ++failures;
      if ((st == PsdStatus::kPositiveDefinite) != (lam > 0)) ++failures;
      ++psd_cases;
    });
    if (exceptions > 100) break;
  }
  std::ostringstream d;
  d << sturm_cases << " sturm, " << disc_cases << " discriminant, " << iso_cases << " partition, " << psd_cases
    << " psd cases; " << failures << " failures, " << exceptions << " exceptions";
  return {failures == 0 && exceptions == 0, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "defining polynomial of the identity is 0", 1, defpoly_identity},
      {2, "defining polynomial of diag(1..6) is positive", 1, defpoly_diag},
      {3, "zoltek operator: inner m=0 no, m=1 yes, outer m=0 yes", 600, zoltek_chain},
      {4, "n=4 decision agrees with the x-sweep oracle", 300, dim4_equivalence},
      {5, "finsler-thorpe certificates verify exactly", 300, certificate_soundness},
      {6, "inner/outer sandwich on random n=5 operators", 1800, hierarchy_sandwich},
      {7, "weitzenboeck p=1 term is a fixed multiple of ricci", 120, weitzenboeck_ricci},
      {8, "exact kernel property suites", 300, kernel_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= c.limit_s;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << "CRITERION " << c.id << ": " << (pass ? "PASS" : "FAIL") << " - " << c.name << " [" << o.detail
              << "; " << secs << " s" << (in_time ? "" : ", over time limit") << "]" << std::endl;
  }
  return failed ? 1 : 0;
}
