#include "curvcone/sos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "curvcone/matrix.hpp"

namespace curvcone {

using Eigen::MatrixXd;
using Eigen::VectorXd;

SizeCapError::SizeCapError(int dim, int cap)
    : std::runtime_error("size cap: Gram dimension " + std::to_string(dim) + " exceeds " + std::to_string(cap)),
      dim_(dim),
      cap_(cap) {}

int max_problem_dim() {
  if (const char* env = std::getenv("CURVCONE_MAX_PROBLEM_DIM")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1'000'000) return static_cast<int>(v);
  }
  return 100;
}

PluckerIdealBasis plucker_ideal(int n) {
  PluckerIdealBasis out;
  out.n = n;
  if (n < 4) return out;
  const auto count = wedge4_basis(n).size();
  for (std::size_t q = 0; q < count; ++q) out.generators.push_back(wedge4_unit(n, static_cast<int>(q)));
  return out;
}

MultiPoly quad_form_poly(const ModCurvOp& p) {
  const int nv = choose2(p.n());
  MultiPoly out(nv);
  for (int a = 0; a < nv; ++a) {
    for (int b = a; b < nv; ++b) {
      Rat c = a == b ? p(a, a) : 2 * p(a, b);
      if (c == 0) continue;
      Exponent e(static_cast<std::size_t>(nv), 0);
      e[static_cast<std::size_t>(a)] += 1;
      e[static_cast<std::size_t>(b)] += 1;
      out.add_term(e, c);
    }
  }
  return out;
}

std::vector<Rat> multiply_by_r_power(const ModCurvOp& p, int m) {
  if (m < 0) throw std::invalid_argument("multiply_by_r_power: m must be >= 0");
  const int nv = choose2(p.n());
  MultiPoly r(nv);
  for (int a = 0; a < nv; ++a) {
    Exponent e(static_cast<std::size_t>(nv), 0);
    e[static_cast<std::size_t>(a)] = 2;
    r.add_term(e, 1);
  }
  MultiPoly prod = r.pow(m) * quad_form_poly(p);
  return coefficients(prod, MonomialIndex::of_degree(nv, 2 * m + 2));
}

namespace {

using SparseRow = std::map<int, Rat>;

void axpy(SparseRow& row, const Rat& f, const SparseRow& other) {
  for (const auto& [k, v] : other) {
    auto [it, inserted] = row.emplace(k, -f * v);
    if (!inserted) {
      it->second -= f * v;
      if (it->second == 0) row.erase(it);
    }
  }
}

}  // namespace

IdealReduction::IdealReduction(int n, int degree) : degree_(degree) {
  const int nv = choose2(n);
  monomials_ = MonomialIndex::of_degree(nv, degree);
  const int total = monomials_.size();

  // Pivot rows keyed by leading monomial index; index 0 is the largest monomial.
  std::map<int, SparseRow> pivots;
  if (degree >= 2 && n >= 4) {
    std::vector<MultiPoly> gens;
    for (const auto& g : plucker_ideal(n).generators) gens.push_back(quad_form_poly(g));
    for (const auto& beta : monomials_of_degree(nv, degree - 2)) {
      for (const auto& g : gens) {
        SparseRow row;
        for (const auto& [e, c] : g.terms()) row[monomials_.at(e + beta)] += c;
        while (!row.empty()) {
          auto lead = row.begin();
          auto hit = pivots.find(lead->first);
          if (hit == pivots.end()) {
            Rat inv = 1 / lead->second;
            for (auto& [k, v] : row) v *= inv;
            pivots.emplace(row.begin()->first, std::move(row));
            break;
          }
          Rat f = lead->second;
          axpy(row, f, hit->second);
        }
      }
    }
    // Back-substitution from the smallest leading monomial upwards.
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      SparseRow& row = it->second;
      std::vector<int> hits;
      for (const auto& [k, v] : row)
        if (k != it->first && pivots.count(k)) hits.push_back(k);
      for (int k : hits) {
        auto pos = row.find(k);
        if (pos == row.end()) continue;
        Rat f = pos->second;
        axpy(row, f, pivots.at(k));
      }
    }
  }

  std_pos_.assign(static_cast<std::size_t>(total), -1);
  for (int k = 0; k < total; ++k) {
    if (!pivots.count(k)) {
      std_pos_[static_cast<std::size_t>(k)] = static_cast<int>(standard_.size());
      standard_.push_back(k);
    }
  }
  nf_.resize(static_cast<std::size_t>(total));
  for (int k = 0; k < total; ++k) {
    auto& out = nf_[static_cast<std::size_t>(k)];
    if (std_pos_[static_cast<std::size_t>(k)] >= 0) {
      out.emplace_back(std_pos_[static_cast<std::size_t>(k)], 1);
      continue;
    }
    for (const auto& [j, v] : pivots.at(k)) {
      if (j == k) continue;
      out.emplace_back(std_pos_[static_cast<std::size_t>(j)], -v);
    }
  }
}

std::vector<Rat> IdealReduction::normal_form(const std::vector<Rat>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != monomials_.size()) throw std::invalid_argument("normal_form: length mismatch");
  std::vector<Rat> out(standard_.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (const auto& [pos, v] : nf_[k]) out[static_cast<std::size_t>(pos)] += coeffs[k] * v;
  }
  return out;
}

namespace {

void check_cap(int n, int m) {
  if (m < 0) throw std::invalid_argument("relaxation level must be >= 0");
  // Binomial count without enumerating.
  const long nv = choose2(n);
  long count = 1;
  for (long k = 1; k <= m + 1; ++k) {
    count = count * (nv + k - 1) / k;
    if (count > 1'000'000) break;
  }
  const int cap = max_problem_dim();
  if (count > cap) throw SizeCapError(static_cast<int>(std::min<long>(count, 1'000'000)), cap);
}

}  // namespace

SdpProblem build_sos_sdp(const ModCurvOp& p, int m) {
  check_cap(p.n(), m);
  const int nv = choose2(p.n());
  MonomialIndex gram = MonomialIndex::of_degree(nv, m + 1);
  MonomialIndex cons = MonomialIndex::of_degree(nv, 2 * m + 2);
  auto mult = monomials_of_degree(nv, 2 * m);
  PluckerIdealBasis ideal = plucker_ideal(p.n());
  const int ngen = static_cast<int>(ideal.generators.size());

  SdpProblem prob;
  prob.block_dims = {gram.size()};
  prob.num_free = static_cast<int>(mult.size()) * ngen;
  prob.constraints.resize(static_cast<std::size_t>(cons.size()));
  for (int a = 0; a < gram.size(); ++a)
    for (int b = a; b < gram.size(); ++b)
      prob.constraints[static_cast<std::size_t>(cons.at(gram[a] + gram[b]))].entries.push_back(SdpEntry{0, a, b, 1.0});
  for (int k = 0; k < ngen; ++k) {
    MultiPoly g = quad_form_poly(ideal.generators[static_cast<std::size_t>(k)]);
    for (std::size_t beta = 0; beta < mult.size(); ++beta) {
      const int var = static_cast<int>(beta) * ngen + k;
      for (const auto& [e, c] : g.terms())
        prob.constraints[static_cast<std::size_t>(cons.at(e + mult[beta]))].free_coeffs.emplace_back(var, c.get_d());
    }
  }
  std::vector<Rat> target = multiply_by_r_power(p, m);
  for (std::size_t k = 0; k < target.size(); ++k) prob.constraints[k].rhs = target[k].get_d();
  return prob;
}

ReducedSos build_reduced_sos(const ModCurvOp& p, int m) {
  check_cap(p.n(), m);
  const int n = p.n();
  IdealReduction red_g(n, m + 1);
  IdealReduction red_c(n, 2 * m + 2);
  ReducedSos out;
  out.n = n;
  out.m = m;
  for (int idx : red_g.standard()) out.gram_monomials.push_back(red_g.monomials()[idx]);
  const int s = static_cast<int>(out.gram_monomials.size());
  const std::size_t ncons = red_c.standard().size();
  out.rows.resize(ncons);
  out.designated.assign(ncons, {-1, -1});
  for (int a = 0; a < s; ++a) {
    for (int b = a; b < s; ++b) {
      int idx = red_c.monomials().at(out.gram_monomials[static_cast<std::size_t>(a)] +
                                     out.gram_monomials[static_cast<std::size_t>(b)]);
      for (const auto& [pos, v] : red_c.normal_form(idx)) out.rows[static_cast<std::size_t>(pos)].push_back({{a, b}, v});
      int own = red_c.standard_position(idx);
      if (own >= 0 && out.designated[static_cast<std::size_t>(own)].first < 0) out.designated[static_cast<std::size_t>(own)] = {a, b};
    }
  }
  for (const auto& d : out.designated)
    if (d.first < 0) throw std::logic_error("standard monomial without a standard factorization");
  out.rhs = red_c.normal_form(multiply_by_r_power(p, m));

  out.problem.block_dims = {s};
  for (std::size_t k = 0; k < ncons; ++k) {
    SdpConstraint con;
    for (const auto& [ab, v] : out.rows[k]) con.entries.push_back(SdpEntry{0, ab.first, ab.second, v.get_d()});
    con.rhs = out.rhs[k].get_d();
    out.problem.constraints.push_back(std::move(con));
  }
  return out;
}

std::string to_string(InnerOutcome o) {
  switch (o) {
    case InnerOutcome::kYes: return "YES";
    case InnerOutcome::kNoCertificate: return "NO_CERTIFICATE";
    case InnerOutcome::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

// Coefficients over degree 2m+2 of r^m P - x^T G x, and the ideal columns.
struct Mismatch {
  VectorXd rest;
  MatrixXd ideal;
};

Mismatch mismatch_system(const ModCurvOp& p, int m, const std::vector<Exponent>& mons, const MatrixXd& gram,
                         const std::vector<Exponent>& mult) {
  const int nv = choose2(p.n());
  MonomialIndex cons = MonomialIndex::of_degree(nv, 2 * m + 2);
  std::vector<Rat> target = multiply_by_r_power(p, m);
  Mismatch out;
  out.rest.resize(cons.size());
  for (int k = 0; k < cons.size(); ++k) out.rest(k) = target[static_cast<std::size_t>(k)].get_d();
  for (std::size_t a = 0; a < mons.size(); ++a)
    for (std::size_t b = 0; b < mons.size(); ++b)
      out.rest(cons.at(mons[a] + mons[b])) -= gram(static_cast<int>(a), static_cast<int>(b));
  PluckerIdealBasis ideal = plucker_ideal(p.n());
  const int ngen = static_cast<int>(ideal.generators.size());
  out.ideal = MatrixXd::Zero(cons.size(), static_cast<int>(mult.size()) * ngen);
  for (int k = 0; k < ngen; ++k) {
    MultiPoly g = quad_form_poly(ideal.generators[static_cast<std::size_t>(k)]);
    for (std::size_t beta = 0; beta < mult.size(); ++beta)
      for (const auto& [e, c] : g.terms()) out.ideal(cons.at(e + mult[beta]), static_cast<int>(beta) * ngen + k) += c.get_d();
  }
  return out;
}

void harden(const ReducedSos& rs, const MatrixXd& g, double tol, SosCertificate& cert) {
  const int s = static_cast<int>(g.rows());
  SymMatRat q(s);
  for (int a = 0; a < s; ++a)
    for (int b = a; b < s; ++b) q.set(a, b, round_dyadic(0.5 * (g(a, b) + g(b, a)), 30));
  for (std::size_t k = 0; k < rs.rows.size(); ++k) {
    Rat acc = 0;
    for (const auto& [ab, v] : rs.rows[k]) acc += (ab.first == ab.second ? 1 : 2) * v * q(ab.first, ab.second);
    Rat r = rs.rhs[k] - acc;
    if (r == 0) continue;
    const auto [a, b] = rs.designated[k];
    q.set(a, b, q(a, b) + (a == b ? r : r / 2));
  }
  cert.verified_exact = psd_status_elimination(q) != PsdStatus::kNotPsd;
  cert.verified_shifted = cert.verified_exact || psd_status_elimination(q + rat_from_double(tol) * SymMatRat::identity(s)) != PsdStatus::kNotPsd;
}

}  // namespace

InnerResult inner_membership(const ModCurvOp& r, int m, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  ReducedSos rs = build_reduced_sos(r, m);
  SdpStatus st = solve(rs.problem, tol, 200);
  InnerResult out;
  out.t_star = st.t_star;
  out.ray_margin = st.ray_margin;
  if (st.verdict == SdpVerdict::kInfeasible) {
    out.outcome = InnerOutcome::kNoCertificate;
    return out;
  }
  if (st.verdict != SdpVerdict::kFeasible) return out;

  const MatrixXd& g = st.point->blocks[0];
  const int nv = choose2(r.n());
  MonomialIndex full = MonomialIndex::of_degree(nv, m + 1);
  SosCertificate cert;
  cert.n = r.n();
  cert.m = m;
  cert.monomials = full.monomials();
  cert.gram = MatrixXd::Zero(full.size(), full.size());
  std::vector<int> where;
  for (const auto& e : rs.gram_monomials) where.push_back(full.at(e));
  for (std::size_t a = 0; a < where.size(); ++a)
    for (std::size_t b = 0; b < where.size(); ++b) cert.gram(where[a], where[b]) = g(static_cast<int>(a), static_cast<int>(b));
  cert.multiplier_monomials = monomials_of_degree(nv, 2 * m);
  const int ngen = static_cast<int>(plucker_ideal(r.n()).generators.size());
  Mismatch mm = mismatch_system(r, m, cert.monomials, cert.gram, cert.multiplier_monomials);
  VectorXd c = VectorXd::Zero(mm.ideal.cols());
  if (mm.ideal.cols() > 0) c = mm.ideal.colPivHouseholderQr().solve(mm.rest);
  cert.ideal_coeffs = MatrixXd::Zero(static_cast<int>(cert.multiplier_monomials.size()), ngen);
  for (int k = 0; k < c.size(); ++k) cert.ideal_coeffs(k / ngen, k % ngen) = c(k);
  double coeff_err = mm.ideal.cols() > 0 ? (mm.rest - mm.ideal * c).lpNorm<Eigen::Infinity>() : mm.rest.lpNorm<Eigen::Infinity>();
  cert.residual = std::max(coeff_err, std::max(0.0, -min_eigenvalue(*st.point)));
  harden(rs, g, tol, cert);
  out.outcome = cert.residual <= tol ? InnerOutcome::kYes : InnerOutcome::kInconclusive;
  out.certificate = std::move(cert);
  return out;
}

double certificate_mismatch(const ModCurvOp& p, const SosCertificate& cert) {
  Mismatch mm = mismatch_system(p, cert.m, cert.monomials, cert.gram, cert.multiplier_monomials);
  const int ngen = static_cast<int>(cert.ideal_coeffs.cols());
  VectorXd c(mm.ideal.cols());
  for (int k = 0; k < c.size(); ++k) c(k) = cert.ideal_coeffs(k / ngen, k % ngen);
  return (mm.rest - mm.ideal * c).lpNorm<Eigen::Infinity>();
}

}  // namespace curvcone
