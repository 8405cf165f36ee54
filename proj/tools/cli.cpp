#include "curvcone/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ios>

#include <CLI11.hpp>

#include "curvcone/dim4.hpp"
#include "curvcone/operator_file.hpp"
#include "curvcone/relaxation.hpp"
#include "curvcone/tensorspace.hpp"

namespace curvcone {

namespace {

/// Carries an exit code out of a command.
struct Exit {
  int code;
  std::string message;
};

struct Options {
  std::string file;
  std::string bound = "0";
  bool upper = false;
  bool lower = false;
  bool strict = false;
  bool project = false;
  int max_m = 1;
  double tol = 1e-7;
  std::string cert_path;
  std::string dump_path;
  // gen
  int n = 0;
  std::uint64_t seed = 0;
  std::string magnitude = "1";
  std::string out_path;
};

Rat parse_rat_option(const std::string& text, const char* what) {
  try {
    return parse_rat(text);
  } catch (const std::exception&) {
    throw Exit{exit_code::kUsage, std::string("invalid rational for ") + what + ": " + text};
  }
}

OperatorFile load(const std::string& path) {
  try {
    return read_operator_file(path);
  } catch (const ParseError& e) {
    throw Exit{exit_code::kUsage, std::string("parse error: ") + e.what()};
  } catch (const DimensionError& e) {
    throw Exit{exit_code::kDimension, std::string("dimension error: ") + e.what()};
  } catch (const std::ios_base::failure& e) {
    throw Exit{exit_code::kIo, std::string("I/O error: ") + e.what()};
  }
}

CurvOp as_curvop(const ModCurvOp& op, bool project) {
  if (is_bianchi(op)) return CurvOp(op);
  if (!project) throw Exit{exit_code::kNotBianchi, "operator violates the Bianchi identity (use --project)"};
  return bianchi_project(op);
}

CurvOp riemannian_operator(const Options& o) {
  OperatorFile f = load(o.file);
  ModCurvOp op;
  try {
    op = f.op();
  } catch (const ParseError& e) {
    throw Exit{exit_code::kUsage, std::string("parse error: ") + e.what()};
  }
  return as_curvop(op, o.project);
}

/// psi_Q(R - k Id); the bound is folded in, so the caller delegates with k = 0.
CurvOp semiriemannian_operator(const Options& o, const Rat& k) {
  OperatorFile f = load(o.file);
  if (!f.signature) throw Exit{exit_code::kUsage, "semiriem requires a \"signature\" field"};
  Matrix<Rat> shifted = f.entries;
  for (int i = 0; i < shifted.rows(); ++i) shifted(i, i) -= k;
  ModCurvOp op;
  try {
    op = psi_Q(shifted, Signature(f.n, *f.signature));
  } catch (const std::invalid_argument& e) {
    throw Exit{exit_code::kNotBianchi, std::string("Q-symmetry violation: ") + e.what()};
  }
  return as_curvop(op, o.project);
}

BoundSide side_of(const Options& o) {
  if (o.upper && o.lower) throw Exit{exit_code::kUsage, "--upper and --lower are exclusive"};
  return o.upper ? BoundSide::kUpper : BoundSide::kLower;
}

int check4(const CurvOp& r, const Rat& k, BoundSide side, bool strict, std::ostream& out) {
  const int n = r.n();
  const char* rel = side == BoundSide::kLower ? (strict ? ">" : ">=") : (strict ? "<" : "<=");
  out << "query: sec " << rel << ' ' << to_string(k) << " (n = " << n << ")\n";
  bool holds = false;
  if (n <= 3) {
    CurvOp s = apply_bound_reduction(r, k, side);
    PsdStatus st = psd_status(s.matrix());
    out << "psd status: " << to_string(st) << '\n';
    holds = strict ? st == PsdStatus::kPositiveDefinite : st != PsdStatus::kNotPsd;
  } else if (n == 4) {
    holds = query_bound(r, k, side, strict);
    if (holds) {
      auto cert = ft_certificate(apply_bound_reduction(r, k, side));
      if (cert) out << "certificate: " << cert->describe() << '\n';
    }
  } else {
    throw Exit{exit_code::kDimension, "check4 needs n <= 4; use relax for n >= 5"};
  }
  out << "VERDICT: " << (holds ? "HOLDS" : "FAILS") << '\n';
  return holds ? exit_code::kHolds : exit_code::kFails;
}

int relax(const CurvOp& r, const Rat& k, const Options& o, std::ostream& out) {
  if (o.max_m < 0 || o.max_m > kMaxRelaxationLevel)
    throw Exit{exit_code::kUsage, "--max-m must lie in [0, " + std::to_string(kMaxRelaxationLevel) + "]"};
  if (!(o.tol > 0)) throw Exit{exit_code::kUsage, "--tol must be positive"};
  Verdict v;
  try {
    v = algorithm1(r, k, o.max_m, o.tol);
  } catch (const RelaxationSizeCap& e) {
    throw Exit{exit_code::kSizeCap, std::string(e.what()) + " at level m=" + std::to_string(e.level()) +
                                        " (raise CURVCONE_MAX_PROBLEM_DIM or lower --max-m)"};
  }
  out << "trace: " << v.trace() << '\n';
  if (!o.dump_path.empty()) {
    std::ofstream f(o.dump_path);
    if (!f) throw Exit{exit_code::kIo, "cannot write " + o.dump_path};
    write_sdp(build_reduced_sos(apply_bound_reduction(r, k, BoundSide::kLower), v.level).problem, f);
  }
  if (v.answer == Answer::kTrue && v.certificate) {
    const auto& c = *v.certificate;
    out << "certificate: m=" << c.m << " residual=" << c.residual
        << " verified-exact=" << (c.verified_exact ? "yes" : "no") << '\n';
    if (!o.cert_path.empty()) {
      std::ofstream f(o.cert_path);
      if (!f) throw Exit{exit_code::kIo, "cannot write " + o.cert_path};
      write_certificate(f, c);
    }
  }
  out << "VERDICT: " << to_string(v.answer);
  if (v.answer == Answer::kFalse)
    out << " at level " << v.level << " (p=" << *v.failing_p << ")";
  else if (v.answer == Answer::kTrue)
    out << " at level " << v.level;
  out << '\n';
  switch (v.answer) {
    case Answer::kTrue: return exit_code::kHolds;
    case Answer::kFalse: return exit_code::kFails;
    case Answer::kUndecided: break;
  }
  return exit_code::kUndecided;
}

void add_file(CLI::App* sub, Options& o) { sub->add_option("file", o.file, "operator file")->required(); }

void add_check4(CLI::App* sub, Options& o) {
  add_file(sub, o);
  sub->add_option("--bound", o.bound, "curvature bound k");
  sub->add_flag("--upper", o.upper, "test sec <= k");
  sub->add_flag("--lower", o.lower, "test sec >= k (default)");
  sub->add_flag("--strict", o.strict, "strict inequality");
  sub->add_flag("--project", o.project, "project onto the Bianchi subspace first");
}

void add_relax(CLI::App* sub, Options& o) {
  add_file(sub, o);
  sub->add_option("--bound", o.bound, "curvature lower bound k");
  sub->add_option("--max-m", o.max_m, "highest relaxation level");
  sub->add_option("--tol", o.tol, "SDP feasibility tolerance");
  sub->add_option("--cert", o.cert_path, "write the certificate to this file");
  sub->add_option("--dump-sdp", o.dump_path, "write the last SDP in triplet format");
  sub->add_flag("--project", o.project, "project onto the Bianchi subspace first");
}

}  // namespace

void write_certificate(std::ostream& out, const SosCertificate& cert) {
  out << std::setprecision(17);
  out << "sos-certificate 1\n";
  out << "n " << cert.n << "\nm " << cert.m << '\n';
  out << "residual " << cert.residual << '\n';
  out << "verified-exact " << (cert.verified_exact ? "yes" : "no") << '\n';
  out << "verified-shifted " << (cert.verified_shifted ? "yes" : "no") << '\n';
  auto exps = [&](const std::vector<Exponent>& list) {
    for (const auto& e : list) {
      for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
      out << '\n';
    }
  };
  out << "monomials " << cert.monomials.size() << '\n';
  exps(cert.monomials);
  out << "gram\n";
  for (int i = 0; i < cert.gram.rows(); ++i) {
    for (int j = 0; j < cert.gram.cols(); ++j) out << (j ? " " : "") << cert.gram(i, j);
    out << '\n';
  }
  out << "multiplier-monomials " << cert.multiplier_monomials.size() << '\n';
  exps(cert.multiplier_monomials);
  out << "ideal-coefficients " << cert.ideal_coeffs.rows() << ' ' << cert.ideal_coeffs.cols() << '\n';
  for (int i = 0; i < cert.ideal_coeffs.rows(); ++i) {
    for (int j = 0; j < cert.ideal_coeffs.cols(); ++j) out << (j ? " " : "") << cert.ideal_coeffs(i, j);
    out << '\n';
  }
  out << "end\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and SDP-based sectional curvature bound queries", "curvcone"};
  app.require_subcommand(1);
  Options o;

  auto* c4 = app.add_subcommand("check4", "decide a sectional curvature bound for n <= 4");
  add_check4(c4, o);
  auto* dp = app.add_subcommand("defpoly", "print the exact defining polynomial value (n = 4)");
  add_file(dp, o);
  dp->add_option("--bound", o.bound, "curvature bound k");
  dp->add_flag("--project", o.project, "project onto the Bianchi subspace first");
  auto* rx = app.add_subcommand("relax", "inner/outer relaxation loop for sec >= k");
  add_relax(rx, o);
  auto* gen = app.add_subcommand("gen", "write a random curvature operator");
  gen->add_option("--n", o.n, "dimension")->required();
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--magnitude", o.magnitude, "entry bound before projection");
  gen->add_option("--out", o.out_path, "output path (default stdout)");
  auto* sr = app.add_subcommand("semiriem", "bound queries for a metric of signature nu");
  sr->require_subcommand(1);
  auto* sr_c4 = sr->add_subcommand("check4", "check4 after the psi_Q reduction");
  add_check4(sr_c4, o);
  auto* sr_rx = sr->add_subcommand("relax", "relax after the psi_Q reduction");
  add_relax(sr_rx, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }

  try {
    if (c4->parsed()) return check4(riemannian_operator(o), parse_rat_option(o.bound, "--bound"), side_of(o), o.strict, out);
    if (dp->parsed()) {
      CurvOp r = riemannian_operator(o);
      if (r.n() != 4) throw Exit{exit_code::kDimension, "defpoly needs n = 4"};
      out << to_string(defining_poly(r, parse_rat_option(o.bound, "--bound"))) << '\n';
      return exit_code::kHolds;
    }
    if (rx->parsed()) return relax(riemannian_operator(o), parse_rat_option(o.bound, "--bound"), o, out);
    if (gen->parsed()) {
      if (o.n < 2 || o.n > 64) throw Exit{exit_code::kUsage, "--n must lie in [2, 64]"};
      Rat mag = parse_rat_option(o.magnitude, "--magnitude");
      if (mag <= 0) throw Exit{exit_code::kUsage, "--magnitude must be positive"};
      std::string text = serialize_operator(to_file(random_curvop(o.n, o.seed, mag)));
      if (o.out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f || !(f << text)) throw Exit{exit_code::kIo, "cannot write " + o.out_path};
      }
      return exit_code::kHolds;
    }
    if (sr_c4->parsed()) {
      Rat k = parse_rat_option(o.bound, "--bound");
      return check4(semiriemannian_operator(o, k), 0, side_of(o), o.strict, out);
    }
    if (sr_rx->parsed()) {
      Rat k = parse_rat_option(o.bound, "--bound");
      return relax(semiriemannian_operator(o, k), 0, o, out);
    }
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

}  // namespace curvcone
