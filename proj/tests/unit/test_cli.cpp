#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curvcone/cli.hpp"
#include "curvcone/operator_file.hpp"
#include "curvcone/tensorspace.hpp"

using namespace curvcone;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return std::string(CURVCONE_FIXTURE_DIR) + "/" + name; }

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("curvcone_cli_" + name);
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int verdict_lines(const std::string& out) {
  int count = 0;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("VERDICT: ", 0) == 0) ++count;
  return count;
}

}  // namespace

TEST_CASE("check4 examples") {
  Run id = run({"check4", fx("id4.json"), "--bound", "0", "--lower", "--strict"});
  CHECK(id.code == 0);
  CHECK(id.out.find("x0 = 0") != std::string::npos);
  CHECK(verdict_lines(id.out) == 1);
  CHECK(run({"check4", fx("neg_id4.json"), "--bound", "0", "--lower"}).code == 1);
  CHECK(run({"check4", fx("diag_011110.json"), "--bound", "0", "--lower", "--strict"}).code == 1);
  CHECK(run({"check4", fx("diag_011110.json"), "--bound", "0", "--lower"}).code == 0);
  CHECK(run({"check4", fx("id4.json"), "--bound", "2", "--upper", "--strict"}).code == 0);
  CHECK(run({"check4", fx("id4.json"), "--bound", "1/2", "--upper"}).code == 1);
}

TEST_CASE("check4 in low dimension uses the matrix itself") {
  CHECK(run({"check4", fx("id3.json"), "--bound", "1"}).code == 0);
  CHECK(run({"check4", fx("id3.json"), "--bound", "1", "--strict"}).code == 1);
  CHECK(run({"check4", fx("id3.json"), "--bound", "3/2"}).code == 1);
}

TEST_CASE("defpoly examples") {
  Run id = run({"defpoly", fx("id4.json")});
  CHECK(id.code == 0);
  CHECK(id.out == "0\n");
  Run d = run({"defpoly", fx("diag_123456.json"), "--bound", "0"});
  CHECK(d.code == 0);
  CHECK(parse_rat(d.out.substr(0, d.out.size() - 1)) > 0);
  CHECK(run({"defpoly", fx("zero4.json")}).out == "0\n");
  CHECK(run({"defpoly", fx("id5.json")}).code == 65);
}

TEST_CASE("relax examples") {
  Run zol = run({"relax", fx("zoltek5.json"), "--max-m", "1"});
  CHECK(zol.code == 0);
  CHECK(zol.out.find("trace: m=0: inner NO_CERTIFICATE, outer TRUE; m=1: inner YES\n") != std::string::npos);
  CHECK(verdict_lines(zol.out) == 1);
  Run neg = run({"relax", fx("neg_id5.json"), "--max-m", "0"});
  CHECK(neg.code == 1);
  CHECK(neg.out.find("outer FALSE at p=1") != std::string::npos);
  CHECK(run({"relax", fx("id5.json"), "--max-m", "0"}).code == 0);
  CHECK(run({"relax", fx("zoltek5.json"), "--max-m", "0"}).code == 2);
  setenv("CURVCONE_MAX_PROBLEM_DIM", "5", 1);
  Run cap = run({"relax", fx("id5.json"), "--max-m", "0"});
  unsetenv("CURVCONE_MAX_PROBLEM_DIM");
  CHECK(cap.code == 69);
  CHECK(cap.err.find("size cap") != std::string::npos);
  CHECK(run({"relax", fx("id5.json"), "--max-m", "9"}).code == 64);
}

TEST_CASE("relax writes certificates and problem dumps") {
  auto cert = tmp("cert.txt"), dump = tmp("dump.txt");
  Run r = run({"relax", fx("id5.json"), "--max-m", "0", "--cert", cert.string(), "--dump-sdp", dump.string()});
  CHECK(r.code == 0);
  std::string c = slurp(cert), d = slurp(dump);
  CHECK(c.rfind("sos-certificate 1\nn 5\nm 0\n", 0) == 0);
  CHECK(c.find("gram\n") != std::string::npos);
  CHECK(c.size() > 100);
  CHECK(d.rfind("sdp-triplet 1\n", 0) == 0);
  CHECK(d.find("\nend\n") != std::string::npos);
  std::filesystem::remove(cert);
  std::filesystem::remove(dump);
  CHECK(run({"relax", fx("id5.json"), "--max-m", "0", "--cert", "/nonexistent/dir/c.txt"}).code == 74);
}

TEST_CASE("input errors map to exit codes") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"check4", "/nonexistent/file.json"}).code == 74);
  auto bad = tmp("bad.json");
  write(bad, "{\"n\": 4, \"basis\": \"plucker-lex\", \"entries\": [[\"1\"]]}");
  CHECK(run({"check4", bad.string()}).code == 65);
  write(bad, "{\"n\": 4, \"basis\": \"plucker-lex\", \"entries\": ");
  CHECK(run({"check4", bad.string()}).code == 64);
  write(bad, "{\"n\": 2, \"basis\": \"other\", \"entries\": [[\"1\"]]}");
  CHECK(run({"check4", bad.string()}).code == 64);
  write(bad, "{\"n\": 2, \"basis\": \"plucker-lex\", \"entries\": [[\"1/0\"]]}");
  CHECK(run({"check4", bad.string()}).code == 64);
  write(bad, serialize_operator(to_file(ModCurvOp::identity(5))));
  CHECK(run({"check4", bad.string()}).code == 65);
  std::filesystem::remove(bad);
  CHECK(run({"check4", fx("id4.json"), "--bound", "x"}).code == 64);
}

TEST_CASE("bianchi projection flag") {
  CHECK(run({"relax", fx("zoltek5_raw.json"), "--max-m", "0"}).code == 66);
  Run projected = run({"relax", fx("zoltek5_raw.json"), "--max-m", "1", "--project"});
  CHECK(projected.code == 0);
  // Idempotent, and a no-op on valid operators.
  CHECK(run({"check4", fx("id4.json"), "--strict", "--project"}).out == run({"check4", fx("id4.json"), "--strict"}).out);
}

TEST_CASE("gen is deterministic and round-trips") {
  auto a = tmp("gen_a.json"), b = tmp("gen_b.json");
  CHECK(run({"gen", "--n", "4", "--seed", "1", "--out", a.string()}).code == 0);
  CHECK(run({"gen", "--n", "4", "--seed", "1", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(run({"check4", a.string()}).code != 66);
  OperatorFile f = read_operator_file(a.string());
  CHECK(CurvOp(f.op()) == random_curvop(4, 1));
  CHECK(parse_operator_string(serialize_operator(f)).entries == f.entries);
  Run two = run({"gen", "--n", "2", "--seed", "3"});
  CHECK(two.code == 0);
  CHECK(parse_operator_string(two.out).entries.rows() == 1);
  CHECK(run({"gen", "--n", "1"}).code == 64);
  CHECK(run({"gen", "--n", "4", "--out", "/nonexistent/dir/x.json"}).code == 74);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CurvOp r = random_curvop(5, seed, Rat(7, 3));
    CHECK(parse_operator_string(serialize_operator(to_file(r))).op() == r);
  }
}

TEST_CASE("semi-riemannian wrapper") {
  CHECK(run({"semiriem", "check4", fx("gwedgeg4_nu1.json"), "--bound", "0", "--lower"}).code == 0);
  CHECK(run({"semiriem", "check4", fx("id4.json")}).code == 64);
  // Signature 0 matches the plain command.
  auto f0 = tmp("nu0.json");
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    CurvOp r = random_curvop(4, seed) + (Rat(static_cast<long>(seed % 3)) / 2) * CurvOp::identity(4);
    write(f0, serialize_operator(to_file(r, 0)));
    for (const char* k : {"0", "1/3"}) {
      CHECK(run({"semiriem", "check4", f0.string(), "--bound", k}).code == run({"check4", f0.string(), "--bound", k}).code);
    }
  }
  // nu and n - nu agree on matched inputs: R and (G^G) R (G^G)^-1 related through psi_Q.
  auto fa = tmp("nu1.json"), fb = tmp("nu3.json");
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    CurvOp r = random_curvop(4, seed) + (Rat(static_cast<long>(seed % 3)) / 2) * CurvOp::identity(4);
    Matrix<Rat> q1(6, 6), q3(6, 6);
    SymMatRat g1 = g_wedge_g(Signature(4, 1)).matrix(), g3 = g_wedge_g(Signature(4, 3)).matrix();
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) q1(i, j) = g1(i, i) * r(i, j), q3(i, j) = g3(i, i) * r(i, j);
    write(fa, serialize_operator(OperatorFile{4, q1, 1}));
    write(fb, serialize_operator(OperatorFile{4, q3, 3}));
    write(f0, serialize_operator(to_file(r)));
    Run a = run({"semiriem", "check4", fa.string()}), b = run({"semiriem", "check4", fb.string()});
    CHECK(a.code == b.code);
    CHECK(a.code == run({"check4", f0.string()}).code);
  }
  // Q-symmetry violation.
  Matrix<Rat> asym = Matrix<Rat>::identity(6);
  asym(0, 3) = 1;
  asym(3, 0) = 1;
  write(fa, serialize_operator(OperatorFile{4, asym, 1}));
  CHECK(run({"semiriem", "check4", fa.string()}).code == 66);
  for (const auto& p : {f0, fa, fb}) std::filesystem::remove(p);
}
