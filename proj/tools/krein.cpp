#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "krein/random.hpp"
#include "krein/verify.hpp"

namespace {

using krein::Errc;
using krein::Error;
using krein::Index;
using krein::io::Json;

constexpr int kOk = 0;
constexpr int kIdentityFailure = 1;
constexpr int kUsage = 2;

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(Errc::InvalidInput, "cannot write '" + out + "'");
  f << text;
}

Json load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::InvalidInput, "cannot read '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

Json generate(const std::string& kind, const std::vector<Index>& d, std::uint64_t seed) {
  using namespace krein;
  for (const Index v : d) {
    if (v < 1) throw Error(Errc::BadDims, "gen: dims must be >= 1");
  }
  gen::Rng rng(seed);
  if (kind == "hermitian_contraction") {
    if (d.size() != 2 || d[1] > d[0]) throw Error(Errc::BadDims, "gen hermitian_contraction: --dims n,m with m <= n");
    return io::to_json(gen::hermitian_data(rng, d[0], d[1]));
  }
  if (kind == "exit_parameter") {
    if (d.size() != 2) throw Error(Errc::BadDims, "gen exit_parameter: --dims k,h");
    return io::to_json(ExitParameter::split(gen::hermitian_contraction(rng, d[0] + d[1]), d[0]));
  }
  if (kind == "passive_system") {
    if (d.size() == 2) {
      return io::to_json(PassiveSystem::from_matrix(gen::hermitian_contraction(rng, d[0] + d[1]), d[0]));
    }
    if (d.size() == 3) {
      const Matrix u = gen::contraction(rng, d[1] + d[2], d[0] + d[2]);
      return io::to_json(PassiveSystem::from_blocks(u.topLeftCorner(d[1], d[0]), u.topRightCorner(d[1], d[2]),
                                                    u.bottomLeftCorner(d[2], d[0]), u.bottomRightCorner(d[2], d[2])));
    }
    throw Error(Errc::BadDims, "gen passive_system: --dims io,state (selfadjoint) or in,out,state");
  }
  throw Error(Errc::InvalidInput, "gen: unknown kind '" + kind + "'");
}

// Θ at each point, with the checks that need only the system.
Json report(const krein::PassiveSystem& sys, const std::vector<krein::cplx>& points) {
  using namespace krein;
  const Matrix u = sys.assembled();
  const bool selfadjoint = sys.is_selfadjoint();
  const Index io = sys.in_dim();
  Json j;
  j["in_dim"] = sys.in_dim();
  j["out_dim"] = sys.out_dim();
  j["state_dim"] = sys.state_dim();
  j["passive"] = sys.is_passive();
  j["selfadjoint"] = selfadjoint;
  Json rows = Json::array();
  for (const cplx z : points) {
    Json r;
    r["z"] = io::to_json(z);
    try {
      const Matrix th = transfer(sys, z);
      r["theta"] = io::to_json(th);
      r["norm"] = op_norm(th);
      if (sys.in_dim() == sys.out_dim()) {
        const Matrix lhs = compressed_resolvent(u, io, Side::H, z);
        const Matrix rhs = (z * th - Matrix::Identity(io, io)).inverse();
        r["resolvent_deviation"] = (lhs - rhs).norm();
      }
      if (selfadjoint) r["herglotz_symmetry_deviation"] = (transfer(sys, std::conj(z)) - th.adjoint()).norm();
    } catch (const Error& e) {
      r["error"] = e.what();
    }
    rows.push_back(r);
  }
  j["points"] = rows;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extensions of Hermitian contractions: instance generation and identity checks"};
  app.require_subcommand(1);

  std::string kind, dims_text, out;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a random instance as JSON");
  gen->add_option("--kind", kind, "hermitian_contraction | exit_parameter | passive_system")->required();
  gen->add_option("--dims", dims_text, "n,m | k,h | io,state | in,out,state")->required();
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--out", out, "Output file (default stdout)");

  krein::verify::Options vopt;
  std::string vdims;
  double tol = 0.0;
  bool list = false;
  auto* ver = app.add_subcommand("verify", "Run an identity suite over seeded random instances");
  ver->add_option("--suite", vopt.suite, "Suite name");
  ver->add_option("--count", vopt.count, "Number of instances")->default_val(200);
  ver->add_option("--dims", vdims, "Dimensions, comma list or ranges like 1..8")->default_val("1..8");
  auto* tol_opt = ver->add_option("--tol", tol, "Override the tolerance of numeric identities");
  ver->add_option("--seed", vopt.seed, "Root seed");
  ver->add_option("--out", out, "Output file (default stdout)");
  ver->add_flag("--timing", vopt.timing, "Include runtime_ms (breaks byte-identical reruns)");
  ver->add_flag("--list", list, "List suites and exit");

  std::string system_path, points_path;
  auto* rep = app.add_subcommand("report", "Evaluate Θ of a passive system on a grid of points");
  rep->add_option("--system", system_path, "PassiveSystem JSON")->required();
  rep->add_option("--points", points_path, "Grid file {\"points\": [[re, im], ...]}")->required();
  rep->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      emit(generate(kind, krein::verify::parse_dims(dims_text), seed), out);
      return kOk;
    }
    if (*ver) {
      if (list) {
        for (const auto& name : krein::verify::suite_names()) {
          std::cout << name << "  " << krein::verify::suite_description(name) << "\n";
        }
        return kOk;
      }
      if (vopt.suite.empty()) throw Error(Errc::InvalidInput, "verify: --suite is required");
      vopt.dims = krein::verify::parse_dims(vdims);
      if (*tol_opt) {
        vopt.tol = tol;
      } else if (const char* env = std::getenv("KREIN_EXT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0') throw Error(Errc::InvalidInput, "KREIN_EXT_TOL is not a number");
        vopt.tol = v;
      }
      const krein::verify::Report r = krein::verify::run(vopt);
      emit(r.to_json(), out);
      if (!r.passed()) {
        std::cerr << "krein: " << r.failures.size() << " failure(s) in suite " << r.suite << "\n";
        return kIdentityFailure;
      }
      return kOk;
    }
    if (*rep) {
      const krein::PassiveSystem sys = krein::io::system_from_json(load(system_path));
      emit(report(sys, krein::io::points_from_json(load(points_path))), out);
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "krein: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "krein: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
