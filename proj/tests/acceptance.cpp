// Runs the thirteen acceptance criteria and prints one PASS/FAIL line each.
// Exits nonzero when any criterion fails.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "krein/verify.hpp"

using namespace krein;

namespace {

constexpr std::uint64_t kSeed = 20240601;
const std::vector<Index> kDims{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};

struct Outcome {
  bool pass = true;
  std::string detail;
};

void absorb(Outcome& out, const verify::Report& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s%s n=%lld max_dev=%.2e fail=%zu", out.detail.empty() ? "" : "; ", r.suite.c_str(),
                static_cast<long long>(r.instances), r.max_deviation, r.failures.size());
  out.detail += buf;
  if (!r.passed()) {
    out.pass = false;
    const verify::Failure& f = r.failures.front();
    std::snprintf(buf, sizeof buf, " (first: %s seed=%llu dev=%.2e)", f.identity.c_str(),
                  static_cast<unsigned long long>(f.seed), f.deviation);
    out.detail += buf;
  }
}

Outcome suites(std::initializer_list<const char*> names, Index count = 200) {
  Outcome out;
  for (const char* name : names) {
    verify::Options o;
    o.suite = name;
    o.count = count;
    o.dims = kDims;
    o.seed = kSeed;
    absorb(out, verify::run(o));
  }
  return out;
}

// The full property request at the smallest blocking dimensions, twice, must
// raise the same dimension-counting diagnostic.
Outcome degeneracy() {
  Outcome out = suites({"construc_finite_dim"});
  std::string first;
  for (int rep = 0; rep < 2; ++rep) {
    try {
      construct_special_x(2, 2, Matrix::Zero(2, 2), kSeed + rep, SpecialRequest::full());
      out.pass = false;
      out.detail += "; full request returned";
    } catch (const Error& e) {
      const std::string msg = e.what();
      if (e.code() != Errc::InfeasibleInFiniteDim || msg.find("dim") == std::string::npos) {
        out.pass = false;
        out.detail += "; unexpected error: " + msg;
      }
      if (rep == 0) first = msg;
      else if (msg != first) {
        out.pass = false;
        out.detail += "; diagnostic depends on the seed";
      }
    }
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"schur-frobenius block resolvent", [] { return suites({"schur_frobenius"}); }},
      {"compressed resolvent on H", [] { return suites({"comrescontr"}); }},
      {"compressed resolvent on the exit space", [] { return suites({"compscreas"}); }},
      {"shorted-operator identities", [] { return suites({"shorts11", "equshorts", "rn1"}); }},
      {"limit values at +-1", [] { return suites({"limits"}); }},
      {"Q-function algebra and class probes", [] { return suites({"q_algebra"}); }},
      {"trivial gap intersections", [] { return suites({"novaya"}, 500); }},
      {"finite-dimensional degeneracy", degeneracy},
      {"cayley involution and class mapping", [] { return suites({"cayley"}); }},
      {"closed form of the sectorial form", [] { return suites({"clfrm"}); }},
      {"realization round-trip", [] { return suites({"realization"}); }},
      {"form of N(lambda)", [] { return suites({"repweyl11"}); }},
      {"Krein-Ovcharenko constant-K formula", [] { return suites({"krein_ovcharenko"}); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
