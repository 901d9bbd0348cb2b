#include <doctest.h>

#include <set>

#include "explab/error.hpp"
#include "explab/suites.hpp"

using namespace explab;

namespace {

SuiteParams small() {
  SuiteParams p;
  p.primes = {3};
  p.ranks = {1};
  p.threads = 1;
  return p;
}

const CaseResult* find(const SuiteReport& r, const std::string& id) {
  for (const auto& c : r.cases) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("finite identities at p = 3, r = 1") {
  const SuiteReport r = run_suite("finite-identities", small());
  CHECK(r.cases.size() >= 6);
  CHECK(r.all_pass());
  CHECK(r.exit_code() == 0);
  for (const auto& c : r.cases) {
    CHECK_FALSE(c.paper_anchor.empty());
    CHECK(c.status == CaseStatus::pass);
  }
  CHECK(find(r, "additivity-p3") != nullptr);
  CHECK(find(r, "ft-inversion-p3-r1") != nullptr);
}

TEST_CASE("dmod-core carries the duality case") {
  const SuiteReport r = run_suite("dmod-core", small());
  const CaseResult* c = find(r, "dual-L-lambda");
  REQUIRE(c != nullptr);
  CHECK(c->paper_anchor == R"($\DD\mathcal{L}_{\lambda}\simeq\mathcal{L}_{-\lambda}[2]$)");
  CHECK(c->status == CaseStatus::pass);
  CHECK(r.all_pass());
}

TEST_CASE("every suite passes and ids are unique and sorted") {
  for (const auto& name : {"weyl-core", "realization"}) {
    const SuiteReport r = run_suite(name, small());
    CHECK(r.all_pass());
    std::set<std::string> ids;
    for (std::size_t i = 0; i < r.cases.size(); ++i) {
      ids.insert(r.cases[i].id);
      if (i > 0) CHECK(r.cases[i - 1].id < r.cases[i].id);
    }
    CHECK(ids.size() == r.cases.size());
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(run_suite("nope", small()), UsageError);
  SuiteParams p = small();
  p.primes = {4};
  CHECK_THROWS_AS(run_suite("finite-identities", p), UsageError);
  p.primes = {2};
  CHECK_THROWS_AS(run_suite("finite-identities", p), UsageError);
  p = small();
  p.ranks = {0};
  CHECK_THROWS_AS(run_suite("finite-identities", p), UsageError);
  p = small();
  p.bound = 9;
  CHECK_THROWS_AS(run_suite("finite-identities", p), UsageError);
  CHECK(suite_names().size() == 5);
}

TEST_CASE("reports are deterministic across runs and thread counts") {
  SuiteParams a = small();
  a.primes = {3, 5};
  a.seed = 7;
  SuiteParams b = a;
  b.threads = 4;
  const std::string one = to_json(run_suite("all", a)).dump();
  CHECK(one == to_json(run_suite("all", a)).dump());
  CHECK(one == to_json(run_suite("all", b)).dump());
  const json j = json::parse(one);
  CHECK(j["schema"] == "explab/1");
  CHECK(j["parameters"]["seed"] == 7);
  CHECK(j["summary"].is_object());
}

TEST_CASE("status and exit codes") {
  SuiteReport r;
  r.cases.push_back({"a", "x", CaseStatus::pass, ""});
  CHECK(r.exit_code() == 0);
  r.cases.push_back({"b", "x", CaseStatus::fail, ""});
  CHECK(r.exit_code() == 1);
  CHECK_FALSE(r.all_pass());
  r.cases.push_back({"c", "x", CaseStatus::error, ""});
  CHECK(r.exit_code() == 1);
  r.cases.erase(r.cases.begin() + 1);
  CHECK(r.exit_code() == 3);
  CHECK(std::string(to_string(CaseStatus::error)) == "error");
  CHECK(to_text(r).find("error") != std::string::npos);
}
