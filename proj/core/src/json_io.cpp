#include "explab/json_io.hpp"

#include "explab/error.hpp"
#include "explab/parser.hpp"

namespace explab {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

long integer_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw Error(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("rational must be a string \"a/b\" or an integer");
}

json witnesses(const std::vector<WeylElt>& ws) {
  json out = json::array();
  for (const auto& w : ws) out.push_back(w.to_string());
  return out;
}

}  // namespace

json to_json(const Cyclo& c) {
  json coeffs = json::array();
  for (const auto& q : c.coeffs()) coeffs.push_back(to_string(q));
  return json{{"prime", c.prime()}, {"coeffs", std::move(coeffs)}};
}

Cyclo cyclo_from_json(const json& j) {
  const long p = integer_field(j, "prime");
  if (p < 3 || p > 1000003 || !is_prime(p)) throw Error("not an odd prime: " + std::to_string(p));
  const json& cs = field(j, "coeffs");
  if (!cs.is_array() || cs.size() != static_cast<std::size_t>(p - 1)) {
    throw Error("coeffs must list p-1 rationals");
  }
  std::vector<Rational> coeffs;
  for (const auto& q : cs) coeffs.push_back(rational_from_json(q));
  return Cyclo::from_coeffs(static_cast<int>(p), std::move(coeffs));
}

json to_json(const ExpObject& h) {
  const int p = h.prime();
  json rows = json::array();
  for (std::size_t x = 0; x < h.base().size(); ++x) {
    json row = json::array();
    for (int t = 0; t < p; ++t) row.push_back(to_json(h.at(x, t)));
    rows.push_back(std::move(row));
  }
  return json{{"base", h.base().size()}, {"prime", p}, {"values", std::move(rows)}};
}

ExpObject exp_object_from_json(const json& j) {
  const long base = integer_field(j, "base");
  const long p = integer_field(j, "prime");
  if (base < 0) throw Error("base must be nonnegative");
  if (p < 3 || p > 1000003 || !is_prime(p)) throw Error("not an odd prime: " + std::to_string(p));
  const json& rows = field(j, "values");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(base)) {
    throw Error("values must have one row per base point");
  }
  ExpObject h(FiniteSet(static_cast<std::size_t>(base)), static_cast<int>(p));
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (!rows[x].is_array() || rows[x].size() != static_cast<std::size_t>(p)) {
      throw Error("each row must have p values");
    }
    for (long t = 0; t < p; ++t) {
      Cyclo c = cyclo_from_json(rows[x][t]);
      if (c.prime() != p) throw Error("prime mismatch");
      h.at(x, t) = std::move(c);
    }
  }
  return h;
}

json to_json(const GroebnerBasis& g) {
  return witnesses(g.basis());
}

json to_json(const CyclicModule& m) {
  return json{{"n", m.n()}, {"generators", to_json(m.ideal())}};
}

CyclicModule module_from_json(const json& j) {
  const long n = integer_field(j, "n");
  if (n < 1 || n > 8) throw Error("n must be between 1 and 8");
  const json& gens = field(j, "generators");
  if (!gens.is_array()) throw Error("generators must be a list of operator strings");
  std::vector<WeylElt> elts;
  for (const auto& g : gens) {
    if (!g.is_string()) throw Error("generators must be a list of operator strings");
    elts.push_back(parse_weyl(g.get<std::string>(), static_cast<int>(n)));
  }
  return CyclicModule::from_generators(elts);
}

json to_json(const TwoTermComplex& c) {
  return json{{"ker", c.dim_ker},
              {"coker", c.dim_coker},
              {"degrees", {c.degree_labels[0], c.degree_labels[1]}},
              {"certificate", c.certificate.to_string()},
              {"ker_witnesses", witnesses(c.ker_witnesses)},
              {"coker_witnesses", witnesses(c.coker_witnesses)}};
}

}  // namespace explab
