// explab: command-line front end for the finite model and the D-module engine.
//
// Exit codes: 0 success / all cases pass, 1 a suite case failed, 2 usage
// error, 3 internal error or missing certificate.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "explab/dmodule.hpp"
#include "explab/error.hpp"
#include "explab/exp_sums.hpp"
#include "explab/finite_model.hpp"
#include "explab/json_io.hpp"
#include "explab/parser.hpp"
#include "explab/suites.hpp"

namespace {

using explab::json;

constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct Options {
  bool json = false;
  std::string out;

  std::string suite;
  std::vector<int> primes;
  std::vector<int> ranks;
  std::uint64_t seed = 1;
  int bound = 4;
  unsigned threads = 0;

  int prime = 0;
  std::optional<long> kloosterman;
  std::optional<long> gauss;

  std::string input;
  int rank = 1;
  std::string lambda;
  std::string map;
  std::size_t target = 0;

  int n = 1;
  std::string gens;
  std::string vars;
  std::string point = "0";
};

void emit(const Options& opt, const std::string& text, json payload) {
  std::ostringstream out;
  if (opt.json) {
    json doc{{"schema", explab::kSchema}};
    for (auto& [k, v] : payload.items()) doc[k] = v;
    out << doc.dump(2) << '\n';
  } else {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
  if (opt.out.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(opt.out);
    if (!f) throw explab::UsageError("cannot write " + opt.out);
    f << out.str();
  }
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw explab::UsageError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw explab::UsageError(path + ": " + e.what());
  }
}

explab::ExpClass read_object(const std::string& path) {
  return explab::ExpClass(explab::exp_object_from_json(read_json_file(path)));
}

std::string object_text(const explab::ExpObject& h) {
  std::ostringstream out;
  for (std::size_t x = 0; x < h.base().size(); ++x) {
    out << x << ":";
    for (long t = 0; t < h.prime(); ++t) out << (t == 0 ? " " : " | ") << h.at(x, t).to_string();
    out << '\n';
  }
  return out.str();
}

explab::CyclicModule read_module(const Options& opt) {
  if (opt.gens.empty()) throw explab::UsageError("no operators given (use --op or --gens)");
  const auto elts = explab::parse_weyl_list(opt.gens, opt.n);
  if (elts.empty()) throw explab::UsageError("no operators given (use --op or --gens)");
  return explab::CyclicModule::from_generators(elts);
}

std::string basis_text(const explab::GroebnerBasis& g) {
  std::string s;
  for (const auto& b : g.basis()) s += b.to_string() + '\n';
  return s.empty() ? "0\n" : s;
}

std::string complex_text(const explab::TwoTermComplex& c) {
  std::ostringstream out;
  out << "ker " << c.dim_ker << " (degree " << c.degree_labels[0] << ")\n"
      << "coker " << c.dim_coker << " (degree " << c.degree_labels[1] << ")\n"
      << "certificate " << c.certificate.to_string() << '\n';
  return out.str();
}

std::vector<int> parse_index_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw explab::UsageError(std::string("malformed ") + what + ": " + text);
    }
  }
  return out;
}

int run_suite_command(const Options& opt) {
  explab::SuiteParams params;
  if (!opt.primes.empty()) params.primes = opt.primes;
  if (!opt.ranks.empty()) params.ranks = opt.ranks;
  params.seed = opt.seed;
  params.bound = opt.bound;
  params.threads = opt.threads;
  if (opt.suite.empty()) throw explab::UsageError("no suite given");
  const explab::SuiteReport report = explab::run_suite(opt.suite, params);
  json payload = explab::to_json(report);
  payload.erase("schema");
  emit(opt, explab::to_text(report), std::move(payload));
  return report.exit_code();
}

int run_sum(const Options& opt) {
  if (opt.prime == 0) throw explab::UsageError("--prime is required");
  if (!explab::is_prime(opt.prime) || opt.prime < 3) throw explab::UsageError("invalid prime: " + std::to_string(opt.prime));
  if (opt.kloosterman.has_value() == opt.gauss.has_value()) {
    throw explab::UsageError("give exactly one of --kloosterman, --gauss");
  }
  const explab::Cyclo value = opt.kloosterman ? explab::kloosterman_sum(opt.prime, *opt.kloosterman)
                                              : explab::gauss_sum(opt.prime, *opt.gauss);
  emit(opt, value.to_string(), json{{"value", explab::to_json(value)}});
  return 0;
}

int run_ft(const Options& opt) {
  const explab::ExpClass h = read_object(opt.input);
  const explab::ExpObject out = explab::canonical_rep(explab::ft(h, opt.rank).rep());
  emit(opt, object_text(out), json{{"object", explab::to_json(out)}});
  return 0;
}

int run_real(const Options& opt) {
  const explab::ExpClass h = read_object(opt.input);
  if (opt.lambda.empty()) throw explab::UsageError("--lambda is required");
  const long lambda = std::stol(opt.lambda);
  const auto values = explab::real_psi(h, lambda);
  std::string text;
  json list = json::array();
  for (std::size_t x = 0; x < values.size(); ++x) {
    text += std::to_string(x) + ": " + values[x].to_string() + '\n';
    list.push_back(explab::to_json(values[x]));
  }
  emit(opt, text, json{{"values", std::move(list)}});
  return 0;
}

int run_pushforward(const Options& opt) {
  const explab::ExpClass h = read_object(opt.input);
  std::vector<std::size_t> table;
  for (int v : parse_index_list(opt.map, "map")) {
    if (v < 0) throw explab::UsageError("map values must be nonnegative");
    table.push_back(static_cast<std::size_t>(v));
  }
  std::size_t target = opt.target;
  for (auto v : table) target = std::max(target, v + 1);
  if (table.size() != h.base().size()) throw explab::UsageError("map must list one target per base point");
  const explab::FiniteMap f(h.base(), explab::FiniteSet(target), std::move(table));
  const explab::ExpObject out = explab::canonical_rep(explab::pushforward(f, h).rep());
  emit(opt, object_text(out), json{{"object", explab::to_json(out)}});
  return 0;
}

explab::Rational parse_rational_flag(const std::string& s, const char* flag) {
  if (s.empty()) throw explab::UsageError(std::string(flag) + " is required");
  try {
    return explab::parse_rational(s);
  } catch (const explab::Error& e) {
    throw explab::UsageError(std::string(flag) + ": " + e.what());
  }
}

int run_dmod(const std::string& cmd, const Options& opt) {
  const auto policy = explab::TruncationPolicy::from_environment();
  if (cmd == "gb") {
    const auto m = read_module(opt);
    emit(opt, basis_text(m.ideal()), json{{"basis", explab::to_json(m.ideal())}});
  } else if (cmd == "adjoint") {
    std::string text;
    json list = json::array();
    for (const auto& p : explab::parse_weyl_list(opt.gens, opt.n)) {
      const auto a = explab::adjoint(p);
      text += a.to_string() + '\n';
      list.push_back(a.to_string());
    }
    emit(opt, text, json{{"adjoint", std::move(list)}});
  } else if (cmd == "fourier") {
    const auto m = read_module(opt);
    std::vector<int> vars;
    if (opt.vars.empty()) {
      for (int i = 0; i < opt.n; ++i) vars.push_back(i);
    } else {
      for (int v : parse_index_list(opt.vars, "variable list")) {
        if (v < 1 || v > opt.n) throw explab::UsageError("variable index out of range: " + std::to_string(v));
        vars.push_back(v - 1);
      }
    }
    const auto w = explab::fourier_module(m, vars);
    emit(opt, basis_text(w.ideal()), json{{"module", explab::to_json(w)}});
  } else if (cmd == "dual") {
    const auto d = explab::dual(read_module(opt));
    emit(opt, basis_text(d.ideal()), json{{"module", explab::to_json(d)}});
  } else if (cmd == "real") {
    const auto c = explab::real_at(read_module(opt), parse_rational_flag(opt.lambda, "--lambda"), policy);
    emit(opt, complex_text(c), json{{"complex", explab::to_json(c)}});
  } else if (cmd == "point") {
    const auto c = explab::point_complex(read_module(opt), parse_rational_flag(opt.point, "--point"), policy);
    emit(opt, complex_text(c), json{{"complex", explab::to_json(c)}});
  } else if (cmd == "pushforward") {
    const auto c = explab::derham_pushforward(read_module(opt), policy);
    emit(opt, complex_text(c), json{{"complex", explab::to_json(c)}});
  } else if (cmd == "inject") {
    const auto r = explab::injectivity_check(read_module(opt), parse_rational_flag(opt.lambda, "--lambda"), policy);
    emit(opt, std::string(r.injective ? "injective\n" : "not injective\n") + complex_text(r.complex),
         json{{"injective", r.injective}, {"complex", explab::to_json(r.complex)}});
  } else if (cmd == "restrict") {
    const auto r = explab::partial_restrict_last(read_module(opt), parse_rational_flag(opt.point, "--point"), policy);
    emit(opt, basis_text(r.ideal_out) + "certificate " + r.certificate.to_string() + '\n',
         json{{"basis", explab::to_json(r.ideal_out)}, {"cyclic", r.cyclic}, {"certificate", r.certificate.to_string()}});
  } else if (cmd == "rank") {
    const int rank = explab::holonomic_rank(read_module(opt));
    emit(opt, std::to_string(rank), json{{"rank", rank}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with exponential sums, trace functions and D-modules"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Print a JSON document instead of text");
  app.add_option("--out", opt.out, "Write output to this file");

  auto* suite = app.add_subcommand("suite", "Run a verification suite");
  suite->add_option("name,--suite", opt.suite, "finite-identities, weyl-core, dmod-core, realization or all");
  suite->add_option("--prime", opt.primes, "Primes (repeat or comma-separate)")->delimiter(',');
  suite->add_option("--rank", opt.ranks, "Bundle ranks (repeat or comma-separate)")->delimiter(',');
  suite->add_option("--seed", opt.seed, "Seed for randomized cases");
  suite->add_option("--bound", opt.bound, "Largest base size for exhaustive map checks");
  suite->add_option("--threads", opt.threads, "Worker threads (0: all cores)");

  auto* sum = app.add_subcommand("sum", "Exponential sums through the finite model");
  sum->add_option("--prime", opt.prime, "Odd prime")->required();
  sum->add_option("--kloosterman", opt.kloosterman, "sum over x != 0 of psi(x + a/x)");
  sum->add_option("--gauss", opt.gauss, "sum over x of psi(lambda x^2)");

  auto* ft = app.add_subcommand("ft", "Fourier transform of an object on F_p^r (JSON input)");
  ft->add_option("--input", opt.input, "Object JSON file")->required();
  ft->add_option("--rank", opt.rank, "Rank r of the bundle S x F_p^r");

  auto* real = app.add_subcommand("real", "Realization x -> sum_t h(x,t) psi(lambda t)");
  real->add_option("--input", opt.input, "Object JSON file")->required();
  real->add_option("--lambda", opt.lambda, "Nonzero residue")->required();

  auto* push = app.add_subcommand("pushforward", "Pushforward along a map of finite sets");
  push->add_option("--input", opt.input, "Object JSON file")->required();
  push->add_option("--map", opt.map, "Target index of each base point, e.g. \"0,0,1\"")->required();
  push->add_option("--target", opt.target, "Target size (default: largest index + 1)");

  auto* dmod = app.add_subcommand("dmod", "Cyclic D-module computations");
  dmod->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> dmod_cmds{
      {"gb", "Reduced Groebner basis"},
      {"adjoint", "Formal adjoint of each operator"},
      {"fourier", "Fourier transform of the module"},
      {"dual", "Dual of a principal module"},
      {"real", "Realization complex at lambda"},
      {"point", "Complex of multiplication by t - c"},
      {"pushforward", "De Rham complex (multiplication by d)"},
      {"inject", "Injectivity of t - lambda on the Fourier transform"},
      {"restrict", "Restriction of a two-variable module to x2 = c"},
      {"rank", "Holonomic rank of a principal module"}};
  std::string dmod_cmd;
  for (const auto& [name, help] : dmod_cmds) {
    auto* sub = dmod->add_subcommand(name, help);
    sub->add_option("--n", opt.n, "Number of variables");
    sub->add_option("--gens,--op", opt.gens, "Operators separated by ';'");
    if (name == "fourier") sub->add_option("--vars", opt.vars, "1-based variables, e.g. \"2\"");
    if (name == "real" || name == "inject") sub->add_option("--lambda", opt.lambda, "Nonzero rational")->required();
    if (name == "point" || name == "restrict") sub->add_option("--point", opt.point, "Rational point c");
    sub->callback([&dmod_cmd, name = name] { dmod_cmd = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (opt.n < 1 || opt.n > 8) throw explab::UsageError("--n must be between 1 and 8");
    if (suite->parsed()) return run_suite_command(opt);
    if (sum->parsed()) return run_sum(opt);
    if (ft->parsed()) return run_ft(opt);
    if (real->parsed()) return run_real(opt);
    if (push->parsed()) return run_pushforward(opt);
    if (dmod->parsed()) return run_dmod(dmod_cmd, opt);
  } catch (const explab::UsageError& e) {
    std::cerr << "explab: " << e.what() << '\n';
    return kUsage;
  } catch (const explab::ParseError& e) {
    std::cerr << "explab: " << e.what() << '\n';
    return kUsage;
  } catch (const explab::CertificateError& e) {
    std::cerr << "explab: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "explab: malformed number\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "explab: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
