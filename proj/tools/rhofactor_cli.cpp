#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rho/algorithms.hpp"
#include "rho/suites.hpp"
#include "rho/trace.hpp"

namespace {

using nlohmann::ordered_json;
using rho::Natural;

Natural parse_natural(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(std::string(what) + " must be a non-negative integer");
  return Natural(s);
}

rho::Integer parse_integer(const std::string& s, const char* what) {
  const std::string body = (!s.empty() && s[0] == '-') ? s.substr(1) : s;
  if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(std::string(what) + " must be an integer");
  return rho::Integer(s);
}

std::unique_ptr<rho::Backend> pick_backend(const std::string& name, std::uint64_t seed,
                                           unsigned attempts) {
  if (name == "circuit") return rho::make_circuit_backend({seed, attempts});
  return rho::make_exact_backend();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string anchor_for(const std::string& cmd, const rho::FactorResult& r) {
  if (!r.factor) return cmd + "/none";
  if (r.diagnostics.successful_divisor)
    return cmd + "/d=" + r.diagnostics.successful_divisor->get_str();
  if (r.diagnostics.note.find("alpha") != std::string::npos) return cmd + "/alpha";
  if (r.diagnostics.note.find("shares a factor") != std::string::npos) return cmd + "/gcd";
  return cmd + "/direct";
}

ordered_json diagnostics_json(const rho::RunDiagnostics& d, const std::string& anchor) {
  ordered_json j;
  if (d.order) j["order"] = d.order->get_str();
  if (d.period) j["period"] = d.period->get_str();
  auto strs = [](const std::vector<Natural>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
  };
  j["divisors_tried"] = strs(d.divisors_tried);
  j["divisors_untried"] = strs(d.divisors_untried);
  if (d.successful_divisor) j["successful_divisor"] = d.successful_divisor->get_str();
  if (d.witness_pair)
    j["witness_pair"] = {d.witness_pair->first.get_str(), d.witness_pair->second.get_str()};
  if (!d.note.empty()) j["note"] = d.note;
  j["anchor"] = anchor;
  return j;
}

int emit_procedure_result(const std::string& cmd, const ordered_json& inputs,
                          const rho::FactorResult& r, const std::string& output) {
  const std::string anchor = anchor_for(cmd, r);
  if (output == "json") {
    ordered_json doc;
    doc["command"] = cmd;
    doc["inputs"] = inputs;
    doc["result"]["found"] = r.factor.has_value();
    doc["result"]["factor"] = r.factor ? ordered_json(r.factor->get_str()) : ordered_json(nullptr);
    doc["diagnostics"] = diagnostics_json(r.diagnostics, anchor);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "factor: " << (r.factor ? r.factor->get_str() : "none") << "\n";
    const auto& d = r.diagnostics;
    if (d.order) std::cerr << "order r = " << *d.order << "\n";
    if (d.period) std::cerr << "period r_g = " << *d.period << "\n";
    if (!d.divisors_tried.empty()) {
      std::vector<std::string> t;
      for (const auto& x : d.divisors_tried) t.push_back(x.get_str());
      std::cerr << "divisors tried: " << join(t, ", ") << "\n";
    }
    if (d.successful_divisor) std::cerr << "successful divisor: " << *d.successful_divisor << "\n";
    if (!d.divisors_untried.empty()) {
      std::vector<std::string> t;
      for (const auto& x : d.divisors_untried) t.push_back(x.get_str());
      std::cerr << "divisors untried: " << join(t, ", ") << "\n";
    }
    if (d.witness_pair)
      std::cerr << "witness indices: (" << d.witness_pair->first << ", "
                << d.witness_pair->second << ")\n";
    if (!d.note.empty()) std::cerr << "note: " << d.note << "\n";
    std::cerr << "anchor: " << anchor << "\n";
  }
  return r.factor ? 0 : 2;
}

std::vector<std::string> factor_terms(const rho::Factorization& f) {
  std::vector<std::string> terms;
  for (const auto& pp : f.factors)
    terms.push_back(pp.exponent == 1 ? pp.base.get_str()
                                     : pp.base.get_str() + "^" + std::to_string(pp.exponent));
  for (const auto& c : f.unfactored) terms.push_back(c.get_str() + " (unfactored)");
  return terms;
}

int cmd_factor(const std::string& n_str, const std::string& b1_str, unsigned attempts,
               std::uint64_t seed, unsigned jobs, const std::string& backend_name,
               const std::string& output) {
  const Natural n = parse_natural(n_str, "N");
  rho::FactorConfig cfg;
  cfg.trial_bound = parse_natural(b1_str, "trial bound");
  cfg.attempts = attempts;
  cfg.seed = seed;
  cfg.jobs = jobs;
  auto backend = pick_backend(backend_name, seed, attempts);
  cfg.backend = backend.get();
  const rho::Factorization f = rho::factor(n, cfg);

  if (output == "json") {
    ordered_json doc;
    doc["command"] = "factor";
    doc["inputs"] = {{"n", n.get_str()},          {"trial_bound", cfg.trial_bound.get_str()},
                     {"attempts", cfg.attempts},  {"seed", cfg.seed},
                     {"jobs", cfg.jobs},          {"backend", backend_name}};
    doc["result"]["complete"] = f.complete();
    doc["result"]["factors"] = ordered_json::array();
    for (const auto& pp : f.factors)
      doc["result"]["factors"].push_back(
          {{"prime", pp.base.get_str()}, {"exponent", pp.exponent}});
    doc["result"]["unfactored"] = ordered_json::array();
    for (const auto& c : f.unfactored) doc["result"]["unfactored"].push_back(c.get_str());
    doc["attempts"] = ordered_json::array();
    for (const auto& a : f.attempts) {
      ordered_json rec = {{"strategy", a.strategy}, {"params", a.params}, {"found", a.found}};
      if (a.found) rec["factor"] = a.factor.get_str();
      doc["attempts"].push_back(rec);
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    const bool lone_prime =
        f.complete() && f.factors.size() == 1 && f.factors[0].exponent == 1;
    std::cout << n << " = " << join(factor_terms(f), " * ")
              << (lone_prime ? " (prime)" : "") << "\n";
    for (const auto& a : f.attempts)
      std::cerr << "attempt " << a.strategy << " " << a.params << ": "
                << (a.found ? "found " + a.factor.get_str() : "no factor") << "\n";
  }
  return f.complete() ? 0 : 2;
}

int cmd_rho(const std::string& n_str, const std::string& e_str, const std::string& c_str,
            const std::string& x0_str, const std::string& output) {
  const Natural n = parse_natural(n_str, "N");
  const rho::PolynomialStep step{parse_natural(e_str, "exponent"),
                                 parse_integer(c_str, "offset")};
  const Natural x0 = parse_natural(x0_str, "x0");
  const rho::FactorResult r = rho::pollard_rho_classical(n, step, x0);
  const ordered_json inputs = {
      {"n", n.get_str()}, {"e", step.exponent.get_str()}, {"c", step.offset.get_str()},
      {"x0", x0.get_str()}};
  return emit_procedure_result("rho", inputs, r, output);
}

int cmd_qrho(const std::string& n_str, const std::string& a_str, const std::string& b_str,
             const std::string& x0_str, const std::string& backend_name, std::uint64_t seed,
             unsigned attempts, const std::string& output) {
  const Natural n = parse_natural(n_str, "N");
  const rho::QuadraticFamily family(parse_natural(a_str, "a"), parse_natural(b_str, "b"), n);
  const Natural x0 = parse_natural(x0_str, "x0");
  auto backend = pick_backend(backend_name, seed, attempts);
  const rho::FactorResult r = rho::quantum_rho(n, family, x0, *backend);
  const ordered_json inputs = {{"n", n.get_str()},   {"a", family.a().get_str()},
                               {"b", family.b().get_str()}, {"x0", x0.get_str()},
                               {"backend", backend_name},   {"seed", seed}};
  return emit_procedure_result("qrho", inputs, r, output);
}

int cmd_order_proc(const std::string& cmd, const std::string& x_str, const std::string& n_str,
                   const std::string& backend_name, std::uint64_t seed, unsigned attempts,
                   const std::string& output) {
  const Natural x = parse_natural(x_str, "x");
  const Natural n = parse_natural(n_str, "N");
  auto backend = pick_backend(backend_name, seed, attempts);
  rho::FactorResult r;
  if (cmd == "shor")
    r = rho::shor(x, n, *backend);
  else if (cmd == "xshor")
    r = rho::extended_shor(x, n, *backend);
  else
    r = rho::quantum_rho_linear(x, n, *backend);
  const ordered_json inputs = {{cmd == "qrho-linear" ? "a" : "x", x.get_str()},
                               {"n", n.get_str()},
                               {"backend", backend_name},
                               {"seed", seed}};
  return emit_procedure_result(cmd, inputs, r, output);
}

int cmd_analyze(const std::string& n_str, const std::string& e_str, const std::string& c_str,
                const std::string& x0_str, const std::string& output) {
  const Natural n = parse_natural(n_str, "N");
  const rho::PolynomialStep step{parse_natural(e_str, "exponent"),
                                 parse_integer(c_str, "offset")};
  const Natural x0 = parse_natural(x0_str, "x0");

  const rho::Factorization f = rho::factor(n);
  if (!f.complete()) throw rho::CapacityError("could not fully factor the modulus");
  if (f.factors.size() < 2)
    throw std::invalid_argument("modulus is a prime or prime power; nothing to split");
  Natural a_part = 1;
  for (unsigned i = 0; i < f.factors.front().exponent; ++i) a_part *= f.factors.front().base;
  const Natural b_part = n / a_part;

  const rho::CycleShape shape = rho::cycle_shape_bruteforce(step, x0, n);
  const rho::CharacterizationReport rep = rho::verify_characterization(step, x0, a_part, b_part);
  const auto dps = rho::distinguishing_primes(rep.lambda_a, rep.lambda_b);

  if (output == "json") {
    ordered_json doc;
    doc["command"] = "analyze";
    doc["inputs"] = {{"n", n.get_str()}, {"e", step.exponent.get_str()},
                     {"c", step.offset.get_str()}, {"x0", x0.get_str()}};
    doc["split"] = {{"a_part", a_part.get_str()}, {"b_part", b_part.get_str()}};
    doc["shape"] = {{"mu", shape.mu.get_str()}, {"lambda", shape.lambda.get_str()}};
    doc["lambda_a"] = rep.lambda_a.get_str();
    doc["lambda_b"] = rep.lambda_b.get_str();
    doc["distinguishing_primes"] = ordered_json::array();
    for (const auto& dp : dps)
      doc["distinguishing_primes"].push_back(
          {{"prime", dp.prime.get_str()}, {"exp_a", dp.exp_a}, {"exp_b", dp.exp_b}});
    doc["m"] = rep.m ? ordered_json(rep.m->get_str()) : ordered_json(nullptr);
    if (rep.witness) {
      doc["witness"] = {{"i", rep.witness->i.get_str()},
                        {"j", rep.witness->j.get_str()},
                        {"gcd", rep.witness->gcd_value.get_str()}};
    } else {
      doc["witness"] = nullptr;
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "n = " << n << " = " << join(factor_terms(f), " * ") << "\n";
    std::cout << "split: A = " << a_part << ", B = " << b_part << "\n";
    std::cout << "mu = " << shape.mu << ", lambda = " << shape.lambda << "\n";
    std::cout << "lambda_A = " << rep.lambda_a << " (mod " << a_part << "), lambda_B = "
              << rep.lambda_b << " (mod " << b_part << ")\n";
    if (dps.empty()) {
      std::cout << "distinguishing primes: none\n";
    } else {
      std::vector<std::string> t;
      for (const auto& dp : dps)
        t.push_back(dp.prime.get_str() + " (" + std::to_string(dp.exp_a) + " vs " +
                    std::to_string(dp.exp_b) + ")");
      std::cout << "distinguishing primes: " << join(t, ", ") << "\n";
    }
    if (rep.m)
      std::cout << "m = " << *rep.m << "\n";
    else
      std::cout << "m: none (equal cycle lengths)\n";
    if (rep.witness)
      std::cout << "witness: indices (" << rep.witness->i << ", " << rep.witness->j
                << "), gcd = " << rep.witness->gcd_value << "\n";
    else
      std::cout << "no nontrivial witness on the cycle\n";
  }
  return rep.witness ? 0 : 2;
}

int cmd_simulate(const std::string& n_str, const std::string& a_str, const std::string& b_str,
                 const std::string& x0_str, std::uint64_t seed, unsigned attempts,
                 std::vector<std::string> stages, const std::string& output) {
  const Natural n = parse_natural(n_str, "N");
  const std::size_t ell = rho::bit_length(n * n);
  if (ell > rho::kMaxEllBits)
    throw rho::CapacityError("register width " + std::to_string(ell) +
                             " exceeds the simulator cap of " +
                             std::to_string(rho::kMaxEllBits) +
                             "; use qrho with --backend oracle instead");
  const rho::QuadraticFamily family(parse_natural(a_str, "a"), parse_natural(b_str, "b"), n);
  const Natural x0 = parse_natural(x0_str, "x0");

  const Natural alpha =
      (2 * family.a() * (x0 % n) + family.b()) % n * rho::mod_inv(2, n) % n;
  if (alpha == 0 || rho::gcd(alpha, n) != 1)
    throw std::invalid_argument("start is degenerate: alpha shares a factor with N");
  const Natural order = rho::multiplicative_order(alpha, n);
  const rho::ClosedFormContext ctx(family, x0, order);
  const Natural anchor = rho::closed_form_g(ctx, n);

  const std::uint64_t span = std::uint64_t{1} << ell;
  auto table = std::make_shared<std::vector<std::uint64_t>>();
  table->reserve(span);
  Natural v = anchor;
  for (std::uint64_t i = 0; i < span; ++i) {
    table->push_back(rho::to_u64(v));
    v = rho::iterate_quadratic(family, v);
  }
  const rho::CircuitConfig cfg = rho::make_circuit_config(
      n, [table](std::uint64_t i) { return (*table)[i]; }, seed);

  std::vector<std::pair<std::string, rho::RegisterState>> trace;
  trace.emplace_back("psi0", rho::prepare_initial(cfg));
  trace.emplace_back("psi1", rho::hadamard_layer(trace.back().second, cfg));
  trace.emplace_back("psi2",
                     rho::adder_shift(trace.back().second, cfg, rho::ShiftDirection::Forward));
  trace.emplace_back("psi3", rho::apply_u(trace.back().second, cfg));
  trace.emplace_back("psi4",
                     rho::adder_shift(trace.back().second, cfg, rho::ShiftDirection::Reverse));
  const rho::OutcomeDistribution dist = rho::inverse_qft_distribution(trace.back().second, cfg);
  trace.emplace_back("psi5", rho::apply_inverse_qft(trace.back().second, cfg));

  const std::uint64_t outcome = rho::sample(dist, seed);
  const auto extracted = rho::extract_period(outcome, cfg.ell_bits, n);

  std::optional<Natural> period;
  std::string period_note;
  try {
    period = rho::run_period_finding(cfg, attempts);
  } catch (const rho::BackendFailure& e) {
    period_note = e.what();
  }

  std::vector<Natural> tried;
  std::optional<Natural> successful;
  std::optional<std::pair<Natural, Natural>> witness;
  std::optional<Natural> found;
  if (period) {
    for (const Natural& d : rho::divisors(*period, n)) {
      tried.push_back(d);
      const Natural j = n + *period / d;
      const rho::Collision col = rho::classify(rho::closed_form_g(ctx, j), anchor, n);
      if (col.kind == rho::CollisionKind::Nontrivial) {
        successful = d;
        witness = {n, j};
        found = col.gcd_value;
        break;
      }
    }
  }

  if (output == "text") {
    std::cout << "n_bits = " << cfg.n_bits << ", ell_bits = " << cfg.ell_bits << "\n";
    std::cout << "order r = " << order << "\n";
    std::cout << "distribution: ";
    std::vector<std::string> peaks;
    for (std::uint64_t c = 0; c < dist.probabilities.size(); ++c)
      if (dist.probabilities[c] >= 1e-3)
        peaks.push_back("c=" + std::to_string(c) + " p=" +
                        std::to_string(rho::round12(dist.probabilities[c])));
    std::cout << join(peaks, ", ") << "\n";
    std::cout << "sampled outcome = " << outcome << "\n";
    std::cout << "extracted candidate = " << (extracted ? extracted->get_str() : "none") << "\n";
    std::cout << "verified period r_g = " << (period ? period->get_str() : "none") << "\n";
    if (!period_note.empty()) std::cout << "note: " << period_note << "\n";
    std::cout << "factor: " << (found ? found->get_str() : "none") << "\n";
    return found ? 0 : 2;
  }

  ordered_json doc;
  doc["command"] = "simulate";
  doc["inputs"] = {{"n", n.get_str()},   {"a", family.a().get_str()},
                   {"b", family.b().get_str()}, {"x0", x0.get_str()},
                   {"seed", seed},       {"attempts", attempts}};
  doc["circuit"] = {{"n_bits", cfg.n_bits}, {"ell_bits", cfg.ell_bits}};
  doc["order"] = order.get_str();
  doc["anchor_value"] = anchor.get_str();
  doc["stages"] = ordered_json::array();
  for (const auto& [label, state] : trace) {
    if (!stages.empty() && std::find(stages.begin(), stages.end(), label) == stages.end())
      continue;
    doc["stages"].push_back(rho::state_json(label, state));
  }
  doc["distribution"] = rho::distribution_json(dist);
  doc["sample"] = {{"outcome", outcome},
                   {"extracted", extracted ? ordered_json(extracted->get_str())
                                           : ordered_json(nullptr)}};
  doc["period"] = period ? ordered_json(period->get_str()) : ordered_json(nullptr);
  if (!period_note.empty()) doc["period_note"] = period_note;
  ordered_json search;
  search["divisors_tried"] = ordered_json::array();
  for (const auto& d : tried) search["divisors_tried"].push_back(d.get_str());
  search["successful_divisor"] =
      successful ? ordered_json(successful->get_str()) : ordered_json(nullptr);
  if (witness) search["witness_pair"] = {witness->first.get_str(), witness->second.get_str()};
  doc["divisor_search"] = search;
  doc["factor"] = found ? ordered_json(found->get_str()) : ordered_json(nullptr);
  std::cout << doc.dump(2) << "\n";
  return found ? 0 : 2;
}

int cmd_verify(const std::string& suite, unsigned bound, unsigned families, unsigned iters,
               unsigned max_offset, unsigned prime_bound, unsigned base_bound,
               std::uint64_t seed, const std::string& output) {
  rho::SuiteResult r;
  if (suite == "closed-form")
    r = rho::closed_form_suite(bound == 0 ? 10000 : bound, families, iters, seed);
  else if (suite == "floyd")
    r = rho::floyd_suite(bound == 0 ? 2000 : bound, max_offset == 0 ? 10 : max_offset);
  else if (suite == "lcm-lemma")
    r = rho::lcm_lemma_suite(prime_bound == 0 ? 100 : prime_bound,
                             max_offset == 0 ? 20 : max_offset);
  else if (suite == "theorem-main")
    r = rho::theorem_main_suite(prime_bound == 0 ? 50 : prime_bound,
                                max_offset == 0 ? 10 : max_offset);
  else if (suite == "reduction")
    r = rho::reduction_suite(bound == 0 ? 5000 : bound, base_bound == 0 ? 50 : base_bound);
  else
    throw std::invalid_argument("unknown suite: " + suite);

  if (output == "json") {
    ordered_json doc;
    doc["command"] = "verify";
    doc["suite"] = r.name;
    doc["instances"] = r.instances;
    doc["seconds"] = rho::round12(r.seconds);
    doc["passed"] = r.passed;
    if (!r.passed) doc["counterexample"] = r.counterexample;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "suite: " << r.name << "\n";
    std::cout << "instances: " << r.instances << "\n";
    std::cout << "seconds: " << r.seconds << "\n";
    std::cout << "result: " << (r.passed ? "pass" : "FAIL") << "\n";
    if (!r.passed) std::cout << "counterexample: " << r.counterexample << "\n";
  }
  return r.passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factoring toolkit built on iterated-map collisions, order finding, and an exact "
               "period-finding circuit simulator"};
  app.require_subcommand(1);

  std::string output = "text";
  std::string backend_name = "oracle";
  std::uint64_t seed = 1;
  unsigned attempts = 16;
  unsigned jobs = 1;

  // factor
  auto* s_factor = app.add_subcommand("factor", "full factorization pipeline");
  std::string f_n, f_b1 = "10000";
  s_factor->add_option("n", f_n, "integer to factor")->required();
  s_factor->add_option("--b1", f_b1, "trial-division bound");
  s_factor->add_option("--attempts", attempts, "attempt budget per strategy");
  s_factor->add_option("--seed", seed, "deterministic seed");
  s_factor->add_option("--jobs", jobs, "parallel attempt width");
  s_factor->add_option("--backend", backend_name, "order/period backend")
      ->check(CLI::IsMember({"oracle", "circuit"}));
  s_factor->add_option("--output", output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // rho
  auto* s_rho = app.add_subcommand("rho", "classical tortoise-and-hare factoring");
  std::string r_n, r_e = "2", r_c = "1", r_x0 = "2";
  s_rho->add_option("--n", r_n, "modulus")->required();
  s_rho->add_option("--e", r_e, "step exponent");
  s_rho->add_option("--c", r_c, "step offset");
  s_rho->add_option("--x0", r_x0, "start value");
  s_rho->add_option("--output", output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // qrho
  auto* s_qrho = app.add_subcommand("qrho", "collision factoring on the quadratic family");
  std::string q_n, q_a = "1", q_b = "2", q_x0 = "2";
  s_qrho->add_option("--n", q_n, "modulus")->required();
  s_qrho->add_option("--a", q_a, "family coefficient a");
  s_qrho->add_option("--b", q_b, "family coefficient b");
  s_qrho->add_option("--x0", q_x0, "start value");
  s_qrho->add_option("--backend", backend_name, "order/period backend")
      ->check(CLI::IsMember({"oracle", "circuit"}));
  s_qrho->add_option("--seed", seed, "backend seed");
  s_qrho->add_option("--attempts", attempts, "backend attempt budget");
  s_qrho->add_option("--output", output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // shor / xshor / qrho-linear
  std::string o_x, o_n;
  auto add_order_cmd = [&](const char* name, const char* desc, const char* xname) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option(xname, o_x, "base")->required();
    sub->add_option("--n", o_n, "modulus")->required();
    sub->add_option("--backend", backend_name, "order/period backend")
        ->check(CLI::IsMember({"oracle", "circuit"}));
    sub->add_option("--seed", seed, "backend seed");
    sub->add_option("--attempts", attempts, "backend attempt budget");
    sub->add_option("--output", output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    return sub;
  };
  auto* s_shor = add_order_cmd("shor", "order-finding factorization", "--x");
  auto* s_xshor = add_order_cmd("xshor", "order finding with the divisor scan", "--x");
  auto* s_qlin = add_order_cmd("qrho-linear", "collision factoring on the power map", "--a");

  // analyze
  auto* s_analyze = app.add_subcommand("analyze", "cycle-structure report for an iterated map");
  std::string an_n, an_e = "2", an_c = "1", an_x0 = "2";
  s_analyze->add_option("--n", an_n, "modulus")->required();
  s_analyze->add_option("--e", an_e, "step exponent");
  s_analyze->add_option("--c", an_c, "step offset");
  s_analyze->add_option("--x0", an_x0, "start value");
  s_analyze->add_option("--output", output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // simulate
  auto* s_sim = app.add_subcommand("simulate", "trace the period-finding circuit end to end");
  std::string si_n, si_a = "1", si_b = "2", si_x0 = "2";
  std::vector<std::string> si_stages;
  std::string sim_output = "json";
  s_sim->add_option("--n", si_n, "modulus")->required();
  s_sim->add_option("--a", si_a, "family coefficient a");
  s_sim->add_option("--b", si_b, "family coefficient b");
  s_sim->add_option("--x0", si_x0, "start value");
  s_sim->add_option("--seed", seed, "sampling seed");
  s_sim->add_option("--attempts", attempts, "period-finding attempt budget");
  s_sim->add_option("--stage", si_stages, "restrict the trace to these stages (psi0..psi5)");
  s_sim->add_option("--output", sim_output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // verify
  auto* s_verify = app.add_subcommand("verify", "run a property sweep");
  std::string v_suite;
  unsigned v_bound = 0, v_families = 200, v_iters = 200, v_max_offset = 0, v_prime_bound = 0,
           v_base_bound = 0;
  s_verify->add_option("--suite", v_suite, "which sweep to run")
      ->required()
      ->check(CLI::IsMember({"closed-form", "floyd", "lcm-lemma", "theorem-main", "reduction"}));
  s_verify->add_option("--bound", v_bound, "modulus bound");
  s_verify->add_option("--families", v_families, "family count (closed-form)");
  s_verify->add_option("--iters", v_iters, "iterates per family (closed-form)");
  s_verify->add_option("--max-offset", v_max_offset, "largest step offset");
  s_verify->add_option("--prime-bound", v_prime_bound, "prime bound (pair sweeps)");
  s_verify->add_option("--base-bound", v_base_bound, "base bound (reduction)");
  s_verify->add_option("--seed", seed, "seed (closed-form)");
  s_verify->add_option("--output", output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (s_factor->parsed())
      return cmd_factor(f_n, f_b1, attempts, seed, jobs, backend_name, output);
    if (s_rho->parsed()) return cmd_rho(r_n, r_e, r_c, r_x0, output);
    if (s_qrho->parsed())
      return cmd_qrho(q_n, q_a, q_b, q_x0, backend_name, seed, attempts, output);
    if (s_shor->parsed())
      return cmd_order_proc("shor", o_x, o_n, backend_name, seed, attempts, output);
    if (s_xshor->parsed())
      return cmd_order_proc("xshor", o_x, o_n, backend_name, seed, attempts, output);
    if (s_qlin->parsed())
      return cmd_order_proc("qrho-linear", o_x, o_n, backend_name, seed, attempts, output);
    if (s_analyze->parsed()) return cmd_analyze(an_n, an_e, an_c, an_x0, output);
    if (s_sim->parsed())
      return cmd_simulate(si_n, si_a, si_b, si_x0, seed, attempts, si_stages, sim_output);
    if (s_verify->parsed())
      return cmd_verify(v_suite, v_bound, v_families, v_iters, v_max_offset, v_prime_bound,
                        v_base_bound, seed, output);
  } catch (const rho::BackendFailure& e) {
    std::cerr << "backend: " << e.what() << "\n";
    return 2;
  } catch (const rho::CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
