#pragma once

// Command-line front end. run() is the whole program; main() only forwards
// argv and the standard streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "schubert/error.hpp"
#include "schubert/field.hpp"
#include "schubert/grassmann.hpp"
#include "schubert/group.hpp"
#include "schubert/io.hpp"
#include "schubert/variety.hpp"
#include "schubert/verify.hpp"

namespace schubert::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

inline constexpr const char* kBudgetEnv = "SCHUBERT_BUDGET";

namespace detail {

struct Options {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 1;
  std::size_t m = 0;
  std::size_t l = 0;
  std::string alpha;
  std::string flag;  // standard | random | <path>; empty: the verb default
  std::string variety;            // path, overrides --alpha/--flag
  std::uint64_t seed = 1;
  bool json_out = false;
  bool timing = false;
  unsigned threads = 0;
  std::optional<std::uint64_t> budget;
  std::string mutation = "none";
  bool paranoid = false;
  bool trust_kl = true;

  // verb specific
  std::vector<std::string> files;
  std::uint64_t limit = 0;
  bool count_only = false;
  bool oracle = false;
  bool fast = false;
  bool both = false;
  bool formula = false;
  bool witness = false;
  bool check = false;
  std::string theorem;
  std::uint64_t trials = 100;
  std::uint64_t flags_per_alpha = 50;
  std::size_t max_failures = 20;
  std::string mode = "auto";
  std::uint64_t samples = 1000;
  std::string oracle_mode = "sample";
  std::uint64_t oracle_sample = 200;
  bool include_dual = false;
  std::uint64_t group_budget = 10'000'000;
  bool dual = false;
  std::optional<std::uint32_t> frobenius;
  std::string stabilizing;
};

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

inline std::uint64_t budget_of(const Options& o) {
  if (o.budget) return *o.budget;
  if (const char* env = std::getenv(kBudgetEnv)) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput(std::string(kBudgetEnv) + " must be a non-negative integer");
  }
  return kDefaultEnumerationBudget;
}

inline unsigned threads_of(const Options& o) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return o.threads == 0 ? hw : std::min(o.threads, hw);
}

inline CriterionOptions criteria_of(const Options& o) {
  CriterionOptions c;
  c.mutation = mutation_from_string(o.mutation);
  c.paranoid = o.paranoid;
  c.trust_kl = o.trust_kl;
  c.budget = budget_of(o);
  return c;
}

inline Field field_of(const Options& o) {
  if (o.q != 0) {
    Field f = Field::of_order(o.q);
    if (o.p != 0 && (o.p != f.p() || o.e != f.e())) throw InvalidInput("--q disagrees with --p/--e");
    return f;
  }
  if (o.p != 0) return Field::make(o.p, o.e);
  throw InvalidInput("give the field with --q or --p [--e]");
}

inline std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw InvalidInput("bad index list '" + s + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline IndexSet alpha_of(const Options& o) {
  if (o.m == 0) throw InvalidInput("--m is required");
  if (o.alpha.empty()) throw InvalidInput("--alpha is required");
  IndexSet alpha(o.m, parse_list(o.alpha));
  if (o.l != 0 && o.l != alpha.size()) throw InvalidInput("--l disagrees with the size of --alpha");
  return alpha;
}

inline SchubertVariety variety_from_file(const std::string& path) { return io::variety_from_json(read_json(path)); }

inline SchubertVariety variety_of(const Options& o) {
  if (!o.variety.empty()) return variety_from_file(o.variety);
  const Field f = field_of(o);
  const IndexSet alpha = alpha_of(o);
  if (o.flag.empty() || o.flag == "standard") return SchubertVariety(f, standard_flag(alpha, f));
  if (o.flag == "random") return SchubertVariety(f, random_flag(alpha, f, o.seed));
  SchubertVariety v = variety_from_file(o.flag);
  if (v.alpha() != alpha || !(v.field() == f)) throw InvalidInput("flag file disagrees with --q/--alpha");
  return v;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

inline std::string rows_text(const Subspace& s) { return io::subspace_to_json(s).dump(); }

inline void warn_chow(std::ostream& err, std::size_t l, std::size_t m) {
  if (auto w = chow_warning(l, m)) err << "warning: " << *w << "\n";
}

// ---- verbs

inline int cmd_field(const Options& o, std::ostream& out) {
  const Field f = field_of(o);
  if (o.json_out) {
    json j = io::field_to_json(f);
    j["q"] = f.q();
    emit(out, j);
  } else {
    std::vector<std::size_t> mod(f.modulus().begin(), f.modulus().end());
    out << "q=" << f.q() << " p=" << f.p() << " e=" << f.e() << " modulus=" << join(mod) << "\n";
  }
  return kExitOk;
}

inline int cmd_count(const Options& o, std::ostream& out) {
  const std::uint64_t budget = budget_of(o);
  json j;
  if (o.alpha.empty() && o.variety.empty()) {
    const Field f = field_of(o);
    if (o.m == 0 || o.l == 0) throw InvalidInput("count needs --m and --l (or --alpha)");
    if (o.l > o.m) throw InvalidInput("--l exceeds --m");
    j = {{"object", "grassmannian"}, {"q", f.q()}, {"m", o.m}, {"l", o.l}, {"count", gaussian_binomial(o.m, o.l, f.q())}};
  } else {
    const SchubertVariety omega = variety_of(o);
    const std::uint64_t n = o.formula ? evaluate_polynomial(cell_count_polynomial(omega.alpha()), omega.field().q())
                                      : enumerate_points(omega, budget).size();
    j = {{"object", "schubert"},
         {"q", omega.field().q()},
         {"m", omega.m()},
         {"l", omega.l()},
         {"alpha", omega.alpha().elements()},
         {"method", o.formula ? "cell-polynomial" : "enumeration"},
         {"count", n}};
  }
  if (o.json_out)
    emit(out, j);
  else
    out << j["count"].get<std::uint64_t>() << "\n";
  return kExitOk;
}

inline int cmd_points(const Options& o, std::ostream& out) {
  const SchubertVariety omega = variety_of(o);
  const std::uint64_t budget = budget_of(o);
  std::vector<Subspace> pts;
  std::uint64_t count = 0;
  bool truncated = false;
  check_budget(gaussian_binomial(omega.m(), omega.l(), omega.field().q()), budget, "Grassmannian");
  for_each_subspace(omega.m(), omega.l(), omega.field(), [&](const Subspace& w) {
    if (!membership(w, omega)) return true;
    if (o.limit != 0 && count == o.limit) {
      truncated = true;
      return false;
    }
    ++count;
    if (!o.count_only) pts.push_back(w);
    return true;
  });
  if (o.json_out) {
    json j = {{"variety", io::variety_to_json(omega)}, {"count", count}, {"truncated", truncated}};
    if (!o.count_only) {
      j["points"] = json::array();
      for (const auto& w : pts) j["points"].push_back(io::subspace_to_json(w));
    }
    emit(out, j);
  } else {
    for (const auto& w : pts) out << rows_text(w) << "\n";
    if (o.count_only || truncated) out << count << (truncated ? " (truncated)" : "") << "\n";
  }
  return kExitOk;
}

inline int cmd_alpha_nc(const Options& o, std::ostream& out) {
  const IndexSet alpha = alpha_of(o);
  const IndexSet nc = alpha_nc(alpha);
  if (o.json_out)
    emit(out, {{"m", o.m}, {"alpha", alpha.elements()}, {"alpha_nc", nc.elements()}});
  else
    out << join(nc.elements()) << "\n";
  return kExitOk;
}

inline int cmd_dual_alpha(const Options& o, std::ostream& out) {
  const IndexSet alpha = alpha_of(o);
  const IndexSet beta = dual_index_set(alpha, mutation_from_string(o.mutation));
  if (o.json_out)
    emit(out, {{"m", o.m}, {"alpha", alpha.elements()}, {"beta", beta.elements()}});
  else
    out << join(beta.elements()) << "\n";
  return kExitOk;
}

inline int cmd_eq(const Options& o, std::ostream& out) {
  if (o.files.size() != 2) throw InvalidInput("eq needs two variety or flag files");
  const SchubertVariety a = variety_from_file(o.files[0]);
  const SchubertVariety b = variety_from_file(o.files[1]);
  require_same_grassmannian(a, b);
  const CriterionOptions c = criteria_of(o);
  json j = json::object();
  std::optional<bool> fast, oracle;
  if (!o.oracle || o.both) fast = equal_fast(a, b, c);
  if (o.oracle || o.both) oracle = equal_oracle(a, b, c.budget);
  if (fast) j["fast"] = *fast;
  if (oracle) j["oracle"] = *oracle;
  const bool equal = oracle ? *oracle : *fast;
  j["equal"] = equal;
  if (o.witness && !equal) {
    if (auto w = find_witness(a, b, o.seed, 64, c.budget)) {
      j["witness"] = io::subspace_to_json(w->point);
      j["witness_constructed"] = w->constructed;
    } else if (auto w2 = find_witness(b, a, o.seed, 64, c.budget)) {
      j["witness"] = io::subspace_to_json(w2->point);
      j["witness_constructed"] = w2->constructed;
      j["witness_in"] = "b";
    }
  }
  const bool disagree = fast && oracle && *fast != *oracle;
  if (o.json_out) {
    emit(out, j);
  } else {
    out << (equal ? "equal" : "not equal") << "\n";
    if (disagree) out << "fast criterion and oracle disagree\n";
    if (j.contains("witness")) out << "witness " << j["witness"].dump() << "\n";
  }
  return disagree ? kExitFailure : kExitOk;
}

inline SemilinearMap map_from_file(const std::string& path, const Field& f) {
  const json j = read_json(path);
  if (j.contains("q") && !(Field::of_order(j.at("q").get<std::uint64_t>()) == f))
    throw InvalidInput("map and target live over different fields");
  return io::map_from_json(j, f);
}

inline int cmd_act(const Options& o, std::ostream& out) {
  if (o.files.size() != 2) throw InvalidInput("act needs a map file and a subspace, flag or variety file");
  const json target = read_json(o.files[1]);
  json result;
  if (target.is_array()) {
    const Field f = field_of(o);
    const SemilinearMap tau = map_from_file(o.files[0], f);
    result = io::subspace_to_json(apply_subspace(tau, io::subspace_from_json(target, tau.m(), f), f));
  } else if (target.contains("flag")) {
    const SchubertVariety omega = io::variety_from_json(target);
    const SemilinearMap tau = map_from_file(o.files[0], omega.field());
    const Flag image = apply_flag(tau, omega.flag(), omega.field());
    result = io::flag_to_json(image, omega.field());
  } else {
    const Field f = io::field_from_json(target);
    const Flag flag = io::flag_from_json(target, f);
    const SemilinearMap tau = map_from_file(o.files[0], f);
    result = io::flag_to_json(apply_flag(tau, flag, f), f);
  }
  if (o.json_out)
    emit(out, result);
  else
    out << result.dump() << "\n";
  return kExitOk;
}

inline int cmd_image(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.files.size() != 2) throw InvalidInput("image needs a map file and a variety file");
  const SchubertVariety omega = variety_from_file(o.files[1]);
  const SemilinearMap tau = map_from_file(o.files[0], omega.field());
  warn_chow(err, omega.l(), omega.m());
  const CriterionOptions c = criteria_of(o);
  const SchubertVariety image = image_of_schubert(tau, omega, c);
  json j = io::variety_to_json(image);
  bool ok = true;
  if (o.check) {
    ok = image_points(tau, omega, c.budget) == point_set(image, c.budget);
    j = {{"image", j}, {"pointwise_match", ok}};
  }
  if (o.json_out) {
    emit(out, j);
  } else {
    out << "alpha " << join(image.alpha().elements()) << "\n";
    for (const auto& s : image.flag().subspaces()) out << rows_text(s) << "\n";
    if (o.check) out << (ok ? "pointwise image matches" : "pointwise image differs") << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_aut_check(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.files.size() != 2) throw InvalidInput("aut-check needs a map file and a variety file");
  const SchubertVariety omega = variety_from_file(o.files[1]);
  const SemilinearMap tau = map_from_file(o.files[0], omega.field());
  warn_chow(err, omega.l(), omega.m());
  const CriterionOptions c = criteria_of(o);
  const bool run_fast = o.both || o.fast || !o.oracle;
  const bool run_oracle = o.both || o.oracle;
  json j = json::object();
  std::optional<bool> fast, oracle;
  if (run_fast) j["fast"] = *(fast = is_automorphism_fast(tau, omega, c));
  if (run_oracle) j["oracle"] = *(oracle = is_automorphism_oracle(tau, omega, c.budget));
  const bool disagree = fast && oracle && *fast != *oracle;
  if (fast && oracle) j["agree"] = !disagree;
  j["automorphism"] = oracle ? *oracle : *fast;
  if (o.json_out) {
    emit(out, j);
  } else {
    if (fast) out << "fast: " << (*fast ? "automorphism" : "not an automorphism") << "\n";
    if (oracle) out << "oracle: " << (*oracle ? "automorphism" : "not an automorphism") << "\n";
    if (disagree) out << "fast criterion and oracle disagree\n";
  }
  return disagree ? kExitFailure : kExitOk;
}

inline void print_report(const verify::Report& r, const Options& o, std::ostream& out) {
  if (o.json_out) {
    emit(out, r.to_json(o.timing));
    return;
  }
  out << r.theorem << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.cases_tested << " cases, " << r.failure_count
      << " failures";
  if (o.timing) out << ", " << r.elapsed.count() << " ms";
  out << ")\n";
  for (const auto& [k, v] : r.stats) out << "  " << k << " " << v << "\n";
  for (const auto& f : r.failures) out << "  failure " << f.dump() << "\n";
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  verify::Config cfg;
  cfg.q = o.q != 0 ? o.q : field_of(o).q();
  cfg.m = o.m;
  cfg.l = o.l;
  if (cfg.m == 0 || cfg.l == 0) throw InvalidInput("verify needs --m and --l");
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.flags_per_alpha = o.flags_per_alpha;
  cfg.criteria = criteria_of(o);
  cfg.threads = threads_of(o);
  cfg.max_failures = o.max_failures;
  warn_chow(err, cfg.l, cfg.m);

  std::vector<std::string> ids;
  if (o.theorem == "all") {
    for (const auto& id : verify::theorem_ids())
      if (id != "dual-action" || cfg.m == 2 * cfg.l) ids.push_back(id);
  } else {
    ids.push_back(o.theorem);
  }
  bool pass = true;
  if (ids.size() == 1) {
    const auto r = verify::run_theorem(ids[0], cfg);
    print_report(r, o, out);
    return r.pass() ? kExitOk : kExitFailure;
  }
  json all = json::array();
  for (const auto& id : ids) {
    const auto r = verify::run_theorem(id, cfg);
    pass = pass && r.pass();
    if (o.json_out)
      all.push_back(r.to_json(o.timing));
    else
      print_report(r, o, out);
  }
  if (o.json_out) emit(out, {{"reports", all}, {"verdict", pass ? "pass" : "fail"}});
  return pass ? kExitOk : kExitFailure;
}

inline int cmd_census(const Options& o, std::ostream& out, std::ostream& err) {
  const SchubertVariety omega = variety_of(o);
  warn_chow(err, omega.l(), omega.m());
  verify::CensusConfig cfg;
  cfg.budget = o.group_budget;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.include_dual = o.include_dual;
  cfg.oracle_sample = o.oracle_sample;
  cfg.criteria = criteria_of(o);
  cfg.threads = threads_of(o);
  cfg.max_failures = o.max_failures;
  if (o.oracle_mode == "all")
    cfg.oracle = verify::OracleCheck::all;
  else if (o.oracle_mode == "sample")
    cfg.oracle = verify::OracleCheck::sample;
  else if (o.oracle_mode == "none")
    cfg.oracle = verify::OracleCheck::none;
  else
    throw InvalidInput("--oracle-check must be all, sample or none");

  const auto gl = general_linear_order(omega.m(), omega.field().q());
  const std::uint64_t per = omega.field().e() * (o.include_dual && omega.m() == 2 * omega.l() ? 2 : 1);
  const bool fits = gl && *gl <= cfg.budget / per;
  if (o.mode == "exhaustive")
    cfg.mode = verify::CensusMode::exhaustive;
  else if (o.mode == "sampled")
    cfg.mode = verify::CensusMode::sampled;
  else if (o.mode == "auto")
    cfg.mode = fits ? verify::CensusMode::exhaustive : verify::CensusMode::sampled;
  else
    throw InvalidInput("--mode must be exhaustive, sampled or auto");

  const auto r = verify::stabilizer_census(omega, cfg);
  print_report(r, o, out);
  if (!o.json_out) out << "  fast_fraction " << r.summary["fast_fraction"].get<double>() << "\n";
  return r.pass() ? kExitOk : kExitFailure;
}

inline int cmd_gen_flag(const Options& o, std::ostream& out) {
  const Field f = field_of(o);
  const IndexSet alpha = alpha_of(o);
  if (!o.flag.empty() && o.flag != "standard" && o.flag != "random") throw InvalidInput("gen-flag takes --flag standard or random");
  const Flag flag = o.flag == "standard" ? standard_flag(alpha, f) : random_flag(alpha, f, o.seed);
  emit(out, io::flag_to_json(flag, f));
  return kExitOk;
}

inline int cmd_gen_map(const Options& o, std::ostream& out) {
  if (!o.stabilizing.empty()) {
    const SchubertVariety omega = variety_from_file(o.stabilizing);
    const Field& f = omega.field();
    Rng rng(o.seed);
    std::vector<Subspace> chain;
    for (auto d : omega.nc().elements()) chain.push_back(omega.member(d));
    const SemilinearMap tau = o.dual ? random_dual_automorphism(omega, rng)
                                     : SemilinearMap::matrix_map(random_stabilizing_matrix(chain, omega.m(), f, rng), f);
    emit(out, io::map_to_json(tau, f));
    return kExitOk;
  }
  const Field f = field_of(o);
  if (o.m == 0) throw InvalidInput("--m is required");
  const SemilinearMap t = random_semilinear(o.m, f, o.seed, false);
  const std::uint32_t k = o.frobenius ? *o.frobenius : t.frobenius_power();
  emit(out, io::map_to_json(SemilinearMap(t.matrix(), k, o.dual, f), f));
  return kExitOk;
}

inline int cmd_replay(const Options& o, std::ostream& out) {
  if (o.files.size() != 1) throw InvalidInput("replay needs one failure descriptor file");
  const json d = read_json(o.files[0]);
  const auto r = verify::replay(d);
  if (o.json_out)
    emit(out, {{"kind", d.at("kind")}, {"reproduced", r.reproduced}, {"detail", r.detail}});
  else
    out << (r.reproduced ? "reproduced: " : "not reproduced: ") << r.detail << "\n";
  return r.reproduced ? kExitFailure : kExitOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using detail::Options;
  Options o;
  CLI::App app{"Schubert varieties over finite fields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto field_opts = [&](CLI::App* s) {
    s->add_option("--q", o.q, "field order");
    s->add_option("--p", o.p, "field characteristic");
    s->add_option("--e", o.e, "extension degree");
  };
  auto common = [&](CLI::App* s) {
    s->add_flag("--json", o.json_out, "JSON output");
    s->add_option("--budget", o.budget, std::string("enumeration budget (default from ") + cli::kBudgetEnv + " or 10^6)");
    s->add_option("--mutation", o.mutation, "inject a criterion bug (harness self-test)");
  };
  auto variety_opts = [&](CLI::App* s) {
    field_opts(s);
    s->add_option("--m", o.m, "ambient dimension");
    s->add_option("--l", o.l, "subspace dimension");
    s->add_option("--alpha", o.alpha, "index set, comma separated, 1-based");
    s->add_option("--flag", o.flag, "standard, random or a flag/variety JSON file");
    s->add_option("--variety", o.variety, "variety or flag JSON file");
    s->add_option("--seed", o.seed, "seed for --flag random");
  };

  auto* field = app.add_subcommand("field", "field parameters and modulus");
  field_opts(field);
  field->add_flag("--json", o.json_out);

  auto* count = app.add_subcommand("count", "Grassmannian or Schubert variety cardinality");
  variety_opts(count);
  common(count);
  count->add_flag("--formula", o.formula, "evaluate the cell polynomial instead of enumerating");

  auto* points = app.add_subcommand("points", "enumerate the points of a Schubert variety");
  variety_opts(points);
  common(points);
  points->add_option("--limit", o.limit, "stop after this many points (0: no limit)");
  points->add_flag("--count-only", o.count_only, "print only the number of points");

  auto* anc = app.add_subcommand("alpha-nc", "nonconsecutive part of alpha");
  anc->add_option("--m", o.m)->required();
  anc->add_option("--alpha", o.alpha)->required();
  anc->add_flag("--json", o.json_out);

  auto* dual = app.add_subcommand("dual-alpha", "index set of the contravariant image");
  dual->add_option("--m", o.m)->required();
  dual->add_option("--alpha", o.alpha)->required();
  dual->add_flag("--json", o.json_out);
  dual->add_option("--mutation", o.mutation);

  auto* eq = app.add_subcommand("eq", "equality of two Schubert varieties");
  eq->add_option("files", o.files, "two variety or flag files")->expected(2);
  common(eq);
  eq->add_flag("--oracle", o.oracle, "compare point sets instead of the criterion");
  eq->add_flag("--both", o.both, "run both and fail on disagreement");
  eq->add_flag("--witness", o.witness, "report a point in one variety but not the other");
  eq->add_option("--seed", o.seed);
  eq->add_flag("!--no-trust-kl", o.trust_kl, "compare point sets when index sets differ");

  auto* act = app.add_subcommand("act", "apply a semilinear map to a subspace or flag");
  act->add_option("files", o.files, "map file, then subspace/flag/variety file")->expected(2);
  field_opts(act);
  act->add_flag("--json", o.json_out);

  auto* image = app.add_subcommand("image", "descriptor of the image of a Schubert variety");
  image->add_option("files", o.files, "map file, variety file")->expected(2);
  common(image);
  image->add_flag("--check", o.check, "compare with the pointwise image");

  auto* aut = app.add_subcommand("aut-check", "does a map send a Schubert variety onto itself");
  aut->add_option("files", o.files, "map file, variety file")->expected(2);
  common(aut);
  auto* fast_flag = aut->add_flag("--fast", o.fast, "criterion only (default)");
  auto* oracle_flag = aut->add_flag("--oracle", o.oracle, "point-set oracle only");
  auto* both_flag = aut->add_flag("--both", o.both, "both; exit 1 on disagreement");
  fast_flag->excludes(oracle_flag)->excludes(both_flag);
  oracle_flag->excludes(both_flag);
  aut->add_flag("--paranoid", o.paranoid, "answer contravariant queries with the oracle");

  auto* ver = app.add_subcommand("verify", "run a theorem verification campaign");
  ver->add_option("theorem", o.theorem, "redundancy | equality | dual-action | variant | main | kl | all")->required();
  field_opts(ver);
  common(ver);
  ver->add_option("--m", o.m)->required();
  ver->add_option("--l", o.l)->required();
  ver->add_option("--trials", o.trials);
  ver->add_option("--seed", o.seed);
  ver->add_option("--flags-per-alpha", o.flags_per_alpha);
  ver->add_option("--max-failures", o.max_failures, "failure descriptors kept in the report");
  ver->add_option("--threads", o.threads, "worker cap (0: all cores)");
  ver->add_flag("--timing", o.timing, "include elapsed time (breaks byte-identical output)");

  auto* census = app.add_subcommand("census", "count stabilizer elements in the implemented group");
  variety_opts(census);
  common(census);
  census->add_option("--mode", o.mode, "auto | exhaustive | sampled");
  census->add_option("--group-budget", o.group_budget, "largest group enumerated exhaustively");
  census->add_option("--samples", o.samples);
  census->add_option("--oracle-check", o.oracle_mode, "all | sample | none");
  census->add_option("--oracle-sample", o.oracle_sample);
  census->add_flag("--include-dual", o.include_dual, "also count contravariant elements (m = 2l)");
  census->add_option("--threads", o.threads);
  census->add_option("--max-failures", o.max_failures);
  census->add_flag("--timing", o.timing);

  auto* gflag = app.add_subcommand("gen-flag", "seeded flag generator");
  variety_opts(gflag);

  auto* gmap = app.add_subcommand("gen-map", "seeded semilinear map generator");
  field_opts(gmap);
  gmap->add_option("--m", o.m);
  gmap->add_option("--seed", o.seed);
  gmap->add_flag("--dual", o.dual, "contravariant map");
  gmap->add_option("--frobenius", o.frobenius, "Frobenius power (default random)");
  gmap->add_option("--stabilizing", o.stabilizing, "variety file: generate an automorphism of it");

  auto* replay = app.add_subcommand("replay", "re-run a failure descriptor from a report");
  replay->add_option("files", o.files, "descriptor file")->expected(1);
  replay->add_flag("--json", o.json_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (field->parsed()) return detail::cmd_field(o, out);
    if (count->parsed()) return detail::cmd_count(o, out);
    if (points->parsed()) return detail::cmd_points(o, out);
    if (anc->parsed()) return detail::cmd_alpha_nc(o, out);
    if (dual->parsed()) return detail::cmd_dual_alpha(o, out);
    if (eq->parsed()) return detail::cmd_eq(o, out);
    if (act->parsed()) return detail::cmd_act(o, out);
    if (image->parsed()) return detail::cmd_image(o, out, err);
    if (aut->parsed()) return detail::cmd_aut_check(o, out, err);
    if (ver->parsed()) return detail::cmd_verify(o, out, err);
    if (census->parsed()) return detail::cmd_census(o, out, err);
    if (gflag->parsed()) return detail::cmd_gen_flag(o, out);
    if (gmap->parsed()) return detail::cmd_gen_map(o, out);
    if (replay->parsed()) return detail::cmd_replay(o, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace schubert::cli
