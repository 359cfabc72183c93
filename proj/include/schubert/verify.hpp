#pragma once

// Verification campaigns. Each one pairs a fast criterion with a brute-force
// point-set oracle over seeded (or exhaustive) inputs and reports every
// disagreement as a replayable JSON descriptor.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "schubert/error.hpp"
#include "schubert/field.hpp"
#include "schubert/grassmann.hpp"
#include "schubert/group.hpp"
#include "schubert/io.hpp"
#include "schubert/linalg.hpp"
#include "schubert/random.hpp"
#include "schubert/variety.hpp"

namespace schubert::verify {

using json = nlohmann::json;

struct Config {
  std::uint64_t q = 2;
  std::size_t m = 4;
  std::size_t l = 2;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::uint64_t flags_per_alpha = 50;
  CriterionOptions criteria;
  unsigned threads = 1;
  std::size_t max_failures = 20;  // descriptors kept; failure_count is exact
};

struct Report {
  std::string theorem;
  json parameters = json::object();
  std::uint64_t cases_tested = 0;
  std::uint64_t failure_count = 0;
  std::vector<json> failures;
  std::map<std::string, std::uint64_t> stats;
  json summary = json::object();
  std::chrono::milliseconds elapsed{0};

  bool pass() const { return failure_count == 0; }

  // Timing is opt-in so that reports are byte-identical across runs.
  json to_json(bool with_timing = false) const {
    json j = {{"theorem", theorem},
              {"parameters", parameters},
              {"cases_tested", cases_tested},
              {"failure_count", failure_count},
              {"failures", failures},
              {"stats", stats},
              {"verdict", pass() ? "pass" : "fail"}};
    if (!summary.empty()) j["summary"] = summary;
    if (with_timing) j["elapsed_ms"] = elapsed.count();
    return j;
  }
};

namespace detail {

struct Outcome {
  std::uint64_t cases = 0;
  std::vector<json> failures;
  std::map<std::string, std::uint64_t> stats;

  void fail(json descriptor) { failures.push_back(std::move(descriptor)); }
};

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned count = std::min<std::size_t>(threads, n);
  for (unsigned t = 0; t < count; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

inline void merge_into(Report& report, std::vector<Outcome>& outcomes, std::size_t max_failures) {
  std::vector<std::pair<std::string, json>> all;
  for (auto& o : outcomes) {
    report.cases_tested += o.cases;
    for (auto& [k, v] : o.stats) report.stats[k] += v;
    for (auto& f : o.failures) all.emplace_back(f.dump(), std::move(f));
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  report.failure_count = all.size();
  for (std::size_t i = 0; i < all.size() && i < max_failures; ++i) report.failures.push_back(std::move(all[i].second));
}

template <class Trial>
Report run_campaign(std::string theorem, json parameters, std::size_t n, const Config& cfg, Trial&& trial) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.theorem = std::move(theorem);
  report.parameters = std::move(parameters);
  std::vector<Outcome> outcomes(n);
  parallel_for(n, cfg.threads, [&](std::size_t i) { trial(i, outcomes[i]); });
  merge_into(report, outcomes, cfg.max_failures);
  report.elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

inline json base_parameters(const Config& cfg, const std::vector<IndexSet>& alphas, const std::string& mode) {
  json a = json::array();
  for (const auto& x : alphas) a.push_back(x.elements());
  return {{"q", cfg.q},         {"m", cfg.m},       {"l", cfg.l},
          {"alphas", a},        {"mode", mode},     {"seed", cfg.seed},
          {"trials", cfg.trials}, {"mutation", to_string(cfg.criteria.mutation)}};
}

inline std::vector<IndexSet> alphas_for(const Config& cfg) {
  if (cfg.l > cfg.m) throw InvalidInput("l must not exceed m");
  return all_index_sets(cfg.m, cfg.l);
}

inline std::vector<Subspace> members_of(const SchubertVariety& omega, const IndexSet& dims, std::optional<std::size_t> skip = {}) {
  std::vector<Subspace> out;
  for (auto d : dims.elements())
    if (d != skip) out.push_back(omega.member(d));
  return out;
}

inline std::vector<std::size_t> proper_nc(const SchubertVariety& omega) {
  std::vector<std::size_t> out;
  for (auto d : omega.nc().elements())
    if (d < omega.m()) out.push_back(d);
  return out;
}

enum class MapKind {
  stabilize_flag,  // fixes every member: automorphism
  stabilize_nc,    // fixes the nonconsecutive members only: automorphism
  move_one_nc,     // fixes all nonconsecutive members but one, which moves
  random_covariant,
  random_dual,
  dual_automorphism,
};

inline std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::stabilize_flag: return "stabilize-flag";
    case MapKind::stabilize_nc: return "stabilize-nc";
    case MapKind::move_one_nc: return "move-one-nc";
    case MapKind::random_covariant: return "random-covariant";
    case MapKind::random_dual: return "random-dual";
    case MapKind::dual_automorphism: return "dual-automorphism";
  }
  return "";
}

struct GeneratedMap {
  SemilinearMap tau;
  MapKind kind;
  std::optional<bool> expected;
};

// Matrix fixing every member of `chain` but moving `target`; nullopt if no
// attempt moved it.
inline std::optional<Matrix> moving_matrix(const std::vector<Subspace>& chain, const Subspace& target,
                                           std::size_t m, const Field& f, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix g = random_stabilizing_matrix(chain, m, f, rng);
    if (apply_matrix(target, g, f) != target) return g;
  }
  return std::nullopt;
}

inline GeneratedMap generate_map(const SchubertVariety& omega, MapKind kind, std::uint64_t seed) {
  const Field& f = omega.field();
  const std::size_t m = omega.m();
  Rng rng(seed);
  switch (kind) {
    case MapKind::stabilize_flag:
      return {SemilinearMap::matrix_map(random_stabilizing_matrix(omega.flag().subspaces(), m, f, rng), f), kind, true};
    case MapKind::stabilize_nc:
      return {SemilinearMap::matrix_map(random_stabilizing_matrix(members_of(omega, omega.nc()), m, f, rng), f), kind,
              true};
    case MapKind::move_one_nc: {
      const auto candidates = proper_nc(omega);
      if (!candidates.empty()) {
        const std::size_t d = candidates[rng.below(candidates.size())];
        if (auto g = moving_matrix(members_of(omega, omega.nc(), d), omega.member(d), m, f, rng))
          return {SemilinearMap::matrix_map(std::move(*g), f), kind, false};
      }
      return generate_map(omega, MapKind::random_covariant, seed);
    }
    case MapKind::random_covariant:
      return {random_semilinear(m, f, rng.below(~std::uint64_t{0}), false), kind, std::nullopt};
    case MapKind::random_dual: {
      SemilinearMap t = random_semilinear(m, f, rng.below(~std::uint64_t{0}), false);
      return {SemilinearMap(t.matrix(), t.frobenius_power(), true, f), kind, std::nullopt};
    }
    case MapKind::dual_automorphism:
      if (dual_index_set(omega.alpha()) == omega.alpha()) return {random_dual_automorphism(omega, rng), kind, true};
      return generate_map(omega, MapKind::random_dual, seed);
  }
  throw std::logic_error("unknown map kind");
}

inline json aut_descriptor(const SemilinearMap& tau, const SchubertVariety& omega, const CriterionOptions& opts) {
  return {{"kind", "aut"},
          {"map", io::map_to_json(tau, omega.field())},
          {"variety", io::variety_to_json(omega)},
          {"mutation", to_string(opts.mutation)}};
}

// fast vs oracle (and the construction's expectation, when it has one)
inline void check_automorphism(const GeneratedMap& g, const SchubertVariety& omega, const CriterionOptions& opts,
                               Outcome& out) {
  ++out.cases;
  ++out.stats["maps." + to_string(g.kind)];
  json d = aut_descriptor(g.tau, omega, opts);
  try {
    const bool fast = is_automorphism_fast(g.tau, omega, opts);
    const bool oracle = is_automorphism_oracle(g.tau, omega, opts.budget);
    if (oracle) ++out.stats["automorphisms"];
    if (fast != oracle) {
      d["fast"] = fast;
      d["oracle"] = oracle;
      out.fail(d);
    } else if (g.expected && *g.expected != oracle) {
      d["kind"] = "aut-expectation";
      d["expected"] = *g.expected;
      d["oracle"] = oracle;
      out.fail(d);
    }
  } catch (const std::exception& e) {
    d["error"] = e.what();
    out.fail(d);
  }
}

}  // namespace detail

/// Minimal-condition membership agrees with full-condition membership for
/// every index set, a family of flags, and every point of G_{l,m}.
inline Report verify_redundancy(const Config& cfg) {
  const Field f = Field::of_order(cfg.q);
  const auto alphas = detail::alphas_for(cfg);
  check_budget(gaussian_binomial(cfg.m, cfg.l, f.q()), cfg.criteria.budget, "Grassmannian");
  const auto points = enumerate_grassmannian(cfg.m, cfg.l, f, cfg.criteria.budget);
  const std::uint64_t per_alpha = std::max<std::uint64_t>(cfg.flags_per_alpha, 1);

  json params = detail::base_parameters(cfg, alphas, "exhaustive-alpha");
  params["flags_per_alpha"] = per_alpha;
  return detail::run_campaign(
      "redundancy", params, alphas.size() * per_alpha, cfg, [&](std::size_t i, detail::Outcome& out) {
        const IndexSet& alpha = alphas[i / per_alpha];
        const std::uint64_t j = i % per_alpha;
        const Flag flag = j == 0 ? standard_flag(alpha, f) : random_flag(alpha, f, mix_seed(cfg.seed, i));
        const SchubertVariety omega(f, flag);
        ++out.cases;
        for (const auto& w : points) {
          ++out.stats["point_checks"];
          const bool full = membership(w, omega);
          const bool minimal = membership_minimal(w, omega, cfg.criteria.mutation);
          if (full) ++out.stats["members"];
          if (full != minimal)
            out.fail({{"kind", "membership"},
                      {"variety", io::variety_to_json(omega)},
                      {"point", io::subspace_to_json(w)},
                      {"full", full},
                      {"minimal", minimal},
                      {"mutation", to_string(cfg.criteria.mutation)}});
        }
      });
}

enum class PairKind { independent, same_nc, differ_one_nc, identical };

inline std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::independent: return "independent";
    case PairKind::same_nc: return "same-nc";
    case PairKind::differ_one_nc: return "differ-one-nc";
    case PairKind::identical: return "identical";
  }
  return "";
}

/// Second flag for an equality trial, built from the first.
inline Flag partner_flag(const SchubertVariety& a, PairKind kind, std::uint64_t seed) {
  const Field& f = a.field();
  Rng rng(seed);
  switch (kind) {
    case PairKind::identical: return a.flag();
    case PairKind::independent: return random_flag(a.alpha(), f, rng.below(~std::uint64_t{0}));
    case PairKind::same_nc: {
      const Matrix g = random_stabilizing_matrix(detail::members_of(a, a.nc()), a.m(), f, rng);
      return apply_flag(SemilinearMap::matrix_map(g, f), a.flag(), f);
    }
    case PairKind::differ_one_nc: {
      const auto candidates = detail::proper_nc(a);
      if (candidates.empty()) return random_flag(a.alpha(), f, rng.below(~std::uint64_t{0}));
      const std::size_t d = candidates[rng.below(candidates.size())];
      auto g = detail::moving_matrix(detail::members_of(a, a.nc(), d), a.member(d), a.m(), f, rng);
      if (!g) return random_flag(a.alpha(), f, rng.below(~std::uint64_t{0}));
      return apply_flag(SemilinearMap::matrix_map(*g, f), a.flag(), f);
    }
  }
  throw std::logic_error("unknown pair kind");
}

/// equal_fast agrees with point-set equality; every unequal pair gets a
/// witness point, preferably from the explicit construction.
inline Report verify_equality_theorem(const Config& cfg) {
  const Field f = Field::of_order(cfg.q);
  const auto alphas = detail::alphas_for(cfg);
  constexpr PairKind kinds[] = {PairKind::independent, PairKind::same_nc, PairKind::differ_one_nc, PairKind::identical};
  return detail::run_campaign(
      "equality", detail::base_parameters(cfg, alphas, "sampled"), cfg.trials, cfg,
      [&](std::size_t t, detail::Outcome& out) {
        const IndexSet& alpha = alphas[t % alphas.size()];
        const PairKind kind = kinds[(t / alphas.size()) % 4];
        const std::uint64_t seed = mix_seed(cfg.seed, t);
        const SchubertVariety a(f, random_flag(alpha, f, seed));
        const SchubertVariety b(f, partner_flag(a, kind, mix_seed(seed, 1)));
        ++out.cases;
        ++out.stats["pairs." + to_string(kind)];
        json d = {{"kind", "eq"},
                  {"a", io::variety_to_json(a)},
                  {"b", io::variety_to_json(b)},
                  {"mutation", to_string(cfg.criteria.mutation)}};
        try {
          const bool fast = equal_fast(a, b, cfg.criteria);
          const bool oracle = equal_oracle(a, b, cfg.criteria.budget);
          if (fast != oracle) {
            d["fast"] = fast;
            d["oracle"] = oracle;
            out.fail(d);
            return;
          }
          if (oracle) {
            ++out.stats["equal"];
            return;
          }
          ++out.stats["unequal"];
          const auto w = find_witness(a, b, mix_seed(seed, 2));
          if (w && w->constructed) {
            ++out.stats["witness_constructed"];
          } else {
            if (w) ++out.stats["witness_searched"];
            d["kind"] = "witness";
            d["seed"] = mix_seed(seed, 2);
            d["found"] = w.has_value();
            out.fail(d);
          }
        } catch (const std::exception& e) {
          d["error"] = e.what();
          out.fail(d);
        }
      });
}

/// For contravariant maps the pointwise image of Omega_alpha^A equals the
/// variety of the computed image descriptor (index set beta). Each trial
/// draws one map and applies it to every index set.
inline Report verify_dual_action(const Config& cfg) {
  if (cfg.m != 2 * cfg.l) throw InvalidInput("dual action needs m = 2l");
  const Field f = Field::of_order(cfg.q);
  const auto alphas = detail::alphas_for(cfg);
  return detail::run_campaign(
      "dual-action", detail::base_parameters(cfg, alphas, "sampled"), cfg.trials, cfg,
      [&](std::size_t t, detail::Outcome& out) {
        const std::uint64_t seed = mix_seed(cfg.seed, t);
        const SchubertVariety probe(f, standard_flag(alphas[0], f));
        const SemilinearMap tau = detail::generate_map(probe, detail::MapKind::random_dual, seed).tau;
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
          const SchubertVariety omega(f, random_flag(alphas[ai], f, mix_seed(seed, ai + 1)));
          ++out.cases;
          json d = {{"kind", "dual-action"},
                    {"map", io::map_to_json(tau, f)},
                    {"variety", io::variety_to_json(omega)},
                    {"mutation", to_string(cfg.criteria.mutation)}};
          try {
            const SchubertVariety image = image_of_schubert(tau, omega, cfg.criteria);
            if (image_points(tau, omega, cfg.criteria.budget) != point_set(image, cfg.criteria.budget)) {
              d["image"] = io::variety_to_json(image);
              out.fail(d);
            }
          } catch (const std::exception& e) {
            d["error"] = e.what();
            out.fail(d);
          }
        }
      });
}

/// Covariant maps: is_automorphism_fast agrees with the oracle, including
/// flag-adapted stabilisers and near misses that move one nonconsecutive
/// member.
inline Report verify_variant(const Config& cfg) {
  const Field f = Field::of_order(cfg.q);
  const auto alphas = detail::alphas_for(cfg);
  using detail::MapKind;
  constexpr MapKind kinds[] = {MapKind::stabilize_flag, MapKind::stabilize_nc, MapKind::move_one_nc,
                               MapKind::random_covariant};
  return detail::run_campaign(
      "variant", detail::base_parameters(cfg, alphas, "sampled"), cfg.trials, cfg,
      [&](std::size_t t, detail::Outcome& out) {
        const std::uint64_t seed = mix_seed(cfg.seed, t);
        const SchubertVariety omega(f, random_flag(alphas[t % alphas.size()], f, seed));
        const auto g = detail::generate_map(omega, kinds[(t / alphas.size()) % 4], mix_seed(seed, 1));
        detail::check_automorphism(g, omega, cfg.criteria, out);
      });
}

/// Covariant and (when m = 2l) contravariant maps: is_automorphism_fast
/// agrees with the oracle everywhere.
inline Report verify_main_theorem(const Config& cfg) {
  const Field f = Field::of_order(cfg.q);
  const auto alphas = detail::alphas_for(cfg);
  using detail::MapKind;
  std::vector<MapKind> kinds = {MapKind::stabilize_flag, MapKind::stabilize_nc, MapKind::move_one_nc,
                                MapKind::random_covariant};
  if (cfg.m == 2 * cfg.l) kinds.insert(kinds.end(), {MapKind::random_dual, MapKind::dual_automorphism});
  return detail::run_campaign(
      "main", detail::base_parameters(cfg, alphas, "sampled"), cfg.trials, cfg,
      [&](std::size_t t, detail::Outcome& out) {
        const std::uint64_t seed = mix_seed(cfg.seed, t);
        const SchubertVariety omega(f, random_flag(alphas[t % alphas.size()], f, seed));
        const auto g = detail::generate_map(omega, kinds[(t / alphas.size()) % kinds.size()], mix_seed(seed, 1));
        if (g.tau.dual()) ++out.stats["contravariant"];
        detail::check_automorphism(g, omega, cfg.criteria, out);
      });
}

/// Point sets of varieties with different index sets never coincide.
inline Report verify_kl_proposition(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Field f = Field::of_order(cfg.q);
  const auto alphas = detail::alphas_for(cfg);
  const std::uint64_t per_alpha = std::max<std::uint64_t>(cfg.flags_per_alpha, 1);

  struct Entry {
    PointSet points;
    std::size_t alpha_index;
    std::size_t flag_index;
  };
  std::vector<Entry> entries(alphas.size() * per_alpha);
  detail::parallel_for(entries.size(), cfg.threads, [&](std::size_t i) {
    const IndexSet& alpha = alphas[i / per_alpha];
    const std::uint64_t j = i % per_alpha;
    const Flag flag = j == 0 ? standard_flag(alpha, f) : random_flag(alpha, f, mix_seed(cfg.seed, i));
    entries[i] = {point_set(SchubertVariety(f, flag), cfg.criteria.budget), i / per_alpha, i};
  });

  auto variety_at = [&](std::size_t i) {
    const IndexSet& alpha = alphas[i / per_alpha];
    const std::uint64_t j = i % per_alpha;
    return SchubertVariety(f, j == 0 ? standard_flag(alpha, f) : random_flag(alpha, f, mix_seed(cfg.seed, i)));
  };

  std::vector<detail::Outcome> outcome(1);
  auto& out = outcome[0];
  std::map<PointSet, std::size_t> seen;  // point set -> first entry
  for (const auto& e : entries) {
    ++out.cases;
    auto [it, inserted] = seen.emplace(e.points, e.flag_index);
    if (!inserted && entries[it->second].alpha_index != e.alpha_index)
      out.fail({{"kind", "kl"},
                {"a", io::variety_to_json(variety_at(it->second))},
                {"b", io::variety_to_json(variety_at(e.flag_index))}});
  }
  out.stats["distinct_point_sets"] = seen.size();

  json params = detail::base_parameters(cfg, alphas, "exhaustive-alpha");
  params["flags_per_alpha"] = per_alpha;
  Report report;
  report.theorem = "kl";
  report.parameters = params;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai)
    report.summary["point_counts"][alphas[ai].to_string()] = entries[ai * per_alpha].points.size();
  detail::merge_into(report, outcome, cfg.max_failures);
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

enum class CensusMode { exhaustive, sampled };
enum class OracleCheck { all, sample, none };

struct CensusConfig {
  CensusMode mode = CensusMode::exhaustive;
  std::uint64_t budget = 10'000'000;  // group elements
  std::uint64_t samples = 1000;       // sampled mode
  std::uint64_t seed = 1;
  bool include_dual = false;
  OracleCheck oracle = OracleCheck::sample;
  std::uint64_t oracle_sample = 200;
  CriterionOptions criteria;
  unsigned threads = 1;
  std::size_t max_failures = 20;
};

/// Counts elements of the implemented group (GL_m x Frobenius, optionally
/// with duality) that pass is_automorphism_fast, cross-checking the oracle
/// on all elements or an evenly spaced subsample.
inline Report stabilizer_census(const SchubertVariety& omega, const CensusConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Field& f = omega.field();
  const std::size_t m = omega.m();
  const bool with_dual = cfg.include_dual && m == 2 * omega.l();
  const std::uint64_t per_matrix = f.e() * (with_dual ? 2 : 1);

  std::uint64_t total = 0;
  if (cfg.mode == CensusMode::exhaustive) {
    const auto gl = general_linear_order(m, f.q());
    if (!gl || *gl > cfg.budget / per_matrix)
      throw BudgetExceeded("exhaustive census over GL_" + std::to_string(m) + "(F_" + std::to_string(f.q()) +
                           ") exceeds budget " + std::to_string(cfg.budget));
    total = *gl * per_matrix;
  } else {
    total = cfg.samples;
  }
  const std::uint64_t stride =
      cfg.oracle == OracleCheck::sample ? std::max<std::uint64_t>(1, total / std::max<std::uint64_t>(1, cfg.oracle_sample)) : 1;
  const PointSet points = point_set(omega, cfg.criteria.budget);

  std::uint64_t index = 0;
  std::vector<detail::Outcome> outcomes;
  auto run_batch = [&](std::vector<SemilinearMap>& batch) {
    std::vector<detail::Outcome> local(batch.size());
    const std::uint64_t base = index;
    detail::parallel_for(batch.size(), cfg.threads, [&](std::size_t i) {
      auto& out = local[i];
      const SemilinearMap& tau = batch[i];
      ++out.cases;
      const bool fast = is_automorphism_fast(tau, omega, cfg.criteria);
      if (fast) ++out.stats["fast_count"];
      const bool check = cfg.oracle == OracleCheck::all || (cfg.oracle == OracleCheck::sample && (base + i) % stride == 0);
      if (!check) return;
      ++out.stats["oracle_checked"];
      const bool oracle = is_automorphism_oracle(tau, omega, points);
      if (oracle) ++out.stats["oracle_count"];
      if (fast) ++out.stats["fast_count_checked"];
      if (fast != oracle) {
        json d = detail::aut_descriptor(tau, omega, cfg.criteria);
        d["fast"] = fast;
        d["oracle"] = oracle;
        out.fail(d);
      }
    });
    index += batch.size();
    for (auto& o : local) outcomes.push_back(std::move(o));
    batch.clear();
  };

  std::vector<SemilinearMap> batch;
  constexpr std::size_t kBatch = 4096;
  auto push = [&](const Matrix& mat) {
    for (std::uint32_t k = 0; k < f.e(); ++k)
      for (int d = 0; d < (with_dual ? 2 : 1); ++d) batch.emplace_back(mat, k, d == 1, f);
    if (batch.size() >= kBatch) run_batch(batch);
  };
  if (cfg.mode == CensusMode::exhaustive) {
    for_each_invertible(m, f, [&](const Matrix& mat) {
      push(mat);
      return true;
    });
  } else {
    for (std::uint64_t s = 0; s < cfg.samples; ++s) {
      batch.push_back(random_semilinear(m, f, mix_seed(cfg.seed, s), with_dual));
      if (batch.size() >= kBatch) run_batch(batch);
    }
  }
  if (!batch.empty()) run_batch(batch);

  Report report;
  report.theorem = "census";
  report.parameters = {{"q", f.q()},
                       {"m", m},
                       {"l", omega.l()},
                       {"alpha", omega.alpha().elements()},
                       {"variety", io::variety_to_json(omega)},
                       {"mode", cfg.mode == CensusMode::exhaustive ? "exhaustive" : "sampled"},
                       {"seed", cfg.seed},
                       {"include_dual", with_dual},
                       {"oracle", cfg.oracle == OracleCheck::all ? "all" : cfg.oracle == OracleCheck::sample ? "sample" : "none"},
                       {"mutation", to_string(cfg.criteria.mutation)}};
  detail::merge_into(report, outcomes, cfg.max_failures);
  report.stats.try_emplace("fast_count", 0);
  report.stats.try_emplace("oracle_checked", 0);
  report.stats.try_emplace("oracle_count", 0);
  report.stats["elements"] = report.cases_tested;
  report.summary["fast_fraction"] =
      report.cases_tested ? static_cast<double>(report.stats["fast_count"]) / static_cast<double>(report.cases_tested) : 0.0;
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"redundancy", "equality", "dual-action", "variant", "main", "kl"};
  return ids;
}

inline Report run_theorem(const std::string& id, const Config& cfg) {
  if (id == "redundancy") return verify_redundancy(cfg);
  if (id == "equality") return verify_equality_theorem(cfg);
  if (id == "dual-action") return verify_dual_action(cfg);
  if (id == "variant") return verify_variant(cfg);
  if (id == "main") return verify_main_theorem(cfg);
  if (id == "kl") return verify_kl_proposition(cfg);
  throw InvalidInput("unknown theorem id '" + id + "'");
}

struct ReplayResult {
  bool reproduced = false;
  std::string detail;
};

/// Re-runs the check recorded in a failure descriptor.
inline ReplayResult replay(const json& d) {
  const std::string kind = d.at("kind").get<std::string>();
  CriterionOptions opts;
  opts.mutation = mutation_from_string(d.value("mutation", std::string("none")));
  auto run = [&]() -> ReplayResult {
    if (kind == "membership") {
      const auto omega = io::variety_from_json(d.at("variety"));
      const auto w = io::subspace_from_json(d.at("point"), omega.m(), omega.field());
      const bool full = membership(w, omega);
      const bool minimal = membership_minimal(w, omega, opts.mutation);
      return {full != minimal, "full=" + std::to_string(full) + " minimal=" + std::to_string(minimal)};
    }
    if (kind == "eq" || kind == "witness") {
      const auto a = io::variety_from_json(d.at("a"));
      const auto b = io::variety_from_json(d.at("b"));
      const bool fast = equal_fast(a, b, opts);
      const bool oracle = equal_oracle(a, b, opts.budget);
      if (kind == "eq" || fast != oracle)
        return {fast != oracle, "fast=" + std::to_string(fast) + " oracle=" + std::to_string(oracle)};
      if (oracle) return {false, "varieties are equal; no witness needed"};
      const auto w = find_witness(a, b, d.value("seed", std::uint64_t{0}));
      const bool ok = w && w->constructed;
      return {!ok, w ? (w->constructed ? "witness constructed" : "witness only found by search") : "no witness"};
    }
    if (kind == "dual-action") {
      const auto omega = io::variety_from_json(d.at("variety"));
      const auto tau = io::map_from_json(d.at("map"), omega.field());
      const auto image = image_of_schubert(tau, omega, opts);
      const bool same = image_points(tau, omega, opts.budget) == point_set(image, opts.budget);
      return {!same, same ? "image matches descriptor" : "image differs from descriptor"};
    }
    if (kind == "aut" || kind == "aut-expectation") {
      const auto omega = io::variety_from_json(d.at("variety"));
      const auto tau = io::map_from_json(d.at("map"), omega.field());
      const bool fast = is_automorphism_fast(tau, omega, opts);
      const bool oracle = is_automorphism_oracle(tau, omega, opts.budget);
      if (kind == "aut-expectation") {
        const bool expected = d.at("expected").get<bool>();
        return {oracle != expected, "expected=" + std::to_string(expected) + " oracle=" + std::to_string(oracle)};
      }
      return {fast != oracle, "fast=" + std::to_string(fast) + " oracle=" + std::to_string(oracle)};
    }
    if (kind == "kl") {
      const auto a = io::variety_from_json(d.at("a"));
      const auto b = io::variety_from_json(d.at("b"));
      const bool same = point_set(a) == point_set(b);
      return {same && a.alpha() != b.alpha(), same ? "point sets coincide" : "point sets differ"};
    }
    throw InvalidInput("unknown failure kind '" + kind + "'");
  };
  try {
    return run();
  } catch (const InvalidInput& e) {
    if (!d.contains("error")) throw;
    return {true, std::string("error: ") + e.what()};
  }
}

}  // namespace schubert::verify
