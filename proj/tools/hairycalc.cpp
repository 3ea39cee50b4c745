// hairycalc: homology tables for the colored hairy and forest-side graph
// complexes, plus the combinatorial oracle suite.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hairycalc/engine.hpp"
#include "hairycalc/io.hpp"

namespace hc = hairycalc;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct JobConfig {
  std::vector<int> m;
  int d = 0;
  int max_hairs = 4;
  int max_complexity = 2;
  std::vector<std::string> complexes{"hairy"};
  std::optional<int> degree_min;
  std::optional<int> degree_max;
  std::optional<int> truncate;
  std::vector<int> truncate_per_color;
  int workers = 1;
  std::string cache_dir;
  std::string format = "json";
  std::string output;
  bool modular_verify = false;
};

hc::ComplexKind parse_kind(const std::string& name) {
  if (name == "hairy") return hc::ComplexKind::HairyPi;
  if (name == "koszul-pi") return hc::ComplexKind::KoszulPi;
  if (name == "koszul-full") return hc::ComplexKind::KoszulFull;
  throw CLI::ValidationError("--complex", "unknown complex kind: " + name);
}

// HAIRYCALC_CACHE overrides any configured cache directory.
std::string resolve_cache_dir(const std::string& configured) {
  if (const char* env = std::getenv("HAIRYCALC_CACHE")) return env;
  return configured;
}

hc::RankOptions rank_options(const JobConfig& cfg) {
  hc::RankOptions opts;
  opts.modular_verify = cfg.modular_verify;
  return opts;
}

std::vector<std::vector<int>> hodge_multidegrees(int colors, int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(colors, 0);
  auto rec = [&](auto&& self, int i, int budget) -> void {
    if (i == colors) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      cur[i] = v;
      self(self, i + 1, budget - v);
    }
  };
  rec(rec, 0, max_total);
  std::sort(out.begin(), out.end());
  return out;
}

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string block_label(const hc::BlockKey& key) {
  return std::string(hc::kind_name(key.kind)) + " m=" + join_ints(key.m, ',') +
         " d=" + std::to_string(key.d) + " s=" + join_ints(key.s, ',') +
         " t=" + std::to_string(key.t);
}

std::string cache_file_name(const hc::BlockKey& key, int diff_index) {
  return std::string(hc::kind_name(key.kind)) + "_m" + join_ints(key.m, '-') + "_d" +
         std::to_string(key.d) + "_s" + join_ints(key.s, '-') + "_t" + std::to_string(key.t) +
         "_i" + std::to_string(diff_index) + ".mat";
}

void emit(const JobConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + cfg.output);
  out << text;
}

json params_json(const JobConfig& cfg) {
  json p;
  p["m"] = cfg.m;
  p["d"] = cfg.d;
  p["max_hairs"] = cfg.max_hairs;
  p["max_complexity"] = cfg.max_complexity;
  p["complex"] = cfg.complexes;
  if (cfg.degree_min) p["degree_min"] = *cfg.degree_min;
  if (cfg.degree_max) p["degree_max"] = *cfg.degree_max;
  if (cfg.truncate) p["truncate"] = *cfg.truncate;
  if (!cfg.truncate_per_color.empty()) p["truncate_per_color"] = cfg.truncate_per_color;
  p["modular_verify"] = cfg.modular_verify;
  return p;
}

struct TimedBlock {
  hc::BlockComputation comp;
  long wall_ms = 0;
};

std::map<hc::BlockKey, TimedBlock> run_timed(const std::vector<hc::BlockKey>& keys,
                                             const JobConfig& cfg) {
  auto opts = rank_options(cfg);
  std::map<hc::BlockKey, TimedBlock> table;
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr error;
  auto work = [&]() {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (error || next >= keys.size()) return;
        i = next++;
      }
      try {
        auto start = std::chrono::steady_clock::now();
        TimedBlock r;
        if (cfg.truncate && keys[i].kind != hc::ComplexKind::HairyPi)
          r.comp = hc::truncated_block(keys[i], *cfg.truncate, opts);
        else if (!cfg.truncate_per_color.empty() && keys[i].kind != hc::ComplexKind::HairyPi)
          r.comp = hc::truncated_block(keys[i], cfg.truncate_per_color, opts);
        else
          r.comp = hc::compute_block(keys[i], opts);
        r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        std::lock_guard lock(mu);
        table.emplace(keys[i], std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < cfg.workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return table;
}

int cmd_homology(const JobConfig& cfg) {
  if ((cfg.truncate || !cfg.truncate_per_color.empty()) &&
      std::find(cfg.complexes.begin(), cfg.complexes.end(), "hairy") != cfg.complexes.end())
    throw CLI::ValidationError("--truncate", "truncation applies to the forest-side complexes");

  std::vector<hc::BlockKey> keys;
  for (const auto& name : cfg.complexes) {
    auto kind = parse_kind(name);
    for (const auto& s : hodge_multidegrees(static_cast<int>(cfg.m.size()), cfg.max_hairs))
      for (int t = 0; t <= cfg.max_complexity; ++t)
        keys.push_back({cfg.m, cfg.d, s, t, kind});
  }
  std::sort(keys.begin(), keys.end());
  auto table = run_timed(keys, cfg);

  const std::string cache_dir = resolve_cache_dir(cfg.cache_dir);
  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir);
    for (const auto& key : keys) {
      auto chain = hc::build_chain(key);
      for (std::size_t i = 0; i < chain.diffs.size(); ++i)
        hc::write_matrix_file(std::filesystem::path(cache_dir) / cache_file_name(key, i),
                              chain.diffs[i]);
    }
  }

  json records = json::array();
  json timings;
  json warnings = json::array();
  // records ordered by (complex, s, t, degree): map order on keys, slices ascending
  for (const auto& [key, timed] : table) {
    timings[block_label(key)] = timed.wall_ms;
    if (timed.comp.below_theorem_range) warnings.push_back(block_label(key));
    for (const auto& slice : timed.comp.slices) {
      if (cfg.degree_min && slice.degree < *cfg.degree_min) continue;
      if (cfg.degree_max && slice.degree > *cfg.degree_max) continue;
      json rec;
      rec["complex"] = hc::kind_name(key.kind);
      rec["s"] = key.s;
      rec["t"] = key.t;
      rec["degree"] = slice.degree;
      rec["chain_dim"] = slice.chain_dim;
      rec["rank_in"] = slice.rank_in;
      rec["rank_out"] = slice.rank_out;
      rec["homology_dim"] = slice.homology_dim;
      rec["zero_generators_discarded"] = timed.comp.zeros_discarded;
      records.push_back(std::move(rec));
    }
  }

  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "complex,s,t,degree,chain_dim,rank_in,rank_out,homology_dim,"
           "zero_generators_discarded\n";
    for (const auto& rec : records)
      out << rec["complex"].get<std::string>() << ','
          << join_ints(rec["s"].get<std::vector<int>>(), ';') << ',' << rec["t"] << ','
          << rec["degree"] << ',' << rec["chain_dim"] << ',' << rec["rank_in"] << ','
          << rec["rank_out"] << ',' << rec["homology_dim"] << ','
          << rec["zero_generators_discarded"] << '\n';
    emit(cfg, out.str());
    return 0;
  }

  json doc;
  doc["params"] = params_json(cfg);
  doc["records"] = std::move(records);
  doc["meta"]["below_theorem_range"] = std::move(warnings);
  doc["meta"]["wall_time_ms"] = std::move(timings);
  emit(cfg, doc.dump(2) + "\n");
  return 0;
}

int cmd_check(const JobConfig& cfg) {
  auto opts = rank_options(cfg);
  json checks = json::array();
  bool all_pass = true;
  auto report = [&](const std::string& name, const std::string& block, bool pass,
                    const std::string& detail = "") {
    json c;
    c["check"] = name;
    c["block"] = block;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(std::move(c));
    all_pass = all_pass && pass;
  };

  const int max_m = *std::max_element(cfg.m.begin(), cfg.m.end());
  const bool in_range = cfg.d - max_m > 2;
  const std::string cache_dir = resolve_cache_dir(cfg.cache_dir);
  const auto multidegrees = hodge_multidegrees(static_cast<int>(cfg.m.size()), cfg.max_hairs);

  for (const auto& s : multidegrees) {
    for (int t = 0; t <= cfg.max_complexity; ++t) {
      hc::BlockKey hkey{cfg.m, cfg.d, s, t, hc::ComplexKind::HairyPi};
      hc::BlockKey kkey{cfg.m, cfg.d, s, t, hc::ComplexKind::KoszulPi};
      const std::string label = "m=" + join_ints(cfg.m, ',') + " d=" + std::to_string(cfg.d) +
                                " s=" + join_ints(s, ',') + " t=" + std::to_string(t);
      try {
        // d^2 = 0 and Euler consistency are asserted inside compute_block
        auto hairy = hc::compute_block(hkey, opts);
        auto koszul = hc::compute_block(kkey, opts);
        report("d-squared-and-euler", label, true);
        auto hd = hc::homology_by_degree(hairy);
        auto kd = hc::homology_by_degree(koszul);
        report("hairy-vs-forest-duality", label, hd == kd);
        // cache round-trip: cached matrices must match the rebuilt ones
        if (!cache_dir.empty()) {
          for (const auto& key : {hkey, kkey}) {
            auto chain = hc::build_chain(key);
            for (std::size_t i = 0; i < chain.diffs.size(); ++i) {
              auto path = std::filesystem::path(cache_dir) / cache_file_name(key, i);
              if (!std::filesystem::exists(path)) continue;
              bool same = hc::read_matrix_file(path) == chain.diffs[i];
              report("cache-round-trip", label + " " + cache_file_name(key, i), same);
            }
          }
        }
      } catch (const hc::internal_error& e) {
        report("d-squared-and-euler", label, false, e.what());
      }
    }
  }

  // genus-0 blocks against the free-Lie kernel oracle
  for (const auto& s : multidegrees) {
    const int total = std::accumulate(s.begin(), s.end(), 0);
    if (total < 1) continue;
    const int t = total - 1;  // genus 0
    if (t > cfg.max_complexity) continue;
    const std::string label = "tree m=" + join_ints(cfg.m, ',') + " d=" + std::to_string(cfg.d) +
                              " s=" + join_ints(s, ',');
    auto comp = hc::compute_block({cfg.m, cfg.d, s, t, hc::ComplexKind::HairyPi}, opts);
    auto dims = hc::homology_by_degree(comp);
    auto oracle = hc::tree_homology_oracle(cfg.m, cfg.d, s);
    std::map<long, int> expect;
    if (oracle.dim != 0) expect[oracle.degree] = static_cast<int>(oracle.dim);
    report("tree-vs-lie-oracle", label, dims == expect);
  }

  // degree-0 homology against the Whitehead-bracket kernel
  if (in_range) {
    hc::Int h0 = 0;
    for (const auto& s : multidegrees) {
      const int total = std::accumulate(s.begin(), s.end(), 0);
      if (total < 1 || total - 1 > cfg.max_complexity) continue;
      auto comp = hc::compute_block({cfg.m, cfg.d, s, total - 1, hc::ComplexKind::HairyPi}, opts);
      auto dims = hc::homology_by_degree(comp);
      if (auto it = dims.find(0); it != dims.end()) h0 += it->second;
    }
    hc::Int expected = hc::whitehead_kernel_dim(cfg.m, cfg.d);
    report("pi0-vs-whitehead", "m=" + join_ints(cfg.m, ',') + " d=" + std::to_string(cfg.d),
           h0 == expected);
  }

  // positive genus forces positive degree (only claimed above codimension 2)
  if (in_range) {
    bool ok = true;
    hc::HairyParams p{cfg.m, cfg.d};
    for (const auto& s : multidegrees)
      for (int t = 0; t <= cfg.max_complexity; ++t)
        for (const auto& gen : hc::enumerate_generators(p, s, t)) {
          auto g = hc::hairy_gradings(gen.graph, static_cast<int>(cfg.m.size()));
          if (g.genus >= 1 && hc::hairy_degree(gen.graph, p) < 1) ok = false;
        }
    report("positive-genus-degree-sweep",
           "m=" + join_ints(cfg.m, ',') + " d=" + std::to_string(cfg.d), ok);
  }

  json doc;
  doc["params"] = params_json(cfg);
  doc["checks"] = std::move(checks);
  doc["all_pass"] = all_pass;
  doc["below_theorem_range"] = !in_range;
  emit(cfg, doc.dump(2) + "\n");
  return all_pass ? 0 : kExitCheckFailure;
}

void emit_oracle(const JobConfig& cfg, const json& records) {
  json doc;
  doc["records"] = records;
  emit(cfg, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homology of colored hairy graph complexes and their forest duals"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style key=value configuration file");

  JobConfig cfg;
  auto add_common = [&](CLI::App* cmd, bool need_md) {
    auto* m = cmd->add_option("--m", cfg.m, "source dimensions, one per color")->delimiter(',');
    auto* d = cmd->add_option("--d", cfg.d, "ambient dimension");
    if (need_md) {
      m->required();
      d->required();
    }
    cmd->add_option("--max-hairs", cfg.max_hairs, "max total Hodge multidegree");
    cmd->add_option("--max-complexity", cfg.max_complexity, "max complexity t");
    cmd->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--cache-dir", cfg.cache_dir, "matrix cache directory");
    cmd->add_option("--output", cfg.output, "output file (default stdout)");
    cmd->add_flag("--modular-verify", cfg.modular_verify,
                  "verify every rank modulo two random primes");
  };

  auto* homology = app.add_subcommand("homology", "homology table per (s-bar, t, degree)");
  add_common(homology, true);
  homology->add_option("--complex", cfg.complexes, "hairy, koszul-pi and/or koszul-full")
      ->delimiter(',');
  homology->add_option("--degree-min", cfg.degree_min, "lowest reported degree");
  homology->add_option("--degree-max", cfg.degree_max, "highest reported degree");
  homology->add_option("--truncate", cfg.truncate, "keep forest-side generators with k <= n");
  homology->add_option("--truncate-per-color", cfg.truncate_per_color,
                       "per-color vertex bounds")
      ->delimiter(',');
  homology->add_option("--format", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* check = app.add_subcommand("check", "internal consistency and oracle checks");
  add_common(check, true);

  auto* oracle = app.add_subcommand("oracle", "combinatorial oracle tables");
  oracle->require_subcommand(1);
  int ok = 0, on = 0, omax_weight = 4;
  std::vector<int> odegrees, os, okbar;
  auto* poincare = oracle->add_subcommand("config-poincare", "Poincare coefficients of C(k, R^n)");
  poincare->add_option("--k", ok, "points")->required();
  poincare->add_option("--n", on, "ambient dimension")->required();
  auto* whitehead = oracle->add_subcommand("whitehead", "kernel dimension of the bracket map");
  whitehead->add_option("--m", cfg.m, "source dimensions")->delimiter(',')->required();
  whitehead->add_option("--d", cfg.d, "ambient dimension")->required();
  auto* lie = oracle->add_subcommand("lie-dims", "free graded Lie dimensions by multiweight");
  lie->add_option("--degrees", odegrees, "generator degrees")->delimiter(',')->required();
  lie->add_option("--max-weight", omax_weight, "total weight bound");
  auto* kq = oracle->add_subcommand("kq", "colored-side dimension and degree");
  kq->add_option("--m", cfg.m, "source dimensions")->delimiter(',')->required();
  kq->add_option("--s", os, "components per color")->delimiter(',')->required();
  kq->add_option("--k", okbar, "vertices per color")->delimiter(',')->required();

  try {
    app.parse(argc, argv);

    if (homology->parsed()) return cmd_homology(cfg);
    if (check->parsed()) return cmd_check(cfg);

    if (poincare->parsed()) {
      auto coeffs = hc::config_poincare_coeffs(ok);
      json recs = json::array();
      for (std::size_t e = 0; e < coeffs.size(); ++e) {
        json rec;
        rec["degree"] = static_cast<long>(e) * (on - 1);
        rec["dim"] = coeffs[e].str();
        recs.push_back(std::move(rec));
      }
      emit_oracle(cfg, recs);
      return 0;
    }
    if (whitehead->parsed()) {
      json recs = json::array();
      json rec;
      rec["m"] = cfg.m;
      rec["d"] = cfg.d;
      rec["kernel_dim"] = hc::whitehead_kernel_dim(cfg.m, cfg.d).str();
      recs.push_back(std::move(rec));
      emit_oracle(cfg, recs);
      return 0;
    }
    if (lie->parsed()) {
      std::vector<long> degs(odegrees.begin(), odegrees.end());
      json recs = json::array();
      for (const auto& [w, dim] : hc::free_graded_lie_dims(degs, omax_weight)) {
        json rec;
        rec["weight"] = w;
        rec["degree"] = hc::weight_degree(w, degs);
        rec["dim"] = dim.str();
        recs.push_back(std::move(rec));
      }
      emit_oracle(cfg, recs);
      return 0;
    }
    if (kq->parsed()) {
      auto r = hc::kq_dimension(cfg.m, os, okbar);
      json recs = json::array();
      json rec;
      rec["degree"] = r.degree;
      rec["dim"] = r.dim.str();
      recs.push_back(std::move(rec));
      emit_oracle(cfg, recs);
      return 0;
    }
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const hc::internal_error& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
