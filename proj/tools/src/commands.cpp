#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>

#include "carlab/cli/runner.hpp"
#include "carlab/errors.hpp"
#include "carlab/pair_geometry.hpp"

#ifndef CARLAB_VERSION
#define CARLAB_VERSION "0.0.0"
#endif

namespace carlab::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json versions() {
  Json j;
  j["carlab"] = CARLAB_VERSION;
  j["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
               "." + std::to_string(EIGEN_MINOR_VERSION);
  j["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  return j;
}

struct Tally {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  int excluded = 0;
  double worst_ratio = 0.0;
  std::string worst_check;

  void add(const CheckRecord& r) {
    if (r.verdict == "pass") ++passed;
    if (r.verdict == "fail") ++failed;
    if (r.verdict == "skipped") ++skipped;
    if (r.verdict == "excluded") ++excluded;
    if (r.verdict == "pass" || r.verdict == "fail") {
      const double ratio = r.tolerance > 0.0 ? r.defect / r.tolerance : r.defect;
      if (ratio > worst_ratio || worst_check.empty()) {
        worst_ratio = ratio;
        worst_check = r.name;
      }
    }
  }
  Json json() const {
    Json j;
    j["passed"] = passed;
    j["failed"] = failed;
    j["skipped"] = skipped;
    j["excluded"] = excluded;
    j["worst_check"] = worst_check;
    j["worst_defect_over_tolerance"] = worst_ratio;
    j["verdict"] = failed == 0 ? "pass" : "fail";
    return j;
  }
};

Json instance_summary(const Instance& inst) {
  Json j;
  j["id"] = inst.id;
  j["dim_h"] = inst.space.dim();
  j["dim_q"] = inst.q.dim();
  j["fock_dim"] = fock_dim(inst);
  j["generic"] = is_generic_position(inst.p, inst.q);
  return j;
}

void check_fock_cap(const Instance& inst) {
  if (fock_dim(inst) > kFockCap) {
    throw FockCapExceeded("Fock dimension " + std::to_string(fock_dim(inst)) + " exceeds " +
                          std::to_string(kFockCap));
  }
}

struct CampaignItem {
  std::uint64_t seed = 0;
  std::vector<CheckRecord> records;
  std::string error;
};

}  // namespace

CommandResult cmd_verify(const RunConfig& cfg) {
  const Clock::time_point start = Clock::now();
  const Instance inst = resolve_instance(cfg);
  check_fock_cap(inst);
  const std::vector<CheckRecord> records = run_suite(inst, cfg.tolerances, cfg.seed, cfg.n_max);
  CommandResult out;
  Json& rep = out.report;
  rep["config"] = config_echo(cfg);
  rep["versions"] = versions();
  rep["instance"] = instance_summary(inst);
  rep["frames"] = {{"p", matrix_to_json(inst.p.one_particle().frame())},
                   {"q", matrix_to_json(inst.q.subspace().frame())}};
  Tally tally;
  Json checks = Json::array();
  for (const CheckRecord& r : records) {
    tally.add(r);
    checks.push_back(to_json(r));
  }
  rep["checks"] = checks;
  rep["summary"] = tally.json();
  if (cfg.timing) rep["timing"] = {{"wall_ms", elapsed_ms(start)}};
  out.exit_code = tally.failed == 0 ? 0 : 1;
  return out;
}

CommandResult cmd_campaign(const RunConfig& cfg) {
  const Clock::time_point start = Clock::now();
  if ((Index{1} << (cfg.dim / 2)) > kFockCap) {
    throw FockCapExceeded("campaign dimension exceeds the Fock cap");
  }
  std::vector<CampaignItem> items(static_cast<std::size_t>(cfg.count));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < items.size(); k = next++) {
      CampaignItem& item = items[k];
      item.seed = cfg.seed + k;
      try {
        const Instance inst = random_generic_instance(cfg.dim, item.seed);
        item.records = run_suite(inst, cfg.tolerances, item.seed, cfg.n_max);
      } catch (const Error& e) {
        item.error = e.what();
      }
    }
  };
  const int jobs = std::max(1, std::min(cfg.jobs, cfg.count));
  std::vector<std::thread> threads;
  for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();

  CommandResult out;
  Json& rep = out.report;
  rep["config"] = config_echo(cfg);
  rep["versions"] = versions();
  std::map<std::string, double> worst;
  Json per_instance = Json::array();
  Json ill = Json::array();
  Json near_singular = Json::array();
  int counted = 0;
  int passing = 0;
  int failing_instances = 0;
  for (const CampaignItem& item : items) {
    Tally tally;
    bool warned = false;
    for (const CheckRecord& r : item.records) {
      tally.add(r);
      warned = warned || r.note.rfind("condition number", 0) == 0;
      if (r.verdict == "pass" || r.verdict == "fail") {
        worst[r.name] = std::max(worst[r.name], r.defect);
      }
    }
    Json entry;
    entry["seed"] = item.seed;
    if (!item.error.empty()) {
      entry["error"] = item.error;
      entry["verdict"] = "fail";
      ++failing_instances;
      ++counted;
    } else if (tally.excluded > 0) {
      entry["verdict"] = "excluded";
      ill.push_back(item.seed);
    } else {
      ++counted;
      entry["verdict"] = tally.failed == 0 ? "pass" : "fail";
      if (tally.failed == 0) {
        ++passing;
      } else {
        ++failing_instances;
      }
    }
    if (warned) near_singular.push_back(item.seed);
    entry["failed"] = tally.failed;
    entry["worst_check"] = tally.worst_check;
    entry["worst_defect_over_tolerance"] = tally.worst_ratio;
    per_instance.push_back(entry);
  }
  rep["instances"] = per_instance;
  Json worst_json;
  for (const auto& [name, defect] : worst) worst_json[name] = defect;
  rep["worst_defects"] = worst_json;
  rep["ill_conditioned"] = ill;
  rep["delta_p_condition_above_1e8"] = near_singular;
  Json summary;
  summary["instances"] = cfg.count;
  summary["counted"] = counted;
  summary["passed"] = passing;
  summary["failed"] = failing_instances;
  summary["excluded"] = static_cast<int>(ill.size());
  summary["pass_rate"] = counted > 0 ? static_cast<double>(passing) / counted : 1.0;
  summary["verdict"] = failing_instances == 0 ? "pass" : "fail";
  rep["summary"] = summary;
  if (cfg.timing) rep["timing"] = {{"wall_ms", elapsed_ms(start)}, {"jobs", jobs}};
  out.exit_code = failing_instances == 0 ? 0 : 1;
  return out;
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
  const Clock::time_point start = Clock::now();
  const Instance inst = resolve_instance(cfg);
  CommandResult out;
  Json& rep = out.report;
  rep["config"] = config_echo(cfg);
  rep["versions"] = versions();
  rep["instance"] = instance_summary(inst);
  const ComplexMatrix pm = inst.p.matrix();
  const ComplexMatrix qm = inst.q.projection();
  const Index n = pm.rows();
  Json s;
  s["norm_pq"] = delta_norm(pm, qm);
  s["norm_pqperp"] = delta_norm(pm, ComplexMatrix(ComplexMatrix::Identity(n, n) - qm));
  const HalmosDecomposition h = halmos(inst.p, inst.q);
  s["dim_h01"] = h.h01.dim();
  s["dim_h02"] = h.h02.dim();
  s["dim_h1"] = h.h1.dim();
  if (h.h1.is_zero()) {
    s["block"] = "none";
  } else {
    const bool generic = is_generic_position(inst.p, inst.q);
    const Spectrum sp = generic ? spectrum(inst.p, inst.q) : [&] {
      const BlockRestriction b = restrict_to_block(inst.p, inst.q, h.h1);
      return spectrum(b.p, b.q);
    }();
    s["block"] = generic ? "h" : "h1";
    s["delta"] = sp.delta;
    s["eigenvalues_of_delta_p"] = sp.eigenvalues_of_delta_p;
    s["condition_number"] = sp.condition_number;
    s["ill_conditioned"] = sp.ill_conditioned;
  }
  rep["spectrum"] = s;
  rep["summary"] = {{"verdict", "pass"}};
  if (cfg.timing) rep["timing"] = {{"wall_ms", elapsed_ms(start)}};
  return out;
}

CommandResult cmd_formel(const RunConfig& cfg) {
  const Clock::time_point start = Clock::now();
  const Instance inst = resolve_instance(cfg);
  check_fock_cap(inst);
  const FockSpace fock(inst.p);
  CommandResult out;
  Json& rep = out.report;
  rep["config"] = config_echo(cfg);
  rep["versions"] = versions();
  rep["instance"] = instance_summary(inst);
  Json rows = Json::array();
  bool ok = true;
  for (int n = 0; n <= cfg.n_max; ++n) {
    Json row;
    row["n"] = n;
    Json counts = Json::array();
    std::uint64_t terms = 0;
    for (int p = 0; 2 * p <= n; ++p) {
      const std::uint64_t c = pairing_count(n, p);
      const std::size_t listed = enumerate_pairings(n, p).size();
      ok = ok && listed == c;
      counts.push_back({{"p", p}, {"count", c}, {"enumerated", listed}});
      terms += c;
    }
    const double dev = formel_deviation(fock, n, cfg.seed + static_cast<std::uint64_t>(n));
    ok = ok && dev <= cfg.tolerances.formel;
    row["pairings"] = counts;
    row["terms"] = terms;
    row["deviation"] = dev;
    row["tolerance"] = cfg.tolerances.formel;
    row["verdict"] = dev <= cfg.tolerances.formel ? "pass" : "fail";
    rows.push_back(row);
  }
  rep["expansion"] = rows;
  rep["summary"] = {{"verdict", ok ? "pass" : "fail"}};
  if (cfg.timing) rep["timing"] = {{"wall_ms", elapsed_ms(start)}};
  out.exit_code = ok ? 0 : 1;
  return out;
}

CommandResult run(const RunConfig& cfg) {
  switch (cfg.mode) {
    case Mode::kVerify: return cmd_verify(cfg);
    case Mode::kCampaign: return cmd_campaign(cfg);
    case Mode::kSpectrum: return cmd_spectrum(cfg);
    case Mode::kFormel: return cmd_formel(cfg);
  }
  return cmd_verify(cfg);
}

}  // namespace carlab::cli
