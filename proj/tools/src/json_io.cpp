#include <cmath>

#include "carlab/cli/runner.hpp"
#include "carlab/errors.hpp"

namespace carlab::cli {

void ToleranceTable::set_all(double tol) {
  car = formel = structural = graph = modular = conjugation = duality = tol;
}

Json to_json(const CheckRecord& r) {
  Json j;
  j["name"] = r.name;
  j["identity"] = r.identity;
  j["defect"] = r.defect;
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.verdict;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kVerify: return "verify";
    case Mode::kCampaign: return "campaign";
    case Mode::kSpectrum: return "spectrum";
    case Mode::kFormel: return "formel";
  }
  return "verify";
}

Mode parse_mode(const std::string& s) {
  if (s == "verify") return Mode::kVerify;
  if (s == "campaign" || s == "random-campaign") return Mode::kCampaign;
  if (s == "spectrum") return Mode::kSpectrum;
  if (s == "formel" || s == "formel-check") return Mode::kFormel;
  throw ConfigError("unknown mode '" + s + "'");
}

template <typename T>
T get_or(const Json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

Json tolerances_json(const ToleranceTable& t) {
  Json j;
  j["car"] = t.car;
  j["formel"] = t.formel;
  j["structural"] = t.structural;
  j["graph"] = t.graph;
  j["modular"] = t.modular;
  j["conjugation"] = t.conjugation;
  j["duality"] = t.duality;
  return j;
}

}  // namespace

RunConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const char* known[] = {"mode",  "instance", "seed",   "dim",    "count",
                                "n_max", "jobs",     "timing", "output", "tolerances"};
  for (const auto& item : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw ConfigError("unknown config key '" + item.key() + "'");
  }
  RunConfig cfg;
  cfg.mode = parse_mode(get_or<std::string>(doc, "mode", "verify"));
  if (doc.contains("instance")) {
    const Json& inst = doc.at("instance");
    if (inst.is_string()) {
      cfg.builtin = inst.get<std::string>();
    } else if (inst.is_object()) {
      cfg.inline_instance = inst;
    } else {
      throw ConfigError("'instance' must be a built-in name or an object");
    }
  }
  const auto seed = get_or<std::int64_t>(doc, "seed", 1);
  if (seed < 0) throw ConfigError("seed must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.dim = get_or<Index>(doc, "dim", 4);
  if (cfg.dim < 2 || cfg.dim % 2 != 0) throw ConfigError("dim must be even and at least 2");
  cfg.count = get_or<int>(doc, "count", 10);
  if (cfg.count < 1) throw ConfigError("count must be positive");
  cfg.n_max = get_or<int>(doc, "n_max", 4);
  if (cfg.n_max < 0 || cfg.n_max > 8) throw ConfigError("n_max must lie in [0, 8]");
  cfg.jobs = get_or<int>(doc, "jobs", 1);
  if (cfg.jobs < 1) throw ConfigError("jobs must be positive");
  cfg.timing = get_or<bool>(doc, "timing", false);
  cfg.output_path = get_or<std::string>(doc, "output", "");
  if (doc.contains("tolerances")) {
    const Json& t = doc.at("tolerances");
    if (t.is_number()) {
      cfg.tolerances.set_all(t.get<double>());
    } else if (t.is_object()) {
      ToleranceTable& tt = cfg.tolerances;
      tt.car = get_or<double>(t, "car", tt.car);
      tt.formel = get_or<double>(t, "formel", tt.formel);
      tt.structural = get_or<double>(t, "structural", tt.structural);
      tt.graph = get_or<double>(t, "graph", tt.graph);
      tt.modular = get_or<double>(t, "modular", tt.modular);
      tt.conjugation = get_or<double>(t, "conjugation", tt.conjugation);
      tt.duality = get_or<double>(t, "duality", tt.duality);
    } else {
      throw ConfigError("'tolerances' must be a number or an object");
    }
  }
  return cfg;
}

Json config_echo(const RunConfig& cfg) {
  Json j;
  j["mode"] = mode_name(cfg.mode);
  if (!cfg.builtin.empty()) {
    j["instance"] = cfg.builtin;
  } else if (cfg.inline_instance) {
    j["instance"] = *cfg.inline_instance;
  }
  j["seed"] = cfg.seed;
  j["dim"] = cfg.dim;
  if (cfg.mode == Mode::kCampaign) {
    j["count"] = cfg.count;
    j["jobs"] = cfg.jobs;
  }
  j["n_max"] = cfg.n_max;
  j["tolerances"] = tolerances_json(cfg.tolerances);
  return j;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ConfigError("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ConfigError("matrix rows must have equal length");
    }
    for (Index k = 0; k < cols; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (e.is_number()) {
        m(i, k) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError("matrix entries must be numbers or [re, im] pairs");
      }
      if (!std::isfinite(m(i, k).real()) || !std::isfinite(m(i, k).imag())) {
        throw ConfigError("matrix entries must be finite");
      }
    }
  }
  return m;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["id"] = inst.id;
  j["gamma_kernel"] = matrix_to_json(inst.space.gamma_kernel());
  j["P"] = matrix_to_json(inst.p.matrix());
  j["q_frame"] = matrix_to_json(inst.q.subspace().frame());
  return j;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("instance must be an object");
  for (const char* key : {"gamma_kernel", "P", "q_frame"}) {
    if (!j.contains(key)) throw ConfigError(std::string("instance lacks '") + key + "'");
  }
  const std::string id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>()
                                                                 : std::string("inline");
  try {
    const CarSpace space(matrix_from_json(j["gamma_kernel"]));
    const ComplexMatrix p = matrix_from_json(j["P"]);
    const ComplexMatrix q = matrix_from_json(j["q_frame"]);
    if (p.rows() != space.dim() || q.rows() != space.dim()) {
      throw ConfigError("instance matrices disagree on dim h");
    }
    return Instance{id, space, BasisProjection(space, p),
                    InvariantSubspace(space, Subspace::span_of(q))};
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid instance: ") + e.what());
  }
}

Instance resolve_instance(const RunConfig& cfg) {
  if (!cfg.builtin.empty()) {
    try {
      return builtin_instance(cfg.builtin);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.inline_instance) return instance_from_json(*cfg.inline_instance);
  return random_generic_instance(cfg.dim, cfg.seed);
}

}  // namespace carlab::cli
