#include "gfra/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gfra/error.hpp"

namespace gfra {

using nlohmann::json;

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::saloha: return "saloha";
    case Protocol::irsa: return "irsa";
    case Protocol::rapirsa: return "rapirsa";
    case Protocol::sp_saloha: return "sp-saloha";
    case Protocol::sp_irsa: return "sp-irsa";
    case Protocol::sp_rapirsa: return "sp-rapirsa";
  }
  return "?";
}

Protocol protocol_from_name(const std::string& name) {
  for (Protocol p : {Protocol::saloha, Protocol::irsa, Protocol::rapirsa,
                     Protocol::sp_saloha, Protocol::sp_irsa, Protocol::sp_rapirsa}) {
    if (name == protocol_name(p)) return p;
  }
  throw Error(ErrorCode::invalid_value, "unknown protocol \"" + name + "\"");
}

bool protocol_uses_rap(Protocol p) {
  return p == Protocol::rapirsa || p == Protocol::sp_rapirsa;
}

bool protocol_uses_saloha(Protocol p) {
  return p == Protocol::saloha || p == Protocol::sp_saloha;
}

bool protocol_is_sp(Protocol p) {
  return p == Protocol::sp_saloha || p == Protocol::sp_irsa ||
         p == Protocol::sp_rapirsa;
}

namespace {

[[noreturn]] void fail_value(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::invalid_value, "invalid value for \"" + field + "\": " + why);
}

void reject_unknown(const json& obj, const std::string& section,
                    const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) {
      const std::string where = section.empty() ? key : section + "." + key;
      throw Error(ErrorCode::unknown_key, "unknown key \"" + where + "\"");
    }
  }
}

double get_number(const json& obj, const std::string& field, double fallback) {
  if (!obj.contains(field)) return fallback;
  const auto& v = obj.at(field);
  if (!v.is_number()) fail_value(field, "expected a number");
  return v.get<double>();
}

long get_integer(const json& obj, const std::string& field, long fallback) {
  if (!obj.contains(field)) return fallback;
  const auto& v = obj.at(field);
  if (!v.is_number_integer()) fail_value(field, "expected an integer");
  return v.get<long>();
}

bool get_bool(const json& obj, const std::string& field, bool fallback) {
  if (!obj.contains(field)) return fallback;
  const auto& v = obj.at(field);
  if (!v.is_boolean()) fail_value(field, "expected a boolean");
  return v.get<bool>();
}

AppProfile parse_profile_entry(const json& v) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    for (const auto& p : sg_app_profiles())
      if (p.name == name) return p;
    fail_value("app_profile", "no application profile named \"" + name + "\"");
  }
  if (!v.is_object()) fail_value("app_profile", "expected a name or an object");
  reject_unknown(v, "app_profile", {"name", "latency_ms", "priority"});
  AppProfile p;
  p.name = v.contains("name") ? v.at("name").get<std::string>() : "custom";
  p.latency_ms = get_number(v, "latency_ms", 0.0);
  p.priority = static_cast<int>(get_integer(v, "priority", 0));
  if (p.latency_ms <= 0.0) fail_value("app_profile.latency_ms", "must be > 0");
  if (p.priority < 0 || p.priority > 100)
    fail_value("app_profile.priority", "must be in [0, 100]");
  return p;
}

std::vector<AppProfile> parse_profiles(const json& v) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "table1") return sg_app_profiles();
    if (name == "table1_relaxed") return sg_app_profiles_relaxed();
    return {parse_profile_entry(v)};
  }
  if (v.is_array()) {
    std::vector<AppProfile> out;
    for (const auto& entry : v) out.push_back(parse_profile_entry(entry));
    if (out.empty()) fail_value("app_profile", "empty profile list");
    return out;
  }
  return {parse_profile_entry(v)};
}

DegreeDistribution parse_dist(const json& v, const json& root) {
  if (!v.is_object() || v.empty())
    fail_value("dist", "expected a {degree: probability} mapping");
  std::map<int, double> mass;
  int max_degree = 0;
  for (const auto& [key, value] : v.items()) {
    int d = 0;
    try {
      std::size_t pos = 0;
      d = std::stoi(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail_value("dist", "degree key \"" + key + "\" is not an integer");
    }
    if (!value.is_number()) fail_value("dist", "probability must be a number");
    mass[d] = value.get<double>();
    max_degree = std::max(max_degree, d);
  }
  const int d_max =
      static_cast<int>(get_integer(root, "d_max", static_cast<long>(max_degree)));
  DegreeDistribution dist(std::move(mass), d_max);
  validate_distribution(dist);
  return dist;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    long line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    std::ostringstream os;
    os << "syntax error at line " << line << ": " << e.what();
    throw Error(ErrorCode::syntax_error, os.str());
  }
  if (!root.is_object())
    throw Error(ErrorCode::syntax_error, "top-level config must be an object");

  reject_unknown(root, "",
                 {"protocol", "seed", "realizations", "sim_time_s", "load_sweep",
                  "frame", "dist", "d_max", "rap", "saloha", "traffic",
                  "app_profile", "output_path"});

  ExperimentConfig cfg;

  if (!root.contains("protocol"))
    throw Error(ErrorCode::missing_section, "missing \"protocol\"");
  if (!root.at("protocol").is_string()) fail_value("protocol", "expected a string");
  cfg.protocol = protocol_from_name(root.at("protocol").get<std::string>());

  if (!root.contains("seed"))
    throw Error(ErrorCode::missing_section, "missing \"seed\"");
  if (!root.at("seed").is_number_integer()) fail_value("seed", "expected an integer");
  cfg.seed = root.at("seed").get<std::uint64_t>();

  if (!root.contains("load_sweep"))
    throw Error(ErrorCode::missing_section, "missing \"load_sweep\"");
  if (!root.at("load_sweep").is_array() || root.at("load_sweep").empty())
    fail_value("load_sweep", "expected a non-empty array of loads");
  for (const auto& g : root.at("load_sweep")) {
    if (!g.is_number()) fail_value("load_sweep", "loads must be numbers");
    const double v = g.get<double>();
    if (v <= 0.0) fail_value("load_sweep", "loads must be > 0");
    cfg.load_sweep.push_back(v);
  }

  cfg.realizations = get_integer(root, "realizations", 100);
  if (cfg.realizations < 1) fail_value("realizations", "must be >= 1");
  cfg.sim_time_s = get_number(root, "sim_time_s", 10.0);
  if (cfg.sim_time_s <= 0.0) fail_value("sim_time_s", "must be > 0");

  if (root.contains("frame")) {
    const auto& f = root.at("frame");
    if (!f.is_object()) fail_value("frame", "expected an object");
    reject_unknown(f, "frame", {"n_raf", "slot_ms", "max_sic_iters"});
    cfg.frame.n_raf = static_cast<int>(get_integer(f, "n_raf", 50));
    cfg.frame.slot_ms = get_number(f, "slot_ms", 1.0);
    cfg.frame.max_sic_iters = static_cast<int>(get_integer(f, "max_sic_iters", 20));
    if (cfg.frame.n_raf < 1) fail_value("frame.n_raf", "must be >= 1");
    if (cfg.frame.slot_ms <= 0.0) fail_value("frame.slot_ms", "must be > 0");
    if (cfg.frame.max_sic_iters < 1) fail_value("frame.max_sic_iters", "must be >= 1");
  }

  if (root.contains("dist")) cfg.dist = parse_dist(root.at("dist"), root);

  if (root.contains("rap")) {
    const auto& r = root.at("rap");
    if (!r.is_object()) fail_value("rap", "expected an object");
    reject_unknown(r, "rap", {"q", "eta", "p_vis"});
    cfg.rap.q = static_cast<int>(get_integer(r, "q", 0));
    cfg.rap.eta = get_number(r, "eta", 0.25);
    cfg.rap.p_vis = get_number(r, "p_vis", 0.5);
    if (cfg.rap.q < 0) fail_value("rap.q", "must be >= 0");
    if (cfg.rap.eta < 0.0 || cfg.rap.eta >= 1.0) fail_value("rap.eta", "must be in [0, 1)");
    if (cfg.rap.p_vis < 0.0 || cfg.rap.p_vis > 1.0)
      fail_value("rap.p_vis", "must be in [0, 1]");
    cfg.has_rap_section = true;
  } else if (protocol_uses_rap(cfg.protocol)) {
    throw Error(ErrorCode::missing_section,
                std::string("protocol ") + protocol_name(cfg.protocol) +
                    " requires a \"rap\" section");
  }

  if (root.contains("saloha")) {
    const auto& s = root.at("saloha");
    if (!s.is_object()) fail_value("saloha", "expected an object");
    reject_unknown(s, "saloha", {"backoff_limit", "fresh_only"});
    cfg.saloha.backoff_limit = static_cast<int>(get_integer(s, "backoff_limit", 50));
    cfg.saloha.fresh_only = get_bool(s, "fresh_only", false);
    if (cfg.saloha.backoff_limit < 1) fail_value("saloha.backoff_limit", "must be >= 1");
  }

  if (root.contains("traffic")) {
    const auto& t = root.at("traffic");
    if (!t.is_object()) fail_value("traffic", "expected an object");
    reject_unknown(t, "traffic",
                   {"model", "devices", "window_s", "beta_alpha", "beta_beta",
                    "packet_size_bytes"});
    if (t.contains("model")) {
      const std::string m = t.at("model").get<std::string>();
      if (m == "poisson") cfg.traffic.model = TrafficModel::poisson;
      else if (m == "beta") cfg.traffic.model = TrafficModel::beta;
      else if (m == "uniform") cfg.traffic.model = TrafficModel::uniform;
      else fail_value("traffic.model", "expected poisson, beta, or uniform");
    }
    cfg.traffic.devices = get_integer(t, "devices", 0);
    cfg.traffic.window_s = get_number(t, "window_s", 0.0);
    cfg.traffic.beta_alpha = get_number(t, "beta_alpha", 3.0);
    cfg.traffic.beta_beta = get_number(t, "beta_beta", 4.0);
    cfg.traffic.packet_size_bytes =
        static_cast<int>(get_integer(t, "packet_size_bytes", 200));
    if (cfg.traffic.devices < 0) fail_value("traffic.devices", "must be >= 0");
    if (cfg.traffic.window_s < 0.0) fail_value("traffic.window_s", "must be >= 0");
    if (cfg.traffic.beta_alpha <= 0.0 || cfg.traffic.beta_beta <= 0.0)
      fail_value("traffic.beta_alpha", "shape parameters must be > 0");
    if (cfg.traffic.packet_size_bytes < 1)
      fail_value("traffic.packet_size_bytes", "must be >= 1");
  }

  if (root.contains("app_profile")) {
    cfg.app_profiles = parse_profiles(root.at("app_profile"));
  } else if (protocol_is_sp(cfg.protocol)) {
    throw Error(ErrorCode::missing_section,
                std::string("protocol ") + protocol_name(cfg.protocol) +
                    " requires an \"app_profile\" entry");
  } else {
    for (const auto& p : sg_app_profiles())
      if (p.name == "ami") cfg.app_profiles = {p};
  }

  if (root.contains("output_path")) {
    if (!root.at("output_path").is_string()) fail_value("output_path", "expected a string");
    cfg.output_path = root.at("output_path").get<std::string>();
  }

  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

} // namespace gfra
