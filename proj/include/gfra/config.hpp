#ifndef GFRA_CONFIG_HPP
#define GFRA_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gfra/degree_distribution.hpp"
#include "gfra/frame.hpp"
#include "gfra/protocols.hpp"
#include "gfra/traffic.hpp"

namespace gfra {

enum class Protocol { saloha, irsa, rapirsa, sp_saloha, sp_irsa, sp_rapirsa };

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

bool protocol_uses_rap(Protocol p);
bool protocol_uses_saloha(Protocol p);
bool protocol_is_sp(Protocol p);

// One experiment: a protocol swept over a list of loads, a fixed number of
// seeded Monte Carlo realizations per load.
struct ExperimentConfig {
  Protocol protocol = Protocol::irsa;
  FrameParams frame;
  DegreeDistribution dist = DegreeDistribution::lambda8();
  RapParams rap;
  SalohaParams saloha;
  TrafficConfig traffic;
  std::vector<double> load_sweep;
  long realizations = 100;
  double sim_time_s = 10.0;
  std::uint64_t seed = 0;
  std::vector<AppProfile> app_profiles;  // users draw uniformly when > 1
  std::string output_path = "results.csv";
  bool has_rap_section = false;
};

// Strict parse of the JSON experiment description: unknown keys are rejected,
// omitted fields take the simulation-parameter defaults. Throws Error with
// codes syntax_error / unknown_key / missing_section / invalid_value.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

} // namespace gfra

#endif
