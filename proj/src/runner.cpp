#include "gfra/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "gfra/error.hpp"

namespace gfra {

namespace {

struct RealizationStats {
  long generated = 0;
  long delivered = 0;
  double delay_slots_sum = 0.0;          // includes unresolved age at the horizon
  double delivered_delay_ms_sum = 0.0;
  double budget_ms_sum = 0.0;
  long frames = 0;
  std::map<long, long> delay_hist;       // delivered delay in slots -> count
  std::map<long, std::pair<long, long>> cohorts;  // arrival slot -> (compliant, active)

  double throughput_raf = 0.0;
  double plr_value = 0.0;
  double acr_value = 0.0;
};

long frame_span(const ExperimentConfig& cfg) {
  if (!protocol_uses_rap(cfg.protocol) || cfg.rap.q <= 0) return cfg.frame.n_raf;
  return cfg.frame.n_raf +
         static_cast<long>(std::ceil(cfg.rap.eta * cfg.frame.n_raf));
}

// One packet's final accounting.
void consume_record(const TransmissionRecord& rec, const ExperimentConfig& cfg,
                    RealizationStats& st) {
  const long age = rec.resolved_slot - rec.arrival_slot;
  st.delay_slots_sum += static_cast<double>(age);
  bool compliant = false;
  if (rec.outcome == OutcomeKind::decoded) {
    ++st.delivered;
    const double delay_ms = static_cast<double>(age) * cfg.frame.slot_ms;
    st.delivered_delay_ms_sum += delay_ms;
    ++st.delay_hist[age];
    compliant = delay_ms <= rec.latency_budget_ms;
  }
  auto& cohort = st.cohorts[rec.arrival_slot];
  ++cohort.second;
  if (compliant) ++cohort.first;
}

class UserMinter {
public:
  UserMinter(const ExperimentConfig& cfg, Rng& rng) : cfg_(cfg), rng_(rng) {}

  TransmissionRecord mint(long arrival_slot) {
    TransmissionRecord rec;
    rec.user_id = next_id_++;
    rec.arrival_slot = arrival_slot;
    const auto& profiles = cfg_.app_profiles;
    const AppProfile& profile =
        profiles.size() == 1
            ? profiles.front()
            : profiles[rng_.below(profiles.size())];
    rec.priority = profile.priority;
    rec.latency_budget_ms = profile.latency_ms;
    return rec;
  }

private:
  const ExperimentConfig& cfg_;
  Rng& rng_;
  UserId next_id_ = 1;
};

// Device-count models bin all activation times up front; the Poisson model
// draws per slot on the fly, in slot order, so streams stay reproducible.
// With devices unset, M is sized so the mean activation rate over the
// window is G per slot.
std::vector<int> device_arrivals(const ExperimentConfig& cfg, double load,
                                 long admitted_slots, Rng& rng) {
  const double window = cfg.traffic.window_or_default();
  long devices = cfg.traffic.devices;
  if (devices <= 0)
    devices = static_cast<long>(std::llround(load * window * 1000.0 / cfg.frame.slot_ms));
  if (cfg.traffic.model == TrafficModel::beta)
    return beta_arrivals(devices, window, cfg.traffic.beta_alpha,
                         cfg.traffic.beta_beta, admitted_slots, cfg.frame.slot_ms,
                         rng);
  return uniform_arrivals(devices, window, admitted_slots, cfg.frame.slot_ms, rng);
}

RealizationStats run_realization(const ExperimentConfig& cfg, double load,
                                 long realization) {
  Rng rng(cfg.seed ^ static_cast<std::uint64_t>(realization));
  RealizationStats st;

  const long span = frame_span(cfg);
  const long total_slots = static_cast<long>(
      std::llround(cfg.sim_time_s * 1000.0 / cfg.frame.slot_ms));
  const long frames = total_slots / span;
  if (frames < 2)
    throw Error(ErrorCode::invalid_value,
                "sim_time_s too short for even one served frame");

  UserMinter minter(cfg, rng);
  const bool saloha_mode = protocol_uses_saloha(cfg.protocol);
  const bool rap_mode = protocol_uses_rap(cfg.protocol);
  const PriorityPolicy policy = protocol_is_sp(cfg.protocol) && !saloha_mode
                                    ? PriorityPolicy::degree_cap
                                    : PriorityPolicy::none;

  SalohaParams saloha_params = cfg.saloha;
  saloha_params.priority_backoff = cfg.protocol == Protocol::sp_saloha;

  const bool device_model = cfg.traffic.model != TrafficModel::poisson;

  if (saloha_mode) {
    st.frames = frames;
    std::vector<int> binned;
    if (device_model) binned = device_arrivals(cfg, load, frames * span, rng);
    SalohaSim sim(saloha_params, cfg.frame);
    for (long w = 0; w < frames; ++w) {
      std::vector<TransmissionRecord> fresh;
      for (long k = 0; k < cfg.frame.n_raf; ++k) {
        const long slot = w * cfg.frame.n_raf + k;
        const int n = device_model ? binned[static_cast<std::size_t>(slot)]
                                   : rng.poisson(load);
        for (int i = 0; i < n; ++i) fresh.push_back(minter.mint(slot));
      }
      st.generated += static_cast<long>(fresh.size());
      for (const auto& rec : fresh) st.budget_ms_sum += rec.latency_budget_ms;
      const FrameOutcome out = sim.run_window(w, fresh, rng);
      for (const auto& rec : out.records) consume_record(rec, cfg, st);
    }
    for (const auto& rec : sim.flush(frames * cfg.frame.n_raf))
      consume_record(rec, cfg, st);
  } else {
    st.frames = frames - 1;
    std::vector<int> binned;
    if (device_model) binned = device_arrivals(cfg, load, (frames - 1) * span, rng);
    for (long f = 1; f < frames; ++f) {
      // Frame f serves the users that activated during the previous window.
      const long window_base = (f - 1) * span;
      std::vector<TransmissionRecord> users;
      if (device_model) {
        for (long k = 0; k < span; ++k) {
          const long slot = window_base + k;
          const int n = binned[static_cast<std::size_t>(slot)];
          for (int i = 0; i < n; ++i) users.push_back(minter.mint(slot));
        }
      } else {
        for (long k = 0; k < cfg.frame.n_raf; ++k) {
          const long slot = window_base + k;
          const int n = rng.poisson(load);
          for (int i = 0; i < n; ++i) users.push_back(minter.mint(slot));
        }
      }
      st.generated += static_cast<long>(users.size());
      for (const auto& rec : users) st.budget_ms_sum += rec.latency_budget_ms;

      FrameOutcome out;
      if (rap_mode) {
        std::vector<UserId> ids;
        ids.reserve(users.size());
        for (const auto& rec : users) ids.push_back(rec.user_id);
        const RapTopology topo = assign_topology(ids, cfg.rap, cfg.frame, rng);
        out = rapirsa_frame(users, cfg.dist, cfg.frame, cfg.rap, topo, rng,
                            f * span, policy);
      } else {
        out = irsa_frame(users, cfg.dist, cfg.frame, rng, f * span, policy);
      }
      out.frame_index = f;
      for (const auto& rec : out.records) consume_record(rec, cfg, st);
    }
  }

  // Realization-level ratios for the confidence intervals.
  st.throughput_raf =
      st.frames > 0
          ? static_cast<double>(st.delivered) /
                static_cast<double>(st.frames * cfg.frame.n_raf)
          : 0.0;
  st.plr_value = st.generated > 0 ? plr(pdr(st.delivered, st.generated)) : 0.0;
  std::vector<std::pair<long, long>> pairs;
  pairs.reserve(st.cohorts.size());
  for (const auto& [slot, pair] : st.cohorts) pairs.push_back(pair);
  st.acr_value = acr(pairs);
  return st;
}

double half_width(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.959963984540054 * sd / std::sqrt(static_cast<double>(n));
}

MetricsReport aggregate(const ExperimentConfig& cfg, double load,
                        std::span<const RealizationStats> stats) {
  MetricsReport rep;
  rep.protocol = protocol_name(cfg.protocol);
  rep.load = load;
  rep.realizations = static_cast<long>(stats.size());

  const long span = frame_span(cfg);
  long generated = 0;
  long delivered = 0;
  long frames = 0;
  double delay_sum = 0.0;
  double ms_sum = 0.0;
  double budget_sum = 0.0;
  double acr_ratio_sum = 0.0;
  long acr_slots = 0;
  std::map<long, long> hist;
  std::vector<double> thr_values;
  std::vector<double> plr_values;
  std::vector<double> acr_values;

  for (const auto& st : stats) {
    generated += st.generated;
    delivered += st.delivered;
    frames += st.frames;
    delay_sum += st.delay_slots_sum;
    ms_sum += st.delivered_delay_ms_sum;
    budget_sum += st.budget_ms_sum;
    for (const auto& [slot, pair] : st.cohorts) {
      if (pair.second > 0) {
        acr_ratio_sum += static_cast<double>(pair.first) /
                         static_cast<double>(pair.second);
        ++acr_slots;
      }
    }
    for (const auto& [delay, count] : st.delay_hist) hist[delay] += count;
    thr_values.push_back(st.throughput_raf);
    plr_values.push_back(st.plr_value);
    acr_values.push_back(st.acr_value);
  }

  const double raf_slots = static_cast<double>(frames) * cfg.frame.n_raf;
  const double rapc_slots = static_cast<double>(frames) * static_cast<double>(span);
  rep.throughput_raf = raf_slots > 0 ? delivered / raf_slots : 0.0;
  rep.throughput_rapc = rapc_slots > 0 ? delivered / rapc_slots : 0.0;
  rep.pdr = pdr(delivered, generated);
  rep.plr = plr(rep.pdr);
  rep.mean_delay_slots =
      generated > 0 ? delay_sum / static_cast<double>(generated) : 0.0;
  const double active_per_frame =
      frames > 0 ? static_cast<double>(generated) / static_cast<double>(frames) : 0.0;
  rep.delay_per_active =
      active_per_frame > 0 ? rep.mean_delay_slots / active_per_frame : 0.0;

  long remaining = static_cast<long>(
      std::ceil(0.95 * static_cast<double>(delivered)));
  long p95_slots = 0;
  for (const auto& [delay, count] : hist) {
    remaining -= count;
    p95_slots = delay;
    if (remaining <= 0) break;
  }
  rep.delay_p95_ms =
      delivered > 0 ? static_cast<double>(p95_slots) * cfg.frame.slot_ms : 0.0;

  const double mean_budget =
      generated > 0 ? budget_sum / static_cast<double>(generated) : 0.0;
  const double mean_delivered_ms =
      delivered > 0 ? ms_sum / static_cast<double>(delivered) : 0.0;
  rep.reliability =
      reliability(rep.pdr, mean_delivered_ms, LatencyBudget{mean_budget});

  rep.acr = acr_slots > 0 ? acr_ratio_sum / static_cast<double>(acr_slots) : 0.0;

  rep.ci_throughput = half_width(thr_values);
  rep.ci_plr = half_width(plr_values);
  rep.ci_acr = half_width(acr_values);
  return rep;
}

} // namespace

std::vector<MetricsReport> run_experiment(const ExperimentConfig& cfg, int workers) {
  validate_distribution(cfg.dist);
  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = static_cast<int>(std::clamp(hw, 1u, 8u));
  }

  const std::size_t n_loads = cfg.load_sweep.size();
  const std::size_t per_load = static_cast<std::size_t>(cfg.realizations);
  std::vector<std::vector<RealizationStats>> stats(n_loads);
  for (auto& v : stats) v.resize(per_load);

  const std::size_t n_tasks = n_loads * per_load;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= n_tasks || failed.load()) break;
      const std::size_t li = task / per_load;
      const std::size_t r = task % per_load;
      try {
        stats[li][r] = run_realization(cfg, cfg.load_sweep[li],
                                       static_cast<long>(r));
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed.store(true);
        if (error_message.empty()) error_message = e.what();
      }
    }
  };

  if (workers == 1 || n_tasks == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    const int n_threads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), n_tasks));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw Error(ErrorCode::invalid_value, error_message);

  std::vector<MetricsReport> reports;
  reports.reserve(n_loads);
  for (std::size_t li = 0; li < n_loads; ++li)
    reports.push_back(aggregate(cfg, cfg.load_sweep[li], stats[li]));
  return reports;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* kCsvHeader =
    "protocol,G,throughput_raf,throughput_rapc,pdr,plr,mean_delay_slots,"
    "delay_per_active,delay_p95_ms,reliability,acr,realizations,ci_throughput,"
    "ci_plr,ci_acr";

} // namespace

std::string csv_string(std::span<const MetricsReport> reports) {
  if (reports.empty())
    throw Error(ErrorCode::invalid_argument, "no reports to write");
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& r : reports) {
    os << r.protocol << ',' << fmt(r.load) << ',' << fmt(r.throughput_raf) << ','
       << fmt(r.throughput_rapc) << ',' << fmt(r.pdr) << ',' << fmt(r.plr) << ','
       << fmt(r.mean_delay_slots) << ',' << fmt(r.delay_per_active) << ','
       << fmt(r.delay_p95_ms) << ',' << fmt(r.reliability) << ',' << fmt(r.acr)
       << ',' << r.realizations << ',' << fmt(r.ci_throughput) << ','
       << fmt(r.ci_plr) << ',' << fmt(r.ci_acr) << "\n";
  }
  return os.str();
}

void write_csv(std::span<const MetricsReport> reports, const std::string& path) {
  const std::string body = csv_string(reports);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
  out << body;
  if (!out) throw Error(ErrorCode::io_error, "failed writing " + path);
}

std::vector<MetricsReport> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw Error(ErrorCode::invalid_value, path + " is not a results CSV");
  std::vector<MetricsReport> reports;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 15)
      throw Error(ErrorCode::invalid_value, "malformed CSV row: " + line);
    MetricsReport r;
    r.protocol = cells[0];
    r.load = std::stod(cells[1]);
    r.throughput_raf = std::stod(cells[2]);
    r.throughput_rapc = std::stod(cells[3]);
    r.pdr = std::stod(cells[4]);
    r.plr = std::stod(cells[5]);
    r.mean_delay_slots = std::stod(cells[6]);
    r.delay_per_active = std::stod(cells[7]);
    r.delay_p95_ms = std::stod(cells[8]);
    r.reliability = std::stod(cells[9]);
    r.acr = std::stod(cells[10]);
    r.realizations = std::stol(cells[11]);
    r.ci_throughput = std::stod(cells[12]);
    r.ci_plr = std::stod(cells[13]);
    r.ci_acr = std::stod(cells[14]);
    reports.push_back(std::move(r));
  }
  return reports;
}

void emit_plot_data(std::span<const MetricsReport> reports, const std::string& kind,
                    const std::string& out_dir) {
  double MetricsReport::* field = nullptr;
  if (kind == "throughput") field = &MetricsReport::throughput_raf;
  else if (kind == "plr") field = &MetricsReport::plr;
  else if (kind == "delay") field = &MetricsReport::mean_delay_slots;
  else if (kind == "acr") field = &MetricsReport::acr;
  else throw Error(ErrorCode::invalid_value, "unknown plot kind \"" + kind + "\"");

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);

  auto open_series = [&](const std::string& name) {
    const std::string path = out_dir + "/" + kind + "_" + name + ".dat";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
    return out;
  };

  std::map<std::string, std::vector<const MetricsReport*>> by_protocol;
  for (const auto& r : reports) by_protocol[r.protocol].push_back(&r);
  for (const auto& [protocol, rows] : by_protocol) {
    auto out = open_series(protocol);
    for (const auto* r : rows) out << fmt(r->load) << ' ' << fmt(r->*field) << "\n";
  }

  if (kind == "throughput") {
    const DegreeDistribution dist = DegreeDistribution::lambda8();
    auto theory = open_series("saloha_theory");
    auto asym = open_series("irsa_asymptotic");
    for (int i = 1; i <= 100; ++i) {
      const double g = 0.02 * i;
      theory << fmt(g) << ' ' << fmt(saloha_theory(g)) << "\n";
      asym << fmt(g) << ' '
           << fmt(g * (1.0 - irsa_density_evolution(dist, g, 500))) << "\n";
    }
  }
}

} // namespace gfra
