#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgeprog/profiles/units.hpp"

namespace edgeprog::profiles {

// A concrete device as seen by the cost model. Profile rows may be keyed by
// alias, by platform name, or by the wildcard "*"; lookups try them in
// that order.
struct Device {
  std::string alias;
  std::string platform;
  bool is_edge = false;

  bool operator==(const Device&) const = default;
};

struct PowerRow {
  Power compute;  // P_C, productive computation
  Power tx;       // P_TX
  Power rx;       // P_RX
};

struct LinkRow {
  std::string protocol;             // k
  std::int64_t payload_bytes = 1;   // r, maximum packet payload
  Duration packet_time;             // t, per-packet transmission time
  std::optional<double> ema_alpha;  // reserved for online re-estimation; unused by the optimizer
};

// Payload sizes for block outputs, keyed by interface, model, or type name.
class TypeSizeTable {
 public:
  TypeSizeTable();  // seeded with the built-in scalar types

  void set(const std::string& key, std::int64_t bytes) { sizes_[key] = bytes; }
  std::optional<std::int64_t> find(const std::string& key) const;
  const std::map<std::string, std::int64_t>& entries() const { return sizes_; }

 private:
  std::map<std::string, std::int64_t> sizes_;
};

// Parameters of the loading-agent lifetime model. Units are in the names.
struct LifetimeParams {
  double voltage_v = 3.0;
  double battery_mah = 2200.0;
  double duty_cycle = 0.001;
  double radio_mw = 56.4;
  double mcu_mw = 5.4;
  double dissemination_days = 10.0;
  double heartbeat_mj = 6.6;  // energy of one heartbeat exchange
  double load_mj = 800.0;     // energy of one binary load
  double receive_ms_per_byte = 0.064;
  double binary_bytes = 4096.0;
  double self_discharge_per_day = 0.33 / 365.0;  // r_sd
};

class ProfileSet {
 public:
  // --- construction ---------------------------------------------------
  void set_power(const std::string& device, PowerRow row) { power_[device] = row; }
  void set_compute(const std::string& key, const std::string& device, Duration t) {
    compute_[{key, device}] = t;
  }
  // Overrides the functionality key for one block id.
  void set_block_compute(int block_id, const std::string& device, Duration t) {
    compute_[{block_key(block_id), device}] = t;
  }
  void set_link(const std::string& from, const std::string& to, LinkRow row) {
    links_[{from, to}] = std::move(row);
  }
  TypeSizeTable& sizes() { return sizes_; }
  LifetimeParams& lifetime() { return lifetime_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // --- lookups --------------------------------------------------------
  const std::string& name() const { return name_; }
  const TypeSizeTable& sizes() const { return sizes_; }
  const LifetimeParams& lifetime() const { return lifetime_; }

  // Compute time of a functionality on a device; a per-block override wins.
  std::optional<Duration> compute_time(const std::string& key, int block_id,
                                       const Device& device) const;
  // Throws UnknownDevice when no row matches. Edge devices always read zero.
  PowerRow power(const Device& device) const;
  bool has_power(const Device& device) const;
  // Throws UnknownLink when no row matches.
  const LinkRow& link(const Device& from, const Device& to) const;
  const LinkRow* find_link(const Device& from, const Device& to) const;

  // Copy with every compute time and per-packet time multiplied by `factor`.
  ProfileSet scaled_time(std::int64_t factor) const;

  const std::map<std::pair<std::string, std::string>, Duration>& compute_entries() const {
    return compute_;
  }
  const std::map<std::string, PowerRow>& power_entries() const { return power_; }
  const std::map<std::pair<std::string, std::string>, LinkRow>& link_entries() const {
    return links_;
  }

  static std::string block_key(int block_id) { return "block:" + std::to_string(block_id); }

 private:
  std::string name_;
  std::map<std::string, PowerRow> power_;
  std::map<std::pair<std::string, std::string>, Duration> compute_;
  std::map<std::pair<std::string, std::string>, LinkRow> links_;
  TypeSizeTable sizes_;
  LifetimeParams lifetime_;
};

// Profile text format: sections [devices], [compute], [links], [sizes],
// [lifetime]; see README.md for the field-by-field schema.
ProfileSet parse_profiles(const std::string& text, const std::string& source_name = "<input>");
ProfileSet load_profiles(const std::string& path);

// ceil(q / r) * t between different devices, zero on the same device.
Duration network_time(std::int64_t payload_bytes, const Device& from, const Device& to,
                      const ProfileSet& profiles);

// network_time * (P_TX[from] + P_RX[to]).
Energy transfer_energy(std::int64_t payload_bytes, const Device& from, const Device& to,
                       const ProfileSet& profiles);

// Node lifetime in days for heartbeat period `heartbeat_s`.
double lifetime_days(const LifetimeParams& p, double heartbeat_s);
// The heartbeat_s -> infinity limit.
double lifetime_days_without_heartbeat(const LifetimeParams& p);

}  // namespace edgeprog::profiles
