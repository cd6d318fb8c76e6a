#include "edgeprog/profiles/profiles.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "edgeprog/error.hpp"

namespace edgeprog::profiles {

namespace {

std::array<std::string, 3> lookup_names(const Device& d) {
  return {d.alias, d.platform, "*"};
}

class ProfileParser {
 public:
  ProfileParser(const std::string& text, std::string source)
      : text_(text), source_(std::move(source)) {}

  ProfileSet run() {
    std::istringstream in(text_);
    std::string raw;
    bool any_content = false;
    bool have_devices = false;
    while (std::getline(in, raw)) {
      ++line_;
      std::vector<std::string> toks = tokenize(strip_comment(raw));
      if (toks.empty()) continue;
      any_content = true;
      if (toks.size() == 1 && toks[0].front() == '[' && toks[0].back() == ']') {
        section_ = toks[0].substr(1, toks[0].size() - 2);
        if (section_ != "devices" && section_ != "compute" && section_ != "links" &&
            section_ != "sizes" && section_ != "lifetime") {
          schema("unknown section [" + section_ + "]");
        }
        continue;
      }
      if (section_.empty()) schema("entry outside of any section");
      if (section_ == "devices") {
        device(toks);
        have_devices = true;
      } else if (section_ == "compute") {
        compute(toks);
      } else if (section_ == "links") {
        link(toks);
      } else if (section_ == "sizes") {
        size(toks);
      } else {
        lifetime(toks);
      }
    }
    if (!any_content) schema("profile is empty");
    if (!have_devices) schema("profile has no [devices] entries");
    validate_lifetime();
    return std::move(out_);
  }

 private:
  static std::string strip_comment(const std::string& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
        return line.substr(0, i);
      }
    }
    return line;
  }

  static std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
  }

  [[noreturn]] void schema(const std::string& msg) const {
    throw Error(ErrorKind::SchemaError, source_ + ":" + std::to_string(line_) + ": " + msg);
  }

  [[noreturn]] void negative(const std::string& field) const {
    throw Error(ErrorKind::NegativeValue, source_ + ":" + std::to_string(line_) +
                                              ": NegativeValue(" + field + ")");
  }

  std::int64_t fixed(const std::string& text, int decimals, const std::string& field) const {
    std::int64_t v = 0;
    if (!parse_fixed(text, decimals, v)) schema("malformed number '" + text + "' for " + field);
    if (v < 0) negative(field);
    return v;
  }

  std::int64_t integer(const std::string& text, const std::string& field) const {
    if (text.find('.') != std::string::npos) schema(field + " must be an integer");
    return fixed(text, 0, field);
  }

  std::map<std::string, std::string> keyvals(const std::vector<std::string>& toks,
                                             std::size_t first) const {
    std::map<std::string, std::string> kv;
    for (std::size_t i = first; i < toks.size(); ++i) {
      auto eq = toks[i].find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == toks[i].size()) {
        schema("expected key=value, found '" + toks[i] + "'");
      }
      if (!kv.emplace(toks[i].substr(0, eq), toks[i].substr(eq + 1)).second) {
        schema("duplicate field '" + toks[i].substr(0, eq) + "'");
      }
    }
    return kv;
  }

  static std::string take(std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) return {};
    std::string v = it->second;
    kv.erase(it);
    return v;
  }

  void device(const std::vector<std::string>& toks) {
    if (toks.size() < 2) schema("device row needs a name and P_C/P_TX/P_RX");
    auto kv = keyvals(toks, 1);
    PowerRow row;
    std::string pc = take(kv, "P_C"), tx = take(kv, "P_TX"), rx = take(kv, "P_RX");
    if (pc.empty() || tx.empty() || rx.empty()) schema("device row needs P_C, P_TX and P_RX");
    if (!kv.empty()) schema("unknown device field '" + kv.begin()->first + "'");
    row.compute = Power{fixed(pc, 3, "P_C")};
    row.tx = Power{fixed(tx, 3, "P_TX")};
    row.rx = Power{fixed(rx, 3, "P_RX")};
    if (toks[0] == "Edge" && (row.compute.uw || row.tx.uw || row.rx.uw)) {
      schema("edge power row must be exactly zero");
    }
    out_.set_power(toks[0], row);
  }

  void compute(const std::vector<std::string>& toks) {
    if (toks.size() != 3) schema("compute row is: <functionality|block:ID> <device> <time_ms>");
    out_.set_compute(toks[0], toks[1], Duration{fixed(toks[2], 3, "time_ms")});
  }

  void link(const std::vector<std::string>& toks) {
    if (toks.size() < 3) schema("link row is: <from> <to> protocol=.. r=.. t=..");
    auto kv = keyvals(toks, 2);
    LinkRow row;
    row.protocol = take(kv, "protocol");
    std::string r = take(kv, "r"), t = take(kv, "t"), ema = take(kv, "ema");
    if (row.protocol.empty() || r.empty() || t.empty()) {
      schema("link row needs protocol, r and t");
    }
    if (!kv.empty()) schema("unknown link field '" + kv.begin()->first + "'");
    row.payload_bytes = integer(r, "r");
    if (row.payload_bytes < 1) schema("r must be at least 1 byte");
    row.packet_time = Duration{fixed(t, 3, "t")};
    if (!ema.empty()) {
      double a = number(ema, "ema");
      if (a <= 0 || a > 1) schema("ema must be in (0, 1]");
      row.ema_alpha = a;
    }
    out_.set_link(toks[0], toks[1], std::move(row));
  }

  void size(const std::vector<std::string>& toks) {
    if (toks.size() != 2) schema("size row is: <key> <bytes>");
    std::int64_t b = integer(toks[1], "bytes");
    if (b < 1) schema("payload size must be at least 1 byte");
    out_.sizes().set(toks[0], b);
  }

  double number(const std::string& text, const std::string& field) const {
    auto parse = [&](const std::string& s) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        schema("malformed number '" + s + "' for " + field);
      }
      if (used != s.size() || !std::isfinite(v)) schema("malformed number '" + s + "' for " + field);
      return v;
    };
    double v = 0;
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      v = parse(text);
    } else {
      double den = parse(text.substr(slash + 1));
      if (den == 0) schema("division by zero in " + field);
      v = parse(text.substr(0, slash)) / den;
    }
    if (v < 0) negative(field);
    return v;
  }

  void lifetime(const std::vector<std::string>& toks) {
    // Accept both `key=value` and `key = value`.
    std::string joined;
    for (const auto& t : toks) joined += t;
    auto eq = joined.find('=');
    if (eq == std::string::npos) schema("lifetime row is: <key>=<value>");
    std::string key = joined.substr(0, eq);
    double v = number(joined.substr(eq + 1), key);
    LifetimeParams& p = out_.lifetime();
    static const std::map<std::string, double LifetimeParams::*> fields = {
        {"U_V", &LifetimeParams::voltage_v},
        {"B_mAh", &LifetimeParams::battery_mah},
        {"duty_cycle", &LifetimeParams::duty_cycle},
        {"P_radio_mW", &LifetimeParams::radio_mw},
        {"P_MCU_mW", &LifetimeParams::mcu_mw},
        {"t_dissem_days", &LifetimeParams::dissemination_days},
        {"e_heartbeat_mJ", &LifetimeParams::heartbeat_mj},
        {"E_load_mJ", &LifetimeParams::load_mj},
        {"t_p_ms_per_byte", &LifetimeParams::receive_ms_per_byte},
        {"s_p_bytes", &LifetimeParams::binary_bytes},
        {"r_sd_per_day", &LifetimeParams::self_discharge_per_day},
    };
    auto it = fields.find(key);
    if (it == fields.end()) schema("unknown lifetime field '" + key + "'");
    p.*(it->second) = v;
  }

  void validate_lifetime() const {
    const LifetimeParams& p = out_.lifetime();
    auto positive = [&](double v, const char* field) {
      if (!(v > 0)) schema(std::string("lifetime field ") + field + " must be positive");
    };
    positive(p.voltage_v, "U_V");
    positive(p.battery_mah, "B_mAh");
    positive(p.dissemination_days, "t_dissem_days");
    if (!(p.duty_cycle > 0 && p.duty_cycle <= 1)) schema("duty_cycle must be in (0, 1]");
    if (!(p.self_discharge_per_day >= 0 && p.self_discharge_per_day < 1)) {
      schema("r_sd_per_day must be in [0, 1)");
    }
  }

  const std::string& text_;
  std::string source_;
  std::string section_;
  int line_ = 0;
  ProfileSet out_;
};

}  // namespace

TypeSizeTable::TypeSizeTable() {
  sizes_ = {{"bool", 1},    {"bool_t", 1},   {"int8_t", 1},  {"uint8_t", 1}, {"int16_t", 2},
            {"uint16_t", 2}, {"int_t", 4},    {"int32_t", 4}, {"uint_t", 4},  {"float_t", 4},
            {"long_t", 8},   {"double_t", 8}, {"numeric", 4}};
}

std::optional<std::int64_t> TypeSizeTable::find(const std::string& key) const {
  auto it = sizes_.find(key);
  if (it == sizes_.end()) return std::nullopt;
  return it->second;
}

std::optional<Duration> ProfileSet::compute_time(const std::string& key, int block_id,
                                                 const Device& device) const {
  const auto names = lookup_names(device);
  for (const std::string& k : {block_key(block_id), key}) {
    for (const auto& n : names) {
      auto it = compute_.find({k, n});
      if (it != compute_.end()) return it->second;
    }
  }
  return std::nullopt;
}

bool ProfileSet::has_power(const Device& device) const {
  if (device.is_edge) return true;
  for (const auto& n : lookup_names(device)) {
    if (power_.count(n)) return true;
  }
  return false;
}

PowerRow ProfileSet::power(const Device& device) const {
  if (device.is_edge) return PowerRow{};
  for (const auto& n : lookup_names(device)) {
    auto it = power_.find(n);
    if (it != power_.end()) return it->second;
  }
  throw Error(ErrorKind::UnknownDevice,
              "UnknownDevice(" + device.alias + "): no [devices] row for alias, platform '" +
                  device.platform + "' or '*'");
}

const LinkRow* ProfileSet::find_link(const Device& from, const Device& to) const {
  const auto a = lookup_names(from);
  const auto b = lookup_names(to);
  // Most specific first: alias/platform on both sides, then one wildcard side.
  static constexpr std::array<std::pair<int, int>, 9> order = {
      {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}};
  for (auto [i, j] : order) {
    auto it = links_.find({a[i], b[j]});
    if (it != links_.end()) return &it->second;
  }
  return nullptr;
}

const LinkRow& ProfileSet::link(const Device& from, const Device& to) const {
  if (const LinkRow* row = find_link(from, to)) return *row;
  throw Error(ErrorKind::UnknownLink,
              "UnknownLink(" + from.alias + ", " + to.alias + "): no [links] row");
}

ProfileSet ProfileSet::scaled_time(std::int64_t factor) const {
  ProfileSet out = *this;
  for (auto& [k, t] : out.compute_) t = t * factor;
  for (auto& [k, l] : out.links_) l.packet_time = l.packet_time * factor;
  return out;
}

ProfileSet parse_profiles(const std::string& text, const std::string& source_name) {
  ProfileSet p = ProfileParser(text, source_name).run();
  p.set_name(source_name);
  return p;
}

ProfileSet load_profiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SchemaError, "cannot open profile '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  ProfileSet p = parse_profiles(ss.str(), path);
  p.set_name(name);
  return p;
}

Duration network_time(std::int64_t payload_bytes, const Device& from, const Device& to,
                      const ProfileSet& profiles) {
  if (payload_bytes < 0) {
    throw Error(ErrorKind::NegativeValue, "NegativeValue(payload_bytes)");
  }
  if (from.alias == to.alias) return Duration{};
  const LinkRow& l = profiles.link(from, to);
  std::int64_t packets = (payload_bytes + l.payload_bytes - 1) / l.payload_bytes;
  return l.packet_time * packets;
}

Energy transfer_energy(std::int64_t payload_bytes, const Device& from, const Device& to,
                       const ProfileSet& profiles) {
  Duration t = network_time(payload_bytes, from, to, profiles);
  if (t.us == 0) return Energy{};
  return t * (profiles.power(from).tx + profiles.power(to).rx);
}

namespace {
constexpr double kSecondsPerDay = 86400.0;

double capacity_mj(const LifetimeParams& p) {
  return p.voltage_v * p.battery_mah * 3600.0;  // V * mAh = mWh; 1 mWh = 3600 mJ
}

double lifetime_impl(const LifetimeParams& p, double heartbeats_per_period) {
  const double cap = capacity_mj(p);
  const double period_s = p.dissemination_days * kSecondsPerDay;
  const double load_s = p.receive_ms_per_byte * p.binary_bytes / 1000.0;
  const double period_energy = p.duty_cycle * (p.radio_mw + p.mcu_mw) * period_s +
                               heartbeats_per_period * p.heartbeat_mj + p.load_mj;
  const double drain_per_day =
      period_energy / ((period_s + load_s) / kSecondsPerDay) + p.self_discharge_per_day * cap;
  return cap / drain_per_day;
}
}  // namespace

double lifetime_days(const LifetimeParams& p, double heartbeat_s) {
  if (!(heartbeat_s > 0)) {
    throw Error(ErrorKind::InvalidArgument, "heartbeat interval must be positive");
  }
  // E_heartbeat over one dissemination period: (period / t_hb) heartbeats.
  const double period_s = p.dissemination_days * kSecondsPerDay;
  return lifetime_impl(p, period_s / heartbeat_s);
}

double lifetime_days_without_heartbeat(const LifetimeParams& p) { return lifetime_impl(p, 0.0); }

}  // namespace edgeprog::profiles
