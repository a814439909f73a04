#pragma once

// Minimal per-node MIB stand-in: a few named counters per node, serialized
// to exactly the node's payload size so simulated transfers move inspectable
// content rather than opaque byte counts.

#include <cstdint>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "magplan/topology.hpp"

namespace magplan {

struct MibVariable {
  std::string name;
  std::uint64_t value = 0;
};

struct MibRecord {
  std::string node;  // node name token
  std::vector<MibVariable> variables;
  Latency snapshot_time = 0.0;

  friend bool operator==(const MibRecord& a, const MibRecord& b) {
    if (a.node != b.node || a.snapshot_time != b.snapshot_time ||
        a.variables.size() != b.variables.size())
      return false;
    for (std::size_t i = 0; i < a.variables.size(); ++i)
      if (a.variables[i].name != b.variables[i].name ||
          a.variables[i].value != b.variables[i].value)
        return false;
    return true;
  }
};

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline void put_u64_be(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

inline void put_name(std::vector<std::uint8_t>& out, const std::string& name) {
  if (name.empty() || name.size() > 255)
    throw std::invalid_argument("name must be 1..255 bytes: " + name);
  out.push_back(static_cast<std::uint8_t>(name.size()));
  out.insert(out.end(), name.begin(), name.end());
}

struct ByteReader {
  const std::vector<std::uint8_t>& data;
  std::size_t pos = 0;

  std::uint8_t u8() {
    if (pos >= data.size()) throw std::invalid_argument("truncated MIB record");
    return data[pos++];
  }
  std::uint64_t u64_be() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | u8();
    return v;
  }
  std::string name() {
    std::size_t len = u8();
    if (len == 0) throw std::invalid_argument("empty name in MIB record");
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(u8()));
    return s;
  }
};

}  // namespace detail

// Wire form: [len|node name][snapshot time, IEEE-754 bits BE][u16 BE count]
// then per variable [len|name][u64 BE value], zero-padded to payload_bytes.
inline std::vector<std::uint8_t> serialize_mib(const MibRecord& record,
                                               std::size_t payload_bytes) {
  if (record.variables.size() > 0xffff)
    throw std::invalid_argument("too many MIB variables");
  std::vector<std::uint8_t> out;
  detail::put_name(out, record.node);
  std::uint64_t time_bits;
  static_assert(sizeof(time_bits) == sizeof(record.snapshot_time));
  std::memcpy(&time_bits, &record.snapshot_time, sizeof(time_bits));
  detail::put_u64_be(out, time_bits);
  out.push_back(static_cast<std::uint8_t>(record.variables.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(record.variables.size() & 0xff));
  for (const MibVariable& var : record.variables) {
    detail::put_name(out, var.name);
    detail::put_u64_be(out, var.value);
  }
  if (out.size() > payload_bytes)
    throw std::invalid_argument("MIB record content (" + std::to_string(out.size()) +
                                " bytes) exceeds payload_bytes (" +
                                std::to_string(payload_bytes) + ")");
  out.resize(payload_bytes, 0);
  return out;
}

inline MibRecord deserialize_mib(const std::vector<std::uint8_t>& bytes) {
  detail::ByteReader in{bytes};
  MibRecord record;
  record.node = in.name();
  std::uint64_t time_bits = in.u64_be();
  std::memcpy(&record.snapshot_time, &time_bits, sizeof(time_bits));
  std::size_t count = in.u8();
  count = (count << 8) | in.u8();
  for (std::size_t i = 0; i < count; ++i) {
    MibVariable var;
    var.name = in.name();
    var.value = in.u64_be();
    record.variables.push_back(std::move(var));
  }
  return record;  // trailing padding is ignored
}

// Deterministic synthetic MIB snapshot for (node, seed): generic interface
// and uptime counters with seeded pseudo-random values, keyed on the node
// name so distinct nodes disagree under the same seed.
inline MibRecord synthesize_mib(const Topology& t, NodeId id, std::uint64_t seed) {
  if (id >= t.node_count()) throw std::invalid_argument("unknown node id");
  if (id == t.home())
    throw std::invalid_argument("home node has no MIB record to synthesize");

  MibRecord record;
  record.node = t.name_of(id);
  std::mt19937_64 rng(seed ^ detail::fnv1a64(record.node));
  for (const char* name : {"ifInOctets", "ifOutOctets", "sysUpTime"})
    record.variables.push_back({name, rng()});
  return record;
}

}  // namespace magplan
