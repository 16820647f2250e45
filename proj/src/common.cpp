#include "homlab/common.hpp"

#include <cstdlib>
#include <limits>
#include <sstream>

namespace homlab {

namespace {

Caps unlimited_caps() {
  Caps c;
  c.enum_vertices = 11;
  c.width_vertices = 20;
  c.family_size = 20;
  c.tensor_entries = std::numeric_limits<std::uint64_t>::max();
  c.ptm_d = 8;
  c.linsys_vertices = 1 << 20;
  c.linsys_k = 1 << 20;
  c.wl_tuples = std::numeric_limits<int>::max();
  return c;
}

}  // namespace

Caps Caps::parse(const std::string& text) {
  if (text == "unlimited") return unlimited_caps();
  Caps c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("HOMLAB_CAP: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::uint64_t value = std::stoull(item.substr(eq + 1));
    if (key == "enum_vertices") c.enum_vertices = static_cast<int>(value);
    else if (key == "width_vertices") c.width_vertices = static_cast<int>(value);
    else if (key == "family_size") c.family_size = static_cast<int>(value);
    else if (key == "tensor_entries") c.tensor_entries = value;
    else if (key == "ptm_d") c.ptm_d = static_cast<int>(value);
    else if (key == "linsys_vertices") c.linsys_vertices = static_cast<int>(value);
    else if (key == "linsys_k") c.linsys_k = static_cast<int>(value);
    else if (key == "wl_tuples") c.wl_tuples = static_cast<int>(value);
    else throw Error("HOMLAB_CAP: unknown key '" + key + "'");
  }
  return c;
}

namespace {

Caps& cap_storage() {
  static Caps caps = [] {
    const char* env = std::getenv("HOMLAB_CAP");
    return env ? Caps::parse(env) : Caps{};
  }();
  return caps;
}

}  // namespace

const Caps& Caps::get() { return cap_storage(); }

void Caps::set(const Caps& caps) { cap_storage() = caps; }

Caps Caps::unlimited() { return unlimited_caps(); }

std::string rational_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw CapError("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace homlab
