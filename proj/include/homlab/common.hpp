#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace homlab {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when a desk-scale limit would be exceeded.
class CapError : public Error {
public:
  using Error::Error;
};

// Raised when an internal cross-check fails (solver or transport bug).
class InternalError : public Error {
public:
  using Error::Error;
};

// Desk-scale limits. Defaults can be overridden through the HOMLAB_CAP
// environment variable: either "unlimited" or a comma separated list of
// key=value pairs, e.g. "tensor_entries=100000000,linsys_vertices=7".
struct Caps {
  int enum_vertices = 8;
  int width_vertices = 10;
  int family_size = 10;
  std::uint64_t tensor_entries = 10000000;
  int ptm_d = 2;
  int linsys_vertices = 6;
  int linsys_k = 2;
  int wl_tuples = 1000000;

  static const Caps& get();
  static void set(const Caps& caps);  // call before any worker threads start
  static Caps parse(const std::string& text);
  static Caps unlimited();
};

std::string rational_str(const Rational& q);  // always p/q
std::uint64_t ipow(std::uint64_t base, unsigned exp);  // throws CapError on overflow

}  // namespace homlab
