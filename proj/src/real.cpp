#include "sst/real.hpp"

#include <atomic>

namespace sst::precision {

namespace {
std::atomic<unsigned> g_bits{128};
}

unsigned bits() { return g_bits.load(); }

void set_bits(unsigned bits) {
  if (bits < 64) bits = 64;
  g_bits.store(bits);
  Real::default_precision(digits10_for_bits(bits));
}

void apply_to_this_thread() {
  Real::default_precision(digits10_for_bits(g_bits.load()));
}

scoped_bits::scoped_bits(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

scoped_bits::~scoped_bits() { Real::default_precision(saved_digits10_); }

}  // namespace sst::precision

namespace sst {

namespace {
struct PrecisionInit {
  PrecisionInit() { Real::default_precision(precision::digits10_for_bits(128)); }
};
PrecisionInit g_precision_init;
}  // namespace

std::string to_string(const Real& x, unsigned digits) { return x.str(digits); }

}  // namespace sst
