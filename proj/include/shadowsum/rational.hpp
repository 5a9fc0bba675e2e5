#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <vector>

namespace shadowsum {

using Int = long long;
using Rat = boost::rational<Int>;

/// Integer weight in Dynkin-label coordinates (fundamental-weight basis).
using Weight = std::vector<Int>;

/// Rational point of t* in the same coordinates; used for alcove folding
/// and face-field values where lattice points get divided by k + c_G.
using RatWeight = std::vector<Rat>;

inline double to_double(const Rat& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

inline bool is_integer(const Rat& q) { return q.denominator() == 1; }

inline RatWeight to_rat(const Weight& w) {
  RatWeight out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = Rat(w[i]);
  return out;
}

// Exact; callers must know the vector is integral.
inline Weight to_int_weight(const RatWeight& w) {
  Weight out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i].numerator() / w[i].denominator();
  return out;
}

inline bool is_integral(const RatWeight& w) {
  for (const auto& q : w)
    if (!is_integer(q)) return false;
  return true;
}

inline Weight add(const Weight& a, const Weight& b) {
  Weight out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Weight sub(const Weight& a, const Weight& b) {
  Weight out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Weight negate(const Weight& a) {
  Weight out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

inline RatWeight rat_add(const RatWeight& a, const RatWeight& b) {
  RatWeight out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RatWeight rat_sub(const RatWeight& a, const RatWeight& b) {
  RatWeight out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline RatWeight rat_scale(const RatWeight& a, const Rat& s) {
  RatWeight out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

}  // namespace shadowsum
