#pragma once

#include "fractsob/errors.hpp"
#include "fractsob/geometry.hpp"
#include "fractsob/rational.hpp"

#include <vector>

namespace fractsob {

// A function on the vertex set of one level graph, indexed by vertex id.
template <typename Scalar>
struct LevelFunction {
  int level = 0;
  std::vector<Scalar> values;

  Scalar& operator[](int i) { return values[i]; }
  const Scalar& operator[](int i) const { return values[i]; }
  int size() const { return static_cast<int>(values.size()); }
};

using RealFunction = LevelFunction<double>;
using RationalFunction = LevelFunction<Rational>;

inline RealFunction to_real(const RationalFunction& u) {
  RealFunction out;
  out.level = u.level;
  out.values.reserve(u.values.size());
  for (const auto& q : u.values) out.values.push_back(to_double(q));
  return out;
}

template <typename Scalar>
LevelFunction<Scalar> zero_function(const LevelGraph& g) {
  LevelFunction<Scalar> f;
  f.level = g.level;
  f.values.assign(g.coords.size(), Scalar(0));
  return f;
}

}  // namespace fractsob
