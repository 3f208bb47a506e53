#pragma once

#include "slopelab/adelic.hpp"
#include "slopelab/geometry.hpp"
#include "slopelab/toric.hpp"

namespace slopelab::testsupport {

inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline LatticePolytope unit_interval() {
  return LatticePolytope(1, {{Rational(0)}, {Rational(1)}});
}

inline LatticePolytope unit_simplex() {
  return LatticePolytope(
      2, {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
}

// min(x, 1-x) on [0,1]
inline ConcavePLFunction roof_green() {
  return ConcavePLFunction(unit_interval(),
                           {{{Rational(1)}, Rational(0)}, {{Rational(-1)}, Rational(1)}});
}

// constant 1 on [0,1]
inline ConcavePLFunction one_green() {
  return ConcavePLFunction(unit_interval(), {{{Rational(0)}, Rational(1)}});
}

// 1 - x - y on the unit simplex
inline ConcavePLFunction simplex_green() {
  return ConcavePLFunction(unit_simplex(), {{{Rational(-1), Rational(-1)}, Rational(1)}});
}

inline AdelicCurveSpec one_place_curve() {
  return AdelicCurveSpec({{"w1", Rational(1)}});
}

// P = [0,1], one place of weight 1, g = min(x, 1-x)
inline ToricAdelicDivisor roof_divisor() {
  std::map<std::string, ConcavePLFunction> greens;
  greens.emplace("w1", roof_green());
  return ToricAdelicDivisor(unit_interval(), one_place_curve(), std::move(greens));
}

// P = [0,1], one place of weight 1, g = 1
inline ToricAdelicDivisor one_divisor() {
  std::map<std::string, ConcavePLFunction> greens;
  greens.emplace("w1", one_green());
  return ToricAdelicDivisor(unit_interval(), one_place_curve(), std::move(greens));
}

// P = unit simplex, one place of weight 1, g = 1 - x - y
inline ToricAdelicDivisor simplex_divisor() {
  std::map<std::string, ConcavePLFunction> greens;
  greens.emplace("w1", simplex_green());
  return ToricAdelicDivisor(unit_simplex(), one_place_curve(), std::move(greens));
}

}  // namespace slopelab::testsupport
