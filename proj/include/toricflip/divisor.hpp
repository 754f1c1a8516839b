#pragma once

// Torus-invariant divisors and their classes.

#include <optional>
#include <vector>

#include "toricflip/gkz.hpp"

namespace toricflip {

/// sum_rho a_rho D_rho, one coefficient per ray.
struct TDivisor {
  QVector coeffs;

  static TDivisor integral(const std::vector<long>& a) {
    TDivisor d;
    for (long x : a) d.coeffs.emplace_back(x);
    return d;
  }
  bool is_integral() const { return toricflip::is_integral(coeffs); }
  TDivisor scaled(const Rat& t) const {
    TDivisor d = *this;
    for (auto& x : d.coeffs) x *= t;
    return d;
  }
};

/// Coordinates in the free part of the class group, w.r.t. the rows of Q.
using DivClass = QVector;

inline DivClass divisor_class(const WeightMatrix& W, const TDivisor& d) {
  if (d.coeffs.size() != W.columns())
    throw Error(ErrorCode::dimension_mismatch, "divisor length differs from the number of rays");
  return to_rational(W.Q) * d.coeffs;
}

/// -K = [sum of all D_rho], i.e. the sum of Q's columns.
inline DivClass anticanonical_class(const WeightMatrix& W) {
  TDivisor all;
  all.coeffs.assign(W.columns(), Rat(1));
  return divisor_class(W, all);
}

struct ConeCartierData {
  IndexSet cone;
  std::optional<QVector> m;  // <m, v_i> = -a_i on the cone's rays
  bool integral = false;
};

struct CartierData {
  bool cartier = false;
  bool q_cartier = false;  // a rational m exists on every cone
  std::vector<ConeCartierData> cones;
};

/// Local data of d on each maximal cone. A cone with no rational solution
/// (only possible when it is not simplicial) makes the divisor non-Q-Cartier;
/// that is reported in the data rather than thrown.
inline CartierData cartier_data(const Fan& f, const TDivisor& d) {
  require_valid(f);
  if (d.coeffs.size() != f.ray_count())
    throw Error(ErrorCode::dimension_mismatch, "divisor length differs from the number of rays");
  CartierData out;
  out.cartier = out.q_cartier = true;
  for (const auto& I : f.max_cones()) {
    QMatrix A(I.size(), f.dim());
    QVector b(I.size());
    for (std::size_t t = 0; t < I.size(); ++t) {
      for (std::size_t k = 0; k < f.dim(); ++k) A(t, k) = f.fan_matrix()(k, I[t]);
      b[t] = -d.coeffs[I[t]];
    }
    ConeCartierData c{I, solve(A, b), false};
    if (!c.m) {
      out.q_cartier = out.cartier = false;
    } else {
      c.integral = is_integral(*c.m);
      if (!c.integral) out.cartier = false;
    }
    out.cones.push_back(std::move(c));
  }
  return out;
}

/// Integral divisors only; use cartier_multiple for rational ones.
inline CartierData is_cartier(const Fan& f, const TDivisor& d) {
  if (!d.is_integral())
    throw Error(ErrorCode::precondition, "is_cartier expects integer coefficients");
  return cartier_data(f, d);
}

/// Least t > 0 with t*d integral and Cartier. The local solutions scale
/// linearly with d, so t is the lcm of every denominator in sight.
inline Int cartier_multiple(const Fan& f, const TDivisor& d) {
  require_valid(f);
  if (!is_simplicial(f)) throw Error(ErrorCode::precondition, "cartier_multiple needs a simplicial fan");
  auto data = cartier_data(f, d);
  Int t = 1;
  for (const auto& a : d.coeffs) t = lcm(t, Int(a.get_den()));
  for (const auto& c : data.cones)
    for (const auto& x : *c.m) t = lcm(t, Int(x.get_den()));
  return t;
}

/// Class in the relative interior of a full-dimensional nef cone.
inline bool is_ample(const Fan& f, const WeightMatrix& W, const TDivisor& d) {
  Cone nef = nef_cone(f, W);
  if (nef.dim() != W.rank()) return false;
  return nef.contains(divisor_class(W, d)) == Location::interior;
}

}  // namespace toricflip
