#include "fractsob/region.hpp"

#include "fractsob/errors.hpp"

#include <cmath>

namespace fractsob {

namespace {

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

double resolve_s(const RegionParams& params) {
  const bool has_s = !std::isnan(params.s);
  const bool has_alpha = !std::isnan(params.alpha);
  if (has_s == has_alpha)
    throw ParameterError("region: give exactly one of s and alpha");
  const double s = has_s ? params.s : params.alpha / 2.0;
  if (!(s > 0.0 && s < 1.0))
    throw ParameterError("region: s must lie in (0,1), alpha in (0,2)");
  if (!(params.p > 1.0)) throw ParameterError("region: p must exceed 1");
  return s;
}

}  // namespace

RegionVerdict region_check(const IfsSpec& spec, const RegionParams& params,
                           RegionForm form) {
  RegionVerdict v;
  v.s = resolve_s(params);
  v.alpha = 2.0 * v.s;
  v.p = params.p;
  v.form = form;

  const double D = spec.dim_D;
  v.s_star = (D * inv(v.p) + 2.0) / (D + 1.0);
  v.embedding_margin = v.s * (D + 1.0) - D * inv(v.p);
  v.embedding_ok = v.embedding_margin > 0.0;

  switch (form) {
    case RegionForm::general:
      v.margin = v.s * (D + 1.0) - D * inv(v.p) - 2.0;
      break;
    case RegionForm::sg: {
      if (spec.family != "sg")
        throw ParameterError("region: gasket form needs the gasket spec");
      // s log5 - (1/p) log3 > 2 log(5/3)
      v.margin = v.s * std::log(5.0) - inv(v.p) * std::log(3.0) -
                 2.0 * std::log(5.0 / 3.0);
      break;
    }
    case RegionForm::vicsek: {
      if (spec.family != "vicsek")
        throw ParameterError("region: vicsek form needs a vicsek spec");
      // s log(J(2L+1)) > (1/p) log J + 2 log(2L+1)
      const double logJ = std::log(double(spec.J()));
      const double logc = std::log(double(2 * spec.vicsek_L + 1));
      v.margin = v.s * (logJ + logc) - inv(v.p) * logJ - 2.0 * logc;
      break;
    }
  }
  v.in_region = v.margin > 0.0;
  return v;
}

double sg_nonempty_p_threshold() {
  return std::log(3.0) / (2.0 * std::log(3.0) - std::log(5.0));
}

VicsekSearchResult vicsek_find_n(double s, double p, int L, int n_max) {
  if (!(s > 0.0 && s < 1.0)) throw ParameterError("vicsek search: s outside (0,1)");
  if (!(p > 1.0)) throw ParameterError("vicsek search: p must exceed 1");
  if (L < 1) throw ParameterError("vicsek search: L must be at least 1");
  if (n_max < 2) throw ParameterError("vicsek search: search range is empty");

  VicsekSearchResult res;
  res.s = s;
  res.p = p;
  res.L = L;
  res.n_max = n_max;

  // (s - 1/p) log(2^N L + 1) > (2 - s) log(2L + 1); log J computed as
  // N log2 + log1p(L 2^{-N}) + log L to keep large N exact.
  const double coef = s - inv(p);
  const double rhs = (2.0 - s) * std::log(double(2 * L + 1));
  if (coef <= 0.0) return res;  // sp <= 1: no branching exponent can help
  for (int n = 2; n <= n_max; ++n) {
    const double logJ = n * std::log(2.0) + std::log(double(L)) +
                        std::log1p(std::ldexp(1.0 / double(L), -n));
    const double margin = coef * logJ - rhs;
    if (margin > 0.0) {
      res.found = true;
      res.N = n;
      res.margin = margin;
      return res;
    }
  }
  return res;
}

}  // namespace fractsob
