// Copyright 2026 The bellopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellopt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "bellopt/evolve.hpp"

namespace bellopt {

using boost::multiprecision::cpp_int;

std::string to_string(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double PolarizationProfile::weight(int lambda) const {
  if (lambda < 0 || lambda >= static_cast<int>(weights.size())) return 0.0;
  return weights[static_cast<std::size_t>(lambda)];
}

int polarization_pairs(const AncillaSpec& spec) {
  spec.validate();
  const int modes = spec.modes();
  if (modes % 2 == 0) return modes / 2;
  if (spec.family == AncillaFamily::SinglePhotons) return (modes + 1) / 2;
  throw std::invalid_argument("ancilla " + spec.label() + " has an odd mode count and no H/V pairing");
}

namespace {

// (a_H)^a (a_V)^b under a_H -> a_H + a_V, a_V -> -a_H + a_V, without the
// 2^(-(a+b)/2) normalization: coefficient of a_H^h a_V^(a+b-h) for each h.
std::vector<std::int64_t> rotated_pair(int a, int b) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(a + b + 1), 0);
  for (int i = 0; i <= a; ++i) {
    for (int j = 0; j <= b; ++j) {
      const auto c = static_cast<std::int64_t>(binomial(a, i) * binomial(b, j));
      out[static_cast<std::size_t>(i + j)] += (j % 2 ? -c : c);
    }
  }
  return out;
}

template <typename Coef>
std::map<Occupation, Coef> rotate(const std::map<Occupation, Coef>& terms, int pair) {
  std::map<Occupation, Coef> out;
  const auto h = static_cast<std::size_t>(2 * pair);
  for (const auto& [m, c] : terms) {
    const int a = m[h], b = m[h + 1];
    const std::vector<std::int64_t> expansion = rotated_pair(a, b);
    for (int hp = 0; hp <= a + b; ++hp) {
      const std::int64_t e = expansion[static_cast<std::size_t>(hp)];
      if (e == 0) continue;
      const Occupation key = m.with_added(h, hp - a).with_added(h + 1, a - hp);
      out[key] += c * Coef(e);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == Coef(0); });
  return out;
}

int horizontal(const Occupation& m) {
  int lambda = 0;
  for (std::size_t i = 0; i < m.modes(); i += 2) lambda += m[i];
  return lambda;
}

int rotated_photons(const Occupation& m, const std::vector<int>& rotated) {
  int r = 0;
  for (int p : rotated) r += m[static_cast<std::size_t>(2 * p)] + m[static_cast<std::size_t>(2 * p + 1)];
  return r;
}

template <typename T>
T generic_sum(const std::vector<T>& w) {
  T sum = 0;
  for (std::size_t l = 2; l < w.size(); ++l) sum += std::min(w[l - 2], w[l]);
  return T(1) / 2 + sum / 2;
}

template <typename T>
T extrema_form(const std::vector<T>& w) {
  T total = 0, maxima = 0, minima = 0;
  for (const T& x : w) total += x;
  for (std::size_t parity = 0; parity < 2; ++parity) {
    // Run-length compress 0, w[parity], w[parity + 2], ..., 0.
    std::vector<T> runs{T(0)};
    for (std::size_t l = parity; l < w.size(); l += 2) {
      if (w[l] != runs.back()) runs.push_back(w[l]);
    }
    if (runs.back() != T(0)) runs.push_back(T(0));
    for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
      if (runs[i] > runs[i - 1] && runs[i] > runs[i + 1]) maxima += runs[i];
      if (runs[i] < runs[i - 1] && runs[i] < runs[i + 1]) minima += runs[i];
    }
  }
  return T(1) / 2 + (total - maxima + minima) / 2;
}

template <typename T>
T pfail_form(const std::vector<T>& w) {
  T even = 0, odd = 0;
  for (std::size_t l = 0; l < w.size(); ++l) {
    T& slot = l % 2 ? odd : even;
    slot = std::max(slot, w[l]);
  }
  return (even + odd) / 2;
}

PolarizationProfile float_profile(const AncillaSpec& spec, const std::vector<int>& rotated, int pairs) {
  const Polynomial state = ancilla_polynomial(spec).padded(static_cast<std::size_t>(2 * pairs));
  std::map<Occupation, Complex> terms(state.terms().begin(), state.terms().end());
  for (int p : rotated) terms = rotate(terms, p);
  PolarizationProfile out;
  out.photons = spec.photons();
  out.rotated = rotated;
  out.weights.assign(static_cast<std::size_t>(out.photons + 1), 0.0);
  for (const auto& [m, c] : terms) {
    const double scale = std::pow(0.5, rotated_photons(m, rotated));
    out.weights[static_cast<std::size_t>(horizontal(m))] +=
        std::norm(c) * scale * static_cast<double>(factorial_product(m));
  }
  return out;
}

}  // namespace

PolarizationProfile polarization_profile(const AncillaSpec& spec, const std::vector<int>& rotated) {
  const int pairs = polarization_pairs(spec);
  std::vector<int> rot = rotated;
  std::sort(rot.begin(), rot.end());
  if (std::adjacent_find(rot.begin(), rot.end()) != rot.end())
    throw std::invalid_argument("rotation set lists a pair twice");
  for (int p : rot) {
    if (p < 0 || p >= pairs) throw std::out_of_range("rotation pair index out of range");
  }
  const std::optional<IntegerAncilla> ia = integer_ancilla(spec);
  if (!ia) return float_profile(spec, rot, pairs);

  std::map<Occupation, cpp_int> terms;
  for (const auto& [m, c] : ia->terms) terms[m.padded(static_cast<std::size_t>(2 * pairs))] = c;
  for (int p : rot) terms = rotate(terms, p);

  PolarizationProfile out;
  out.photons = spec.photons();
  out.rotated = rot;
  out.exact.assign(static_cast<std::size_t>(out.photons + 1), Rational(0));
  for (const auto& [m, c] : terms) {
    cpp_int fact = 1;
    for (int count : m.counts()) {
      for (int i = 2; i <= count; ++i) fact *= i;
    }
    const cpp_int den = cpp_int(ia->denominator) << rotated_photons(m, rot);
    out.exact[static_cast<std::size_t>(horizontal(m))] += Rational(c * c * fact, den);
  }
  for (const Rational& r : out.exact) out.weights.push_back(to_double(r));
  return out;
}

double generic_upper_bound(const PolarizationProfile& p) {
  if (p.is_exact()) return to_double(generic_sum(p.exact));
  return generic_sum(p.weights);
}

std::optional<Rational> generic_upper_bound_exact(const PolarizationProfile& p) {
  if (!p.is_exact()) return std::nullopt;
  return generic_sum(p.exact);
}

double local_extrema_bound(const PolarizationProfile& p) {
  if (p.is_exact()) return to_double(extrema_form(p.exact));
  return extrema_form(p.weights);
}

std::optional<Rational> local_extrema_bound_exact(const PolarizationProfile& p) {
  if (!p.is_exact()) return std::nullopt;
  return extrema_form(p.exact);
}

double pfail_lower_bound(const PolarizationProfile& p) {
  if (p.is_exact()) return to_double(pfail_form(p.exact));
  return pfail_form(p.weights);
}

std::optional<Rational> pfail_lower_bound_exact(const PolarizationProfile& p) {
  if (!p.is_exact()) return std::nullopt;
  return pfail_form(p.exact);
}

Rational photon_number_bound(int k) {
  if (k < 0) throw std::invalid_argument("photon count must be >= 0");
  const int ceil_even = (k + 1) % 2 ? k + 2 : k + 1;
  return Rational(1) - Rational(1, ceil_even);
}

Rational bell_pair_bound(int k) {
  if (k < 0 || k % 2) throw std::invalid_argument("bell_pair_bound needs an even k >= 0");
  const int half = k / 2;
  cpp_int choose = 1;
  for (int i = 1; i <= k / 4; ++i) choose = choose * (half - k / 4 + i) / i;
  return Rational(choose, cpp_int(1) << (half + 1));
}

double stirling_form(int k) {
  if (k <= 0) throw std::invalid_argument("stirling_form needs k > 0");
  const double base = 1.0 / std::sqrt(std::numbers::pi * k);
  return k % 4 == 0 ? base * std::exp(-2.0 / (3.0 * k)) : base;
}

RotatedBound best_rotated_bound(const AncillaSpec& spec, int max_pairs) {
  const int pairs = polarization_pairs(spec);
  if (pairs > max_pairs)
    throw BoundsGuardExceeded("ancilla has " + std::to_string(pairs) + " pairs, more than the limit of " +
                              std::to_string(max_pairs) + " for rotation search");
  std::vector<std::vector<int>> subsets;
  for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
    std::vector<int> s;
    for (int p = 0; p < pairs; ++p) {
      if (mask & (1u << p)) s.push_back(p);
    }
    subsets.push_back(std::move(s));
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::optional<RotatedBound> best;
  for (const auto& s : subsets) {
    RotatedBound candidate;
    candidate.profile = polarization_profile(spec, s);
    candidate.rotated = s;
    candidate.exact = generic_upper_bound_exact(candidate.profile);
    candidate.value = generic_upper_bound(candidate.profile);
    bool better = !best;
    if (best) {
      if (candidate.exact && best->exact) better = *candidate.exact > *best->exact;
      else better = candidate.value > best->value + 1e-14;
    }
    if (better) best = std::move(candidate);
  }
  return *best;
}

}  // namespace bellopt
