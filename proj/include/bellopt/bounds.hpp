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

// Upper bounds on unambiguous Bell measurement with polarization-preserving
// interferometers.
//
// The ancilla's dual-rail pairs are its local modes (2i, 2i+1), the first of
// each pair being the H rail; globally these are modes (5, 6), (7, 8), ...
// counted from 1. A profile is the distribution of the number of H photons.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellopt/fock.hpp"

namespace bellopt {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);
double to_double(const Rational& r);

class BoundsGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PolarizationProfile {
  int photons = 0;
  /// Pairs rotated by pi/4 before the decomposition.
  std::vector<int> rotated;
  /// w_lambda for lambda = 0..photons.
  std::vector<double> weights;
  /// Same weights in exact arithmetic, empty for custom ancillae.
  std::vector<Rational> exact;

  bool is_exact() const { return !exact.empty(); }
  double weight(int lambda) const;
};

/// Number of dual-rail pairs of the ancilla. An odd number of single photons
/// is completed with an empty V rail; any other odd mode count is rejected.
int polarization_pairs(const AncillaSpec& spec);

PolarizationProfile polarization_profile(const AncillaSpec& spec, const std::vector<int>& rotated = {});

/// 1/2 + 1/2 sum_lambda min(w_{lambda-2}, w_lambda).
double generic_upper_bound(const PolarizationProfile& p);
std::optional<Rational> generic_upper_bound_exact(const PolarizationProfile& p);

/// Same bound as 1 - (local maxima)/2 + (local minima)/2 per parity class;
/// plateaus count as one extremum.
double local_extrema_bound(const PolarizationProfile& p);
std::optional<Rational> local_extrema_bound_exact(const PolarizationProfile& p);

/// P_fail >= (max_even w + max_odd w) / 2.
double pfail_lower_bound(const PolarizationProfile& p);
std::optional<Rational> pfail_lower_bound_exact(const PolarizationProfile& p);

/// Success bound 1 - 1/ceil_even(k + 1) for any ancilla of k photons.
Rational photon_number_bound(int k);

/// Failure bound 2^(-k/2-1) binom(k/2, floor(k/4)) for k/2 Bell pairs (or k
/// rotated single photons). Odd k is rejected.
Rational bell_pair_bound(int k);

/// Large-k form of bell_pair_bound: exp(-2/(3k))/sqrt(pi k) for k divisible by
/// 4, 1/sqrt(pi k) otherwise.
double stirling_form(int k);

struct RotatedBound {
  double value = 0.0;
  std::optional<Rational> exact;
  std::vector<int> rotated;
  PolarizationProfile profile;
};

/// Maximum of the generic bound over all subsets of rotated pairs. Among
/// equal values the smallest subset (then lexicographically first) wins.
RotatedBound best_rotated_bound(const AncillaSpec& spec, int max_pairs = 16);

}  // namespace bellopt
