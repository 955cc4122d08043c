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

#include <gtest/gtest.h>

#include <cmath>

namespace bellopt {
namespace {

Rational q(int num, int den) { return Rational(num, den); }

Rational rotated(const AncillaSpec& spec) {
  const RotatedBound b = best_rotated_bound(spec);
  EXPECT_TRUE(b.exact.has_value()) << spec.label();
  EXPECT_NEAR(b.value, to_double(b.exact.value_or(Rational(0))), 1e-15);
  return b.exact.value_or(Rational(-1));
}

TEST(Rational, Formatting) {
  EXPECT_EQ(to_string(q(6, 8)), "3/4");
  EXPECT_EQ(to_string(Rational(2)), "2");
  EXPECT_DOUBLE_EQ(to_double(q(13, 16)), 0.8125);
}

TEST(PhotonNumberBound, SmallK) {
  const Rational expected[] = {q(1, 2), q(1, 2), q(3, 4), q(3, 4), q(5, 6), q(5, 6), q(7, 8)};
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(photon_number_bound(k), expected[k]) << k;
  EXPECT_EQ(photon_number_bound(8), q(9, 10));
  EXPECT_EQ(photon_number_bound(12), q(13, 14));
  EXPECT_THROW(photon_number_bound(-1), std::invalid_argument);
}

TEST(BellPairBound, Values) {
  EXPECT_EQ(bell_pair_bound(0), q(1, 2));
  EXPECT_EQ(Rational(1) - bell_pair_bound(4), q(3, 4));
  EXPECT_EQ(bell_pair_bound(12), q(5, 32));
  EXPECT_EQ(Rational(1) - bell_pair_bound(6), q(13, 16));
  EXPECT_THROW(bell_pair_bound(3), std::invalid_argument);
}

TEST(BellPairBound, StirlingFormApproachesExact) {
  // The relative error of the asymptotic form shrinks with k.
  double last = 1.0;
  for (int k : {8, 16, 32, 64, 128}) {
    const double exact = to_double(bell_pair_bound(k));
    const double err = std::abs(stirling_form(k) - exact) / exact;
    EXPECT_LT(err, last);
    last = err;
  }
  EXPECT_LT(last, 0.02);
}

TEST(Profile, SinglePhotonsUnrotated) {
  // One photon on each rail of the pair: a spike at lambda = 1.
  const PolarizationProfile p = polarization_profile(AncillaSpec::single_photons(2));
  ASSERT_EQ(p.exact.size(), 3u);
  EXPECT_EQ(p.exact[1], Rational(1));
  EXPECT_EQ(p.exact[0], Rational(0));
  EXPECT_EQ(generic_upper_bound_exact(p), q(1, 2));
}

TEST(Profile, RotatedPairIsBinomial) {
  const PolarizationProfile p = polarization_profile(AncillaSpec::single_photons(2), {0});
  ASSERT_EQ(p.exact.size(), 3u);
  // a_H a_V -> (a_V^2 - a_H^2) / 2
  EXPECT_EQ(p.exact[0], q(1, 2));
  EXPECT_EQ(p.exact[1], Rational(0));
  EXPECT_EQ(p.exact[2], q(1, 2));
}

TEST(Profile, WeightsSumToOne) {
  for (const AncillaSpec& s : {AncillaSpec::single_photons(5), AncillaSpec::bell_pairs(2), AncillaSpec::ghz(3),
                               AncillaSpec::w3(), AncillaSpec::grice(2), AncillaSpec::evl(1)}) {
    const int pairs = polarization_pairs(s);
    for (int r = 0; r <= pairs; ++r) {
      std::vector<int> rot;
      for (int i = 0; i < r; ++i) rot.push_back(i);
      const PolarizationProfile p = polarization_profile(s, rot);
      Rational total = 0;
      for (const Rational& w : p.exact) total += w;
      EXPECT_EQ(total, Rational(1)) << s.label() << " rotated " << r;
    }
  }
}

TEST(Profile, RejectsBadRotations) {
  EXPECT_THROW(polarization_profile(AncillaSpec::single_photons(2), {0, 0}), std::invalid_argument);
  EXPECT_THROW(polarization_profile(AncillaSpec::single_photons(2), {1}), std::out_of_range);
}

TEST(RotatedBound, ReferenceValues) {
  EXPECT_EQ(rotated(AncillaSpec::vacuum()), q(1, 2));
  EXPECT_EQ(rotated(AncillaSpec::single_photons(1)), q(1, 2));
  EXPECT_EQ(rotated(AncillaSpec::single_photons(2)), q(3, 4));
  EXPECT_EQ(rotated(AncillaSpec::single_photons(3)), q(3, 4));
  EXPECT_EQ(rotated(AncillaSpec::single_photons(4)), q(3, 4));
  EXPECT_EQ(rotated(AncillaSpec::single_photons(6)), q(13, 16));
  EXPECT_EQ(rotated(AncillaSpec::single_photons(8)), q(13, 16));
  EXPECT_EQ(rotated(AncillaSpec::single_photons(12)), q(27, 32));
  EXPECT_EQ(rotated(AncillaSpec::bell_pairs(1)), q(3, 4));
  EXPECT_EQ(rotated(AncillaSpec::bell_pairs(2)), q(3, 4));
  EXPECT_EQ(rotated(AncillaSpec::bell_pairs(3)), q(13, 16));
  EXPECT_EQ(rotated(AncillaSpec::ghz(3)), q(3, 4));
  EXPECT_EQ(rotated(AncillaSpec::ghz(4)), q(3, 4));
  EXPECT_EQ(rotated(AncillaSpec::grice(2)), q(7, 8));
  EXPECT_EQ(rotated(AncillaSpec::evl(1)), q(3, 4));
}

TEST(RotatedBound, W3) {
  // Rotating two of the three pairs gives weights (1/12, 1/2, 1/12, 1/3).
  const PolarizationProfile p = polarization_profile(AncillaSpec::w3(), {0, 1});
  EXPECT_EQ(p.exact, (std::vector<Rational>{q(1, 12), q(1, 2), q(1, 12), q(1, 3)}));
  EXPECT_EQ(generic_upper_bound_exact(polarization_profile(AncillaSpec::w3())), q(1, 2));
  const RotatedBound b = best_rotated_bound(AncillaSpec::w3());
  EXPECT_EQ(b.rotated, (std::vector<int>{0, 1}));
  EXPECT_EQ(b.exact, q(17, 24));
}

TEST(RotatedBound, EvlFamily) {
  // (k + 2) / (k + 4) with k = 2^(N+2) - 4.
  EXPECT_EQ(rotated(AncillaSpec::evl(2)), q(14, 16));
}

TEST(RotatedBound, GhzUnrotatedIsHalf) {
  for (int k : {3, 4, 5}) {
    const PolarizationProfile p = polarization_profile(AncillaSpec::ghz(k));
    EXPECT_EQ(generic_upper_bound_exact(p), q(1, 2)) << k;
  }
}

TEST(RotatedBound, MatchesBellPairFormulaForEvenPhotons) {
  for (int k : {2, 4, 6, 8, 10}) {
    EXPECT_EQ(rotated(AncillaSpec::single_photons(k)), Rational(1) - bell_pair_bound(k)) << k;
  }
  for (int m : {1, 2, 3, 4}) EXPECT_EQ(rotated(AncillaSpec::bell_pairs(m)), Rational(1) - bell_pair_bound(2 * m));
}

TEST(RotatedBound, OddPhotonsMatchOneFewer) {
  for (int k : {1, 3, 5, 7}) EXPECT_EQ(rotated(AncillaSpec::single_photons(k)), rotated(AncillaSpec::single_photons(k - 1)));
}

TEST(RotatedBound, NeverAbovePhotonNumberBound) {
  for (const AncillaSpec& s : {AncillaSpec::single_photons(6), AncillaSpec::bell_pairs(3), AncillaSpec::ghz(4),
                               AncillaSpec::w3(), AncillaSpec::grice(2), AncillaSpec::evl(1)}) {
    EXPECT_LE(rotated(s), photon_number_bound(s.photons())) << s.label();
  }
}

TEST(RotatedBound, Guard) {
  EXPECT_THROW(best_rotated_bound(AncillaSpec::single_photons(12), 4), BoundsGuardExceeded);
}

TEST(LocalExtrema, AgreesWithGenericOnSpikes) {
  for (const AncillaSpec& s : {AncillaSpec::single_photons(2), AncillaSpec::bell_pairs(1), AncillaSpec::ghz(3)}) {
    for (int r = 0; r <= 1; ++r) {
      std::vector<int> rot;
      if (r) rot.push_back(0);
      const PolarizationProfile p = polarization_profile(s, rot);
      EXPECT_LE(*generic_upper_bound_exact(p), *local_extrema_bound_exact(p)) << s.label();
      EXPECT_DOUBLE_EQ(local_extrema_bound(p), to_double(*local_extrema_bound_exact(p)));
    }
  }
}

TEST(Pfail, TightWithSingleMaximumPerParity) {
  const PolarizationProfile p = polarization_profile(AncillaSpec::single_photons(2), {0});
  EXPECT_EQ(pfail_lower_bound_exact(p), q(1, 4));
  EXPECT_EQ(Rational(1) - *pfail_lower_bound_exact(p), *local_extrema_bound_exact(p));
}

TEST(Pfail, LooseWithTwoMaxima) {
  // Even weights 1/2, 0, 1/2 have two maxima and one minimum.
  Polynomial poly(4);
  poly.add_term({0, 2, 0, 2}, std::sqrt(0.125));
  poly.add_term({2, 0, 2, 0}, std::sqrt(0.125));
  const AncillaSpec s = AncillaSpec::from_polynomial(poly);
  const PolarizationProfile p = polarization_profile(s);
  EXPECT_NEAR(p.weight(0), 0.5, 1e-15);
  EXPECT_NEAR(p.weight(4), 0.5, 1e-15);
  EXPECT_EQ(p.weight(2), 0.0);
  EXPECT_NEAR(local_extrema_bound(p), 0.5, 1e-15);
  EXPECT_NEAR(1.0 - pfail_lower_bound(p), 0.75, 1e-15);
  EXPECT_NEAR(generic_upper_bound(p), local_extrema_bound(p), 1e-15);
}

TEST(Custom, FloatingPointProfile) {
  Polynomial poly(2);
  poly.add_term({1, 0}, std::sqrt(0.3));
  poly.add_term({0, 1}, Complex(0.0, std::sqrt(0.7)));
  const AncillaSpec s = AncillaSpec::from_polynomial(poly);
  const PolarizationProfile p = polarization_profile(s);
  EXPECT_FALSE(p.is_exact());
  EXPECT_NEAR(p.weight(1), 0.3, 1e-15);
  EXPECT_NEAR(p.weight(0), 0.7, 1e-15);
  EXPECT_FALSE(generic_upper_bound_exact(p));
  EXPECT_NEAR(generic_upper_bound(p), 0.5, 1e-15);
  EXPECT_NEAR(best_rotated_bound(s).value, generic_upper_bound(p), 0.5);
}

TEST(Custom, OddModeCountRejected) {
  Polynomial poly(3);
  poly.add_term({1, 0, 0}, 1.0);
  EXPECT_THROW(polarization_pairs(AncillaSpec::from_polynomial(poly)), std::invalid_argument);
}

}  // namespace
}  // namespace bellopt
