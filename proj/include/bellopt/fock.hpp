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

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bellopt {

using Complex = std::complex<double>;

/// Photon counts per mode. Mode 0..3 are the dual-rail modes carrying the
/// Bell state, ancilla modes follow.
class Occupation {
 public:
  Occupation() = default;
  explicit Occupation(std::vector<int> counts);
  Occupation(std::initializer_list<int> counts) : Occupation(std::vector<int>(counts)) {}

  std::size_t modes() const { return counts_.size(); }
  int photons() const;
  int operator[](std::size_t mode) const { return counts_[mode]; }
  const std::vector<int>& counts() const { return counts_; }

  /// Concatenation: the modes of `tail` follow the modes of `*this`.
  Occupation concat(const Occupation& tail) const;
  Occupation padded(std::size_t modes) const;
  Occupation with_added(std::size_t mode, int delta) const;

  std::string to_string() const;

  auto operator<=>(const Occupation&) const = default;

 private:
  std::vector<int> counts_;
};

/// sqrt(prod_i e_i!). The physical amplitude of event e is the monomial
/// coefficient of e times this factor.
double monomial_normalization(const Occupation& e);

/// Product of factorials of the entries, as an integer.
std::int64_t factorial_product(const Occupation& e);

/// Polynomial in the creation operators of `modes` modes. Coefficients that
/// accumulate to exactly zero are dropped.
class Polynomial {
 public:
  using TermMap = std::map<Occupation, Complex>;

  explicit Polynomial(std::size_t modes = 0) : modes_(modes) {}
  static Polynomial constant(Complex value, std::size_t modes = 0);

  void add_term(const Occupation& monomial, Complex coefficient);
  Complex coefficient(const Occupation& monomial) const;

  const TermMap& terms() const { return terms_; }
  std::size_t modes() const { return modes_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Common photon count of all terms, or nullopt if the polynomial is empty
  /// or not homogeneous.
  std::optional<int> degree() const;

  /// Product of two polynomials on disjoint mode sets: modes of `tail` are
  /// appended after the modes of `*this`.
  Polynomial tensor(const Polynomial& tail) const;

  /// Same polynomial, with vacuum modes appended up to `modes`.
  Polynomial padded(std::size_t modes) const;

  /// sum_m |c_m|^2 prod_i m_i!, the squared norm of the Fock state.
  double state_norm() const;

 private:
  std::size_t modes_;
  TermMap terms_;
};

enum class BellState : int { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellState, 4> kBellStates = {
    BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus};

std::string_view bell_name(BellState beta);

/// Dual-rail Bell state on modes 0..3.
Polynomial bell_polynomial(BellState beta);

enum class AncillaFamily { Vacuum, SinglePhotons, BellPairs, Ghz, W3, Grice, EvL, Custom };

/// Ancilla state fed into modes 4.. of the interferometer.
struct AncillaSpec {
  AncillaFamily family = AncillaFamily::Vacuum;
  /// Family parameter: photon count for single_photons and ghz, pair count
  /// for bell_pairs, iteration count for grice and evl. Unused otherwise.
  int parameter = 0;
  /// Explicit state for the custom family.
  std::optional<Polynomial> custom;

  static AncillaSpec vacuum() { return {}; }
  static AncillaSpec single_photons(int k) { return {AncillaFamily::SinglePhotons, k, {}}; }
  static AncillaSpec bell_pairs(int m) { return {AncillaFamily::BellPairs, m, {}}; }
  static AncillaSpec ghz(int k) { return {AncillaFamily::Ghz, k, {}}; }
  static AncillaSpec w3() { return {AncillaFamily::W3, 0, {}}; }
  static AncillaSpec grice(int iterations) { return {AncillaFamily::Grice, iterations, {}}; }
  static AncillaSpec evl(int iterations) { return {AncillaFamily::EvL, iterations, {}}; }
  static AncillaSpec from_polynomial(Polynomial state);

  /// Throws std::invalid_argument on invalid parameters.
  void validate() const;

  int photons() const;
  int modes() const;
  /// Short label such as "bell_pairs(1)".
  std::string label() const;
};

/// Ancilla with integer coefficients: Q = (1/sqrt(denominator)) sum c_m x^m.
/// Available for every built-in family; used by the exact bound computations.
struct IntegerAncilla {
  std::size_t modes = 0;
  std::map<Occupation, std::int64_t> terms;
  std::int64_t denominator = 1;
};

std::optional<IntegerAncilla> integer_ancilla(const AncillaSpec& spec);

Polynomial ancilla_polynomial(const AncillaSpec& spec);

/// B_beta(a_1..a_4) Q(a_5..). When `modes` exceeds 4 + ancilla modes the
/// remaining inputs are vacuum.
Polynomial input_polynomial(BellState beta, const AncillaSpec& spec, std::size_t modes = 0);

}  // namespace bellopt
