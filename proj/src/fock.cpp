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

#include "bellopt/fock.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace bellopt {

Occupation::Occupation(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw std::invalid_argument("occupation counts must be non-negative");
  }
}

int Occupation::photons() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

Occupation Occupation::concat(const Occupation& tail) const {
  std::vector<int> out = counts_;
  out.insert(out.end(), tail.counts_.begin(), tail.counts_.end());
  return Occupation(std::move(out));
}

Occupation Occupation::padded(std::size_t modes) const {
  if (modes < counts_.size()) throw std::invalid_argument("cannot pad to fewer modes");
  std::vector<int> out = counts_;
  out.resize(modes, 0);
  return Occupation(std::move(out));
}

Occupation Occupation::with_added(std::size_t mode, int delta) const {
  std::vector<int> out = counts_;
  out.at(mode) += delta;
  return Occupation(std::move(out));
}

std::string Occupation::to_string() const {
  std::ostringstream os;
  bool wide = false;
  for (int c : counts_) wide |= c > 9;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (wide && i) os << ',';
    os << counts_[i];
  }
  return os.str();
}

std::int64_t factorial_product(const Occupation& e) {
  std::int64_t out = 1;
  for (int c : e.counts()) {
    for (int f = 2; f <= c; ++f) out *= f;
  }
  return out;
}

double monomial_normalization(const Occupation& e) {
  return std::sqrt(static_cast<double>(factorial_product(e)));
}

Polynomial Polynomial::constant(Complex value, std::size_t modes) {
  Polynomial p(modes);
  p.add_term(Occupation(std::vector<int>(modes, 0)), value);
  return p;
}

void Polynomial::add_term(const Occupation& monomial, Complex coefficient) {
  if (monomial.modes() != modes_) throw std::invalid_argument("monomial has wrong mode count");
  if (coefficient == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

Complex Polynomial::coefficient(const Occupation& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Complex{} : it->second;
}

std::optional<int> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int d = terms_.begin()->first.photons();
  for (const auto& [m, c] : terms_) {
    if (m.photons() != d) return std::nullopt;
  }
  return d;
}

Polynomial Polynomial::tensor(const Polynomial& tail) const {
  Polynomial out(modes_ + tail.modes_);
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : tail.terms_) out.add_term(m1.concat(m2), c1 * c2);
  }
  return out;
}

Polynomial Polynomial::padded(std::size_t modes) const {
  Polynomial out(modes);
  for (const auto& [m, c] : terms_) out.add_term(m.padded(modes), c);
  return out;
}

double Polynomial::state_norm() const {
  double total = 0.0;
  for (const auto& [m, c] : terms_) total += std::norm(c) * static_cast<double>(factorial_product(m));
  return total;
}

std::string_view bell_name(BellState beta) {
  switch (beta) {
    case BellState::PhiPlus: return "Phi+";
    case BellState::PhiMinus: return "Phi-";
    case BellState::PsiPlus: return "Psi+";
    case BellState::PsiMinus: return "Psi-";
  }
  return "?";
}

Polynomial bell_polynomial(BellState beta) {
  const double h = 1.0 / std::sqrt(2.0);
  Polynomial p(4);
  switch (beta) {
    case BellState::PhiPlus:
      p.add_term({1, 0, 1, 0}, h);
      p.add_term({0, 1, 0, 1}, h);
      break;
    case BellState::PhiMinus:
      p.add_term({1, 0, 1, 0}, h);
      p.add_term({0, 1, 0, 1}, -h);
      break;
    case BellState::PsiPlus:
      p.add_term({1, 0, 0, 1}, h);
      p.add_term({0, 1, 1, 0}, h);
      break;
    case BellState::PsiMinus:
      p.add_term({1, 0, 0, 1}, h);
      p.add_term({0, 1, 1, 0}, -h);
      break;
  }
  return p;
}

AncillaSpec AncillaSpec::from_polynomial(Polynomial state) {
  AncillaSpec spec;
  spec.family = AncillaFamily::Custom;
  spec.custom = std::move(state);
  spec.validate();
  return spec;
}

void AncillaSpec::validate() const {
  switch (family) {
    case AncillaFamily::Vacuum:
    case AncillaFamily::W3:
      return;
    case AncillaFamily::SinglePhotons:
    case AncillaFamily::BellPairs:
      if (parameter < 0) throw std::invalid_argument(label() + ": count must be >= 0");
      return;
    case AncillaFamily::Ghz:
      if (parameter < 2) throw std::invalid_argument(label() + ": GHZ needs at least 2 photons");
      return;
    case AncillaFamily::Grice:
    case AncillaFamily::EvL:
      if (parameter < 1) throw std::invalid_argument(label() + ": iteration count must be >= 1");
      if (parameter > 4) throw std::invalid_argument(label() + ": iteration count too large");
      return;
    case AncillaFamily::Custom: {
      if (!custom || custom->empty()) throw std::invalid_argument("custom ancilla has no terms");
      if (!custom->degree()) throw std::invalid_argument("custom ancilla must be homogeneous");
      if (std::abs(custom->state_norm() - 1.0) > 1e-9)
        throw std::invalid_argument("custom ancilla is not normalized");
      return;
    }
  }
}

int AncillaSpec::photons() const {
  switch (family) {
    case AncillaFamily::Vacuum: return 0;
    case AncillaFamily::SinglePhotons: return parameter;
    case AncillaFamily::BellPairs: return 2 * parameter;
    case AncillaFamily::Ghz: return parameter;
    case AncillaFamily::W3: return 3;
    case AncillaFamily::Grice: return (1 << (parameter + 1)) - 2;
    case AncillaFamily::EvL: return (1 << (parameter + 2)) - 4;
    case AncillaFamily::Custom: return custom ? custom->degree().value_or(0) : 0;
  }
  return 0;
}

int AncillaSpec::modes() const {
  switch (family) {
    case AncillaFamily::Vacuum: return 0;
    case AncillaFamily::SinglePhotons: return parameter;
    case AncillaFamily::BellPairs: return 4 * parameter;
    case AncillaFamily::Ghz: return 2 * parameter;
    case AncillaFamily::W3: return 6;
    case AncillaFamily::Grice: return 2 * photons();
    case AncillaFamily::EvL: return photons();
    case AncillaFamily::Custom: return custom ? static_cast<int>(custom->modes()) : 0;
  }
  return 0;
}

std::string AncillaSpec::label() const {
  auto with = [this](const char* name) { return std::string(name) + "(" + std::to_string(parameter) + ")"; };
  switch (family) {
    case AncillaFamily::Vacuum: return "vacuum";
    case AncillaFamily::SinglePhotons: return with("single_photons");
    case AncillaFamily::BellPairs: return with("bell_pairs");
    case AncillaFamily::Ghz: return with("ghz");
    case AncillaFamily::W3: return "w3";
    case AncillaFamily::Grice: return with("grice");
    case AncillaFamily::EvL: return with("evl");
    case AncillaFamily::Custom: return "custom";
  }
  return "?";
}

namespace {

IntegerAncilla integer_product(const IntegerAncilla& a, const IntegerAncilla& b) {
  IntegerAncilla out;
  out.modes = a.modes + b.modes;
  out.denominator = a.denominator * b.denominator;
  for (const auto& [m1, c1] : a.terms) {
    for (const auto& [m2, c2] : b.terms) out.terms[m1.concat(m2)] += c1 * c2;
  }
  std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
  return out;
}

IntegerAncilla integer_vacuum() {
  IntegerAncilla out;
  out.terms[Occupation()] = 1;
  return out;
}

// (prod_p x_{p,H}^power + prod_p x_{p,V}^power) over `pairs` dual-rail pairs.
IntegerAncilla integer_ghz_like(int pairs, int power) {
  IntegerAncilla out;
  out.modes = static_cast<std::size_t>(2 * pairs);
  std::vector<int> h(out.modes, 0), v(out.modes, 0);
  for (int p = 0; p < pairs; ++p) {
    h[2 * p] = power;
    v[2 * p + 1] = power;
  }
  out.terms[Occupation(h)] = 1;
  out.terms[Occupation(v)] = 1;
  std::int64_t one_side = 1;
  for (int p = 0; p < pairs; ++p) one_side *= power == 2 ? 2 : 1;
  out.denominator = 2 * one_side;
  return out;
}

IntegerAncilla integer_bell_pair() {
  IntegerAncilla out;
  out.modes = 4;
  out.terms[Occupation{1, 0, 1, 0}] = 1;
  out.terms[Occupation{0, 1, 0, 1}] = 1;
  out.denominator = 2;
  return out;
}

}  // namespace

std::optional<IntegerAncilla> integer_ancilla(const AncillaSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case AncillaFamily::Vacuum: return integer_vacuum();
    case AncillaFamily::SinglePhotons: {
      IntegerAncilla out;
      out.modes = static_cast<std::size_t>(spec.parameter);
      out.terms[Occupation(std::vector<int>(out.modes, 1))] = 1;
      return out;
    }
    case AncillaFamily::BellPairs: {
      IntegerAncilla out = integer_vacuum();
      for (int i = 0; i < spec.parameter; ++i) out = integer_product(out, integer_bell_pair());
      return out;
    }
    case AncillaFamily::Ghz: return integer_ghz_like(spec.parameter, 1);
    case AncillaFamily::W3: {
      IntegerAncilla out;
      out.modes = 6;
      out.terms[Occupation{0, 1, 1, 0, 1, 0}] = 1;
      out.terms[Occupation{1, 0, 0, 1, 1, 0}] = 1;
      out.terms[Occupation{1, 0, 1, 0, 0, 1}] = 1;
      out.denominator = 3;
      return out;
    }
    case AncillaFamily::Grice: {
      IntegerAncilla out = integer_vacuum();
      for (int j = 1; j <= spec.parameter; ++j) out = integer_product(out, integer_ghz_like(1 << j, 1));
      return out;
    }
    case AncillaFamily::EvL: {
      IntegerAncilla one = integer_vacuum();
      for (int j = 1; j <= spec.parameter; ++j) one = integer_product(one, integer_ghz_like(1 << (j - 1), 2));
      return integer_product(one, one);
    }
    case AncillaFamily::Custom: return std::nullopt;
  }
  return std::nullopt;
}

Polynomial ancilla_polynomial(const AncillaSpec& spec) {
  spec.validate();
  if (spec.family == AncillaFamily::Custom) return *spec.custom;
  const IntegerAncilla exact = *integer_ancilla(spec);
  const double scale = 1.0 / std::sqrt(static_cast<double>(exact.denominator));
  Polynomial out(exact.modes);
  for (const auto& [m, c] : exact.terms) out.add_term(m, static_cast<double>(c) * scale);
  return out;
}

Polynomial input_polynomial(BellState beta, const AncillaSpec& spec, std::size_t modes) {
  Polynomial out = bell_polynomial(beta).tensor(ancilla_polynomial(spec));
  if (modes > out.modes()) out = out.padded(modes);
  if (modes != 0 && modes < out.modes())
    throw std::invalid_argument("interferometer has fewer modes than the input state");
  return out;
}

}  // namespace bellopt
