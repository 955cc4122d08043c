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

#include "bellopt/evolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bellopt {

double unitarity_defect(const UnitaryMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

void validate_unitary(const UnitaryMatrix& u, double tolerance) {
  if (u.rows() != u.cols() || u.rows() == 0) throw std::invalid_argument("unitary must be a non-empty square matrix");
  const double defect = unitarity_defect(u);
  if (!(defect <= tolerance))
    throw std::invalid_argument("matrix is not unitary: defect " + std::to_string(defect));
}

UnitaryMatrix nearest_unitary(const UnitaryMatrix& u) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Polynomial substitute(const Polynomial& input, const UnitaryMatrix& u) {
  const auto n = static_cast<std::size_t>(u.rows());
  if (input.modes() != n || u.cols() != u.rows()) throw std::invalid_argument("substitute: dimension mismatch");
  Polynomial out(n);
  for (const auto& [monomial, coefficient] : input.terms()) {
    Polynomial partial = Polynomial::constant(coefficient, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (int copy = 0; copy < monomial[i]; ++copy) {
        Polynomial next(n);
        for (const auto& [m, c] : partial.terms()) {
          for (std::size_t j = 0; j < n; ++j) {
            const Complex uij = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (uij != Complex{}) next.add_term(m.with_added(j, 1), c * uij);
          }
        }
        partial = std::move(next);
      }
    }
    for (const auto& [m, c] : partial.terms()) out.add_term(m, c);
  }
  return out;
}

namespace {

void check_event(const Polynomial& input, const Occupation& event, const UnitaryMatrix& u) {
  if (input.modes() != event.modes() || static_cast<Eigen::Index>(event.modes()) != u.rows())
    throw std::invalid_argument("amplitude: dimension mismatch");
  const auto degree = input.degree();
  if (!degree || *degree != event.photons())
    throw std::invalid_argument("amplitude: event photon count differs from input degree");
}

}  // namespace

Complex amplitude(const UnitaryMatrix& u, const Polynomial& input, const Occupation& event) {
  check_event(input, event, u);
  return substitute(input, u).coefficient(event) * monomial_normalization(event);
}

Eigen::MatrixXcd repeated_submatrix(const UnitaryMatrix& u, const Occupation& rows, const Occupation& cols) {
  const int size = rows.photons();
  if (cols.photons() != size) throw std::invalid_argument("repeated_submatrix: row and column totals differ");
  std::vector<Eigen::Index> row_index, col_index;
  for (std::size_t i = 0; i < rows.modes(); ++i)
    row_index.insert(row_index.end(), static_cast<std::size_t>(rows[i]), static_cast<Eigen::Index>(i));
  for (std::size_t j = 0; j < cols.modes(); ++j)
    col_index.insert(col_index.end(), static_cast<std::size_t>(cols[j]), static_cast<Eigen::Index>(j));
  Eigen::MatrixXcd m(size, size);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) m(a, b) = u(row_index[a], col_index[b]);
  }
  return m;
}

Complex permanent_ryser(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("permanent of a non-square matrix");
  if (n == 0) return 1.0;
  if (n > 30) throw std::invalid_argument("permanent_ryser: matrix too large");
  // Running row sums over the current column subset, updated one column per
  // Gray-code step.
  std::vector<Complex> row_sums(static_cast<std::size_t>(n), Complex{});
  Complex total{};
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const std::uint64_t flipped = next ^ gray;
    const int col = std::countr_zero(flipped);
    const double sign = (next & flipped) ? 1.0 : -1.0;
    for (Eigen::Index i = 0; i < n; ++i) row_sums[i] += sign * m(i, col);
    gray = next;
    Complex product = 1.0;
    for (const Complex& s : row_sums) product *= s;
    const int subset_size = std::popcount(gray);
    total += ((n - subset_size) % 2 == 0) ? product : -product;
  }
  return total;
}

Complex permanent_naive(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("permanent of a non-square matrix");
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Complex total{};
  do {
    Complex product = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) product *= m(i, perm[i]);
    total += product;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Complex amplitude_oracle(const UnitaryMatrix& u, const Polynomial& input, const Occupation& event) {
  check_event(input, event, u);
  Complex total{};
  for (const auto& [monomial, coefficient] : input.terms()) {
    const Eigen::MatrixXcd sub = repeated_submatrix(u, monomial, event);
    total += coefficient * permanent_ryser(sub);
  }
  return total / monomial_normalization(event);
}

namespace {

void enumerate_into(int mode, int remaining, std::vector<int>& current, std::vector<Occupation>& out) {
  const int modes = static_cast<int>(current.size());
  if (mode == modes - 1) {
    current[mode] = remaining;
    out.emplace_back(current);
    return;
  }
  // Lexicographic order: smallest leading count first.
  for (int c = 0; c <= remaining; ++c) {
    current[mode] = c;
    enumerate_into(mode + 1, remaining - c, current, out);
  }
}

}  // namespace

std::vector<Occupation> enumerate_events(int modes, int photons) {
  if (modes < 1 || photons < 0) throw std::invalid_argument("enumerate_events: need modes >= 1, photons >= 0");
  std::vector<Occupation> out;
  out.reserve(binomial(modes + photons - 1, photons));
  std::vector<int> current(static_cast<std::size_t>(modes), 0);
  enumerate_into(0, photons, current, out);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

UnitaryMatrix circuit_to_unitary(const Circuit& circuit, int modes) {
  if (modes < 1) throw std::invalid_argument("circuit needs at least one mode");
  UnitaryMatrix u = UnitaryMatrix::Identity(modes, modes);
  auto check = [modes](int i) {
    if (i < 0 || i >= modes) throw std::out_of_range("circuit element mode index out of range");
  };
  for (const CircuitElement& el : circuit) {
    check(el.first);
    check(el.second);
    UnitaryMatrix e = UnitaryMatrix::Identity(modes, modes);
    switch (el.kind) {
      case CircuitElement::Kind::BeamSplitter: {
        if (el.first == el.second) throw std::invalid_argument("beamsplitter needs two distinct modes");
        const double c = std::cos(el.angle), s = std::sin(el.angle);
        e(el.first, el.first) = c;
        e(el.first, el.second) = -s;
        e(el.second, el.first) = s;
        e(el.second, el.second) = c;
        break;
      }
      case CircuitElement::Kind::Phase:
        e(el.first, el.first) = std::polar(1.0, el.angle);
        break;
      case CircuitElement::Kind::Swap:
        e(el.first, el.first) = 0.0;
        e(el.second, el.second) = 0.0;
        e(el.first, el.second) = 1.0;
        e(el.second, el.first) = 1.0;
        break;
    }
    u = u * e;
  }
  return u;
}

}  // namespace bellopt
