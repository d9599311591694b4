#include "squeeze/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "squeeze/errors.hpp"

namespace squeeze {

std::string_view to_string(Level level) {
  switch (level) {
    case Level::g: return "g";
    case Level::i: return "i";
    case Level::e: return "e";
  }
  return "?";
}

FockBasis::FockBasis(int n_max) : n_max_(n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("FockBasis: n_max must be >= 1, got " + std::to_string(n_max));
  }
}

int dimension(const FockBasis& basis, BasisKind kind) {
  return kind == BasisKind::Fock ? basis.dim() : kAtomLevels * basis.dim();
}

StateVector::StateVector(FockBasis basis, BasisKind kind, Eigen::VectorXcd amplitudes)
    : basis_(basis), kind_(kind), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != dimension(basis_, kind_)) {
    throw DimensionMismatch("StateVector: expected " + std::to_string(dimension(basis_, kind_)) +
                            " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
}

StateVector StateVector::fock(FockBasis basis, int n) {
  if (n < 0 || n > basis.n_max()) {
    throw std::out_of_range("StateVector::fock: n outside the truncated basis");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.dim());
  v(n) = 1.0;
  return {basis, BasisKind::Fock, std::move(v)};
}

StateVector StateVector::product(Level level, const StateVector& field) {
  if (field.kind() != BasisKind::Fock) {
    throw DimensionMismatch("StateVector::product: field state must be Fock-only");
  }
  const int d = field.basis().dim();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(kAtomLevels * d);
  v.segment(static_cast<int>(level) * d, d) = field.amplitudes();
  return {field.basis(), BasisKind::AtomFock, std::move(v)};
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw std::domain_error("StateVector::normalized: zero vector");
  }
  return {basis_, kind_, amplitudes_ / n};
}

StateVector StateVector::block(Level level) const {
  if (kind_ != BasisKind::AtomFock) {
    throw DimensionMismatch("StateVector::block: state has no atomic factor");
  }
  const int d = basis_.dim();
  return {basis_, BasisKind::Fock, amplitudes_.segment(static_cast<int>(level) * d, d)};
}

double StateVector::population(Level level) const {
  return block(level).amplitudes().squaredNorm();
}

OperatorMatrix annihilation(const FockBasis& basis) {
  const int d = basis.dim();
  OperatorMatrix a = OperatorMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

OperatorMatrix creation(const FockBasis& basis) { return annihilation(basis).adjoint(); }

OperatorMatrix number_operator(const FockBasis& basis) {
  const int d = basis.dim();
  OperatorMatrix n = OperatorMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    n(k, k) = static_cast<double>(k);
  }
  return n;
}

StateVector coherent_state(const FockBasis& basis, Complex alpha) {
  const double mean_n = std::norm(alpha);
  if (mean_n > basis.n_max() / 4.0) {
    throw TruncationError("coherent_state: |alpha|^2 = " + std::to_string(mean_n) +
                          " exceeds n_max/4 = " + std::to_string(basis.n_max() / 4.0));
  }
  const int d = basis.dim();
  Eigen::VectorXcd c(d);
  // c_n = e^{-|a|^2/2} a^n / sqrt(n!), built by the ratio c_n = c_{n-1} a / sqrt(n).
  c(0) = std::exp(-mean_n / 2.0);
  for (int n = 1; n < d; ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  // Poisson tail beyond n_max, summed directly rather than as 1 - sum.
  double term = std::norm(c(d - 1));
  double tail = 0.0;
  for (int n = d; n < d + 2000; ++n) {
    term *= mean_n / n;
    tail += term;
    if (term < 1e-300 || (n > 2 * mean_n && term < tail * 1e-17)) break;
  }
  if (tail >= 1e-10) {
    throw TruncationError("coherent_state: discarded tail mass " + std::to_string(tail) +
                          " >= 1e-10; increase n_max");
  }
  return StateVector(basis, BasisKind::Fock, c / c.norm());
}

OperatorMatrix atomic_projector(Level k, Level l, const FockBasis& basis) {
  const int d = basis.dim();
  OperatorMatrix p = OperatorMatrix::Zero(kAtomLevels * d, kAtomLevels * d);
  const int row = static_cast<int>(k) * d;
  const int col = static_cast<int>(l) * d;
  for (int n = 0; n < d; ++n) {
    p(row + n, col + n) = 1.0;
  }
  return p;
}

OperatorMatrix lift_to_atom_space(const OperatorMatrix& field_op) {
  const auto d = field_op.rows();
  OperatorMatrix out = OperatorMatrix::Zero(kAtomLevels * d, kAtomLevels * d);
  for (int level = 0; level < kAtomLevels; ++level) {
    out.block(level * d, level * d, d, d) = field_op;
  }
  return out;
}

Complex expectation(const StateVector& state, const OperatorMatrix& op) {
  if (op.rows() != state.dim() || op.cols() != state.dim()) {
    throw DimensionMismatch("expectation: operator is " + std::to_string(op.rows()) + "x" +
                            std::to_string(op.cols()) + ", state has dimension " +
                            std::to_string(state.dim()));
  }
  const auto& psi = state.amplitudes();
  return psi.dot(op * psi);
}

double hermiticity_residual(const OperatorMatrix& op) {
  const double scale = op.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (op - op.adjoint()).cwiseAbs().maxCoeff() / scale;
}

double tail_probability(const StateVector& state, double fraction) {
  const int d = state.basis().dim();
  const int top = std::max(1, static_cast<int>(std::ceil(fraction * d)));
  const int blocks = state.kind() == BasisKind::Fock ? 1 : kAtomLevels;
  double p = 0.0;
  for (int b = 0; b < blocks; ++b) {
    p += state.amplitudes().segment(b * d + d - top, top).squaredNorm();
  }
  return p;
}

}  // namespace squeeze
