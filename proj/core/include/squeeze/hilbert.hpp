#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace squeeze {

using Complex = std::complex<double>;

// Dense complex matrix over either the Fock space or atom (x) Fock space.
// Dimensions never exceed 3 * (n_max + 1), so dense storage is used throughout.
using OperatorMatrix = Eigen::MatrixXcd;

enum class Level : int { g = 0, i = 1, e = 2 };

inline constexpr int kAtomLevels = 3;

std::string_view to_string(Level level);

// Truncated photon-number basis |0>, ..., |n_max>.
class FockBasis {
 public:
  explicit FockBasis(int n_max);

  int n_max() const noexcept { return n_max_; }
  int dim() const noexcept { return n_max_ + 1; }

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  int n_max_;
};

enum class BasisKind { Fock, AtomFock };

// Amplitude vector in a Fock-only or Atom (x) Fock basis. Atom (x) Fock is
// level-major: index = level * (n_max + 1) + n, levels ordered g, i, e.
class StateVector {
 public:
  StateVector(FockBasis basis, BasisKind kind, Eigen::VectorXcd amplitudes);

  static StateVector fock(FockBasis basis, int n);
  static StateVector product(Level level, const StateVector& field);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  FockBasis basis() const noexcept { return basis_; }
  BasisKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }

  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;

  // Field component |Phi_level> of an Atom (x) Fock state, not renormalized.
  StateVector block(Level level) const;
  double population(Level level) const;

 private:
  FockBasis basis_;
  BasisKind kind_;
  Eigen::VectorXcd amplitudes_;
};

int dimension(const FockBasis& basis, BasisKind kind);

OperatorMatrix annihilation(const FockBasis& basis);
OperatorMatrix creation(const FockBasis& basis);
OperatorMatrix number_operator(const FockBasis& basis);

// Coherent state renormalized on the truncated space. Throws TruncationError
// when |alpha|^2 > n_max / 4 or the discarded tail mass reaches 1e-10.
StateVector coherent_state(const FockBasis& basis, Complex alpha);

// |k><l| (x) I_field.
OperatorMatrix atomic_projector(Level k, Level l, const FockBasis& basis);

// I_atom (x) field_op.
OperatorMatrix lift_to_atom_space(const OperatorMatrix& field_op);

Complex expectation(const StateVector& state, const OperatorMatrix& op);

// max|H - H^dagger| / max|H|; zero for the zero matrix.
double hermiticity_residual(const OperatorMatrix& op);

// Probability carried by the top `fraction` of Fock levels, summed over
// atomic blocks. Used as the truncation-leakage diagnostic.
double tail_probability(const StateVector& state, double fraction = 0.1);

inline constexpr double kLeakageThreshold = 1e-6;

}  // namespace squeeze
