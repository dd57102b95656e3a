#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>

#include "chiralpump/errors.hpp"

namespace chiralpump {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Angular frequency (rad/us) for a linear frequency given in MHz.
inline double mhz(double linear_mhz) { return two_pi * linear_mhz; }

/// The working basis, in the fixed order used by every matrix in the library:
/// [ |1_L>, |1_R>, |2_L>, |2_R>, |3>, |4_L>, |4_R> ].
/// G = chiral ground, M = chiral mediate-energy, E = achiral excited,
/// X = lower-energy chiral leakage states (7-level configuration only).
enum class StateLabel : int {
  G_L = 0,
  G_R = 1,
  M_L = 2,
  M_R = 3,
  E = 4,
  X_L = 5,
  X_R = 6,
};

enum class Chirality { Left, Right, Achiral };

inline int index_of(StateLabel s) { return static_cast<int>(s); }

inline StateLabel label_at(int i) {
  if (i < 0 || i > 6) throw PhysicsError("state index out of range: " + std::to_string(i));
  return static_cast<StateLabel>(i);
}

inline Chirality chirality(StateLabel s) {
  switch (s) {
    case StateLabel::G_L:
    case StateLabel::M_L:
    case StateLabel::X_L:
      return Chirality::Left;
    case StateLabel::G_R:
    case StateLabel::M_R:
    case StateLabel::X_R:
      return Chirality::Right;
    case StateLabel::E:
      return Chirality::Achiral;
  }
  throw PhysicsError("invalid state label");
}

/// L <-> R involution fixing the achiral state.
inline StateLabel swapped(StateLabel s) {
  switch (s) {
    case StateLabel::G_L: return StateLabel::G_R;
    case StateLabel::G_R: return StateLabel::G_L;
    case StateLabel::M_L: return StateLabel::M_R;
    case StateLabel::M_R: return StateLabel::M_L;
    case StateLabel::E:   return StateLabel::E;
    case StateLabel::X_L: return StateLabel::X_R;
    case StateLabel::X_R: return StateLabel::X_L;
  }
  throw PhysicsError("invalid state label");
}

inline const char* label_name(StateLabel s) {
  static constexpr std::array<const char*, 7> names = {"1L", "1R", "2L", "2R", "3", "4L", "4R"};
  return names[static_cast<std::size_t>(index_of(s))];
}

inline bool in_basis(StateLabel s, int dim) { return index_of(s) < dim; }

inline int checked_dim(int dim) {
  if (dim != 5 && dim != 7)
    throw PhysicsError("operator dimension must be 5 or 7, got " + std::to_string(dim));
  return dim;
}

/// Dense complex matrix over the labeled basis. Holds Hamiltonians, jump
/// operators, and generator outputs. Dimension is 5 or 7.
struct Operator {
  Matrix m;

  Operator() = default;
  explicit Operator(int dim) : m(Matrix::Zero(checked_dim(dim), dim)) {}
  explicit Operator(Matrix entries) : m(std::move(entries)) {
    if (m.rows() != m.cols()) throw PhysicsError("operator matrix must be square");
    checked_dim(static_cast<int>(m.rows()));
  }

  int dim() const { return static_cast<int>(m.rows()); }

  Complex& at(StateLabel r, StateLabel c) { return m(index_of(r), index_of(c)); }
  Complex at(StateLabel r, StateLabel c) const { return m(index_of(r), index_of(c)); }
};

/// A (candidate) density matrix; validity is checked, not enforced.
struct DensityMatrix {
  Operator op;

  int dim() const { return op.dim(); }

  /// rho(0) = sum_Q |1_Q><1_Q| / 2, the standard initial condition.
  static DensityMatrix racemic(int dim) {
    DensityMatrix rho{Operator(dim)};
    rho.op.at(StateLabel::G_L, StateLabel::G_L) = 0.5;
    rho.op.at(StateLabel::G_R, StateLabel::G_R) = 0.5;
    return rho;
  }

  static DensityMatrix pure(StateLabel s, int dim) {
    if (!in_basis(s, dim))
      throw PhysicsError(std::string("label outside basis: ") + label_name(s));
    DensityMatrix rho{Operator(dim)};
    rho.op.at(s, s) = 1.0;
    return rho;
  }

  static DensityMatrix maximally_mixed(int dim) {
    DensityMatrix rho{Operator(dim)};
    rho.op.m = Matrix::Identity(dim, dim) / static_cast<double>(dim);
    return rho;
  }
};

struct ValidityReport {
  double hermiticity_defect = 0.0;  // max |rho - rho^+|
  double trace_defect = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;      // of the hermitized matrix
  bool pass = false;
};

/// sigma_pq = |p><q| on the dim-level basis.
inline Operator basis_projector(StateLabel p, StateLabel q, int dim) {
  checked_dim(dim);
  if (!in_basis(p, dim) || !in_basis(q, dim))
    throw PhysicsError(std::string("label outside basis: |") + label_name(p) + "><" +
                       label_name(q) + "| needs dim > " + std::to_string(dim));
  Operator out(dim);
  out.at(p, q) = 1.0;
  return out;
}

/// Conjugation P A P with the L<->R permutation; involutive, spectrum-preserving.
inline Operator swap_chirality(const Operator& a) {
  const int d = a.dim();
  Operator out(d);
  for (int i = 0; i < d; ++i) {
    const int pi = index_of(swapped(label_at(i)));
    for (int j = 0; j < d; ++j) {
      const int pj = index_of(swapped(label_at(j)));
      out.m(pi, pj) = a.m(i, j);
    }
  }
  return out;
}

inline ValidityReport validate_density(const DensityMatrix& rho, double tol) {
  if (tol <= 0.0) throw PhysicsError("validity tolerance must be positive");
  ValidityReport rep;
  const Matrix& r = rho.op.m;
  rep.hermiticity_defect = (r - r.adjoint()).cwiseAbs().maxCoeff();
  rep.trace_defect = std::abs(r.trace() - Complex(1.0, 0.0));
  Matrix herm = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.pass = rep.hermiticity_defect <= tol && rep.trace_defect <= tol &&
             rep.min_eigenvalue >= -tol;
  return rep;
}

}  // namespace chiralpump
