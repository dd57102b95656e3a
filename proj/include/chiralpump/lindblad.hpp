#pragma once

#include <utility>
#include <vector>

#include "chiralpump/hilbert.hpp"

namespace chiralpump {

/// Decoherence rates, angular (rad/us), all >= 0. gamma34 / gamma41 describe
/// the leakage channels |3> -> |4_Q> and |4_Q> -> |1_Q> and act only in the
/// 7-level configuration.
struct DecoherenceParams {
  double gamma31 = 0.0;
  double gamma32 = 0.0;
  double gamma21 = 0.0;
  double gamma_dephase = 0.0;
  double gamma34 = 0.0;
  double gamma41 = 0.0;

  static DecoherenceParams from_mhz(double g31, double g32, double g21, double gdep,
                                    double g34 = 0.0, double g41 = 0.0) {
    return DecoherenceParams{mhz(g31), mhz(g32), mhz(g21), mhz(gdep), mhz(g34), mhz(g41)};
  }

  double relaxation_sum(int dim) const {
    double s = gamma31 + gamma32 + gamma21;
    if (dim == 7) s += gamma34 + gamma41;
    return s;
  }

  bool any_dissipation(int dim) const {
    return relaxation_sum(dim) > 0.0 || gamma_dephase > 0.0;
  }
};

/// Generator of the master equation acting on column-major vectorized rho.
struct Liouvillian {
  int dim = 0;
  Matrix m;  // dim^2 x dim^2
};

inline Vector vectorize(const Matrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

inline Matrix unvectorize(const Vector& v, int dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

namespace detail {

inline void require_nonnegative_rates(const DecoherenceParams& d) {
  if (d.gamma31 < 0.0 || d.gamma32 < 0.0 || d.gamma21 < 0.0 || d.gamma_dephase < 0.0 ||
      d.gamma34 < 0.0 || d.gamma41 < 0.0)
    throw PhysicsError("decoherence rates must be non-negative");
}

struct JumpChannel {
  double rate;
  StateLabel to;
  StateLabel from;
};

/// Population-relaxation channels |from> -> |to>, chirality-independent rates.
inline std::vector<JumpChannel> relaxation_channels(const DecoherenceParams& d) {
  return {
      {d.gamma21, StateLabel::G_L, StateLabel::M_L},
      {d.gamma21, StateLabel::G_R, StateLabel::M_R},
      {d.gamma31, StateLabel::G_L, StateLabel::E},
      {d.gamma31, StateLabel::G_R, StateLabel::E},
      {d.gamma32, StateLabel::M_L, StateLabel::E},
      {d.gamma32, StateLabel::M_R, StateLabel::E},
  };
}

/// Leakage channels of the 7-level configuration: |3> -> |4_Q> at gamma34 and
/// the chirality-preserving |4_Q> -> |1_Q> at gamma41.
inline std::vector<JumpChannel> leakage_channels(const DecoherenceParams& d) {
  return {
      {d.gamma34, StateLabel::X_L, StateLabel::E},
      {d.gamma34, StateLabel::X_R, StateLabel::E},
      {d.gamma41, StateLabel::G_L, StateLabel::X_L},
      {d.gamma41, StateLabel::G_R, StateLabel::X_R},
  };
}

/// One relaxation term, written in the literal gamma (A rho A^+ - A^+ A rho)
/// + H.c. form with A = |to><from|. This equals twice the standard Lindblad
/// dissipator at the same rate; the quoted rates are used as-is, with no 1/2
/// or x2 adjustment. This is the single place that fixes the convention.
inline void add_jump_term(Matrix& out, const Matrix& rho, const JumpChannel& ch) {
  if (ch.rate == 0.0) return;
  const int ito = index_of(ch.to);
  const int ifrom = index_of(ch.from);
  // A rho A^+ has a single entry source rho(from,from); A^+ A = |from><from|.
  out(ito, ito) += 2.0 * ch.rate * rho(ifrom, ifrom);
  out.row(ifrom) -= ch.rate * rho.row(ifrom);
  out.col(ifrom) -= ch.rate * rho.col(ifrom);
}

}  // namespace detail

/// L_rl rho: population relaxation through the gamma21 and gamma3n channels.
/// Traceless, and Hermiticity-preserving for Hermitian input.
inline Operator apply_relaxation(const DensityMatrix& rho, const DecoherenceParams& d) {
  detail::require_nonnegative_rates(d);
  const int dim = rho.dim();
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& ch : detail::relaxation_channels(d))
    detail::add_jump_term(out, rho.op.m, ch);
  return Operator(std::move(out));
}

/// L_dp rho = -gamma~ sum_{p != q} sigma_pp rho sigma_qq: every off-diagonal
/// entry decays at the state-independent rate gamma~, diagonal untouched.
inline Operator apply_dephasing(const DensityMatrix& rho, double gamma_dephase) {
  if (gamma_dephase < 0.0) throw PhysicsError("dephasing rate must be non-negative");
  Matrix out = -gamma_dephase * rho.op.m;
  out.diagonal().setZero();
  return Operator(std::move(out));
}

/// Leakage relaxation of the 7-level configuration, same structural form as
/// apply_relaxation. Dephasing over the leakage states is already covered by
/// the state-independent gamma~ of apply_dephasing.
inline Operator apply_leakage(const DensityMatrix& rho, const DecoherenceParams& d) {
  detail::require_nonnegative_rates(d);
  if (rho.dim() != 7)
    throw PhysicsError("leakage channels require the 7-level configuration");
  Matrix out = Matrix::Zero(7, 7);
  for (const auto& ch : detail::leakage_channels(d))
    detail::add_jump_term(out, rho.op.m, ch);
  return Operator(std::move(out));
}

/// Full right-hand side of the master equation, applied directly to a matrix:
/// -i[H, rho] + L_rl rho + L_dp rho (+ leakage when dim = 7).
inline Operator apply_master_rhs(const Operator& h, const DensityMatrix& rho,
                                 const DecoherenceParams& d) {
  if (h.dim() != rho.dim()) throw PhysicsError("Hamiltonian/state dimension mismatch");
  const Matrix& r = rho.op.m;
  Matrix out = Complex(0.0, -1.0) * (h.m * r - r * h.m);
  out += apply_relaxation(rho, d).m;
  out += apply_dephasing(rho, d.gamma_dephase).m;
  if (rho.dim() == 7) out += apply_leakage(rho, d).m;
  return Operator(std::move(out));
}

namespace detail {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace detail

/// Matrix form of the generator on column-major vectorized rho, via the
/// Kronecker identities vec(A rho B) = (B^T (x) A) vec(rho). Built from the
/// same channel list as the direct application; the two paths are
/// cross-checked against each other in the test suite.
inline Liouvillian build_liouvillian(const Operator& h, const DecoherenceParams& d) {
  detail::require_nonnegative_rates(d);
  const int dim = h.dim();
  if ((h.m - h.m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + h.m.cwiseAbs().maxCoeff()))
    throw PhysicsError("Liouvillian construction requires a Hermitian Hamiltonian");
  const Matrix id = Matrix::Identity(dim, dim);

  Matrix L = Complex(0.0, -1.0) * (detail::kron(id, h.m) - detail::kron(h.m.transpose(), id));

  auto channels = detail::relaxation_channels(d);
  if (dim == 7) {
    auto leak = detail::leakage_channels(d);
    channels.insert(channels.end(), leak.begin(), leak.end());
  }
  for (const auto& ch : channels) {
    if (ch.rate == 0.0) continue;
    Matrix a = Matrix::Zero(dim, dim);
    a(index_of(ch.to), index_of(ch.from)) = 1.0;
    const Matrix ada = a.adjoint() * a;
    L += ch.rate * (2.0 * detail::kron(a.conjugate(), a) - detail::kron(id, ada) -
                    detail::kron(ada.transpose(), id));
  }

  // Dephasing is diagonal in the vectorized basis: entry (q*dim + p) for p != q.
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q)
      if (p != q) L(q * dim + p, q * dim + p) -= d.gamma_dephase;

  return Liouvillian{dim, std::move(L)};
}

}  // namespace chiralpump
