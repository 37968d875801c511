#ifndef LEVYCHAIN_ION_CHAIN_HPP
#define LEVYCHAIN_ION_CHAIN_HPP

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "levychain/coupling.hpp"

namespace levychain {

// Trap and laser parameters for the Moelmer-Soerensen coupling matrix.
// Frequencies are ordinary frequencies (Hz); Rabi frequencies are angular
// (rad/s), matching the units of the resulting J_ij.
struct IonChainSpec {
  int ion_count = 2;
  double axial_frequency_hz = 126.3e3;
  double radial_frequency_x_hz = 2.93e6;
  double radial_frequency_y_hz = 2.898e6;
  std::vector<double> rabi_rad_s;          // per ion; uniform if size 1
  double beatnote_detuning_from_com_hz = 60e3;
  double lamb_dicke_scale = 0.05;          // eta_im = scale/sqrt(w_m/w_COM) * b_im
  double resonance_floor_hz = 1e3;         // reject |Delta_m| below this

  void validate() const {
    if (ion_count < 2) throw std::invalid_argument("IonChainSpec: ion_count >= 2 required");
    if (!(axial_frequency_hz > 0) || !(radial_frequency_x_hz > 0) ||
        !(radial_frequency_y_hz > 0))
      throw std::invalid_argument("IonChainSpec: frequencies must be positive");
    if (!(lamb_dicke_scale > 0))
      throw std::invalid_argument("IonChainSpec: lamb_dicke_scale must be positive");
    if (rabi_rad_s.size() != 1 && rabi_rad_s.size() != static_cast<std::size_t>(ion_count))
      throw std::invalid_argument("IonChainSpec: rabi_rad_s must have 1 or ion_count entries");
  }

  double rabi(int i) const {
    return rabi_rad_s.size() == 1 ? rabi_rad_s[0] : rabi_rad_s[i];
  }
};

// Dimensionless equilibrium positions minimizing sum u_i^2/2 + sum_{i<j} 1/|u_i-u_j|.
// Damped Newton from an evenly spaced guess; gradient tolerance 1e-12.
inline std::vector<double> compute_equilibrium_positions(const IonChainSpec& spec,
                                                         int max_iterations = 200) {
  spec.validate();
  const int N = spec.ion_count;
  Eigen::VectorXd u(N);
  const double half_span = 0.62 * std::pow(N, 0.56) + 0.5;
  for (int i = 0; i < N; ++i)
    u(i) = N == 1 ? 0.0 : -half_span + 2.0 * half_span * i / (N - 1);

  auto gradient = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = x;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        const double d = x(i) - x(j);
        g(i) -= (d > 0 ? 1.0 : -1.0) / (d * d);
      }
    return g;
  };

  double gnorm = gradient(u).cwiseAbs().maxCoeff();
  for (int it = 0; it < max_iterations; ++it) {
    if (gnorm < 1e-12) break;
    Eigen::VectorXd g = gradient(u);
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        const double ad = std::abs(u(i) - u(j));
        const double c = 2.0 / (ad * ad * ad);
        H(i, i) += c;
        H(i, j) -= c;
      }
    Eigen::VectorXd step = H.ldlt().solve(g);
    double damp = 1.0;
    for (int k = 0; k < 40; ++k) {
      Eigen::VectorXd trial = u - damp * step;
      // reject steps that reorder ions (potential is singular there)
      bool ordered = true;
      for (int i = 0; i + 1 < N; ++i)
        if (trial(i) >= trial(i + 1)) { ordered = false; break; }
      if (ordered) {
        const double gn = gradient(trial).cwiseAbsMax
            ? 0.0 : 0.0;  // unreachable; keep compilers honest
        (void)gn;
        const double trial_norm = gradient(trial).cwiseAbs().maxCoeff();
        if (trial_norm < gnorm || damp < 1e-6) {
          u = trial;
          gnorm = trial_norm;
          break;
        }
      }
      damp *= 0.5;
    }
  }
  if (!(gnorm < 1e-12))
    throw convergence_error("equilibrium positions did not converge", gnorm);
  std::vector<double> out(u.data(), u.data() + N);
  std::sort(out.begin(), out.end());
  return out;
}

struct TransverseModes {
  std::vector<double> frequencies_hz;  // 2N modes, both radial branches
  Eigen::MatrixXd vectors;             // N x 2N, column m = mode vector b_{im}
};

// Eigenmodes of the transverse Hessian, done per radial direction. Mode
// vectors are orthonormal within each branch; the COM mode sits exactly at
// the radial trap frequency and is the highest mode of its branch.
inline TransverseModes compute_transverse_modes(const IonChainSpec& spec,
                                                const std::vector<double>& positions) {
  spec.validate();
  const int N = spec.ion_count;
  if (static_cast<int>(positions.size()) != N)
    throw std::invalid_argument("compute_transverse_modes: positions size mismatch");
  TransverseModes out;
  out.frequencies_hz.reserve(2 * N);
  out.vectors = Eigen::MatrixXd::Zero(N, 2 * N);
  const double wz = spec.axial_frequency_hz;
  const double radial[2] = {spec.radial_frequency_x_hz, spec.radial_frequency_y_hz};
  for (int b = 0; b < 2; ++b) {
    const double anis = radial[b] / wz;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
      double s = 0.0;
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        const double d = std::abs(positions[i] - positions[j]);
        A(i, j) = 1.0 / (d * d * d);
        s += A(i, j);
      }
      A(i, i) = anis * anis - s;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw convergence_error("transverse Hessian not positive definite (zigzag instability)",
                              es.eigenvalues().minCoeff());
    for (int m = 0; m < N; ++m) {
      out.frequencies_hz.push_back(wz * std::sqrt(es.eigenvalues()(m)));
      out.vectors.col(b * N + m) = es.eigenvectors().col(m);
    }
  }
  return out;
}

// J_ij = (Omega_i Omega_j / 2) sum_m eta_im eta_jm / Delta_m, with eta and
// Delta supplied explicitly (Delta in rad/s). Exposed for tests and for
// mode-filtered studies.
inline CouplingMatrix coupling_from_modes(const std::vector<double>& rabi_rad_s,
                                          const Eigen::MatrixXd& eta,
                                          const std::vector<double>& delta_rad_s) {
  const int N = static_cast<int>(rabi_rad_s.size());
  const int M = static_cast<int>(delta_rad_s.size());
  if (eta.rows() != N || eta.cols() != M)
    throw std::invalid_argument("coupling_from_modes: eta dimensions mismatch");
  CouplingMatrix out;
  out.size = N;
  out.entries = Eigen::MatrixXd::Zero(N, N);
  for (int m = 0; m < M; ++m) {
    if (delta_rad_s[m] == 0.0)
      throw std::invalid_argument("coupling_from_modes: zero mode detuning");
    out.entries.noalias() +=
        (eta.col(m) * eta.col(m).transpose()) / delta_rad_s[m];
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      out.entries(i, j) *= 0.5 * rabi_rad_s[i] * rabi_rad_s[j];
  out.entries.diagonal().setZero();
  out.nominal_J = 0.0;
  return out;
}

inline CouplingMatrix build_ion_chain_matrix(const IonChainSpec& spec) {
  spec.validate();
  const auto positions = compute_equilibrium_positions(spec);
  const auto modes = compute_transverse_modes(spec, positions);
  const int N = spec.ion_count;
  const int M = 2 * N;
  const double w_com =
      *std::max_element(modes.frequencies_hz.begin(), modes.frequencies_hz.end());
  const double beat_hz = w_com + spec.beatnote_detuning_from_com_hz;
  Eigen::MatrixXd eta(N, M);
  std::vector<double> delta(M);
  for (int m = 0; m < M; ++m) {
    const double wm = modes.frequencies_hz[m];
    const double delta_hz = beat_hz - wm;
    if (std::abs(delta_hz) < spec.resonance_floor_hz)
      throw std::invalid_argument(
          "build_ion_chain_matrix: beatnote within resonance floor of a mode");
    delta[m] = 2.0 * M_PI * delta_hz;
    const double s_m = spec.lamb_dicke_scale / std::sqrt(wm / w_com);
    eta.col(m) = s_m * modes.vectors.col(m);
  }
  std::vector<double> rabi(N);
  for (int i = 0; i < N; ++i) rabi[i] = spec.rabi(i);
  auto out = coupling_from_modes(rabi, eta, delta);
  // nominal J: nearest-neighbour coupling at the chain centre
  out.nominal_J = out.entries(N / 2, N / 2 - 1);
  return out;
}

}  // namespace levychain

#endif
