#include "fidsim/dense.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace fidsim {

namespace {

int spins_from_dimension(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw ValidationError("dimension", "must be a power of two >= 2, got " +
                                           std::to_string(dim));
  return std::countr_zero(static_cast<unsigned long long>(dim));
}

void check_dense_guard(int n_spins) {
  if (n_spins < 1)
    throw ValidationError("n_spins", "must be >= 1, got " + std::to_string(n_spins));
  if (n_spins > kMaxDenseSpins)
    throw ComputeGuardError(
        "dense 2^N operators are limited to n_spins <= " +
        std::to_string(kMaxDenseSpins) +
        "; use the free-fermion engine for larger chains");
}

Eigen::MatrixXd hamiltonian_real(const ChainSpec& chain) {
  const int n = chain.n_spins();
  const Eigen::Index dim = Eigen::Index(1) << n;
  const double half_d = 0.5 * chain.coupling();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (int j = 0; j + 1 < n; ++j) {
      const unsigned pair = 0b11u << j;
      const unsigned bits = static_cast<unsigned>(b) & pair;
      if (bits == 0u || bits == pair) {
        const Eigen::Index a = static_cast<Eigen::Index>(static_cast<unsigned>(b) ^ pair);
        h(a, b) -= half_d;
      }
    }
  }
  return h;
}

Eigen::VectorXd iz_diagonal(int n_spins) {
  const Eigen::Index dim = Eigen::Index(1) << n_spins;
  Eigen::VectorXd m(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    m(b) = std::popcount(static_cast<unsigned long long>(b)) - 0.5 * n_spins;
  return m;
}

// exp(beta I_z) / Tr exp(beta I_z) on the diagonal, computed with the
// weights shifted by beta*N/2 so nothing overflows for any beta.
Eigen::VectorXd thermal_diagonal(int n_spins, double beta) {
  const Eigen::VectorXd m = iz_diagonal(n_spins);
  Eigen::VectorXd w(m.size());
  const double shift = 0.5 * n_spins;
  for (Eigen::Index b = 0; b < m.size(); ++b) w(b) = std::exp(beta * (m(b) - shift));
  return w / w.sum();
}

// Eigendecomposition of H plus the data needed to trace rho(t) against I_z
// when rho(0) is diagonal: G(t) = sum_{ab} cos((l_a - l_b) t) C_ab with
// C = (V^T rho0 V) o (V^T I_z V).
struct DiagonalFidPlan {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd coupling;
  double g0_exact;  // Tr(rho0 I_z), summed directly on the diagonal
};

DiagonalFidPlan make_fid_plan(const ChainSpec& chain, const Eigen::VectorXd& rho_diag) {
  const Eigen::MatrixXd h = hamiltonian_real(chain);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw ComputeGuardError("eigendecomposition of the chain Hamiltonian failed");

  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd m = iz_diagonal(chain.n_spins());

  DiagonalFidPlan plan;
  plan.eigenvalues = solver.eigenvalues();
  const Eigen::MatrixXd rho_rot = v.transpose() * rho_diag.asDiagonal() * v;
  const Eigen::MatrixXd iz_rot = v.transpose() * m.asDiagonal() * v;
  plan.coupling = rho_rot.cwiseProduct(iz_rot);

  long double g0 = 0.0L, comp = 0.0L;
  for (Eigen::Index b = 0; b < m.size(); ++b) {
    const long double y = static_cast<long double>(rho_diag(b)) * m(b) - comp;
    const long double t = g0 + y;
    comp = (t - g0) - y;
    g0 = t;
  }
  plan.g0_exact = static_cast<double>(g0);
  return plan;
}

double eval_fid_plan(const DiagonalFidPlan& plan, double t) {
  if (t == 0.0) return plan.g0_exact;  // evolution is the identity
  const Eigen::Index dim = plan.eigenvalues.size();
  long double g = 0.0L;
  for (Eigen::Index a = 0; a < dim; ++a) g += plan.coupling(a, a);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      const double delta = plan.eigenvalues(a) - plan.eigenvalues(b);
      g += 2.0L * plan.coupling(a, b) * std::cos(delta * t);
    }
  }
  return static_cast<double>(g);
}

FidSeries run_fid_plan(const ChainSpec& chain, const Eigen::VectorXd& rho_diag,
                       const TimeGrid& grid) {
  const DiagonalFidPlan plan = make_fid_plan(chain, rho_diag);
  FidSeries out;
  out.times = grid.times();
  out.values.resize(out.times.size());
  for (std::size_t i = 0; i < out.times.size(); ++i)
    out.values[i] = eval_fid_plan(plan, out.times[i]);
  out.normalization = Normalization::raw;
  out.amplitude_at_zero = plan.g0_exact;
  return out;
}

}  // namespace

DenseOperator::DenseOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    throw ValidationError("matrix", "must be square");
  n_spins_ = spins_from_dimension(matrix_.rows());
}

double DenseOperator::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

DenseOperator build_hamiltonian(const ChainSpec& chain) {
  check_dense_guard(chain.n_spins());
  return DenseOperator(hamiltonian_real(chain).cast<std::complex<double>>());
}

DenseOperator build_iz(int n_spins) {
  check_dense_guard(n_spins);
  const Eigen::VectorXd m = iz_diagonal(n_spins);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.size(), m.size());
  for (Eigen::Index b = 0; b < m.size(); ++b) out(b, b) = m(b);
  return DenseOperator(std::move(out));
}

SpectralEvolution::SpectralEvolution(const DenseOperator& h) : n_spins_(h.n_spins()) {
  const double scale = h.matrix().cwiseAbs().maxCoeff();
  if (h.hermiticity_defect() > 1e-12 * std::max(1.0, scale))
    throw ValidationError("h", "must be Hermitian");

  if (h.matrix().imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix().real());
    if (solver.info() != Eigen::Success)
      throw ComputeGuardError("eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors().cast<std::complex<double>>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
    if (solver.info() != Eigen::Success)
      throw ComputeGuardError("eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  }
}

DenseOperator SpectralEvolution::evolve(const DenseOperator& rho0, double t) const {
  if (rho0.dimension() != eigenvectors_.rows())
    throw ValidationError("rho0", "dimension mismatch with the Hamiltonian");
  if (t == 0.0) return rho0;  // the propagator is the identity

  Eigen::MatrixXcd rho_rot = eigenvectors_.adjoint() * rho0.matrix() * eigenvectors_;
  Eigen::VectorXcd phase(eigenvalues_.size());
  for (Eigen::Index a = 0; a < eigenvalues_.size(); ++a) {
    const double arg = -eigenvalues_(a) * t;
    phase(a) = std::complex<double>(std::cos(arg), std::sin(arg));
  }
  for (Eigen::Index a = 0; a < rho_rot.rows(); ++a)
    for (Eigen::Index b = 0; b < rho_rot.cols(); ++b)
      rho_rot(a, b) *= phase(a) * std::conj(phase(b));
  return DenseOperator(eigenvectors_ * rho_rot * eigenvectors_.adjoint());
}

DenseOperator evolve(const DenseOperator& h, const DenseOperator& rho0, double t) {
  return SpectralEvolution(h).evolve(rho0, t);
}

FidSeries fid_oracle(const ChainSpec& chain, const TimeGrid& grid) {
  check_dense_guard(chain.n_spins());
  return run_fid_plan(chain, iz_diagonal(chain.n_spins()), grid);
}

FidSeries thermal_fid_oracle(const ChainSpec& chain, const ThermalSpec& thermal,
                             const TimeGrid& grid) {
  check_dense_guard(chain.n_spins());
  return run_fid_plan(chain, thermal_diagonal(chain.n_spins(), thermal.beta()), grid);
}

CoherenceSpectrum coherence_decompose(const DenseOperator& rho) {
  const Eigen::Index dim = rho.dimension();
  const int n = rho.n_spins();
  const Eigen::VectorXd m_diag = iz_diagonal(n);

  CoherenceSpectrum spectrum;
  for (int m = -n; m <= n; ++m) {
    spectrum.weights[m] = 0.0;
    spectrum.iz_traces[m] = {0.0, 0.0};
  }
  for (Eigen::Index a = 0; a < dim; ++a) {
    const int pa = std::popcount(static_cast<unsigned long long>(a));
    for (Eigen::Index b = 0; b < dim; ++b) {
      const int m = pa - std::popcount(static_cast<unsigned long long>(b));
      const std::complex<double> v = rho.matrix()(a, b);
      spectrum.weights[m] += std::norm(v);
      if (a == b) spectrum.iz_traces[m] += v * m_diag(a);
    }
  }
  spectrum.total_weight = rho.matrix().squaredNorm();
  return spectrum;
}

DenseOperator coherence_sector(const DenseOperator& rho, int m) {
  const Eigen::Index dim = rho.dimension();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const int pa = std::popcount(static_cast<unsigned long long>(a));
    for (Eigen::Index b = 0; b < dim; ++b) {
      const int pb = std::popcount(static_cast<unsigned long long>(b));
      if (pa - pb == m) out(a, b) = rho.matrix()(a, b);
    }
  }
  return DenseOperator(std::move(out));
}

double commutator_second_moment(const ChainSpec& chain) {
  check_dense_guard(chain.n_spins());
  const Eigen::MatrixXd h = hamiltonian_real(chain);
  const Eigen::VectorXd m = iz_diagonal(chain.n_spins());
  const Eigen::MatrixXd k = h * m.asDiagonal() - m.asDiagonal() * h;
  // [H, I_z] is real antisymmetric, so Tr([H,I_z][I_z,H]) = ||K||_F^2.
  return k.squaredNorm() / m.squaredNorm();
}

}  // namespace fidsim
