#ifndef FIDSIM_DENSE_HPP
#define FIDSIM_DENSE_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>

#include "fidsim/chain.hpp"

// Brute-force ground truth on the full 2^N basis.
//
// Basis convention: basis state = bit pattern of the index; bit j-1 is
// spin j (site 1 = lowest-order bit); bit value 1 = spin up, I^z = +1/2.

namespace fidsim {

inline constexpr int kMaxDenseSpins = 12;  // 2^N matrices; 16.8M entries at N = 12

class DenseOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXcd matrix);

  int n_spins() const noexcept { return n_spins_; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

  double hermiticity_defect() const;  // max |A - A^dagger|
  std::complex<double> trace() const { return matrix_.trace(); }

 private:
  Eigen::MatrixXcd matrix_;
  int n_spins_;
};

// H = -(D/2) sum_{j=1}^{N-1} (I_j^+ I_{j+1}^+ + I_j^- I_{j+1}^-): real
// symmetric, couples only basis states that differ by flipping two adjacent
// aligned spins, so it changes total magnetization by exactly +-2.
DenseOperator build_hamiltonian(const ChainSpec& chain);

// I_z = sum_j I_j^z: diagonal, entry popcount(b) - N/2.
DenseOperator build_iz(int n_spins);

// Eigendecomposition of a Hermitian operator, cached so that many time
// points reuse one O(dim^3) solve. Real-symmetric inputs take a real path.
class SpectralEvolution {
 public:
  explicit SpectralEvolution(const DenseOperator& h);

  // rho(t) = exp(-iHt) rho0 exp(+iHt)
  DenseOperator evolve(const DenseOperator& rho0, double t) const;

  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  int n_spins_;
};

// One-shot convenience wrapper around SpectralEvolution.
DenseOperator evolve(const DenseOperator& h, const DenseOperator& rho0, double t);

// High-temperature FID: G(t) = Tr(rho(t) I_z) with rho(0) = I_z (traceless
// by convention; the invariant identity component carries no signal).
// Raw scale: G(0) = Tr(I_z^2) = N 2^{N-2}, exact.
FidSeries fid_oracle(const ChainSpec& chain, const TimeGrid& grid);

// Thermal FID: rho(0) = exp(beta I_z)/Tr exp(beta I_z).
// Raw scale: G(0) = (N/2) tanh(beta/2), exact by the product structure.
FidSeries thermal_fid_oracle(const ChainSpec& chain, const ThermalSpec& thermal,
                             const TimeGrid& grid);

// Multiple-quantum decomposition by magnetization grading: sector m holds
// the elements <a|rho|b> with popcount(a) - popcount(b) = m. The sectors
// are mutually orthogonal, so the Frobenius weights sum to ||rho||_F^2.
struct CoherenceSpectrum {
  std::map<int, double> weights;                   // m -> ||rho_m||_F^2
  std::map<int, std::complex<double>> iz_traces;   // m -> Tr(rho_m I_z)
  double total_weight = 0.0;                       // ||rho||_F^2
};

CoherenceSpectrum coherence_decompose(const DenseOperator& rho);

// The m-sector of rho as a standalone operator (zero elsewhere).
DenseOperator coherence_sector(const DenseOperator& rho, int m);

// Tr([H, I_z] [I_z, H]) / Tr(I_z^2); equals 2 D^2 (1 - 1/N).
double commutator_second_moment(const ChainSpec& chain);

}  // namespace fidsim

#endif
