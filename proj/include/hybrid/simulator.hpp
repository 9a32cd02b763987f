#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "hybrid/grid.hpp"

namespace hybrid {

/// Total generator of the joint evolution:
///   H = k^2/2M + (p/m) lambda_q + g1 (x-q)^2 + g2 (k/M - p/m)^2
///     + g3 (x-q) lambda_p
/// Every term is diagonal in one mixed position/frequency representation, so
/// the split propagator applies only unit-modulus phases.
struct HamiltonianSpec {
  double quantum_mass = 1.0;    // M
  double classical_mass = 1.0;  // m
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;

  void validate() const;
};

struct InitialPacket {
  double x0 = 0, sigma_x = 1, k0 = 0;
  double q0 = 0, sigma_q = 1;
  double p0 = 0, sigma_p = 1;
};

struct ObservableRecord {
  double t = 0, norm = 0, x = 0, k = 0, q = 0, p = 0;
  double ktot() const { return k + p; }
};

struct TimeSeries {
  std::vector<ObservableRecord> rows;
  /// Header "t,norm,x,k,q,p,ktot"; floats with 17 significant digits.
  void write_csv(std::ostream& out) const;
};

/// Second-order split-step propagator. Owns the FFTW plans and phase tables
/// for one (grid, hamiltonian) pair; states created through it share the
/// plans' alignment. Fixed factor order:
///   A(dt/2) B(dt/2) C(dt/2) D(dt) C(dt/2) B(dt/2) A(dt/2)
/// with A the position-diagonal g1 term, B the q-frequency Liouvillian
/// transport, C the p-frequency g3 term and D the x-frequency kinetic + g2
/// block. Factors with zero coupling are skipped exactly.
class Simulator {
 public:
  Simulator(GridSpec grid, HamiltonianSpec hamiltonian);
  ~Simulator();
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  const GridSpec& grid() const { return grid_; }
  const HamiltonianSpec& hamiltonian() const { return ham_; }

  /// Normalized product Gaussian (norm 1 to roundoff). Throws when a width is
  /// resolved by fewer than 4 points or the +-4 sigma support leaves the box.
  HybridState initial_gaussian(const InitialPacket& packet) const;

  /// One Strang step; aborts with std::runtime_error on non-finite data.
  void step(HybridState& state) const;

  /// Repeated stepping with recording every record_every steps (row 0 is the
  /// initial state).
  TimeSeries evolve(HybridState& state, long steps, long record_every) const;

  ObservableRecord observables(const HybridState& state) const;

  /// <H> assembled per split factor in its own diagonal representation.
  /// Diagnostic only; no conservation threshold is attached to it.
  double energy(const HybridState& state) const;

  /// Classical marginal rho(q,p) = integral |psi|^2 dx, row-major (q, p).
  std::vector<double> classical_marginal(const HybridState& state) const;

  /// Largest fraction of |psi|^2 inside the outer 5% of any axis; aliasing
  /// monitor for the periodic box.
  double tail_mass(const HybridState& state) const;

 private:
  struct Plans;

  GridSpec grid_;
  HamiltonianSpec ham_;
  std::unique_ptr<Plans> plans_;
};

/// Free classical transport by characteristics: samples
/// rho0(wrap(q - p t / mass), p) on the (q, p) grid. Independent of the
/// spectral stepper; the density is supplied analytically.
std::vector<double> characteristics_density(const GridSpec& grid,
                                            const std::function<double(double, double)>& rho0,
                                            double mass, double t);

/// Same transport from grid samples of rho0, using periodic cubic
/// interpolation along q.
std::vector<double> characteristics_density_sampled(const GridSpec& grid,
                                                    const std::vector<double>& rho0_samples,
                                                    double mass, double t);

/// sqrt(sum (a-b)^2 dq dp) over the classical grid.
double l2_distance(const GridSpec& grid, const std::vector<double>& a,
                   const std::vector<double>& b);

}  // namespace hybrid
