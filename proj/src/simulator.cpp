#include "hybrid/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hybrid {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

bool power_of_two(int n) { return n >= 4 && (n & (n - 1)) == 0; }

/// Fixed-order compensated accumulation; observable reductions must not
/// depend on traversal accidents.
struct KahanSum {
  double sum = 0, carry = 0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

void GridSpec::validate() const {
  for (const AxisSpec* a : {&x, &q, &p}) {
    if (!power_of_two(a->points))
      throw std::invalid_argument("GridSpec: axis points must be a power of two >= 4");
    if (!(a->half_width > 0))
      throw std::invalid_argument("GridSpec: axis half-width must be positive");
  }
  if (!(dt > 0)) throw std::invalid_argument("GridSpec: dt must be positive");
  if (steps < 0 || record_every < 1) throw std::invalid_argument("GridSpec: bad step counts");
}

void HamiltonianSpec::validate() const {
  if (!(quantum_mass > 0) || !(classical_mass > 0))
    throw std::invalid_argument("HamiltonianSpec: masses must be positive");
  for (double g : {g1, g2, g3})
    if (!std::isfinite(g)) throw std::invalid_argument("HamiltonianSpec: coupling not finite");
}

struct Simulator::Plans {
  fftw_plan fx = nullptr, bx = nullptr, fq = nullptr, bq = nullptr, fp = nullptr,
            bp = nullptr;
  ComplexField scratch;
  // unit-modulus phase tables; the inverse-transform 1/N is folded in
  std::vector<std::complex<double>> a_half;              // (ix, iq)
  std::vector<std::complex<double>> b_half;              // (kq, ip), pre-scaled 1/Nq
  std::vector<std::complex<double>> c_half_x, c_half_q;  // (ix, kp) pre-scaled 1/Np; (iq, kp)
  std::vector<std::complex<double>> d_full;              // (kx, ip), pre-scaled 1/Nx

  ~Plans() {
    for (fftw_plan p : {fx, bx, fq, bq, fp, bp})
      if (p) fftw_destroy_plan(p);
  }
};

namespace {

fftw_plan make_axis_plan(int axis, int sign, std::complex<double>* buf, const GridSpec& g) {
  int nx = g.x.points, nq = g.q.points, np = g.p.points;
  fftw_iodim dim{};
  fftw_iodim loop[2]{};
  if (axis == 0) {
    dim = {nx, nq * np, nq * np};
    loop[0] = {nq, np, np};
    loop[1] = {np, 1, 1};
  } else if (axis == 1) {
    dim = {nq, np, np};
    loop[0] = {nx, nq * np, nq * np};
    loop[1] = {np, 1, 1};
  } else {
    dim = {np, 1, 1};
    loop[0] = {nx, nq * np, nq * np};
    loop[1] = {nq, np, np};
  }
  fftw_plan plan = fftw_plan_guru_dft(1, &dim, 2, loop, reinterpret_cast<fftw_complex*>(buf),
                                      reinterpret_cast<fftw_complex*>(buf), sign,
                                      FFTW_ESTIMATE);
  if (!plan) throw std::runtime_error("Simulator: FFTW plan creation failed");
  return plan;
}

void run_plan(fftw_plan plan, std::complex<double>* buf) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf),
                   reinterpret_cast<fftw_complex*>(buf));
}

}  // namespace

Simulator::Simulator(GridSpec grid, HamiltonianSpec hamiltonian)
    : grid_(grid), ham_(hamiltonian), plans_(std::make_unique<Plans>()) {
  grid_.validate();
  ham_.validate();
  plans_->scratch.assign(grid_.size(), {0.0, 0.0});
  std::complex<double>* buf = plans_->scratch.data();
  plans_->fx = make_axis_plan(0, FFTW_FORWARD, buf, grid_);
  plans_->bx = make_axis_plan(0, FFTW_BACKWARD, buf, grid_);
  plans_->fq = make_axis_plan(1, FFTW_FORWARD, buf, grid_);
  plans_->bq = make_axis_plan(1, FFTW_BACKWARD, buf, grid_);
  plans_->fp = make_axis_plan(2, FFTW_FORWARD, buf, grid_);
  plans_->bp = make_axis_plan(2, FFTW_BACKWARD, buf, grid_);

  const int nx = grid_.x.points, nq = grid_.q.points, np = grid_.p.points;
  const double half = grid_.dt / 2;
  const double inv_m = 1.0 / ham_.classical_mass;

  if (ham_.g1 != 0.0) {
    plans_->a_half.resize(static_cast<size_t>(nx) * nq);
    for (int ix = 0; ix < nx; ++ix)
      for (int iq = 0; iq < nq; ++iq) {
        double d = grid_.x.coord(ix) - grid_.q.coord(iq);
        plans_->a_half[ix * nq + iq] = std::exp(-kImag * (half * ham_.g1 * d * d));
      }
  }
  plans_->b_half.resize(static_cast<size_t>(nq) * np);
  for (int iq = 0; iq < nq; ++iq)
    for (int ip = 0; ip < np; ++ip) {
      double kq = grid_.q.frequency(iq);
      double pv = grid_.p.coord(ip);
      plans_->b_half[iq * np + ip] =
          std::exp(-kImag * (half * pv * inv_m * kq)) / static_cast<double>(nq);
    }
  if (ham_.g3 != 0.0) {
    plans_->c_half_x.resize(static_cast<size_t>(nx) * np);
    plans_->c_half_q.resize(static_cast<size_t>(nq) * np);
    for (int ix = 0; ix < nx; ++ix)
      for (int ip = 0; ip < np; ++ip) {
        double kp = grid_.p.frequency(ip);
        plans_->c_half_x[ix * np + ip] =
            std::exp(-kImag * (half * ham_.g3 * grid_.x.coord(ix) * kp)) /
            static_cast<double>(np);
      }
    for (int iq = 0; iq < nq; ++iq)
      for (int ip = 0; ip < np; ++ip) {
        double kp = grid_.p.frequency(ip);
        plans_->c_half_q[iq * np + ip] =
            std::exp(kImag * (half * ham_.g3 * grid_.q.coord(iq) * kp));
      }
  }
  plans_->d_full.resize(static_cast<size_t>(nx) * np);
  for (int ix = 0; ix < nx; ++ix)
    for (int ip = 0; ip < np; ++ip) {
      double kx = grid_.x.frequency(ix);
      double rel = kx / ham_.quantum_mass - grid_.p.coord(ip) * inv_m;
      double phase = grid_.dt * (kx * kx / (2 * ham_.quantum_mass) + ham_.g2 * rel * rel);
      plans_->d_full[ix * np + ip] = std::exp(-kImag * phase) / static_cast<double>(nx);
    }
}

Simulator::~Simulator() = default;

HybridState Simulator::initial_gaussian(const InitialPacket& packet) const {
  struct AxisCheck {
    const AxisSpec* axis;
    double center, sigma;
    const char* name;
  };
  const AxisCheck checks[] = {{&grid_.x, packet.x0, packet.sigma_x, "x"},
                              {&grid_.q, packet.q0, packet.sigma_q, "q"},
                              {&grid_.p, packet.p0, packet.sigma_p, "p"}};
  for (const auto& c : checks) {
    if (!(c.sigma > 0))
      throw std::invalid_argument(std::string("initial_gaussian: sigma_") + c.name +
                                  " must be positive");
    if (c.sigma / c.axis->spacing() < 4.0)
      throw std::invalid_argument(std::string("initial_gaussian: axis ") + c.name +
                                  " resolves fewer than 4 points per standard deviation");
    if (std::abs(c.center) + 4.0 * c.sigma > c.axis->half_width)
      throw std::invalid_argument(std::string("initial_gaussian: packet support on axis ") +
                                  c.name + " is not well inside the domain");
  }

  const int nx = grid_.x.points, nq = grid_.q.points, np = grid_.p.points;
  std::vector<std::complex<double>> fx(nx);
  std::vector<double> fq(nq), fp(np);
  for (int ix = 0; ix < nx; ++ix) {
    double x = grid_.x.coord(ix);
    double arg = (x - packet.x0) / packet.sigma_x;
    fx[ix] = std::exp(-arg * arg / 4.0) * std::exp(kImag * (packet.k0 * x));
  }
  for (int iq = 0; iq < nq; ++iq) {
    double arg = (grid_.q.coord(iq) - packet.q0) / packet.sigma_q;
    fq[iq] = std::exp(-arg * arg / 4.0);
  }
  for (int ip = 0; ip < np; ++ip) {
    double arg = (grid_.p.coord(ip) - packet.p0) / packet.sigma_p;
    fp[ip] = std::exp(-arg * arg / 4.0);
  }

  HybridState state;
  state.grid = grid_;
  state.psi.assign(grid_.size(), {0.0, 0.0});
  for (int ix = 0; ix < nx; ++ix)
    for (int iq = 0; iq < nq; ++iq)
      for (int ip = 0; ip < np; ++ip)
        state.psi[grid_.index(ix, iq, ip)] = fx[ix] * (fq[iq] * fp[ip]);

  KahanSum norm2;
  for (const auto& z : state.psi) norm2.add(std::norm(z));
  double dv = grid_.x.spacing() * grid_.q.spacing() * grid_.p.spacing();
  double scale = 1.0 / std::sqrt(norm2.sum * dv);
  for (auto& z : state.psi) z *= scale;
  return state;
}

namespace {

// broadcast multiply helpers over the (x,q,p) layout
void mul_xq(ComplexField& psi, const std::vector<std::complex<double>>& table,
            const GridSpec& g) {
  const int nq = g.q.points, np = g.p.points, nx = g.x.points;
  for (int ix = 0; ix < nx; ++ix)
    for (int iq = 0; iq < nq; ++iq) {
      std::complex<double> f = table[ix * nq + iq];
      std::complex<double>* row = psi.data() + g.index(ix, iq, 0);
      for (int ip = 0; ip < np; ++ip) row[ip] *= f;
    }
}

void mul_qp(ComplexField& psi, const std::vector<std::complex<double>>& table,
            const GridSpec& g) {
  const int nq = g.q.points, np = g.p.points, nx = g.x.points;
  for (int ix = 0; ix < nx; ++ix)
    for (int iq = 0; iq < nq; ++iq) {
      const std::complex<double>* t = table.data() + static_cast<size_t>(iq) * np;
      std::complex<double>* row = psi.data() + g.index(ix, iq, 0);
      for (int ip = 0; ip < np; ++ip) row[ip] *= t[ip];
    }
}

void mul_xp(ComplexField& psi, const std::vector<std::complex<double>>& table,
            const GridSpec& g) {
  const int nq = g.q.points, np = g.p.points, nx = g.x.points;
  for (int ix = 0; ix < nx; ++ix) {
    const std::complex<double>* t = table.data() + static_cast<size_t>(ix) * np;
    for (int iq = 0; iq < nq; ++iq) {
      std::complex<double>* row = psi.data() + g.index(ix, iq, 0);
      for (int ip = 0; ip < np; ++ip) row[ip] *= t[ip];
    }
  }
}

void mul_xp_qp(ComplexField& psi, const std::vector<std::complex<double>>& tx,
               const std::vector<std::complex<double>>& tq, const GridSpec& g) {
  const int nq = g.q.points, np = g.p.points, nx = g.x.points;
  for (int ix = 0; ix < nx; ++ix)
    for (int iq = 0; iq < nq; ++iq) {
      const std::complex<double>* a = tx.data() + static_cast<size_t>(ix) * np;
      const std::complex<double>* b = tq.data() + static_cast<size_t>(iq) * np;
      std::complex<double>* row = psi.data() + g.index(ix, iq, 0);
      for (int ip = 0; ip < np; ++ip) row[ip] *= a[ip] * b[ip];
    }
}

}  // namespace

void Simulator::step(HybridState& state) const {
  if (state.psi.size() != grid_.size())
    throw std::invalid_argument("Simulator::step: state does not match the grid");
  ComplexField& psi = state.psi;
  auto half_a = [&] {
    if (ham_.g1 != 0.0) mul_xq(psi, plans_->a_half, grid_);
  };
  auto half_b = [&] {
    run_plan(plans_->fq, psi.data());
    mul_qp(psi, plans_->b_half, grid_);
    run_plan(plans_->bq, psi.data());
  };
  auto half_c = [&] {
    if (ham_.g3 == 0.0) return;
    run_plan(plans_->fp, psi.data());
    mul_xp_qp(psi, plans_->c_half_x, plans_->c_half_q, grid_);
    run_plan(plans_->bp, psi.data());
  };

  half_a();
  half_b();
  half_c();
  run_plan(plans_->fx, psi.data());
  mul_xp(psi, plans_->d_full, grid_);
  run_plan(plans_->bx, psi.data());
  half_c();
  half_b();
  half_a();

  state.time += grid_.dt;
  const std::complex<double>& probe = psi[grid_.size() / 2];
  if (!std::isfinite(probe.real()) || !std::isfinite(probe.imag()))
    throw std::runtime_error("Simulator: non-finite amplitudes at t = " +
                             std::to_string(state.time));
}

ObservableRecord Simulator::observables(const HybridState& state) const {
  const int nx = grid_.x.points, nq = grid_.q.points, np = grid_.p.points;
  ObservableRecord rec;
  rec.t = state.time;
  KahanSum w, wx, wq, wp;
  for (int ix = 0; ix < nx; ++ix) {
    double x = grid_.x.coord(ix);
    for (int iq = 0; iq < nq; ++iq) {
      double q = grid_.q.coord(iq);
      const std::complex<double>* row = state.psi.data() + grid_.index(ix, iq, 0);
      for (int ip = 0; ip < np; ++ip) {
        double a = std::norm(row[ip]);
        w.add(a);
        wx.add(a * x);
        wq.add(a * q);
        wp.add(a * grid_.p.coord(ip));
      }
    }
  }
  double dv = grid_.x.spacing() * grid_.q.spacing() * grid_.p.spacing();
  rec.norm = w.sum * dv;
  rec.x = wx.sum / w.sum;
  rec.q = wq.sum / w.sum;
  rec.p = wp.sum / w.sum;

  // <k> in the x-frequency representation
  plans_->scratch.assign(state.psi.begin(), state.psi.end());
  run_plan(plans_->fx, plans_->scratch.data());
  KahanSum sw, swk;
  for (int ix = 0; ix < nx; ++ix) {
    double kx = grid_.x.frequency(ix);
    const std::complex<double>* slab = plans_->scratch.data() + grid_.index(ix, 0, 0);
    for (int j = 0; j < nq * np; ++j) {
      double a = std::norm(slab[j]);
      sw.add(a);
      swk.add(a * kx);
    }
  }
  rec.k = swk.sum / sw.sum;
  if (!std::isfinite(rec.norm))
    throw std::runtime_error("Simulator: non-finite norm at t = " + std::to_string(state.time));
  return rec;
}

double Simulator::energy(const HybridState& state) const {
  const int nx = grid_.x.points, nq = grid_.q.points, np = grid_.p.points;
  const double inv_m = 1.0 / ham_.classical_mass;
  double total = 0;

  if (ham_.g1 != 0.0) {
    KahanSum w, e;
    for (int ix = 0; ix < nx; ++ix)
      for (int iq = 0; iq < nq; ++iq) {
        double d = grid_.x.coord(ix) - grid_.q.coord(iq);
        const std::complex<double>* row = state.psi.data() + grid_.index(ix, iq, 0);
        for (int ip = 0; ip < np; ++ip) {
          double a = std::norm(row[ip]);
          w.add(a);
          e.add(a * ham_.g1 * d * d);
        }
      }
    total += e.sum / w.sum;
  }
  {  // (p/m) kq in the q-frequency representation
    plans_->scratch.assign(state.psi.begin(), state.psi.end());
    run_plan(plans_->fq, plans_->scratch.data());
    KahanSum w, e;
    for (int ix = 0; ix < nx; ++ix)
      for (int iq = 0; iq < nq; ++iq) {
        double kq = grid_.q.frequency(iq);
        const std::complex<double>* row = plans_->scratch.data() + grid_.index(ix, iq, 0);
        for (int ip = 0; ip < np; ++ip) {
          double a = std::norm(row[ip]);
          w.add(a);
          e.add(a * grid_.p.coord(ip) * inv_m * kq);
        }
      }
    total += e.sum / w.sum;
  }
  if (ham_.g3 != 0.0) {
    plans_->scratch.assign(state.psi.begin(), state.psi.end());
    run_plan(plans_->fp, plans_->scratch.data());
    KahanSum w, e;
    for (int ix = 0; ix < nx; ++ix)
      for (int iq = 0; iq < nq; ++iq) {
        double d = grid_.x.coord(ix) - grid_.q.coord(iq);
        const std::complex<double>* row = plans_->scratch.data() + grid_.index(ix, iq, 0);
        for (int ip = 0; ip < np; ++ip) {
          double a = std::norm(row[ip]);
          w.add(a);
          e.add(a * ham_.g3 * d * grid_.p.frequency(ip));
        }
      }
    total += e.sum / w.sum;
  }
  {  // kinetic + g2 block in the x-frequency representation
    plans_->scratch.assign(state.psi.begin(), state.psi.end());
    run_plan(plans_->fx, plans_->scratch.data());
    KahanSum w, e;
    for (int ix = 0; ix < nx; ++ix) {
      double kx = grid_.x.frequency(ix);
      for (int iq = 0; iq < nq; ++iq) {
        const std::complex<double>* row = plans_->scratch.data() + grid_.index(ix, iq, 0);
        for (int ip = 0; ip < np; ++ip) {
          double a = std::norm(row[ip]);
          double rel = kx / ham_.quantum_mass - grid_.p.coord(ip) * inv_m;
          w.add(a);
          e.add(a * (kx * kx / (2 * ham_.quantum_mass) + ham_.g2 * rel * rel));
        }
      }
    }
    total += e.sum / w.sum;
  }
  return total;
}

TimeSeries Simulator::evolve(HybridState& state, long steps, long record_every) const {
  if (record_every < 1) throw std::invalid_argument("evolve: record_every must be >= 1");
  TimeSeries series;
  series.rows.push_back(observables(state));
  for (long s = 0; s < steps; ++s) {
    step(state);
    if ((s + 1) % record_every == 0) series.rows.push_back(observables(state));
  }
  return series;
}

std::vector<double> Simulator::classical_marginal(const HybridState& state) const {
  const int nx = grid_.x.points, nq = grid_.q.points, np = grid_.p.points;
  std::vector<double> rho(static_cast<size_t>(nq) * np, 0.0);
  double dx = grid_.x.spacing();
  for (int iq = 0; iq < nq; ++iq)
    for (int ip = 0; ip < np; ++ip) {
      KahanSum s;
      for (int ix = 0; ix < nx; ++ix)
        s.add(std::norm(state.psi[grid_.index(ix, iq, ip)]));
      rho[static_cast<size_t>(iq) * np + ip] = s.sum * dx;
    }
  return rho;
}

double Simulator::tail_mass(const HybridState& state) const {
  const int nx = grid_.x.points, nq = grid_.q.points, np = grid_.p.points;
  auto outer = [](int j, int n) {
    int margin = n / 20;  // outer 5% on each side
    return j < margin || j >= n - margin;
  };
  KahanSum total, tx, tq, tp;
  for (int ix = 0; ix < nx; ++ix)
    for (int iq = 0; iq < nq; ++iq) {
      const std::complex<double>* row = state.psi.data() + grid_.index(ix, iq, 0);
      for (int ip = 0; ip < np; ++ip) {
        double a = std::norm(row[ip]);
        total.add(a);
        if (outer(ix, nx)) tx.add(a);
        if (outer(iq, nq)) tq.add(a);
        if (outer(ip, np)) tp.add(a);
      }
    }
  double worst = std::max(tx.sum, std::max(tq.sum, tp.sum));
  return worst / total.sum;
}

void TimeSeries::write_csv(std::ostream& out) const {
  out << "t,norm,x,k,q,p,ktot\n";
  char buf[64];
  auto emit = [&](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << sep;
  };
  for (const auto& r : rows) {
    emit(r.t, ',');
    emit(r.norm, ',');
    emit(r.x, ',');
    emit(r.k, ',');
    emit(r.q, ',');
    emit(r.p, ',');
    emit(r.ktot(), '\n');
  }
}

std::vector<double> characteristics_density(
    const GridSpec& grid, const std::function<double(double, double)>& rho0, double mass,
    double t) {
  if (!(mass > 0)) throw std::invalid_argument("characteristics_density: mass must be positive");
  const int nq = grid.q.points, np = grid.p.points;
  const double L = grid.q.length(), hw = grid.q.half_width;
  std::vector<double> rho(static_cast<size_t>(nq) * np);
  for (int iq = 0; iq < nq; ++iq)
    for (int ip = 0; ip < np; ++ip) {
      double p = grid.p.coord(ip);
      double shifted = grid.q.coord(iq) - p * t / mass;
      double wrapped = std::fmod(shifted + hw, L);
      if (wrapped < 0) wrapped += L;
      rho[static_cast<size_t>(iq) * np + ip] = rho0(wrapped - hw, p);
    }
  return rho;
}

std::vector<double> characteristics_density_sampled(const GridSpec& grid,
                                                    const std::vector<double>& rho0_samples,
                                                    double mass, double t) {
  const int nq = grid.q.points, np = grid.p.points;
  if (rho0_samples.size() != static_cast<size_t>(nq) * np)
    throw std::invalid_argument("characteristics_density_sampled: sample size mismatch");
  std::vector<double> rho(rho0_samples.size());
  for (int ip = 0; ip < np; ++ip) {
    double shift_cells = grid.p.coord(ip) * t / mass / grid.q.spacing();
    for (int iq = 0; iq < nq; ++iq) {
      double target = iq - shift_cells;
      double base = std::floor(target);
      double u = target - base;
      int i0 = static_cast<int>(base);
      auto sample = [&](int j) {
        int w = ((j % nq) + nq) % nq;
        return rho0_samples[static_cast<size_t>(w) * np + ip];
      };
      double m1 = sample(i0 - 1), z0 = sample(i0), z1 = sample(i0 + 1), z2 = sample(i0 + 2);
      // Catmull-Rom
      double val = z0 + 0.5 * u * (z1 - m1 +
                   u * (2 * m1 - 5 * z0 + 4 * z1 - z2 + u * (3 * (z0 - z1) + z2 - m1)));
      rho[static_cast<size_t>(iq) * np + ip] = val;
    }
  }
  return rho;
}

double l2_distance(const GridSpec& grid, const std::vector<double>& a,
                   const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("l2_distance: size mismatch");
  KahanSum s;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s.add(d * d);
  }
  return std::sqrt(s.sum * grid.q.spacing() * grid.p.spacing());
}

}  // namespace hybrid
