#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hybrid/simulator.hpp"

using namespace hybrid;

namespace {

GridSpec desk_grid(double dt = 0.01, int n = 64, double hw = 8.0) {
  GridSpec g;
  g.x = {n, hw};
  g.q = {n, hw};
  g.p = {n, hw};
  g.dt = dt;
  return g;
}

constexpr double kPi = 3.14159265358979323846;

double gaussian_density(double q, double p, double q0, double sq, double p0, double sp) {
  double a = (q - q0) / sq, b = (p - p0) / sp;
  return std::exp(-0.5 * (a * a + b * b)) / (2 * kPi * sq * sp);
}

}  // namespace

TEST_CASE("grid_validation") {
  GridSpec g = desk_grid();
  g.x.points = 48;  // not a power of two
  CHECK_THROWS_AS(Simulator(g, HamiltonianSpec{}), std::invalid_argument);
  g = desk_grid(0.0);
  CHECK_THROWS_AS(Simulator(g, HamiltonianSpec{}), std::invalid_argument);
  HamiltonianSpec bad;
  bad.quantum_mass = -1;
  CHECK_THROWS_AS(Simulator(desk_grid(), bad), std::invalid_argument);
}

TEST_CASE("initial_gaussian_moments_and_norm") {
  Simulator sim(desk_grid(), HamiltonianSpec{});
  HybridState s = sim.initial_gaussian(InitialPacket{});
  ObservableRecord o = sim.observables(s);
  CHECK(std::abs(o.norm - 1.0) < 1e-12);
  CHECK(std::abs(o.x) < 1e-10);
  CHECK(std::abs(o.k) < 1e-10);
  CHECK(std::abs(o.q) < 1e-10);
  CHECK(std::abs(o.p) < 1e-10);

  InitialPacket moving;
  moving.k0 = 1.0;
  ObservableRecord om = sim.observables(sim.initial_gaussian(moving));
  CHECK(std::abs(om.k - 1.0) < 1e-6);

  InitialPacket shifted;
  shifted.q0 = 1.0;
  ObservableRecord os = sim.observables(sim.initial_gaussian(shifted));
  CHECK(std::abs(os.q - 1.0) < 1e-8);

  InitialPacket narrow;
  narrow.sigma_q = 0.5;  // 2 points per sigma at dx = 0.25
  CHECK_THROWS_AS(sim.initial_gaussian(narrow), std::invalid_argument);
  InitialPacket outside;
  outside.x0 = 6.0;
  CHECK_THROWS_AS(sim.initial_gaussian(outside), std::invalid_argument);
}

TEST_CASE("classical_marginal_integrates_to_one") {
  Simulator sim(desk_grid(), HamiltonianSpec{});
  HybridState s = sim.initial_gaussian(InitialPacket{});
  auto rho = sim.classical_marginal(s);
  double total = 0;
  for (double v : rho) total += v;
  total *= sim.grid().q.spacing() * sim.grid().p.spacing();
  CHECK(std::abs(total - 1.0) < 1e-10);
  CHECK(sim.tail_mass(s) < 1e-8);
}

TEST_CASE("free_classical_transport_matches_characteristics") {
  GridSpec g = desk_grid(0.05);
  HamiltonianSpec h;  // all couplings zero, masses 1
  Simulator sim(g, h);
  HybridState s = sim.initial_gaussian(InitialPacket{});
  for (int i = 0; i < 20; ++i) sim.step(s);  // t = 1
  auto rho_num = sim.classical_marginal(s);
  auto rho_ref = characteristics_density(
      g, [](double q, double p) { return gaussian_density(q, p, 0, 1, 0, 1); }, 1.0, 1.0);
  CHECK(l2_distance(g, rho_num, rho_ref) < 1e-6);

  // t = 0 oracle is the identity
  auto rho0 = characteristics_density(
      g, [](double q, double p) { return gaussian_density(q, p, 0, 1, 0, 1); }, 1.0, 0.0);
  auto rho_init = sim.classical_marginal(sim.initial_gaussian(InitialPacket{}));
  CHECK(l2_distance(g, rho0, rho_init) < 1e-9);
}

TEST_CASE("sampled_characteristics_agrees_with_analytic") {
  GridSpec g = desk_grid();
  auto rho0 = characteristics_density(
      g, [](double q, double p) { return gaussian_density(q, p, 0, 1, 0, 1); }, 1.0, 0.0);
  auto analytic = characteristics_density(
      g, [](double q, double p) { return gaussian_density(q, p, 0, 1, 0, 1); }, 1.0, 0.7);
  auto sampled = characteristics_density_sampled(g, rho0, 1.0, 0.7);
  CHECK(l2_distance(g, analytic, sampled) < 1e-3);
}

TEST_CASE("uniform_p_density_shears_rows_by_translation") {
  // rho0 independent of p: each p-row of the sheared density is a cyclic
  // shift of the initial q-profile, so the per-row shape is unchanged
  GridSpec g = desk_grid();
  auto f = [](double q, double) { return std::exp(-0.5 * q * q); };
  auto rho0 = characteristics_density(g, f, 1.0, 0.0);
  // pick t so each row shifts by an integer cell count: p * t = k * dq
  double t = g.q.spacing() / g.p.spacing();
  auto sheared = characteristics_density(g, f, 1.0, t);
  const int nq = g.q.points, np = g.p.points;
  for (int ip = 0; ip < np; ++ip) {
    int cells = static_cast<int>(std::lround(g.p.coord(ip) * t / g.q.spacing()));
    for (int iq = 0; iq < nq; ++iq) {
      int shifted = ((iq - cells) % nq + nq) % nq;
      CHECK(sheared[static_cast<size_t>(iq) * np + ip] ==
            doctest::Approx(rho0[static_cast<size_t>(shifted) * np + ip]).epsilon(1e-12));
    }
  }
}

TEST_CASE("free_quantum_packet_ehrenfest") {
  GridSpec g = desk_grid(0.02);
  HamiltonianSpec h;
  h.quantum_mass = 1.0;
  Simulator sim(g, h);
  InitialPacket packet;
  packet.k0 = 1.0;
  HybridState s = sim.initial_gaussian(packet);
  for (int i = 0; i < 50; ++i) sim.step(s);  // t = 1
  ObservableRecord o = sim.observables(s);
  CHECK(std::abs(o.x - 1.0) < 1e-6);
  CHECK(std::abs(o.k - 1.0) < 1e-6);
  CHECK(std::abs(o.norm - 1.0) < 1e-12);
}

TEST_CASE("velocity_coupling_conserves_total_momentum_exactly") {
  GridSpec g = desk_grid(0.01);
  HamiltonianSpec h;
  h.classical_mass = 2.0;
  h.g2 = 0.7;
  Simulator sim(g, h);
  InitialPacket packet;
  packet.k0 = 1.0;
  packet.p0 = -0.4;
  packet.x0 = 0.5;
  packet.q0 = -0.5;
  HybridState s = sim.initial_gaussian(packet);
  TimeSeries ts = sim.evolve(s, 300, 50);
  double k0 = ts.rows.front().ktot();
  for (const auto& r : ts.rows) {
    CHECK(std::abs(r.ktot() - k0) < 1e-12);
    CHECK(std::abs(r.norm - 1.0) < 1e-12);
    // no lambda_p coupling anywhere: the classical momentum cannot move
    CHECK(std::abs(r.p - ts.rows.front().p) < 1e-12);
  }
}

TEST_CASE("position_coupling_breaks_momentum_but_not_classical_p") {
  GridSpec g = desk_grid(0.01);
  HamiltonianSpec h;
  h.g1 = 0.5;
  Simulator sim(g, h);
  InitialPacket packet;
  packet.x0 = 0.5;
  packet.q0 = -0.5;  // separation 1
  HybridState s = sim.initial_gaussian(packet);
  TimeSeries ts = sim.evolve(s, 100, 10);
  double drift_ktot = std::abs(ts.rows.back().ktot() - ts.rows.front().ktot());
  double drift_p = std::abs(ts.rows.back().p - ts.rows.front().p);
  CHECK(drift_ktot > 1e-3);  // genuinely broken
  CHECK(drift_p < 1e-12);    // no lambda_p term, no classical force

  // Ehrenfest: d<k>/dt = -2 g1 (<x> - <q>) within 2% on interior samples
  for (size_t n = 1; n + 1 < ts.rows.size(); ++n) {
    double dt_rec = ts.rows[n + 1].t - ts.rows[n - 1].t;
    double dk = (ts.rows[n + 1].k - ts.rows[n - 1].k) / dt_rec;
    double force = -2.0 * h.g1 * (ts.rows[n].x - ts.rows[n].q);
    if (std::abs(force) < 0.1) continue;  // below 10x the numerical noise floor
    CHECK(std::abs(dk - force) < 0.02 * std::abs(force));
  }
}

TEST_CASE("lambda_p_coupling_pushes_classical_momentum") {
  GridSpec g = desk_grid(0.01);
  HamiltonianSpec h;
  h.g3 = 0.4;
  Simulator sim(g, h);
  InitialPacket packet;
  packet.x0 = 0.5;
  packet.q0 = -0.5;
  HybridState s = sim.initial_gaussian(packet);
  TimeSeries ts = sim.evolve(s, 100, 100);
  double drift_p = std::abs(ts.rows.back().p - ts.rows.front().p);
  CHECK(drift_p > 1e-3);
}

TEST_CASE("strang_step_is_locally_third_order") {
  HamiltonianSpec h;
  h.g1 = 1.0;
  h.g3 = 0.4;
  InitialPacket packet;
  packet.x0 = 0.5;
  packet.q0 = -0.5;
  packet.k0 = 1.0;

  auto local_error = [&](double dt) {
    Simulator coarse(desk_grid(dt), h);
    Simulator fine(desk_grid(dt / 2), h);
    HybridState a = coarse.initial_gaussian(packet);
    HybridState b = fine.initial_gaussian(packet);
    coarse.step(a);
    fine.step(b);
    fine.step(b);
    double acc = 0;
    for (size_t i = 0; i < a.psi.size(); ++i) acc += std::norm(a.psi[i] - b.psi[i]);
    return std::sqrt(acc);
  };
  double e1 = local_error(0.08);
  double e2 = local_error(0.04);
  double order = std::log2(e1 / e2);
  CHECK(order > 2.5);  // one step vs two half steps differ at O(dt^3)
  CHECK(order < 3.5);
}

TEST_CASE("nan_detection_aborts") {
  Simulator sim(desk_grid(), HamiltonianSpec{});
  HybridState s = sim.initial_gaussian(InitialPacket{});
  s.psi[s.psi.size() / 2] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(sim.step(s), std::runtime_error);
}

TEST_CASE("energy_diagnostic_is_finite_and_steady_for_free_motion") {
  GridSpec g = desk_grid(0.02);
  Simulator sim(g, HamiltonianSpec{});
  InitialPacket packet;
  packet.k0 = 1.0;
  HybridState s = sim.initial_gaussian(packet);
  double e0 = sim.energy(s);
  for (int i = 0; i < 25; ++i) sim.step(s);
  double e1 = sim.energy(s);
  CHECK(std::isfinite(e0));
  CHECK(std::abs(e1 - e0) < 1e-10);  // free terms commute, conserved to roundoff
}

TEST_CASE("csv_round_trip_full_precision") {
  TimeSeries ts;
  ObservableRecord r;
  r.t = 0.1;
  r.norm = 1.0 - 1e-13;
  r.x = -0.12345678901234567;
  r.k = 1.0 / 3.0;
  r.q = 2.0 / 7.0;
  r.p = -1e-15;
  ts.rows.push_back(r);
  std::ostringstream out;
  ts.write_csv(out);
  std::istringstream in(out.str());
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "t,norm,x,k,q,p,ktot");
  std::getline(in, line);
  double vals[7];
  std::replace(line.begin(), line.end(), ',', ' ');
  std::istringstream ls(line);
  for (double& v : vals) ls >> v;
  CHECK(vals[0] == r.t);
  CHECK(vals[1] == r.norm);
  CHECK(vals[2] == r.x);
  CHECK(vals[3] == r.k);
  CHECK(vals[4] == r.q);
  CHECK(vals[5] == r.p);
  CHECK(vals[6] == r.ktot());
}
