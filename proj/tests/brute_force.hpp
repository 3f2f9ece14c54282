#pragma once

// Test-only reference model for the two-spin register. Deliberately shares
// no code with the library: fixed 4x4 std::complex arrays, gates written out
// from their definitions, the recursion evaluated directly, and pulse
// sequences built without any merging.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace brute {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;
using M4 = std::array<std::array<C, 4>, 4>;

inline constexpr double kJ = 194.8;

inline M4 identity() {
  M4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline M4 mul(const M4& a, const M4& b) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) m[i][j] += a[i][k] * b[k][j];
  return m;
}

inline M4 dagger(const M4& a) {
  M4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = std::conj(a[j][i]);
  return m;
}

inline M4 kron(const M2& a, const M2& b) {
  M4 m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return m;
}

inline M2 id2() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

// exp(-i th (cos(ph) X + sin(ph) Y) / 2)
inline M2 rot(double th, double ph) {
  const double c = std::cos(th / 2);
  const double s = std::sin(th / 2);
  const C e_minus = std::polar(1.0, -ph);
  const C e_plus = std::polar(1.0, ph);
  const C mi{0.0, -1.0};
  return {{{C{c}, mi * s * e_minus}, {mi * s * e_plus, C{c}}}};
}

inline M4 diag_phases(const std::array<double, 4>& p) {
  M4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = std::polar(1.0, p[i]);
  return m;
}

inline M4 phase_gate(const std::vector<int>& matching, double phi) {
  std::array<double, 4> p{};
  for (int x : matching) p[x] = phi;
  return diag_phases(p);
}

inline M4 hadamard_like() {
  const M2 ry = rot(std::numbers::pi / 2, std::numbers::pi / 2);
  return kron(ry, ry);
}

// V_{r+1} = V_r R_0 V_r^dag R_f V_r with V_0 = U, straight from the definition.
inline M4 ideal_v(int r, const std::vector<int>& matching, double phi) {
  if (r == 0) return hadamard_like();
  const M4 w = ideal_v(r - 1, matching, phi);
  return mul(mul(mul(mul(w, phase_gate({0}, phi)), dagger(w)), phase_gate(matching, phi)), w);
}

inline double success(const M4& v, const std::vector<int>& matching) {
  double p = 0.0;
  for (int x : matching) p += std::norm(v[x][0]);
  return p;
}

struct Errors {
  double eps = 0.0;
  double delta_j = 0.0;
  bool eps_on_phase_gates = true;
};

inline double wrap(double x) {
  x = std::fmod(x, 2 * std::numbers::pi);
  if (x > std::numbers::pi) x -= 2 * std::numbers::pi;
  if (x <= -std::numbers::pi) x += 2 * std::numbers::pi;
  return x;
}

// diag phases = global * exp(i a Hz) exp(i b Cz) exp(i g 2HzCz); the z
// factors become x/y/x pulse triples, the coupling term a delay (g < 0) or a
// refocused delay (g > 0).
inline M4 pulsed_phase_gate(const std::vector<int>& matching, double phi, const Errors& e) {
  std::array<double, 4> p{};
  for (int x : matching) p[x] = phi;
  const double a = wrap(0.5 * (p[0] + p[1] - p[2] - p[3]));
  const double b = wrap(0.5 * (p[0] - p[1] + p[2] - p[3]));
  const double g = wrap(0.5 * (p[0] - p[1] - p[2] + p[3]));
  const double s = 1.0 + (e.eps_on_phase_gates ? e.eps : 0.0);
  const double pi = std::numbers::pi;
  auto on_h = [&](double th, double ph) { return kron(rot(th * s, ph), id2()); };
  auto on_c = [&](double th, double ph) { return kron(id2(), rot(th * s, ph)); };
  auto delay = [&](double t) {
    const double w = pi * kJ * (1.0 + e.delta_j) * t;
    return diag_phases({-0.5 * w, 0.5 * w, 0.5 * w, -0.5 * w});
  };
  std::vector<M4> ops;
  if (a != 0.0) {
    ops.push_back(on_h(pi / 2, pi));
    ops.push_back(on_h(-a, pi / 2));
    ops.push_back(on_h(pi / 2, 0.0));
  }
  if (b != 0.0) {
    ops.push_back(on_c(pi / 2, pi));
    ops.push_back(on_c(-b, pi / 2));
    ops.push_back(on_c(pi / 2, 0.0));
  }
  if (g < 0.0) ops.push_back(delay(-g / (pi * kJ)));
  if (g > 0.0) {
    ops.push_back(on_c(pi, 0.0));
    ops.push_back(delay(g / (pi * kJ)));
    ops.push_back(on_c(pi, pi));
  }
  M4 m = identity();
  for (const auto& o : ops) m = mul(o, m);
  return m;
}

inline M4 pulsed_u(const Errors& e) {
  const double th = std::numbers::pi / 2 * (1.0 + e.eps);
  return kron(rot(th, std::numbers::pi / 2), rot(th, std::numbers::pi / 2));
}

// Same recursion with every gate replaced by its pulse realization. The
// realized R^dag is compiled from the negated phase, not taken as an adjoint.
inline M4 pulsed_v(int r, const std::vector<int>& matching, double phi, const Errors& e) {
  if (r == 0) return pulsed_u(e);
  struct Parts {
    M4 v, v_dag;
  };
  // V_r^dag is built from the gate-by-gate inverse list, not by dagger().
  auto build = [&](auto&& self, int depth) -> Parts {
    if (depth == 0) {
      const double th = std::numbers::pi / 2 * (1.0 + e.eps);
      return {pulsed_u(e), kron(rot(th, 3 * std::numbers::pi / 2), rot(th, 3 * std::numbers::pi / 2))};
    }
    const Parts w = self(self, depth - 1);
    const M4 r0 = pulsed_phase_gate({0}, phi, e);
    const M4 rf = pulsed_phase_gate(matching, phi, e);
    const M4 r0_dag = pulsed_phase_gate({0}, -phi, e);
    const M4 rf_dag = pulsed_phase_gate(matching, -phi, e);
    // time order: W, Rf, W^dag, R0, W  => V = W R0 W^dag Rf W
    const M4 v = mul(mul(mul(mul(w.v, r0), w.v_dag), rf), w.v);
    // inverse in time order: W^dag, R0^dag, W, Rf^dag, W^dag
    const M4 v_dag = mul(mul(mul(mul(w.v_dag, rf_dag), w.v), r0_dag), w.v_dag);
    return {v, v_dag};
  };
  return build(build, r).v;
}

}  // namespace brute
