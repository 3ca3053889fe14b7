#include "lrinv/catalog.hpp"

#include <cmath>

#include "lrinv/errors.hpp"

namespace lrinv {

ModelPreset spin_model(RealFn c0_coeff, RealFn theta, RealFn phi, double j, const TimeGrid& grid) {
  grid.validate();
  CoefficientSchedule sched{std::move(c0_coeff), std::move(theta), std::move(phi), {},
                            grid.t_start, grid.t_end};
  return {"spin", su2_spin_rep(j), std::move(sched),
          "spinning particle in a magnetic field; SU(2) spin-j irrep"};
}

ModelPreset coupled_oscillators_su2(RealFn omega1, RealFn omega2, ComplexFn g, int n1_plus_n2,
                                    const TimeGrid& grid) {
  if (n1_plus_n2 < 0) throw InvalidArgument("n1 + n2 must be nonnegative");
  ConservedSplit split = split_conserved(CoupledModel::Su2, std::move(omega1), std::move(omega2),
                                         std::move(g), 0.5 * n1_plus_n2, grid);
  return {"oscillators_su2", schwinger_su2_rep(n1_plus_n2), split.combined(),
          "two coupled oscillators, beam-splitter coupling; N = (n1 + n2)/2 conserved"};
}

ModelPreset coupled_oscillators_su11(RealFn omega1, RealFn omega2, ComplexFn g, int n1_minus_n2,
                                     int cutoff, const TimeGrid& grid) {
  ConservedSplit split = split_conserved(CoupledModel::Su11, std::move(omega1), std::move(omega2),
                                         std::move(g), 0.5 * n1_minus_n2, grid);
  return {"oscillators_su11", su11_two_mode_rep(n1_minus_n2, cutoff), split.combined(),
          "two oscillators with counter-rotating pair coupling; N = (n1 - n2)/2 conserved"};
}

ModelPreset general_harmonic_oscillator(RealFn X, RealFn Y, RealFn Z, int cutoff,
                                        const TimeGrid& grid, Parity parity, double F) {
  if (F != 0.0)
    throw RegimeError("the linear term F q lies outside the three-generator algebra");
  grid.validate();
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    if (!(X(t) * Z(t) > Y(t) * Y(t)))
      throw RegimeError("general harmonic oscillator needs XZ > Y^2 (elliptic) at t = " +
                        std::to_string(t));
  }
  ComplexFn alpha = [X, Y, Z](double t) { return cplx(0.5 * (X(t) - Z(t)), Y(t)); };
  RealFn gamma = [X, Z](double t) { return X(t) + Z(t); };
  CoefficientSchedule sched = schedule_from_coefficients(alpha, gamma, {}, grid, true);
  return {"gho", su11_one_mode_rep(cutoff, parity), std::move(sched),
          "general quadratic oscillator; q^2, p^2, i(qp + pq) rewritten through "
          "K+ = a^dag^2/2, K- = a^2/2, K3 = (a^dag a + 1/2)/2"};
}

ModelPreset two_level_atom(RealFn omega0, ComplexFn g, const TimeGrid& grid) {
  // g multiplies B = |2><1|, so the coefficient of A = |1><2| is g*.
  ComplexFn alpha = [g](double t) { return std::conj(g(t)); };
  CoefficientSchedule sched = schedule_from_coefficients(alpha, omega0, {}, grid, false);
  return {"two_level", two_level_rep(), std::move(sched),
          "driven two-level atom; transition operators close into SU(2)"};
}

std::vector<CatalogEntry> list_models() {
  return {
      {"spin", true, "su(2)", "spin-j in a time-dependent magnetic field"},
      {"oscillators_su2", true, "su(2)",
       "w1 a1^dag a1 + w2 a2^dag a2 + g a1^dag a2 + h.c. on fixed n1 + n2"},
      {"oscillators_su11", true, "su(1,1)",
       "w1 a1^dag a1 + w2 a2^dag a2 + g a1 a2 + h.c. on fixed n1 - n2, elliptic only"},
      {"gho", true, "su(1,1)", "(1/2)[X q^2 + Y(qp + pq) + Z p^2], XZ > Y^2, F = 0"},
      {"two_level", true, "su(2)", "two-level atom with a driven transition"},
      {"susy_jc", true, "block su(2)",
       "k-photon Jaynes-Cummings model solved in the (|m,e>, |m+k,g>) block"},
      {"su11_h4", false, "su(1,1) semidirect h(4)",
       "A K3 + F K+ + F* K- + B a^dag + B* a + G: six generators, not a three-generator "
       "algebra"},
      {"charged_particle_radial", false, "su(1,1)",
       "radial realization K1 = mu r^2, K2 = radial kinetic term, K3 = dilation; unbounded "
       "differential operators, documented mapping only"},
      {"generalized_cavity", false, "deformed ladder",
       "ladder algebras beyond A- = a^k (r(A0), s(A0) functions); only the oscillator "
       "realization is solved, as susy_jc"},
      {"hydrogenlike_atom", false, "deformed ladder",
       "hydrogenlike atom in a cavity with L+-, S_z ladders; not modeled"},
      {"two_photon_laser", false, "n/a", "coupled two-photon lasers; no explicit Hamiltonian"},
  };
}

}  // namespace lrinv
