#pragma once

#include <string>
#include <vector>

#include "lrinv/algebra.hpp"
#include "lrinv/schedule.hpp"
#include "lrinv/types.hpp"

namespace lrinv {

/// A runnable model: a representation, its coefficient schedule (c-number
/// shift included) and a short description.
struct ModelPreset {
  std::string name;
  Representation rep;
  CoefficientSchedule schedule;
  std::string note;
};

/// H = c0_coeff { (1/2) sin(theta) e^{-i phi} J+ + h.c. + cos(theta) J3 } on spin j.
ModelPreset spin_model(RealFn c0_coeff, RealFn theta, RealFn phi, double j, const TimeGrid& grid);

/// w1 a1^dag a1 + w2 a2^dag a2 + g a1^dag a2 + g* a2^dag a1 on n1 + n2 = total.
ModelPreset coupled_oscillators_su2(RealFn omega1, RealFn omega2, ComplexFn g, int n1_plus_n2,
                                    const TimeGrid& grid);

/// w1 a1^dag a1 + w2 a2^dag a2 + g a1 a2 + g* a1^dag a2^dag on n1 - n2 = diff,
/// truncated to `cutoff` rungs. Rejects couplings outside the elliptic regime.
ModelPreset coupled_oscillators_su11(RealFn omega1, RealFn omega2, ComplexFn g, int n1_minus_n2,
                                     int cutoff, const TimeGrid& grid);

/// (1/2)[X q^2 + Y (qp + pq) + Z p^2] + F q on one parity ladder of a single
/// mode. A nonzero F (linear term) is not a three-generator Hamiltonian and is
/// rejected with RegimeError, as is XZ <= Y^2.
ModelPreset general_harmonic_oscillator(RealFn X, RealFn Y, RealFn Z, int cutoff,
                                        const TimeGrid& grid, Parity parity = Parity::Even,
                                        double F = 0.0);

/// (omega0/2)(|1><1| - |2><2|) + g |2><1| + g* |1><2|.
ModelPreset two_level_atom(RealFn omega0, ComplexFn g, const TimeGrid& grid);

struct CatalogEntry {
  std::string name;
  bool runnable = false;
  std::string algebra;
  std::string note;
};

/// Preset vocabulary followed by documented exclusions.
std::vector<CatalogEntry> list_models();

}  // namespace lrinv
