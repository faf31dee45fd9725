#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rmt/rational.hpp"
#include "rmt/rng.hpp"

namespace rmt {

enum class Symmetry { real_symmetric, hermitian };

enum class LawKind { gaussian, rademacher, uniform_symmetric, discrete_symmetric };

/// One atom of a discrete symmetric law.
struct Atom {
  Rational value;
  Rational probability;
};

/// Symmetric entry law. Built-in kinds are parametrized by their exact
/// variance so that every even moment is an exact rational; discrete laws
/// carry explicit rational atoms.
struct EntryLaw {
  LawKind kind = LawKind::gaussian;
  Rational variance{1, 4};
  std::vector<Atom> atoms;  // discrete_symmetric only

  static EntryLaw gaussian(Rational variance);
  static EntryLaw rademacher(Rational variance);
  static EntryLaw uniform_symmetric(Rational variance);
  /// Throws ConfigError unless the atoms are symmetric and sum to one.
  static EntryLaw discrete(std::vector<Atom> atoms);

  /// Standard deviation as a double.
  double scale() const;

  /// Exact E xi^order; zero for odd orders.
  Rational moment(unsigned order) const;

  /// Draws the variate attached to `counter` of `rng`.
  double sample(const CounterRng& rng, std::uint64_t counter) const;

  std::string name() const;
};

Rational entry_moment(const EntryLaw& law, unsigned order);

/// Fully determines a Wigner matrix distribution.
struct EnsembleSpec {
  Symmetry symmetry = Symmetry::real_symmetric;
  EntryLaw off_diagonal;
  EntryLaw diagonal;
  int n = 1;
  /// Upper bound on the diagonal variance.
  Rational diagonal_variance_bound{1};
  /// Short identifier used in CSV records ("goe", "rademacher", ...).
  std::string label;

  /// beta = 1 for real symmetric, 2 for hermitian.
  int beta() const { return symmetry == Symmetry::real_symmetric ? 1 : 2; }

  /// Throws ConfigError on a violated variance condition or n < 1.
  void validate() const;
};

/// Off-diagonal variance required by the normalization: 1/4 (real) or
/// 1/8 for each of the real and imaginary parts (hermitian).
Rational required_off_diagonal_variance(Symmetry symmetry);

EnsembleSpec goe(int n);
EnsembleSpec gue(int n);
/// Rademacher entries in the given symmetry class; diagonal +-1/2.
EnsembleSpec rademacher_ensemble(int n, Symmetry symmetry = Symmetry::real_symmetric);
/// Uniform entries with the required variance; diagonal uniform with variance 1/4.
EnsembleSpec uniform_ensemble(int n, Symmetry symmetry = Symmetry::real_symmetric);

/// Looks up a named preset ("goe", "gue", "rademacher", "rademacher_hermitian",
/// "uniform", "uniform_hermitian"). Throws ConfigError for unknown names.
EnsembleSpec ensemble_by_name(const std::string& name, int n);

/// Builds a spec from config-file style keys. `law` is one of
/// gaussian|rademacher|uniform|discrete; `atoms` is "v:p,v:p,..." for
/// discrete laws (values are scaled exactly as written).
EnsembleSpec ensemble_from_keys(const std::string& symmetry, const std::string& law,
                                int n, const std::string& atoms = {});

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using SampledMatrix = std::variant<RealMatrix, ComplexMatrix>;

/// Entry (i,j) is xi_ij / sqrt(n) (plus i eta_ij / sqrt(n) when hermitian).
/// The result is a pure function of (spec, seed): entry draws are keyed by
/// their matrix position, not by generation order.
SampledMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t seed);

RealMatrix sample_real_symmetric(const EnsembleSpec& spec, std::uint64_t seed);
ComplexMatrix sample_hermitian(const EnsembleSpec& spec, std::uint64_t seed);

}  // namespace rmt
