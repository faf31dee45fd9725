#include "rmt/ensembles.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational result{1};
  for (unsigned k = 0; k < exponent; ++k) result *= base;
  return result;
}

BigInt double_factorial_odd(unsigned m) {  // (2m-1)!!
  BigInt result = 1;
  for (unsigned k = 1; k < 2 * m; k += 2) result *= k;
  return result;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

EntryLaw EntryLaw::gaussian(Rational variance) {
  return EntryLaw{LawKind::gaussian, std::move(variance), {}};
}

EntryLaw EntryLaw::rademacher(Rational variance) {
  return EntryLaw{LawKind::rademacher, std::move(variance), {}};
}

EntryLaw EntryLaw::uniform_symmetric(Rational variance) {
  return EntryLaw{LawKind::uniform_symmetric, std::move(variance), {}};
}

EntryLaw EntryLaw::discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) throw ConfigError("discrete law needs at least one atom");
  std::map<Rational, Rational> mass;
  Rational total = 0;
  for (const auto& a : atoms) {
    if (a.probability <= 0) throw ConfigError("discrete law: atom probabilities must be positive");
    mass[a.value] += a.probability;
    total += a.probability;
  }
  if (total != 1) throw ConfigError("discrete law: probabilities sum to " + to_string(total) + ", not 1");
  for (const auto& [value, p] : mass) {
    const auto mirror = mass.find(-value);
    if (mirror == mass.end() || mirror->second != p)
      throw ConfigError("discrete law is not symmetric about 0 (atom " + to_string(value) + ")");
  }
  EntryLaw law{LawKind::discrete_symmetric, 0, std::move(atoms)};
  law.variance = law.moment(2);
  return law;
}

double EntryLaw::scale() const { return std::sqrt(to_double(variance)); }

Rational EntryLaw::moment(unsigned order) const {
  if (order % 2 == 1) return 0;
  const unsigned m = order / 2;
  switch (kind) {
    case LawKind::gaussian:
      return Rational(double_factorial_odd(m)) * pow_rational(variance, m);
    case LawKind::rademacher:
      return pow_rational(variance, m);
    case LawKind::uniform_symmetric:
      // half-width a with a^2 = 3 variance; E xi^(2m) = a^(2m) / (2m+1)
      return pow_rational(3 * variance, m) / (2 * m + 1);
    case LawKind::discrete_symmetric: {
      Rational sum = 0;
      for (const auto& a : atoms) sum += a.probability * pow_rational(a.value, order);
      return sum;
    }
  }
  return 0;
}

double EntryLaw::sample(const CounterRng& rng, std::uint64_t counter) const {
  switch (kind) {
    case LawKind::gaussian:
      return scale() * rng.normal(counter);
    case LawKind::rademacher:
      return (rng.bits(counter) >> 63) ? scale() : -scale();
    case LawKind::uniform_symmetric: {
      const double half_width = std::sqrt(3.0 * to_double(variance));
      return half_width * (2.0 * rng.uniform(counter) - 1.0);
    }
    case LawKind::discrete_symmetric: {
      const double u = rng.uniform(counter);
      double cdf = 0;
      for (const auto& a : atoms) {
        cdf += to_double(a.probability);
        if (u < cdf) return to_double(a.value);
      }
      return to_double(atoms.back().value);
    }
  }
  return 0;
}

std::string EntryLaw::name() const {
  switch (kind) {
    case LawKind::gaussian: return "gaussian";
    case LawKind::rademacher: return "rademacher";
    case LawKind::uniform_symmetric: return "uniform";
    case LawKind::discrete_symmetric: return "discrete";
  }
  return "unknown";
}

Rational entry_moment(const EntryLaw& law, unsigned order) { return law.moment(order); }

Rational required_off_diagonal_variance(Symmetry symmetry) {
  return symmetry == Symmetry::real_symmetric ? Rational(1, 4) : Rational(1, 8);
}

void EnsembleSpec::validate() const {
  if (n < 1) throw ConfigError("ensemble dimension n must be >= 1, got " + std::to_string(n));
  const Rational required = required_off_diagonal_variance(symmetry);
  if (off_diagonal.variance != required) {
    throw ConfigError("off-diagonal variance is " + to_string(off_diagonal.variance) +
                      ", the " +
                      (symmetry == Symmetry::real_symmetric ? "real symmetric" : "hermitian") +
                      " class requires " + to_string(required));
  }
  if (diagonal.variance > diagonal_variance_bound) {
    throw ConfigError("diagonal variance " + to_string(diagonal.variance) +
                      " exceeds the declared bound " + to_string(diagonal_variance_bound));
  }
}

EnsembleSpec goe(int n) {
  return {Symmetry::real_symmetric, EntryLaw::gaussian({1, 4}), EntryLaw::gaussian({1, 2}), n,
          1, "goe"};
}

EnsembleSpec gue(int n) {
  return {Symmetry::hermitian, EntryLaw::gaussian({1, 8}), EntryLaw::gaussian({1, 4}), n, 1,
          "gue"};
}

EnsembleSpec rademacher_ensemble(int n, Symmetry symmetry) {
  const auto v = required_off_diagonal_variance(symmetry);
  return {symmetry, EntryLaw::rademacher(v), EntryLaw::rademacher({1, 4}), n, 1,
          symmetry == Symmetry::real_symmetric ? "rademacher" : "rademacher_hermitian"};
}

EnsembleSpec uniform_ensemble(int n, Symmetry symmetry) {
  const auto v = required_off_diagonal_variance(symmetry);
  return {symmetry, EntryLaw::uniform_symmetric(v), EntryLaw::uniform_symmetric({1, 4}), n, 1,
          symmetry == Symmetry::real_symmetric ? "uniform" : "uniform_hermitian"};
}

EnsembleSpec ensemble_by_name(const std::string& name, int n) {
  EnsembleSpec spec;
  if (name == "goe") spec = goe(n);
  else if (name == "gue") spec = gue(n);
  else if (name == "rademacher") spec = rademacher_ensemble(n, Symmetry::real_symmetric);
  else if (name == "rademacher_hermitian") spec = rademacher_ensemble(n, Symmetry::hermitian);
  else if (name == "uniform") spec = uniform_ensemble(n, Symmetry::real_symmetric);
  else if (name == "uniform_hermitian") spec = uniform_ensemble(n, Symmetry::hermitian);
  else throw ConfigError("unknown ensemble '" + name + "'");
  spec.validate();
  return spec;
}

EnsembleSpec ensemble_from_keys(const std::string& symmetry, const std::string& law, int n,
                                const std::string& atoms) {
  Symmetry sym;
  if (symmetry == "real_symmetric" || symmetry == "real") sym = Symmetry::real_symmetric;
  else if (symmetry == "hermitian") sym = Symmetry::hermitian;
  else throw ConfigError("unknown symmetry '" + symmetry + "' (real_symmetric|hermitian)");

  const Rational v = required_off_diagonal_variance(sym);
  EnsembleSpec spec;
  spec.symmetry = sym;
  spec.n = n;
  if (law == "gaussian") {
    spec.off_diagonal = EntryLaw::gaussian(v);
    spec.diagonal = EntryLaw::gaussian(sym == Symmetry::real_symmetric ? Rational(1, 2) : Rational(1, 4));
    spec.label = sym == Symmetry::real_symmetric ? "goe" : "gue";
  } else if (law == "rademacher") {
    spec = rademacher_ensemble(n, sym);
  } else if (law == "uniform") {
    spec = uniform_ensemble(n, sym);
  } else if (law == "discrete") {
    if (atoms.empty()) throw ConfigError("law=discrete requires an 'atoms' list");
    std::vector<Atom> parsed;
    std::stringstream list(atoms);
    std::string item;
    while (std::getline(list, item, ',')) {
      item = trim(item);
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError("atom '" + item + "' is not value:probability");
      parsed.push_back({parse_rational(trim(item.substr(0, colon))),
                        parse_rational(trim(item.substr(colon + 1)))});
    }
    spec.off_diagonal = EntryLaw::discrete(parsed);
    spec.diagonal = spec.off_diagonal;
    spec.label = "discrete";
  } else {
    throw ConfigError("unknown law '" + law + "' (gaussian|rademacher|uniform|discrete)");
  }
  spec.validate();
  return spec;
}

namespace {

// Counter layout: off-diagonal real part, imaginary part and diagonal of
// entry (i,j) live at distinct counters derived from the position.
std::uint64_t entry_counter(int n, int i, int j, int component) {
  return (static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) +
          static_cast<std::uint64_t>(j)) * 2 + static_cast<std::uint64_t>(component);
}

}  // namespace

RealMatrix sample_real_symmetric(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (spec.symmetry != Symmetry::real_symmetric)
    throw ConfigError("sample_real_symmetric called with a hermitian spec");
  const int n = spec.n;
  const CounterRng rng(seed);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  RealMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    a(j, j) = spec.diagonal.sample(rng, entry_counter(n, j, j, 0)) * inv_sqrt_n;
    for (int i = 0; i < j; ++i) {
      const double x = spec.off_diagonal.sample(rng, entry_counter(n, i, j, 0)) * inv_sqrt_n;
      a(i, j) = x;
      a(j, i) = x;
    }
  }
  return a;
}

ComplexMatrix sample_hermitian(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (spec.symmetry != Symmetry::hermitian)
    throw ConfigError("sample_hermitian called with a real symmetric spec");
  const int n = spec.n;
  const CounterRng rng(seed);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    a(j, j) = {spec.diagonal.sample(rng, entry_counter(n, j, j, 0)) * inv_sqrt_n, 0.0};
    for (int i = 0; i < j; ++i) {
      const double re = spec.off_diagonal.sample(rng, entry_counter(n, i, j, 0)) * inv_sqrt_n;
      const double im = spec.off_diagonal.sample(rng, entry_counter(n, i, j, 1)) * inv_sqrt_n;
      a(i, j) = {re, im};
      a(j, i) = {re, -im};
    }
  }
  return a;
}

SampledMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t seed) {
  if (spec.symmetry == Symmetry::real_symmetric) return sample_real_symmetric(spec, seed);
  return sample_hermitian(spec, seed);
}

}  // namespace rmt
