#include "dunkl/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dunkl {

RootSystem::RootSystem(int dimension, std::vector<Vec> positive_roots,
                       std::vector<double> multiplicities, std::vector<int> orbits)
    : dimension_(dimension),
      roots_(std::move(positive_roots)),
      multiplicity_(std::move(multiplicities)),
      orbit_(std::move(orbits)) {
  if (dimension_ < 1) throw std::invalid_argument("root system dimension must be positive");
  if (roots_.size() != multiplicity_.size())
    throw std::invalid_argument("one multiplicity per positive root required");
  norm_sq_.reserve(roots_.size());
  for (const Vec& a : roots_) {
    if (static_cast<int>(a.size()) != dimension_)
      throw std::invalid_argument("root dimension mismatch");
    const double nsq = norm_sq(a);
    if (!(nsq > 0.0) || !std::isfinite(nsq))
      throw std::invalid_argument("roots must be nonzero finite vectors");
    norm_sq_.push_back(nsq);
  }
  for (double k : multiplicity_) {
    if (!(k >= 0.0) || !std::isfinite(k))
      throw std::invalid_argument("multiplicities must be nonnegative");
    multiplicity_sum_ += k;
  }
  // reject parallel positive roots (alpha_i = c alpha_j, c > 0)
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    for (std::size_t j = i + 1; j < roots_.size(); ++j) {
      const double d = dot(roots_[i], roots_[j]);
      if (d > 0.0 && d * d >= (1.0 - 1e-12) * norm_sq_[i] * norm_sq_[j])
        throw std::invalid_argument("positive roots must not be parallel");
    }
  }
  if (orbit_.empty())
    orbit_.assign(roots_.size(), -1);
  else if (orbit_.size() != roots_.size())
    throw std::invalid_argument("one orbit id per positive root required");
}

RootSystem RootSystem::trivial(int dimension) {
  return RootSystem(dimension, {}, {});
}

bool RootSystem::has_active_roots() const {
  return std::any_of(multiplicity_.begin(), multiplicity_.end(),
                     [](double k) { return k > 0.0; });
}

void RootSystem::reflect(std::size_t i, std::span<const double> x,
                         std::span<double> out) const {
  if (i >= roots_.size()) throw std::out_of_range("root index out of range");
  const Vec& a = roots_[i];
  const double c = 2.0 * dot(x, a) / norm_sq_[i];
  for (int j = 0; j < dimension_; ++j) out[j] = x[j] - c * a[j];
}

Vec RootSystem::reflected(std::size_t i, std::span<const double> x) const {
  Vec out(static_cast<std::size_t>(dimension_));
  reflect(i, x, out);
  return out;
}

double RootSystem::weight(std::span<const double> x) const {
  double w = 1.0;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const double k = multiplicity_[i];
    if (k == 0.0) continue;
    w *= std::pow(std::fabs(dot(x, roots_[i])), 2.0 * k);
  }
  return w;
}

double RootSystem::sqrt_weight(std::span<const double> x) const {
  double w = 1.0;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const double k = multiplicity_[i];
    if (k == 0.0) continue;
    w *= std::pow(std::fabs(dot(x, roots_[i])), k);
  }
  return w;
}

double RootSystem::potential(std::span<const double> x) const {
  double q = 0.0;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const double k = multiplicity_[i];
    if (k == 0.0) continue;
    const double s = dot(x, roots_[i]);
    if (s == 0.0) throw HyperplaneError("potential evaluated on a reflection hyperplane");
    const double t = k / s;
    q += norm_sq_[i] * t * t;
  }
  return q;
}

double RootSystem::dunkl_lemma_residual(std::span<const double> x) const {
  // The diagonal a == b of the double sum cancels the right-hand side exactly,
  // so the residual is the off-diagonal part. Kahan-compensated: the terms are
  // large and cancel.
  const std::size_t n = roots_.size();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (multiplicity_[i] == 0.0) {
      s[i] = 0.0;
      continue;
    }
    s[i] = dot(x, roots_[i]);
    if (s[i] == 0.0)
      throw HyperplaneError("dunkl_lemma_residual evaluated on a reflection hyperplane");
  }
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (multiplicity_[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || multiplicity_[j] == 0.0) continue;
      const double term =
          multiplicity_[i] * multiplicity_[j] * dot(roots_[i], roots_[j]) / (s[i] * s[j]);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

double RootSystem::hyperplane_distance(std::span<const double> x) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (multiplicity_[i] == 0.0) continue;
    const double d = std::fabs(dot(x, roots_[i])) / std::sqrt(norm_sq_[i]);
    best = std::min(best, d);
  }
  return best;
}

RootSystem::ClosureReport RootSystem::check_closure(double tol) const {
  ClosureReport report;
  Vec image(static_cast<std::size_t>(dimension_));
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    for (std::size_t j = 0; j < roots_.size(); ++j) {
      reflect(i, roots_[j], image);
      // find +-root matching the image
      bool found = false;
      for (std::size_t m = 0; m < roots_.size(); ++m) {
        const Vec& r = roots_[m];
        double dplus = 0.0, dminus = 0.0;
        for (int c = 0; c < dimension_; ++c) {
          dplus = std::max(dplus, std::fabs(image[c] - r[c]));
          dminus = std::max(dminus, std::fabs(image[c] + r[c]));
        }
        const double scale = std::sqrt(norm_sq_[m]);
        if (dplus <= tol * scale || dminus <= tol * scale) {
          found = true;
          if (std::fabs(multiplicity_[m] - multiplicity_[j]) > tol) {
            report.orbit_invariant = false;
            report.detail += "k differs along reflection of root " + std::to_string(j) +
                             " by sigma_" + std::to_string(i) + "; ";
          }
          break;
        }
      }
      if (!found) {
        report.closed = false;
        report.detail += "sigma_" + std::to_string(i) + " maps root " + std::to_string(j) +
                         " outside R; ";
      }
    }
  }
  return report;
}

namespace {

RootSystem with_orbits(int d, std::vector<Vec> roots, std::vector<int> orbits,
                       std::span<const double> mult, const std::string& name) {
  const int orbit_count = 1 + *std::max_element(orbits.begin(), orbits.end());
  std::vector<double> per_root(roots.size());
  if (mult.size() == 1) {
    for (std::size_t i = 0; i < roots.size(); ++i) per_root[i] = mult[0];
  } else if (static_cast<int>(mult.size()) == orbit_count) {
    for (std::size_t i = 0; i < roots.size(); ++i)
      per_root[i] = mult[static_cast<std::size_t>(orbits[i])];
  } else {
    throw std::invalid_argument(name + " expects 1 or " + std::to_string(orbit_count) +
                                " multiplicities, got " + std::to_string(mult.size()));
  }
  return RootSystem(d, std::move(roots), std::move(per_root), std::move(orbits));
}

RootSystem make_dihedral(int m, std::span<const double> mult) {
  if (m < 2) throw std::invalid_argument("I2(m) requires m >= 2");
  std::vector<Vec> roots;
  std::vector<int> orbits;
  roots.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double phi = std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    roots.push_back({-std::sin(phi), std::cos(phi)});
    orbits.push_back(m % 2 == 0 ? j % 2 : 0);
  }
  return with_orbits(2, std::move(roots), std::move(orbits), mult,
                     "I2(" + std::to_string(m) + ")");
}

}  // namespace

RootSystem builtin_root_system(const std::string& name,
                               std::span<const double> multiplicities) {
  if (name == "A1")
    return with_orbits(1, {{1.0}}, {0}, multiplicities, name);
  if (name == "A1xA1")
    return with_orbits(2, {{1.0, 0.0}, {0.0, 1.0}}, {0, 1}, multiplicities, name);
  if (name == "A1xA1xA1")
    return with_orbits(3, {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}, {0, 1, 2},
                       multiplicities, name);
  if (name == "A2") return make_dihedral(3, multiplicities);
  if (name == "B2")
    return with_orbits(2, {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}}, {0, 0, 1, 1},
                       multiplicities, name);
  if (name.size() >= 5 && name.rfind("I2(", 0) == 0 && name.back() == ')') {
    const std::string inner = name.substr(3, name.size() - 4);
    int m = 0;
    for (char c : inner) {
      if (c < '0' || c > '9') throw std::invalid_argument("malformed dihedral order in " + name);
      m = m * 10 + (c - '0');
      if (m > 1000) throw std::invalid_argument("dihedral order too large in " + name);
    }
    return make_dihedral(m, multiplicities);
  }
  throw std::invalid_argument("unknown root system '" + name + "'");
}

}  // namespace dunkl
