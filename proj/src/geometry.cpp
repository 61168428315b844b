#include "dunkl/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace dunkl {

DomainSpec DomainSpec::box(Vec lower, Vec upper) {
  if (lower.empty() || lower.size() != upper.size())
    throw std::invalid_argument("box bounds must be nonempty and of equal dimension");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i]))
      throw std::invalid_argument("box requires finite lower < upper componentwise");
  }
  DomainSpec d;
  d.kind_ = Kind::box;
  d.dimension_ = static_cast<int>(lower.size());
  d.lower_ = std::move(lower);
  d.upper_ = std::move(upper);
  return d;
}

DomainSpec DomainSpec::ball(Vec center, double radius) {
  if (center.empty()) throw std::invalid_argument("ball center must be nonempty");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball radius must be positive and finite");
  DomainSpec d;
  d.kind_ = Kind::ball;
  d.dimension_ = static_cast<int>(center.size());
  d.lower_.resize(center.size());
  d.upper_.resize(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    if (!std::isfinite(center[i])) throw std::invalid_argument("ball center must be finite");
    d.lower_[i] = center[i] - radius;
    d.upper_[i] = center[i] + radius;
  }
  d.center_ = std::move(center);
  d.radius_ = radius;
  return d;
}

DomainSpec DomainSpec::mask(Vec lower, Vec upper, Indicator inside) {
  DomainSpec d = box(std::move(lower), std::move(upper));
  if (!inside) throw std::invalid_argument("mask requires an indicator");
  d.kind_ = Kind::mask;
  d.inside_ = std::move(inside);
  return d;
}

bool DomainSpec::contains(std::span<const double> x) const {
  switch (kind_) {
    case Kind::box:
      for (int i = 0; i < dimension_; ++i)
        if (!(lower_[static_cast<std::size_t>(i)] < x[static_cast<std::size_t>(i)] &&
              x[static_cast<std::size_t>(i)] < upper_[static_cast<std::size_t>(i)]))
          return false;
      return true;
    case Kind::ball: {
      double s = 0.0;
      for (int i = 0; i < dimension_; ++i) {
        const double d = x[static_cast<std::size_t>(i)] - center_[static_cast<std::size_t>(i)];
        s += d * d;
      }
      return s < radius_ * radius_;
    }
    case Kind::mask: {
      for (int i = 0; i < dimension_; ++i)
        if (!(lower_[static_cast<std::size_t>(i)] < x[static_cast<std::size_t>(i)] &&
              x[static_cast<std::size_t>(i)] < upper_[static_cast<std::size_t>(i)]))
          return false;
      return inside_(x);
    }
  }
  return false;
}

GridDomain::GridDomain(DomainSpec domain, double h)
    : domain_(std::move(domain)), dimension_(domain_.dimension()), h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw GridError("grid spacing must be positive");
  if (dimension_ > 3) throw GridError("grids support dimensions 1 to 3");
  const std::size_t d = static_cast<std::size_t>(dimension_);
  origin_.resize(d);
  extents_.resize(d);

  if (domain_.kind() == DomainSpec::Kind::box) {
    for (std::size_t i = 0; i < d; ++i) {
      const double side = domain_.upper()[i] - domain_.lower()[i];
      const double cells = side / h;
      const long n = std::lround(cells);
      if (n < 1 || std::fabs(cells - static_cast<double>(n)) > 1e-9 * std::max(1.0, cells))
        throw GridError("box side is not an integer multiple of the grid spacing");
      origin_[i] = domain_.lower()[i];
      extents_[i] = static_cast<int>(n) + 1;
    }
  } else {
    // pad one cell beyond the bounding box so the exterior ring fits
    for (std::size_t i = 0; i < d; ++i) {
      const double lo = domain_.lower()[i] - h;
      const double hi = domain_.upper()[i] + h;
      const int cells = static_cast<int>(std::ceil((hi - lo) / h - 1e-12));
      origin_[i] = lo;
      extents_[i] = cells + 1;
    }
  }

  strides_.resize(d);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    strides_[i] = total;
    total *= static_cast<std::size_t>(extents_[i]);
  }
  classes_.assign(total, NodeClass::exterior);
  interior_ordinal_.assign(total, npos);
  ring_ordinal_.assign(total, npos);

  Vec x(d);
  if (domain_.kind() == DomainSpec::Kind::box) {
    // all lattice nodes lie in the closed box; strict index bounds mark the interior
    for (std::size_t node = 0; node < total; ++node) {
      bool inside = true;
      std::size_t rem = node;
      for (std::size_t i = 0; i < d; ++i) {
        const int idx = static_cast<int>(rem % static_cast<std::size_t>(extents_[i]));
        rem /= static_cast<std::size_t>(extents_[i]);
        if (idx == 0 || idx == extents_[i] - 1) inside = false;
      }
      classes_[node] = inside ? NodeClass::interior : NodeClass::ring;
    }
  } else {
    for (std::size_t node = 0; node < total; ++node) {
      node_coords(node, x);
      if (domain_.contains(x)) classes_[node] = NodeClass::interior;
    }
    for (std::size_t node = 0; node < total; ++node) {
      if (classes_[node] == NodeClass::interior) continue;
      for (std::size_t i = 0; i < d && classes_[node] != NodeClass::ring; ++i) {
        for (int dir = -1; dir <= 1; dir += 2) {
          const std::size_t nb = neighbor(node, static_cast<int>(i), dir);
          if (nb != npos && classes_[nb] == NodeClass::interior) {
            classes_[node] = NodeClass::ring;
            break;
          }
        }
      }
    }
  }

  for (std::size_t node = 0; node < total; ++node) {
    if (classes_[node] == NodeClass::interior) {
      interior_ordinal_[node] = interior_.size();
      interior_.push_back(node);
    } else if (classes_[node] == NodeClass::ring) {
      ring_ordinal_[node] = ring_.size();
      ring_.push_back(node);
    }
  }
  if (interior_.empty()) throw GridError("domain has no interior node at this resolution");
}

void GridDomain::node_coords(std::size_t node, std::span<double> out) const {
  std::size_t rem = node;
  for (std::size_t i = 0; i < static_cast<std::size_t>(dimension_); ++i) {
    const int idx = static_cast<int>(rem % static_cast<std::size_t>(extents_[i]));
    rem /= static_cast<std::size_t>(extents_[i]);
    out[i] = origin_[i] + h_ * static_cast<double>(idx);
  }
}

Vec GridDomain::node_coords(std::size_t node) const {
  Vec x(static_cast<std::size_t>(dimension_));
  node_coords(node, x);
  return x;
}

std::size_t GridDomain::neighbor(std::size_t node, int axis, int direction) const {
  const std::size_t a = static_cast<std::size_t>(axis);
  const int idx = static_cast<int>((node / strides_[a]) % static_cast<std::size_t>(extents_[a]));
  const int next = idx + direction;
  if (next < 0 || next >= extents_[a]) return npos;
  return direction > 0 ? node + strides_[a] : node - strides_[a];
}

std::size_t GridDomain::find_node(std::span<const double> x) const {
  std::size_t node = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(dimension_); ++i) {
    const double t = (x[i] - origin_[i]) / h_;
    const long idx = std::lround(t);
    if (idx < 0 || idx >= extents_[i]) return npos;
    if (std::fabs(t - static_cast<double>(idx)) > 1e-6) return npos;
    node += static_cast<std::size_t>(idx) * strides_[i];
  }
  return node;
}

GridDomain discretize(const DomainSpec& domain, double h) { return GridDomain(domain, h); }

GridPtr discretize_shared(const DomainSpec& domain, double h) {
  return std::make_shared<const GridDomain>(domain, h);
}

namespace {

// Exact range of <x,alpha> over the closed domain for boxes and balls;
// lattice-node range for masks.
void inner_product_range(const DomainSpec& domain, std::span<const double> alpha,
                         const GridDomain* grid, double& lo, double& hi) {
  const std::size_t d = static_cast<std::size_t>(domain.dimension());
  if (domain.kind() == DomainSpec::Kind::box) {
    lo = 0.0;
    hi = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double a = alpha[i];
      lo += a * (a >= 0.0 ? domain.lower()[i] : domain.upper()[i]);
      hi += a * (a >= 0.0 ? domain.upper()[i] : domain.lower()[i]);
    }
    return;
  }
  if (domain.kind() == DomainSpec::Kind::ball) {
    const double c = dot(domain.center(), alpha);
    const double r = domain.radius() * norm(alpha);
    lo = c - r;
    hi = c + r;
    return;
  }
  lo = std::numeric_limits<double>::infinity();
  hi = -std::numeric_limits<double>::infinity();
  if (grid != nullptr) {
    Vec x(d);
    for (std::size_t node = 0; node < grid->node_count(); ++node) {
      if (grid->node_class(node) == NodeClass::exterior) continue;
      grid->node_coords(node, x);
      const double s = dot(x, alpha);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  if (lo > hi) {  // no grid supplied: fall back to the bounding box
    const DomainSpec bb = DomainSpec::box(Vec(domain.lower().begin(), domain.lower().end()),
                                          Vec(domain.upper().begin(), domain.upper().end()));
    inner_product_range(bb, alpha, nullptr, lo, hi);
  }
}

std::vector<Vec> sample_points(const DomainSpec& domain, const GridDomain* grid) {
  std::vector<Vec> pts;
  const std::size_t d = static_cast<std::size_t>(domain.dimension());
  if (domain.kind() == DomainSpec::Kind::box) {
    // corners and face midpoints
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      Vec x(d);
      for (std::size_t i = 0; i < d; ++i)
        x[i] = (mask >> i) & 1 ? domain.upper()[i] : domain.lower()[i];
      pts.push_back(std::move(x));
    }
    Vec mid(d);
    for (std::size_t i = 0; i < d; ++i) mid[i] = 0.5 * (domain.lower()[i] + domain.upper()[i]);
    for (std::size_t i = 0; i < d; ++i) {
      Vec lo = mid, hi = mid;
      lo[i] = domain.lower()[i];
      hi[i] = domain.upper()[i];
      pts.push_back(std::move(lo));
      pts.push_back(std::move(hi));
    }
  } else if (domain.kind() == DomainSpec::Kind::ball) {
    pts.push_back(Vec(domain.center().begin(), domain.center().end()));
    for (std::size_t i = 0; i < d; ++i) {
      Vec lo(domain.center().begin(), domain.center().end());
      Vec hi = lo;
      lo[i] -= domain.radius();
      hi[i] += domain.radius();
      pts.push_back(std::move(lo));
      pts.push_back(std::move(hi));
    }
  }
  if (grid != nullptr) {
    Vec x(d);
    for (std::size_t node = 0; node < grid->node_count(); ++node) {
      if (grid->node_class(node) == NodeClass::exterior) continue;
      grid->node_coords(node, x);
      pts.push_back(x);
    }
  }
  return pts;
}

}  // namespace

AdmissibilityReport check_admissible(const DomainSpec& domain, const RootSystem& rs,
                                     double delta, const GridDomain* grid) {
  if (!(delta > 0.0)) throw std::invalid_argument("admissibility delta must be positive");
  AdmissibilityReport report;
  report.delta = delta;
  if (!rs.has_active_roots()) {
    report.pass = true;
    report.sign_vector_constant = true;
    report.distance_ok = true;
    report.reflections_disjoint = true;
    report.min_hyperplane_distance = std::numeric_limits<double>::infinity();
    report.detail = "no active reflection hyperplanes (k == 0)";
    return report;
  }

  report.sign_vector_constant = true;
  report.distance_ok = true;
  report.min_hyperplane_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rs.root_count(); ++i) {
    if (rs.multiplicity(i) == 0.0) continue;
    double lo = 0.0, hi = 0.0;
    inner_product_range(domain, rs.root(i), grid, lo, hi);
    const double anorm = std::sqrt(rs.root_norm_sq(i));
    if (!(lo > 0.0) && !(hi < 0.0)) {
      report.sign_vector_constant = false;
      report.min_hyperplane_distance = 0.0;
      report.detail += "closure touches or crosses hyperplane of root " + std::to_string(i) + "; ";
      continue;
    }
    const double dist = std::min(std::fabs(lo), std::fabs(hi)) / anorm;
    report.min_hyperplane_distance = std::min(report.min_hyperplane_distance, dist);
    if (dist < delta) {
      report.distance_ok = false;
      report.detail += "distance to hyperplane of root " + std::to_string(i) + " is " +
                       std::to_string(dist) + " < delta; ";
    }
  }
  if (!report.sign_vector_constant) report.distance_ok = false;

  // sampled verification that every active reflection maps the domain outside itself
  report.reflections_disjoint = true;
  const std::vector<Vec> pts = sample_points(domain, grid);
  Vec image(static_cast<std::size_t>(domain.dimension()));
  for (std::size_t i = 0; i < rs.root_count() && report.reflections_disjoint; ++i) {
    if (rs.multiplicity(i) == 0.0) continue;
    for (const Vec& p : pts) {
      rs.reflect(i, p, image);
      if (domain.contains(image)) {
        report.reflections_disjoint = false;
        report.detail += "sigma_" + std::to_string(i) + " maps a sample of D into D; ";
        break;
      }
    }
  }

  report.pass =
      report.sign_vector_constant && report.distance_ok && report.reflections_disjoint;
  if (report.pass) report.detail = "admissible";
  return report;
}

ReflectedImages::ReflectedImages(const GridDomain& grid, const RootSystem& rs)
    : root_count_(rs.root_count()), dim_(static_cast<std::size_t>(grid.dimension())) {
  const auto& interior = grid.interior_nodes();
  coords_.resize(interior.size() * root_count_ * dim_);
  Vec x(dim_);
  for (std::size_t o = 0; o < interior.size(); ++o) {
    grid.node_coords(interior[o], x);
    for (std::size_t r = 0; r < root_count_; ++r) {
      std::span<double> out{coords_.data() + (o * root_count_ + r) * dim_, dim_};
      rs.reflect(r, x, out);
      if (rs.multiplicity(r) > 0.0 && grid.domain().contains(out))
        throw AdmissibilityError(
            "reflected image of an interior node lies inside the domain; "
            "the domain is not admissible for this root system");
    }
  }
}

}  // namespace dunkl
