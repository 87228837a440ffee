#include "capheight/setgeom.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "capheight/error.hpp"
#include "capheight/roots.hpp"

namespace capheight {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// q is relative to the arc anchor
double polyline_distance(const Arc& arc, Complex q) {
  double best = HUGE_VAL;
  const std::size_t n = arc.size();
  for (std::size_t i = 0; i + 1 < n; ++i) best = std::min(best, segment_distance(q, arc.offsets[i], arc.offsets[i + 1]));
  if (arc.closed && n > 2) best = std::min(best, segment_distance(q, arc.offsets[n - 1], arc.offsets[0]));
  return best;
}

// Point on the arc at arc-length s, relative to the anchor.
class ArcParam {
public:
  explicit ArcParam(const Arc& arc) : arc_(arc) {
    const std::size_t n = arc.size();
    const std::size_t segs = arc.closed ? n : n - 1;
    cum_.push_back(0.0);
    for (std::size_t i = 0; i < segs; ++i) {
      const Complex a = arc.offsets[i];
      const Complex b = arc.offsets[(i + 1) % n];
      cum_.push_back(cum_.back() + std::abs(b - a));
    }
  }
  double length() const { return cum_.back(); }
  Complex at(double s) const {
    const std::size_t n = arc_.size();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t seg = it == cum_.begin() ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
    seg = std::min(seg, cum_.size() - 2);
    const double seglen = cum_[seg + 1] - cum_[seg];
    const double t = seglen > 0.0 ? std::clamp((s - cum_[seg]) / seglen, 0.0, 1.0) : 0.0;
    const Complex a = arc_.offsets[seg];
    const Complex b = arc_.offsets[(seg + 1) % n];
    return a + t * (b - a);
  }

private:
  const Arc& arc_;
  std::vector<double> cum_;
};

// Chebyshev nodes on [0, L] with weights proportional to the arcsine density,
// normalized to total L.
void chebyshev_nodes(int m, double length, std::vector<double>& s, std::vector<double>& w) {
  s.resize(static_cast<std::size_t>(m));
  w.resize(static_cast<std::size_t>(m));
  double total = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double th = (2.0 * k - 1.0) * kPi / (2.0 * m);
    s[static_cast<std::size_t>(k - 1)] = 0.5 * length * (1.0 - std::cos(th));
    w[static_cast<std::size_t>(k - 1)] = std::sin(th);
    total += std::sin(th);
  }
  for (auto& v : w) v *= length / total;
}

BoundarySample sample_circle(Complex c, double r, int m) {
  BoundarySample out;
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * kPi * k / m;
    out.anchors.push_back(c);
    out.offsets.emplace_back(r * std::cos(t), r * std::sin(t));
    out.spacing.push_back(2.0 * kPi * r / m);
    out.component.push_back(0);
  }
  return out;
}

BoundarySample sample_interval(double a, double b, int m) {
  BoundarySample out;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double total = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double th = (2.0 * k - 1.0) * kPi / (2.0 * m);
    out.anchors.emplace_back(mid, 0.0);
    out.offsets.emplace_back(half * std::cos(th), 0.0);
    out.spacing.push_back(std::sin(th));
    total += std::sin(th);
    out.component.push_back(0);
  }
  for (auto& v : out.spacing) v *= (b - a) / total;
  return out;
}

BoundarySample sample_arc(const Arc& arc, int m) {
  BoundarySample out;
  const ArcParam param(arc);
  const double len = param.length();
  if (arc.closed) {
    for (int k = 0; k < m; ++k) {
      out.anchors.push_back(arc.anchor);
      out.offsets.push_back(param.at(len * k / m));
      out.spacing.push_back(len / m);
      out.component.push_back(0);
    }
    return out;
  }
  std::vector<double> s, w;
  chebyshev_nodes(m, len, s, w);
  for (int k = 0; k < m; ++k) {
    out.anchors.push_back(arc.anchor);
    out.offsets.push_back(param.at(s[static_cast<std::size_t>(k)]));
    out.spacing.push_back(w[static_cast<std::size_t>(k)]);
    out.component.push_back(0);
  }
  return out;
}

// Preimage curve of a closed curve under P, ordered by continuation: walk the
// curve d times, each step moving to the preimage nearest the previous one.
std::vector<Complex> preimage_curve(const IntPolynomial& p, const std::vector<Complex>& curve) {
  const int d = p.degree();
  const std::vector<double> coeff = p.to_double();
  std::vector<Complex> c(coeff.begin(), coeff.end());
  const std::size_t n = curve.size();
  std::vector<Complex> out;
  out.reserve(n * static_cast<std::size_t>(d));

  auto all_roots = [&](Complex w, std::span<const Complex> warm) {
    std::vector<Complex> shifted = c;
    shifted[0] -= w;
    if (d == 2) {
      const Complex disc = std::sqrt(shifted[1] * shifted[1] - 4.0 * shifted[2] * shifted[0]);
      return std::vector<Complex>{(-shifted[1] + disc) / (2.0 * shifted[2]), (-shifted[1] - disc) / (2.0 * shifted[2])};
    }
    return complex_roots(shifted, warm);
  };

  std::vector<Complex> start_roots = all_roots(curve[0], {});
  std::vector<bool> start_used(start_roots.size(), false);
  std::vector<Complex> warm = start_roots;
  int loops = 0;
  while (loops < d) {
    // next unused starting root
    std::size_t s = 0;
    while (s < start_used.size() && start_used[s]) ++s;
    if (s == start_used.size()) break;
    Complex z = start_roots[s];
    warm = start_roots;
    for (;;) {
      start_used[s] = true;
      for (std::size_t i = 0; i < n; ++i) {
        warm = all_roots(curve[i], warm);
        auto best = std::min_element(warm.begin(), warm.end(), [&](Complex a, Complex b) { return std::abs(a - z) < std::abs(b - z); });
        z = *best;
        out.push_back(z);
      }
      ++loops;
      // back at a start root after one lap: which one?
      auto back = std::min_element(start_roots.begin(), start_roots.end(), [&](Complex a, Complex b) { return std::abs(a - z) < std::abs(b - z); });
      s = static_cast<std::size_t>(back - start_roots.begin());
      if (start_used[s] || loops >= d) break;
    }
  }
  return out;
}

BoundarySample sample_julia(const IntPolynomial& p, int m) {
  const int d = p.degree();
  const double R = julia_escape_radius(p);
  const double lead_log = log_abs(p.leading());
  const double g0 = std::log(R) + lead_log / (d - 1);
  int k = 0;
  double generated = 0.0;
  double per_level = m;
  while (g0 / std::pow(d, k) > 1e-3) {
    per_level *= d;
    if (generated + per_level > 2e6) break;
    generated += per_level;
    ++k;
  }
  std::vector<Complex> curve;
  for (int i = 0; i < m; ++i) curve.push_back(R * std::polar(1.0, 2.0 * kPi * i / m));
  for (int level = 0; level < k; ++level) curve = preimage_curve(p, curve);
  const std::size_t stride = curve.size() / static_cast<std::size_t>(m);
  std::vector<Complex> pts;
  for (std::size_t i = 0; i < curve.size() && pts.size() < static_cast<std::size_t>(m); i += stride) pts.push_back(curve[i]);

  BoundarySample out;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex prev = pts[(i + n - 1) % n];
    const Complex next = pts[(i + 1) % n];
    out.anchors.emplace_back(0.0, 0.0);
    out.offsets.push_back(pts[i]);
    out.spacing.push_back(0.5 * (std::abs(next - pts[i]) + std::abs(pts[i] - prev)));
    out.component.push_back(0);
  }
  return out;
}

double julia_green_over_gradient(const IntPolynomial& p, Complex z, int cap, double lead_log) {
  const int d = p.degree();
  const std::vector<double> coeff = p.to_double();
  Complex dz(1.0, 0.0);
  for (int it = 0; it < cap; ++it) {
    if (std::abs(z) > 1e6) {
      const double g_scaled = std::log(std::abs(z)) + lead_log / (d - 1);
      return std::abs(z) * g_scaled / std::abs(dz);
    }
    Complex v = coeff.back();
    Complex dv(0.0, 0.0);
    for (int i = d - 1; i >= 0; --i) {
      dv = dv * z + v;
      v = v * z + coeff[static_cast<std::size_t>(i)];
    }
    dz = dv * dz;
    z = v;
  }
  return 0.0;
}

}  // namespace

std::vector<Complex> Arc::points() const {
  std::vector<Complex> out;
  out.reserve(offsets.size());
  for (const auto& o : offsets) out.push_back(anchor + o);
  return out;
}

double Arc::length() const {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < offsets.size(); ++i) len += std::abs(offsets[i + 1] - offsets[i]);
  if (closed && offsets.size() > 2) len += std::abs(offsets.front() - offsets.back());
  return len;
}

SetDescriptor make_disk(Complex center, double radius) {
  SetDescriptor s = Disk{center, radius};
  validate(s);
  return s;
}

SetDescriptor make_circle(Complex center, double radius) {
  SetDescriptor s = Circle{center, radius};
  validate(s);
  return s;
}

SetDescriptor make_interval(double a, double b) {
  SetDescriptor s = Interval{a, b};
  validate(s);
  return s;
}

SetDescriptor make_julia(IntPolynomial poly) {
  SetDescriptor s = JuliaSet{std::move(poly)};
  validate(s);
  return s;
}

SetDescriptor make_arc(std::vector<Complex> points, bool closed) {
  return make_arc(Complex(0.0, 0.0), std::move(points), closed);
}

SetDescriptor make_arc(Complex anchor, std::vector<Complex> offsets, bool closed) {
  SetDescriptor s = Arc{anchor, std::move(offsets), closed};
  validate(s);
  return s;
}

SetDescriptor make_union(std::vector<SetDescriptor> parts) {
  SetDescriptor s = std::make_shared<const Union>(Union{std::move(parts)});
  validate(s);
  return s;
}

void validate(const SetDescriptor& set) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidSet, msg); };
  std::visit(Overloaded{
                 [&](const Disk& d) {
                   if (!finite(d.center) || !(d.radius > 0.0) || !std::isfinite(d.radius)) fail("disk radius must be positive");
                 },
                 [&](const Circle& c) {
                   if (!finite(c.center) || !(c.radius > 0.0) || !std::isfinite(c.radius)) fail("circle radius must be positive");
                 },
                 [&](const Interval& i) {
                   if (!std::isfinite(i.a) || !std::isfinite(i.b) || !(i.a < i.b)) fail("interval needs a < b");
                 },
                 [&](const JuliaSet& j) {
                   if (j.poly.degree() < 2) fail("julia polynomial needs degree >= 2");
                 },
                 [&](const Arc& a) {
                   if (a.size() < 2) fail("arc needs at least 2 points");
                   if (!finite(a.anchor)) fail("arc anchor not finite");
                   for (const auto& o : a.offsets)
                     if (!finite(o)) fail("arc point not finite");
                   if (a.length() <= 0.0) fail("arc has zero length");
                 },
                 [&](const std::shared_ptr<const Union>& u) {
                   if (!u || u->parts.empty()) fail("union must be non-empty");
                   for (const auto& p : u->parts) validate(p);
                 },
             },
             set);
}

std::vector<SetDescriptor> primitives(const SetDescriptor& set) {
  if (const auto* u = std::get_if<std::shared_ptr<const Union>>(&set)) {
    std::vector<SetDescriptor> out;
    for (const auto& p : (*u)->parts) {
      auto sub = primitives(p);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  return {set};
}

bool is_closed_form(const SetDescriptor& set) {
  return std::holds_alternative<Disk>(set) || std::holds_alternative<Circle>(set) || std::holds_alternative<Interval>(set) ||
         std::holds_alternative<JuliaSet>(set);
}

std::string describe(const SetDescriptor& set) {
  std::ostringstream os;
  os.precision(12);
  std::visit(Overloaded{
                 [&](const Disk& d) { os << "disk " << d.center.real() << ' ' << d.center.imag() << ' ' << d.radius; },
                 [&](const Circle& c) { os << "circle " << c.center.real() << ' ' << c.center.imag() << ' ' << c.radius; },
                 [&](const Interval& i) { os << "interval " << i.a << ' ' << i.b; },
                 [&](const JuliaSet& j) { os << "julia " << j.poly.to_string(); },
                 [&](const Arc& a) { os << (a.closed ? "arc closed (" : "arc (") << a.size() << " points)"; },
                 [&](const std::shared_ptr<const Union>& u) {
                   os << "union {";
                   for (const auto& p : u->parts) os << ' ' << describe(p) << ';';
                   os << " }";
                 },
             },
             set);
  return os.str();
}

std::vector<Complex> BoundarySample::points() const {
  std::vector<Complex> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

double BoundarySample::distance(std::size_t i, std::size_t j) const {
  if (anchors[i] == anchors[j]) return std::abs(offsets[i] - offsets[j]);
  return std::abs((anchors[i] - anchors[j]) + (offsets[i] - offsets[j]));
}

double BoundarySample::total_length() const {
  double s = 0.0;
  for (double v : spacing) s += v;
  return s;
}

void BoundarySample::append(const BoundarySample& other, int component_shift) {
  anchors.insert(anchors.end(), other.anchors.begin(), other.anchors.end());
  offsets.insert(offsets.end(), other.offsets.begin(), other.offsets.end());
  spacing.insert(spacing.end(), other.spacing.begin(), other.spacing.end());
  for (int c : other.component) component.push_back(c + component_shift);
}

BoundarySample sample_boundary(const SetDescriptor& set, int m) {
  validate(set);
  if (m < 2) throw Error(ErrorKind::DegenerateSample, "sample needs at least 2 points");
  return std::visit(Overloaded{
                        [&](const Disk& d) { return sample_circle(d.center, d.radius, m); },
                        [&](const Circle& c) { return sample_circle(c.center, c.radius, m); },
                        [&](const Interval& i) { return sample_interval(i.a, i.b, m); },
                        [&](const JuliaSet& j) { return sample_julia(j.poly, m); },
                        [&](const Arc& a) { return sample_arc(a, m); },
                        [&](const std::shared_ptr<const Union>&) {
                          const std::vector<SetDescriptor> parts = primitives(set);
                          const int np = static_cast<int>(parts.size());
                          BoundarySample out;
                          for (int i = 0; i < np; ++i) {
                            const int mi = m / np + (i < m % np ? 1 : 0);
                            if (mi < 2) throw Error(ErrorKind::DegenerateSample, "too few points for union part");
                            BoundarySample part = sample_boundary(parts[static_cast<std::size_t>(i)], mi);
                            BoundarySample kept;
                            for (std::size_t k = 0; k < part.size(); ++k) {
                              const Complex z = part.point(k);
                              bool inside = false;
                              for (int j = 0; j < np && !inside; ++j) {
                                if (j == i) continue;
                                if (const auto* d = std::get_if<Disk>(&parts[static_cast<std::size_t>(j)]))
                                  inside = std::abs(z - d->center) < d->radius * (1.0 - 1e-12);
                              }
                              if (inside) continue;
                              kept.anchors.push_back(part.anchors[k]);
                              kept.offsets.push_back(part.offsets[k]);
                              kept.spacing.push_back(part.spacing[k]);
                              kept.component.push_back(0);
                            }
                            out.append(kept, i);
                          }
                          if (out.size() < 2) throw Error(ErrorKind::DegenerateSample, "union sample is empty");
                          return out;
                        },
                    },
                    set);
}

Complex centroid(const BoundarySample& sample) {
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < sample.size(); ++i) s += sample.point(i);
  return s / static_cast<double>(sample.size());
}

BoundingDisk bounding_disk(const SetDescriptor& set) {
  return std::visit(Overloaded{
                        [](const Disk& d) { return BoundingDisk{d.center, d.radius}; },
                        [](const Circle& c) { return BoundingDisk{c.center, c.radius}; },
                        [](const Interval& i) { return BoundingDisk{Complex(0.5 * (i.a + i.b), 0.0), 0.5 * (i.b - i.a)}; },
                        [](const JuliaSet& j) { return BoundingDisk{Complex(0.0, 0.0), julia_escape_radius(j.poly)}; },
                        [](const Arc& a) {
                          double x0 = HUGE_VAL, x1 = -HUGE_VAL, y0 = HUGE_VAL, y1 = -HUGE_VAL;
                          for (const auto& o : a.offsets) {
                            x0 = std::min(x0, o.real());
                            x1 = std::max(x1, o.real());
                            y0 = std::min(y0, o.imag());
                            y1 = std::max(y1, o.imag());
                          }
                          const Complex mid(0.5 * (x0 + x1), 0.5 * (y0 + y1));
                          double r = 0.0;
                          for (const auto& o : a.offsets) r = std::max(r, std::abs(o - mid));
                          return BoundingDisk{a.anchor + mid, r};
                        },
                        [&](const std::shared_ptr<const Union>&) {
                          std::vector<BoundingDisk> ds;
                          double x0 = HUGE_VAL, x1 = -HUGE_VAL, y0 = HUGE_VAL, y1 = -HUGE_VAL;
                          for (const auto& p : primitives(set)) {
                            const BoundingDisk b = bounding_disk(p);
                            ds.push_back(b);
                            x0 = std::min(x0, b.center.real() - b.radius);
                            x1 = std::max(x1, b.center.real() + b.radius);
                            y0 = std::min(y0, b.center.imag() - b.radius);
                            y1 = std::max(y1, b.center.imag() + b.radius);
                          }
                          const Complex mid(0.5 * (x0 + x1), 0.5 * (y0 + y1));
                          double r = 0.0;
                          for (const auto& b : ds) r = std::max(r, std::abs(b.center - mid) + b.radius);
                          return BoundingDisk{mid, r};
                        },
                    },
                    set);
}

SetDescriptor conjugate(const SetDescriptor& set) {
  return std::visit(Overloaded{
                        [](const Disk& d) -> SetDescriptor { return Disk{std::conj(d.center), d.radius}; },
                        [](const Circle& c) -> SetDescriptor { return Circle{std::conj(c.center), c.radius}; },
                        [](const Interval& i) -> SetDescriptor { return i; },
                        [](const JuliaSet& j) -> SetDescriptor { return j; },
                        [](const Arc& a) -> SetDescriptor {
                          Arc out{std::conj(a.anchor), {}, a.closed};
                          for (const auto& o : a.offsets) out.offsets.push_back(std::conj(o));
                          return out;
                        },
                        [](const std::shared_ptr<const Union>& u) -> SetDescriptor {
                          std::vector<SetDescriptor> parts;
                          for (const auto& p : u->parts) parts.push_back(conjugate(p));
                          return std::make_shared<const Union>(Union{std::move(parts)});
                        },
                    },
                    set);
}

namespace {

// distance from anchor + offset to the set, keeping arc offsets separate
double distance_rel(const SetDescriptor& set, Complex anchor, Complex offset) {
  if (const auto* a = std::get_if<Arc>(&set)) return polyline_distance(*a, (anchor - a->anchor) + offset);
  if (const auto* u = std::get_if<std::shared_ptr<const Union>>(&set)) {
    double best = HUGE_VAL;
    for (const auto& p : (*u)->parts) best = std::min(best, distance_rel(p, anchor, offset));
    return best;
  }
  return distance_to_set(set, anchor + offset);
}

}  // namespace

bool check_conjugation_symmetry(const SetDescriptor& set, double tau) {
  validate(set);
  return std::visit(Overloaded{
                        [&](const Disk& d) { return std::abs(d.center.imag()) <= tau; },
                        [&](const Circle& c) { return std::abs(c.center.imag()) <= tau; },
                        [](const Interval&) { return true; },
                        [](const JuliaSet&) { return true; },  // integer coefficients are real
                        [&](const Arc& a) {
                          for (const auto& o : a.offsets)
                            if (distance_rel(set, std::conj(a.anchor), std::conj(o)) > tau) return false;
                          return true;
                        },
                        [&](const std::shared_ptr<const Union>&) {
                          for (const auto& p : primitives(set)) {
                            if (const auto* a = std::get_if<Arc>(&p)) {
                              for (const auto& o : a->offsets)
                                if (distance_rel(set, std::conj(a->anchor), std::conj(o)) > tau) return false;
                              continue;
                            }
                            if (std::holds_alternative<Interval>(p) || std::holds_alternative<JuliaSet>(p)) {
                              if (check_conjugation_symmetry(p, tau)) continue;
                            }
                            const BoundarySample s = sample_boundary(p, 256);
                            for (std::size_t k = 0; k < s.size(); ++k)
                              if (distance_rel(set, std::conj(s.anchors[k]), std::conj(s.offsets[k])) > tau) return false;
                          }
                          return true;
                        },
                    },
                    set);
}

double distance_to_set(const SetDescriptor& set, Complex z) {
  return std::visit(Overloaded{
                        [&](const Disk& d) { return std::max(0.0, std::abs(z - d.center) - d.radius); },
                        [&](const Circle& c) { return std::abs(std::abs(z - c.center) - c.radius); },
                        [&](const Interval& i) { return segment_distance(z, Complex(i.a, 0.0), Complex(i.b, 0.0)); },
                        [&](const JuliaSet& j) {
                          const BoundarySample s = sample_boundary(j, 1024);
                          double best = HUGE_VAL;
                          for (std::size_t k = 0; k < s.size(); ++k) best = std::min(best, std::abs(z - s.point(k)));
                          return best;
                        },
                        [&](const Arc& a) { return polyline_distance(a, z - a.anchor); },
                        [&](const std::shared_ptr<const Union>& u) {
                          double best = HUGE_VAL;
                          for (const auto& p : u->parts) best = std::min(best, distance_to_set(p, z));
                          return best;
                        },
                    },
                    set);
}

double julia_escape_radius(const IntPolynomial& p) {
  const int d = p.degree();
  const double lead = std::abs(p.leading().convert_to<double>());
  double lower = 0.0;
  for (int i = 0; i < d; ++i) lower += std::abs(p.coefficient(i).convert_to<double>());
  return std::max({2.0, 2.0 * std::pow(lead, 1.0 / (d - 1)), 2.0 * (1.0 + lower) / lead});
}

std::optional<int> julia_escape_time(const IntPolynomial& p, Complex z, double radius, int cap) {
  for (int it = 0; it < cap; ++it) {
    if (std::abs(z) > radius) return it;
    z = p.evaluate(z);
    if (!finite(z)) return it + 1;
  }
  if (std::abs(z) > radius) return cap;
  return std::nullopt;
}

namespace {

int winding_number(const Arc& arc, Complex z) {
  const Complex q = z - arc.anchor;
  int wn = 0;
  const std::size_t n = arc.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = arc.offsets[i] - q;
    const Complex b = arc.offsets[(i + 1) % n] - q;
    if (a.imag() <= 0.0) {
      if (b.imag() > 0.0 && (a.real() * b.imag() - b.real() * a.imag()) > 0.0) ++wn;
    } else if (b.imag() <= 0.0 && (a.real() * b.imag() - b.real() * a.imag()) < 0.0) {
      --wn;
    }
  }
  return wn;
}

double boundary_tolerance(Complex z) { return 1e-12 * std::max(1.0, std::abs(z)); }

}  // namespace

bool in_unbounded_component(const SetDescriptor& set, Complex z, int grid_resolution) {
  validate(set);
  const double tol = boundary_tolerance(z);
  auto ambiguous = [&] { throw Error(ErrorKind::AmbiguousPoint, "point lies on the boundary"); };
  return std::visit(Overloaded{
                        [&](const Disk& d) {
                          const double r = std::abs(z - d.center) - d.radius;
                          if (std::abs(r) <= tol) ambiguous();
                          return r > 0.0;
                        },
                        [&](const Circle& c) {
                          const double r = std::abs(z - c.center) - c.radius;
                          if (std::abs(r) <= tol) ambiguous();
                          return r > 0.0;
                        },
                        [&](const Interval& i) {
                          if (segment_distance(z, Complex(i.a, 0.0), Complex(i.b, 0.0)) <= tol) ambiguous();
                          return true;
                        },
                        [&](const JuliaSet& j) {
                          return julia_escape_time(j.poly, z, std::max(1e6, 2.0 * julia_escape_radius(j.poly)), 4000).has_value();
                        },
                        [&](const Arc& a) {
                          if (polyline_distance(a, z - a.anchor) <= tol) ambiguous();
                          if (!a.closed) return true;
                          return winding_number(a, z) == 0;
                        },
                        [&](const std::shared_ptr<const Union>&) {
                          for (const auto& p : primitives(set))
                            if (!in_unbounded_component(p, z, grid_resolution)) return false;
                          return in_unbounded_component_grid(set, z, grid_resolution);
                        },
                    },
                    set);
}

bool in_unbounded_component_grid(const SetDescriptor& set, Complex z, int grid_resolution) {
  validate(set);
  const int n = std::max(grid_resolution, 8);
  const BoundingDisk bd = bounding_disk(set);
  const double half = 1.25 * bd.radius + 1e-9;
  const double x0 = bd.center.real() - half;
  const double y0 = bd.center.imag() - half;
  const double h = 2.0 * half / n;
  if (std::abs(z.real() - bd.center.real()) >= half - h || std::abs(z.imag() - bd.center.imag()) >= half - h) return true;

  std::vector<char> blocked(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  auto cell_center = [&](int ix, int iy) { return Complex(x0 + (ix + 0.5) * h, y0 + (iy + 0.5) * h); };
  auto idx = [&](int ix, int iy) { return static_cast<std::size_t>(iy) * static_cast<std::size_t>(n) + static_cast<std::size_t>(ix); };
  const double reach = 0.75 * h;  // > half cell diagonal
  auto cell_range = [&](double lo, double hi, double origin, int& a, int& b) {
    a = std::clamp(static_cast<int>(std::floor((lo - origin) / h)) - 1, 0, n - 1);
    b = std::clamp(static_cast<int>(std::ceil((hi - origin) / h)) + 1, 0, n - 1);
  };
  auto mark_segment = [&](Complex p, Complex q) {
    int ax, bx, ay, by;
    cell_range(std::min(p.real(), q.real()) - reach, std::max(p.real(), q.real()) + reach, x0, ax, bx);
    cell_range(std::min(p.imag(), q.imag()) - reach, std::max(p.imag(), q.imag()) + reach, y0, ay, by);
    for (int iy = ay; iy <= by; ++iy)
      for (int ix = ax; ix <= bx; ++ix)
        if (segment_distance(cell_center(ix, iy), p, q) <= reach) blocked[idx(ix, iy)] = 1;
  };

  for (const auto& part : primitives(set)) {
    std::visit(Overloaded{
                   [&](const Disk& d) {
                     int ax, bx, ay, by;
                     cell_range(d.center.real() - d.radius - reach, d.center.real() + d.radius + reach, x0, ax, bx);
                     cell_range(d.center.imag() - d.radius - reach, d.center.imag() + d.radius + reach, y0, ay, by);
                     for (int iy = ay; iy <= by; ++iy)
                       for (int ix = ax; ix <= bx; ++ix)
                         if (std::abs(cell_center(ix, iy) - d.center) <= d.radius + reach) blocked[idx(ix, iy)] = 1;
                   },
                   [&](const Circle& c) {
                     int ax, bx, ay, by;
                     cell_range(c.center.real() - c.radius - reach, c.center.real() + c.radius + reach, x0, ax, bx);
                     cell_range(c.center.imag() - c.radius - reach, c.center.imag() + c.radius + reach, y0, ay, by);
                     for (int iy = ay; iy <= by; ++iy)
                       for (int ix = ax; ix <= bx; ++ix)
                         if (std::abs(std::abs(cell_center(ix, iy) - c.center) - c.radius) <= reach) blocked[idx(ix, iy)] = 1;
                   },
                   [&](const Interval& i) { mark_segment(Complex(i.a, 0.0), Complex(i.b, 0.0)); },
                   [&](const JuliaSet& j) {
                     const double lead_log = log_abs(j.poly.leading());
                     for (int iy = 0; iy < n; ++iy)
                       for (int ix = 0; ix < n; ++ix)
                         if (julia_green_over_gradient(j.poly, cell_center(ix, iy), 2000, lead_log) <= 2.0 * reach) blocked[idx(ix, iy)] = 1;
                   },
                   [&](const Arc& a) {
                     const std::size_t m = a.size();
                     for (std::size_t k = 0; k + 1 < m; ++k) mark_segment(a.point(k), a.point(k + 1));
                     if (a.closed && m > 2) mark_segment(a.point(m - 1), a.point(0));
                   },
                   [](const std::shared_ptr<const Union>&) {},
               },
               part);
  }

  const int qx = std::clamp(static_cast<int>((z.real() - x0) / h), 0, n - 1);
  const int qy = std::clamp(static_cast<int>((z.imag() - y0) / h), 0, n - 1);
  if (blocked[idx(qx, qy)]) return false;

  std::vector<char> seen(blocked.size(), 0);
  std::deque<std::pair<int, int>> queue;
  for (int i = 0; i < n; ++i) {
    for (auto [ix, iy] : {std::pair{i, 0}, std::pair{i, n - 1}, std::pair{0, i}, std::pair{n - 1, i}}) {
      if (!blocked[idx(ix, iy)] && !seen[idx(ix, iy)]) {
        seen[idx(ix, iy)] = 1;
        queue.emplace_back(ix, iy);
      }
    }
  }
  while (!queue.empty()) {
    auto [ix, iy] = queue.front();
    queue.pop_front();
    if (ix == qx && iy == qy) return true;
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int jx = ix + dx[k];
      const int jy = iy + dy[k];
      if (jx < 0 || jy < 0 || jx >= n || jy >= n) continue;
      if (blocked[idx(jx, jy)] || seen[idx(jx, jy)]) continue;
      seen[idx(jx, jy)] = 1;
      queue.emplace_back(jx, jy);
    }
  }
  return false;
}

}  // namespace capheight
