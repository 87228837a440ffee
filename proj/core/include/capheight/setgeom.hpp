#pragma once

// Compact plane sets: closed-form primitives, sampled arcs and unions.
//
// Arc points are stored as anchor + offset. Level-set arcs can be shorter
// than 1e-18 at radius ~200, so differences between nearby arc points are
// carried in the offsets, never recovered from absolute coordinates.

#include <complex>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "capheight/intpoly.hpp"

namespace capheight {

struct Disk {
  Complex center;
  double radius;
};

struct Circle {
  Complex center;
  double radius;
};

struct Interval {
  double a;
  double b;
};

struct JuliaSet {
  IntPolynomial poly;
};

struct Arc {
  Complex anchor;
  std::vector<Complex> offsets;
  bool closed = false;

  std::size_t size() const noexcept { return offsets.size(); }
  Complex point(std::size_t i) const { return anchor + offsets[i]; }
  std::vector<Complex> points() const;
  // polyline length, including the closing segment when closed
  double length() const;
};

struct Union;

using SetDescriptor = std::variant<Disk, Circle, Interval, JuliaSet, Arc, std::shared_ptr<const Union>>;

struct Union {
  std::vector<SetDescriptor> parts;
};

// Validating constructors; invalid input throws ErrorKind::InvalidSet.
SetDescriptor make_disk(Complex center, double radius);
SetDescriptor make_circle(Complex center, double radius);
SetDescriptor make_interval(double a, double b);
SetDescriptor make_julia(IntPolynomial poly);
SetDescriptor make_arc(std::vector<Complex> points, bool closed = false);
SetDescriptor make_arc(Complex anchor, std::vector<Complex> offsets, bool closed);
SetDescriptor make_union(std::vector<SetDescriptor> parts);

void validate(const SetDescriptor& set);

// Union parts flattened (nested unions expanded), or the set itself.
std::vector<SetDescriptor> primitives(const SetDescriptor& set);

bool is_closed_form(const SetDescriptor& set);
std::string describe(const SetDescriptor& set);

struct BoundarySample {
  std::vector<Complex> anchors;
  std::vector<Complex> offsets;
  std::vector<double> spacing;
  std::vector<int> component;  // index into primitives(set)

  std::size_t size() const noexcept { return offsets.size(); }
  Complex point(std::size_t i) const { return anchors[i] + offsets[i]; }
  std::vector<Complex> points() const;
  double distance(std::size_t i, std::size_t j) const;
  double total_length() const;
  void append(const BoundarySample& other, int component_shift);
};

// m points on the outer boundary of each primitive: circles equispaced,
// intervals at Chebyshev nodes, Julia sets by ordered inverse iteration,
// arcs resampled by arc length. Unions split m evenly across parts and drop
// points lying strictly inside another disk part.
BoundarySample sample_boundary(const SetDescriptor& set, int m);

// Mean of the sample points.
Complex centroid(const BoundarySample& sample);

struct BoundingDisk {
  Complex center;
  double radius;
};
BoundingDisk bounding_disk(const SetDescriptor& set);

SetDescriptor conjugate(const SetDescriptor& set);

// Closed forms are decided exactly; sampled sets compare each sample's
// conjugate with the sampled boundary at tolerance tau.
bool check_conjugation_symmetry(const SetDescriptor& set, double tau = 1e-9);

// Distance from z to the set (zero inside a disk or on a boundary). Julia
// sets use the sampled boundary.
double distance_to_set(const SetDescriptor& set, Complex z);

// Whether z lies in the unbounded component of the complement. Closed forms
// are decided geometrically, unions by flood fill on a grid of the given
// resolution. Throws AmbiguousPoint when z is on the boundary.
bool in_unbounded_component(const SetDescriptor& set, Complex z, int grid_resolution = 512);
// Grid flood fill only; cells touching the set are blocked.
bool in_unbounded_component_grid(const SetDescriptor& set, Complex z, int grid_resolution);

// Escape radius for iteration of a Julia polynomial: orbits beyond it
// go to infinity.
double julia_escape_radius(const IntPolynomial& p);
// Iterates until |P^j(z)| exceeds `radius` or the cap; returns the number of
// iterations used, or nullopt when the orbit stayed bounded.
std::optional<int> julia_escape_time(const IntPolynomial& p, Complex z, double radius, int cap);

}  // namespace capheight
