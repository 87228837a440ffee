#include "capheight/intpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "capheight/error.hpp"

namespace capheight {

namespace {

Integer abs_int(const Integer& v) { return v < 0 ? Integer(-v) : v; }

Integer pow_int(const Integer& base, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

int sign_of(const Integer& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

IntPolynomial divide_by_scalar(const IntPolynomial& p, const Integer& c) {
  std::vector<Integer> out(p.coefficients().begin(), p.coefficients().end());
  for (auto& v : out) {
    if (v % c != 0) throw Error(ErrorKind::Undefined, "inexact scalar division");
    v /= c;
  }
  return IntPolynomial(std::move(out));
}

// Exact quotient over Q of primitive a by b, returned primitive with the sign
// of lc(a)/lc(b).
IntPolynomial divide_rational(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = pseudo_divide(a, b);
  if (!r.is_zero()) throw Error(ErrorKind::Undefined, "divide_rational: nonzero remainder");
  IntPolynomial out = primitive_part(q);
  if (sign_of(a.leading()) * sign_of(b.leading()) < 0) out = -out;
  return out;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Integer> ascending) : coeffs_(std::move(ascending)) {
  normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long long> ascending) {
  coeffs_.reserve(ascending.size());
  for (long long v : ascending) coeffs_.emplace_back(v);
  normalize();
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

IntPolynomial IntPolynomial::monomial(const Integer& c, int degree) {
  std::vector<Integer> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Integer& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw Error(ErrorKind::Undefined, "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Integer IntPolynomial::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long long>(i);
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Integer> v = coeffs_;
  for (auto& c : v) c = -c;
  return IntPolynomial(std::move(v));
}

Complex IntPolynomial::evaluate(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->convert_to<double>();
  return acc;
}

ComplexDD IntPolynomial::evaluate(const ComplexDD& z) const {
  ComplexDD acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + ComplexDD(capheight::to_dd(*it));
  return acc;
}

Integer IntPolynomial::evaluate(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> IntPolynomial::to_double() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.convert_to<double>());
  return out;
}

std::vector<DoubleDouble> IntPolynomial::to_dd() const {
  std::vector<DoubleDouble> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(capheight::to_dd(c));
  return out;
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ' ';
    os << coeffs_[i];
  }
  return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  const std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
  std::vector<Integer> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a.coefficient(static_cast<int>(i)) + b.coefficient(static_cast<int>(i));
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  auto ca = a.coefficients();
  auto cb = b.coefficients();
  std::vector<Integer> out(ca.size() + cb.size() - 1);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) out[i + j] += ca[i] * cb[j];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const Integer& c, const IntPolynomial& a) {
  std::vector<Integer> out(a.coefficients().begin(), a.coefficients().end());
  for (auto& v : out) v *= c;
  return IntPolynomial(std::move(out));
}

bool lexicographic_less(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    Integer ca = a.coefficient(i);
    Integer cb = b.coefficient(i);
    if (ca != cb) return ca < cb;
  }
  return false;
}

DoubleDouble to_dd(const Integer& v) {
  double hi = v.convert_to<double>();
  if (!std::isfinite(hi)) return DoubleDouble(hi);
  Integer rest = v - Integer(hi);
  return DoubleDouble(hi) + DoubleDouble(rest.convert_to<double>());
}

double log_abs(const Integer& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  Integer a = abs_int(v);
  const std::size_t bits = boost::multiprecision::msb(a);
  if (bits < 900) return std::log(a.convert_to<double>());
  const std::size_t shift = bits - 60;
  Integer top = a >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

Integer content(const IntPolynomial& p) {
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    g = boost::multiprecision::gcd(g, abs_int(c));
    if (g == 1) break;
  }
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Integer c = content(p);
  if (p.leading() < 0) c = -c;
  return divide_by_scalar(p, c);
}

PseudoDivision pseudo_divide(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::Undefined, "pseudo-division by zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return {IntPolynomial{}, a};
  const Integer& lb = b.leading();
  std::vector<Integer> r(a.coefficients().begin(), a.coefficients().end());
  const int dq = a.degree() - db;
  std::vector<Integer> q(static_cast<std::size_t>(dq) + 1);
  auto cb = b.coefficients();
  // Classic pseudo-division: scale the running remainder by lc(b) each step.
  for (int k = dq; k >= 0; --k) {
    const Integer lead = r[static_cast<std::size_t>(k + db)];
    for (auto& qc : q) qc *= lb;
    q[static_cast<std::size_t>(k)] += lead;
    for (auto& rc : r) rc *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= lead * cb[static_cast<std::size_t>(j)];
  }
  return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

std::optional<IntPolynomial> try_divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return IntPolynomial{};
  const int db = b.degree();
  if (a.degree() < db) return std::nullopt;
  std::vector<Integer> r(a.coefficients().begin(), a.coefficients().end());
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - db) + 1);
  auto cb = b.coefficients();
  const Integer& lb = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Integer& lead = r[static_cast<std::size_t>(k + db)];
    if (lead % lb != 0) return std::nullopt;
    Integer t = lead / lb;
    q[static_cast<std::size_t>(k)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= t * cb[static_cast<std::size_t>(j)];
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::Undefined, "division by zero polynomial");
  auto q = try_divide_exact(a, b);
  if (!q) throw Error(ErrorKind::Undefined, "divide_exact: not divisible in Z[x]");
  return *std::move(q);
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return primitive_part(b).is_zero() ? b : content(b) * primitive_part(b);
  if (b.is_zero()) return content(a) * primitive_part(a);
  Integer c = boost::multiprecision::gcd(content(a), content(b));
  IntPolynomial u = primitive_part(a);
  IntPolynomial v = primitive_part(b);
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPolynomial r = pseudo_divide(u, v).remainder;
    u = std::move(v);
    v = r.is_zero() ? r : primitive_part(r);
  }
  return c * primitive_part(u);
}

Integer resultant(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::UndefinedResultant, "resultant with the zero polynomial");
  if (p.degree() == 0) return pow_int(p.leading(), q.degree());
  if (q.degree() == 0) return pow_int(q.leading(), p.degree());

  IntPolynomial a = p;
  IntPolynomial b = q;
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) s = -1;
  }
  const Integer ca = content(a);
  const Integer cb = content(b);
  a = divide_by_scalar(a, ca);
  b = divide_by_scalar(b, cb);
  Integer g = 1;
  Integer h = 1;
  const Integer t = pow_int(ca, b.degree()) * pow_int(cb, a.degree());

  // Subresultant PRS (Collins); every division below is exact.
  while (true) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    IntPolynomial r = pseudo_divide(a, b).remainder;
    a = b;
    if (r.is_zero()) return 0;
    b = divide_by_scalar(r, g * pow_int(h, delta));
    g = a.leading();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = pow_int(g, delta) / pow_int(h, delta - 1);
    }
    if (b.degree() == 0) break;
  }
  const int da = a.degree();
  Integer hh = pow_int(b.leading(), da) / pow_int(h, da - 1);
  return s * t * hh;
}

Integer resultant_sylvester(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::UndefinedResultant, "resultant with the zero polynomial");
  const int n = p.degree();
  const int m = q.degree();
  const int size = n + m;
  if (size == 0) return 1;
  std::vector<std::vector<Integer>> mat(static_cast<std::size_t>(size), std::vector<Integer>(static_cast<std::size_t>(size)));
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k) mat[row][row + k] = p.coefficient(n - k);
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) mat[m + row][row + k] = q.coefficient(m - k);

  // Bareiss fraction-free elimination.
  int sign = 1;
  Integer prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (mat[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < size; ++i)
        if (mat[i][k] != 0) { swap_row = i; break; }
      if (swap_row < 0) return 0;
      std::swap(mat[k], mat[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) / prev;
      }
      mat[i][k] = 0;
    }
    prev = mat[k][k];
  }
  return sign * mat[size - 1][size - 1];
}

Integer discriminant(const IntPolynomial& p) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorKind::Undefined, "discriminant needs degree >= 1");
  Integer r = resultant(p, p.derivative());
  if (r % p.leading() != 0) throw Error(ErrorKind::Undefined, "discriminant: Res(P,P') not divisible by lc(P)");
  r /= p.leading();
  const long long e = static_cast<long long>(n) * (n - 1) / 2;
  return (e % 2) ? Integer(-r) : r;
}

bool is_squarefree(const IntPolynomial& p) {
  if (p.degree() < 1) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p) {
  std::vector<std::pair<IntPolynomial, int>> out;
  if (p.degree() < 1) return out;
  // levels[j] holds the product of the roots of multiplicity > j.
  std::vector<IntPolynomial> levels;
  IntPolynomial g = primitive_part(p);
  while (g.degree() > 0) {
    IntPolynomial d = gcd(g, g.derivative());
    IntPolynomial radical = d.degree() == 0 ? g : divide_rational(g, primitive_part(d));
    levels.push_back(primitive_part(radical));
    g = d.degree() == 0 ? IntPolynomial::constant(1) : primitive_part(d);
  }
  for (std::size_t j = 0; j < levels.size(); ++j) {
    IntPolynomial exact = j + 1 < levels.size() ? divide_rational(levels[j], levels[j + 1]) : levels[j];
    if (exact.degree() > 0) out.emplace_back(primitive_part(exact), static_cast<int>(j) + 1);
  }
  return out;
}

int real_root_count(const IntPolynomial& p) {
  if (p.degree() < 1) return 0;
  IntPolynomial f = primitive_part(p);
  IntPolynomial d = gcd(f, f.derivative());
  if (d.degree() > 0) f = divide_rational(f, primitive_part(d));
  if (f.degree() < 1) return 0;

  std::vector<IntPolynomial> chain{f, primitive_part(f.derivative())};
  while (true) {
    const IntPolynomial& a = chain[chain.size() - 2];
    const IntPolynomial& b = chain.back();
    if (b.degree() <= 0) break;
    const int delta = a.degree() - b.degree();
    IntPolynomial r = pseudo_divide(a, b).remainder;
    if (r.is_zero()) break;
    // prem multiplies by lc(b)^(delta+1); undo its sign, then negate.
    bool flip = sign_of(b.leading()) < 0 && ((delta + 1) % 2 == 1);
    IntPolynomial next = flip ? r : -r;
    Integer c = content(next);
    chain.push_back(divide_by_scalar(next, c));
  }
  auto variations = [&](bool at_plus_infinity) {
    int count = 0;
    int last = 0;
    for (const auto& s : chain) {
      int sg = sign_of(s.leading());
      if (!at_plus_infinity && (s.degree() % 2 == 1)) sg = -sg;
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  return variations(false) - variations(true);
}

IntPolynomial chebyshev_T(int n) {
  if (n < 0) throw Error(ErrorKind::Undefined, "chebyshev_T needs n >= 0");
  IntPolynomial prev{1};
  if (n == 0) return prev;
  IntPolynomial cur{0, 1};
  const IntPolynomial two_x{0, 2};
  for (int k = 1; k < n; ++k) {
    IntPolynomial next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

IntPolynomial monic_chebyshev(int n) {
  if (n < 0) throw Error(ErrorKind::Undefined, "monic_chebyshev needs n >= 0");
  IntPolynomial prev{2};
  if (n == 0) return prev;
  IntPolynomial cur{0, 1};
  const IntPolynomial x{0, 1};
  for (int k = 1; k < n; ++k) {
    IntPolynomial next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

IntPolynomial cyclotomic(int m) {
  if (m < 1) throw Error(ErrorKind::Undefined, "cyclotomic needs m >= 1");
  static thread_local std::map<int, IntPolynomial> cache;
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  IntPolynomial result = IntPolynomial::monomial(1, m) - IntPolynomial{1};
  for (int d = 1; d < m; ++d)
    if (m % d == 0) result = divide_exact(result, cyclotomic(d));
  cache.emplace(m, result);
  return result;
}

}  // namespace capheight
