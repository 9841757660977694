#include "heckecong/padic.hpp"

#include "heckecong/errors.hpp"

#include <algorithm>
#include <sstream>

namespace heckecong {

// ---------------------------------------------------------------------------
// PadicNumber

PadicNumber::PadicNumber(long p) : p_(p), valuation_(kInfiniteValuation), mantissa_(0), precision_(0) {
  if (p < 2) throw InvalidArgument("PadicNumber: p must be >= 2");
}

PadicNumber PadicNumber::from_rational(const Rational& x, long p, long precision) {
  if (precision < 1) throw InvalidArgument("PadicNumber: precision must be >= 1");
  PadicNumber out(p);
  if (x == 0) return out;
  long v = vp(x, p);
  Rational unit = x;
  if (v > 0) unit /= Rational(ipow(p, static_cast<unsigned long>(v)));
  if (v < 0) unit *= Rational(ipow(p, static_cast<unsigned long>(-v)));
  out.valuation_ = v;
  out.precision_ = precision;
  out.mantissa_ = rational_mod(unit, ipow(p, static_cast<unsigned long>(precision)));
  return out;
}

PadicNumber PadicNumber::from_parts(long p, long valuation, const Integer& mantissa, long precision) {
  if (precision < 1) throw InvalidArgument("PadicNumber: precision must be >= 1");
  Integer modulus = ipow(p, static_cast<unsigned long>(precision));
  Integer m = mod(mantissa, modulus);
  if (m % p == 0) throw InvalidArgument("PadicNumber: mantissa must be a unit mod p");
  PadicNumber out(p);
  out.valuation_ = valuation;
  out.precision_ = precision;
  out.mantissa_ = m;
  return out;
}

long PadicNumber::absolute_precision() const {
  if (is_exact_zero()) return kInfiniteValuation;
  return valuation_ + precision_;
}

PadicNumber PadicNumber::operator-() const {
  PadicNumber out = *this;
  if (precision_ > 0) out.mantissa_ = mod(-mantissa_, ipow(p_, static_cast<unsigned long>(precision_)));
  return out;
}

PadicNumber PadicNumber::operator+(const PadicNumber& other) const {
  if (p_ != other.p_) throw InvalidArgument("PadicNumber: mixing primes");
  if (is_exact_zero()) return other;
  if (other.is_exact_zero()) return *this;
  long abs_prec = std::min(absolute_precision(), other.absolute_precision());
  long v0 = std::min(valuation_, other.valuation_);
  // Work with p^{-v0} * (x + y) modulo p^{abs_prec - v0}.
  long width = abs_prec - v0;
  PadicNumber out(p_);
  if (width <= 0) {
    out.valuation_ = abs_prec;
    out.precision_ = 0;
    return out;
  }
  Integer modulus = ipow(p_, static_cast<unsigned long>(width));
  Integer sum = mantissa_ * ipow(p_, static_cast<unsigned long>(valuation_ - v0)) +
                other.mantissa_ * ipow(p_, static_cast<unsigned long>(other.valuation_ - v0));
  sum = mod(sum, modulus);
  if (sum == 0) {
    out.valuation_ = abs_prec;
    out.precision_ = 0;
    return out;
  }
  long shift = vp(sum, p_);
  out.valuation_ = v0 + shift;
  out.precision_ = width - shift;
  Integer q = sum / ipow(p_, static_cast<unsigned long>(shift));
  out.mantissa_ = mod(q, ipow(p_, static_cast<unsigned long>(out.precision_)));
  return out;
}

PadicNumber PadicNumber::operator-(const PadicNumber& other) const { return *this + (-other); }

PadicNumber PadicNumber::operator*(const PadicNumber& other) const {
  if (p_ != other.p_) throw InvalidArgument("PadicNumber: mixing primes");
  PadicNumber out(p_);
  if (is_exact_zero() || other.is_exact_zero()) return out;
  out.valuation_ = valuation_ + other.valuation_;
  out.precision_ = std::min(precision_, other.precision_);
  if (out.precision_ > 0) {
    out.mantissa_ = mod(mantissa_ * other.mantissa_, ipow(p_, static_cast<unsigned long>(out.precision_)));
  }
  return out;
}

bool PadicNumber::operator==(const PadicNumber& other) const {
  if (p_ != other.p_) return false;
  if (valuation_ != other.valuation_) return false;
  if (is_exact_zero()) return true;
  long prec = std::min(precision_, other.precision_);
  if (prec <= 0) return true;
  Integer modulus = ipow(p_, static_cast<unsigned long>(prec));
  return mod(mantissa_ - other.mantissa_, modulus) == 0;
}

std::string PadicNumber::str() const {
  std::ostringstream os;
  if (is_exact_zero()) return "0";
  if (precision_ == 0) {
    os << "O(" << p_ << "^" << valuation_ << ")";
    return os.str();
  }
  os << p_ << "^" << valuation_ << "*" << mantissa_.get_str() << " + O(" << p_ << "^"
     << (valuation_ + precision_) << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) throw InvalidArgument("IntPoly: zero polynomial");
  if (coeffs_.size() == 1) throw InvalidArgument("IntPoly: constant polynomial");
}

IntPoly IntPoly::from_rational_monic(const std::vector<Rational>& coefficients) {
  std::vector<Integer> out;
  out.reserve(coefficients.size());
  for (const auto& c : coefficients) {
    if (c.get_den() != 1) throw InvalidArgument("IntPoly: non-integral coefficient " + to_string(c));
    out.push_back(c.get_num());
  }
  return IntPoly(std::move(out));
}

Integer IntPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Integer IntPoly::eval_mod(const Integer& x, const Integer& modulus) const {
  Integer acc = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) acc = mod(acc * x + coeffs_[i], modulus);
  return acc;
}

std::vector<Integer> IntPoly::derivative_coefficients() const {
  std::vector<Integer> out;
  for (size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return out;
}

IntPoly IntPoly::derivative() const { return IntPoly(derivative_coefficients()); }

namespace {

// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer bareiss_determinant(std::vector<std::vector<Integer>> a) {
  size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

Integer IntPoly::discriminant() const {
  // Resultant of f and f' through the Sylvester matrix.
  const auto& f = coeffs_;
  std::vector<Integer> df = derivative_coefficients();
  while (!df.empty() && df.back() == 0) df.pop_back();
  size_t n = f.size() - 1;
  size_t m = df.size() - 1;
  size_t size = n + m;
  std::vector<std::vector<Integer>> syl(size, std::vector<Integer>(size, 0));
  for (size_t r = 0; r < m; ++r) {
    for (size_t i = 0; i <= n; ++i) syl[r][r + i] = f[n - i];
  }
  for (size_t r = 0; r < n; ++r) {
    for (size_t i = 0; i <= m; ++i) syl[m + r][r + i] = df[m - i];
  }
  Integer res = bareiss_determinant(std::move(syl));
  Integer disc = res / leading();
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

std::string IntPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[i].get_str();
    if (i > 0) os << "*x^" << i;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Newton polygon

std::vector<NewtonSegment> newton_polygon(const IntPoly& f, long p) {
  struct Point {
    long x;
    long y;
  };
  std::vector<Point> pts;
  for (size_t i = 0; i < f.coefficients().size(); ++i) {
    if (f[i] != 0) pts.push_back({static_cast<long>(i), vp(f[i], p)});
  }
  auto slope = [](const Point& a, const Point& b) { return Rational(b.y - a.y, b.x - a.x); };
  std::vector<Point> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2 && slope(hull[hull.size() - 2], hull.back()) >= slope(hull.back(), pt)) {
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  std::vector<NewtonSegment> out;
  for (size_t i = hull.size(); i-- > 1;) {
    Rational s = slope(hull[i - 1], hull[i]);
    s.canonicalize();
    out.push_back({-s, hull[i].x - hull[i - 1].x});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Root isolation

namespace {

struct NeedMorePrecision {};

class RootIsolator {
 public:
  RootIsolator(long p, long target) : p_(p), target_(target), target_modulus_(ipow(p, static_cast<unsigned long>(target))) {}

  // g holds the coefficients of g(y) = f(prefix + p^depth y) / p^c modulo
  // p^known; roots of f in that disc correspond to roots of g in Z_p.
  void isolate(std::vector<Integer> g, long known, const Integer& prefix, long depth) {
    long content = kInfiniteValuation;
    for (const auto& c : g) {
      if (c != 0) content = std::min(content, vp(c, p_));
    }
    if (content >= known) throw NeedMorePrecision{};
    if (content > 0) {
      Integer scale = ipow(p_, static_cast<unsigned long>(content));
      for (auto& c : g) c /= scale;
      known -= content;
    }
    Integer modulus = ipow(p_, static_cast<unsigned long>(known));
    for (auto& c : g) c = mod(c, modulus);

    Integer p_depth = ipow(p_, static_cast<unsigned long>(depth));
    for (long y0 = 0; y0 < p_; ++y0) {
      if (eval_mod(g, Integer(y0), Integer(p_)) != 0) continue;
      if (eval_derivative_mod(g, Integer(y0), Integer(p_)) != 0) {
        long need = target_ - depth;
        Integer root_prefix = prefix + p_depth * y0;
        if (need <= 1) {
          roots_.push_back(mod(root_prefix, target_modulus_));
          continue;
        }
        if (known < need) throw NeedMorePrecision{};
        Integer y = newton_lift(g, Integer(y0), need);
        roots_.push_back(mod(prefix + p_depth * y, target_modulus_));
        continue;
      }
      // Multiple root mod p: shift and recurse, y = y0 + p z.
      roots_sub(g, known, prefix + p_depth * y0, depth + 1, y0);
    }
  }

  std::vector<Integer> take() { return std::move(roots_); }

 private:
  void roots_sub(const std::vector<Integer>& g, long known, const Integer& prefix, long depth, long y0) {
    Integer modulus = ipow(p_, static_cast<unsigned long>(known));
    // Taylor shift by y0, then scale z -> p z.
    std::vector<Integer> h = g;
    size_t n = h.size();
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = n - 1; j > i; --j) h[j - 1] = mod(h[j - 1] + h[j] * y0, modulus);
    }
    Integer pk = 1;
    for (size_t i = 0; i < n; ++i) {
      h[i] = mod(h[i] * pk, modulus);
      pk *= p_;
    }
    isolate(std::move(h), known, prefix, depth);
  }

  static Integer eval_mod(const std::vector<Integer>& g, const Integer& x, const Integer& m) {
    Integer acc = 0;
    for (size_t i = g.size(); i-- > 0;) acc = mod(acc * x + g[i], m);
    return acc;
  }

  static Integer eval_derivative_mod(const std::vector<Integer>& g, const Integer& x, const Integer& m) {
    Integer acc = 0;
    for (size_t i = g.size(); i-- > 1;) acc = mod(acc * x + g[i] * static_cast<unsigned long>(i), m);
    return acc;
  }

  Integer newton_lift(const std::vector<Integer>& g, Integer y, long digits) const {
    Integer modulus = ipow(p_, static_cast<unsigned long>(digits));
    long prec = 1;
    while (prec < digits) {
      prec = std::min(2 * prec, digits);
      Integer m = ipow(p_, static_cast<unsigned long>(prec));
      Integer gy = eval_mod(g, y, m);
      Integer dgy = eval_derivative_mod(g, y, m);
      y = mod(y - gy * inverse_mod(dgy, m), m);
    }
    return mod(y, modulus);
  }

  long p_;
  long target_;
  Integer target_modulus_;
  std::vector<Integer> roots_;
};

}  // namespace

std::vector<Integer> hensel_roots(const IntPoly& f, long p, long M, const HenselOptions& options) {
  if (M < 1) throw InvalidArgument("hensel_roots: M must be >= 1");
  if (!is_prime(p)) throw InvalidArgument("hensel_roots: p must be prime");
  Integer disc = f.discriminant();
  if (disc == 0) throw NotSquarefree("hensel_roots: discriminant vanishes for " + f.str());
  long disc_val = vp(disc, p);
  long guard = options.initial_guard;
  while (true) {
    long working = M + disc_val + guard;
    Integer modulus = ipow(p, static_cast<unsigned long>(working));
    std::vector<Integer> g;
    g.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients()) g.push_back(mod(c, modulus));
    RootIsolator iso(p, M);
    try {
      iso.isolate(std::move(g), working, Integer(0), 0);
      std::vector<Integer> roots = iso.take();
      std::sort(roots.begin(), roots.end());
      return roots;
    } catch (const NeedMorePrecision&) {
      guard = std::max(1L, guard * 2);
      if (guard > options.guard_ceiling) {
        throw PrecisionExhausted("hensel_roots: guard digits exceeded ceiling for " + f.str());
      }
    }
  }
}

long count_zp_roots(const IntPoly& f, long p) { return static_cast<long>(hensel_roots(f, p, 1).size()); }

}  // namespace heckecong
