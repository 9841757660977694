#include "heckecong/poly.hpp"

#include "heckecong/errors.hpp"

#include <algorithm>

namespace heckecong::qpoly {

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long degree(const QPoly& f) {
  long d = static_cast<long>(f.size()) - 1;
  while (d >= 0 && f[static_cast<size_t>(d)] == 0) --d;
  return d;
}

QPoly derivative(const QPoly& f) {
  QPoly out;
  for (size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * static_cast<long>(i));
  trim(out);
  return out;
}

QPoly mul(const QPoly& f, const QPoly& g) {
  if (f.empty() || g.empty()) return {};
  QPoly out(f.size() + g.size() - 1, Rational(0));
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  }
  trim(out);
  return out;
}

QPoly add(const QPoly& f, const QPoly& g) {
  QPoly out(std::max(f.size(), g.size()), Rational(0));
  for (size_t i = 0; i < f.size(); ++i) out[i] += f[i];
  for (size_t i = 0; i < g.size(); ++i) out[i] += g[i];
  trim(out);
  return out;
}

void divmod(const QPoly& f, const QPoly& g, QPoly& quotient, QPoly& remainder) {
  long dg = degree(g);
  if (dg < 0) throw InvalidArgument("qpoly::divmod: division by zero polynomial");
  remainder = f;
  trim(remainder);
  long df = degree(remainder);
  quotient.assign(df >= dg ? static_cast<size_t>(df - dg + 1) : 0, Rational(0));
  const Rational& lead = g[static_cast<size_t>(dg)];
  while (degree(remainder) >= dg) {
    long dr = degree(remainder);
    Rational c = remainder[static_cast<size_t>(dr)] / lead;
    size_t shift = static_cast<size_t>(dr - dg);
    quotient[shift] = c;
    for (long i = 0; i <= dg; ++i) remainder[shift + static_cast<size_t>(i)] -= c * g[static_cast<size_t>(i)];
    trim(remainder);
  }
  trim(quotient);
}

QPoly monic(const QPoly& f) {
  QPoly out = f;
  trim(out);
  if (out.empty()) return out;
  Rational lead = out.back();
  for (auto& c : out) c /= lead;
  return out;
}

QPoly gcd(const QPoly& f, const QPoly& g) {
  QPoly a = f, b = g;
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly radical(const QPoly& f) {
  QPoly g = gcd(f, derivative(f));
  QPoly q, r;
  divmod(f, g, q, r);
  return monic(q);
}

bool is_squarefree(const QPoly& f) { return degree(gcd(f, derivative(f))) <= 0; }

Rational eval(const QPoly& f, const Rational& x) {
  Rational acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

}  // namespace heckecong::qpoly
