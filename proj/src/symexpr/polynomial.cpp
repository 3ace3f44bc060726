#include "rpsym/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include "rpsym/error.hpp"

namespace rpsym {

Coordinates make_coordinates(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_coordinates(const Coordinates& a, const Coordinates& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::optional<std::size_t> coordinate_index(const Coordinates& coords, std::string_view name) {
  if (!coords) return std::nullopt;
  const auto it = std::find(coords->begin(), coords->end(), name);
  if (it == coords->end()) return std::nullopt;
  return static_cast<std::size_t>(it - coords->begin());
}

namespace {

std::uint64_t total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

Exponent checked_add(Exponent a, Exponent b) {
  Exponent out;
  if (__builtin_add_overflow(a, b, &out)) throw DomainError("exponent overflow");
  return out;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
  return out;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] - a[i];
  return out;
}

}  // namespace

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial::Polynomial(const Rational& constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{}, constant);
}

Polynomial::Polynomial(Coordinates coords, Terms terms) : coords_(std::move(coords)) {
  const std::size_t n = num_variables();
  for (auto& [m, c] : terms) {
    if (m.size() != n) throw DomainError("monomial length does not match coordinate count");
    if (!c.is_zero()) terms_.emplace(m, c);
  }
}

Polynomial Polynomial::variable(const Coordinates& coords, std::size_t index) {
  if (!coords || index >= coords->size()) throw DomainError("variable index out of range");
  Monomial m(coords->size(), 0);
  m[index] = 1;
  Terms t;
  t.emplace(std::move(m), Rational(1));
  return Polynomial(coords, std::move(t));
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](Exponent e) { return e == 0; });
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Exponent Polynomial::degree_in(std::size_t var) const {
  Exponent d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

Polynomial Polynomial::lifted_to(const Coordinates& coords) const {
  if (same_coordinates(coords_, coords)) return *this;
  if (!is_constant()) throw DomainError("cannot combine polynomials over different coordinates");
  Polynomial out;
  out.coords_ = coords;
  if (!terms_.empty()) {
    out.terms_.emplace(Monomial(coords ? coords->size() : 0, 0), terms_.begin()->second);
  }
  return out;
}

Polynomial Polynomial::stripped_if_constant() const {
  if (!coords_ || !is_constant()) return *this;
  return Polynomial(constant_value());
}

Coordinates unify_coordinates(const Polynomial& a, const Polynomial& b) {
  const auto& ca = a.coordinates();
  const auto& cb = b.coordinates();
  if (same_coordinates(ca, cb)) return ca;
  if (!ca) return cb;
  if (!cb) return ca;
  if (a.is_constant()) return cb;
  if (b.is_constant()) return ca;
  throw DomainError("cannot combine polynomials over different coordinates");
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  const auto coords = unify_coordinates(*this, o);
  *this = lifted_to(coords);
  const Polynomial rhs = o.lifted_to(coords);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  const auto coords = unify_coordinates(*this, o);
  const Polynomial lhs = lifted_to(coords);
  const Polynomial rhs = o.lifted_to(coords);
  Polynomial out;
  out.coords_ = coords;
  for (const auto& [ma, ca] : lhs.terms_) {
    for (const auto& [mb, cb] : rhs.terms_) out.add_term(multiply(ma, mb), ca * cb);
  }
  *this = std::move(out);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
  if (factor.is_zero()) {
    Polynomial out;
    out.coords_ = coords_;
    return out;
  }
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c *= factor;
  return out;
}

Polynomial Polynomial::pow(std::uint64_t exponent) const {
  Polynomial result = Polynomial(Rational(1)).lifted_to(coords_);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out;
  out.coords_ = coords_;
  if (var >= num_variables()) return out;
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out.add_term(d, c * Rational(static_cast<long>(m[var])));
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() < num_variables()) throw DomainError("evaluation point has too few coordinates");
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      mpq_class p;
      mpz_pow_ui(mpq_numref(p.get_mpq_t()), point[i].numerator().get_mpz_t(), m[i]);
      mpz_pow_ui(mpq_denref(p.get_mpq_t()), point[i].denominator().get_mpz_t(), m[i]);
      t *= Rational(BigInt(mpq_numref(p.get_mpq_t())), BigInt(mpq_denref(p.get_mpq_t())));
    }
    sum += t;
  }
  return sum;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() && b.is_constant()) return a.constant_value() == b.constant_value();
  if (!same_coordinates(a.coords_, b.coords_)) return false;
  return a.terms_ == b.terms_;
}

Rational Polynomial::normalizing_factor() const {
  if (is_zero()) throw DomainError("normalizing the zero polynomial");
  BigInt den_lcm = 1;
  BigInt num_gcd = 0;
  for (const auto& [m, c] : terms_) {
    den_lcm = lcm(den_lcm, c.denominator());
    num_gcd = gcd(num_gcd, c.numerator());
  }
  // c * den_lcm / num_gcd is integral for every coefficient c, with content 1
  Rational factor(den_lcm, num_gcd);
  if (leading_coefficient().sign() < 0) factor = -factor;
  return factor;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = c.abs();
    const bool constant_term = std::all_of(m.begin(), m.end(), [](Exponent e) { return e == 0; });
    bool need_star = false;
    if (constant_term || !mag.is_one()) {
      out += mag.str();
      need_star = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) out += "*";
      out += (*coords_)[i];
      if (m[i] > 1) out += "^" + std::to_string(m[i]);
      need_star = true;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

std::optional<Polynomial> divide_if_exact(const Polynomial& a_in, const Polynomial& b_in) {
  const auto coords = unify_coordinates(a_in, b_in);
  Polynomial r = a_in.lifted_to(coords);
  const Polynomial b = b_in.lifted_to(coords);
  if (b.is_constant()) return r.scaled(b.constant_value().inverse());
  Polynomial::Terms q;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!divides(lb, lr)) return std::nullopt;
    Polynomial::Terms t;
    auto [it, inserted] = t.emplace(quotient(lr, lb), r.leading_coefficient() / cb);
    q.emplace(it->first, it->second);
    r -= Polynomial(coords, std::move(t)) * b;
  }
  return Polynomial(coords, std::move(q));
}

Polynomial normalized(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.normalizing_factor());
}

// Coefficients of p viewed as a polynomial in `var`; entry d is the
// coefficient of var^d (a polynomial free of var).
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  std::vector<Polynomial::Terms> buckets(p.degree_in(var) + 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    rest[var] = 0;
    buckets[m[var]].emplace(std::move(rest), c);
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(p.coordinates(), std::move(b));
  return out;
}

Polynomial var_power(const Coordinates& coords, std::size_t var, Exponent e) {
  Monomial m(coords->size(), 0);
  m[var] = e;
  Polynomial::Terms t;
  t.emplace(std::move(m), Rational(1));
  return Polynomial(coords, std::move(t));
}

Polynomial leading_coefficient_in(const Polynomial& p, std::size_t var) {
  const Exponent d = p.degree_in(var);
  Polynomial::Terms t;
  for (const auto& [m, c] : p.terms()) {
    if (m[var] != d) continue;
    Monomial rest = m;
    rest[var] = 0;
    t.emplace(std::move(rest), c);
  }
  return Polynomial(p.coordinates(), std::move(t));
}

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g;
  for (const auto& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalized(c) : gcd(g, c);
    if (g.is_constant()) break;
  }
  return g.lifted_to(p.coordinates());
}

Polynomial primitive_part_in(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  return normalized(exact_divide(p, content_in(p, var)));
}

// lc(b)^k * a reduced modulo b in var, for some k >= 0.
Polynomial sparse_pseudo_remainder(Polynomial r, const Polynomial& b, std::size_t var) {
  const Exponent db = b.degree_in(var);
  const Polynomial lcb = leading_coefficient_in(b, var);
  while (!r.is_zero()) {
    const Exponent dr = r.degree_in(var);
    if (dr < db) break;
    const Polynomial lcr = leading_coefficient_in(r, var);
    r = lcb * r - lcr * var_power(r.coordinates(), var, dr - db) * b;
  }
  return r;
}

Polynomial monomial_gcd(const Polynomial& mono, const Polynomial& other) {
  Monomial g = mono.leading_monomial();
  for (const auto& [m, c] : other.terms()) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], m[i]);
  }
  Polynomial::Terms t;
  t.emplace(std::move(g), Rational(1));
  return Polynomial(mono.coordinates(), std::move(t));
}

std::optional<std::size_t> main_variable(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.num_variables();
  for (std::size_t v = n; v-- > 0;) {
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
  }
  return std::nullopt;
}

using Univariate = std::vector<Rational>;

void trim(Univariate& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// Image of p in var after substituting `point` for every other variable.
Univariate specialize(const Polynomial& p, std::size_t var, const std::vector<Rational>& point) {
  Univariate out(p.degree_in(var) + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == var || m[i] == 0) continue;
      for (Exponent k = 0; k < m[i]; ++k) t *= point[i];
    }
    out[m[var]] += t;
  }
  return out;
}

std::size_t univariate_gcd_degree(Univariate a, Univariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      const Rational f = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True when a and b provably have no common factor of positive degree in var.
bool coprime_in(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const std::size_t n = a.num_variables();
  const Exponent da = a.degree_in(var);
  const Exponent db = b.degree_in(var);
  for (long attempt = 0; attempt < 3; ++attempt) {
    std::vector<Rational> point(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) point[i] = Rational(static_cast<long>(3 + 7 * i + 13 * attempt + (i * i * 5 + attempt) % 11));
    const Univariate ia = specialize(a, var, point);
    const Univariate ib = specialize(b, var, point);
    if (ia[da].is_zero() || ib[db].is_zero()) continue;
    return univariate_gcd_degree(ia, ib) == 0;
  }
  return false;
}

BigInt integer_content(const Polynomial& p) {
  BigInt g = 0;
  for (const auto& [m, c] : p.terms()) g = gcd(g, c.numerator());
  return g;
}

BigInt max_norm(const Polynomial& p) {
  BigInt n = 0;
  for (const auto& [m, c] : p.terms()) n = std::max<BigInt>(n, abs(c.numerator()));
  return n;
}

Polynomial substitute(const Polynomial& p, std::size_t var, const BigInt& value) {
  Polynomial::Terms out;
  for (const auto& [m, c] : p.terms()) {
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), value.get_mpz_t(), m[var]);
    Monomial rest = m;
    rest[var] = 0;
    auto [it, inserted] = out.try_emplace(std::move(rest), c * Rational(power));
    if (!inserted) it->second += c * Rational(power);
  }
  return Polynomial(p.coordinates(), std::move(out));
}

// Recovers a polynomial in var from its image at var = value, reading the
// integer coefficients as balanced digits in base value.
Polynomial interpolate(Polynomial image, std::size_t var, const BigInt& value) {
  Polynomial::Terms out;
  const BigInt half = value / 2;
  const Rational inv = Rational(value).inverse();
  for (Exponent k = 0; !image.is_zero(); ++k) {
    Polynomial::Terms digit;
    for (const auto& [m, c] : image.terms()) {
      BigInt d;
      mpz_mod(d.get_mpz_t(), c.numerator().get_mpz_t(), value.get_mpz_t());
      if (d > half) d -= value;
      if (d == 0) continue;
      Monomial shifted = m;
      shifted[var] = k;
      out.emplace(std::move(shifted), Rational(d));
      digit.emplace(m, Rational(d));
    }
    image = (image - Polynomial(image.coordinates(), std::move(digit))).scaled(inv);
  }
  return Polynomial(image.coordinates(), std::move(out));
}

// Heuristic gcd of integer polynomials by evaluation at a large integer and
// balanced interpolation, accepted only after trial division.
std::optional<Polynomial> heuristic_gcd(const Polynomial& f_in, const Polynomial& g_in) {
  const Coordinates& coords = f_in.coordinates();
  if (f_in.is_zero()) return g_in;
  if (g_in.is_zero()) return f_in;
  const BigInt cf = integer_content(f_in);
  const BigInt cg = integer_content(g_in);
  const BigInt c = gcd(cf, cg);
  if (f_in.is_constant() || g_in.is_constant()) return Polynomial(Rational(c)).lifted_to(coords);
  const auto var = main_variable(f_in, g_in);
  if (!var) return Polynomial(Rational(c)).lifted_to(coords);
  const Polynomial f = f_in.scaled(Rational(1) / Rational(cf));
  const Polynomial g = g_in.scaled(Rational(1) / Rational(cg));

  const BigInt fn = max_norm(f);
  const BigInt gn = max_norm(g);
  const BigInt b = 2 * std::min(fn, gn) + 29;
  BigInt x = std::min<BigInt>(b, 99 * sqrt(b));
  const BigInt lc_bound =
      2 * std::min<BigInt>(fn / abs(f.leading_coefficient().numerator()), gn / abs(g.leading_coefficient().numerator())) + 4;
  x = std::max(x, lc_bound);

  for (int attempt = 0; attempt < 6; ++attempt) {
    const Polynomial ff = substitute(f, *var, x);
    const Polynomial gg = substitute(g, *var, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      if (auto image = heuristic_gcd(ff, gg)) {
        Polynomial h = interpolate(*image, *var, x);
        if (!h.is_zero()) {
          h = h.scaled(Rational(1) / Rational(integer_content(h)));
          if (divide_if_exact(f, h) && divide_if_exact(g, h)) return h.scaled(Rational(c));
        }
      }
    }
    x = 73794 * x * sqrt(sqrt(x)) / 27011;
  }
  return std::nullopt;
}

}  // namespace

Polynomial gcd(const Polynomial& a_in, const Polynomial& b_in) {
  const auto coords = unify_coordinates(a_in, b_in);
  const Polynomial a = a_in.lifted_to(coords);
  const Polynomial b = b_in.lifted_to(coords);
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  const Polynomial one = Polynomial(Rational(1)).lifted_to(coords);
  if (a.is_constant() || b.is_constant()) return one;
  if (a.is_monomial()) return monomial_gcd(a, b);
  if (b.is_monomial()) return monomial_gcd(b, a);

  const auto var = main_variable(a, b);
  if (!var) return one;
  if (auto h = heuristic_gcd(normalized(a), normalized(b))) return normalized(*h);
  const std::size_t v = *var;
  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

  const Polynomial ca = content_in(a, v);
  const Polynomial cb = content_in(b, v);
  const Polynomial content = gcd(ca, cb);
  if (coprime_in(a, b, v)) return content;
  Polynomial p = normalized(exact_divide(a, ca));
  Polynomial q = normalized(exact_divide(b, cb));
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);

  Polynomial g;
  while (true) {
    const Polynomial r = sparse_pseudo_remainder(p, q, v);
    if (r.is_zero()) {
      g = q;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = one;
      break;
    }
    p = std::move(q);
    q = primitive_part_in(r, v);
  }
  return normalized(content * g);
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  auto q = divide_if_exact(a, b);
  if (!q) throw DomainError("polynomial division is not exact");
  return *std::move(q);
}

}  // namespace rpsym
