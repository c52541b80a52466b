#include "ascount/gf.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ascount {

namespace {

constexpr std::int64_t kMaxFieldSize = 1 << 20;

// coordinate-level multiplication, used only while building the tables
std::uint32_t slow_mul(int p, int n, const std::vector<int>& mod,
                       std::uint32_t a, std::uint32_t b) {
  std::vector<int> x(n), y(n), z(2 * n, 0);
  for (int i = 0; i < n; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
  for (int k = 2 * n - 2; k >= n; --k) {
    int c = z[k];
    if (!c) continue;
    for (int i = 0; i <= n; ++i)
      z[k - n + i] = ((z[k - n + i] - c * mod[i]) % p + p) % p;
  }
  std::uint32_t out = 0;
  for (int i = n - 1; i >= 0; --i) out = out * p + z[i];
  return out;
}

std::vector<std::int64_t> prime_factors(std::int64_t m) {
  std::vector<std::int64_t> f;
  for (std::int64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      f.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) f.push_back(m);
  return f;
}

}  // namespace

PrimeContext::PrimeContext(int p, int n, int r) : p_(p), n_(n), r_(r) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  q_ = 1;
  for (int i = 0; i < n; ++i) {
    q_ *= p;
    if (q_ > kMaxFieldSize) throw std::invalid_argument("field too large");
  }

  if (n == 1) {
    modulus_ = {0, 1};
  } else {
    PrimeContext base(p, 1, 1);
    std::int64_t count = q_;
    for (std::int64_t k = 0; k < count; ++k) {
      // k enumerates (c0, ..., c_{n-1}) with c0 most significant
      std::vector<FieldElement> c(n + 1);
      std::int64_t t = k;
      for (int i = n - 1; i >= 0; --i) {
        c[i] = FieldElement{static_cast<std::uint32_t>(t % p)};
        t /= p;
      }
      c[n] = base.one();
      Poly f(&base, c);
      if (is_irreducible(f)) {
        modulus_.resize(n + 1);
        for (int i = 0; i <= n; ++i) modulus_[i] = static_cast<int>(c[i].code);
        break;
      }
    }
    if (modulus_.empty()) throw std::logic_error("no irreducible modulus found");
  }

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  auto factors = prime_factors(q_ - 1);
  auto slow_pow = [&](std::uint32_t a, std::int64_t e) {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(p, n, modulus_, r, a);
      a = slow_mul(p, n, modulus_, a, a);
      e >>= 1;
    }
    return r;
  };
  std::uint32_t gen = 0;
  for (std::uint32_t g = 1; g < q_; ++g) {
    bool ok = true;
    for (auto l : factors)
      if (slow_pow(g, (q_ - 1) / l) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      gen = g;
      break;
    }
  }
  if (q_ == 2) gen = 1;
  std::uint32_t cur = 1;
  for (std::int64_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = slow_mul(p, n, modulus_, cur, gen);
  }
}

FieldElement PrimeContext::from_int(std::int64_t k) const {
  return FieldElement{static_cast<std::uint32_t>(((k % p_) + p_) % p_)};
}

FieldElement PrimeContext::from_coords(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) != n_)
    throw std::invalid_argument("coordinate vector has wrong length");
  std::uint32_t code = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    if (c[i] < 0 || c[i] >= p_) throw std::invalid_argument("coordinate out of range");
    code = code * p_ + c[i];
  }
  return {code};
}

std::vector<int> PrimeContext::coords(FieldElement a) const {
  std::vector<int> c(n_);
  std::uint32_t x = a.code;
  for (int i = 0; i < n_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  return c;
}

FieldElement PrimeContext::element(std::int64_t index) const {
  if (index < 0 || index >= q_) throw std::out_of_range("field element index");
  return {static_cast<std::uint32_t>(index)};
}

FieldElement PrimeContext::add(FieldElement a, FieldElement b) const {
  if (n_ == 1) return {(a.code + b.code) % p_};
  std::uint32_t x = a.code, y = b.code, out = 0, mult = 1;
  for (int i = 0; i < n_; ++i) {
    out += ((x % p_ + y % p_) % p_) * mult;
    x /= p_;
    y /= p_;
    mult *= p_;
  }
  return {out};
}

FieldElement PrimeContext::neg(FieldElement a) const {
  if (n_ == 1) return {(p_ - a.code) % p_};
  std::uint32_t x = a.code, out = 0, mult = 1;
  for (int i = 0; i < n_; ++i) {
    out += ((p_ - x % p_) % p_) * mult;
    x /= p_;
    mult *= p_;
  }
  return {out};
}

FieldElement PrimeContext::sub(FieldElement a, FieldElement b) const {
  return add(a, neg(b));
}

FieldElement PrimeContext::mul(FieldElement a, FieldElement b) const {
  if (a.is_zero() || b.is_zero()) return {};
  std::uint64_t e = std::uint64_t(log_[a.code]) + log_[b.code];
  return {exp_[e % (q_ - 1)]};
}

FieldElement PrimeContext::inv(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
}

FieldElement PrimeContext::pow(FieldElement a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.is_zero()) return {};
  return {exp_[(log_[a.code] * (e % (q_ - 1))) % (q_ - 1)]};
}

FieldElement PrimeContext::scale(FieldElement a, int lambda) const {
  return mul(a, from_int(lambda));
}

std::string PrimeContext::format(FieldElement a) const {
  if (n_ == 1) return std::to_string(a.code);
  std::ostringstream os;
  os << '[';
  auto c = coords(a);
  for (int i = 0; i < n_; ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const PrimeContext* ctx, std::vector<FieldElement> c)
    : ctx_(ctx), c_(std::move(c)) {
  trim();
}

Poly Poly::constant(const PrimeContext* ctx, FieldElement a) {
  return Poly(ctx, {a});
}

Poly Poly::monomial(const PrimeContext* ctx, FieldElement a, int k) {
  std::vector<FieldElement> c(k + 1);
  c[k] = a;
  return Poly(ctx, std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return {};
  return c_[i];
}

FieldElement Poly::leading() const {
  if (c_.empty()) return {};
  return c_.back();
}

static const PrimeContext* pick(const PrimeContext* a, const PrimeContext* b) {
  if (a) return a;
  if (b) return b;
  throw std::logic_error("polynomial without field context");
}

Poly Poly::operator+(const Poly& o) const {
  auto ctx = pick(ctx_, o.ctx_);
  std::vector<FieldElement> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx->add(coeff(i), o.coeff(i));
  return Poly(ctx, std::move(c));
}

Poly Poly::operator-() const {
  if (is_zero()) return *this;
  std::vector<FieldElement> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx_->neg(c_[i]);
  return Poly(ctx_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  auto ctx = pick(ctx_, o.ctx_);
  if (is_zero() || o.is_zero()) return Poly(ctx);
  std::vector<FieldElement> c(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      c[i + j] = ctx->add(c[i + j], ctx->mul(c_[i], o.c_[j]));
  }
  return Poly(ctx, std::move(c));
}

Poly Poly::scaled(FieldElement a) const {
  if (is_zero()) return *this;
  std::vector<FieldElement> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx_->mul(c_[i], a);
  return Poly(ctx_, std::move(c));
}

Poly Poly::scaled_int(int lambda) const {
  if (is_zero()) return *this;
  return scaled(ctx_->from_int(lambda));
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<FieldElement> c(k, FieldElement{});
  c.insert(c.end(), c_.begin(), c_.end());
  return Poly(ctx_, std::move(c));
}

void Poly::divmod(const Poly& d, Poly& quo, Poly& rem) const {
  auto ctx = pick(ctx_, d.ctx_);
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<FieldElement> r = c_;
  int dd = d.degree();
  int qd = degree() - dd;
  std::vector<FieldElement> qc(qd >= 0 ? qd + 1 : 0);
  FieldElement lead_inv = ctx->inv(d.leading());
  for (int k = degree(); k >= dd; --k) {
    if (r[k].is_zero()) continue;
    FieldElement f = ctx->mul(r[k], lead_inv);
    qc[k - dd] = f;
    for (int i = 0; i <= dd; ++i)
      r[k - dd + i] = ctx->sub(r[k - dd + i], ctx->mul(f, d.c_[i]));
  }
  quo = Poly(ctx, std::move(qc));
  rem = Poly(ctx, std::move(r));
}

Poly Poly::operator/(const Poly& d) const {
  Poly q, r;
  divmod(d, q, r);
  return q;
}

Poly Poly::operator%(const Poly& d) const {
  Poly q, r;
  divmod(d, q, r);
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(ctx_->inv(leading()));
}

Poly Poly::powmod(const BigInt& e, const Poly& m) const {
  auto ctx = pick(ctx_, m.ctx_);
  Poly result = constant(ctx, ctx->one()) % m;
  Poly base = *this % m;
  unsigned bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
  for (int i = static_cast<int>(bits) - 1; i >= 0; --i) {
    result = (result * result) % m;
    if (boost::multiprecision::bit_test(e, i)) result = (result * base) % m;
  }
  return result;
}

Poly Poly::pow(unsigned e) const {
  auto ctx = pick(ctx_, nullptr);
  Poly result = constant(ctx, ctx->one()), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

std::string Poly::format(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    FieldElement a = c_[i];
    if (a.is_zero()) continue;
    if (!first) os << '+';
    first = false;
    bool unit = a.code == 1;
    if (i == 0 || !unit) os << ctx_->format(a);
    if (i >= 1) os << var;
    if (i >= 2) os << i;
  }
  return os.str();
}

Poly parse_poly(const PrimeContext* ctx, const std::string& text) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + text + "': " + why);
  };
  auto digits = [&](std::size_t& i) {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) fail("expected digits at position " + std::to_string(start));
    if (i - start > 9) fail("number too long");
    return std::stoll(text.substr(start, i - start));
  };
  if (text.empty()) fail("empty");
  Poly out(ctx);
  std::size_t i = 0;
  while (true) {
    FieldElement c = ctx->one();
    bool has_coeff = false;
    if (i < text.size() && text[i] == '[') {
      ++i;
      std::vector<int> coords;
      while (true) {
        coords.push_back(static_cast<int>(digits(i) % ctx->p()));
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == ']') break;
        fail("unterminated coefficient vector");
      }
      ++i;
      if (static_cast<int>(coords.size()) != ctx->n()) fail("coefficient vector needs n entries");
      c = ctx->from_coords(coords);
      has_coeff = true;
    } else if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = ctx->from_int(digits(i));
      has_coeff = true;
    }
    int k = 0;
    if (i < text.size() && text[i] == 't') {
      ++i;
      k = 1;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        long long e = digits(i);
        if (e > 100000) fail("exponent too large");
        k = static_cast<int>(e);
      }
    } else if (!has_coeff) {
      fail("empty term");
    }
    out = out + Poly::monomial(ctx, c, k);
    if (i == text.size()) break;
    if (text[i] != '+') fail(std::string("unexpected '") + text[i] + "'");
    ++i;
  }
  return out;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  // extended Euclid tracking the coefficient of a
  auto ctx = pick(a.ctx(), m.ctx());
  Poly r0 = m, r1 = a % m;
  Poly s0(ctx), s1 = Poly::constant(ctx, ctx->one());
  while (!r1.is_zero()) {
    Poly q, r;
    r0.divmod(r1, q, r);
    Poly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw std::domain_error("polynomial not invertible modulo m");
  return (s0.scaled(ctx->inv(r0.leading()))) % m;
}

bool is_irreducible(const Poly& f) {
  int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  auto ctx = f.ctx();
  Poly g = f.monic();
  Poly x = Poly::x(ctx);
  Poly h = x;
  BigInt q = ctx->q();
  for (int i = 1; i <= d / 2; ++i) {
    h = h.powmod(q, g);
    if (gcd(g, h - x).degree() > 0) return false;
  }
  return true;
}

namespace {

struct IrrKey {
  int p, n, d;
  auto operator<=>(const IrrKey&) const = default;
};

std::mutex irr_mutex;
std::map<IrrKey, std::vector<std::vector<std::uint32_t>>> irr_cache;

}  // namespace

std::vector<Poly> irreducibles(const PrimeContext& ctx, int d) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  IrrKey key{ctx.p(), ctx.n(), d};
  std::vector<std::vector<std::uint32_t>> codes;
  {
    std::lock_guard lock(irr_mutex);
    auto it = irr_cache.find(key);
    if (it != irr_cache.end()) codes = it->second;
  }
  if (codes.empty()) {
    BigInt total = ipow(BigInt(ctx.q()), d);
    if (total > BigInt(1) << 26) throw std::invalid_argument("irreducible enumeration too large");
    std::int64_t count = static_cast<std::int64_t>(total);
    for (std::int64_t k = 0; k < count; ++k) {
      std::vector<FieldElement> c(d + 1);
      std::int64_t t = k;
      for (int i = d - 1; i >= 0; --i) {
        c[i] = ctx.element(t % ctx.q());
        t /= ctx.q();
      }
      c[d] = ctx.one();
      Poly f(&ctx, c);
      if (is_irreducible(f)) {
        std::vector<std::uint32_t> cc;
        for (auto e : c) cc.push_back(e.code);
        codes.push_back(std::move(cc));
      }
    }
    std::lock_guard lock(irr_mutex);
    irr_cache[key] = codes;
  }
  std::vector<Poly> out;
  out.reserve(codes.size());
  for (auto& cc : codes) {
    std::vector<FieldElement> c;
    for (auto x : cc) c.push_back(FieldElement{x});
    out.emplace_back(&ctx, std::move(c));
  }
  return out;
}

std::int64_t moebius(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("moebius: n >= 1");
  int sign = 1;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      sign = -sign;
    }
  if (n > 1) sign = -sign;
  return sign;
}

BigInt place_count(const PrimeContext& ctx, int d) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  if (d == 1) return BigInt(ctx.q()) + 1;
  BigInt s = 0;
  for (int e = 1; e <= d; ++e)
    if (d % e == 0) s += moebius(e) * ipow(BigInt(ctx.q()), d / e);
  return s / d;
}

// ---------------------------------------------------------------- places

Place Place::finite(Poly pi) {
  if (pi.is_zero() || pi.leading() != pi.ctx()->one() || !is_irreducible(pi))
    throw std::invalid_argument("place requires a monic irreducible polynomial");
  Place P;
  P.pi_ = std::move(pi);
  return P;
}

Place Place::infinity(const PrimeContext* ctx) {
  Place P;
  P.inf_ = true;
  P.pi_ = Poly::x(ctx);
  return P;
}

bool Place::operator<(const Place& o) const {
  if (inf_ != o.inf_) return !inf_;
  if (inf_) return false;
  return pi_ < o.pi_;
}

std::string Place::format() const { return inf_ ? "inf" : pi_.format(); }

std::vector<Place> places_of_degree(const PrimeContext& ctx, int d) {
  std::vector<Place> out;
  for (auto& f : irreducibles(ctx, d)) {
    out.push_back(Place::finite(f));
  }
  if (d == 1) out.push_back(Place::infinity(&ctx));
  return out;
}

int divisor_degree(const Divisor& D) {
  int s = 0;
  for (auto& [P, e] : D) s += e * P.degree();
  return s;
}

// ---------------------------------------------------------------- residue fields

ResidueField::ResidueField(const Place& place, const PrimeContext* ctx)
    : ctx_(ctx), pi_(place.is_infinity() ? Poly::x(ctx) : place.uniformizer()),
      d_(place.degree()) {}

Poly ResidueField::reduce(const Poly& a) const { return a % pi_; }

Poly ResidueField::mul(const Poly& a, const Poly& b) const { return (a * b) % pi_; }

Poly ResidueField::pow(const Poly& a, const BigInt& e) const { return a.powmod(e, pi_); }

Poly ResidueField::pth_root(const Poly& a) const {
  // Frobenius has order n*d, so x -> x^(p^(nd-1)) inverts it
  Poly y = reduce(a);
  BigInt p = ctx_->p();
  for (int i = 0; i < ctx_->n() * d_ - 1; ++i) y = y.powmod(p, pi_);
  return y;
}

std::int64_t ResidueField::size() const { return ipow64(ctx_->q(), d_); }

Poly ResidueField::element(std::int64_t index) const {
  std::vector<FieldElement> c(d_);
  for (int i = 0; i < d_; ++i) {
    c[i] = ctx_->element(index % ctx_->q());
    index /= ctx_->q();
  }
  return Poly(ctx_, std::move(c));
}

Poly pth_root(const ResidueField& k, const Poly& a) { return k.pth_root(a); }

// ---------------------------------------------------------------- rational functions

RationalFunction::RationalFunction(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)) {
  den_ = Poly::constant(num_.ctx(), num_.ctx()->one());
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  auto ctx = den_.ctx();
  if (num_.is_zero()) {
    num_ = Poly(ctx);
    den_ = Poly::constant(ctx, ctx->one());
    return;
  }
  Poly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  FieldElement li = ctx->inv(den_.leading());
  num_ = num_.scaled(li);
  den_ = den_.scaled(li);
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::pow(unsigned e) const {
  return RationalFunction(num_.pow(e), den_.pow(e));
}

std::vector<std::pair<Poly, int>> factor_monic(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor zero");
  std::vector<std::pair<Poly, int>> out;
  Poly rest = f.monic();
  const PrimeContext& ctx = *f.ctx();
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    for (auto& g : irreducibles(ctx, d)) {
      int e = 0;
      while (rest.degree() >= d) {
        Poly q, r;
        rest.divmod(g, q, r);
        if (!r.is_zero()) break;
        rest = q;
        ++e;
      }
      if (e) out.emplace_back(g, e);
    }
  }
  if (rest.degree() >= 1) {
    bool merged = false;
    for (auto& [g, e] : out)
      if (g == rest) {
        ++e;
        merged = true;
      }
    if (!merged) out.emplace_back(rest, 1);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace ascount
