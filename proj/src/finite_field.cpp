#include "efv/finite_field.hpp"

#include <algorithm>
#include <cmath>

namespace efv {

const char* errc_name(errc code) {
  switch (code) {
    case errc::not_prime: return "NotPrime";
    case errc::reducible_modulus: return "ReducibleModulus";
    case errc::zero_inverse: return "ZeroInverse";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::no_embedding: return "NoEmbedding";
    case errc::singular_curve: return "SingularCurve";
    case errc::hasse_violation: return "HasseViolation";
    case errc::non_integral_count: return "NonIntegralCount";
    case errc::pole_hit: return "PoleHit";
    case errc::no_convergence: return "NoConvergence";
    case errc::n_insufficient: return "NInsufficient";
    case errc::parse_error: return "ParseError";
    case errc::not_ascending: return "NotAscending";
    case errc::invalid_config: return "InvalidConfig";
  }
  return "UnknownError";
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // dense, constant term first

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // extended Euclid; a != 0 mod p, p prime
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::swap(t -= quot * new_t, new_t);
    std::swap(r -= quot * new_r, new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t v = out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] % p;
      out[i + j] = static_cast<std::uint32_t>(v % p);
    }
  }
  trim(out);
  return out;
}

// remainder of a by monic m
Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const int dm = degree(m);
  while (degree(a) >= dm) {
    std::uint64_t lead = a.back();
    int shift = degree(a) - dm;
    for (int i = 0; i <= dm; ++i) {
      std::uint64_t sub = lead * m[i] % p;
      std::uint64_t cur = a[i + shift];
      a[i + shift] = static_cast<std::uint32_t>((cur + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic so poly_mod applies
    std::uint64_t inv_lead = mod_inverse(b.back(), p);
    Poly bm = b;
    for (auto& c : bm) c = static_cast<std::uint32_t>(c * inv_lead % p);
    Poly r = poly_mod(a, bm, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_pow_mod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mod(poly_mul(result, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

// x^(p^k) mod m via k-fold Frobenius of x
Poly frobenius_power_of_x(unsigned k, const Poly& m, std::uint64_t p) {
  Poly t{0, 1};
  for (unsigned i = 0; i < k; ++i) t = poly_pow_mod(std::move(t), p, m, p);
  return t;
}

bool is_irreducible(const Poly& m, std::uint64_t p) {
  const int r = degree(m);
  if (r <= 0) return false;
  if (r == 1) return true;
  // no roots in F_p <=> gcd(x^p - x, m) = 1; sufficient for r <= 3
  {
    Poly xp = frobenius_power_of_x(1, m, p);
    Poly diff = xp;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    trim(diff);
    Poly g = poly_gcd(m, diff, p);
    if (degree(g) > 0) return false;
    if (r <= 3) return true;
  }
  // Rabin: x^(p^r) == x mod m, and gcd(x^(p^(r/l)) - x, m) = 1 for prime l | r
  for (unsigned l = 2; l <= static_cast<unsigned>(r); ++l) {
    if (static_cast<unsigned>(r) % l != 0 || !is_prime_u64(l)) continue;
    Poly g = frobenius_power_of_x(static_cast<unsigned>(r) / l, m, p);
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = static_cast<std::uint32_t>((g[1] + p - 1) % p);
    trim(g);
    if (degree(poly_gcd(m, g, p)) > 0) return false;
  }
  Poly xpr = frobenius_power_of_x(static_cast<unsigned>(r), m, p);
  return xpr == Poly{0, 1};
}

std::uint64_t checked_pow(std::uint64_t p, unsigned r) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) {
    if (q > (std::uint64_t(1) << 62) / p)
      fail(errc::invalid_config, "p^r exceeds the supported integer range");
    q *= p;
  }
  return q;
}

}  // namespace

Field Field::make(std::uint64_t p, unsigned r, std::vector<std::uint32_t> modulus) {
  if (!is_prime_u64(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
  if (r < 1) fail(errc::invalid_config, "extension degree must be >= 1");
  if (p >= (std::uint64_t(1) << 31)) fail(errc::invalid_config, "characteristic too large");
  if (modulus.size() != r + 1 || modulus[r] != 1)
    fail(errc::reducible_modulus, "modulus must be monic of degree r");
  for (auto& c : modulus) c %= static_cast<std::uint32_t>(p);
  modulus[r] = 1;
  if (!is_irreducible(modulus, p))
    fail(errc::reducible_modulus, "modulus is reducible over F_p");
  auto spec = std::make_shared<FieldSpec>();
  spec->p = p;
  spec->r = r;
  spec->modulus = std::move(modulus);
  spec->q = checked_pow(p, r);
  return Field(std::move(spec));
}

Field Field::make(std::uint64_t p, unsigned r) {
  if (!is_prime_u64(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
  if (r < 1) fail(errc::invalid_config, "extension degree must be >= 1");
  // count through low-coefficient tuples in base p; first irreducible wins
  std::uint64_t budget = checked_pow(p, r);
  for (std::uint64_t n = 0; n < budget; ++n) {
    std::vector<std::uint32_t> m(r + 1, 0);
    std::uint64_t v = n;
    for (unsigned i = 0; i < r; ++i) {
      m[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    m[r] = 1;
    if (is_irreducible(m, p)) return make(p, r, std::move(m));
  }
  fail(errc::reducible_modulus, "no irreducible modulus found");  // unreachable
}

void Field::check_member(const FieldElement& a) const {
  if (a.spec.get() == spec_.get()) return;
  if (!a.spec || !(*a.spec == *spec_))
    fail(errc::field_mismatch, "element belongs to a different field");
}

FieldElement Field::zero() const { return {spec_, std::vector<std::uint32_t>(r(), 0)}; }

FieldElement Field::one() const {
  auto e = zero();
  e.coeffs[0] = 1;
  return e;
}

FieldElement Field::element(const std::vector<std::int64_t>& coeffs) const {
  if (coeffs.size() > r()) fail(errc::invalid_config, "coefficient list longer than degree r");
  auto e = zero();
  const auto ip = static_cast<std::int64_t>(p());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::int64_t c = coeffs[i] % ip;
    if (c < 0) c += ip;
    e.coeffs[i] = static_cast<std::uint32_t>(c);
  }
  return e;
}

FieldElement Field::from_int(std::int64_t n) const { return element({n}); }

FieldElement Field::from_index(std::uint64_t index) const {
  auto e = zero();
  for (unsigned i = 0; i < r() && index > 0; ++i) {
    e.coeffs[i] = static_cast<std::uint32_t>(index % p());
    index /= p();
  }
  return e;
}

std::uint64_t Field::index_of(const FieldElement& a) const {
  check_member(a);
  std::uint64_t idx = 0;
  for (unsigned i = r(); i-- > 0;) idx = idx * p() + a.coeffs[i];
  return idx;
}

bool Field::is_zero(const FieldElement& a) const {
  check_member(a);
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](std::uint32_t c) { return c == 0; });
}

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
  check_member(a);
  check_member(b);
  auto e = zero();
  for (unsigned i = 0; i < r(); ++i)
    e.coeffs[i] = static_cast<std::uint32_t>((a.coeffs[i] + std::uint64_t(b.coeffs[i])) % p());
  return e;
}

FieldElement Field::neg(const FieldElement& a) const {
  check_member(a);
  auto e = zero();
  for (unsigned i = 0; i < r(); ++i)
    e.coeffs[i] = static_cast<std::uint32_t>((p() - a.coeffs[i]) % p());
  return e;
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
  return add(a, neg(b));
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
  check_member(a);
  check_member(b);
  Poly prod = poly_mul(a.coeffs, b.coeffs, p());
  prod = poly_mod(std::move(prod), spec_->modulus, p());
  prod.resize(r(), 0);
  return {spec_, std::move(prod)};
}

FieldElement Field::inv(const FieldElement& a) const {
  check_member(a);
  if (is_zero(a)) fail(errc::zero_inverse, "inverse of zero");
  // extended Euclid over F_p[x] on (modulus, a)
  Poly r0 = spec_->modulus, r1 = a.coeffs;
  trim(r1);
  Poly t0{}, t1{1};
  while (!r1.empty() && degree(r1) > 0) {
    std::uint64_t inv_lead = mod_inverse(r1.back(), p());
    Poly r1m = r1;
    for (auto& c : r1m) c = static_cast<std::uint32_t>(c * inv_lead % p());
    // quotient of r0 by monic r1m
    Poly rem = r0, quot(std::max(degree(r0) - degree(r1) + 1, 1), 0);
    while (degree(rem) >= degree(r1)) {
      std::uint64_t lead = rem.back();
      int shift = degree(rem) - degree(r1m);
      std::uint64_t qc = lead * inv_lead % p();
      quot[shift] = static_cast<std::uint32_t>((quot[shift] + qc) % p());
      for (int i = 0; i <= degree(r1m); ++i) {
        std::uint64_t sub = qc * r1[i] % p();
        rem[i + shift] = static_cast<std::uint32_t>((rem[i + shift] + p() - sub) % p());
      }
      trim(rem);
    }
    Poly qt1 = poly_mul(quot, t1, p());
    Poly new_t = t0;
    new_t.resize(std::max(new_t.size(), qt1.size()), 0);
    for (std::size_t i = 0; i < qt1.size(); ++i)
      new_t[i] = static_cast<std::uint32_t>((new_t[i] + p() - qt1[i]) % p());
    trim(new_t);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(new_t);
  }
  // r1 is a nonzero constant: gcd = r1[0]
  std::uint64_t scale = mod_inverse(r1.empty() ? 1 : r1[0], p());
  for (auto& c : t1) c = static_cast<std::uint32_t>(c * scale % p());
  t1 = poly_mod(std::move(t1), spec_->modulus, p());
  t1.resize(r(), 0);
  return {spec_, std::move(t1)};
}

FieldElement Field::pow(const FieldElement& a, std::uint64_t k) const {
  check_member(a);
  FieldElement result = one();
  FieldElement base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::vector<FieldElement> Field::enumerate(std::uint64_t cap) const {
  if (q() > cap)
    fail(errc::cap_exceeded, "field has " + std::to_string(q()) + " elements, cap " +
                                 std::to_string(cap));
  std::vector<FieldElement> out;
  out.reserve(q());
  for (std::uint64_t i = 0; i < q(); ++i) out.push_back(from_index(i));
  return out;
}

std::uint64_t Field::absolute_trace(const FieldElement& a) const {
  check_member(a);
  // Tr(a) = sum a^(p^i), i < r; lands in the prime field
  FieldElement acc = a, term = a;
  for (unsigned i = 1; i < r(); ++i) {
    term = pow(term, p());
    acc = add(acc, term);
  }
  for (unsigned i = 1; i < r(); ++i)
    if (acc.coeffs[i] != 0) fail(errc::invalid_config, "trace not in prime field");
  return acc.coeffs[0];
}

Embedding::Embedding(const Field& small, const Field& big) : small_(small), big_(big) {
  if (small.p() != big.p() || big.r() % small.r() != 0)
    fail(errc::no_embedding, "F_" + std::to_string(small.q()) + " does not embed in F_" +
                                 std::to_string(big.q()));
  FieldElement beta = big.zero();
  if (small.r() == 1) {
    // prime field: the (linear) modulus x + c has root -c
    beta = big.from_int(-static_cast<std::int64_t>(small.spec().modulus[0]));
  } else {
    // least root of the small modulus in the big field
    bool found = false;
    for (std::uint64_t i = 0; i < big.q(); ++i) {
      FieldElement cand = big.from_index(i);
      FieldElement acc = big.zero(), pw = big.one();
      for (std::uint32_t c : small.spec().modulus) {
        if (c != 0) acc = big.add(acc, big.mul(big.from_int(static_cast<std::int64_t>(c)), pw));
        pw = big.mul(pw, cand);
      }
      if (big.is_zero(acc)) {
        beta = cand;
        found = true;
        break;
      }
    }
    if (!found) fail(errc::no_embedding, "modulus has no root in the big field");
  }
  generator_powers_.push_back(big.one());
  for (unsigned i = 1; i < small.r(); ++i)
    generator_powers_.push_back(big.mul(generator_powers_.back(), beta));
}

FieldElement Embedding::operator()(const FieldElement& a) const {
  if (!a.spec || !(*a.spec == small_.spec()))
    fail(errc::field_mismatch, "element not in the source field");
  FieldElement out = big_.zero();
  for (unsigned i = 0; i < small_.r(); ++i) {
    if (a.coeffs[i] == 0) continue;
    out = big_.add(out, big_.mul(big_.from_int(static_cast<std::int64_t>(a.coeffs[i])),
                                 generator_powers_[i]));
  }
  return out;
}

}  // namespace efv
