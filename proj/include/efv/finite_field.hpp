#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "efv/errors.hpp"

namespace efv {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Description of F_{p^r} as F_p[x]/(m(x)) with m monic irreducible of degree r.
struct FieldSpec {
  std::uint64_t p = 0;
  unsigned r = 0;
  std::vector<std::uint32_t> modulus;  // length r+1, modulus[r] == 1
  std::uint64_t q = 0;                 // p^r

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Residue class of a polynomial of degree < r; coefficients mod p, constant term first.
struct FieldElement {
  std::shared_ptr<const FieldSpec> spec;
  std::vector<std::uint32_t> coeffs;  // length r

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.coeffs == b.coeffs && *a.spec == *b.spec;
  }
};

class Field {
 public:
  /// AUTO modulus: lexicographically least monic irreducible of degree r
  /// (ascending over (c_{r-1},...,c_0) read as a base-p integer).
  static Field make(std::uint64_t p, unsigned r);
  static Field make(std::uint64_t p, unsigned r, std::vector<std::uint32_t> modulus);

  const FieldSpec& spec() const { return *spec_; }
  std::shared_ptr<const FieldSpec> spec_ptr() const { return spec_; }
  std::uint64_t p() const { return spec_->p; }
  unsigned r() const { return spec_->r; }
  std::uint64_t q() const { return spec_->q; }

  FieldElement zero() const;
  FieldElement one() const;
  /// Coefficient list (constant term first, any length <= r), reduced mod p.
  FieldElement element(const std::vector<std::int64_t>& coeffs) const;
  FieldElement from_int(std::int64_t n) const;  // constant polynomial n mod p
  FieldElement from_index(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElement& a) const;

  bool is_zero(const FieldElement& a) const;
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;  // throws zero_inverse
  FieldElement pow(const FieldElement& a, std::uint64_t k) const;

  /// All q elements; index i yields the base-p digit expansion of i, so the
  /// list starts 0, 1, 2, ...
  std::vector<FieldElement> enumerate(std::uint64_t cap = kDefaultEnumerationCap) const;

  /// Trace to the prime field, as an element of {0,...,p-1}.
  std::uint64_t absolute_trace(const FieldElement& a) const;

 private:
  explicit Field(std::shared_ptr<const FieldSpec> spec) : spec_(std::move(spec)) {}
  void check_member(const FieldElement& a) const;

  std::shared_ptr<const FieldSpec> spec_;
};

bool is_prime_u64(std::uint64_t n);

/// Ring homomorphism F_{p^{r_s}} -> F_{p^{r_b}} for r_s | r_b, realized by
/// mapping the small generator to the least root of the small modulus.
class Embedding {
 public:
  Embedding(const Field& small, const Field& big);
  FieldElement operator()(const FieldElement& a) const;

 private:
  Field small_, big_;
  std::vector<FieldElement> generator_powers_;  // beta^0..beta^{r_s-1}
};

}  // namespace efv
