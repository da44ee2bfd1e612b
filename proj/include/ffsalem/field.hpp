#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffsalem/errors.hpp"

namespace ffsalem {

// Element encoding: an integer in [0, q) whose base-p digits, little-endian,
// are the coefficients of the representative polynomial. For n = 1 this is
// the residue itself.
using elem_t = std::uint32_t;

// A point of F_q^d as a coordinate vector of element encodings.
using Point = std::vector<elem_t>;

struct FieldOptions {
    std::uint64_t max_q = std::uint64_t(1) << 16;
    // Full q x q add/mul tables are built when q <= table_threshold;
    // above it arithmetic falls back to polynomial reduction per call.
    std::uint64_t table_threshold = 4096;
};

// The field F_q, q = p^n, with its arithmetic tables, the absolute trace,
// and the fixed additive character chi(a) = exp(2*pi*i*Tr(a)/p).
// Immutable after construction; safe to share between threads.
class FieldCtx {
  public:
    static std::shared_ptr<const FieldCtx> make(std::uint32_t p, std::uint32_t n,
                                                FieldOptions opts = {});

    std::uint32_t p() const { return p_; }
    std::uint32_t n() const { return n_; }
    std::uint64_t q() const { return q_; }

    // Monic irreducible modulus, little-endian coefficients, length n+1.
    const std::vector<elem_t>& modulus() const { return modulus_; }

    std::string spec() const; // "p^n"

    elem_t add(elem_t a, elem_t b) const {
        return add_tab_.empty() ? add_slow(a, b) : add_tab_[std::size_t(a) * q_ + b];
    }
    elem_t neg(elem_t a) const { return neg_tab_[a]; }
    elem_t sub(elem_t a, elem_t b) const { return add(a, neg_tab_[b]); }
    elem_t mul(elem_t a, elem_t b) const {
        return mul_tab_.empty() ? mul_slow(a, b) : mul_tab_[std::size_t(a) * q_ + b];
    }
    elem_t inv(elem_t a) const;
    elem_t pow(elem_t a, std::uint64_t e) const;

    // Absolute trace Tr(a) = a + a^p + ... + a^(p^(n-1)), as an integer in [0, p).
    std::uint32_t trace(elem_t a) const { return trace_tab_[a]; }

    // chi(a); unit modulus, chi(a+b) = chi(a) chi(b).
    std::complex<double> char_value(elem_t a) const { return chi_[a]; }

    // Embeds an integer into the prime subfield (v mod p).
    elem_t from_int(std::uint64_t v) const { return elem_t(v % p_); }

    // Raw table access for transform kernels.
    const std::complex<double>* chi_data() const { return chi_.data(); }
    const std::complex<double>* chi_neg_data() const { return chi_neg_.data(); }
    const elem_t* add_table() const { return add_tab_.empty() ? nullptr : add_tab_.data(); }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

  private:
    FieldCtx() = default;

    elem_t add_slow(elem_t a, elem_t b) const;
    elem_t mul_slow(elem_t a, elem_t b) const;
    elem_t encode_digits(const std::uint32_t* dig) const;
    void build_tables(std::uint64_t table_threshold);

    std::uint32_t p_ = 0;
    std::uint32_t n_ = 0;
    std::uint64_t q_ = 0;
    std::vector<elem_t> modulus_;

    std::vector<std::uint32_t> digits_;   // q * n, base-p digits per element
    std::vector<std::uint64_t> ppow_;     // p^0 .. p^n
    std::vector<elem_t> neg_tab_;         // q
    std::vector<elem_t> add_tab_;         // q*q or empty
    std::vector<elem_t> mul_tab_;         // q*q or empty
    std::vector<elem_t> inv_tab_;         // q or empty (on-demand above threshold)
    std::vector<std::uint32_t> trace_tab_;
    std::vector<std::complex<double>> chi_;
    std::vector<std::complex<double>> chi_neg_; // chi(-a)
};

using FieldRef = std::shared_ptr<const FieldCtx>;

// make_field(p, n): field with the lexicographically smallest monic
// irreducible modulus of degree n over F_p.
FieldRef make_field(std::uint32_t p, std::uint32_t n, FieldOptions opts = {});

// Accepts "p^n" ("3^2") or a bare prime power ("9").
std::pair<std::uint32_t, std::uint32_t> parse_field_spec(const std::string& s);

// Element wrapper carrying its context, for code that wants checked arithmetic.
struct FieldElement {
    elem_t value = 0;
    const FieldCtx* ctx = nullptr;
};

FieldElement make_element(const FieldRef& ctx, elem_t value);
FieldElement add(FieldElement a, FieldElement b);
FieldElement neg(FieldElement a);
FieldElement mul(FieldElement a, FieldElement b);
FieldElement inv(FieldElement a);
FieldElement pow(FieldElement a, std::uint64_t e);
std::uint32_t trace(FieldElement a);
std::complex<double> char_value(FieldElement a);

// Standard dot product on F_q^d.
elem_t dot(const FieldCtx& ctx, std::span<const elem_t> u, std::span<const elem_t> v);

// Base-q point encoding, coordinate 0 least significant.
std::uint64_t encode_point(const FieldCtx& ctx, std::span<const elem_t> pt);
Point decode_point(const FieldCtx& ctx, std::uint32_t d, std::uint64_t index);

// q^d with overflow detection.
std::uint64_t grid_size(const FieldCtx& ctx, std::uint32_t d);

// Cap on q^d for dense grids; FFSALEM_MAX_GRID overrides the default 2^24.
std::uint64_t max_grid_cells();

} // namespace ffsalem
