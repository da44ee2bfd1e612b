#include "ffsalem/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace ffsalem {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::DegreeZero: return "DegreeZero";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::ContextMismatch: return "ContextMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DimensionZero: return "DimensionZero";
        case ErrorCode::BadDimensionSplit: return "BadDimensionSplit";
        case ErrorCode::TooManySubspaces: return "TooManySubspaces";
        case ErrorCode::BadDimensions: return "BadDimensions";
        case ErrorCode::ZeroFrequency: return "ZeroFrequency";
        case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
        case ErrorCode::BadDimension: return "BadDimension";
        case ErrorCode::TooMany: return "TooMany";
        case ErrorCode::EmptyFamily: return "EmptyFamily";
        case ErrorCode::DuplicateSubspace: return "DuplicateSubspace";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotKakeya: return "NotKakeya";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

// Polynomials over F_p, little-endian coefficient vectors.
using Poly = std::vector<std::uint32_t>;

int degree(const Poly& a) {
    for (int i = int(a.size()) - 1; i >= 0; --i)
        if (a[std::size_t(i)] != 0) return i;
    return -1;
}

// Remainder of a modulo monic b.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    int db = degree(b);
    for (int i = degree(a); i >= db; --i) {
        std::uint64_t c = a[std::size_t(i)];
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) {
            std::uint64_t sub = c * b[std::size_t(j)] % p;
            std::uint64_t cur = a[std::size_t(i - db + j)];
            a[std::size_t(i - db + j)] = std::uint32_t((cur + p - sub) % p);
        }
    }
    a.resize(std::size_t(std::max(db, 0)));
    return a;
}

bool is_zero(const Poly& a) { return degree(a) < 0; }

// Trial division against every monic polynomial of degree <= deg(f)/2.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
    int n = degree(f);
    for (int e = 1; e <= n / 2; ++e) {
        Poly g(std::size_t(e) + 1, 0);
        g[std::size_t(e)] = 1;
        // odometer over the e lower coefficients
        while (true) {
            if (is_zero(poly_rem(f, g, p))) return false;
            int j = 0;
            while (j < e) {
                if (++g[std::size_t(j)] < p) break;
                g[std::size_t(j)] = 0;
                ++j;
            }
            if (j == e) break;
        }
    }
    return true;
}

} // namespace

elem_t FieldCtx::encode_digits(const std::uint32_t* dig) const {
    std::uint64_t v = 0;
    for (std::uint32_t i = 0; i < n_; ++i) v += std::uint64_t(dig[i]) * ppow_[i];
    return elem_t(v);
}

elem_t FieldCtx::add_slow(elem_t a, elem_t b) const {
    const std::uint32_t* da = &digits_[std::size_t(a) * n_];
    const std::uint32_t* db = &digits_[std::size_t(b) * n_];
    std::uint64_t v = 0;
    for (std::uint32_t i = 0; i < n_; ++i) v += std::uint64_t((da[i] + db[i]) % p_) * ppow_[i];
    return elem_t(v);
}

elem_t FieldCtx::mul_slow(elem_t a, elem_t b) const {
    const std::uint32_t* da = &digits_[std::size_t(a) * n_];
    const std::uint32_t* db = &digits_[std::size_t(b) * n_];
    // convolve
    std::uint64_t conv[64] = {0};
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < n_; ++j)
            conv[i + j] += std::uint64_t(da[i]) * db[j];
    }
    // reduce modulo the monic modulus
    for (int i = int(2 * n_ - 2); i >= int(n_); --i) {
        std::uint64_t c = conv[i] % p_;
        if (c == 0) continue;
        for (std::uint32_t j = 0; j < n_; ++j) {
            std::uint64_t sub = c * modulus_[j] % p_;
            conv[std::uint32_t(i) - n_ + j] += p_ - sub; // keep nonnegative
        }
        conv[i] = 0;
    }
    std::uint64_t v = 0;
    for (std::uint32_t i = 0; i < n_; ++i) v += (conv[i] % p_) * ppow_[i];
    return elem_t(v);
}

elem_t FieldCtx::pow(elem_t a, std::uint64_t e) const {
    elem_t r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

elem_t FieldCtx::inv(elem_t a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + spec());
    if (!inv_tab_.empty()) return inv_tab_[a];
    return pow(a, q_ - 2);
}

std::string FieldCtx::spec() const {
    return std::to_string(p_) + "^" + std::to_string(n_);
}

void FieldCtx::build_tables(std::uint64_t table_threshold) {
    const std::size_t q = std::size_t(q_);
    ppow_.resize(n_ + 1);
    ppow_[0] = 1;
    for (std::uint32_t i = 0; i < n_; ++i) ppow_[i + 1] = ppow_[i] * p_;

    digits_.resize(q * n_);
    for (std::size_t a = 0; a < q; ++a) {
        std::uint64_t v = a;
        for (std::uint32_t i = 0; i < n_; ++i) {
            digits_[a * n_ + i] = std::uint32_t(v % p_);
            v /= p_;
        }
    }

    neg_tab_.resize(q);
    for (std::size_t a = 0; a < q; ++a) {
        std::uint64_t v = 0;
        for (std::uint32_t i = 0; i < n_; ++i) {
            std::uint32_t d = digits_[a * n_ + i];
            v += std::uint64_t(d == 0 ? 0 : p_ - d) * ppow_[i];
        }
        neg_tab_[a] = elem_t(v);
    }

    const bool table_path = q_ <= table_threshold;
    if (table_path) {
        add_tab_.resize(q * q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = a; b < q; ++b) {
                elem_t s = add_slow(elem_t(a), elem_t(b));
                add_tab_[a * q + b] = s;
                add_tab_[b * q + a] = s;
            }

        // Row for a is filled by walking b through its base-q odometer while
        // updating a*b incrementally: bumping digit j of b adds a*t^j, and a
        // wrapped digit contributes p * (a*t^j) = 0, so no correction is needed.
        mul_tab_.resize(q * q);
        std::vector<elem_t> atj(n_);
        std::vector<std::uint32_t> bdig(n_);
        for (std::size_t a = 0; a < q; ++a) {
            atj[0] = elem_t(a);
            for (std::uint32_t j = 1; j < n_; ++j) {
                elem_t prev = atj[j - 1];
                // multiply by t: shift digits, reduce by modulus if needed
                std::uint32_t top = digits_[std::size_t(prev) * n_ + (n_ - 1)];
                std::uint64_t shifted = (std::uint64_t(prev) - std::uint64_t(top) * ppow_[n_ - 1]) * p_;
                elem_t s = elem_t(shifted);
                if (top != 0) {
                    std::uint64_t v = 0;
                    for (std::uint32_t i = 0; i < n_; ++i) {
                        std::uint32_t sd = digits_[std::size_t(s) * n_ + i];
                        std::uint64_t sub = std::uint64_t(top) * modulus_[i] % p_;
                        v += ((sd + p_ - std::uint32_t(sub)) % p_) * ppow_[i];
                    }
                    s = elem_t(v);
                }
                atj[j] = s;
            }
            std::fill(bdig.begin(), bdig.end(), 0);
            elem_t ab = 0;
            for (std::size_t b = 0; b < q; ++b) {
                mul_tab_[a * q + b] = ab;
                if (b + 1 == q) break;
                std::uint32_t j = 0;
                while (true) {
                    ab = add_tab_[std::size_t(ab) * q + atj[j]];
                    if (++bdig[j] < p_) break;
                    bdig[j] = 0;
                    ++j;
                }
            }
        }

        inv_tab_.resize(q);
        inv_tab_[0] = 0;
        for (std::size_t a = 1; a < q; ++a) inv_tab_[a] = pow(elem_t(a), q_ - 2);
    }

    // Trace via basis traces: Tr(t^j) = sum_i (t^(p^i))^j.
    trace_tab_.resize(q);
    if (n_ == 1) {
        for (std::size_t a = 0; a < q; ++a) trace_tab_[a] = std::uint32_t(a);
    } else {
        std::vector<elem_t> frob(n_); // t^(p^i)
        frob[0] = elem_t(p_);         // encoding of t
        for (std::uint32_t i = 1; i < n_; ++i) frob[i] = pow(frob[i - 1], p_);
        std::vector<std::uint32_t> btr(n_, 0);
        std::vector<elem_t> acc(n_, 0); // acc[j] = sum_i frob[i]^j
        for (std::uint32_t i = 0; i < n_; ++i) {
            elem_t cur = 1;
            for (std::uint32_t j = 0; j < n_; ++j) {
                acc[j] = add(acc[j], cur);
                if (j + 1 < n_) cur = mul(cur, frob[i]);
            }
        }
        for (std::uint32_t j = 0; j < n_; ++j) {
            if (acc[j] >= p_)
                throw Error(ErrorCode::InvalidArgument, "trace of basis element left F_p");
            btr[j] = acc[j];
        }
        for (std::size_t a = 0; a < q; ++a) {
            std::uint64_t t = 0;
            for (std::uint32_t j = 0; j < n_; ++j)
                t += std::uint64_t(digits_[a * n_ + j]) * btr[j];
            trace_tab_[a] = std::uint32_t(t % p_);
        }
    }

    chi_.resize(q);
    chi_neg_.resize(q);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t a = 0; a < q; ++a)
        chi_[a] = std::polar(1.0, two_pi * double(trace_tab_[a]) / double(p_));
    for (std::size_t a = 0; a < q; ++a) chi_neg_[a] = chi_[neg_tab_[a]];
}

std::shared_ptr<const FieldCtx> FieldCtx::make(std::uint32_t p, std::uint32_t n,
                                               FieldOptions opts) {
    if (n == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be positive");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        q *= p;
        if (q > opts.max_q)
            throw Error(ErrorCode::FieldTooLarge,
                        std::to_string(p) + "^" + std::to_string(n) + " exceeds cap " +
                            std::to_string(opts.max_q));
    }

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->n_ = n;
    ctx->q_ = q;

    if (n == 1) {
        ctx->modulus_ = {0, 1}; // the degree-1 convention: modulus x
    } else {
        // Scan lower-coefficient encodings upward; first irreducible wins, which
        // is the lexicographically smallest monic modulus.
        Poly f(n + 1, 0);
        f[n] = 1;
        bool found = false;
        for (std::uint64_t m = 0; m < q; ++m) {
            std::uint64_t v = m;
            for (std::uint32_t i = 0; i < n; ++i) {
                f[i] = std::uint32_t(v % p);
                v /= p;
            }
            if (poly_irreducible(f, p)) {
                ctx->modulus_.assign(f.begin(), f.end());
                found = true;
                break;
            }
        }
        if (!found) throw Error(ErrorCode::InvalidArgument, "no irreducible modulus found");
    }

    ctx->build_tables(opts.table_threshold);
    return ctx;
}

FieldRef make_field(std::uint32_t p, std::uint32_t n, FieldOptions opts) {
    return FieldCtx::make(p, n, opts);
}

std::pair<std::uint32_t, std::uint32_t> parse_field_spec(const std::string& s) {
    auto parse_u32 = [](const std::string& t) -> std::uint32_t {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::ParseError, "bad field spec component '" + t + "'");
        unsigned long v = std::stoul(t);
        if (v > 0xffffffffUL) throw Error(ErrorCode::ParseError, "field spec out of range");
        return std::uint32_t(v);
    };
    auto caret = s.find('^');
    if (caret != std::string::npos) {
        return {parse_u32(s.substr(0, caret)), parse_u32(s.substr(caret + 1))};
    }
    std::uint64_t q = parse_u32(s);
    if (q < 2) throw Error(ErrorCode::ParseError, "field size must be at least 2");
    std::uint32_t p = 0;
    for (std::uint64_t f = 2; f * f <= q; ++f)
        if (q % f == 0) { p = std::uint32_t(f); break; }
    if (p == 0) return {std::uint32_t(q), 1}; // q itself prime
    std::uint32_t n = 0;
    std::uint64_t v = q;
    while (v > 1) {
        if (v % p != 0)
            throw Error(ErrorCode::ParseError, std::to_string(q) + " is not a prime power");
        v /= p;
        ++n;
    }
    return {p, n};
}

namespace {
void check_ctx(const FieldElement& a, const FieldElement& b) {
    if (a.ctx == nullptr || a.ctx != b.ctx)
        throw Error(ErrorCode::ContextMismatch, "elements from different fields");
}
} // namespace

FieldElement make_element(const FieldRef& ctx, elem_t value) {
    if (value >= ctx->q()) throw Error(ErrorCode::InvalidArgument, "encoding out of range");
    return {value, ctx.get()};
}

FieldElement add(FieldElement a, FieldElement b) {
    check_ctx(a, b);
    return {a.ctx->add(a.value, b.value), a.ctx};
}
FieldElement neg(FieldElement a) { return {a.ctx->neg(a.value), a.ctx}; }
FieldElement mul(FieldElement a, FieldElement b) {
    check_ctx(a, b);
    return {a.ctx->mul(a.value, b.value), a.ctx};
}
FieldElement inv(FieldElement a) { return {a.ctx->inv(a.value), a.ctx}; }
FieldElement pow(FieldElement a, std::uint64_t e) { return {a.ctx->pow(a.value, e), a.ctx}; }
std::uint32_t trace(FieldElement a) { return a.ctx->trace(a.value); }
std::complex<double> char_value(FieldElement a) { return a.ctx->char_value(a.value); }

elem_t dot(const FieldCtx& ctx, std::span<const elem_t> u, std::span<const elem_t> v) {
    if (u.size() != v.size() || u.empty())
        throw Error(ErrorCode::DimensionMismatch, "dot product dimension mismatch");
    elem_t acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc = ctx.add(acc, ctx.mul(u[i], v[i]));
    return acc;
}

std::uint64_t encode_point(const FieldCtx& ctx, std::span<const elem_t> pt) {
    std::uint64_t idx = 0;
    for (std::size_t i = pt.size(); i-- > 0;) idx = idx * ctx.q() + pt[i];
    return idx;
}

Point decode_point(const FieldCtx& ctx, std::uint32_t d, std::uint64_t index) {
    Point pt(d);
    for (std::uint32_t i = 0; i < d; ++i) {
        pt[i] = elem_t(index % ctx.q());
        index /= ctx.q();
    }
    return pt;
}

std::uint64_t grid_size(const FieldCtx& ctx, std::uint32_t d) {
    std::uint64_t cells = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (cells > max_grid_cells() / ctx.q())
            throw Error(ErrorCode::TooLarge, "q^d exceeds grid cap");
        cells *= ctx.q();
    }
    return cells;
}

std::uint64_t max_grid_cells() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("FFSALEM_MAX_GRID")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v >= 2) return std::uint64_t(v);
        }
        return std::uint64_t(1) << 24;
    }();
    return cap;
}

} // namespace ffsalem
