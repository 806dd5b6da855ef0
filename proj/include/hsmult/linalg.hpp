#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsmult/sparse_poly.hpp"

namespace hsmult {

/// Where a matrix row came from: generator index and the dual term s whose
/// coefficient the row records.
struct RowTag {
    std::size_t generator = 0;
    Exponent term;
};

/// Dense rectangular matrix over a field or an exact integral domain.
template <class D>
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    ExactMatrix(std::initializer_list<std::initializer_list<D>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (auto& r : rows) {
            if (r.size() != cols_) throw ValidationError("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    D& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const D& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const D> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    void append_row(std::span<const D> r, std::optional<RowTag> tag = std::nullopt) {
        if (rows_ == 0 && data_.empty() && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw ValidationError("row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
        if (tag) {
            tags_.resize(rows_ - 1);
            tags_.push_back(std::move(*tag));
        }
    }

    /// Provenance tags, one per row when present.
    const std::vector<RowTag>& tags() const { return tags_; }

    ExactMatrix columns(std::span<const std::size_t> which) const {
        ExactMatrix r(rows_, which.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < which.size(); ++k) r.at(i, k) = at(i, which[k]);
        return r;
    }

    ExactMatrix select_rows(std::span<const std::size_t> which) const {
        ExactMatrix r(which.size(), cols_);
        for (std::size_t k = 0; k < which.size(); ++k)
            for (std::size_t j = 0; j < cols_; ++j) r.at(k, j) = at(which[k], j);
        return r;
    }

    std::vector<D> multiply(std::span<const D> v) const {
        if (v.size() != cols_) throw ValidationError("vector length does not match column count");
        std::vector<D> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            D acc{};
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) acc += at(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    template <class E, class F>
    ExactMatrix<E> map(F&& f) const {
        ExactMatrix<E> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = f(at(i, j));
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<D> data_;
    std::vector<RowTag> tags_;
};

/// Either Trivial (no vector) or a single canonical spanning vector.
template <class D>
struct KernelResult {
    std::optional<std::vector<D>> vector;
    bool trivial() const { return !vector.has_value(); }
    friend bool operator==(const KernelResult&, const KernelResult&) = default;
};

// --- domain traits -------------------------------------------------------

template <class D>
struct domain_traits {
    static constexpr bool is_field = true;
    static D exact_div(const D& a, const D& b) { return a / b; }
};

template <class B>
struct domain_traits<ParamPoly<B>> {
    static constexpr bool is_field = false;
    static ParamPoly<B> exact_div(const ParamPoly<B>& a, const ParamPoly<B>& b) { return hsmult::exact_div(a, b); }
};

/// Scales a nonzero vector to its canonical representative.
///   Q:      primitive integer entries, first nonzero entry positive
///   F_p:    first nonzero entry 1
///   K[t]:   entries divided by their gcd, joint content 1, first nonzero entry
///           with positive (Q) or unit (F_p) leading coefficient
///   K(t):   denominators cleared, then as K[t]
inline void canonicalize(std::vector<Rational>& v) {
    Rational u = normalizing_unit(std::span<const Rational>(v)).inv();
    for (auto& x : v) x *= u;
}

inline void canonicalize(std::vector<Zp>& v) {
    Zp u = normalizing_unit(std::span<const Zp>(v)).inv();
    for (auto& x : v) x *= u;
}

template <class B>
void canonicalize(std::vector<ParamPoly<B>>& v) {
    ParamPoly<B> g;
    for (auto& x : v) {
        g = gcd(g, x);
        if (g.is_one()) break;
    }
    if (g.is_zero()) return;
    std::vector<B> cs;
    for (auto& x : v) {
        if (!g.is_one()) x = exact_div(x, g);
        for (auto& [m, c] : x.terms()) cs.push_back(c);
    }
    B u = normalizing_unit(std::span<const B>(cs)).inv();
    if (!u.is_one())
        for (auto& x : v) x = x.scaled(u);
}

/// Multiplies a K(t) vector by the lcm of its denominators.
template <class B>
std::vector<ParamPoly<B>> clear_denominators(std::span<const RatFunc<B>> v) {
    ParamPoly<B> l(1);
    for (auto& x : v) {
        if (x.is_zero() || x.den().is_one()) continue;
        ParamPoly<B> g = gcd(l, x.den());
        l = exact_div(l, g) * x.den();
    }
    std::vector<ParamPoly<B>> out;
    out.reserve(v.size());
    for (auto& x : v) out.push_back(x.is_zero() ? ParamPoly<B>() : x.num() * exact_div(l, x.den()));
    return out;
}

template <class B>
void canonicalize(std::vector<RatFunc<B>>& v) {
    auto polys = clear_denominators<B>(v);
    canonicalize(polys);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = RatFunc<B>(polys[i]);
}

// --- elimination ---------------------------------------------------------

template <class D>
struct Elimination {
    ExactMatrix<D> reduced;               // reduced row echelon form (scaled for domains)
    std::vector<std::size_t> pivot_cols;  // pivot column of row i
    std::vector<std::size_t> pivot_rows;  // original index of the row that became row i
    D pivot_value{};                      // common pivot value (domains); 1 for fields
    std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination. Pivot: first row (top-down) with a nonzero
/// entry in the current column, columns left to right.
///
/// Over a field rows are normalized to pivot 1. Over an integral domain the
/// fraction-free variant is used: every update divides exactly by the
/// previous pivot, and at the end all pivot entries equal the last pivot
/// (a maximal nonzero minor).
template <class D>
Elimination<D> gauss_jordan(ExactMatrix<D> a) {
    Elimination<D> out;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> order(rows);
    for (std::size_t i = 0; i < rows; ++i) order[i] = i;
    D prev(1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && a.at(p, col).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
            std::swap(order[p], order[r]);
        }
        if constexpr (domain_traits<D>::is_field) {
            D inv = D(1) / a.at(r, col);
            for (std::size_t j = col; j < cols; ++j)
                if (!a.at(r, j).is_zero()) a.at(r, j) *= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || a.at(i, col).is_zero()) continue;
                D f = a.at(i, col);
                for (std::size_t j = col; j < cols; ++j)
                    if (!a.at(r, j).is_zero()) a.at(i, j) -= f * a.at(r, j);
            }
        } else {
            const D piv = a.at(r, col);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r) continue;
                const D f = a.at(i, col);
                for (std::size_t j = 0; j < cols; ++j) {
                    if (j == col) continue;
                    D v = piv * a.at(i, j);
                    if (!f.is_zero() && !a.at(r, j).is_zero()) v -= f * a.at(r, j);
                    a.at(i, j) = v.is_zero() ? D() : domain_traits<D>::exact_div(v, prev);
                }
                a.at(i, col) = D();
            }
            prev = piv;
        }
        out.pivot_cols.push_back(col);
        ++r;
    }
    out.pivot_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(r));
    out.pivot_value = prev;
    out.reduced = std::move(a);
    return out;
}

template <class D>
std::size_t rank(const ExactMatrix<D>& m) {
    return gauss_jordan(m).rank();
}

/// Kernel of m, assuming (and checking) nullity <= 1.
template <class D>
KernelResult<D> kernel(const ExactMatrix<D>& m) {
    if (m.cols() == 0) throw ValidationError("kernel of a matrix without columns");
    auto e = gauss_jordan(m);
    const std::size_t nullity = m.cols() - e.rank();
    if (nullity == 0) return {};
    if (nullity > 1) throw UnexpectedNullity(nullity);
    std::size_t free_col = 0;
    for (std::size_t k = 0; k < e.pivot_cols.size() && e.pivot_cols[k] == free_col; ++k) ++free_col;
    std::vector<D> v(m.cols());
    if constexpr (domain_traits<D>::is_field) v[free_col] = D(1);
    else v[free_col] = e.pivot_value;
    for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivot_cols[i]] = -e.reduced.at(i, free_col);
    canonicalize(v);
    return {std::move(v)};
}

/// Entry-wise evaluation of a K[t] matrix at a parameter point.
template <class B>
ExactMatrix<B> specialize(const ExactMatrix<ParamPoly<B>>& m, std::span<const B> point) {
    return m.template map<B>([&](const ParamPoly<B>& p) { return p.evaluate(point); });
}

/// True iff the specialized matrix has full column rank.
template <class B>
bool nonsingular_at(const ExactMatrix<ParamPoly<B>>& m, std::span<const B> point) {
    return rank(specialize(m, point)) == m.cols();
}

template <class D>
bool is_zero_vector(std::span<const D> v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace hsmult
