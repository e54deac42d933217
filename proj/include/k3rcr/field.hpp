#pragma once

// Arithmetic modulo a word-sized prime and dense linear algebra over F_p.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3rcr {

using Residue = std::uint32_t;

inline constexpr Residue kDefaultPrime = 10007;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The object exists only over an extension of F_p; callers may resample.
class NotRational : public Error {
public:
    using Error::Error;
};

/// The prime field F_p.  All operations expect reduced inputs in [0, p).
class PrimeField {
public:
    constexpr PrimeField() : p_(kDefaultPrime) {}
    explicit constexpr PrimeField(Residue p) : p_(p) {}

    constexpr Residue prime() const { return p_; }

    constexpr Residue add(Residue a, Residue b) const {
        Residue s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    constexpr Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
    constexpr Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
    constexpr Residue mul(Residue a, Residue b) const {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    constexpr Residue pow(Residue a, std::uint64_t e) const {
        Residue r = 1 % p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Residue inv(Residue a) const {
        if (a == 0) throw Error("division by zero in F_p");
        return pow(a, p_ - 2);
    }
    constexpr Residue from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    /// Symmetric lift to (-p/2, p/2].
    constexpr std::int64_t lift(Residue a) const {
        return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
    }

    bool operator==(const PrimeField&) const = default;

private:
    Residue p_;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Vector = std::vector<Residue>;

/// Dense row-major matrix over F_p.
class PrimeFieldMatrix {
public:
    PrimeFieldMatrix() = default;
    PrimeFieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    PrimeFieldMatrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
        : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw Error("matrix entry count does not match shape");
        for (Residue& r : data_)
            if (r >= field_.prime()) r %= field_.prime();
    }
    static PrimeFieldMatrix from_ints(PrimeField field, std::size_t rows, std::size_t cols,
                                      const std::vector<std::int64_t>& entries) {
        std::vector<Residue> v;
        v.reserve(entries.size());
        for (auto e : entries) v.push_back(field.from_int(e));
        return PrimeFieldMatrix(field, rows, cols, std::move(v));
    }
    static PrimeFieldMatrix identity(PrimeField field, std::size_t n) {
        PrimeFieldMatrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Residue>& entries() const { return data_; }

    Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    PrimeFieldMatrix transpose() const {
        PrimeFieldMatrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Vector apply(std::span<const Residue> v) const {
        if (v.size() != cols_) throw Error("dimension mismatch in matrix-vector product");
        Vector out(rows_, 0);
        const std::uint64_t p = field_.prime();
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t acc = 0;
            const Residue* row_ptr = data_.data() + r * cols_;
            for (std::size_t c = 0; c < cols_; ++c) {
                acc += static_cast<std::uint64_t>(row_ptr[c]) * v[c];
                if ((c & 15) == 15) acc %= p;
            }
            out[r] = static_cast<Residue>(acc % p);
        }
        return out;
    }

    PrimeFieldMatrix operator*(const PrimeFieldMatrix& o) const {
        if (cols_ != o.rows_) throw Error("dimension mismatch in matrix product");
        PrimeFieldMatrix out(field_, rows_, o.cols_);
        const std::uint64_t p = field_.prime();
        std::vector<std::uint64_t> acc(o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < cols_; ++k) {
                const std::uint64_t a = (*this)(r, k);
                if (!a) continue;
                const Residue* orow = o.data_.data() + k * o.cols_;
                for (std::size_t c = 0; c < o.cols_; ++c) {
                    acc[c] += a * orow[c];
                    if (acc[c] >= (1ULL << 62)) acc[c] %= p;
                }
            }
            for (std::size_t c = 0; c < o.cols_; ++c) out(r, c) = static_cast<Residue>(acc[c] % p);
        }
        return out;
    }

    bool is_zero() const {
        for (Residue r : data_)
            if (r) return false;
        return true;
    }

    bool operator==(const PrimeFieldMatrix&) const = default;

private:
    PrimeField field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

/// Reduced row echelon form computed in place.  Pivots are chosen as the first
/// nonzero entry scanning columns left to right, so the result is deterministic.
struct EchelonForm {
    PrimeFieldMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

inline EchelonForm row_reduce(PrimeFieldMatrix m) {
    const PrimeField& F = m.field();
    const std::uint64_t p = F.prime();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots, support;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t k = 0; k < cols; ++k) std::swap(m(piv, k), m(r, k));
        const Residue inv = F.inv(m(r, c));
        auto prow = m.row(r);
        for (std::size_t k = c; k < cols; ++k) prow[k] = F.mul(prow[k], inv);
        support.clear();
        for (std::size_t k = c; k < cols; ++k)
            if (prow[k]) support.push_back(k);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Residue f = m(i, c);
            if (!f) continue;
            const std::uint64_t nf = p - f;
            auto irow = m.row(i);
            for (std::size_t k : support) irow[k] = static_cast<Residue>((irow[k] + nf * prow[k]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

/// Determinant of a square matrix by elimination.
inline Residue mat_det(PrimeFieldMatrix m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    const PrimeField& F = m.field();
    const std::size_t n = m.rows();
    Residue det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
            det = F.neg(det);
        }
        det = F.mul(det, m(c, c));
        const Residue inv = F.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            const Residue f = F.mul(m(i, c), inv);
            if (!f) continue;
            for (std::size_t k = c; k < n; ++k) m(i, k) = F.sub(m(i, k), F.mul(f, m(c, k)));
        }
    }
    return det;
}

inline std::size_t mat_rank(const PrimeFieldMatrix& m) {
    // Reduce the smaller orientation.
    if (m.rows() > m.cols()) return row_reduce(m.transpose()).rank();
    return row_reduce(m).rank();
}

/// Basis of the right kernel { v : M v = 0 }, one vector per free column, with
/// the free coordinate set to 1.
inline std::vector<Vector> kernel_from_echelon(const EchelonForm& ef) {
    const auto& R = ef.reduced;
    const PrimeField& F = R.field();
    std::vector<bool> is_pivot(R.cols(), false);
    for (auto c : ef.pivot_cols) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < R.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(R.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i) v[ef.pivot_cols[i]] = F.neg(R(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<Vector> mat_kernel(const PrimeFieldMatrix& m) { return kernel_from_echelon(row_reduce(m)); }

/// Some x with M x = b, or nullopt when b is outside the column span.
inline std::optional<Vector> mat_solve(const PrimeFieldMatrix& m, std::span<const Residue> b) {
    if (b.size() != m.rows()) throw Error("right-hand side length does not match row count");
    PrimeFieldMatrix aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r] % m.field().prime();
    }
    auto ef = row_reduce(std::move(aug));
    Vector x(m.cols(), 0);
    for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i) {
        if (ef.pivot_cols[i] == m.cols()) return std::nullopt;
        x[ef.pivot_cols[i]] = ef.reduced(i, m.cols());
    }
    return x;
}

/// Builds a matrix whose columns are the given vectors.
inline PrimeFieldMatrix columns_to_matrix(PrimeField F, std::size_t rows, const std::vector<Vector>& cols) {
    PrimeFieldMatrix m(F, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw Error("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

inline PrimeFieldMatrix rows_to_matrix(PrimeField F, std::size_t cols, const std::vector<Vector>& rows) {
    PrimeFieldMatrix m(F, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

/// Incrementally maintained echelon basis of a subspace of F_p^n.  Used to
/// test membership and to pick complements deterministically.
class SubspaceBasis {
public:
    SubspaceBasis(PrimeField F, std::size_t dim) : F_(F), dim_(dim) {}

    std::size_t dimension() const { return rows_.size(); }
    std::size_t ambient() const { return dim_; }

    /// Reduces v against the basis; returns the residual.
    Vector reduce(Vector v) const {
        const std::uint64_t p = F_.prime();
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Residue f = v[pivots_[i]];
            if (!f) continue;
            const std::uint64_t nf = p - f;
            const Vector& row = rows_[i];
            for (std::size_t k = pivots_[i]; k < dim_; ++k)
                if (row[k]) v[k] = static_cast<Residue>((v[k] + nf * row[k]) % p);
        }
        return v;
    }
    bool contains(const Vector& v) const {
        Vector r = reduce(v);
        for (Residue x : r)
            if (x) return false;
        return true;
    }
    /// Adds v; returns true iff the dimension grew.
    bool insert(Vector v) {
        v = reduce(std::move(v));
        std::size_t piv = 0;
        while (piv < dim_ && v[piv] == 0) ++piv;
        if (piv == dim_) return false;
        const Residue inv = F_.inv(v[piv]);
        for (auto& x : v) x = F_.mul(x, inv);
        // keep rows fully reduced against the new pivot
        const std::uint64_t p = F_.prime();
        for (auto& row : rows_) {
            const Residue f = row[piv];
            if (!f) continue;
            const std::uint64_t nf = p - f;
            for (std::size_t k = piv; k < dim_; ++k)
                if (v[k]) row[k] = static_cast<Residue>((row[k] + nf * v[k]) % p);
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }
    const std::vector<Vector>& rows() const { return rows_; }

private:
    PrimeField F_;
    std::size_t dim_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Deterministic random source for F_p; all randomness in the library flows
/// through explicitly seeded instances of this type.
class FieldRng {
public:
    FieldRng(PrimeField F, std::uint64_t seed) : F_(F), gen_(seed) {}
    Residue uniform() { return static_cast<Residue>(gen_() % F_.prime()); }
    Residue nonzero() {
        Residue r;
        do r = uniform();
        while (r == 0);
        return r;
    }
    Vector vector(std::size_t n) {
        Vector v(n);
        for (auto& x : v) x = uniform();
        return v;
    }
    std::uint64_t next() { return gen_(); }
    const PrimeField& field() const { return F_; }

private:
    PrimeField F_;
    std::mt19937_64 gen_;
};

inline Vector linear_combination(PrimeField F, const std::vector<Vector>& basis, std::span<const Residue> coeffs) {
    if (basis.empty()) return {};
    Vector out(basis.front().size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!coeffs[i]) continue;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = F.add(out[k], F.mul(coeffs[i], basis[i][k]));
    }
    return out;
}

inline bool is_zero_vector(std::span<const Residue> v) {
    for (auto x : v)
        if (x) return false;
    return true;
}

/// Dimension of the span of a list of vectors of common length.
inline std::size_t span_dimension(PrimeField F, std::size_t dim, const std::vector<Vector>& vs) {
    SubspaceBasis b(F, dim);
    for (const auto& v : vs) b.insert(v);
    return b.dimension();
}

}  // namespace k3rcr
