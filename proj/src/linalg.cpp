#include "parcat/linalg.hpp"

#include "parcat/errors.hpp"

namespace parcat {

Field Field::gf(int p) {
    if (p < 2) throw MalformedSpec("field characteristic must be at least 2");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw MalformedSpec("GF(" + std::to_string(p) + ") needs a prime");
    return Field(p);
}

std::string Field::tag() const { return finite() ? "gf" + std::to_string(p_) : "rational"; }

Field Field::from_tag(const std::string& tag) {
    if (tag == "rational") return rationals();
    if (tag.size() > 2 && tag.rfind("gf", 0) == 0) {
        std::size_t pos = 0;
        int p = std::stoi(tag.substr(2), &pos);
        if (pos == tag.size() - 2) return gf(p);
    }
    throw MalformedSpec("unknown field tag " + tag);
}

Scalar Field::normalize(Scalar a) const {
    if (!finite()) return a;
    // reduce num * den⁻¹ mod p
    long long num = a.numerator() % p_;
    if (num < 0) num += p_;
    long long den = a.denominator() % p_;
    if (den < 0) den += p_;
    if (den == 0) throw NotInvertible("denominator vanishes mod p");
    if (den != 1) {
        long long r = 1, b = den, e = p_ - 2;
        while (e > 0) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        num = num * r % p_;
    }
    return Scalar(num);
}

Scalar Field::inv(Scalar a) const {
    if (is_zero(a)) throw NotInvertible("zero has no inverse");
    return normalize(Scalar(1) / a);
}

std::vector<Scalar> Field::elements() const {
    if (!finite()) throw MalformedSpec("the rationals cannot be enumerated");
    std::vector<Scalar> out;
    for (int i = 0; i < p_; ++i) out.emplace_back(i);
    return out;
}

Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

Vec add(const Field& f, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b.at(i));
    return out;
}

Vec scale(const Field& f, Scalar s, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(s, a[i]);
    return out;
}

bool is_zero(const Vec& v) {
    for (const auto& s : v)
        if (s.numerator() != 0) return false;
    return true;
}

std::string format_scalar(Scalar s) {
    if (s.denominator() == 1) return std::to_string(s.numerator());
    return std::to_string(s.numerator()) + "/" + std::to_string(s.denominator());
}

Matrix::Matrix(Field f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Scalar(0)) {}

Matrix Matrix::identity(Field f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    Matrix out(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Scalar a = at(i, k);
            if (a.numerator() == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                out.at(i, j) = field_.add(out.at(i, j), field_.mul(a, o.at(k, j)));
        }
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<int> Matrix::rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int sel = -1;
        for (int r = row; r < rows_; ++r)
            if (!field_.is_zero(at(r, col))) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int c = 0; c < cols_; ++c) std::swap(at(sel, c), at(row, c));
        Scalar pinv = field_.inv(at(row, col));
        for (int c = 0; c < cols_; ++c) at(row, c) = field_.mul(at(row, c), pinv);
        for (int r = 0; r < rows_; ++r) {
            if (r == row) continue;
            Scalar factor = at(r, col);
            if (field_.is_zero(factor)) continue;
            for (int c = 0; c < cols_; ++c) at(r, c) = field_.sub(at(r, c), field_.mul(factor, at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int Matrix::rank() const {
    Matrix copy = *this;
    return static_cast<int>(copy.rref().size());
}

std::optional<Vec> Matrix::solve(const Vec& b) const {
    if (static_cast<int>(b.size()) != rows_) throw MalformedSpec("right-hand side has the wrong length");
    Matrix aug(field_, rows_, cols_ + 1);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
        aug.at(r, cols_) = field_.normalize(b[r]);
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    Vec x = zero_vec(cols_);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(static_cast<int>(i), cols_);
    return x;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const int n = rows_;
    Matrix aug(field_, n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug.at(r, c) = at(r, c);
        aug.at(r, n + r) = Scalar(1);
    }
    auto pivots = aug.rref();
    if (static_cast<int>(pivots.size()) < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix out(field_, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.at(r, c) = aug.at(r, n + c);
    return out;
}

}  // namespace parcat
