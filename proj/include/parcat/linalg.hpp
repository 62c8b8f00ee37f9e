#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

namespace parcat {

using Scalar = boost::rational<long long>;
using Vec = std::vector<Scalar>;

// Either GF(p) (values kept as integers in [0, p)) or the rationals.
class Field {
public:
    static Field gf(int p);
    static Field rationals() { return Field(0); }

    bool finite() const { return p_ > 0; }
    int characteristic() const { return p_; }
    std::string tag() const;  // gf2, gf3, ..., rational
    static Field from_tag(const std::string& tag);

    Scalar normalize(Scalar a) const;
    Scalar from_int(long long v) const { return normalize(Scalar(v)); }
    Scalar add(Scalar a, Scalar b) const { return normalize(a + b); }
    Scalar sub(Scalar a, Scalar b) const { return normalize(a - b); }
    Scalar mul(Scalar a, Scalar b) const { return normalize(a * b); }
    Scalar neg(Scalar a) const { return normalize(-a); }
    Scalar inv(Scalar a) const;
    bool is_zero(Scalar a) const { return a.numerator() == 0; }

    // All field elements in increasing order (finite fields only).
    std::vector<Scalar> elements() const;

    bool operator==(const Field&) const = default;

private:
    explicit Field(int p) : p_(p) {}
    int p_ = 0;
};

Vec zero_vec(std::size_t n);
Vec add(const Field& f, const Vec& a, const Vec& b);
Vec scale(const Field& f, Scalar s, const Vec& a);
bool is_zero(const Vec& v);
std::string format_scalar(Scalar s);

class Matrix {
public:
    Matrix(Field f, int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Scalar& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    Scalar at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Field& field() const { return field_; }

    static Matrix identity(Field f, int n);
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    // Row-reduces in place; returns pivot columns.
    std::vector<int> rref();
    int rank() const;
    // Some solution of A x = b, if consistent.
    std::optional<Vec> solve(const Vec& b) const;
    std::optional<Matrix> inverse() const;

private:
    Field field_;
    int rows_, cols_;
    std::vector<Scalar> data_;
};

}  // namespace parcat
