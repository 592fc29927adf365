#include "dualmesh/tensor.hpp"

#include <cmath>
#include <string>

#include "dualmesh/errors.hpp"

namespace dualmesh {

Tensor::Tensor(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw ShapeMismatchError("negative tensor dimensions");
    data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

void Tensor::fill(double value) {
    for (auto& v : data_) v = value;
}

void Tensor::add(const Tensor& other) {
    if (!same_shape(other))
        throw ShapeMismatchError("tensor add: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
}

void Tensor::add_scaled(const Tensor& other, double s) {
    if (!same_shape(other))
        throw ShapeMismatchError("tensor add_scaled: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
}

bool Tensor::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

Tensor matmul_nt(const Tensor& x, const Tensor& w) {
    if (x.cols() != w.cols())
        throw ShapeMismatchError("matmul_nt: inner dimensions differ (" +
                                 std::to_string(x.cols()) + " vs " + std::to_string(w.cols()) + ")");
    Tensor y(x.rows(), w.rows());
    const int k = x.cols();
    for (int i = 0; i < x.rows(); ++i) {
        const double* xi = x.row(i);
        double* yi = y.row(i);
        for (int j = 0; j < w.rows(); ++j) {
            const double* wj = w.row(j);
            double acc = 0.0;
            for (int c = 0; c < k; ++c) acc += xi[c] * wj[c];
            yi[j] = acc;
        }
    }
    return y;
}

Tensor matmul_tn(const Tensor& a, const Tensor& b) {
    if (a.rows() != b.rows())
        throw ShapeMismatchError("matmul_tn: row counts differ");
    Tensor y(a.cols(), b.cols());
    for (int n = 0; n < a.rows(); ++n) {
        const double* an = a.row(n);
        const double* bn = b.row(n);
        for (int i = 0; i < a.cols(); ++i) {
            double* yi = y.row(i);
            const double s = an[i];
            if (s == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) yi[j] += s * bn[j];
        }
    }
    return y;
}

Tensor matmul_nn(const Tensor& a, const Tensor& b) {
    if (a.cols() != b.rows())
        throw ShapeMismatchError("matmul_nn: inner dimensions differ");
    Tensor y(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        const double* ai = a.row(i);
        double* yi = y.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            const double s = ai[k];
            if (s == 0.0) continue;
            const double* bk = b.row(k);
            for (int j = 0; j < b.cols(); ++j) yi[j] += s * bk[j];
        }
    }
    return y;
}

void ensure_finite(const Tensor& t, const char* what) {
    if (!t.all_finite())
        throw NonFiniteError(std::string("non-finite values in ") + what);
}

}  // namespace dualmesh
