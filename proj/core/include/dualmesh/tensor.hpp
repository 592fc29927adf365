#pragma once

#include <vector>

namespace dualmesh {

/// Dense row-major 2-D array of doubles (rows = nodes, cols = channels).
class Tensor {
public:
    Tensor() = default;
    Tensor(int rows, int cols);  // zero-initialized

    static Tensor zeros(int rows, int cols) { return Tensor(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool same_shape(const Tensor& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    double* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
    const double* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    void fill(double value);
    void add(const Tensor& other);               // ShapeMismatchError
    void add_scaled(const Tensor& other, double s);
    bool all_finite() const;

    bool operator==(const Tensor& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// Y = X * W^T where X is n×k and W is m×k; result n×m.
Tensor matmul_nt(const Tensor& x, const Tensor& w);
// Y = A^T * B where A is n×m and B is n×k; result m×k. (Weight-gradient shape.)
Tensor matmul_tn(const Tensor& a, const Tensor& b);
// Y = A * B, plain product; A n×m, B m×k.
Tensor matmul_nn(const Tensor& a, const Tensor& b);

/// Throws NonFiniteError naming `what` if any entry is NaN/Inf.
void ensure_finite(const Tensor& t, const char* what);

}  // namespace dualmesh
