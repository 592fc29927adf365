#include "dualmesh/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "dualmesh/errors.hpp"

namespace dualmesh {

namespace {

// Glorot-style uniform init: s = sqrt(6 / (fan_in + fan_out)).
Tensor init_weight(int out, int in, int fan_in, int fan_out, Rng& rng) {
    Tensor t(out, in);
    double s = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& v : t.data()) v = rng.uniform(-s, s);
    return t;
}

// Ascending-order sum of three values; permutation of the arguments cannot
// change the result bitwise.
inline double sum3_sorted(double a, double b, double c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return (a + b) + c;
}

inline double relu(double a) { return a > 0.0 ? a : 0.0; }

void add_bias_rows(Tensor& y, const Tensor& bias) {
    if (bias.empty()) return;
    for (int i = 0; i < y.rows(); ++i) {
        double* row = y.row(i);
        const double* b = bias.row(0);
        for (int j = 0; j < y.cols(); ++j) row[j] += b[j];
    }
}

void accumulate_bias_grad(Tensor& dbias, const Tensor& dy) {
    if (dbias.empty()) return;
    double* b = dbias.row(0);
    for (int i = 0; i < dy.rows(); ++i) {
        const double* row = dy.row(i);
        for (int j = 0; j < dy.cols(); ++j) b[j] += row[j];
    }
}

}  // namespace

// ---------------------------------------------------------------- Dual2Primal

Dual2PrimalOp::Dual2PrimalOp(const Mesh& mesh)
    : vertex_faces_(mesh.vertex_faces()), face_count_(mesh.face_count()) {
    for (int v = 0; v < static_cast<int>(vertex_faces_.size()); ++v)
        if (vertex_faces_[v].empty())
            throw IsolatedVertexError("vertex " + std::to_string(v) +
                                      " belongs to no face");
}

Tensor Dual2PrimalOp::apply(const Tensor& dual_features) const {
    if (dual_features.rows() != face_count_)
        throw ShapeMismatchError("dual2primal: feature rows != face count");
    const int c = dual_features.cols();
    Tensor out(vertex_count(), c);
    for (int v = 0; v < vertex_count(); ++v) {
        double* row = out.row(v);
        const auto& faces = vertex_faces_[v];
        for (int f : faces) {
            const double* fr = dual_features.row(f);
            for (int j = 0; j < c; ++j) row[j] += fr[j];
        }
        const double inv = 1.0 / static_cast<double>(faces.size());
        for (int j = 0; j < c; ++j) row[j] *= inv;
    }
    return out;
}

Tensor Dual2PrimalOp::apply_transpose(const Tensor& primal_grads) const {
    if (primal_grads.rows() != vertex_count())
        throw ShapeMismatchError("dual2primal transpose: rows != vertex count");
    const int c = primal_grads.cols();
    Tensor out(face_count_, c);
    for (int v = 0; v < vertex_count(); ++v) {
        const auto& faces = vertex_faces_[v];
        const double inv = 1.0 / static_cast<double>(faces.size());
        const double* gv = primal_grads.row(v);
        for (int f : faces) {
            double* row = out.row(f);
            for (int j = 0; j < c; ++j) row[j] += inv * gv[j];
        }
    }
    return out;
}

// ------------------------------------------------------- symmetric function

void symmetric_neighbor_features(const double* x1, const double* x2, const double* x3,
                                 int channels, double* f_out) {
    for (int c = 0; c < channels; ++c) {
        f_out[c] = sum3_sorted(x1[c], x2[c], x3[c]);
        f_out[channels + c] =
            sum3_sorted(relu(x1[c] - x2[c]), relu(x2[c] - x3[c]), relu(x3[c] - x1[c]));
        f_out[2 * channels + c] =
            sum3_sorted(relu(x2[c] - x1[c]), relu(x3[c] - x2[c]), relu(x1[c] - x3[c]));
    }
}

// -------------------------------------------------------------------- Linear

LinearLayer::LinearLayer(int in, int out, bool with_bias, Rng& init_rng) {
    weight = init_weight(out, in, in, out, init_rng);
    dweight = Tensor(out, in);
    if (with_bias) {
        bias = Tensor(1, out);
        dbias = Tensor(1, out);
    }
}

Tensor LinearLayer::forward(const Tensor& x, const MeshContext&, bool) {
    if (x.cols() != weight.cols())
        throw ShapeMismatchError("linear: input width " + std::to_string(x.cols()) +
                                 " != " + std::to_string(weight.cols()));
    saved_x_ = x;
    has_state_ = true;
    Tensor y = matmul_nt(x, weight);
    add_bias_rows(y, bias);
    return y;
}

Tensor LinearLayer::backward(const Tensor& dy) {
    if (!has_state_) throw StateMissingError("linear backward without forward");
    has_state_ = false;
    if (dy.rows() != saved_x_.rows() || dy.cols() != weight.rows())
        throw ShapeMismatchError("linear backward: bad gradient shape");
    dweight.add(matmul_tn(dy, saved_x_));
    accumulate_bias_grad(dbias, dy);
    return matmul_nn(dy, weight);
}

void LinearLayer::collect_params(const std::string& prefix, std::vector<ParamRef>& out) {
    out.push_back({prefix + ".weight", &weight, &dweight});
    if (!bias.empty()) out.push_back({prefix + ".bias", &bias, &dbias});
}

void LinearLayer::zero_grad() {
    dweight.fill(0.0);
    if (!dbias.empty()) dbias.fill(0.0);
}

std::string LinearLayer::describe() const {
    return "linear(" + std::to_string(weight.cols()) + "->" + std::to_string(weight.rows()) + ")";
}

// ------------------------------------------------------------------ DualConv

DualConvLayer::DualConvLayer(DualConvKind kind, int in, int out, int slot_extra,
                             bool with_bias, Rng& init_rng)
    : kind_(kind), in_(in), out_(out), extra_(slot_extra) {
    const int wcols = 3 * (in_ + extra_);
    u = init_weight(out_, in_, in_, out_, init_rng);
    w = init_weight(out_, wcols, wcols, out_, init_rng);
    du = Tensor(out_, in_);
    dw = Tensor(out_, wcols);
    if (with_bias) {
        bias = Tensor(1, out_);
        dbias = Tensor(1, out_);
    }
}

void DualConvLayer::gather_slot(int node, int slot, const Tensor& x, const Tensor* extra,
                                double* out) const {
    const int width = in_ + extra_;
    int nbr = dual_->neighbors(node)[slot];
    if (nbr == DualGraph::kPad) {
        std::fill(out, out + width, 0.0);
        return;
    }
    std::memcpy(out, x.row(nbr), sizeof(double) * in_);
    for (int k = 0; k < extra_; ++k) out[in_ + k] = extra->at(node, slot * extra_ + k);
}

Tensor DualConvLayer::forward(const Tensor& x, const MeshContext& ctx, bool) {
    if (!ctx.dual) throw ConfigError("dual convolution needs a dual graph in the context");
    if (x.cols() != in_)
        throw ShapeMismatchError("dualconv: input width " + std::to_string(x.cols()) +
                                 " != " + std::to_string(in_));
    if (x.rows() != ctx.dual->node_count())
        throw ShapeMismatchError("dualconv: rows != dual node count");
    if (extra_ > 0) {
        if (!ctx.slot_extra)
            throw ShapeMismatchError("dualconv: layer expects per-slot extras");
        if (ctx.slot_extra->rows() != x.rows() || ctx.slot_extra->cols() != 3 * extra_)
            throw ShapeMismatchError("dualconv: bad slot-extra shape");
    }

    dual_ = ctx.dual;
    saved_x_ = x;
    saved_extra_ = extra_ > 0 ? *ctx.slot_extra : Tensor();
    has_state_ = true;

    return kind_ == DualConvKind::Max ? forward_max(x, ctx) : forward_inv(x, ctx);
}

Tensor DualConvLayer::forward_max(const Tensor& x, const MeshContext& ctx) {
    const int n = x.rows();
    const int width = in_ + extra_;
    Tensor y = matmul_nt(x, u);  // central path
    add_bias_rows(y, bias);
    argmax_.assign(static_cast<std::size_t>(n) * out_, 0);

    // One effective neighbor vector per slot, then the three cyclic
    // rotations reuse them: rotation r assigns slot (j+r)%3 to block j.
    std::vector<double> slot_vec(3 * width);
    std::vector<double> cand(3 * out_);
    for (int node = 0; node < n; ++node) {
        for (int s = 0; s < 3; ++s)
            gather_slot(node, s, x, ctx.slot_extra, slot_vec.data() + s * width);
        for (int r = 0; r < 3; ++r) {
            double* c = cand.data() + r * out_;
            for (int o = 0; o < out_; ++o) {
                const double* wrow = w.row(o);
                double acc = 0.0;
                for (int j = 0; j < 3; ++j) {
                    const double* e = slot_vec.data() + ((j + r) % 3) * width;
                    const double* wj = wrow + j * width;
                    for (int k = 0; k < width; ++k) acc += wj[k] * e[k];
                }
                c[o] = acc;
            }
        }
        double* yrow = y.row(node);
        std::int8_t* amax = argmax_.data() + static_cast<std::size_t>(node) * out_;
        for (int o = 0; o < out_; ++o) {
            double best = cand[o];
            std::int8_t which = 0;
            if (cand[out_ + o] > best) { best = cand[out_ + o]; which = 1; }
            if (cand[2 * out_ + o] > best) { best = cand[2 * out_ + o]; which = 2; }
            yrow[o] += best;
            amax[o] = which;
        }
    }
    return y;
}

Tensor DualConvLayer::forward_inv(const Tensor& x, const MeshContext& ctx) {
    const int n = x.rows();
    const int width = in_ + extra_;
    saved_f_ = Tensor(n, 3 * width);
    std::vector<double> slot_vec(3 * width);
    for (int node = 0; node < n; ++node) {
        for (int s = 0; s < 3; ++s)
            gather_slot(node, s, x, ctx.slot_extra, slot_vec.data() + s * width);
        symmetric_neighbor_features(slot_vec.data(), slot_vec.data() + width,
                                    slot_vec.data() + 2 * width, width,
                                    saved_f_.row(node));
    }
    Tensor y = matmul_nt(x, u);
    Tensor yn = matmul_nt(saved_f_, w);
    y.add(yn);
    add_bias_rows(y, bias);
    return y;
}

Tensor DualConvLayer::backward(const Tensor& dy) {
    if (!has_state_) throw StateMissingError("dualconv backward without forward");
    has_state_ = false;
    if (dy.rows() != saved_x_.rows() || dy.cols() != out_)
        throw ShapeMismatchError("dualconv backward: bad gradient shape");
    return kind_ == DualConvKind::Max ? backward_max(dy) : backward_inv(dy);
}

Tensor DualConvLayer::backward_max(const Tensor& dy) {
    const int n = saved_x_.rows();
    const int width = in_ + extra_;

    du.add(matmul_tn(dy, saved_x_));
    accumulate_bias_grad(dbias, dy);
    Tensor dx = matmul_nn(dy, u);
    dslot_extra_ = extra_ > 0 ? Tensor(n, 3 * extra_) : Tensor();

    // Gradient flows only through the winning rotation of each coordinate.
    std::vector<double> slot_vec(3 * width);
    for (int node = 0; node < n; ++node) {
        for (int s = 0; s < 3; ++s)
            gather_slot(node, s, saved_x_,
                        extra_ > 0 ? &saved_extra_ : nullptr,
                        slot_vec.data() + s * width);
        const double* dyrow = dy.row(node);
        const std::int8_t* amax = argmax_.data() + static_cast<std::size_t>(node) * out_;
        const auto& slots = dual_->neighbors(node);
        for (int o = 0; o < out_; ++o) {
            const double g = dyrow[o];
            if (g == 0.0) continue;
            const int r = amax[o];
            double* dwrow = dw.row(o);
            const double* wrow = w.row(o);
            for (int j = 0; j < 3; ++j) {
                const int s = (j + r) % 3;
                const int nbr = slots[s];
                if (nbr == DualGraph::kPad) continue;  // zero vector, no gradient
                const double* e = slot_vec.data() + s * width;
                double* dwj = dwrow + j * width;
                for (int k = 0; k < width; ++k) dwj[k] += g * e[k];
                const double* wj = wrow + j * width;
                double* dxrow = dx.row(nbr);
                for (int k = 0; k < in_; ++k) dxrow[k] += g * wj[k];
                for (int k = 0; k < extra_; ++k)
                    dslot_extra_.at(node, s * extra_ + k) += g * wj[in_ + k];
            }
        }
    }
    return dx;
}

Tensor DualConvLayer::backward_inv(const Tensor& dy) {
    const int n = saved_x_.rows();
    const int width = in_ + extra_;

    du.add(matmul_tn(dy, saved_x_));
    dw.add(matmul_tn(dy, saved_f_));
    accumulate_bias_grad(dbias, dy);
    Tensor dx = matmul_nn(dy, u);
    Tensor df = matmul_nn(dy, w);  // n x 3*width
    dslot_extra_ = extra_ > 0 ? Tensor(n, 3 * extra_) : Tensor();

    // Route df through the symmetric function. [a]+ has subgradient 0 at 0,
    // so masks use strict comparisons.
    std::vector<double> slot_vec(3 * width);
    std::vector<double> de(3 * width);
    for (int node = 0; node < n; ++node) {
        for (int s = 0; s < 3; ++s)
            gather_slot(node, s, saved_x_,
                        extra_ > 0 ? &saved_extra_ : nullptr,
                        slot_vec.data() + s * width);
        const double* e0 = slot_vec.data();
        const double* e1 = slot_vec.data() + width;
        const double* e2 = slot_vec.data() + 2 * width;
        const double* dfrow = df.row(node);
        std::fill(de.begin(), de.end(), 0.0);
        for (int c = 0; c < width; ++c) {
            const double d1 = dfrow[c];
            const double d2 = dfrow[width + c];
            const double d3 = dfrow[2 * width + c];
            double g0 = d1, g1 = d1, g2 = d1;
            if (e0[c] > e1[c]) { g0 += d2; g1 -= d2; } else if (e1[c] > e0[c]) { g1 += d3; g0 -= d3; }
            if (e1[c] > e2[c]) { g1 += d2; g2 -= d2; } else if (e2[c] > e1[c]) { g2 += d3; g1 -= d3; }
            if (e2[c] > e0[c]) { g2 += d2; g0 -= d2; } else if (e0[c] > e2[c]) { g0 += d3; g2 -= d3; }
            de[c] = g0;
            de[width + c] = g1;
            de[2 * width + c] = g2;
        }
        const auto& slots = dual_->neighbors(node);
        for (int s = 0; s < 3; ++s) {
            const int nbr = slots[s];
            if (nbr == DualGraph::kPad) continue;
            const double* des = de.data() + s * width;
            double* dxrow = dx.row(nbr);
            for (int k = 0; k < in_; ++k) dxrow[k] += des[k];
            for (int k = 0; k < extra_; ++k)
                dslot_extra_.at(node, s * extra_ + k) += des[in_ + k];
        }
    }
    return dx;
}

void DualConvLayer::collect_params(const std::string& prefix, std::vector<ParamRef>& out) {
    out.push_back({prefix + ".U", &u, &du});
    out.push_back({prefix + ".W", &w, &dw});
    if (!bias.empty()) out.push_back({prefix + ".bias", &bias, &dbias});
}

void DualConvLayer::zero_grad() {
    du.fill(0.0);
    dw.fill(0.0);
    if (!dbias.empty()) dbias.fill(0.0);
}

std::string DualConvLayer::describe() const {
    std::ostringstream os;
    os << (kind_ == DualConvKind::Max ? "dualconvmax(" : "dualconvinv(") << in_;
    if (extra_ > 0) os << "+" << extra_ << "slot";
    os << "->" << out_ << ")";
    return os.str();
}

// ------------------------------------------------------------- PrimalAvgConv

PrimalAvgConvLayer::PrimalAvgConvLayer(int in, int out, bool with_bias, Rng& init_rng)
    : in_(in), out_(out) {
    u = init_weight(out_, in_, in_, out_, init_rng);
    w = init_weight(out_, in_, in_, out_, init_rng);
    du = Tensor(out_, in_);
    dw = Tensor(out_, in_);
    if (with_bias) {
        bias = Tensor(1, out_);
        dbias = Tensor(1, out_);
    }
}

Tensor PrimalAvgConvLayer::forward(const Tensor& x, const MeshContext& ctx, bool) {
    if (!ctx.vertex_adjacency)
        throw ConfigError("primal conv needs vertex adjacency in the context");
    if (x.cols() != in_) throw ShapeMismatchError("primal conv: bad input width");
    if (x.rows() != static_cast<int>(ctx.vertex_adjacency->size()))
        throw ShapeMismatchError("primal conv: rows != vertex count");
    adjacency_ = ctx.vertex_adjacency;
    saved_x_ = x;

    saved_avg_ = Tensor(x.rows(), in_);
    for (int v = 0; v < x.rows(); ++v) {
        const auto& nbrs = (*adjacency_)[v];
        if (nbrs.empty()) continue;
        double* row = saved_avg_.row(v);
        for (int nb : nbrs) {
            const double* xr = x.row(nb);
            for (int c = 0; c < in_; ++c) row[c] += xr[c];
        }
        const double inv = 1.0 / static_cast<double>(nbrs.size());
        for (int c = 0; c < in_; ++c) row[c] *= inv;
    }

    Tensor y = matmul_nt(x, u);
    y.add(matmul_nt(saved_avg_, w));
    add_bias_rows(y, bias);
    has_state_ = true;
    return y;
}

Tensor PrimalAvgConvLayer::backward(const Tensor& dy) {
    if (!has_state_) throw StateMissingError("primal conv backward without forward");
    has_state_ = false;
    du.add(matmul_tn(dy, saved_x_));
    dw.add(matmul_tn(dy, saved_avg_));
    accumulate_bias_grad(dbias, dy);
    Tensor dx = matmul_nn(dy, u);
    Tensor davg = matmul_nn(dy, w);
    for (int v = 0; v < dx.rows(); ++v) {
        const auto& nbrs = (*adjacency_)[v];
        if (nbrs.empty()) continue;
        const double inv = 1.0 / static_cast<double>(nbrs.size());
        const double* gv = davg.row(v);
        for (int nb : nbrs) {
            double* row = dx.row(nb);
            for (int c = 0; c < in_; ++c) row[c] += inv * gv[c];
        }
    }
    return dx;
}

void PrimalAvgConvLayer::collect_params(const std::string& prefix, std::vector<ParamRef>& out) {
    out.push_back({prefix + ".U", &u, &du});
    out.push_back({prefix + ".W", &w, &dw});
    if (!bias.empty()) out.push_back({prefix + ".bias", &bias, &dbias});
}

void PrimalAvgConvLayer::zero_grad() {
    du.fill(0.0);
    dw.fill(0.0);
    if (!dbias.empty()) dbias.fill(0.0);
}

std::string PrimalAvgConvLayer::describe() const {
    return "primalavg(" + std::to_string(in_) + "->" + std::to_string(out_) + ")";
}

// --------------------------------------------------------- Dual2Primal layer

Tensor Dual2PrimalLayer::forward(const Tensor& x, const MeshContext& ctx, bool) {
    if (!ctx.dual2primal) throw ConfigError("dual2primal layer needs the transfer op");
    op_ = ctx.dual2primal;
    has_state_ = true;
    return op_->apply(x);
}

Tensor Dual2PrimalLayer::backward(const Tensor& dy) {
    if (!has_state_) throw StateMissingError("dual2primal backward without forward");
    has_state_ = false;
    return op_->apply_transpose(dy);
}

// ----------------------------------------------------------------------- ELU

Tensor EluLayer::forward(const Tensor& x, const MeshContext&, bool) {
    saved_x_ = x;
    has_state_ = true;
    Tensor y = x;
    for (double& v : y.data())
        if (v < 0.0) v = std::expm1(v);
    return y;
}

Tensor EluLayer::backward(const Tensor& dy) {
    if (!has_state_) throw StateMissingError("elu backward without forward");
    has_state_ = false;
    if (!dy.same_shape(saved_x_)) throw ShapeMismatchError("elu backward: bad shape");
    Tensor dx = dy;
    const auto& xs = saved_x_.data();
    auto& ds = dx.data();
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (xs[i] < 0.0) ds[i] *= std::exp(xs[i]);
    return dx;
}

// ------------------------------------------------------------------- Dropout

DropoutLayer::DropoutLayer(double rate, Rng rng) : rate_(rate), rng_(rng) {
    if (rate < 0.0 || rate >= 1.0)
        throw ConfigError("dropout rate must be in [0,1), got " + std::to_string(rate));
}

Tensor DropoutLayer::forward(const Tensor& x, const MeshContext&, bool training) {
    if (!training || rate_ == 0.0) {
        mask_ = Tensor();
        has_state_ = true;
        return x;
    }
    mask_ = Tensor(x.rows(), x.cols());
    const double keep = 1.0 - rate_;
    const double scale = 1.0 / keep;
    for (double& m : mask_.data()) m = rng_.bernoulli(keep) ? scale : 0.0;
    Tensor y = x;
    auto& ys = y.data();
    const auto& ms = mask_.data();
    for (std::size_t i = 0; i < ys.size(); ++i) ys[i] *= ms[i];
    has_state_ = true;
    return y;
}

Tensor DropoutLayer::backward(const Tensor& dy) {
    if (!has_state_) throw StateMissingError("dropout backward without forward");
    has_state_ = false;
    if (mask_.empty()) return dy;
    if (!dy.same_shape(mask_)) throw ShapeMismatchError("dropout backward: bad shape");
    Tensor dx = dy;
    auto& ds = dx.data();
    const auto& ms = mask_.data();
    for (std::size_t i = 0; i < ds.size(); ++i) ds[i] *= ms[i];
    return dx;
}

std::string DropoutLayer::describe() const {
    std::ostringstream os;
    os << "dropout(" << rate_ << ")";
    return os.str();
}

// ------------------------------------------------------------ loss & argmax

std::vector<int> argmax_rows(const Tensor& t) {
    std::vector<int> out(t.rows());
    for (int i = 0; i < t.rows(); ++i) {
        const double* row = t.row(i);
        int best = 0;
        for (int j = 1; j < t.cols(); ++j)
            if (row[j] > row[best]) best = j;
        out[i] = best;
    }
    return out;
}

Tensor softmax_rows(const Tensor& logits) {
    Tensor p = logits;
    for (int i = 0; i < p.rows(); ++i) {
        double* row = p.row(i);
        double m = row[0];
        for (int j = 1; j < p.cols(); ++j) m = std::max(m, row[j]);
        double sum = 0.0;
        for (int j = 0; j < p.cols(); ++j) {
            row[j] = std::exp(row[j] - m);
            sum += row[j];
        }
        for (int j = 0; j < p.cols(); ++j) row[j] /= sum;
    }
    return p;
}

LossResult softmax_cross_entropy(const Tensor& logits, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != logits.rows())
        throw ShapeMismatchError("cross entropy: label count != rows");
    ensure_finite(logits, "cross-entropy logits");

    int labeled = 0;
    for (int y : labels) {
        if (y < -1 || y >= logits.cols())
            throw LabelOutOfRangeError("label " + std::to_string(y) + " outside [0," +
                                       std::to_string(logits.cols()) + ")");
        labeled += (y >= 0);
    }
    if (labeled == 0) throw ValidationError("cross entropy: no labeled rows");

    LossResult result;
    result.labeled_count = labeled;
    result.dlogits = Tensor(logits.rows(), logits.cols());
    const double inv = 1.0 / labeled;
    double loss = 0.0;
    for (int i = 0; i < logits.rows(); ++i) {
        const int y = labels[i];
        if (y < 0) continue;  // unlabeled rows contribute nothing
        const double* row = logits.row(i);
        double m = row[0];
        for (int j = 1; j < logits.cols(); ++j) m = std::max(m, row[j]);
        double sum = 0.0;
        for (int j = 0; j < logits.cols(); ++j) sum += std::exp(row[j] - m);
        const double lse = m + std::log(sum);
        loss += lse - row[y];
        double* drow = result.dlogits.row(i);
        for (int j = 0; j < logits.cols(); ++j)
            drow[j] = std::exp(row[j] - lse) * inv;
        drow[y] -= inv;
    }
    result.loss = loss * inv;
    return result;
}

// ---------------------------------------------------------------------- Adam

void Adam::step(const std::vector<ParamRef>& params) {
    if (m_.empty()) {
        m_.reserve(params.size());
        v_.reserve(params.size());
        for (const auto& p : params) {
            m_.emplace_back(p.value->rows(), p.value->cols());
            v_.emplace_back(p.value->rows(), p.value->cols());
        }
    }
    if (m_.size() != params.size())
        throw ShapeMismatchError("adam: parameter list changed between steps");
    ++t_;
    const double bc1 = 1.0 - std::pow(hp_.beta1, t_);
    const double bc2 = 1.0 - std::pow(hp_.beta2, t_);
    for (std::size_t p = 0; p < params.size(); ++p) {
        Tensor& value = *params[p].value;
        const Tensor& grad = *params[p].grad;
        if (!value.same_shape(m_[p]) || !grad.same_shape(value))
            throw ShapeMismatchError("adam: shape changed for " + params[p].name);
        auto& mv = m_[p].data();
        auto& vv = v_[p].data();
        auto& pv = value.data();
        const auto& gv = grad.data();
        for (std::size_t i = 0; i < pv.size(); ++i) {
            mv[i] = hp_.beta1 * mv[i] + (1.0 - hp_.beta1) * gv[i];
            vv[i] = hp_.beta2 * vv[i] + (1.0 - hp_.beta2) * gv[i] * gv[i];
            const double mhat = mv[i] / bc1;
            const double vhat = vv[i] / bc2;
            pv[i] -= hp_.lr * mhat / (std::sqrt(vhat) + hp_.eps);
        }
    }
}

}  // namespace dualmesh
