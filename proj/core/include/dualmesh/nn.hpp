#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dualmesh/dual.hpp"
#include "dualmesh/mesh.hpp"
#include "dualmesh/rng.hpp"
#include "dualmesh/tensor.hpp"

namespace dualmesh {

/// Vertex-face averaging F_primal = D^-1 A F_dual, where A is the 0/1
/// vertex-face incidence matrix and D the diagonal of per-vertex face counts.
/// Rows of D^-1 A sum to exactly 1. The backward map is A^T D^-1.
class Dual2PrimalOp {
public:
    explicit Dual2PrimalOp(const Mesh& mesh);  // IsolatedVertexError

    int vertex_count() const { return static_cast<int>(vertex_faces_.size()); }
    int face_count() const { return face_count_; }
    int degree(int vertex) const { return static_cast<int>(vertex_faces_[vertex].size()); }

    Tensor apply(const Tensor& dual_features) const;
    Tensor apply_transpose(const Tensor& primal_grads) const;

private:
    std::vector<std::vector<int>> vertex_faces_;
    int face_count_ = 0;
};

/// Order-invariant neighborhood summary used by DualConvInv:
///   f = ( x1+x2+x3,
///         [x1-x2]+ + [x2-x3]+ + [x3-x1]+,
///         [x2-x1]+ + [x3-x2]+ + [x1-x3]+ )
/// with [a]+ = max(0, a), elementwise over `channels`. Each block's three
/// terms are summed in sorted order, so permuting the inputs permutes/swaps
/// blocks bitwise: cyclic rotations leave f unchanged and a transposition
/// swaps blocks 2 and 3 exactly.
void symmetric_neighbor_features(const double* x1, const double* x2, const double* x3,
                                 int channels, double* f_out);

/// Per-mesh inputs a layer may need beyond the feature tensor.
struct MeshContext {
    const DualGraph* dual = nullptr;
    const Dual2PrimalOp* dual2primal = nullptr;
    /// N_F x (3*E) per-slot extra input channels appended to neighbor
    /// features (dihedral angles); zero columns for the central node.
    const Tensor* slot_extra = nullptr;
    /// Primal vertex adjacency for the neighbor-averaging baseline.
    const std::vector<std::vector<int>>* vertex_adjacency = nullptr;
};

struct ParamRef {
    std::string name;
    Tensor* value = nullptr;
    Tensor* grad = nullptr;
};

/// A differentiable layer. forward() stores whatever backward() needs;
/// backward() consumes it (StateMissingError if absent), accumulates
/// parameter gradients, and returns the input gradient.
class Layer {
public:
    virtual ~Layer() = default;
    virtual Tensor forward(const Tensor& x, const MeshContext& ctx, bool training) = 0;
    virtual Tensor backward(const Tensor& dy) = 0;
    virtual void collect_params(const std::string& prefix, std::vector<ParamRef>& out) {
        (void)prefix; (void)out;
    }
    virtual void zero_grad() {}
    virtual std::string describe() const = 0;
};

class LinearLayer : public Layer {
public:
    LinearLayer(int in, int out, bool bias, Rng& init_rng);

    Tensor forward(const Tensor& x, const MeshContext& ctx, bool training) override;
    Tensor backward(const Tensor& dy) override;
    void collect_params(const std::string& prefix, std::vector<ParamRef>& out) override;
    void zero_grad() override;
    std::string describe() const override;

    Tensor weight;  // out x in
    Tensor bias;    // 1 x out, empty when disabled
    Tensor dweight, dbias;

private:
    Tensor saved_x_;
    bool has_state_ = false;
};

enum class DualConvKind { Max, Inv };

/// The 3-neighbor dual convolutions. Central features go through U
/// (out x in); neighbor features through W (out x 3*(in+extra)).
/// Max: y0 = U x0 + coordinate-wise max over the three cyclic neighbor
/// orders of W x_rot (+ bias); the winning rotation per coordinate is saved
/// and gradients flow only through it (lowest rotation index on ties).
/// Inv: y0 = U x0 + W f (+ bias) with f from symmetric_neighbor_features.
/// Padded neighbor slots read as zero vectors and receive no gradient.
class DualConvLayer : public Layer {
public:
    DualConvLayer(DualConvKind kind, int in, int out, int slot_extra, bool bias,
                  Rng& init_rng);

    Tensor forward(const Tensor& x, const MeshContext& ctx, bool training) override;
    Tensor backward(const Tensor& dy) override;
    void collect_params(const std::string& prefix, std::vector<ParamRef>& out) override;
    void zero_grad() override;
    std::string describe() const override;

    DualConvKind kind() const { return kind_; }
    /// Input-side gradient for the per-slot extra channels from the last
    /// backward() (N_F x 3*extra); empty when the layer has no extras.
    const Tensor& slot_extra_grad() const { return dslot_extra_; }

    Tensor u;     // out x in
    Tensor w;     // out x 3*(in+extra)
    Tensor bias;  // 1 x out
    Tensor du, dw, dbias;

private:
    Tensor forward_max(const Tensor& x, const MeshContext& ctx);
    Tensor forward_inv(const Tensor& x, const MeshContext& ctx);
    Tensor backward_max(const Tensor& dy);
    Tensor backward_inv(const Tensor& dy);
    // effective neighbor vector for (node, slot): x[neighbor] ++ extras, or zeros for PAD
    void gather_slot(int node, int slot, const Tensor& x, const Tensor* extra,
                     double* out) const;

    DualConvKind kind_;
    int in_, out_, extra_;

    const DualGraph* dual_ = nullptr;
    Tensor saved_x_;
    Tensor saved_extra_;
    std::vector<std::int8_t> argmax_;  // Max: node*out entries in {0,1,2}
    Tensor saved_f_;                   // Inv: N x 3*(in+extra)
    Tensor dslot_extra_;
    bool has_state_ = false;
};

/// y_v = U x_v + W mean_{u in N(v)} x_u (+ bias) on the primal vertex graph.
/// Control operator for robustness comparisons; degree varies per vertex.
class PrimalAvgConvLayer : public Layer {
public:
    PrimalAvgConvLayer(int in, int out, bool bias, Rng& init_rng);

    Tensor forward(const Tensor& x, const MeshContext& ctx, bool training) override;
    Tensor backward(const Tensor& dy) override;
    void collect_params(const std::string& prefix, std::vector<ParamRef>& out) override;
    void zero_grad() override;
    std::string describe() const override;

    Tensor u, w, bias;
    Tensor du, dw, dbias;

private:
    int in_, out_;
    const std::vector<std::vector<int>>* adjacency_ = nullptr;
    Tensor saved_x_, saved_avg_;
    bool has_state_ = false;
};

class Dual2PrimalLayer : public Layer {
public:
    Tensor forward(const Tensor& x, const MeshContext& ctx, bool training) override;
    Tensor backward(const Tensor& dy) override;
    std::string describe() const override { return "dual2primal"; }

private:
    const Dual2PrimalOp* op_ = nullptr;
    bool has_state_ = false;
};

/// ELU with alpha = 1.
class EluLayer : public Layer {
public:
    Tensor forward(const Tensor& x, const MeshContext& ctx, bool training) override;
    Tensor backward(const Tensor& dy) override;
    std::string describe() const override { return "elu"; }

private:
    Tensor saved_x_;
    bool has_state_ = false;
};

/// Inverted dropout: training keeps entries with probability 1-rate and
/// scales them by 1/(1-rate); evaluation is the identity.
class DropoutLayer : public Layer {
public:
    DropoutLayer(double rate, Rng rng);

    Tensor forward(const Tensor& x, const MeshContext& ctx, bool training) override;
    Tensor backward(const Tensor& dy) override;
    std::string describe() const override;

    double rate() const { return rate_; }

private:
    double rate_;
    Rng rng_;
    Tensor mask_;  // scale factors, 0 or 1/(1-rate)
    bool has_state_ = false;
};

std::vector<int> argmax_rows(const Tensor& t);  // lowest index wins ties
Tensor softmax_rows(const Tensor& logits);      // numerically stable

struct LossResult {
    double loss = 0.0;
    Tensor dlogits;
    int labeled_count = 0;
};

/// Mean cross-entropy over labeled rows (label -1 = unlabeled, excluded from
/// both the mean and the gradient). Uses the log-sum-exp form.
LossResult softmax_cross_entropy(const Tensor& logits, const std::vector<int>& labels);

struct AdamParams {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Adam with bias correction. Moment buffers are allocated on first step and
/// must keep their shapes afterwards.
class Adam {
public:
    explicit Adam(AdamParams hp = {}) : hp_(hp) {}

    void step(const std::vector<ParamRef>& params);
    int step_count() const { return t_; }
    const AdamParams& params() const { return hp_; }

private:
    AdamParams hp_;
    int t_ = 0;
    std::vector<Tensor> m_, v_;
};

}  // namespace dualmesh
