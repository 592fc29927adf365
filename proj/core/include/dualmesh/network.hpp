#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dualmesh/features.hpp"
#include "dualmesh/nn.hpp"

namespace dualmesh {

enum class ConvOp { DualConvMax, DualConvInv, PrimalAvg };

std::string to_string(ConvOp op);
ConvOp conv_op_from_string(const std::string& name);  // ConfigError

enum class LayerKind { Linear, Conv, Dropout, Dual2Primal };

struct LayerSpec {
    LayerKind kind = LayerKind::Linear;
    int width = 0;      // Linear / Conv output channels
    double rate = 0.0;  // Dropout
    bool operator==(const LayerSpec&) const = default;
};

struct NetworkConfig {
    ConvOp op = ConvOp::DualConvMax;
    /// Structural layers; an ELU follows every Linear/Conv except the last
    /// layer of the stack. The last layer must be Linear(target_labels).
    std::vector<LayerSpec> layers;
    FeatureSelection features = {FeatureKind::Xyz};
    int target_labels = 0;
    std::uint64_t seed = 0;
    bool bias = true;
    AdamParams adam;
    int epochs = 300;
    bool accumulate_gradients = false;  // one Adam step per epoch instead of per mesh
    bool normalize_features = false;    // per-mesh per-channel z-score

    /// Linear(16) -> Conv(32) -> Conv(64) -> Conv(128) -> [Dual2Primal] ->
    /// Linear(256) -> Dropout(rate) -> Linear(target_labels).
    static std::vector<LayerSpec> default_layers(ConvOp op, int target_labels,
                                                 double dropout_rate = 0.5);

    int input_width() const;
    /// Per-slot channels consumed by the first conv (dihedral), dual ops only.
    int slot_extra_channels() const;

    std::string to_json() const;
    static NetworkConfig from_json(const std::string& text);  // ConfigError
    bool operator==(const NetworkConfig& o) const;
};

/// A layer stack built from a NetworkConfig. Throws ConfigError on width
/// mismatches or structurally invalid specs. Forward/backward validate that
/// every intermediate tensor stays finite.
class Network {
public:
    explicit Network(const NetworkConfig& config);

    Network(Network&&) = default;
    Network& operator=(Network&&) = default;

    const NetworkConfig& config() const { return config_; }

    Tensor forward(const Tensor& features, const MeshContext& ctx, bool training);
    Tensor backward(const Tensor& dlogits);

    std::vector<ParamRef> params();
    void zero_grad();
    std::int64_t parameter_count();
    std::string describe() const;

    int layer_count() const { return static_cast<int>(layers_.size()); }
    Layer& layer(int i) { return *layers_[i]; }

private:
    NetworkConfig config_;
    std::vector<std::unique_ptr<Layer>> layers_;
};

/// Context holder owning the per-mesh structures a forward pass needs.
struct MeshBundle {
    explicit MeshBundle(const Mesh& mesh, const NetworkConfig& config, int jobs = 1);

    const Mesh* mesh;
    std::unique_ptr<DualGraph> dual;          // dual ops only
    std::unique_ptr<Dual2PrimalOp> transfer;  // dual ops only
    Tensor features;                          // input tensor (dual or primal)
    Tensor slot_extra;
    MeshContext context;                      // wired to the members above
};

}  // namespace dualmesh
