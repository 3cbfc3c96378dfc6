#include "dcid/nets.hpp"

#include "dcid/error.hpp"
#include "dcid/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace dcid {
namespace {

Matrix activate(const Matrix& pre, Activation a)
{
    if (a == Activation::relu) {
        return pre.cwiseMax(0.0);
    }
    return pre.array().tanh().matrix();
}

// Derivative expressed through the pre-activation.
Matrix activation_slope(const Matrix& pre, Activation a)
{
    if (a == Activation::relu) {
        return (pre.array() > 0.0).cast<double>().matrix();
    }
    return (1.0 - pre.array().tanh().square()).matrix();
}

void check_inputs(const Mlp& net, const Matrix& x)
{
    if (x.cols() != net.spec.input_dim) {
        throw ValidationError("mlp: expected " + std::to_string(net.spec.input_dim) + " input columns, got " +
                              std::to_string(x.cols()));
    }
}

void check_targets(const Mlp& net, const Matrix& x, const Matrix& y)
{
    check_inputs(net, x);
    if (y.rows() != x.rows() || y.cols() != net.spec.output_dim) {
        throw ValidationError("mlp: targets must be " + std::to_string(x.rows()) + " x " +
                              std::to_string(net.spec.output_dim));
    }
}

struct Cache {
    std::vector<Matrix> pre;
    std::vector<Matrix> act;
    Matrix out;
};

Cache forward_cached(const Mlp& net, const Matrix& x)
{
    Cache c;
    c.act.reserve(net.layers.size() + 1);
    c.pre.reserve(net.layers.size());
    c.act.push_back(((x.rowwise() - net.input_shift.transpose()).array().rowwise() /
                     net.input_scale.transpose().array())
                        .matrix());
    for (const DenseLayer& layer : net.layers) {
        c.pre.push_back((c.act.back() * layer.weights).rowwise() + layer.bias.transpose());
        c.act.push_back(activate(c.pre.back(), net.spec.activation));
    }
    c.out = net.head(c.act.back());
    return c;
}

struct AdamState {
    std::vector<Matrix> m_w, v_w;
    std::vector<Vector> m_b, v_b;
    Matrix m_hw, v_hw;
    Vector m_hb, v_hb;
};

template <typename T>
void adam_step(T& param, const T& grad, T& m, T& v, double lr, double bc1, double bc2)
{
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    m = beta1 * m + (1.0 - beta1) * grad;
    v = (beta2 * v.array() + (1.0 - beta2) * grad.array().square()).matrix();
    param.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps);
}

std::vector<double> per_task_mse(const Mlp& net, const Matrix& x, const Matrix& y)
{
    const Matrix err = net.forward(x) - y;
    std::vector<double> out(static_cast<std::size_t>(y.cols()));
    for (Index t = 0; t < y.cols(); ++t) {
        out[static_cast<std::size_t>(t)] = err.col(t).squaredNorm() / static_cast<double>(y.rows());
    }
    return out;
}

} // namespace

std::string to_string(Activation a)
{
    return a == Activation::relu ? "relu" : "tanh";
}

std::string to_string(Optimizer o)
{
    return o == Optimizer::adam ? "adam" : "sgd";
}

Activation parse_activation(const std::string& text)
{
    if (text == "relu") return Activation::relu;
    if (text == "tanh") return Activation::tanh;
    throw ValidationError("unknown activation '" + text + "' (expected relu or tanh)");
}

Optimizer parse_optimizer(const std::string& text)
{
    if (text == "adam") return Optimizer::adam;
    if (text == "sgd") return Optimizer::sgd;
    throw ValidationError("unknown optimizer '" + text + "' (expected adam or sgd)");
}

void MlpSpec::validate() const
{
    if (input_dim < 1 || feature_dim < 1 || output_dim < 1) {
        throw ValidationError("mlp spec: input_dim, feature_dim and output_dim must be positive");
    }
    if (hidden_widths.empty()) {
        throw ValidationError("mlp spec: hidden_widths must not be empty");
    }
    for (Index w : hidden_widths) {
        if (w < 1) {
            throw ValidationError("mlp spec: hidden widths must be positive");
        }
    }
}

void TrainConfig::validate() const
{
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
        throw ValidationError("train config: learning_rate must be a nonnegative real");
    }
    if (batch_size < 1) {
        throw ValidationError("train config: batch_size must be positive");
    }
    if (epochs < 0) {
        throw ValidationError("train config: epochs must be nonnegative");
    }
}

Matrix Mlp::features(const Matrix& x) const
{
    check_inputs(*this, x);
    Matrix a = (x.rowwise() - input_shift.transpose()).array().rowwise() / input_scale.transpose().array();
    for (const DenseLayer& layer : layers) {
        a = activate((a * layer.weights).rowwise() + layer.bias.transpose(), spec.activation);
    }
    return a;
}

Matrix Mlp::head(const Matrix& features) const
{
    if (features.cols() != head_weights.rows()) {
        throw ValidationError("mlp head: expected " + std::to_string(head_weights.rows()) + " feature columns");
    }
    return (features * head_weights).rowwise() + head_bias.transpose();
}

void Mlp::fit_input_scaling(const Matrix& x)
{
    check_inputs(*this, x);
    input_shift = x.colwise().mean().transpose();
    input_scale.resize(x.cols());
    for (Index j = 0; j < x.cols(); ++j) {
        const double sd = std::sqrt((x.col(j).array() - input_shift(j)).square().mean());
        input_scale(j) = sd > 0.0 ? sd : 1.0;
    }
}

Index Mlp::parameter_count() const
{
    Index count = head_weights.size() + head_bias.size();
    for (const DenseLayer& layer : layers) {
        count += layer.weights.size() + layer.bias.size();
    }
    return count;
}

Mlp init_mlp(const MlpSpec& spec)
{
    spec.validate();
    Mlp net;
    net.spec = spec;
    net.input_shift = Vector::Zero(spec.input_dim);
    net.input_scale = Vector::Ones(spec.input_dim);

    Rng rng = make_rng(spec.seed, "mlp.init");
    const double gain = spec.activation == Activation::relu ? 6.0 : 3.0;
    const auto uniform = [&](Index rows, Index cols, Index fan_in) {
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        const double limit = std::sqrt(gain / static_cast<double>(fan_in));
        Matrix m(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            for (Index j = 0; j < cols; ++j) {
                m(i, j) = limit * dist(rng);
            }
        }
        return m;
    };

    std::vector<Index> widths = spec.hidden_widths;
    widths.push_back(spec.feature_dim);
    Index fan_in = spec.input_dim;
    for (Index width : widths) {
        net.layers.push_back(DenseLayer{uniform(fan_in, width, fan_in), Vector::Zero(width)});
        fan_in = width;
    }
    // The head is linear, so it gets the unit-gain (LeCun) range.
    const double head_limit = std::sqrt(3.0 / static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-head_limit, head_limit);
    net.head_weights.resize(fan_in, spec.output_dim);
    for (Index i = 0; i < fan_in; ++i) {
        for (Index j = 0; j < spec.output_dim; ++j) {
            net.head_weights(i, j) = dist(rng);
        }
    }
    net.head_bias = Vector::Zero(spec.output_dim);
    return net;
}

double mse_loss(const Mlp& net, const Matrix& x, const Matrix& y)
{
    check_targets(net, x, y);
    const auto per_task = per_task_mse(net, x, y);
    return std::accumulate(per_task.begin(), per_task.end(), 0.0);
}

double loss_and_gradients(const Mlp& net, const Matrix& x, const Matrix& y, MlpGradients& grads)
{
    check_targets(net, x, y);
    const Cache c = forward_cached(net, x);
    const auto batch = static_cast<double>(x.rows());
    const Matrix err = c.out - y;
    const double loss = err.squaredNorm() / batch;

    const Matrix d_out = 2.0 * err / batch;
    grads.head_weights = c.act.back().transpose() * d_out;
    grads.head_bias = d_out.colwise().sum().transpose();

    const std::size_t n_layers = net.layers.size();
    grads.weights.resize(n_layers);
    grads.biases.resize(n_layers);
    Matrix d_act = d_out * net.head_weights.transpose();
    for (std::size_t l = n_layers; l-- > 0;) {
        const Matrix d_pre = d_act.cwiseProduct(activation_slope(c.pre[l], net.spec.activation));
        grads.weights[l] = c.act[l].transpose() * d_pre;
        grads.biases[l] = d_pre.colwise().sum().transpose();
        if (l > 0) {
            d_act = d_pre * net.layers[l].weights.transpose();
        }
    }
    return loss;
}

TrainedMlp train(Mlp net, const Matrix& x, const Matrix& y, const TrainConfig& cfg, const Matrix& x_val,
                 const Matrix& y_val)
{
    cfg.validate();
    check_targets(net, x, y);
    if (!x.allFinite() || !y.allFinite()) {
        throw ValidationError("train: non-finite training data");
    }
    const bool has_val = x_val.rows() > 0;
    if (has_val) {
        check_targets(net, x_val, y_val);
    }

    const Index outputs = y.cols();
    const RowVector y_mean = y.colwise().mean();
    RowVector y_scale(outputs);
    for (Index t = 0; t < outputs; ++t) {
        const double sd = std::sqrt((y.col(t).array() - y_mean(t)).square().mean());
        y_scale(t) = sd > 0.0 ? sd : 1.0;
    }
    const Matrix y_std = (y.rowwise() - y_mean).array().rowwise() / y_scale.array();

    TrainedMlp result;
    LossTrace& trace = result.trace;
    trace.per_task.resize(static_cast<std::size_t>(outputs));
    const auto record = [&](const Mlp& model) {
        const auto per_task = per_task_mse(model, x, y);
        double total = 0.0;
        for (std::size_t t = 0; t < per_task.size(); ++t) {
            trace.per_task[t].push_back(per_task[t]);
            total += per_task[t];
        }
        trace.train.push_back(total);
        if (has_val) {
            trace.validation.push_back(mse_loss(model, x_val, y_val));
        }
        return total;
    };
    record(net);

    if (cfg.epochs == 0) {
        result.model = std::move(net);
        return result;
    }

    // Work in standardized target units: head' = head / scale, bias' = (bias - mean) / scale.
    Mlp work = net;
    work.head_weights = work.head_weights.array().rowwise() / y_scale.array();
    work.head_bias = ((work.head_bias.transpose() - y_mean).array() / y_scale.array()).transpose();

    AdamState adam;
    for (const DenseLayer& layer : work.layers) {
        adam.m_w.push_back(Matrix::Zero(layer.weights.rows(), layer.weights.cols()));
        adam.v_w.push_back(Matrix::Zero(layer.weights.rows(), layer.weights.cols()));
        adam.m_b.push_back(Vector::Zero(layer.bias.size()));
        adam.v_b.push_back(Vector::Zero(layer.bias.size()));
    }
    adam.m_hw = adam.v_hw = Matrix::Zero(work.head_weights.rows(), work.head_weights.cols());
    adam.m_hb = adam.v_hb = Vector::Zero(work.head_bias.size());

    const auto n = static_cast<std::size_t>(x.rows());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = make_rng(cfg.shuffle_seed, "train.shuffle");
    MlpGradients grads;
    long step = 0;
    const auto batch = static_cast<std::size_t>(cfg.batch_size);

    const auto to_target_units = [&](const Mlp& m) {
        Mlp out = m;
        out.head_weights = m.head_weights.array().rowwise() * y_scale.array();
        out.head_bias = ((m.head_bias.transpose().array() * y_scale.array()) + y_mean.array()).transpose();
        return out;
    };

    for (Index epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < n; start += batch) {
            const std::span<const std::size_t> rows(order.data() + start, std::min(batch, n - start));
            const Matrix xb = select_rows(x, rows);
            const Matrix yb = select_rows(y_std, rows);
            const double loss = loss_and_gradients(work, xb, yb, grads);
            if (!std::isfinite(loss)) {
                throw DivergenceError("train: loss became non-finite in epoch " + std::to_string(epoch));
            }
            ++step;
            if (cfg.optimizer == Optimizer::adam) {
                const double bc1 = 1.0 - std::pow(0.9, static_cast<double>(step));
                const double bc2 = 1.0 - std::pow(0.999, static_cast<double>(step));
                for (std::size_t l = 0; l < work.layers.size(); ++l) {
                    adam_step(work.layers[l].weights, grads.weights[l], adam.m_w[l], adam.v_w[l],
                              cfg.learning_rate, bc1, bc2);
                    adam_step(work.layers[l].bias, grads.biases[l], adam.m_b[l], adam.v_b[l], cfg.learning_rate,
                              bc1, bc2);
                }
                adam_step(work.head_weights, grads.head_weights, adam.m_hw, adam.v_hw, cfg.learning_rate, bc1, bc2);
                adam_step(work.head_bias, grads.head_bias, adam.m_hb, adam.v_hb, cfg.learning_rate, bc1, bc2);
            } else {
                for (std::size_t l = 0; l < work.layers.size(); ++l) {
                    work.layers[l].weights -= cfg.learning_rate * grads.weights[l];
                    work.layers[l].bias -= cfg.learning_rate * grads.biases[l];
                }
                work.head_weights -= cfg.learning_rate * grads.head_weights;
                work.head_bias -= cfg.learning_rate * grads.head_bias;
            }
        }
        const double total = record(to_target_units(work));
        if (!std::isfinite(total)) {
            throw DivergenceError("train: loss became non-finite in epoch " + std::to_string(epoch));
        }
    }

    result.model = to_target_units(work);
    return result;
}

} // namespace dcid
